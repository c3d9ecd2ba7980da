//! Riesz products built on Walsh characters: cylinder masses, Fourier
//! coefficients and sampled Walsh averages.

use multifractal::riesz::{CharacterIndex, SignWord, WalshRieszMeasure, walsh_average, walsh_spectrum};

fn main() -> multifractal::Result<()> {
    let mu = WalshRieszMeasure::new(2, 0.5)?;
    let u = SignWord::parse("++-+")?;
    println!("mass of [{u}] = {}", mu.cylinder_mass(&u));
    for coords in [vec![1, 2], vec![2, 4], vec![1, 2, 3, 6], vec![1, 3]] {
        let chi = CharacterIndex::new(coords.clone())?;
        println!("coefficient at {coords:?} = {}", mu.fourier(&chi));
    }
    for b in [-0.8, 0.0, 0.5] {
        let x = WalshRieszMeasure::new(3, b)?.sample(300_000, 9)?;
        println!("d = 3, b = {b:>4}: Walsh average {:.4}", walsh_average(&x, 3, 100_000)?);
    }
    for alpha in [-1.0, 0.0, 0.5] {
        println!("dim of level {alpha:>4} for d = 3: {:.6}", walsh_spectrum(3, alpha)?);
    }
    Ok(())
}
