//! Draws points from the telescopic measure tuned to the level 0.5 of the
//! 0/1 product `x_k x_{2k}` and watches the multiple average settle.

use multifractal::telescopic::{TelescopicMeasure, running_averages};
use multifractal::thermo::{LevelDimension, Potential, legendre_spectrum, markov_measure, ruelle_dimension};

fn main() -> multifractal::Result<()> {
    let phi = Potential::phi1();
    let LevelDimension::Interior { s, dim } = legendre_spectrum(&phi, 0.5)? else {
        panic!("0.5 is an interior level");
    };
    println!("s = {s:.10}, dim E(0.5) = {dim:.10}");
    let measure = TelescopicMeasure::new(markov_measure(&phi, s)?, 2)?;
    let series = measure.dimension(1e-12)?;
    println!("dimension of the measure = {:.10} (Ruelle {:.10})", series.value, ruelle_dimension(&phi, s)?);
    for seed in 0..3 {
        let path = measure.sample(200_000, seed)?;
        let averages = running_averages(&path.symbols, &phi, &[100, 1_000, 10_000, 100_000])?;
        let line: Vec<String> = averages.iter().map(|(n, a)| format!("A_{n} = {a:.4}")).collect();
        println!("seed {seed}: {}", line.join("  "));
    }
    Ok(())
}
