//! The Gibbs measure of a walk at a parameter s: sampled trajectories, the
//! drift they follow and the constant bounding the local mass deviation.

use multifractal::walks::{EvolutionMeasure, WalkSystem, pressure_gradient, trajectory};

fn main() -> multifractal::Result<()> {
    let plane = WalkSystem::case2();
    let s = [0.8, -0.3];
    let mu = EvolutionMeasure::new(&plane, &s)?;
    let drift = pressure_gradient(&plane, &s)?;
    println!("lambda = {:.10}, drift = ({:.6}, {:.6})", mu.pressure().lambda(), drift[0], drift[1]);
    println!("local constant C(s) = {:.6}", mu.local_constant());
    let n = 10_000;
    for stream in 0..4 {
        let x = mu.sample(n, 11, stream);
        let path = trajectory(&plane, &x, n)?;
        let mut worst: f64 = 0.0;
        for k in (1..=n).step_by(97) {
            let dot: f64 = path[k - 1].iter().zip(&s).map(|(a, b)| a * b).sum();
            worst = worst.max((mu.log_mass(&x[..k])? - dot + k as f64 * mu.pressure().pressure).abs());
        }
        let end = &path[n - 1];
        println!(
            "stream {stream}: S_n/n = ({:.4}, {:.4}), sampled deviation <= {worst:.4}",
            end[0] / n as f64,
            end[1] / n as f64
        );
    }
    Ok(())
}
