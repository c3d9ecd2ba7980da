//! Samples `s ↦ (P(s), P'(s), dim)` for a potential given on the command
//! line (a JSON file) or the 0/1 product `x_k x_{2k}` by default.

use multifractal::io::{potential_from_json, read_file};
use multifractal::thermo::{Potential, PressureCurve, level_domain};

fn main() -> multifractal::Result<()> {
    let potential = match std::env::args().nth(1) {
        Some(path) => potential_from_json(&read_file(path.as_ref())?)?,
        None => Potential::phi1(),
    };
    let domain = level_domain(&potential)?;
    println!("levels approximately in [{:.6}, {:.6}]", domain.lo, domain.hi);
    let grid: Vec<f64> = (0..=16).map(|i| -8.0 + i as f64).collect();
    let curve = PressureCurve::sample(&potential, &grid)?;
    for p in &curve.points {
        println!("s={:>5.1}  P={:>10.6}  alpha={:>9.6}  dim={:.6}", p.s, p.pressure, p.alpha, p.dim);
    }
    println!("smallest second difference {:e}", curve.min_second_difference());
    Ok(())
}
