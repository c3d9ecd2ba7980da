//! Planar walk turning by ±θ at each unit step: exact mean squared
//! displacement against a seeded Monte Carlo estimate.

use multifractal::walks::{feller_monte_carlo, feller_second_moment};
use std::f64::consts::PI;

fn main() -> multifractal::Result<()> {
    for (label, angle) in [("pi", PI), ("pi/2", PI / 2.0), ("pi/3", PI / 3.0), ("2pi/5", 0.4 * PI)] {
        let exact = feller_second_moment(angle, 100)?;
        let mc = feller_monte_carlo(angle, 100, 50_000, 5)?;
        println!(
            "theta = {label:<5} E L_100^2 = {exact:>9.4}  sampled {:>9.4} +- {:.4}",
            mc.mean, mc.std_error
        );
    }
    Ok(())
}
