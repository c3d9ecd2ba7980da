//! Common periodic points of x ↦ 2x and x ↦ 3x, exponential averages along
//! 2^k and 3^k, and a Monte Carlo look at their pressure.

use multifractal::riesz::{
    bessel_pressure, common_periodic_points, doubling_tripling_average, empirical_pressure_23,
};
use num_rational::Ratio;

fn main() -> multifractal::Result<()> {
    for (n, m) in [(4, 4), (2, 6), (6, 6), (10, 10)] {
        let points: Vec<String> = common_periodic_points(n, m)?.iter().map(|p| p.x.to_string()).collect();
        println!("periods ({n}, {m}): {}", points.join(" "));
    }
    for x in [Ratio::new(1, 5), Ratio::new(1, 7), Ratio::new(3, 11)] {
        let avg = doubling_tripling_average(1, 1, x, 10_000)?;
        println!("A_10000 at x = {x}: {:.6} {:+.6}i", avg.re, avg.im);
    }
    for (s, t) in [(1.0, 0.0), (2.0, 1.0)] {
        let est = empirical_pressure_23(1, 1, s, t, 12, 20_000, 3)?;
        println!(
            "(s, t) = ({s}, {t}): sampled {:.4} +- {:.4}, independent phases {:.4}",
            est.value,
            est.std_error,
            bessel_pressure(s, t)?
        );
    }
    Ok(())
}
