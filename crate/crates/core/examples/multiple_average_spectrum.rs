//! Level-set spectrum of the multiple average of `x_k x_{2k}` on {-1,1}^N,
//! compared with its entropy formula, and the 0/1 version next to it.

use multifractal::numeric::binary_entropy;
use multifractal::thermo::{Potential, legendre_spectrum};

fn main() -> multifractal::Result<()> {
    let phi2 = Potential::phi2();
    let phi1 = Potential::phi1();
    println!("{:>6} {:>12} {:>12} {:>12}", "alpha", "dim(phi2)", "closed form", "dim(phi1)");
    for i in 0..=10 {
        let alpha = -1.0 + 0.2 * i as f64;
        let closed = 0.5 + binary_entropy((1.0 + alpha) / 2.0) / (2.0 * std::f64::consts::LN_2);
        let dim2 = legendre_spectrum(&phi2, alpha)?.dim().unwrap_or(f64::NAN);
        let alpha1 = (alpha + 1.0) / 2.0;
        let dim1 = legendre_spectrum(&phi1, alpha1)?.dim().unwrap_or(f64::NAN);
        println!("{alpha:>6.2} {dim2:>12.9} {closed:>12.9} {dim1:>12.9}  (phi1 at {alpha1:.2})");
    }
    Ok(())
}
