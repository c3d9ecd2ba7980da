//! Frequency spectra of two oriented walks: signs flipping on the line and
//! quarter turns in the plane, against their closed forms.

use multifractal::walks::{WalkSystem, closed_form_case1, closed_form_case2, walk_spectrum};

fn main() -> multifractal::Result<()> {
    let line = WalkSystem::case1();
    println!("line walk");
    for alpha in [-0.9, -0.5, 0.0, 0.25, 0.5, 0.9] {
        let dim = walk_spectrum(&line, &[alpha])?.dim().unwrap_or(f64::NAN);
        println!("  alpha = {alpha:>5}: {dim:.10}  closed form {:.10}", closed_form_case1(alpha)?);
    }
    let plane = WalkSystem::case2();
    println!("plane walk");
    for (a, b) in [(0.0, 0.0), (0.3, 0.1), (-0.2, 0.4), (0.45, -0.45)] {
        let dim = walk_spectrum(&plane, &[a, b])?.dim().unwrap_or(f64::NAN);
        println!("  alpha = ({a:>5}, {b:>5}): {dim:.10}  closed form {:.10}", closed_form_case2(a, b)?);
    }
    println!("outside the frequency set: {:?}", walk_spectrum(&plane, &[0.8, 0.8])?);
    Ok(())
}
