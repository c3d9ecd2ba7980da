//! Runs every cross-check and prints a one-line report per check.

use multifractal::verify::{Options, run_suite};

fn main() -> multifractal::Result<()> {
    let checks = run_suite(&Options::default())?;
    for c in &checks {
        let status = if c.passed { "ok  " } else { "FAIL" };
        println!("{status} {:<24} {:>10.3e} / {:<8.1e} {}", c.name, c.measured, c.bound, c.detail);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} checks, {failed} failed", checks.len());
    Ok(())
}
