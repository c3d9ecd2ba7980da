//! The set of binary sequences with `x_k x_{2k} = 0` for every k: its
//! Hausdorff and box dimensions and the exact prefix counts.

use multifractal::multiplicative::{brute_force_count, exact_count_x2, fibonacci_box_x2, kps_solve};
use multifractal::symbolic::PrefixAutomaton;

fn main() -> multifractal::Result<()> {
    let fib = PrefixAutomaton::golden_mean();
    let sol = kps_solve(&fib, 2)?;
    println!("dim_H = {:.12} (t_root = {:.12}, {} iterations)", sol.dimension(), sol.t_root, sol.iterations);
    let box_dim = fibonacci_box_x2(1e-12)?;
    println!("dim_B = {:.12} ({} terms, tail <= {:e})", box_dim.value, box_dim.terms, box_dim.tail_bound);
    for n in [1, 2, 4, 8, 12, 16, 20] {
        let exact = exact_count_x2(n)?;
        let brute = brute_force_count(&fib, 2, n)?;
        println!("N_{n:<2} = {exact:>8}  enumeration agrees: {}", exact == brute);
    }
    println!("N_200 = {}", exact_count_x2(200)?);
    Ok(())
}
