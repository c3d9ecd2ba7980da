//! Dimensions of sets invariant under the semigroup generated by 2 and 3,
//! next to the single-scale (powers of 2) values, for every built-in
//! automaton.

use multifractal::multiplicative::{automaton_corpus, kps_report, psss_report};
use multifractal::symbolic::SemigroupSpec;

fn main() -> multifractal::Result<()> {
    let spec = SemigroupSpec::new(vec![2, 3])?;
    println!("{:<18} {:>9} {:>9} {:>9} {:>9} symmetric", "automaton", "H(q=2)", "B(q=2)", "H<2,3>", "B<2,3>");
    for (name, a) in automaton_corpus() {
        let single = kps_report(&a, 2, 1e-10)?;
        let semi = psss_report(&a, &spec, 1e-8)?;
        println!(
            "{name:<18} {:>9.6} {:>9.6} {:>9.6} {:>9.6} {}",
            single.dim_h, single.dim_b, semi.dim_h, semi.dim_b, semi.symmetric
        );
    }
    Ok(())
}
