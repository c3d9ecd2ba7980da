//! Loads a prefix automaton from JSON (default: data/no111.json) and prints
//! its prefix counts, symmetry and dimensions.

use multifractal::io::{automaton_from_json, read_file};
use multifractal::multiplicative::kps_report;

fn main() -> multifractal::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/no111.json").to_string());
    let automaton = automaton_from_json(&read_file(path.as_ref())?)?;
    let counts: Vec<String> = automaton.prefix_counts(10).iter().map(ToString::to_string).collect();
    println!("prefix counts: {}", counts.join(" "));
    println!("spherically symmetric: {}", automaton.is_spherically_symmetric());
    for q in [2, 3, 5] {
        let r = kps_report(&automaton, q, 1e-10)?;
        println!("q = {q}: dim_H = {:.9}, dim_B = {:.9}", r.dim_h, r.dim_b);
    }
    Ok(())
}
