//! Dimensions of multiplicatively invariant sets `X_Ω` and `X_Ω^{(S)}`.
//!
//! The prefix tree of `Ω` is generated by a [`PrefixAutomaton`], so the
//! weights `t(u)` only depend on the state reached by `u` (and on `|u|` for
//! semigroups whose exponent ratios vary).

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{big_ln, log_sum_exp};
use crate::symbolic::{Alphabet, PrefixAutomaton, SemigroupSpec, gamma_of_semigroup, semigroup_elements};
use crate::telescopic::{SeriesValue, linear_growth_tail, terms_for_tolerance};

const KPS_MAX_ITERATIONS: usize = 100_000;
const PSSS_TOLERANCE: f64 = 1e-11;
const PSSS_MAX_ELEMENT: u64 = 1_000_000_000_000_000;
const BRUTE_FORCE_BITS: f64 = 24.0;

/// Solution of `t_v^q = Σ_j t_{vj}` on the automaton's states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KpsSolution {
    pub t: Vec<f64>,
    pub t_root: f64,
    pub q: usize,
    pub m: usize,
    pub iterations: usize,
    /// `max_v |q log t_v - log Σ_j t_{vj}|`.
    pub residual: f64,
}

impl KpsSolution {
    /// `(q-1) log_m t_∅`.
    pub fn dimension(&self) -> f64 {
        (self.q as f64 - 1.0) * self.t_root.ln() / (self.m as f64).ln()
    }
}

fn check_q(q: usize) -> Result<()> {
    if q < 2 {
        return Err(Error::invalid(format!("q must be at least 2, got {q}")));
    }
    Ok(())
}

fn child_logs(automaton: &PrefixAutomaton, state: usize, log_t: &[f64]) -> Vec<f64> {
    automaton.successors(state).map(|c| log_t[c]).collect()
}

/// Monotone iteration `log t ← (1/q) log Σ t_children` from `t ≡ 1`. The map
/// is a `1/q` contraction in the sup norm of `log t`.
pub fn kps_solve(automaton: &PrefixAutomaton, q: usize) -> Result<KpsSolution> {
    check_q(q)?;
    let n = automaton.state_count();
    let qf = q as f64;
    let mut log_t = vec![0.0; n];
    let mut iterations = 0;
    loop {
        iterations += 1;
        let next: Vec<f64> = (0..n)
            .map(|s| log_sum_exp(&child_logs(automaton, s, &log_t)) / qf)
            .collect();
        let change = next.iter().zip(&log_t).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        log_t = next;
        if change <= 1e-16 * (1.0 + log_t.iter().fold(0.0f64, |a, b| a.max(b.abs()))) {
            break;
        }
        if iterations >= KPS_MAX_ITERATIONS {
            return Err(Error::NonConvergence { what: "KPS fixed point", iterations, residual: change });
        }
    }
    let residual = (0..n)
        .map(|s| (qf * log_t[s] - log_sum_exp(&child_logs(automaton, s, &log_t))).abs())
        .fold(0.0, f64::max);
    let t: Vec<f64> = log_t.iter().map(|l| l.exp()).collect();
    Ok(KpsSolution {
        t_root: t[automaton.initial()],
        t,
        q,
        m: automaton.alphabet().size(),
        iterations,
        residual,
    })
}

/// Hausdorff dimension of `X_Ω = {x : x|_{Λ_i} ∈ Ω for all q ∤ i}`.
pub fn kps_hausdorff(automaton: &PrefixAutomaton, q: usize) -> Result<f64> {
    Ok(kps_solve(automaton, q)?.dimension())
}

/// `log_m |Pref_k(Ω)|` for `k = 1..=depth`.
fn log_prefix_counts(automaton: &PrefixAutomaton, depth: usize) -> Vec<f64> {
    let ln_m = (automaton.alphabet().size() as f64).ln();
    automaton.prefix_counts(depth)[1..].iter().map(|c| big_ln(c) / ln_m).collect()
}

/// Box dimension `(q-1)^2 Σ_k log_m |Pref_k(Ω)| / q^{k+1}`.
pub fn kps_box(automaton: &PrefixAutomaton, q: usize, tol: f64) -> Result<SeriesValue> {
    check_q(q)?;
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let terms = terms_for_tolerance(q, tol);
    let qf = q as f64;
    let sum: f64 = log_prefix_counts(automaton, terms)
        .iter()
        .enumerate()
        .map(|(i, l)| l / qf.powi(i as i32 + 2))
        .sum();
    Ok(SeriesValue {
        value: (qf - 1.0).powi(2) * sum,
        terms,
        tail_bound: linear_growth_tail(q, terms),
    })
}

/// `(1/(2 log 2)) Σ_{n≥1} log F_n / 2^n` with `F_0 = 1, F_1 = 2`.
pub fn fibonacci_box_x2(tol: f64) -> Result<SeriesValue> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    // log F_n ≤ n log 2, so the tail is the same as for the binary full shift
    let terms = terms_for_tolerance(2, tol);
    let (mut prev, mut cur) = (BigUint::one(), BigUint::from(2u32));
    let mut sum = 0.0;
    for n in 1..=terms {
        sum += big_ln(&cur) / 2f64.powi(n as i32);
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(SeriesValue {
        value: sum / (2.0 * std::f64::consts::LN_2),
        terms,
        tail_bound: linear_growth_tail(2, terms),
    })
}

/// `N_n`, the number of words of length `n` compatible with `X_2`, from the
/// product over chain lengths.
pub fn exact_count_x2(n: usize) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let top = n.ilog2() as usize;
    let mut fib = vec![BigUint::one(), BigUint::from(2u32)];
    while fib.len() < top + 2 {
        let next = &fib[fib.len() - 1] + &fib[fib.len() - 2];
        fib.push(next);
    }
    // odd i with i 2^k ≤ n
    let chains_reaching = |k: usize| (n + (1 << k)) >> (k + 1);
    let mut count = fib[top + 1].pow(chains_reaching(top) as u32);
    for k in 1..=top {
        let exactly = chains_reaching(k - 1) - chains_reaching(k);
        count *= fib[k].pow(exactly as u32);
    }
    Ok(count)
}

/// Counts words `u` of length `n` with `u|_{Λ_i} ∈ Pref(Ω)` for every `i`
/// by depth-first enumeration.
pub fn brute_force_count(automaton: &PrefixAutomaton, q: usize, n: usize) -> Result<BigUint> {
    check_q(q)?;
    let m = automaton.alphabet().size();
    let bits = n as f64 * (m as f64).log2();
    if bits > BRUTE_FORCE_BITS + 1e-9 {
        return Err(Error::TooLarge { requested: bits, limit: BRUTE_FORCE_BITS });
    }
    // state[k] is the state of chain Λ_i after reading position k
    let mut state = vec![0usize; n + 1];
    fn descend(a: &PrefixAutomaton, q: usize, n: usize, k: usize, state: &mut [usize]) -> u64 {
        if k > n {
            return 1;
        }
        let from = if k.is_multiple_of(q) { state[k / q] } else { a.initial() };
        let mut total = 0;
        for sym in 0..a.alphabet().size() as u8 {
            if let Some(to) = a.next(from, sym) {
                state[k] = to;
                total += descend(a, q, n, k + 1, state);
            }
        }
        total
    }
    Ok(BigUint::from(descend(automaton, q, n, 1, &mut state)))
}

/// Solution of the levelled system for a semigroup `S = {ℓ_1 < ℓ_2 < ...}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsssSolution {
    /// `log t` at word length `k = 1..=levels` (outer index `k - 1`) per state.
    pub log_t: Vec<Vec<f64>>,
    pub log_t_root: f64,
    pub gamma: f64,
    pub m: usize,
    pub primes: Vec<u64>,
    /// Exponent ratios `ℓ_{k+1}/ℓ_k` used at each level.
    pub ratios: Vec<f64>,
    /// Half-width of the bracket on `log_m t(∅)` left by truncation.
    pub truncation_error: f64,
    /// Largest equation residual `|ratio · log t(u) - log Σ_j t(uj)|`.
    pub residual: f64,
}

impl PsssSolution {
    pub fn t_root(&self) -> f64 {
        self.log_t_root.exp()
    }

    pub fn levels(&self) -> usize {
        self.log_t.len()
    }

    /// `log_m t(∅)`.
    pub fn dimension(&self) -> f64 {
        self.log_t_root / (self.m as f64).ln()
    }
}

/// Semigroup elements up to a growing bound, stopping once `done` accepts
/// them together with `γ(S) - Σ 1/ℓ` or the bound hits its cap.
fn semigroup_until(spec: &SemigroupSpec, done: impl Fn(&[u64], f64) -> bool) -> Result<(Vec<u64>, f64)> {
    let gamma = gamma_of_semigroup(spec);
    let mut bound = 1u64 << 20;
    loop {
        let elements = semigroup_elements(spec, bound)?;
        let partial: f64 = elements.iter().rev().map(|&l| 1.0 / l as f64).sum();
        let tail = (gamma - partial).max(0.0);
        if done(&elements, tail) || bound >= PSSS_MAX_ELEMENT {
            return Ok((elements, tail));
        }
        bound = bound.saturating_mul(1 << 10).min(PSSS_MAX_ELEMENT);
    }
}

fn psss_pass(automaton: &PrefixAutomaton, ratios: &[f64], top_level: Vec<f64>) -> Vec<Vec<f64>> {
    let mut levels = vec![top_level];
    for ratio in ratios[..ratios.len() - 1].iter().rev() {
        let below = levels.last().unwrap();
        let current = (0..automaton.state_count())
            .map(|s| log_sum_exp(&child_logs(automaton, s, below)) / ratio)
            .collect();
        levels.push(current);
    }
    levels.reverse();
    levels
}

/// Hausdorff dimension of `X_Ω^{(S)}`, `log_m t(∅)` with
/// `t(∅)^{γ(S)} = Σ_j t(j)`.
///
/// Levels are truncated at `K` where `γ(S) - Σ_{k≤K} 1/ℓ_k` is tiny. At that
/// level `log t` is bracketed by `0` and `ℓ_K (γ - Σ_{k≤K} 1/ℓ_k) log m`, and
/// the backward recursion shrinks the bracket by `ℓ_k/ℓ_{k+1}` per level.
pub fn psss_solve(automaton: &PrefixAutomaton, spec: &SemigroupSpec) -> Result<PsssSolution> {
    let m = automaton.alphabet().size();
    let ln_m = (m as f64).ln();
    let gamma = gamma_of_semigroup(spec);
    let (elements, tail) = semigroup_until(spec, |_, tail| tail / gamma < PSSS_TOLERANCE)?;
    let ratios: Vec<f64> = elements.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let last = *elements.last().unwrap() as f64;
    let n = automaton.state_count();
    let upper = last * tail * ln_m;

    let solve_from = |top: f64| {
        let levels = psss_pass(automaton, &ratios, vec![top; n]);
        let root = log_sum_exp(&child_logs(automaton, automaton.initial(), &levels[0])) / gamma;
        (levels, root)
    };
    let (_, low_root) = solve_from(0.0);
    let (_, high_root) = solve_from(upper);
    let (log_t, log_t_root) = solve_from(upper / 2.0);
    let truncation_error = (high_root - low_root) / (2.0 * ln_m);
    if truncation_error > 1e-6 {
        return Err(Error::NonConvergence {
            what: "semigroup level truncation",
            iterations: elements.len(),
            residual: truncation_error,
        });
    }
    let mut residual: f64 = 0.0;
    for k in 0..log_t.len() - 1 {
        for s in 0..n {
            let rhs = log_sum_exp(&child_logs(automaton, s, &log_t[k + 1]));
            residual = residual.max((ratios[k] * log_t[k][s] - rhs).abs());
        }
    }
    let rhs = log_sum_exp(&child_logs(automaton, automaton.initial(), &log_t[0]));
    residual = residual.max((gamma * log_t_root - rhs).abs());
    Ok(PsssSolution {
        log_t,
        log_t_root,
        gamma,
        m,
        primes: spec.primes().to_vec(),
        ratios,
        truncation_error,
        residual,
    })
}

pub fn psss_hausdorff(automaton: &PrefixAutomaton, spec: &SemigroupSpec) -> Result<f64> {
    Ok(psss_solve(automaton, spec)?.dimension())
}

/// Box dimension `γ(S)^{-1} Σ_k (1/ℓ_k - 1/ℓ_{k+1}) log_m |Pref_k(Ω)|`.
///
/// With `log_m |Pref_k| ≤ k` the dropped tail is at most
/// `(K/ℓ_{K+1} + Σ_{k>K} 1/ℓ_k) / γ(S)`.
pub fn psss_box(automaton: &PrefixAutomaton, spec: &SemigroupSpec, tol: f64) -> Result<SeriesValue> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let gamma = gamma_of_semigroup(spec);
    // the last element ℓ_L bounds the first-term tail K/ℓ_{K+1} by L/ℓ_L
    let (elements, _) = semigroup_until(spec, |els, tail| {
        (els.len() as f64 / *els.last().unwrap() as f64 + tail) / gamma < tol / 2.0
    })?;
    let inv: Vec<f64> = elements.iter().map(|&l| 1.0 / l as f64).collect();
    let mut partial = 0.0;
    let mut terms = 0;
    let mut tail_bound = f64::INFINITY;
    for k in 1..inv.len() {
        partial += inv[k - 1];
        terms = k;
        tail_bound = (k as f64 * inv[k] + (gamma - partial).max(0.0)) / gamma;
        if tail_bound < tol {
            break;
        }
    }
    if tail_bound >= tol {
        return Err(Error::NonConvergence { what: "semigroup box series", iterations: terms, residual: tail_bound });
    }
    let logs = log_prefix_counts(automaton, terms);
    let sum: f64 = (0..terms).map(|k| (inv[k] - inv[k + 1]) * logs[k]).sum();
    Ok(SeriesValue { value: sum / gamma, terms, tail_bound })
}

/// Hausdorff and box dimension of one automaton with the symmetry flag.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionReport {
    #[serde(rename = "dim_H")]
    pub dim_h: f64,
    #[serde(rename = "dim_B")]
    pub dim_b: f64,
    pub symmetric: bool,
    pub residual: f64,
}

pub fn kps_report(automaton: &PrefixAutomaton, q: usize, tol: f64) -> Result<DimensionReport> {
    let sol = kps_solve(automaton, q)?;
    Ok(DimensionReport {
        dim_h: sol.dimension(),
        dim_b: kps_box(automaton, q, tol)?.value,
        symmetric: automaton.is_spherically_symmetric(),
        residual: sol.residual,
    })
}

pub fn psss_report(automaton: &PrefixAutomaton, spec: &SemigroupSpec, tol: f64) -> Result<DimensionReport> {
    let sol = psss_solve(automaton, spec)?;
    Ok(DimensionReport {
        dim_h: sol.dimension(),
        dim_b: psss_box(automaton, spec, tol)?.value,
        symmetric: automaton.is_spherically_symmetric(),
        residual: sol.residual.max(sol.truncation_error),
    })
}

/// Named automata used to exercise the box/Hausdorff comparison, a mix of
/// spherically symmetric prefix trees and asymmetric ones.
pub fn automaton_corpus() -> Vec<(&'static str, PrefixAutomaton)> {
    let build = |m: usize, names: &[&str], initial: usize, edges: &[(usize, u8, usize)]| {
        let names = names.iter().map(|s| s.to_string()).collect();
        PrefixAutomaton::new(Alphabet::new(m).unwrap(), names, initial, edges).expect("corpus automaton is valid")
    };
    vec![
        ("full-binary", PrefixAutomaton::full_shift(2).unwrap()),
        ("full-ternary", PrefixAutomaton::full_shift(3).unwrap()),
        ("single-point", PrefixAutomaton::single_point(2, 1).unwrap()),
        ("alternating", build(2, &["a", "b"], 0, &[(0, 0, 1), (1, 1, 0)])),
        (
            "free-then-forced",
            build(2, &["free", "forced"], 0, &[(0, 0, 1), (0, 1, 1), (1, 0, 0)]),
        ),
        (
            "two-of-three",
            build(
                3,
                &["a", "b", "c"],
                0,
                &[(0, 0, 1), (0, 1, 2), (1, 1, 2), (1, 2, 0), (2, 0, 0), (2, 2, 1)],
            ),
        ),
        ("golden-mean", PrefixAutomaton::golden_mean()),
        ("no-111", PrefixAutomaton::forbid_ones_run(3).unwrap()),
        ("no-1111", PrefixAutomaton::forbid_ones_run(4).unwrap()),
        (
            "branch-then-point",
            build(2, &["root", "free", "zero"], 0, &[(0, 0, 1), (0, 1, 2), (1, 0, 1), (1, 1, 1), (2, 0, 2)]),
        ),
        (
            "even-shift",
            build(2, &["even", "odd"], 0, &[(0, 0, 0), (0, 1, 1), (1, 1, 0)]),
        ),
        (
            "ternary-no-00",
            build(3, &["last0", "other"], 1, &[(0, 1, 1), (0, 2, 1), (1, 0, 0), (1, 1, 1), (1, 2, 1)]),
        ),
    ]
}
