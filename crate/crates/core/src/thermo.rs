//! Nonlinear thermodynamic formalism for multiple ergodic averages
//! `A_n φ(x) = (1/n) Σ φ(x_k, x_{qk}, ..., x_{q^{d-1}k})`.
//!
//! For a parameter `s` the transfer operator
//! `L_s ψ(a) = Σ_j exp(s φ(a, j)) ψ(Ta, j)` acts on positive functions of
//! `A^{d-1}`, and the pressure is read off the unique positive fixed point of
//! `ψ = (L_s ψ)^{1/q}`. Everything is carried in log space so that large
//! `|s|` does not overflow.

use crate::error::{Error, Result};
use crate::markov::{MarkovMeasure, decode};
use crate::numeric::log_sum_exp;

/// `|s|` at which endpoint levels are evaluated.
pub const ENDPOINT_S: f64 = 40.0;
/// Levels closer than this to the numerical endpoints are treated as endpoints.
pub const ENDPOINT_TOL: f64 = 1e-6;
/// Finite-difference noise on `P'` at `|s| = ENDPOINT_S`.
const DERIVATIVE_NOISE: f64 = 1e-9;

const MAX_ITERATIONS: usize = 100_000;
const RESIDUAL_TARGET: f64 = 1e-14;

/// A potential `φ: A^d → R` for the averages along `k, qk, ..., q^{d-1}k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    m: usize,
    q: usize,
    d: usize,
    table: Vec<f64>,
    alpha_min: f64,
    alpha_max: f64,
}

impl Potential {
    /// `table` is indexed by the base-`m` code of `(a_1, ..., a_d)`.
    pub fn new(m: usize, q: usize, d: usize, table: Vec<f64>) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid("alphabet size m must be at least 2"));
        }
        if q < 2 {
            return Err(Error::invalid("q must be at least 2"));
        }
        if d < 2 {
            return Err(Error::invalid("arity d must be at least 2"));
        }
        let len = m
            .checked_pow(d as u32)
            .filter(|&l| l <= 1 << 22)
            .ok_or_else(|| Error::invalid("m^d is too large"))?;
        if table.len() != len {
            return Err(Error::invalid(format!("table has {} entries, expected {len}", table.len())));
        }
        if table.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("potential values must be finite"));
        }
        let alpha_min = table.iter().copied().fold(f64::INFINITY, f64::min);
        let alpha_max = table.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(Potential { m, q, d, table, alpha_min, alpha_max })
    }

    pub fn from_fn(m: usize, q: usize, d: usize, f: impl Fn(&[u8]) -> f64) -> Result<Self> {
        let len = m.checked_pow(d as u32).unwrap_or(usize::MAX).min(1 << 23);
        let table = (0..len).map(|c| f(&decode(c, m, d))).collect();
        Self::new(m, q, d, table)
    }

    /// `φ₁(x, y) = x₁ y₁` on `Σ_2`, `q = 2`.
    pub fn phi1() -> Self {
        Self::from_fn(2, 2, 2, |a| (a[0] * a[1]) as f64).expect("valid")
    }

    /// `φ₂(x, y) = (2x₁ - 1)(2y₁ - 1)` on `Σ_2`, `q = 2`.
    pub fn phi2() -> Self {
        Self::rademacher_product(2, 2).expect("valid")
    }

    /// `Π (2a_i - 1)` on `Σ_2^d`.
    pub fn rademacher_product(q: usize, d: usize) -> Result<Self> {
        Self::from_fn(2, q, d, |a| a.iter().map(|&x| 2.0 * x as f64 - 1.0).product())
    }

    pub fn constant(m: usize, q: usize, d: usize, c: f64) -> Result<Self> {
        Self::new(m, q, d, vec![c; m.pow(d as u32)])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn alpha_min(&self) -> f64 {
        self.alpha_min
    }

    pub fn alpha_max(&self) -> f64 {
        self.alpha_max
    }

    pub fn is_constant(&self) -> bool {
        self.alpha_min == self.alpha_max
    }

    /// `φ(a_1, ..., a_d)`.
    pub fn value(&self, symbols: &[u8]) -> f64 {
        self.table[crate::markov::encode(symbols, self.m)]
    }

    /// `q^{d-1} log m`, the normaliser turning `P*` into a dimension in `[0,1]`.
    pub fn dimension_scale(&self) -> f64 {
        (self.q as f64).powi(self.d as i32 - 1) * (self.m as f64).ln()
    }
}

/// Fixed point `ψ_s` and its extensions to shorter words, stored as logs.
#[derive(Debug, Clone)]
pub struct PsiSolution {
    pub s: f64,
    /// `log_levels[k-1][code]` is `log ψ^{(k)}` on `A^k`, `k = 1..d-1`.
    pub log_levels: Vec<Vec<f64>>,
    pub iterations: usize,
    /// `‖N_s ψ - ψ‖_∞ / ‖ψ‖_∞` at the returned iterate.
    pub residual: f64,
}

impl PsiSolution {
    /// `ψ_s(a)` for a word of length `1..=d-1`.
    pub fn psi(&self, word: &[u8], m: usize) -> f64 {
        self.log_levels[word.len() - 1][crate::markov::encode(word, m)].exp()
    }

    fn top(&self) -> &[f64] {
        self.log_levels.last().expect("d >= 2")
    }
}

/// One application of `log N_s` to `log ψ` on `A^{d-1}`.
fn apply_log_operator(potential: &Potential, s: f64, log_psi: &[f64], out: &mut [f64]) {
    let m = potential.m;
    let width = log_psi.len();
    let tail = width / m;
    let q = potential.q as f64;
    let mut terms = vec![0.0; m];
    for (a, slot) in out.iter_mut().enumerate() {
        let shifted = (a % tail) * m;
        for (j, t) in terms.iter_mut().enumerate() {
            *t = s * potential.table[a * m + j] + log_psi[shifted + j];
        }
        *slot = log_sum_exp(&terms) / q;
    }
}

fn relative_residual(log_a: &[f64], log_b: &[f64]) -> f64 {
    let scale = log_a.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    
    log_a
        .iter()
        .zip(log_b)
        .map(|(x, y)| ((x - scale).exp() - (y - scale).exp()).abs())
        .fold(0.0, f64::max)
}

/// Solve `N_s ψ = ψ` from `ψ ≡ 1` and extend `ψ` to `A^k`, `k < d-1`.
pub fn solve_psi(potential: &Potential, s: f64) -> Result<PsiSolution> {
    if !s.is_finite() {
        return Err(Error::invalid("s must be finite"));
    }
    let m = potential.m;
    let width = m.pow(potential.d as u32 - 1);
    let mut current = vec![0.0; width];
    let mut next = vec![0.0; width];
    let mut residual = f64::INFINITY;
    let mut best = f64::INFINITY;
    let mut stalled = 0;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        apply_log_operator(potential, s, &current, &mut next);
        residual = relative_residual(&next, &current);
        std::mem::swap(&mut current, &mut next);
        if residual == 0.0 {
            break;
        }
        if residual < best * 0.999 {
            best = residual;
            stalled = 0;
        } else {
            stalled += 1;
            // rounding floor reached
            if stalled > 8 && residual < RESIDUAL_TARGET {
                break;
            }
            if stalled > 200 {
                break;
            }
        }
    }
    // residual of the iterate being returned
    apply_log_operator(potential, s, &current, &mut next);
    residual = residual.min(relative_residual(&next, &current));
    if !(residual < RESIDUAL_TARGET) {
        return Err(Error::NonConvergence { what: "transfer-operator fixed point", iterations, residual });
    }

    let q = potential.q as f64;
    let mut levels = vec![current];
    for _ in 1..potential.d - 1 {
        let upper = levels.last().unwrap();
        let lower: Vec<f64> = upper.chunks(m).map(|c| log_sum_exp(c) / q).collect();
        levels.push(lower);
    }
    levels.reverse();
    Ok(PsiSolution { s, log_levels: levels, iterations, residual })
}

fn pressure_from(potential: &Potential, sol: &PsiSolution) -> f64 {
    let q = potential.q as f64;
    (q - 1.0) * q.powi(potential.d as i32 - 2) * log_sum_exp(&sol.log_levels[0])
}

/// `P_φ(s) = (q-1) q^{d-2} log Σ_j ψ_s(j)`.
pub fn pressure(potential: &Potential, s: f64) -> Result<f64> {
    Ok(pressure_from(potential, &solve_psi(potential, s)?))
}

/// `P'_φ(s)` by central differences with one Richardson step.
pub fn pressure_derivative(potential: &Potential, s: f64) -> Result<f64> {
    if potential.is_constant() {
        return Ok(potential.alpha_min);
    }
    let h = 1e-4 * s.abs().max(1.0);
    let central = |h: f64| -> Result<f64> {
        Ok((pressure(potential, s + h)? - pressure(potential, s - h)?) / (2.0 * h))
    };
    let coarse = central(h)?;
    let fine = central(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Hausdorff dimension of the level set `E(α)`, normalised to `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevelDimension {
    /// `α = P'(s)` for a finite `s` found by root finding.
    Interior { dim: f64, s: f64 },
    /// `α` sits at a numerical endpoint of the level domain; the value is the
    /// limit approximated at `|s| = ENDPOINT_S`.
    Extrapolated { dim: f64, s: f64 },
    /// `E(α)` is empty.
    Empty,
}

impl LevelDimension {
    pub fn dim(&self) -> Option<f64> {
        match *self {
            LevelDimension::Interior { dim, .. } | LevelDimension::Extrapolated { dim, .. } => Some(dim),
            LevelDimension::Empty => None,
        }
    }
}

/// Approximation of `L_φ = [P'(-∞), P'(+∞)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelDomain {
    pub lo: f64,
    pub hi: f64,
    /// The endpoints are `P'(∓ENDPOINT_S)`, not the true limits.
    pub extrapolated: bool,
    /// `P'` was non-decreasing on the probe grid.
    pub monotone: bool,
}

pub fn level_domain(potential: &Potential) -> Result<LevelDomain> {
    if potential.is_constant() {
        let c = potential.alpha_min;
        return Ok(LevelDomain { lo: c, hi: c, extrapolated: false, monotone: true });
    }
    let probes = [-ENDPOINT_S, -10.0, -1.0, 0.0, 1.0, 10.0, ENDPOINT_S];
    let values = probes
        .iter()
        .map(|&s| pressure_derivative(potential, s))
        .collect::<Result<Vec<_>>>()?;
    let monotone = values.windows(2).all(|w| w[1] >= w[0] - 1e-9);
    Ok(LevelDomain { lo: values[0], hi: values[values.len() - 1], extrapolated: true, monotone })
}

/// Solve `P'(s) = α` by bisection on a geometrically grown bracket.
fn solve_level(potential: &Potential, alpha: f64) -> Result<f64> {
    let mut lo = -1.0;
    let mut hi = 1.0;
    while pressure_derivative(potential, lo)? > alpha && lo > -ENDPOINT_S {
        hi = lo;
        lo = (lo * 2.0).max(-ENDPOINT_S);
    }
    while pressure_derivative(potential, hi)? < alpha && hi < ENDPOINT_S {
        lo = hi;
        hi = (hi * 2.0).min(ENDPOINT_S);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-13 * mid.abs().max(1.0) {
            break;
        }
        if pressure_derivative(potential, mid)? < alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `dim_H E(α) = P*(α) / (q^{d-1} log m)` with `P*(α) = inf_s (P(s) - sα)`.
pub fn legendre_spectrum(potential: &Potential, alpha: f64) -> Result<LevelDimension> {
    if potential.is_constant() {
        return Ok(if (alpha - potential.alpha_min).abs() <= 1e-12 {
            LevelDimension::Interior { dim: 1.0, s: 0.0 }
        } else {
            LevelDimension::Empty
        });
    }
    let domain = level_domain(potential)?;
    if alpha < domain.lo - ENDPOINT_TOL || alpha > domain.hi + ENDPOINT_TOL {
        return Ok(LevelDimension::Empty);
    }
    if alpha <= domain.lo + DERIVATIVE_NOISE || alpha >= domain.hi - DERIVATIVE_NOISE {
        let s = if alpha <= domain.lo + DERIVATIVE_NOISE { -ENDPOINT_S } else { ENDPOINT_S };
        return Ok(LevelDimension::Extrapolated { dim: ruelle_dimension(potential, s)?, s });
    }
    let s = solve_level(potential, alpha)?;
    let dim = (pressure(potential, s)? - s * alpha) / potential.dimension_scale();
    Ok(LevelDimension::Interior { dim, s })
}

/// Dimension of the telescopic measure built on `μ_s`:
/// `(P(s) - s P'(s)) / (q^{d-1} log m)`.
pub fn ruelle_dimension(potential: &Potential, s: f64) -> Result<f64> {
    let p = pressure(potential, s)?;
    let dp = pressure_derivative(potential, s)?;
    Ok((p - s * dp) / potential.dimension_scale())
}

/// The `(d-1)`-step Markov measure `μ_s` with initial law `π_s` and kernel
/// `Q_s`, written as a law on the next symbol given the last `d-1`.
pub fn markov_measure(potential: &Potential, s: f64) -> Result<MarkovMeasure> {
    let sol = solve_psi(potential, s)?;
    Ok(markov_measure_from(potential, &sol))
}

pub fn markov_measure_from(potential: &Potential, sol: &PsiSolution) -> MarkovMeasure {
    let m = potential.m;
    let q = potential.q as f64;
    let order = potential.d - 1;
    let top = sol.top();
    let width = top.len();
    let tail = width / m;

    let root = log_sum_exp(&sol.log_levels[0]);
    let initial: Vec<f64> = (0..width)
        .map(|code| {
            let word = decode(code, m, order);
            let mut log_mass = 0.0;
            let mut parent = root;
            for j in 1..=order {
                let here = sol.log_levels[j - 1][crate::markov::encode(&word[..j], m)];
                log_mass += here - parent;
                parent = q * here;
            }
            log_mass.exp()
        })
        .collect();

    let kernel: Vec<Vec<f64>> = (0..width)
        .map(|a| {
            (0..m)
                .map(|j| {
                    let next = (a % tail) * m + j;
                    (sol.s * potential.table[a * m + j] + top[next] - q * top[a]).exp()
                })
                .collect()
        })
        .collect();
    MarkovMeasure::new(m, order, initial, kernel).expect("fixed point makes π_s and Q_s stochastic")
}

/// One sample of a spectrum curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub s: f64,
    pub pressure: f64,
    pub derivative: f64,
    pub alpha: f64,
    pub dim: f64,
}

/// `(s, P, P', α, dim)` along an `s` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureCurve {
    pub points: Vec<CurvePoint>,
}

impl PressureCurve {
    pub fn sample(potential: &Potential, grid: &[f64]) -> Result<Self> {
        let points = grid
            .iter()
            .map(|&s| {
                let p = pressure(potential, s)?;
                let dp = pressure_derivative(potential, s)?;
                Ok(CurvePoint {
                    s,
                    pressure: p,
                    derivative: dp,
                    alpha: dp,
                    dim: (p - s * dp) / potential.dimension_scale(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PressureCurve { points })
    }

    /// Smallest second difference of `P` along the grid (uniform grids).
    pub fn min_second_difference(&self) -> f64 {
        self.points
            .windows(3)
            .map(|w| w[0].pressure - 2.0 * w[1].pressure + w[2].pressure)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn alpha_is_monotone(&self, tol: f64) -> bool {
        self.points.windows(2).all(|w| w[1].alpha >= w[0].alpha - tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::binary_entropy;
    use std::f64::consts::{E, LN_2};

    fn walsh_closed_form(alpha: f64) -> f64 {
        0.5 + binary_entropy((1.0 + alpha) / 2.0) / (2.0 * LN_2)
    }

    /// Positive root of `ψ0² = ψ0 + ψ1`, `ψ1² = ψ0 + e^s ψ1`. Eliminating
    /// `ψ1 = ψ0² - ψ0` leaves `x³ - 2x² + (1-w)x + (w-1) = 0` with `x > 1`,
    /// solved here by bisection.
    fn phi1_psi_oracle(s: f64) -> (f64, f64) {
        let w = s.exp();
        let f = |x: f64| x * x * x - 2.0 * x * x + (1.0 - w) * x + (w - 1.0);
        let (mut lo, mut hi) = (1.0, 4.0 + w);
        assert!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 { lo = mid } else { hi = mid }
        }
        let x = 0.5 * (lo + hi);
        (x, x * x - x)
    }

    #[test]
    fn symmetric_fixed_point_at_zero() {
        let sol = solve_psi(&Potential::phi2(), 0.0).unwrap();
        assert!((sol.psi(&[0], 2) - 2.0).abs() < 1e-14);
        assert!((sol.psi(&[1], 2) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn zero_parameter_closed_form() {
        // every level equals m^{1/(q-1)} and P(0) = q^{d-1} log m
        for (m, q, d) in [(2, 2, 2), (3, 2, 2), (2, 3, 2), (3, 3, 3), (2, 2, 4), (4, 5, 2)] {
            let pot = Potential::from_fn(m, q, d, |a| a.iter().map(|&x| x as f64).sum::<f64>().sin()).unwrap();
            let sol = solve_psi(&pot, 0.0).unwrap();
            let c = (m as f64).powf(1.0 / (q as f64 - 1.0));
            for level in &sol.log_levels {
                for v in level {
                    assert!((v.exp() - c).abs() < 1e-12 * c);
                }
            }
            let p0 = pressure(&pot, 0.0).unwrap();
            let expected = (q as f64).powi(d as i32 - 1) * (m as f64).ln();
            assert!((p0 - expected).abs() < 1e-10, "m={m} q={q} d={d}");
        }
    }

    #[test]
    fn phi1_fixed_point_matches_root_finder() {
        for s in [-2.0, 0.5, 1.0, 3.0] {
            let (x, y) = phi1_psi_oracle(s);
            let sol = solve_psi(&Potential::phi1(), s).unwrap();
            assert!((sol.psi(&[0], 2) - x).abs() < 1e-12);
            assert!((sol.psi(&[1], 2) - y).abs() < 1e-12);
        }
    }

    #[test]
    fn residual_small_across_parameters() {
        let pots = [Potential::phi1(), Potential::phi2(), Potential::rademacher_product(2, 3).unwrap()];
        for pot in &pots {
            for s in [-40.0, -12.5, -1.0, 0.0, 0.3, 7.0, 40.0] {
                let sol = solve_psi(pot, s).unwrap();
                assert!(sol.residual < 1e-13, "s={s} residual={}", sol.residual);
            }
        }
    }

    #[test]
    fn non_finite_parameter_rejected() {
        assert!(solve_psi(&Potential::phi2(), f64::NAN).is_err());
    }

    #[test]
    fn pressure_examples() {
        assert!((pressure(&Potential::phi2(), 0.0).unwrap() - 4f64.ln()).abs() < 1e-12);
        assert!(pressure_derivative(&Potential::phi2(), 0.0).unwrap().abs() < 1e-10);
        let top = pressure_derivative(&Potential::phi1(), 40.0).unwrap();
        assert!((top - 1.0).abs() < 1e-8, "{top}");
    }

    #[test]
    fn derivative_matches_walsh_inverse() {
        // for φ₂ the Legendre pair of P is the closed Walsh spectrum, so the
        // slope of that spectrum at α = P'(s) is -s/(2 log 2)
        for s in [-2.0, 0.5, 1.0, 2.5] {
            let alpha = pressure_derivative(&Potential::phi2(), s).unwrap();
            let h = 1e-5;
            let slope = (walsh_closed_form(alpha + h) - walsh_closed_form(alpha - h)) / (2.0 * h);
            assert!((slope + s / (2.0 * LN_2)).abs() < 1e-6, "s={s}");
        }
    }

    #[test]
    fn spectrum_examples_phi2() {
        let pot = Potential::phi2();
        let at = |a: f64| legendre_spectrum(&pot, a).unwrap().dim().unwrap();
        assert!((at(0.0) - 1.0).abs() < 1e-9);
        assert!((at(1.0) - 0.5).abs() < 1e-8);
        assert!((at(-1.0) - 0.5).abs() < 1e-8);
        assert!((at(0.5) - 0.905_639_062_229_566_4).abs() < 1e-8);
        assert!(matches!(legendre_spectrum(&pot, 1.1).unwrap(), LevelDimension::Empty));
        assert!(matches!(legendre_spectrum(&pot, 1.0).unwrap(), LevelDimension::Extrapolated { .. }));
    }

    #[test]
    fn level_domains() {
        let d2 = level_domain(&Potential::phi2()).unwrap();
        assert!((d2.lo + 1.0).abs() < 1e-8 && (d2.hi - 1.0).abs() < 1e-8 && d2.monotone);
        let d1 = level_domain(&Potential::phi1()).unwrap();
        assert!(d1.lo.abs() < 1e-8 && (d1.hi - 1.0).abs() < 1e-8 && d1.monotone);
        let c = level_domain(&Potential::constant(2, 2, 2, 0.3).unwrap()).unwrap();
        assert_eq!((c.lo, c.hi), (0.3, 0.3));
    }

    #[test]
    fn constant_potential_degenerates() {
        let pot = Potential::constant(3, 2, 2, -1.5).unwrap();
        assert!(pot.is_constant());
        assert_eq!(legendre_spectrum(&pot, -1.5).unwrap(), LevelDimension::Interior { dim: 1.0, s: 0.0 });
        assert_eq!(legendre_spectrum(&pot, 0.0).unwrap(), LevelDimension::Empty);
    }

    #[test]
    fn markov_measure_examples() {
        let mu = markov_measure(&Potential::phi2(), 0.0).unwrap();
        for p in mu.initial() {
            assert!((p - 0.5).abs() < 1e-14);
        }
        for row in mu.kernel() {
            assert!(row.iter().all(|p| (p - 0.5).abs() < 1e-14));
        }

        let (_, y) = phi1_psi_oracle(1.0);
        let mu = markov_measure(&Potential::phi1(), 1.0).unwrap();
        assert!((mu.kernel()[1][1] - E / y).abs() < 1e-12);
    }

    #[test]
    fn markov_measure_is_stochastic() {
        let pots = [Potential::phi1(), Potential::rademacher_product(3, 3).unwrap()];
        let pot3 = Potential::from_fn(3, 2, 3, |a| (a[0] as f64 - a[2] as f64) * (1.0 + a[1] as f64)).unwrap();
        for pot in pots.iter().chain(std::iter::once(&pot3)) {
            for s in [-5.0, -0.7, 0.0, 2.0, 9.0] {
                let mu = markov_measure(pot, s).unwrap();
                assert!((mu.initial().iter().sum::<f64>() - 1.0).abs() < 1e-12);
                for row in mu.kernel() {
                    assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn ruelle_examples() {
        let pot = Potential::phi2();
        assert!((ruelle_dimension(&pot, 0.0).unwrap() - 1.0).abs() < 1e-10);
        let mut last = 1.0;
        for s in [1.0, 2.0, 3.0, 5.0] {
            let d = ruelle_dimension(&pot, s).unwrap();
            assert!(d < last && d > 0.5);
            last = d;
        }
        assert!(last < 0.51);
    }

    #[test]
    fn curve_is_convex_and_monotone() {
        let grid: Vec<f64> = (0..81).map(|i| -10.0 + 0.25 * i as f64).collect();
        for pot in [Potential::phi1(), Potential::phi2()] {
            let curve = PressureCurve::sample(&pot, &grid).unwrap();
            assert!(curve.min_second_difference() >= -1e-9);
            assert!(curve.alpha_is_monotone(1e-9));
            assert!(curve.points.iter().all(|p| p.dim > 0.0 && p.dim <= 1.0 + 1e-9));
        }
    }
}
