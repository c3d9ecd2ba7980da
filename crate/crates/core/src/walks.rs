//! Oriented walks `S_n(x) = Σ_{k ≤ n} τ^{x_1 + ... + x_k} v` driven by step
//! sequences `x ∈ A^ℕ`, where `τ` is a linear map with `τ^p = I`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binary_entropy, categorical, unit_f64};

const POWER_MAX_ITERATIONS: usize = 100_000;
const S_CAP: f64 = 40.0;
const DOMAIN_RESIDUAL: f64 = 1e-6;
const NEWTON_MAX_ITERATIONS: usize = 200;
const GRADIENT_TARGET: f64 = 1e-11;

pub type Matrix = Vec<Vec<f64>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWalkSystem", into = "RawWalkSystem")]
pub struct WalkSystem {
    p: usize,
    tau: Matrix,
    v: Vec<f64>,
    steps: Vec<i64>,
    /// `τ^j v` for `j = 0..p`.
    orbit: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct RawWalkSystem {
    p: usize,
    tau: Matrix,
    v: Vec<f64>,
    #[serde(rename = "A")]
    steps: Vec<i64>,
}

impl TryFrom<RawWalkSystem> for WalkSystem {
    type Error = Error;

    fn try_from(raw: RawWalkSystem) -> Result<Self> {
        WalkSystem::new(raw.p, raw.tau, raw.v, raw.steps)
    }
}

impl From<WalkSystem> for RawWalkSystem {
    fn from(w: WalkSystem) -> Self {
        RawWalkSystem { p: w.p, tau: w.tau, v: w.v, steps: w.steps }
    }
}

fn mat_vec(m: &Matrix, x: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b[0].len();
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn residue(a: i64, p: usize) -> usize {
    a.rem_euclid(p as i64) as usize
}

impl WalkSystem {
    pub fn new(p: usize, tau: Matrix, v: Vec<f64>, steps: Vec<i64>) -> Result<Self> {
        if p < 2 {
            return Err(Error::invalid("order p must be at least 2"));
        }
        let dim = v.len();
        if dim == 0 || tau.len() != dim || tau.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("tau must be a square matrix matching the length of v"));
        }
        if tau.iter().flatten().chain(&v).any(|x| !x.is_finite()) {
            return Err(Error::invalid("tau and v must be finite"));
        }
        if v.iter().all(|&x| x == 0.0) {
            return Err(Error::invalid("v must be non-zero"));
        }
        let identity: Matrix = (0..dim).map(|i| (0..dim).map(|j| f64::from(i == j)).collect()).collect();
        let mut power = identity.clone();
        let mut orbit = Vec::with_capacity(p);
        for _ in 0..p {
            orbit.push(mat_vec(&power, &v));
            power = mat_mul(&tau, &power);
        }
        let deviation = power
            .iter()
            .flatten()
            .zip(identity.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if deviation > 1e-10 {
            return Err(Error::invalid(format!("tau^{p} differs from the identity by {deviation:e}")));
        }
        if steps.len() < 2 {
            return Err(Error::invalid("the step set A needs at least two elements"));
        }
        let mut residues: Vec<usize> = steps.iter().map(|&a| residue(a, p)).collect();
        residues.sort_unstable();
        if residues.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("steps in A must be distinct modulo p"));
        }
        // closure of {0} under adding steps must reach every residue
        let mut reached = vec![false; p];
        reached[0] = true;
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for &r in &residues {
                let j = (i + r) % p;
                if !reached[j] {
                    reached[j] = true;
                    stack.push(j);
                }
            }
        }
        if reached.iter().any(|&r| !r) {
            return Err(Error::invalid(format!("A does not generate Z/{p}Z")));
        }
        Ok(WalkSystem { p, tau, v, steps, orbit })
    }

    /// `p = 2, τ = -1, v = 1, A = {0, 1}`.
    pub fn case1() -> Self {
        WalkSystem::new(2, vec![vec![-1.0]], vec![1.0], vec![0, 1]).expect("valid system")
    }

    /// `p = 4`, rotation by a quarter turn, `v = (1, 0)`, `A = {-1, 1}`.
    pub fn case2() -> Self {
        WalkSystem::new(4, vec![vec![0.0, -1.0], vec![1.0, 0.0]], vec![1.0, 0.0], vec![-1, 1])
            .expect("valid system")
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dimension(&self) -> usize {
        self.v.len()
    }

    pub fn tau(&self) -> &Matrix {
        &self.tau
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn steps(&self) -> &[i64] {
        &self.steps
    }

    /// `τ^j v`.
    pub fn orbit(&self, j: usize) -> &[f64] {
        &self.orbit[j % self.p]
    }

    fn allowed(&self, i: usize, j: usize) -> bool {
        let d = (j + self.p - i) % self.p;
        self.steps.iter().any(|&a| residue(a, self.p) == d)
    }

    fn check_s(&self, s: &[f64]) -> Result<()> {
        if s.len() != self.dimension() {
            return Err(Error::invalid(format!("s has {} coordinates, expected {}", s.len(), self.dimension())));
        }
        if s.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("s must be finite"));
        }
        Ok(())
    }

    /// Exponents `⟨s, τ^j v⟩`.
    fn exponents(&self, s: &[f64]) -> Vec<f64> {
        self.orbit.iter().map(|w| dot(s, w)).collect()
    }
}

/// `M_s(i, j) = 1_A(j - i) exp⟨s, τ^j v⟩`.
pub fn transfer_matrix(system: &WalkSystem, s: &[f64]) -> Result<Matrix> {
    system.check_s(s)?;
    Ok(scaled_matrix(system, &system.exponents(s), 0.0))
}

fn scaled_matrix(system: &WalkSystem, exponents: &[f64], shift: f64) -> Matrix {
    let p = system.p;
    (0..p)
        .map(|i| {
            (0..p)
                .map(|j| if system.allowed(i, j) { (exponents[j] - shift).exp() } else { 0.0 })
                .collect()
        })
        .collect()
}

/// Perron root and probability eigenvector of a non-negative irreducible
/// matrix, by power iteration on `M + cI`. The shift removes periodicity;
/// `c` is the geometric mean of the extreme row sums, which bracket `λ`.
/// Iteration stops once the Collatz–Wielandt bounds
/// `min_i (Mx)_i/x_i ≤ λ ≤ max_i (Mx)_i/x_i` agree to `1e-14`.
pub fn spectral_radius(m: &Matrix) -> Result<(f64, Vec<f64>)> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::invalid("matrix must be square and non-empty"));
    }
    if m.iter().flatten().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(Error::invalid("matrix entries must be finite and non-negative"));
    }
    let rows: Vec<f64> = m.iter().map(|r| r.iter().sum()).collect();
    let (lo, hi) = rows.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    if lo == 0.0 {
        return Err(Error::invalid("matrix has a zero row, so it is not irreducible"));
    }
    let shift = (lo * hi).sqrt();
    let mut x = vec![1.0; n];
    let mut gap = f64::INFINITY;
    for _ in 0..POWER_MAX_ITERATIONS {
        let mx = mat_vec(m, &x);
        let ratios = mx.iter().zip(&x).map(|(a, b)| a / b);
        let (low, high) = ratios.fold((f64::INFINITY, 0.0f64), |(a, b), r| (a.min(r), b.max(r)));
        let lambda = 0.5 * (low + high);
        gap = high - low;
        if gap <= 1e-14 * lambda {
            let total: f64 = x.iter().sum();
            return Ok((lambda, x.iter().map(|v| v / total).collect()));
        }
        let y: Vec<f64> = mx.iter().zip(&x).map(|(a, b)| a + shift * b).collect();
        let top = y.iter().copied().fold(0.0, f64::max);
        x = y.iter().map(|v| v / top).collect();
    }
    Err(Error::NonConvergence { what: "power iteration", iterations: POWER_MAX_ITERATIONS, residual: gap })
}

/// Spectral data of `M_s`: `P(s) = log λ(s)` and the probability
/// eigenvector `t(s)` over `Z/pZ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkPressure {
    pub s: Vec<f64>,
    pub pressure: f64,
    pub t: Vec<f64>,
}

impl WalkPressure {
    /// `λ(s)`, infinite once `P(s)` exceeds the `f64` range.
    pub fn lambda(&self) -> f64 {
        self.pressure.exp()
    }
}

/// Entries are rescaled by `exp(-max_j ⟨s, τ^j v⟩)` before the power
/// iteration so large `|s|` does not overflow.
pub fn walk_pressure(system: &WalkSystem, s: &[f64]) -> Result<WalkPressure> {
    system.check_s(s)?;
    let exponents = system.exponents(s);
    let shift = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lambda, t) = spectral_radius(&scaled_matrix(system, &exponents, shift))?;
    Ok(WalkPressure { s: s.to_vec(), pressure: shift + lambda.ln(), t })
}

pub fn pressure(system: &WalkSystem, s: &[f64]) -> Result<f64> {
    Ok(walk_pressure(system, s)?.pressure)
}

/// Central differences with one Richardson step.
pub fn pressure_gradient(system: &WalkSystem, s: &[f64]) -> Result<Vec<f64>> {
    system.check_s(s)?;
    let mut grad = Vec::with_capacity(s.len());
    for i in 0..s.len() {
        let h = 1e-4 * s[i].abs().max(1.0);
        let diff = |h: f64| -> Result<f64> {
            let mut plus = s.to_vec();
            let mut minus = s.to_vec();
            plus[i] += h;
            minus[i] -= h;
            Ok((pressure(system, &plus)? - pressure(system, &minus)?) / (2.0 * h))
        };
        let coarse = diff(h)?;
        let fine = diff(h / 2.0)?;
        grad.push(fine + (fine - coarse) / 3.0);
    }
    Ok(grad)
}

fn hessian(system: &WalkSystem, s: &[f64]) -> Result<Matrix> {
    let n = s.len();
    let mut h = vec![vec![0.0; n]; n];
    for i in 0..n {
        let step = 1e-3 * s[i].abs().max(1.0);
        let mut plus = s.to_vec();
        let mut minus = s.to_vec();
        plus[i] += step;
        minus[i] -= step;
        let gp = pressure_gradient(system, &plus)?;
        let gm = pressure_gradient(system, &minus)?;
        for j in 0..n {
            h[i][j] = (gp[j] - gm[j]) / (2.0 * step);
        }
    }
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (h[i][j] + h[j][i]);
            h[i][j] = avg;
            h[j][i] = avg;
        }
    }
    Ok(h)
}

/// Gaussian elimination with partial pivoting; `None` if singular.
fn solve_linear(mut a: Matrix, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

/// Value of the walk spectrum at a frequency vector `α`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum WalkLevel {
    /// `∇P(s) = α` solved with `|s| ≤ 40`.
    Interior { dim: f64, s: Vec<f64> },
    /// `α` on the boundary of the frequency set; the value is read off at
    /// the cap where the gradient equation is met within `1e-6`.
    Extrapolated { dim: f64, s: Vec<f64> },
    OutOfDomain { residual: f64 },
}

impl WalkLevel {
    pub fn dim(&self) -> Option<f64> {
        match self {
            WalkLevel::Interior { dim, .. } | WalkLevel::Extrapolated { dim, .. } => Some(*dim),
            WalkLevel::OutOfDomain { .. } => None,
        }
    }
}

fn dual(system: &WalkSystem, s: &[f64], alpha: &[f64]) -> Result<f64> {
    Ok(pressure(system, s)? - dot(s, alpha))
}

fn clamp_norm(s: &mut [f64]) -> bool {
    let n = norm(s);
    if n > S_CAP {
        for x in s.iter_mut() {
            *x *= S_CAP / n;
        }
        true
    } else {
        false
    }
}

/// Damped Newton on the convex dual `F(s) = P(s) - ⟨s, α⟩`.
fn newton(system: &WalkSystem, alpha: &[f64]) -> Result<(Vec<f64>, bool)> {
    let n = alpha.len();
    let mut s = vec![0.0; n];
    let mut f = dual(system, &s, alpha)?;
    for _ in 0..NEWTON_MAX_ITERATIONS {
        let g: Vec<f64> = pressure_gradient(system, &s)?.iter().zip(alpha).map(|(a, b)| a - b).collect();
        if norm(&g) < GRADIENT_TARGET {
            return Ok((s, true));
        }
        let mut h = hessian(system, &s)?;
        let scale = h.iter().enumerate().map(|(i, r)| r[i].abs()).fold(0.0, f64::max);
        let damping = 1e-10 * scale.max(1e-12) + 1e-14;
        for (i, row) in h.iter_mut().enumerate() {
            row[i] += damping;
        }
        let mut step = solve_linear(h, g.iter().map(|x| -x).collect()).unwrap_or_else(|| g.iter().map(|x| -x).collect());
        if dot(&step, &g) >= 0.0 {
            step = g.iter().map(|x| -x).collect();
        }
        let len = norm(&step);
        if len > 4.0 {
            step.iter_mut().for_each(|x| *x *= 4.0 / len);
        }
        let mut t = 1.0;
        let mut moved = false;
        for _ in 0..60 {
            let mut trial: Vec<f64> = s.iter().zip(&step).map(|(a, b)| a + t * b).collect();
            let capped = clamp_norm(&mut trial);
            let ft = dual(system, &trial, alpha)?;
            if ft <= f + 1e-4 * t * dot(&step, &g).min(0.0) || (ft <= f && t < 1e-6) {
                let stalled = trial.iter().zip(&s).all(|(a, b)| a == b);
                s = trial;
                f = ft;
                moved = !stalled;
                if capped && stalled {
                    return Ok((s, false));
                }
                break;
            }
            t *= 0.5;
        }
        if !moved {
            return Ok((s, false));
        }
    }
    Ok((s, false))
}

/// Coordinate-wise bisection on `∂_i P(s) = α_i`, used when Newton stalls.
fn coordinate_bisection(system: &WalkSystem, alpha: &[f64], start: Vec<f64>) -> Result<Vec<f64>> {
    let mut s = start;
    for _ in 0..200 {
        for i in 0..s.len() {
            let partial = |x: f64, s: &[f64]| -> Result<f64> {
                let mut y = s.to_vec();
                y[i] = x;
                Ok(pressure_gradient(system, &y)?[i] - alpha[i])
            };
            let (mut lo, mut hi) = (-S_CAP, S_CAP);
            if partial(lo, &s)? >= 0.0 {
                s[i] = lo;
                continue;
            }
            if partial(hi, &s)? <= 0.0 {
                s[i] = hi;
                continue;
            }
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if partial(mid, &s)? < 0.0 { lo = mid } else { hi = mid }
            }
            s[i] = 0.5 * (lo + hi);
        }
        let g: Vec<f64> = pressure_gradient(system, &s)?.iter().zip(alpha).map(|(a, b)| a - b).collect();
        if norm(&g) < GRADIENT_TARGET {
            break;
        }
    }
    Ok(s)
}

/// `(P(s_α) - ⟨s_α, α⟩) / log |A|` where `∇P(s_α) = α`.
///
/// The sequence space `A^ℕ` carries the metric `|A|^{-n}`, so `log |A|` is
/// the normalisation that puts the peak at `1` (it equals `log p` when `A`
/// is a full residue system).
pub fn walk_spectrum(system: &WalkSystem, alpha: &[f64]) -> Result<WalkLevel> {
    system.check_s(alpha)?;
    let (mut s, converged) = newton(system, alpha)?;
    let residual = |s: &[f64]| -> Result<f64> {
        Ok(norm(&pressure_gradient(system, s)?.iter().zip(alpha).map(|(a, b)| a - b).collect::<Vec<_>>()))
    };
    let mut r = residual(&s)?;
    if !converged && r >= DOMAIN_RESIDUAL && norm(&s) < S_CAP * (1.0 - 1e-9) {
        s = coordinate_bisection(system, alpha, s)?;
        r = residual(&s)?;
    }
    let ln_a = (system.steps.len() as f64).ln();
    let dim = (dual(system, &s, alpha)? / ln_a).clamp(0.0, 1.0);
    let at_cap = norm(&s) >= S_CAP * (1.0 - 1e-9);
    Ok(if r < DOMAIN_RESIDUAL.min(1e-8) && !at_cap {
        WalkLevel::Interior { dim, s }
    } else if r < DOMAIN_RESIDUAL {
        WalkLevel::Extrapolated { dim, s }
    } else {
        WalkLevel::OutOfDomain { residual: r }
    })
}

/// `H((1+α)/2) / log 2` on `[-1, 1]`.
pub fn closed_form_case1(alpha: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::invalid(format!("alpha = {alpha} outside [-1, 1]")));
    }
    Ok(binary_entropy((1.0 + alpha) / 2.0) / std::f64::consts::LN_2)
}

/// `(H(1/2 + a) + H(1/2 + b)) / (2 log 2)` on `[-1/2, 1/2]^2`.
pub fn closed_form_case2(a: f64, b: f64) -> Result<f64> {
    if a.abs() > 0.5 || b.abs() > 0.5 || a.is_nan() || b.is_nan() {
        return Err(Error::invalid(format!("({a}, {b}) outside [-1/2, 1/2]^2")));
    }
    Ok((binary_entropy(0.5 + a) + binary_entropy(0.5 + b)) / (2.0 * std::f64::consts::LN_2))
}

fn step_index(system: &WalkSystem, a: i64) -> Result<usize> {
    system
        .steps
        .iter()
        .position(|&b| b == a)
        .ok_or_else(|| Error::invalid(format!("step {a} is not in A")))
}

/// The evolution measure `μ_s`, a chain on the running residue `w_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionMeasure {
    system: WalkSystem,
    spectral: WalkPressure,
    log_t: Vec<f64>,
    log_t_sum: f64,
    exponents: Vec<f64>,
}

impl EvolutionMeasure {
    pub fn new(system: &WalkSystem, s: &[f64]) -> Result<Self> {
        let spectral = walk_pressure(system, s)?;
        let log_t: Vec<f64> = spectral.t.iter().map(|t| t.ln()).collect();
        let sum_t: f64 = system.steps.iter().map(|&a| spectral.t[residue(a, system.p)]).sum();
        Ok(EvolutionMeasure {
            exponents: system.exponents(s),
            system: system.clone(),
            log_t,
            log_t_sum: sum_t.ln(),
            spectral,
        })
    }

    pub fn pressure(&self) -> &WalkPressure {
        &self.spectral
    }

    /// `log π(a) = log t_a - log Σ_{b ∈ A} t_b`.
    fn log_initial(&self, a: i64) -> f64 {
        self.log_t[residue(a, self.system.p)] - self.log_t_sum
    }

    /// `log Q` of stepping by `a` from residue `w`.
    fn log_step(&self, w: usize, a: i64) -> f64 {
        let next = (w + residue(a, self.system.p)) % self.system.p;
        self.log_t[next] + self.exponents[next] - self.spectral.pressure - self.log_t[w]
    }

    /// `log μ_s([x_1 ... x_n])`.
    pub fn log_mass(&self, word: &[i64]) -> Result<f64> {
        let Some((&first, rest)) = word.split_first() else {
            return Ok(0.0);
        };
        step_index(&self.system, first)?;
        let mut w = residue(first, self.system.p);
        let mut total = self.log_initial(first);
        for &a in rest {
            step_index(&self.system, a)?;
            total += self.log_step(w, a);
            w = (w + residue(a, self.system.p)) % self.system.p;
        }
        Ok(total)
    }

    pub fn mass(&self, word: &[i64]) -> Result<f64> {
        Ok(self.log_mass(word)?.exp())
    }

    /// `C(s)` with `|log μ_s([x_1..x_n]) - ⟨s, S_n(x)⟩ + n log λ(s)| ≤ C(s)`,
    /// from the exact identity
    /// `log μ_s = ⟨s, S_n - τ^{w_1} v⟩ - (n-1) log λ - log Σ_A t + log t_{w_n}`.
    pub fn local_constant(&self) -> f64 {
        let p = self.system.p;
        let first = self
            .system
            .steps
            .iter()
            .map(|&a| self.exponents[residue(a, p)].abs())
            .fold(0.0, f64::max);
        let t_max = self.log_t.iter().map(|l| l.abs()).fold(0.0, f64::max);
        self.spectral.pressure.abs() + first + self.log_t_sum.abs() + t_max
    }

    /// A path of `n` steps; draws use the given ChaCha stream.
    pub fn sample(&self, n: usize, seed: u64, stream: u64) -> Vec<i64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        self.sample_with(n, &mut rng)
    }

    fn sample_with<R: RngCore>(&self, n: usize, rng: &mut R) -> Vec<i64> {
        let steps = &self.system.steps;
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        let weights: Vec<f64> = steps.iter().map(|&a| self.log_initial(a).exp()).collect();
        let first = steps[categorical(&weights, unit_f64(rng))];
        out.push(first);
        let p = self.system.p;
        let mut w = residue(first, p);
        // transition laws per residue, computed once
        let table: Vec<Vec<f64>> = (0..p)
            .map(|w| steps.iter().map(|&a| self.log_step(w, a).exp()).collect())
            .collect();
        for _ in 1..n {
            let a = steps[categorical(&table[w], unit_f64(rng))];
            out.push(a);
            w = (w + residue(a, p)) % p;
        }
        out
    }
}

/// `S_1, ..., S_n` along a step sequence.
pub fn trajectory(system: &WalkSystem, x: &[i64], n: usize) -> Result<Vec<Vec<f64>>> {
    if n > x.len() {
        return Err(Error::OutOfRange { index: n, len: x.len() });
    }
    let mut w = 0;
    let mut s = vec![0.0; system.dimension()];
    let mut out = Vec::with_capacity(n);
    for &a in &x[..n] {
        step_index(system, a)?;
        w = (w + residue(a, system.p)) % system.p;
        for (si, oi) in s.iter_mut().zip(system.orbit(w)) {
            *si += oi;
        }
        out.push(s.clone());
    }
    Ok(out)
}

/// `E L_n^2 = n (1 + c)/(1 - c) - 2c (1 - c^n)/(1 - c)^2` with `c = cos θ`,
/// for the planar walk whose unit steps turn by `±θ` with equal chance.
pub fn feller_second_moment(angle: f64, n: u32) -> Result<f64> {
    if !(angle > 0.0 && angle < 2.0 * std::f64::consts::PI) {
        return Err(Error::invalid("turning angle must lie in (0, 2π)"));
    }
    let c = angle.cos();
    if c == 1.0 {
        return Err(Error::invalid("turning angle too close to 0"));
    }
    let n_f = n as f64;
    Ok(n_f * (1.0 + c) / (1.0 - c) - 2.0 * c * (1.0 - c.powi(n as i32)) / (1.0 - c).powi(2))
}

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarlo {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
}

pub fn feller_monte_carlo(angle: f64, n: u32, trials: usize, seed: u64) -> Result<MonteCarlo> {
    feller_second_moment(angle, n)?;
    if trials < 2 {
        return Err(Error::invalid("need at least two trials"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..trials {
        let (mut heading, mut x, mut y) = (0.0f64, 0.0, 0.0);
        for k in 0..n {
            if k > 0 {
                heading += if rng.next_u32() & 1 == 0 { angle } else { -angle };
            }
            x += heading.cos();
            y += heading.sin();
        }
        let l2 = x * x + y * y;
        sum += l2;
        sum_sq += l2 * l2;
    }
    let t = trials as f64;
    let mean = sum / t;
    let var = (sum_sq / t - mean * mean) * t / (t - 1.0);
    Ok(MonteCarlo { mean, std_error: (var.max(0.0) / t).sqrt(), trials })
}
