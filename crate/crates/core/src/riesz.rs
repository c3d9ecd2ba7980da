//! Riesz products on the sign group `{-1, 1}^ℕ` built from the Walsh
//! characters `x_k x_{2k} ... x_{dk}`, and the doubling/tripling averages on
//! the circle.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binary_entropy, unit_f64};

/// A finite word over the sign alphabet `{-1, +1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignWord(Vec<i8>);

impl SignWord {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::invalid(format!("sign {bad} is neither +1 nor -1")));
        }
        Ok(SignWord(signs))
    }

    /// Reads `+`/`-` characters or whitespace separated `1`/`-1` tokens.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.chars().all(|c| c == '+' || c == '-') {
            return Ok(SignWord(trimmed.chars().map(|c| if c == '+' { 1 } else { -1 }).collect()));
        }
        let signs = trimmed
            .split_whitespace()
            .map(|t| t.parse::<i8>().map_err(|_| Error::invalid(format!("bad sign token '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(signs)
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<i8>> for SignWord {
    type Error = Error;

    fn try_from(v: Vec<i8>) -> Result<Self> {
        SignWord::new(v)
    }
}

impl From<SignWord> for Vec<i8> {
    fn from(w: SignWord) -> Self {
        w.0
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `μ_b = Π_k (1 + b x_k x_{2k} ... x_{dk})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalshRieszMeasure {
    d: usize,
    b: f64,
}

/// Coordinates of a character `Π_{i ∈ S} x_i`, sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacterIndex(Vec<usize>);

impl CharacterIndex {
    pub fn new(mut coords: Vec<usize>) -> Result<Self> {
        if coords.contains(&0) {
            return Err(Error::invalid("coordinates are 1-based"));
        }
        coords.sort_unstable();
        if coords.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("a character of order 2 uses each coordinate at most once"));
        }
        Ok(CharacterIndex(coords))
    }

    pub fn trivial() -> Self {
        CharacterIndex(Vec::new())
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    /// `Π_{i ∈ S} x_i`.
    pub fn eval(&self, x: &[i8]) -> i8 {
        self.0.iter().map(|&i| x[i - 1]).product()
    }

    /// Writes the character as a product of generators
    /// `γ_k = x_k x_{2k} ... x_{dk}`, returning the `k` with `ε_k = 1`, or
    /// `None` if it lies outside their span. The largest coordinate of a
    /// product of generators is `d·max k`, which fixes the decomposition.
    pub fn decompose(&self, d: usize) -> Option<Vec<usize>> {
        let mut set: std::collections::BTreeSet<usize> = self.0.iter().copied().collect();
        let mut used = Vec::new();
        while let Some(&top) = set.iter().next_back() {
            if top % d != 0 {
                return None;
            }
            let k = top / d;
            for i in 1..=d {
                if !set.remove(&(i * k)) {
                    set.insert(i * k);
                }
            }
            used.push(k);
        }
        used.reverse();
        Some(used)
    }
}

/// `μ̂(γ_1^{ε_1} ... γ_n^{ε_n}) = Π_{ε_k = 1} a_k` for a Riesz product over
/// real characters of order 2, where each factor is `1 + a_k γ_k`.
pub fn fourier_coefficient(coeffs: &[f64], epsilon: &[u8]) -> Result<f64> {
    if epsilon.len() > coeffs.len() {
        return Err(Error::invalid("epsilon word is longer than the coefficient sequence"));
    }
    let mut value = 1.0;
    for (k, &e) in epsilon.iter().enumerate() {
        match e {
            0 => {}
            1 => value *= coeffs[k],
            _ => return Err(Error::invalid(format!("epsilon entry {e} is not 0 or 1"))),
        }
    }
    Ok(value)
}

impl WalshRieszMeasure {
    pub fn new(d: usize, b: f64) -> Result<Self> {
        if d < 1 {
            return Err(Error::invalid("arity d must be at least 1"));
        }
        if !(-1.0..=1.0).contains(&b) {
            return Err(Error::invalid(format!("coefficient b = {b} outside [-1, 1]")));
        }
        Ok(WalshRieszMeasure { d, b })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `2^{-n} Π_{dk ≤ n} (1 + b u_k u_{2k} ... u_{dk})`. Factors with
    /// `dk > n` average to one over the free coordinates.
    pub fn cylinder_mass(&self, u: &SignWord) -> f64 {
        let x = u.signs();
        let n = x.len();
        let mut mass = 0.5f64.powi(n as i32);
        for k in 1..=n / self.d {
            let g: i8 = (1..=self.d).map(|i| x[i * k - 1]).product();
            mass *= 1.0 + self.b * g as f64;
        }
        mass
    }

    /// Fourier coefficient at an arbitrary character.
    pub fn fourier(&self, character: &CharacterIndex) -> f64 {
        match character.decompose(self.d) {
            Some(used) => self.b.powi(used.len() as i32),
            None => 0.0,
        }
    }

    /// Draws `u_1 ... u_n` one coordinate at a time from the exact
    /// conditionals; only positions `k = dj` carry a non-uniform law.
    pub fn sample(&self, n: usize, seed: u64) -> Result<SignWord> {
        if n < 1 {
            return Err(Error::invalid("n must be at least 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x: Vec<i8> = Vec::with_capacity(n);
        for k in 1..=n {
            let p_plus = if k % self.d == 0 {
                let j = k / self.d;
                let partial: i8 = (1..self.d).map(|i| x[i * j - 1]).product();
                0.5 * (1.0 + self.b * partial as f64)
            } else {
                0.5
            };
            x.push(if unit_f64(&mut rng) < p_plus { 1 } else { -1 });
        }
        Ok(SignWord(x))
    }
}

/// `1 - 1/d + H((1+α)/2) / (d log 2)`.
pub fn walsh_spectrum(d: usize, alpha: f64) -> Result<f64> {
    if d < 1 {
        return Err(Error::invalid("arity d must be at least 1"));
    }
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::invalid(format!("alpha = {alpha} outside [-1, 1]")));
    }
    let d = d as f64;
    Ok(1.0 - 1.0 / d + binary_entropy((1.0 + alpha) / 2.0) / (d * std::f64::consts::LN_2))
}

/// `(1/n) Σ_{k ≤ n} x_k x_{2k} ... x_{dk}`.
pub fn walsh_average(x: &SignWord, d: usize, n: usize) -> Result<f64> {
    if d < 1 || n < 1 {
        return Err(Error::invalid("d and n must be at least 1"));
    }
    let needed = d.checked_mul(n).ok_or_else(|| Error::invalid("d n overflows"))?;
    if needed > x.len() {
        return Err(Error::OutOfRange { index: needed, len: x.len() });
    }
    let s = x.signs();
    let total: i64 = (1..=n)
        .map(|k| (1..=d).map(|i| s[i * k - 1]).product::<i8>() as i64)
        .sum();
    Ok(total as f64 / n as f64)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `(a 2^k + b 3^k) mod m` for `k = 1..=n`.
fn frequencies_mod(a: i64, b: i64, m: u64, n: usize) -> impl Iterator<Item = u64> {
    let a = a.rem_euclid(m as i64) as u64;
    let b = b.rem_euclid(m as i64) as u64;
    let (mut two, mut three) = (1u64 % m, 1u64 % m);
    (0..n).map(move |_| {
        two = mul_mod(two, 2, m);
        three = mul_mod(three, 3, m);
        (mul_mod(a, two, m) + mul_mod(b, three, m)) % m
    })
}

fn unit_phase(numerator: u64, den: u64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * numerator as f64 / den as f64)
}

/// `A_n(x) = (1/n) Σ_{k=1}^n e^{2πi (a 2^k + b 3^k) x}` at a rational `x`,
/// with phases reduced exactly modulo the denominator.
pub fn doubling_tripling_average(a: i64, b: i64, x: Ratio<u64>, n: usize) -> Result<Complex64> {
    if n < 1 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if *x.numer() >= *x.denom() {
        return Err(Error::invalid("x must lie in [0, 1)"));
    }
    let (num, den) = (*x.numer(), *x.denom());
    let total: Complex64 = frequencies_mod(a, b, den, n)
        .map(|f| unit_phase(mul_mod(f, num, den), den))
        .sum();
    Ok(total / n as f64)
}

/// Same average at a floating point `x`, read exactly as a multiple of
/// `2^{-53}`.
pub fn doubling_tripling_average_f64(a: i64, b: i64, x: f64, n: usize) -> Result<Complex64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::invalid("x must lie in [0, 1)"));
    }
    let den = 1u64 << 53;
    let num = (x * den as f64).floor() as u64;
    doubling_tripling_average(a, b, Ratio::new(num, den), n)
}

/// A point with its minimal periods under `x ↦ 2x` and `x ↦ 3x` mod 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicPoint {
    pub x: Ratio<u64>,
    pub period2: usize,
    pub period3: usize,
}

/// Minimal period of `x ↦ m x mod 1` at a rational point, by simulation.
pub fn orbit_period(x: Ratio<u64>, m: u64, limit: usize) -> Option<usize> {
    let (num, den) = (*x.numer() % *x.denom(), *x.denom());
    let mut y = num;
    for step in 1..=limit {
        y = mul_mod(y, m, den);
        if y == num {
            return Some(step);
        }
    }
    None
}

const PERIODIC_POINT_LIMIT: u128 = 1 << 20;

/// Common periodic points of periods dividing `n` under doubling and `m`
/// under tripling: the `k/d`, `d = gcd(2^n - 1, 3^m - 1)`. Each point is
/// checked by running both orbits.
pub fn common_periodic_points(n: u32, m: u32) -> Result<Vec<PeriodicPoint>> {
    if n < 1 || m < 1 {
        return Err(Error::invalid("n and m must be at least 1"));
    }
    if n > 127 || m > 80 {
        return Err(Error::TooLarge { requested: n.max(m) as f64, limit: 80.0 });
    }
    let d = ((1u128 << n) - 1).gcd(&(3u128.pow(m) - 1));
    if d > PERIODIC_POINT_LIMIT {
        return Err(Error::TooLarge { requested: d as f64, limit: PERIODIC_POINT_LIMIT as f64 });
    }
    let d = d as u64;
    let mut out = Vec::with_capacity(d.saturating_sub(1) as usize);
    for k in 1..d {
        let x = Ratio::new(k, d);
        let period2 = orbit_period(x, 2, n as usize);
        let period3 = orbit_period(x, 3, m as usize);
        match (period2, period3) {
            (Some(p2), Some(p3)) if (n as usize).is_multiple_of(p2) && (m as usize).is_multiple_of(p3) => {
                out.push(PeriodicPoint { x, period2: p2, period3: p3 })
            }
            _ => {
                return Err(Error::invalid(format!("orbit check failed at {k}/{d}")));
            }
        }
    }
    Ok(out)
}

/// A Monte Carlo estimate of `(1/n) log Z_n` with a delta-method error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PressureEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// The Mersenne prime `2^61 - 1`; samples are `x = U / M` so every phase
/// `(a 2^k + b 3^k) x mod 1` is computed exactly.
const SAMPLE_MODULUS: u64 = (1 << 61) - 1;

/// Estimates `(1/n) log ∫ Q_n(x) dx` with
/// `Q_n(x) = Π_{k ≤ n} exp(s cos 2πθ_k + t sin 2πθ_k)`, `θ_k = (a 2^k + b 3^k) x`,
/// by averaging `Q_n` at uniform sample points in log space. Exploratory:
/// nothing is claimed about the limit `n → ∞`.
#[allow(clippy::too_many_arguments)]
pub fn empirical_pressure_23(a: i64, b: i64, s: f64, t: f64, n: usize, samples: usize, seed: u64) -> Result<PressureEstimate> {
    if n < 1 || samples < 2 {
        return Err(Error::invalid("need n >= 1 and at least two samples"));
    }
    if !s.is_finite() || !t.is_finite() {
        return Err(Error::invalid("s and t must be finite"));
    }
    if s == 0.0 && t == 0.0 {
        return Ok(PressureEstimate { value: 0.0, std_error: 0.0, samples });
    }
    let freqs: Vec<u64> = frequencies_mod(a, b, SAMPLE_MODULUS, n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let logs: Vec<f64> = (0..samples)
        .map(|_| {
            let u = (rng.next_u64() >> 3) % SAMPLE_MODULUS;
            freqs
                .iter()
                .map(|&f| {
                    let theta = std::f64::consts::TAU * mul_mod(f, u, SAMPLE_MODULUS) as f64 / SAMPLE_MODULUS as f64;
                    s * theta.cos() + t * theta.sin()
                })
                .sum()
        })
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = logs.iter().map(|l| (l - top).exp()).collect();
    let count = samples as f64;
    let mean = scaled.iter().sum::<f64>() / count;
    let var = scaled.iter().map(|w| (w - mean).powi(2)).sum::<f64>() / (count - 1.0);
    let log_z = top + mean.ln();
    Ok(PressureEstimate {
        value: log_z / n as f64,
        std_error: (var / count).sqrt() / mean / n as f64,
        samples,
    })
}

/// `log Σ_{n≥0} r^{2n} / ((n!)^2 4^n)` at `r = √(s² + t²)`, the pressure of
/// the independent-phase model. Terms are summed in log space and the series
/// stops once a term past the peak drops below `1e-18` of the sum.
pub fn bessel_pressure(s: f64, t: f64) -> Result<f64> {
    if !s.is_finite() || !t.is_finite() {
        return Err(Error::invalid("s and t must be finite"));
    }
    let r = s.hypot(t);
    if r == 0.0 {
        return Ok(0.0);
    }
    let step = 2.0 * (r / 2.0).ln();
    let mut log_term = 0.0;
    let mut log_sum = 0.0f64;
    for n in 1usize.. {
        log_term += step - 2.0 * (n as f64).ln();
        let hi = log_sum.max(log_term);
        log_sum = hi + ((log_sum - hi).exp() + (log_term - hi).exp()).ln();
        let past_peak = (n as f64) > r / 2.0;
        if past_peak && log_term < log_sum + (1e-18f64).ln() {
            break;
        }
    }
    Ok(log_sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_words(n: usize) -> impl Iterator<Item = SignWord> {
        (0..1usize << n).map(move |c| SignWord((0..n).map(|i| if c >> i & 1 == 1 { -1 } else { 1 }).collect()))
    }

    #[test]
    fn sign_words() {
        assert!(SignWord::new(vec![1, 0]).is_err());
        let w = SignWord::parse("+-+").unwrap();
        assert_eq!(w.signs(), &[1, -1, 1]);
        assert_eq!(SignWord::parse(&w.to_string()).unwrap(), w);
        assert!(SignWord::parse("1 2").is_err());
    }

    #[test]
    fn spectrum_values() {
        for d in 1..=6 {
            assert!((walsh_spectrum(d, 0.0).unwrap() - 1.0).abs() < 1e-15);
            let edge = 1.0 - 1.0 / d as f64;
            assert!((walsh_spectrum(d, 1.0).unwrap() - edge).abs() < 1e-15);
            assert!((walsh_spectrum(d, -1.0).unwrap() - edge).abs() < 1e-15);
        }
        assert!((walsh_spectrum(2, 0.5).unwrap() - 0.9056390622295664).abs() < 1e-15);
        assert!((walsh_spectrum(1, 0.5).unwrap() - 0.8112781244591329).abs() < 1e-15);
        assert!(walsh_spectrum(2, 1.1).is_err());
        assert!(walsh_spectrum(0, 0.0).is_err());
    }

    #[test]
    fn cylinder_examples() {
        let haar = WalshRieszMeasure::new(2, 0.0).unwrap();
        assert_eq!(haar.cylinder_mass(&SignWord(vec![1, -1, -1])), 0.125);
        let one = WalshRieszMeasure::new(2, 1.0).unwrap();
        assert_eq!(one.cylinder_mass(&SignWord(vec![1, 1])), 0.5);
        assert_eq!(one.cylinder_mass(&SignWord(vec![1, -1])), 0.0);
        let mu = WalshRieszMeasure::new(2, 0.3).unwrap();
        assert_eq!(mu.cylinder_mass(&SignWord(vec![1])), 0.5);
        assert_eq!(mu.cylinder_mass(&SignWord(vec![-1])), 0.5);
        assert!(WalshRieszMeasure::new(2, 1.5).is_err());
    }

    #[test]
    fn masses_sum_to_one_and_are_consistent() {
        for (d, b) in [(1, 0.6), (2, -0.8), (3, 0.4), (4, 1.0)] {
            let mu = WalshRieszMeasure::new(d, b).unwrap();
            for n in 1..=16 {
                let total: f64 = all_words(n).map(|u| mu.cylinder_mass(&u)).sum();
                assert!((total - 1.0).abs() < 1e-12, "d={d} n={n}");
            }
            for n in 0..=12 {
                for u in all_words(n) {
                    let kids: f64 = [1i8, -1]
                        .iter()
                        .map(|&s| {
                            let mut w = u.signs().to_vec();
                            w.push(s);
                            mu.cylinder_mass(&SignWord(w))
                        })
                        .sum();
                    assert!((mu.cylinder_mass(&u) - kids).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn fourier_coefficients_match_cylinder_integrals() {
        for (d, b) in [(1, 0.5), (2, 0.7), (3, -0.6)] {
            let mu = WalshRieszMeasure::new(d, b).unwrap();
            let n = 10;
            let words: Vec<(SignWord, f64)> = all_words(n).map(|u| {
                let m = mu.cylinder_mass(&u);
                (u, m)
            }).collect();
            for mask in 0..1usize << n {
                let coords: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
                let ch = CharacterIndex::new(coords).unwrap();
                let integral: f64 = words.iter().map(|(u, m)| m * ch.eval(u.signs()) as f64).sum();
                assert!((integral - mu.fourier(&ch)).abs() < 1e-12, "d={d} {:?}", ch.coords());
            }
        }
        assert_eq!(fourier_coefficient(&[0.3, 0.4], &[]).unwrap(), 1.0);
        assert_eq!(fourier_coefficient(&[0.3, 0.4], &[1]).unwrap(), 0.3);
        assert!((fourier_coefficient(&[0.3, 0.4], &[1, 1]).unwrap() - 0.12).abs() < 1e-16);
        assert!(fourier_coefficient(&[0.3], &[2]).is_err());
        assert!(fourier_coefficient(&[0.3], &[1, 1]).is_err());
    }

    #[test]
    fn decomposition() {
        let ch = CharacterIndex::new(vec![1, 2]).unwrap();
        assert_eq!(ch.decompose(2), Some(vec![1]));
        // γ_1 γ_2 = x_1 x_2 · x_2 x_4 = x_1 x_4
        assert_eq!(CharacterIndex::new(vec![4, 1]).unwrap().decompose(2), Some(vec![1, 2]));
        assert_eq!(CharacterIndex::new(vec![3]).unwrap().decompose(2), None);
        assert_eq!(CharacterIndex::trivial().decompose(3), Some(vec![]));
        assert!(CharacterIndex::new(vec![2, 2]).is_err());
    }

    #[test]
    fn sampling() {
        let mu = WalshRieszMeasure::new(2, 1.0).unwrap();
        let x = mu.sample(2000, 1).unwrap();
        assert!((1..=1000).all(|k| x.signs()[k - 1] * x.signs()[2 * k - 1] == 1));
        let n = 100_000;
        for b in [-0.8, -0.4, 0.0, 0.4, 0.8] {
            let mu = WalshRieszMeasure::new(2, b).unwrap();
            let x = mu.sample(2 * n, 7).unwrap();
            let avg = walsh_average(&x, 2, n).unwrap();
            assert!((avg - b).abs() < 3.0 / (n as f64).sqrt(), "b={b} {avg}");
        }
        let a = WalshRieszMeasure::new(3, 0.2).unwrap();
        assert_eq!(a.sample(100, 5).unwrap(), a.sample(100, 5).unwrap());
    }

    #[test]
    fn walsh_averages() {
        let ones = SignWord(vec![1; 20]);
        assert_eq!(walsh_average(&ones, 2, 10).unwrap(), 1.0);
        assert!(walsh_average(&ones, 2, 11).is_err());
        // x_k = -1 when the 2-adic valuation of k is odd; k and 2k then have
        // opposite signs
        let mut x = vec![1i8; 64];
        for k in 1usize..=64 {
            if k.trailing_zeros() % 2 == 1 {
                x[k - 1] = -1;
            }
        }
        assert_eq!(walsh_average(&SignWord(x), 2, 32).unwrap(), -1.0);
    }

    #[test]
    fn doubling_tripling() {
        let zero = doubling_tripling_average(1, 1, Ratio::new(0, 1), 10).unwrap();
        assert_eq!(zero, Complex64::new(1.0, 0.0));
        let fifth = Ratio::new(1u64, 5);
        let a4 = doubling_tripling_average(1, 1, fifth, 4).unwrap();
        let expected = (2.0 + 2.0 * (0.8 * std::f64::consts::PI).cos()) / 4.0;
        assert!((a4.re - expected).abs() < 1e-15 && a4.im.abs() < 1e-15);
        assert!((doubling_tripling_average(1, 1, fifth, 4000).unwrap() - a4).norm() < 1e-12);
        for (n, m) in [(4u32, 4u32), (4, 2), (6, 3)] {
            for p in common_periodic_points(n, m).unwrap() {
                let nm = (n * m) as usize;
                let limit = doubling_tripling_average(2, -1, p.x, nm).unwrap();
                let long = doubling_tripling_average(2, -1, p.x, nm * 50).unwrap();
                assert!((limit - long).norm() < 1e-12);
            }
        }
        assert!(doubling_tripling_average(1, 1, Ratio::new(5, 5), 3).is_err());
        assert!(doubling_tripling_average_f64(3, -2, 0.3, 100).unwrap().norm() <= 1.0 + 1e-12);
        assert_eq!(doubling_tripling_average_f64(1, 0, 0.5, 4).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn periodic_points() {
        assert!(common_periodic_points(1, 1).unwrap().is_empty());
        let pts: Vec<Ratio<u64>> = common_periodic_points(4, 4).unwrap().into_iter().map(|p| p.x).collect();
        assert_eq!(pts, (1..5).map(|k| Ratio::new(k, 5)).collect::<Vec<_>>());
        assert_eq!(orbit_period(Ratio::new(1, 5), 2, 10), Some(4));
        assert_eq!(orbit_period(Ratio::new(1, 5), 3, 10), Some(4));
        let mut nonempty = 0;
        for n in 1..=10 {
            for m in 1..=10 {
                let pts = common_periodic_points(n, m).unwrap();
                let d = ((1u128 << n) - 1).gcd(&(3u128.pow(m) - 1)) as usize;
                assert_eq!(pts.len(), d - 1);
                nonempty += usize::from(!pts.is_empty());
            }
        }
        assert_eq!(nonempty, 9);
    }

    #[test]
    fn bessel() {
        assert_eq!(bessel_pressure(0.0, 0.0).unwrap(), 0.0);
        assert!((bessel_pressure(3.0, 0.0).unwrap() - 1.585_307_621_813_421).abs() < 1e-14);
        for r in [0.1, 1.0, 2.5, 6.0, 10.0] {
            let m = 20_000;
            let h = std::f64::consts::TAU / m as f64;
            let quad: f64 = (0..m).map(|i| (r * ((i as f64 + 0.5) * h).cos()).exp()).sum::<f64>() / m as f64;
            assert!((bessel_pressure(r, 0.0).unwrap() - quad.ln()).abs() < 1e-10, "r={r}");
            let (s, t) = (r * 0.6, r * 0.8);
            assert!((bessel_pressure(s, t).unwrap() - bessel_pressure(0.0, r).unwrap()).abs() < 1e-12);
        }
        assert!(bessel_pressure(2000.0, 0.0).unwrap().is_finite());
    }

    #[test]
    fn empirical_pressure() {
        let zero = empirical_pressure_23(1, 1, 0.0, 0.0, 20, 10, 0).unwrap();
        assert_eq!(zero.value, 0.0);
        let est = empirical_pressure_23(1, 1, 0.5, 0.3, 12, 20_000, 9).unwrap();
        assert!(est.value.is_finite() && est.std_error > 0.0);
        // for small couplings the phases behave nearly independently
        let reference = bessel_pressure(0.5, 0.3).unwrap();
        assert!((est.value - reference).abs() < 0.05, "{est:?} {reference}");
        let again = |seed| empirical_pressure_23(1, 1, 0.5, 0.3, 12, 500, seed).unwrap();
        assert_eq!(again(2), again(2));
    }
}
