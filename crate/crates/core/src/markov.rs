//! Finite-order Markov measures on `Σ_m`.
//!
//! An order-`r` measure is given by an initial law on `A^r` and a kernel
//! that maps the last `r` symbols to a law on the next symbol. Order zero is
//! a Bernoulli measure. Words and windows are encoded as base-`m` integers
//! with the first symbol most significant.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{categorical, entropy, unit_f64, xlogx};

const LAW_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMarkov")]
pub struct MarkovMeasure {
    m: usize,
    order: usize,
    initial: Vec<f64>,
    /// Row-major `m^order × m`.
    kernel: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawMarkov {
    m: usize,
    order: usize,
    initial: Vec<f64>,
    kernel: Vec<Vec<f64>>,
}

impl TryFrom<RawMarkov> for MarkovMeasure {
    type Error = Error;

    fn try_from(raw: RawMarkov) -> Result<Self> {
        MarkovMeasure::new(raw.m, raw.order, raw.initial, raw.kernel)
    }
}

fn check_law(law: &[f64], what: &str) -> Result<()> {
    if law.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
        return Err(Error::invalid(format!("{what} has a negative or non-finite entry")));
    }
    let total: f64 = law.iter().sum();
    if (total - 1.0).abs() > LAW_TOLERANCE {
        return Err(Error::invalid(format!("{what} sums to {total}, not 1")));
    }
    Ok(())
}

impl MarkovMeasure {
    pub fn new(m: usize, order: usize, initial: Vec<f64>, kernel: Vec<Vec<f64>>) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid("alphabet needs at least 2 symbols"));
        }
        let windows = m
            .checked_pow(order as u32)
            .filter(|&w| w <= 1 << 24)
            .ok_or_else(|| Error::invalid("Markov order too large for this alphabet"))?;
        if initial.len() != windows {
            return Err(Error::invalid(format!(
                "initial law has {} entries, expected {windows}",
                initial.len()
            )));
        }
        if kernel.len() != windows || kernel.iter().any(|row| row.len() != m) {
            return Err(Error::invalid(format!("kernel must be {windows} rows of {m} entries")));
        }
        check_law(&initial, "initial law")?;
        for (w, row) in kernel.iter().enumerate() {
            check_law(row, &format!("kernel row {w}"))?;
        }
        Ok(MarkovMeasure { m, order, initial, kernel })
    }

    /// Bernoulli measure with the given symbol law.
    pub fn bernoulli(probs: Vec<f64>) -> Result<Self> {
        let m = probs.len();
        Self::new(m, 0, vec![1.0], vec![probs])
    }

    pub fn uniform(m: usize) -> Result<Self> {
        Self::bernoulli(vec![1.0 / m as f64; m])
    }

    /// Dirac mass on the constant sequence `sss...`.
    pub fn point_mass(m: usize, symbol: u8) -> Result<Self> {
        if symbol as usize >= m {
            return Err(Error::invalid("symbol outside alphabet"));
        }
        let mut probs = vec![0.0; m];
        probs[symbol as usize] = 1.0;
        Self::bernoulli(probs)
    }

    pub fn alphabet_size(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    pub fn kernel(&self) -> &[Vec<f64>] {
        &self.kernel
    }

    fn window_count(&self) -> usize {
        self.initial.len()
    }

    /// Transition probability between windows `u, v ∈ A^order`; non-zero only
    /// when `v` is `u` shifted left with one symbol appended.
    pub fn transition_between(&self, u: usize, v: usize) -> f64 {
        if self.order == 0 {
            return 0.0;
        }
        let w = self.window_count();
        let shifted = (u * self.m) % w;
        if v / self.m != shifted / self.m {
            return 0.0;
        }
        self.kernel[u][v % self.m]
    }

    /// `μ([u])`.
    pub fn cylinder_mass(&self, word: &[u8]) -> f64 {
        let r = self.order;
        let m = self.m;
        if word.len() < r {
            let code = encode(word, m);
            let span = m.pow((r - word.len()) as u32);
            return self.initial[code * span..(code + 1) * span].iter().sum();
        }
        let mut window = encode(&word[..r], m);
        let w = self.window_count();
        let mut mass = self.initial[window];
        for &a in &word[r..] {
            mass *= self.kernel[window][a as usize];
            if mass == 0.0 {
                return 0.0;
            }
            window = (window * m + a as usize) % w;
        }
        mass
    }

    /// `H_k(μ)` for `k = 1..=depth`, natural logarithms, by propagating the
    /// window law and applying the chain rule.
    pub fn marginal_entropies(&self, depth: usize) -> Vec<f64> {
        let r = self.order;
        let m = self.m;
        let mut out = Vec::with_capacity(depth);
        for k in 1..=depth.min(r) {
            let span = m.pow((r - k) as u32);
            let marginal: Vec<f64> = self.initial.chunks(span).map(|c| c.iter().sum()).collect();
            out.push(entropy(&marginal));
        }
        if depth <= r {
            return out;
        }
        let row_entropy: Vec<f64> = self.kernel.iter().map(|row| entropy(row)).collect();
        let w = self.window_count();
        let mut law = self.initial.clone();
        let mut h = entropy(&self.initial);
        for _ in r + 1..=depth {
            h += law.iter().zip(&row_entropy).map(|(p, e)| p * e).sum::<f64>();
            out.push(h);
            if r > 0 {
                let mut next = vec![0.0; w];
                for (u, &p) in law.iter().enumerate() {
                    if p == 0.0 {
                        continue;
                    }
                    let base = (u * m) % w;
                    for (a, &k) in self.kernel[u].iter().enumerate() {
                        next[base + a] += p * k;
                    }
                }
                law = next;
            }
        }
        out
    }

    /// Entropy of the next symbol given a window distributed as `law`.
    pub fn conditional_entropy_under(&self, law: &[f64]) -> f64 {
        law.iter()
            .zip(&self.kernel)
            .map(|(p, row)| p * row.iter().map(|&x| xlogx(x)).sum::<f64>())
            .sum()
    }

    /// Draw `len` symbols of a path.
    pub fn sample_path<R: RngCore>(&self, len: usize, rng: &mut R) -> Vec<u8> {
        let r = self.order;
        let m = self.m;
        let mut out = Vec::with_capacity(len.max(r));
        let mut window = 0;
        if r > 0 {
            window = categorical(&self.initial, unit_f64(rng));
            out.extend(decode(window, m, r));
        }
        let w = self.window_count();
        while out.len() < len {
            let a = categorical(&self.kernel[window], unit_f64(rng));
            out.push(a as u8);
            window = (window * m + a) % w;
        }
        out.truncate(len);
        out
    }
}

pub(crate) fn encode(word: &[u8], m: usize) -> usize {
    word.iter().fold(0, |acc, &a| acc * m + a as usize)
}

pub(crate) fn decode(mut code: usize, m: usize, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (code % m) as u8;
        code /= m;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_state_chain() -> MarkovMeasure {
        // stationary law of [[0.7,0.3],[0.4,0.6]] is (4/7, 3/7)
        MarkovMeasure::new(
            2,
            1,
            vec![4.0 / 7.0, 3.0 / 7.0],
            vec![vec![0.7, 0.3], vec![0.4, 0.6]],
        )
        .unwrap()
    }

    fn brute_entropy(mu: &MarkovMeasure, k: usize) -> f64 {
        let m = mu.alphabet_size();
        (0..m.pow(k as u32))
            .map(|c| xlogx(mu.cylinder_mass(&decode(c, m, k))))
            .sum()
    }

    #[test]
    fn bernoulli_entropies() {
        let u = MarkovMeasure::uniform(2).unwrap();
        for (k, h) in u.marginal_entropies(10).iter().enumerate() {
            assert!((h - (k + 1) as f64 * 2f64.ln()).abs() < 1e-12);
        }
        let b = MarkovMeasure::bernoulli(vec![0.25, 0.75]).unwrap();
        let h1 = -(0.25f64 * 0.25f64.ln()) - 0.75 * 0.75f64.ln();
        assert!((b.marginal_entropies(1)[0] - h1).abs() < 1e-15);
    }

    #[test]
    fn stationary_chain_rule() {
        let mu = two_state_chain();
        let pi = [4.0 / 7.0, 3.0 / 7.0];
        let h1 = entropy(&pi);
        let rate = mu.conditional_entropy_under(&pi);
        let hs = mu.marginal_entropies(12);
        for (k, h) in hs.iter().enumerate() {
            let closed = h1 + k as f64 * rate;
            assert!((h - closed).abs() < 1e-12, "k={} {h} {closed}", k + 1);
        }
    }

    #[test]
    fn dp_entropy_matches_enumeration_for_higher_order() {
        // order-2 chain with a non-stationary start
        let initial = vec![0.1, 0.2, 0.3, 0.4];
        let kernel = vec![vec![0.5, 0.5], vec![0.9, 0.1], vec![0.2, 0.8], vec![0.35, 0.65]];
        let mu = MarkovMeasure::new(2, 2, initial, kernel).unwrap();
        let hs = mu.marginal_entropies(10);
        for k in 1..=10 {
            assert!((hs[k - 1] - brute_entropy(&mu, k)).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn masses_are_consistent() {
        let mu = two_state_chain();
        for k in 0..8 {
            for c in 0..(1 << k) {
                let u = decode(c, 2, k);
                let parent = mu.cylinder_mass(&u);
                let kids: f64 = (0..2u8)
                    .map(|a| {
                        let mut w = u.clone();
                        w.push(a);
                        mu.cylinder_mass(&w)
                    })
                    .sum();
                assert!((parent - kids).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn window_transition_structure() {
        let initial = vec![0.25; 4];
        let kernel = vec![vec![0.5, 0.5]; 4];
        let mu = MarkovMeasure::new(2, 2, initial, kernel).unwrap();
        // 01 -> 10 or 11
        assert_eq!(mu.transition_between(0b01, 0b10), 0.5);
        assert_eq!(mu.transition_between(0b01, 0b11), 0.5);
        assert_eq!(mu.transition_between(0b01, 0b00), 0.0);
    }

    #[test]
    fn validation() {
        assert!(MarkovMeasure::bernoulli(vec![0.5, 0.6]).is_err());
        assert!(MarkovMeasure::bernoulli(vec![1.5, -0.5]).is_err());
        assert!(MarkovMeasure::new(2, 1, vec![1.0], vec![vec![1.0, 0.0]]).is_err());
        assert!(MarkovMeasure::point_mass(2, 2).is_err());
    }

    #[test]
    fn sampling_is_seeded_and_respects_zeros() {
        let mu = MarkovMeasure::new(2, 1, vec![0.0, 1.0], vec![vec![0.5, 0.5], vec![1.0, 0.0]]).unwrap();
        let a = mu.sample_path(500, &mut ChaCha8Rng::seed_from_u64(9));
        let b = mu.sample_path(500, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
        assert_eq!(a[0], 1);
        assert!(a.windows(2).all(|w| !(w[0] == 1 && w[1] == 1)));
    }
}
