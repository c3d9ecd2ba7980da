//! Telescopic product measures: independent copies of a base measure laid
//! along the chains `Λ_i = {i q^j}`, `q ∤ i`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::markov::MarkovMeasure;
use crate::symbolic::{chain_length, lambda_partition, restrict};
use crate::thermo::Potential;

#[derive(Debug, Clone, PartialEq)]
pub struct TelescopicMeasure {
    base: MarkovMeasure,
    q: usize,
}

/// A truncated series together with the bound on what was dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms: usize,
    pub tail_bound: f64,
}

/// `(q-1)^2 Σ_{k>K} k / q^{k+1}` in closed form.
pub(crate) fn linear_growth_tail(q: usize, terms: usize) -> f64 {
    let q = q as f64;
    let k = terms as f64;
    q.powf(-k) * ((k + 1.0) - k / q)
}

/// Smallest `K` whose linear-growth tail is below `tol`.
pub(crate) fn terms_for_tolerance(q: usize, tol: f64) -> usize {
    (1..).find(|&k| linear_growth_tail(q, k) < tol).expect("tail decays geometrically")
}

/// A sampled prefix `x_1 ... x_n` and how it was generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePath {
    pub symbols: Vec<u8>,
    pub seed: u64,
    pub n: usize,
}

impl SamplePath {
    /// One line of symbol digits.
    pub fn to_line(&self) -> String {
        self.symbols
            .iter()
            .map(|&s| std::char::from_digit(s as u32, 36).unwrap_or('?'))
            .collect()
    }
}

impl TelescopicMeasure {
    pub fn new(base: MarkovMeasure, q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("q must be at least 2, got {q}")));
        }
        Ok(TelescopicMeasure { base, q })
    }

    pub fn base(&self) -> &MarkovMeasure {
        &self.base
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// `P_μ([u]) = Π_{i ≤ n, q ∤ i} μ([u|Λ_i])`.
    pub fn cylinder_mass(&self, word: &[u8]) -> Result<f64> {
        if let Some(&bad) = word.iter().find(|&&a| a as usize >= self.base.alphabet_size()) {
            return Err(Error::invalid(format!("symbol {bad} outside the alphabet")));
        }
        if word.is_empty() {
            return Ok(1.0);
        }
        let mut mass = 1.0;
        for chain in lambda_partition(self.q, word.len())? {
            mass *= self.base.cylinder_mass(&restrict(word, &chain)?);
            if mass == 0.0 {
                break;
            }
        }
        Ok(mass)
    }

    /// `(q-1)^2 / log m · Σ_k H_k(μ) / q^{k+1}`, truncated once the tail bound
    /// from `H_k ≤ k log m` drops below `tol`.
    pub fn dimension(&self, tol: f64) -> Result<SeriesValue> {
        if !(tol > 0.0) {
            return Err(Error::invalid("tolerance must be positive"));
        }
        let terms = terms_for_tolerance(self.q, tol);
        let q = self.q as f64;
        let entropies = self.base.marginal_entropies(terms);
        let sum: f64 = entropies
            .iter()
            .enumerate()
            .map(|(i, h)| h / q.powi(i as i32 + 2))
            .sum();
        let value = (q - 1.0).powi(2) * sum / (self.base.alphabet_size() as f64).ln();
        Ok(SeriesValue { value, terms, tail_bound: linear_growth_tail(self.q, terms) })
    }

    /// Draw `x_1 ... x_n`. Chain `Λ_i` uses ChaCha stream `i` of `seed`, so
    /// each chain's draw does not depend on the others or on `n`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<SamplePath> {
        if n < 1 {
            return Err(Error::invalid("horizon n must be at least 1"));
        }
        let mut symbols = vec![0u8; n];
        for i in (1..=n).filter(|i| i % self.q != 0) {
            let len = chain_length(i, self.q, n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let chain = self.base.sample_path(len, &mut rng);
            let mut k = i;
            for a in chain {
                symbols[k - 1] = a;
                k *= self.q;
            }
        }
        Ok(SamplePath { symbols, seed, n })
    }
}

/// `A_n φ(x) = (1/n) Σ_{k ≤ n} φ(x_k, x_{qk}, ..., x_{q^{d-1}k})`.
pub fn empirical_multiple_average(x: &[u8], potential: &Potential, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let span = potential.q().pow(potential.d() as u32 - 1);
    let needed = span
        .checked_mul(n)
        .ok_or_else(|| Error::invalid("q^{d-1} n overflows"))?;
    if needed > x.len() {
        return Err(Error::OutOfRange { index: needed, len: x.len() });
    }
    if let Some(&bad) = x[..needed].iter().find(|&&a| a as usize >= potential.m()) {
        return Err(Error::invalid(format!("symbol {bad} outside the potential's alphabet")));
    }
    let m = potential.m();
    let q = potential.q();
    let table = potential.table();
    let mut total = 0.0;
    for k in 1..=n {
        let mut code = 0;
        let mut pos = k;
        for _ in 0..potential.d() {
            code = code * m + x[pos - 1] as usize;
            pos *= q;
        }
        total += table[code];
    }
    Ok(total / n as f64)
}

/// `(n, A_n φ(x))` at each requested checkpoint.
pub fn running_averages(x: &[u8], potential: &Potential, checkpoints: &[usize]) -> Result<Vec<(usize, f64)>> {
    checkpoints
        .iter()
        .map(|&n| Ok((n, empirical_multiple_average(x, potential, n)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::decode;
    use crate::thermo::{markov_measure, ruelle_dimension};

    fn skewed_chain() -> MarkovMeasure {
        MarkovMeasure::new(2, 1, vec![0.3, 0.7], vec![vec![0.9, 0.1], vec![0.25, 0.75]]).unwrap()
    }

    #[test]
    fn uniform_cylinders() {
        let t = TelescopicMeasure::new(MarkovMeasure::uniform(3).unwrap(), 2).unwrap();
        for u in [vec![0u8], vec![2, 1, 0, 0, 1], vec![1; 9]] {
            let expected = 3f64.powi(-(u.len() as i32));
            assert!((t.cylinder_mass(&u).unwrap() - expected).abs() < 1e-16);
        }
    }

    #[test]
    fn cylinder_mass_follows_chain_split() {
        let base = skewed_chain();
        let t = TelescopicMeasure::new(base.clone(), 2).unwrap();
        for code in 0..8 {
            let u = decode(code, 2, 3);
            let direct = base.cylinder_mass(&u[..2]) * base.cylinder_mass(&u[2..]);
            assert!((t.cylinder_mass(&u).unwrap() - direct).abs() < 1e-16);
        }
        for code in 0..4 {
            let u = decode(code, 2, 2);
            assert!((t.cylinder_mass(&u).unwrap() - base.cylinder_mass(&u)).abs() < 1e-16);
        }
        assert!(t.cylinder_mass(&[2]).is_err());
    }

    #[test]
    fn masses_sum_to_one_and_are_consistent() {
        let t = TelescopicMeasure::new(skewed_chain(), 3).unwrap();
        for n in 1..=16 {
            let total: f64 = (0..1usize << n).map(|c| t.cylinder_mass(&decode(c, 2, n)).unwrap()).sum();
            assert!((total - 1.0).abs() < 1e-10, "n={n}");
        }
        for n in 0..=12 {
            for c in 0..1usize << n {
                let u = decode(c, 2, n);
                let kids: f64 = (0..2u8)
                    .map(|a| {
                        let mut w = u.clone();
                        w.push(a);
                        t.cylinder_mass(&w).unwrap()
                    })
                    .sum();
                assert!((t.cylinder_mass(&u).unwrap() - kids).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn dimension_extremes() {
        for (m, q) in [(2, 2), (3, 2), (2, 5)] {
            let t = TelescopicMeasure::new(MarkovMeasure::uniform(m).unwrap(), q).unwrap();
            let d = t.dimension(1e-11).unwrap();
            assert!((d.value - 1.0).abs() <= d.tail_bound + 1e-14);
            assert!(d.tail_bound < 1e-11);
        }
        let point = TelescopicMeasure::new(MarkovMeasure::point_mass(2, 0).unwrap(), 2).unwrap();
        assert_eq!(point.dimension(1e-8).unwrap().value, 0.0);
        assert!(point.dimension(0.0).is_err());
    }

    #[test]
    fn tail_formula_matches_direct_sum() {
        for q in [2usize, 3, 7] {
            for k in [0usize, 1, 5, 20] {
                let direct: f64 = (k + 1..400)
                    .map(|j| (q as f64 - 1.0).powi(2) * j as f64 / (q as f64).powi(j as i32 + 1))
                    .sum();
                assert!((linear_growth_tail(q, k) - direct).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn dimension_of_gibbs_telescopic_matches_ruelle() {
        let pot = Potential::phi2();
        for s in [-1.0, 1.0, 2.5] {
            let mu = markov_measure(&pot, s).unwrap();
            let t = TelescopicMeasure::new(mu, 2).unwrap();
            let d = t.dimension(1e-13).unwrap().value;
            let r = ruelle_dimension(&pot, s).unwrap();
            assert!((d - r).abs() < 1e-8, "s={s} {d} {r}");
        }
    }

    #[test]
    fn sampling_reproducible_and_chainwise() {
        let t = TelescopicMeasure::new(skewed_chain(), 2).unwrap();
        let a = t.sample(1000, 42).unwrap();
        assert_eq!(a, t.sample(1000, 42).unwrap());
        assert_ne!(a.symbols, t.sample(1000, 43).unwrap().symbols);
        // a longer horizon extends each chain without changing earlier draws
        let b = t.sample(4000, 42).unwrap();
        for chain in lambda_partition(2, 1000).unwrap() {
            assert_eq!(restrict(&a.symbols, &chain).unwrap(), restrict(&b.symbols, &chain).unwrap());
        }
    }

    #[test]
    fn uniform_sample_frequency() {
        let t = TelescopicMeasure::new(MarkovMeasure::uniform(2).unwrap(), 2).unwrap();
        let n = 100_000;
        let path = t.sample(n, 1).unwrap();
        let ones = path.symbols.iter().filter(|&&s| s == 1).count() as f64 / n as f64;
        let sigma = (0.25 / n as f64).sqrt();
        assert!((ones - 0.5).abs() < 3.0 * sigma);
    }

    #[test]
    fn point_mass_sample() {
        let t = TelescopicMeasure::new(MarkovMeasure::point_mass(2, 0).unwrap(), 3).unwrap();
        assert!(t.sample(500, 8).unwrap().symbols.iter().all(|&s| s == 0));
    }

    #[test]
    fn multiple_average_examples() {
        let phi1 = Potential::phi1();
        assert_eq!(empirical_multiple_average(&[1; 40], &phi1, 20).unwrap(), 1.0);
        assert!(empirical_multiple_average(&[1; 39], &phi1, 20).is_err());

        // a point of X_2: ones only at odd positions
        let x: Vec<u8> = (1..=200).map(|k| (k % 2) as u8).collect();
        assert_eq!(empirical_multiple_average(&x, &phi1, 100).unwrap(), 0.0);

        let n = 100_000;
        let t = TelescopicMeasure::new(MarkovMeasure::uniform(2).unwrap(), 2).unwrap();
        let path = t.sample(2 * n, 5).unwrap();
        let avg = empirical_multiple_average(&path.symbols, &Potential::phi2(), n).unwrap();
        assert!(avg.abs() < 3.0 / (n as f64).sqrt(), "{avg}");
    }
}
