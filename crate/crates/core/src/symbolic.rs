//! Alphabets, words, multiplicative index chains and finite-state
//! descriptions of closed generating sets.
//!
//! Positions are 1-based: a sequence `x` is `x_1 x_2 ...` and `x[0]` in Rust
//! holds `x_1`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The symbol set `{0, 1, ..., m-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Alphabet {
    m: usize,
}

impl TryFrom<usize> for Alphabet {
    type Error = Error;

    fn try_from(m: usize) -> Result<Self> {
        Alphabet::new(m)
    }
}

impl From<Alphabet> for usize {
    fn from(a: Alphabet) -> usize {
        a.m
    }
}

impl Alphabet {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid(format!("alphabet needs at least 2 symbols, got {m}")));
        }
        if m > 256 {
            return Err(Error::invalid("alphabets larger than 256 symbols are not supported"));
        }
        Ok(Alphabet { m })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    /// Number of words of length `n`, saturating at `usize::MAX`.
    pub fn word_count(&self, n: usize) -> usize {
        (0..n).fold(1usize, |acc, _| acc.saturating_mul(self.m))
    }
}

/// A finite word over an alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= alphabet.size()) {
            return Err(Error::invalid(format!(
                "symbol {bad} is outside the alphabet of size {}",
                alphabet.size()
            )));
        }
        Ok(Word { symbols })
    }

    /// Parse a word written as digits, e.g. `"01101"`.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::invalid(format!("'{c}' is not a symbol")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(alphabet, symbols)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", std::char::from_digit(*s as u32, 36).unwrap_or('?'))?;
        }
        Ok(())
    }
}

/// The part of `{1..n}` lying on `i * G` for a multiplicative progression `G`
/// (`{q^j}` or a semigroup), in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexChain {
    pub base: usize,
    pub elements: Vec<usize>,
}

impl IndexChain {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Chains `Λ_i = {i q^j}` cut at `n`, for every `i <= n` with `q ∤ i`.
pub fn lambda_partition(q: usize, n: usize) -> Result<Vec<IndexChain>> {
    if q < 2 {
        return Err(Error::invalid(format!("q must be at least 2, got {q}")));
    }
    if n < 1 {
        return Err(Error::invalid("horizon n must be at least 1"));
    }
    let chains = (1..=n)
        .filter(|i| i % q != 0)
        .map(|i| {
            let mut elements = Vec::new();
            let mut k = i;
            while k <= n {
                elements.push(k);
                match k.checked_mul(q) {
                    Some(next) => k = next,
                    None => break,
                }
            }
            IndexChain { base: i, elements }
        })
        .collect();
    Ok(chains)
}

/// Length of `Λ_i ∩ [1, n]`.
pub(crate) fn chain_length(i: usize, q: usize, n: usize) -> usize {
    let mut len = 0;
    let mut k = i;
    while k <= n {
        len += 1;
        match k.checked_mul(q) {
            Some(next) => k = next,
            None => break,
        }
    }
    len
}

/// The multiplicative semigroup generated by a set of distinct primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSemigroup")]
pub struct SemigroupSpec {
    primes: Vec<u64>,
}

#[derive(Deserialize)]
struct RawSemigroup {
    primes: Vec<u64>,
}

impl TryFrom<RawSemigroup> for SemigroupSpec {
    type Error = Error;

    fn try_from(raw: RawSemigroup) -> Result<Self> {
        SemigroupSpec::new(raw.primes)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl SemigroupSpec {
    pub fn new(mut primes: Vec<u64>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::invalid("a semigroup needs at least one generator"));
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::invalid(format!("generator {p} is not prime")));
        }
        primes.sort_unstable();
        if primes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("generators must be distinct"));
        }
        Ok(SemigroupSpec { primes })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// True when `gcd(i, p) = 1` for every generator `p`.
    pub fn is_coprime(&self, i: u64) -> bool {
        self.primes.iter().all(|&p| !i.is_multiple_of(p))
    }
}

/// All elements `ℓ_1 = 1 < ℓ_2 < ...` of the semigroup that are `<= bound`.
pub fn semigroup_elements(spec: &SemigroupSpec, bound: u64) -> Result<Vec<u64>> {
    if bound < 1 {
        return Err(Error::invalid("bound must be at least 1"));
    }
    let mut set = BTreeSet::from([1u64]);
    for &p in spec.primes() {
        let current: Vec<u64> = set.iter().copied().collect();
        for x in current {
            let mut y = x;
            while let Some(next) = y.checked_mul(p).filter(|&v| v <= bound) {
                set.insert(next);
                y = next;
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// `γ(S) = Σ 1/ℓ_k`, evaluated as the Euler product `Π p/(p-1)`.
pub fn gamma_of_semigroup(spec: &SemigroupSpec) -> f64 {
    spec.primes()
        .iter()
        .map(|&p| p as f64 / (p as f64 - 1.0))
        .product()
}

/// Chains `i S ∩ [1, n]` for every `i <= n` coprime to the semigroup.
pub fn semigroup_partition(spec: &SemigroupSpec, n: usize) -> Result<Vec<IndexChain>> {
    if n < 1 {
        return Err(Error::invalid("horizon n must be at least 1"));
    }
    let elements = semigroup_elements(spec, n as u64)?;
    Ok((1..=n as u64)
        .filter(|&i| spec.is_coprime(i))
        .map(|i| IndexChain {
            base: i as usize,
            elements: elements
                .iter()
                .map(|&l| l * i)
                .take_while(|&k| k <= n as u64)
                .map(|k| k as usize)
                .collect(),
        })
        .collect())
}

/// The word `(x_k)_{k ∈ chain}` read off a 1-indexed sequence.
pub fn restrict(x: &[u8], chain: &IndexChain) -> Result<Vec<u8>> {
    chain
        .elements
        .iter()
        .map(|&k| {
            if k == 0 || k > x.len() {
                Err(Error::OutOfRange { index: k, len: x.len() })
            } else {
                Ok(x[k - 1])
            }
        })
        .collect()
}

/// A deterministic automaton whose language is the prefix set of a closed
/// set `Ω ⊂ Σ_m`. Every state is reachable and has at least one outgoing
/// transition, so every accepted word extends to a point of `Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixAutomaton {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: usize,
    delta: Vec<Vec<Option<usize>>>,
}

impl PrefixAutomaton {
    /// Build from `(from, symbol, to)` triples over state indices.
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: usize,
        transitions: &[(usize, u8, usize)],
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::invalid("automaton has no states"));
        }
        if initial >= n {
            return Err(Error::invalid("initial state out of range"));
        }
        let mut delta = vec![vec![None; alphabet.size()]; n];
        for &(from, sym, to) in transitions {
            if from >= n || to >= n {
                return Err(Error::invalid(format!("transition {from} -{sym}-> {to} uses an unknown state")));
            }
            if sym as usize >= alphabet.size() {
                return Err(Error::invalid(format!("transition symbol {sym} outside alphabet")));
            }
            if delta[from][sym as usize].replace(to).is_some() {
                return Err(Error::invalid(format!(
                    "state '{}' has two transitions on symbol {sym}",
                    names[from]
                )));
            }
        }
        if let Some(dead) = (0..n).find(|&s| delta[s].iter().all(Option::is_none)) {
            return Err(Error::invalid(format!("state '{}' has no outgoing transition", names[dead])));
        }
        let mut seen = vec![false; n];
        seen[initial] = true;
        let mut queue = VecDeque::from([initial]);
        while let Some(s) = queue.pop_front() {
            for t in delta[s].iter().flatten() {
                if !seen[*t] {
                    seen[*t] = true;
                    queue.push_back(*t);
                }
            }
        }
        if let Some(lost) = seen.iter().position(|&r| !r) {
            return Err(Error::invalid(format!("state '{}' is unreachable", names[lost])));
        }
        Ok(PrefixAutomaton { alphabet, names, initial, delta })
    }

    /// `Σ_m` itself.
    pub fn full_shift(m: usize) -> Result<Self> {
        let alphabet = Alphabet::new(m)?;
        let t: Vec<_> = (0..m as u8).map(|a| (0, a, 0)).collect();
        Self::new(alphabet, vec!["s".into()], 0, &t)
    }

    /// Binary sequences with no two consecutive ones (`y_k y_{k+1} = 0`).
    pub fn golden_mean() -> Self {
        Self::forbid_ones_run(2).expect("valid construction")
    }

    /// Binary sequences without `run` consecutive ones.
    pub fn forbid_ones_run(run: usize) -> Result<Self> {
        if run < 1 {
            return Err(Error::invalid("run length must be at least 1"));
        }
        let names = (0..run).map(|k| format!("ones{k}")).collect();
        let mut t = Vec::new();
        for k in 0..run {
            t.push((k, 0, 0));
            if k + 1 < run {
                t.push((k, 1, k + 1));
            }
        }
        Self::new(Alphabet::new(2)?, names, 0, &t)
    }

    /// The one-point set `{ sss... }`.
    pub fn single_point(m: usize, symbol: u8) -> Result<Self> {
        Self::new(Alphabet::new(m)?, vec!["p".into()], 0, &[(0, symbol, 0)])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn next(&self, state: usize, symbol: u8) -> Option<usize> {
        self.delta[state].get(symbol as usize).copied().flatten()
    }

    /// Successor states of `state`, one per enabled symbol.
    pub fn successors(&self, state: usize) -> impl Iterator<Item = usize> + '_ {
        self.delta[state].iter().flatten().copied()
    }

    pub fn out_degree(&self, state: usize) -> usize {
        self.successors(state).count()
    }

    /// All `(from, symbol, to)` transitions.
    pub fn transitions(&self) -> Vec<(usize, u8, usize)> {
        let mut out = Vec::new();
        for (s, row) in self.delta.iter().enumerate() {
            for (a, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    out.push((s, a as u8, *t));
                }
            }
        }
        out
    }

    /// Whether `word` is a prefix of some point of `Ω`.
    pub fn accepts(&self, word: &[u8]) -> bool {
        self.run(word).is_some()
    }

    /// State reached after reading `word` from the initial state.
    pub fn run(&self, word: &[u8]) -> Option<usize> {
        word.iter().try_fold(self.initial, |s, &a| self.next(s, a))
    }

    /// Number of words of length `k` leading to each state.
    pub fn state_counts(&self, k: usize) -> Vec<BigUint> {
        let mut counts = vec![BigUint::zero(); self.state_count()];
        counts[self.initial] = BigUint::one();
        for _ in 0..k {
            counts = self.step_counts(&counts);
        }
        counts
    }

    /// One transfer-matrix step of the per-state counts.
    pub fn step_counts(&self, counts: &[BigUint]) -> Vec<BigUint> {
        let mut next = vec![BigUint::zero(); self.state_count()];
        for (s, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for t in self.successors(s) {
                next[t] += c;
            }
        }
        next
    }

    /// `|Pref_k(Ω)|`.
    pub fn prefix_count(&self, k: usize) -> BigUint {
        self.state_counts(k).into_iter().sum()
    }

    /// `|Pref_k(Ω)|` for `k = 0..=depth`.
    pub fn prefix_counts(&self, depth: usize) -> Vec<BigUint> {
        let mut counts = vec![BigUint::zero(); self.state_count()];
        counts[self.initial] = BigUint::one();
        let mut out = Vec::with_capacity(depth + 1);
        out.push(BigUint::one());
        for _ in 0..depth {
            counts = self.step_counts(&counts);
            out.push(counts.iter().sum());
        }
        out
    }

    fn level_sets(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        let n = self.state_count();
        let mut current = vec![false; n];
        current[self.initial] = true;
        std::iter::successors(Some(current), move |level| {
            let mut next = vec![false; n];
            for s in (0..n).filter(|&s| level[s]) {
                for t in self.successors(s) {
                    next[t] = true;
                }
            }
            Some(next)
        })
    }

    fn level_is_uniform(&self, level: &[bool]) -> bool {
        let mut degrees = (0..level.len()).filter(|&s| level[s]).map(|s| self.out_degree(s));
        match degrees.next() {
            Some(first) => degrees.all(|d| d == first),
            None => true,
        }
    }

    /// Checks that at every level `k < depth` all prefixes of length `k`
    /// have the same number of one-symbol continuations.
    pub fn spherically_symmetric(&self, depth: usize) -> bool {
        self.level_sets().take(depth).all(|level| self.level_is_uniform(&level))
    }

    /// Spherical symmetry of the whole prefix tree. The sequence of
    /// reachable-state sets is eventually periodic, so it suffices to walk it
    /// until a set repeats.
    pub fn is_spherically_symmetric(&self) -> bool {
        let mut seen = HashSet::new();
        for level in self.level_sets() {
            if !self.level_is_uniform(&level) {
                return false;
            }
            if !seen.insert(level) {
                return true;
            }
        }
        unreachable!("level sets are infinite")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elements(chains: &[IndexChain]) -> Vec<(usize, Vec<usize>)> {
        chains.iter().map(|c| (c.base, c.elements.clone())).collect()
    }

    #[test]
    fn lambda_partition_small_cases() {
        assert_eq!(
            elements(&lambda_partition(2, 3).unwrap()),
            vec![(1, vec![1, 2]), (3, vec![3])]
        );
        assert_eq!(
            elements(&lambda_partition(2, 8).unwrap()),
            vec![(1, vec![1, 2, 4, 8]), (3, vec![3, 6]), (5, vec![5]), (7, vec![7])]
        );
        assert_eq!(
            elements(&lambda_partition(3, 9).unwrap()),
            vec![
                (1, vec![1, 3, 9]),
                (2, vec![2, 6]),
                (4, vec![4]),
                (5, vec![5]),
                (7, vec![7]),
                (8, vec![8])
            ]
        );
        assert!(lambda_partition(1, 5).is_err());
        assert!(lambda_partition(2, 0).is_err());
    }

    #[test]
    fn lambda_partition_covers_exactly_once() {
        for q in 2..=12 {
            for n in [1, 2, 7, 64, 1000, 10_000] {
                let chains = lambda_partition(q, n).unwrap();
                let mut hits = vec![0u8; n + 1];
                for c in &chains {
                    assert!(c.base % q != 0);
                    assert_eq!(chain_length(c.base, q, n), c.len());
                    for &k in &c.elements {
                        hits[k] += 1;
                    }
                }
                assert!(hits[1..].iter().all(|&h| h == 1), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn semigroup_enumeration() {
        let s2 = SemigroupSpec::new(vec![2]).unwrap();
        assert_eq!(semigroup_elements(&s2, 16).unwrap(), vec![1, 2, 4, 8, 16]);
        let s23 = SemigroupSpec::new(vec![3, 2]).unwrap();
        assert_eq!(semigroup_elements(&s23, 12).unwrap(), vec![1, 2, 3, 4, 6, 8, 9, 12]);
        let s5 = SemigroupSpec::new(vec![5]).unwrap();
        assert_eq!(semigroup_elements(&s5, 4).unwrap(), vec![1]);
        assert!(SemigroupSpec::new(vec![4]).is_err());
        assert!(SemigroupSpec::new(vec![2, 2]).is_err());
        assert!(SemigroupSpec::new(vec![]).is_err());
    }

    #[test]
    fn semigroup_elements_match_brute_force() {
        let s = SemigroupSpec::new(vec![2, 3, 7]).unwrap();
        let fast = semigroup_elements(&s, 5000).unwrap();
        let brute: Vec<u64> = (1..=5000u64)
            .filter(|&k| {
                let mut r = k;
                for p in [2, 3, 7] {
                    while r % p == 0 {
                        r /= p;
                    }
                }
                r == 1
            })
            .collect();
        assert_eq!(fast, brute);
    }

    #[test]
    fn gamma_values_and_partial_sums() {
        let g2 = gamma_of_semigroup(&SemigroupSpec::new(vec![2]).unwrap());
        assert!((g2 - 2.0).abs() < 1e-15);
        let g3 = gamma_of_semigroup(&SemigroupSpec::new(vec![3]).unwrap());
        assert!((g3 - 1.5).abs() < 1e-15);
        let s23 = SemigroupSpec::new(vec![2, 3]).unwrap();
        let g23 = gamma_of_semigroup(&s23);
        assert!((g23 - 3.0).abs() < 1e-15);

        let els = semigroup_elements(&s23, 1_000_000).unwrap();
        let mut partial = 0.0;
        let mut last = 0.0;
        for l in &els {
            partial += 1.0 / *l as f64;
            assert!(partial > last && partial < g23);
            last = partial;
        }
        // tail of Σ 1/ℓ over 2^a 3^b > 10^6 is about (ln N + 1)/(N ln2 ln3)
        assert!((g23 - partial) < 5e-5, "{}", g23 - partial);
    }

    #[test]
    fn semigroup_partition_covers() {
        let s = SemigroupSpec::new(vec![2, 3]).unwrap();
        let chains = semigroup_partition(&s, 500).unwrap();
        let mut hits = vec![0; 501];
        for c in &chains {
            for &k in &c.elements {
                hits[k] += 1;
            }
        }
        assert!(hits[1..].iter().all(|&h| h == 1));
        assert_eq!(chains[0].elements[..6], [1, 2, 3, 4, 6, 8]);
    }

    #[test]
    fn restriction_examples() {
        let a = Alphabet::new(2).unwrap();
        let x = Word::parse(a, "01101").unwrap();
        let chains = lambda_partition(2, 5).unwrap();
        assert_eq!(restrict(x.symbols(), &chains[0]).unwrap(), vec![0, 1, 0]);
        assert_eq!(restrict(x.symbols(), &chains[1]).unwrap(), vec![1]);

        let y = Word::parse(a, "110100").unwrap();
        let chains = lambda_partition(2, 6).unwrap();
        let parts: Vec<_> = chains.iter().map(|c| restrict(y.symbols(), c).unwrap()).collect();
        assert_eq!(parts, vec![vec![1, 1, 1], vec![0, 0], vec![0]]);
        let mut joined: Vec<u8> = parts.concat();
        let mut original = y.symbols().to_vec();
        joined.sort();
        original.sort();
        assert_eq!(joined, original);

        let bad = IndexChain { base: 1, elements: vec![1, 2, 4, 8] };
        assert!(matches!(restrict(y.symbols(), &bad), Err(Error::OutOfRange { index: 8, .. })));
    }

    #[test]
    fn words_reject_foreign_symbols() {
        let a = Alphabet::new(3).unwrap();
        assert!(Word::new(a, vec![0, 2, 1]).is_ok());
        assert!(Word::new(a, vec![3]).is_err());
        assert_eq!(Word::parse(a, "0212").unwrap().to_string(), "0212");
        assert!(Alphabet::new(1).is_err());
    }

    fn brute_prefix_count(a: &PrefixAutomaton, k: usize) -> usize {
        let m = a.alphabet().size();
        (0..m.pow(k as u32))
            .filter(|&code| {
                let mut w = vec![0u8; k];
                let mut c = code;
                for slot in w.iter_mut().rev() {
                    *slot = (c % m) as u8;
                    c /= m;
                }
                a.accepts(&w)
            })
            .count()
    }

    #[test]
    fn prefix_counts_small_automata() {
        let full = PrefixAutomaton::full_shift(2).unwrap();
        assert_eq!(full.prefix_count(5), BigUint::from(32u32));
        let fib = PrefixAutomaton::golden_mean();
        assert_eq!(fib.prefix_count(3), BigUint::from(5u32));
        let expected = [2u32, 3, 5, 8, 13, 21];
        for (k, &e) in (1..=6).zip(expected.iter()) {
            assert_eq!(fib.prefix_count(k), BigUint::from(e));
            assert_eq!(brute_prefix_count(&fib, k), e as usize);
        }
        let counts = fib.prefix_counts(6);
        assert_eq!(counts[6], BigUint::from(21u32));
        assert_eq!(counts[0], BigUint::one());
    }

    #[test]
    fn full_shift_counts_are_powers() {
        for m in 2..=5usize {
            let a = PrefixAutomaton::full_shift(m).unwrap();
            for k in 0..=20 {
                assert_eq!(a.prefix_count(k), BigUint::from(m).pow(k as u32));
            }
        }
    }

    #[test]
    fn automaton_validation() {
        let a2 = Alphabet::new(2).unwrap();
        let names = vec!["a".to_string(), "b".to_string()];
        // b is dead
        assert!(PrefixAutomaton::new(a2, names.clone(), 0, &[(0, 0, 0), (0, 1, 1)]).is_err());
        // b unreachable
        assert!(PrefixAutomaton::new(a2, names.clone(), 0, &[(0, 0, 0), (1, 0, 1)]).is_err());
        // duplicate symbol
        assert!(PrefixAutomaton::new(a2, names.clone(), 0, &[(0, 0, 0), (0, 0, 1), (1, 0, 0)]).is_err());
        assert!(PrefixAutomaton::new(a2, names, 0, &[(0, 2, 0)]).is_err());
    }

    #[test]
    fn spherical_symmetry() {
        assert!(PrefixAutomaton::full_shift(3).unwrap().is_spherically_symmetric());
        assert!(PrefixAutomaton::full_shift(3).unwrap().spherically_symmetric(5));
        let fib = PrefixAutomaton::golden_mean();
        assert!(!fib.is_spherically_symmetric());
        assert!(fib.spherically_symmetric(1));
        assert!(!fib.spherically_symmetric(3));

        // three states over three symbols, each with exactly two successors
        let a3 = Alphabet::new(3).unwrap();
        let names = vec!["x".into(), "y".into(), "z".into()];
        let two_regular = PrefixAutomaton::new(
            a3,
            names,
            0,
            &[(0, 0, 1), (0, 1, 2), (1, 1, 0), (1, 2, 2), (2, 0, 0), (2, 2, 1)],
        )
        .unwrap();
        assert!(two_regular.is_spherically_symmetric());
        for k in 0..8 {
            assert_eq!(two_regular.prefix_count(k), BigUint::from(2u32).pow(k as u32));
            assert_eq!(brute_prefix_count(&two_regular, k), 1 << k);
        }
    }

    proptest::proptest! {
        #[test]
        fn counts_follow_transfer_recurrence(run in 1usize..5, k in 0usize..30) {
            let a = PrefixAutomaton::forbid_ones_run(run).unwrap();
            let at_k = a.state_counts(k);
            let stepped = a.step_counts(&at_k);
            proptest::prop_assert_eq!(stepped, a.state_counts(k + 1));
        }
    }
}
