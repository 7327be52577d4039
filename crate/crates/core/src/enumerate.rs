//! Exhaustive enumeration over `S_n` and `{1..t}^n`.
//!
//! Work is split by the first letter and merged in a fixed order, so results
//! do not depend on scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::matcher::{avoids_raw, count_raw};
use crate::pattern::{Mode, Pdvp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("permutation length {n} exceeds the limit of {limit}")]
    PermLimit { n: usize, limit: usize },
    #[error("{needed} pattern evaluations exceed the budget of {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("expected a {expected} pattern, got a {found} pattern")]
    Mode { expected: Mode, found: Mode },
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("invalid PDVP_BUDGET value {0:?}")]
    BadBudget(String),
}

/// Size limits for exhaustive scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_perm_len: usize,
    /// Upper bound on `(objects scanned) * (patterns per object)` for words.
    pub max_evaluations: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_perm_len: 10, max_evaluations: 100_000_000 }
    }
}

impl Limits {
    /// Applies `PDVP_BUDGET` if set. Accepted forms are a bare integer (the
    /// evaluation budget) or a comma list of `perm=N` and `word=N`.
    pub fn from_env() -> Result<Self, EnumError> {
        match std::env::var("PDVP_BUDGET") {
            Ok(spec) => Limits::default().with_override(&spec),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn with_override(mut self, spec: &str) -> Result<Self, EnumError> {
        let bad = || EnumError::BadBudget(spec.to_string());
        let parse = |s: &str| -> Result<u64, EnumError> {
            let s = s.trim().replace('_', "");
            if let Some((mant, exp)) = s.split_once(['e', 'E']) {
                let mant: u64 = mant.parse().map_err(|_| bad())?;
                let exp: u32 = exp.parse().map_err(|_| bad())?;
                return 10u64.checked_pow(exp).and_then(|p| p.checked_mul(mant)).ok_or_else(bad);
            }
            s.parse().map_err(|_| bad())
        };
        for part in spec.split(',') {
            match part.split_once('=') {
                Some(("perm", v)) => self.max_perm_len = parse(v)? as usize,
                Some(("word", v)) => self.max_evaluations = parse(v)?,
                Some(_) => return Err(bad()),
                None => self.max_evaluations = parse(part)?,
            }
        }
        Ok(self)
    }

    fn check_perm(&self, n: usize) -> Result<(), EnumError> {
        if n > self.max_perm_len {
            return Err(EnumError::PermLimit { n, limit: self.max_perm_len });
        }
        Ok(())
    }

    fn check_words(&self, t: u32, n: usize, patterns: usize) -> Result<(), EnumError> {
        if t == 0 {
            return Err(EnumError::EmptyAlphabet);
        }
        let needed = (t as u128).checked_pow(n as u32).unwrap_or(u128::MAX).saturating_mul(patterns.max(1) as u128);
        if needed > self.max_evaluations as u128 {
            return Err(EnumError::Budget { needed, budget: self.max_evaluations });
        }
        Ok(())
    }
}

/// Number of objects of length `n` with each occurrence count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    n: usize,
    counts: BTreeMap<u64, u64>,
}

impl DistributionTable {
    pub fn new(n: usize, counts: BTreeMap<u64, u64>) -> Self {
        DistributionTable { n, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Objects with exactly `m` occurrences.
    pub fn entry(&self, m: u64) -> u64 {
        self.counts.get(&m).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&m, &c)| (m, c))
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Counts indexed by occurrence number, `0..=max`.
    pub fn dense(&self) -> Vec<u64> {
        let max = self.counts.keys().next_back().copied().unwrap_or(0);
        (0..=max).map(|m| self.entry(m)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries()
            .map(|(m, c)| json!({ "occurrences": m.to_string(), "count": c.to_string() }))
            .collect();
        json!({ "n": self.n, "entries": entries })
    }
}

/// Advances `xs` to the next permutation in lexicographic order.
pub fn next_permutation(xs: &mut [u32]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|&x| x > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Folds `step` over every permutation of `1..n`, one fold per first letter,
/// then merges the partial results left to right.
pub fn fold_perms<A, F, M>(n: usize, init: impl Fn() -> A + Sync, step: F, merge: M) -> A
where
    A: Send,
    F: Fn(&mut A, &[u32]) + Sync,
    M: Fn(A, A) -> A,
{
    if n == 0 {
        let mut acc = init();
        step(&mut acc, &[]);
        return acc;
    }
    let parts: Vec<A> = (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut perm: Vec<u32> = std::iter::once(first).chain((1..=n as u32).filter(|&v| v != first)).collect();
            loop {
                step(&mut acc, &perm);
                if !next_permutation(&mut perm[1..]) {
                    break;
                }
            }
            acc
        })
        .collect();
    let mut it = parts.into_iter();
    let first = it.next().unwrap();
    it.fold(first, merge)
}

/// Folds `step` over every word of `{1..t}^n`, split by first letter.
pub fn fold_words<A, F, M>(t: u32, n: usize, init: impl Fn() -> A + Sync, step: F, merge: M) -> A
where
    A: Send,
    F: Fn(&mut A, &[u32]) + Sync,
    M: Fn(A, A) -> A,
{
    if n == 0 {
        let mut acc = init();
        step(&mut acc, &[]);
        return acc;
    }
    let parts: Vec<A> = (1..=t)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut word = vec![1u32; n];
            word[0] = first;
            loop {
                step(&mut acc, &word);
                // odometer on positions 1..n
                let mut i = n;
                loop {
                    if i == 1 {
                        return acc;
                    }
                    i -= 1;
                    if word[i] < t {
                        word[i] += 1;
                        break;
                    }
                    word[i] = 1;
                }
            }
        })
        .collect();
    let mut it = parts.into_iter();
    let first = it.next().unwrap();
    it.fold(first, merge)
}

fn merge_maps(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn require_mode(pats: &[&Pdvp], mode: Mode) -> Result<(), EnumError> {
    match pats.iter().find(|p| p.mode() != mode) {
        Some(p) => Err(EnumError::Mode { expected: mode, found: p.mode() }),
        None => Ok(()),
    }
}

pub fn perm_distribution(pat: &Pdvp, n: usize, limits: &Limits) -> Result<DistributionTable, EnumError> {
    perm_distribution_among(pat, &[], n, limits)
}

/// Distribution of `pat` over the permutations that avoid every pattern in `filters`.
pub fn perm_distribution_among(
    pat: &Pdvp,
    filters: &[Pdvp],
    n: usize,
    limits: &Limits,
) -> Result<DistributionTable, EnumError> {
    limits.check_perm(n)?;
    let mut all: Vec<&Pdvp> = filters.iter().collect();
    all.push(pat);
    require_mode(&all, Mode::Permutation)?;
    let upper = n as u32 + 1;
    let counts = fold_perms(
        n,
        BTreeMap::new,
        |acc, perm| {
            if filters.iter().all(|f| avoids_raw(f, perm, upper)) {
                *acc.entry(count_raw(pat, perm, upper)).or_insert(0) += 1;
            }
        },
        merge_maps,
    );
    Ok(DistributionTable::new(n, counts))
}

pub fn word_distribution(pat: &Pdvp, t: u32, n: usize, limits: &Limits) -> Result<DistributionTable, EnumError> {
    limits.check_words(t, n, 1)?;
    require_mode(&[pat], Mode::Word)?;
    let counts = fold_words(
        t,
        n,
        BTreeMap::new,
        |acc, w| *acc.entry(count_raw(pat, w, t)).or_insert(0) += 1,
        merge_maps,
    );
    Ok(DistributionTable::new(n, counts))
}

/// Permutations of length `n` avoiding every pattern in `pats`.
pub fn perm_multi_avoiders(pats: &[Pdvp], n: usize, limits: &Limits) -> Result<u64, EnumError> {
    limits.check_perm(n)?;
    require_mode(&pats.iter().collect::<Vec<_>>(), Mode::Permutation)?;
    let upper = n as u32 + 1;
    Ok(fold_perms(
        n,
        || 0u64,
        |acc, perm| {
            if pats.iter().all(|p| avoids_raw(p, perm, upper)) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    ))
}

/// Words of length `n` over `{1..t}` avoiding every pattern in `pats`.
pub fn word_multi_avoiders(pats: &[Pdvp], t: u32, n: usize, limits: &Limits) -> Result<u64, EnumError> {
    limits.check_words(t, n, pats.len())?;
    require_mode(&pats.iter().collect::<Vec<_>>(), Mode::Word)?;
    Ok(fold_words(
        t,
        n,
        || 0u64,
        |acc, w| {
            if pats.iter().all(|p| avoids_raw(p, w, t)) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    ))
}

/// Permutations of length `n` satisfying `pred`.
pub fn count_perms(n: usize, limits: &Limits, pred: impl Fn(&[u32]) -> bool + Sync) -> Result<u64, EnumError> {
    limits.check_perm(n)?;
    Ok(fold_perms(
        n,
        || 0u64,
        |acc, perm| {
            if pred(perm) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_gp, parse_pattern};
    use crate::pattern::make_classical;

    fn factorial(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn next_permutation_walks_all() {
        let mut p = vec![1, 2, 3, 4];
        let mut seen = 1;
        while next_permutation(&mut p) {
            seen += 1;
        }
        assert_eq!(seen, 24);
        assert_eq!(p, vec![4, 3, 2, 1]);
    }

    #[test]
    fn fold_words_covers_space() {
        let words = fold_words(3, 4, Vec::new, |acc, w| acc.push(w.to_vec()), |mut a, b| {
            a.extend(b);
            a
        });
        assert_eq!(words.len(), 81);
        assert!(words.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn catalan_avoiders() {
        let p = make_classical(Mode::Permutation, vec![1, 2, 3]).unwrap();
        let d = perm_distribution(&p, 4, &Limits::default()).unwrap();
        assert_eq!(d.entry(0), 14);
        assert_eq!(d.total(), 24);
    }

    #[test]
    fn distribution_sums() {
        let p = parse_pattern("12|O,E,E|-|E,E", Mode::Permutation).unwrap();
        for n in 0..=6 {
            let d = perm_distribution(&p, n, &Limits::default()).unwrap();
            assert_eq!(d.total(), factorial(n as u64));
            assert_eq!(d.entry(0), perm_multi_avoiders(std::slice::from_ref(&p), n, &Limits::default()).unwrap());
        }
    }

    #[test]
    fn word_examples() {
        let p = parse_pattern("12|P,{2},P|(1,2,{2})|P,P", Mode::Word).unwrap();
        let l = Limits::default();
        assert_eq!(word_distribution(&p, 3, 2, &l).unwrap().entry(0), 9);
        assert_eq!(word_distribution(&p, 4, 4, &l).unwrap().entry(0), 196);
        assert_eq!(word_multi_avoiders(&[], 3, 4, &l).unwrap(), 81);
    }

    #[test]
    fn dashed_pair_gives_powers_of_two() {
        let pats = [parse_gp("231", Mode::Permutation).unwrap(), parse_gp("132", Mode::Permutation).unwrap()];
        for n in 1..=7 {
            assert_eq!(perm_multi_avoiders(&pats, n, &Limits::default()).unwrap(), 1 << (n - 1));
        }
        assert_eq!(perm_multi_avoiders(&[], 5, &Limits::default()).unwrap(), 120);
    }

    #[test]
    fn limits_enforced() {
        let p = make_classical(Mode::Permutation, vec![1, 2]).unwrap();
        let err = perm_distribution(&p, 11, &Limits::default()).unwrap_err();
        assert_eq!(err, EnumError::PermLimit { n: 11, limit: 10 });
        assert!(err.to_string().contains("limit of 10"));
        let w = make_classical(Mode::Word, vec![1, 2]).unwrap();
        let tight = Limits { max_perm_len: 10, max_evaluations: 80 };
        assert!(word_distribution(&w, 3, 4, &tight).is_err());
        assert!(word_distribution(&w, 3, 3, &tight).is_ok());
        assert!(matches!(word_distribution(&p, 3, 3, &tight), Err(EnumError::Mode { .. })));
    }

    #[test]
    fn budget_override() {
        let l = Limits::default().with_override("1e3").unwrap();
        assert_eq!(l.max_evaluations, 1000);
        let l = Limits::default().with_override("perm=12,word=500").unwrap();
        assert_eq!((l.max_perm_len, l.max_evaluations), (12, 500));
        assert!(Limits::default().with_override("lots").is_err());
    }
}
