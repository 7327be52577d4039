//! Occurrence search for patterns in permutations and words.
//!
//! The search is a depth-first walk over positions `i_1 < ... < i_m`. At
//! level `k` the candidates are restricted by the gap set `X_{k-1}`, the
//! value set `Z_k`, the order type against earlier letters, and every
//! difference constraint whose larger index is `k`. Constraints involving the
//! upper sentinel are checked once the tuple is complete.

use std::fmt;

use thiserror::Error;

use crate::pattern::{Mode, Occurrence, Pdvp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("a {pattern} pattern cannot be matched against a {sequence}")]
    ModeMismatch { pattern: Mode, sequence: Mode },
    #[error("{0:?} is not a permutation of 1..{len}", len = .0.len())]
    NotAPermutation(Vec<u32>),
    #[error("letter {letter} is outside the alphabet 1..{alphabet}")]
    LetterOutOfRange { letter: u32, alphabet: u32 },
}

/// A permutation of `1..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermSequence(Vec<u32>);

impl PermSequence {
    pub fn new(values: Vec<u32>) -> Result<Self, MatchError> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let i = v as usize;
            if i == 0 || i > n || seen[i - 1] {
                return Err(MatchError::NotAPermutation(values));
            }
            seen[i - 1] = true;
        }
        Ok(PermSequence(values))
    }

    pub fn identity(n: usize) -> Self {
        PermSequence((1..=n as u32).collect())
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }
}

/// A word over `1..alphabet`. The alphabet may exceed the largest letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSequence {
    letters: Vec<u32>,
    alphabet: u32,
}

impl WordSequence {
    pub fn new(letters: Vec<u32>, alphabet: u32) -> Result<Self, MatchError> {
        if let Some(&letter) = letters.iter().find(|&&w| w == 0 || w > alphabet) {
            return Err(MatchError::LetterOutOfRange { letter, alphabet });
        }
        Ok(WordSequence { letters, alphabet })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sequence {
    Perm(PermSequence),
    Word(WordSequence),
}

impl Sequence {
    pub fn mode(&self) -> Mode {
        match self {
            Sequence::Perm(_) => Mode::Permutation,
            Sequence::Word(_) => Mode::Word,
        }
    }

    pub fn values(&self) -> &[u32] {
        match self {
            Sequence::Perm(p) => p.values(),
            Sequence::Word(w) => w.letters(),
        }
    }

    /// The value assigned to position `n + 1`.
    pub fn upper_sentinel(&self) -> u32 {
        match self {
            Sequence::Perm(p) => p.values().len() as u32 + 1,
            Sequence::Word(w) => w.alphabet(),
        }
    }
}

impl From<PermSequence> for Sequence {
    fn from(p: PermSequence) -> Self {
        Sequence::Perm(p)
    }
}

impl From<WordSequence> for Sequence {
    fn from(w: WordSequence) -> Self {
        Sequence::Word(w)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values().iter().map(|v| v.to_string()).collect();
        f.write_str(&vals.join(" "))
    }
}

fn check_mode(pat: &Pdvp, seq: &Sequence) -> Result<(), MatchError> {
    if pat.mode() != seq.mode() {
        return Err(MatchError::ModeMismatch { pattern: pat.mode(), sequence: seq.mode() });
    }
    Ok(())
}

/// All occurrences of `pat` in `seq`, in lexicographic order of index tuples.
pub fn occurrences(pat: &Pdvp, seq: &Sequence) -> Result<Vec<Occurrence>, MatchError> {
    check_mode(pat, seq)?;
    let mut out = Vec::new();
    search(pat, seq.values(), seq.upper_sentinel(), &mut |idx| {
        out.push(Occurrence::new(idx.to_vec()));
        true
    });
    Ok(out)
}

pub fn count(pat: &Pdvp, seq: &Sequence) -> Result<u64, MatchError> {
    check_mode(pat, seq)?;
    Ok(count_raw(pat, seq.values(), seq.upper_sentinel()))
}

pub fn avoids(pat: &Pdvp, seq: &Sequence) -> Result<bool, MatchError> {
    check_mode(pat, seq)?;
    Ok(avoids_raw(pat, seq.values(), seq.upper_sentinel()))
}

/// Counts occurrences in a raw value slice without checking its kind.
/// `upper` is the value of the `n + 1` sentinel.
pub fn count_raw(pat: &Pdvp, values: &[u32], upper: u32) -> u64 {
    let mut n = 0;
    search(pat, values, upper, &mut |_| {
        n += 1;
        true
    });
    n
}

pub fn avoids_raw(pat: &Pdvp, values: &[u32], upper: u32) -> bool {
    search(pat, values, upper, &mut |_| false)
}

/// Visits each occurrence as a slice of 1-based indices. The visitor returns
/// `false` to stop early; the function returns `false` iff it was stopped.
pub fn search(pat: &Pdvp, values: &[u32], upper: u32, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    let m = pat.len();
    if m > values.len() {
        return true;
    }
    let mut ctx = Search { pat, values, upper, idx: Vec::with_capacity(m), visit };
    ctx.level(1)
}

struct Search<'a, 'v> {
    pat: &'a Pdvp,
    values: &'a [u32],
    upper: u32,
    idx: Vec<usize>,
    visit: &'v mut dyn FnMut(&[usize]) -> bool,
}

impl Search<'_, '_> {
    /// Value at pattern index `j` (0 and m+1 are sentinels).
    fn value_at(&self, j: usize) -> u32 {
        if j == 0 {
            0
        } else if j > self.idx.len() {
            self.upper
        } else {
            self.values[self.idx[j - 1] - 1]
        }
    }

    fn diffs_hold(&self, k: usize) -> bool {
        self.pat.diffs().iter().filter(|d| d.t == k).all(|d| {
            let a = self.value_at(d.s);
            let b = self.value_at(d.t);
            d.diff.contains(a.abs_diff(b))
        })
    }

    fn level(&mut self, k: usize) -> bool {
        let m = self.pat.len();
        let n = self.values.len();
        if k > m {
            let last = *self.idx.last().unwrap();
            if !self.pat.places()[m].contains((n + 1 - last) as u32) || !self.diffs_hold(m + 1) {
                return true;
            }
            return (self.visit)(&self.idx);
        }
        let prev = self.idx.last().copied().unwrap_or(0);
        let hi = n - (m - k);
        if prev >= hi {
            return true;
        }
        let gap_set = &self.pat.places()[k - 1];
        match gap_set.as_finite() {
            Some(gaps) => {
                for &g in gaps {
                    let pos = prev + g as usize;
                    if g == 0 || pos > hi {
                        continue;
                    }
                    if !self.try_position(k, pos) {
                        return false;
                    }
                }
            }
            None => {
                for pos in prev + 1..=hi {
                    if gap_set.contains((pos - prev) as u32) && !self.try_position(k, pos) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn try_position(&mut self, k: usize, pos: usize) -> bool {
        let v = self.values[pos - 1];
        if !self.pat.values()[k - 1].contains(v) {
            return true;
        }
        let base = self.pat.base();
        let pk = base[k - 1];
        for (l, &i) in self.idx.iter().enumerate() {
            if self.values[i - 1].cmp(&v) != base[l].cmp(&pk) {
                return true;
            }
        }
        self.idx.push(pos);
        let keep_going = if self.diffs_hold(k) { self.level(k + 1) } else { true };
        self.idx.pop();
        keep_going
    }
}

/// Literal evaluation of the occurrence conditions over every index subset.
///
/// Exponential and slow; it shares no code with the search above and serves
/// as the reference it is checked against.
pub mod reference {
    use crate::pattern::Pdvp;

    pub fn occurrences(pat: &Pdvp, values: &[u32], upper: u32) -> Vec<Vec<usize>> {
        let n = values.len();
        let m = pat.len();
        let mut out = Vec::new();
        if m > n {
            return out;
        }
        let mut combo: Vec<usize> = (1..=m).collect();
        loop {
            if is_occurrence(pat, values, upper, &combo) {
                out.push(combo.clone());
            }
            // next m-combination of 1..n in lexicographic order
            let mut i = m;
            while i > 0 && combo[i - 1] == n - m + i {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..m {
                combo[j] = combo[j - 1] + 1;
            }
        }
        out
    }

    fn is_occurrence(pat: &Pdvp, values: &[u32], upper: u32, idx: &[usize]) -> bool {
        let n = values.len();
        let m = idx.len();
        let p = pat.base();
        let v = |k: usize| -> i64 {
            match k {
                0 => 0,
                k if k == m + 1 => upper as i64,
                k => values[idx[k - 1] - 1] as i64,
            }
        };
        for a in 1..=m {
            for b in a + 1..=m {
                if (v(a) < v(b)) != (p[a - 1] < p[b - 1]) || (v(a) == v(b)) != (p[a - 1] == p[b - 1]) {
                    return false;
                }
            }
        }
        let mut positions = vec![0usize];
        positions.extend_from_slice(idx);
        positions.push(n + 1);
        for k in 0..=m {
            if !pat.places()[k].contains((positions[k + 1] - positions[k]) as u32) {
                return false;
            }
        }
        for d in pat.diffs() {
            if !d.diff.contains((v(d.s) - v(d.t)).unsigned_abs() as u32) {
                return false;
            }
        }
        (1..=m).all(|k| pat.values()[k - 1].contains(v(k) as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_gp, parse_pattern};
    use crate::pattern::{make_bcdk, make_classical, make_des_k};

    fn perm(v: &[u32]) -> Sequence {
        PermSequence::new(v.to_vec()).unwrap().into()
    }

    fn word(v: &[u32], t: u32) -> Sequence {
        WordSequence::new(v.to_vec(), t).unwrap().into()
    }

    #[test]
    fn worked_example() {
        let p = parse_pattern("12|{1},{3,4},{1,2,3}|(1,2,E)|E,P", Mode::Permutation).unwrap();
        let s = perm(&[2, 3, 1, 5, 4]);
        let occ = occurrences(&p, &s).unwrap();
        assert_eq!(occ, vec![Occurrence::new(vec![1, 5])]);
        assert_eq!(count(&p, &s).unwrap(), 1);
    }

    #[test]
    fn dashed_examples() {
        let s = perm(&[5, 1, 6, 4, 2, 3]);
        let gp = parse_gp("2-31", Mode::Permutation).unwrap();
        let occ = occurrences(&gp, &s).unwrap();
        assert_eq!(occ, vec![Occurrence::new(vec![1, 3, 4])]);
        let classical = parse_gp("2-3-1", Mode::Permutation).unwrap();
        let values: Vec<Vec<u32>> = occurrences(&classical, &s)
            .unwrap()
            .iter()
            .map(|o| o.indices().iter().map(|&i| s.values()[i - 1]).collect())
            .collect();
        assert_eq!(values, vec![vec![5, 6, 4], vec![5, 6, 2], vec![5, 6, 3]]);
    }

    #[test]
    fn little_231_pattern() {
        let classical = make_classical(Mode::Permutation, vec![2, 3, 1]).unwrap();
        let fig = make_bcdk(vec![2, 3, 1], &[true, false], &[(1, 3)]).unwrap();
        assert!(!avoids(&classical, &perm(&[3, 1, 5, 2, 4])).unwrap());
        assert!(avoids(&fig, &perm(&[3, 1, 5, 2, 4])).unwrap());
        let tau = perm(&[3, 2, 5, 4, 1]);
        let occ = occurrences(&fig, &tau).unwrap();
        assert_eq!(occ, vec![Occurrence::new(vec![2, 3, 5])]);
    }

    #[test]
    fn identity_counts_pairs() {
        let p = make_classical(Mode::Permutation, vec![1, 2]).unwrap();
        for n in 0..10 {
            let c = count(&p, &PermSequence::identity(n).into()).unwrap();
            assert_eq!(c, (n * n.saturating_sub(1) / 2) as u64);
        }
    }

    #[test]
    fn longer_pattern_than_sequence() {
        let p = make_classical(Mode::Permutation, vec![1, 2, 3]).unwrap();
        assert_eq!(count(&p, &perm(&[2, 1])).unwrap(), 0);
    }

    #[test]
    fn word_statistic_distance_two() {
        let p = parse_pattern("12|P,{2},P|(1,2,{2})|P,P", Mode::Word).unwrap();
        let w = [1, 3, 2, 3, 1];
        // direct scan: i with w[i+2] - w[i] == 2
        let direct = (0..w.len() - 2).filter(|&i| w[i + 2] as i32 - w[i] as i32 == 2).count();
        assert_eq!(count(&p, &word(&w, 3)).unwrap(), direct as u64);
        assert_eq!(direct, 0);
        assert_eq!(count(&p, &word(&[1, 2, 3, 3, 1], 3)).unwrap(), 1);
    }

    #[test]
    fn des_k_examples() {
        assert_eq!(count(&make_des_k(1).unwrap(), &perm(&[2, 1])).unwrap(), 1);
        assert_eq!(count(&make_des_k(5).unwrap(), &perm(&[6, 1, 5, 2, 4, 3])).unwrap(), 1);
    }

    #[test]
    fn sentinel_pins_position() {
        for j in 1..=5u32 {
            let p = parse_pattern(&format!("1|{{{j}}},P|-|P"), Mode::Permutation).unwrap();
            let s = perm(&[3, 5, 1, 2, 4, 6]);
            assert_eq!(occurrences(&p, &s).unwrap(), vec![Occurrence::new(vec![j as usize])]);
        }
    }

    #[test]
    fn sentinel_triples() {
        // |0 - (n+1)| is a length filter
        let p = parse_pattern("1|P,P|(0,2,{4})|P", Mode::Permutation).unwrap();
        assert_eq!(count(&p, &perm(&[1, 2, 3])).unwrap(), 3);
        assert_eq!(count(&p, &perm(&[1, 2])).unwrap(), 0);
        // upper sentinel in words is the alphabet size
        let w = parse_pattern("1|P,P|(1,2,{0})|P", Mode::Word).unwrap();
        assert_eq!(count(&w, &word(&[1, 2, 4, 4], 4)).unwrap(), 2);
        assert_eq!(count(&w, &word(&[1, 2, 4, 4], 5)).unwrap(), 0);
    }

    #[test]
    fn mode_mismatch() {
        let p = make_classical(Mode::Word, vec![1, 2]).unwrap();
        assert!(matches!(count(&p, &perm(&[1, 2])), Err(MatchError::ModeMismatch { .. })));
    }

    #[test]
    fn sequence_validation() {
        assert!(PermSequence::new(vec![1, 1]).is_err());
        assert!(PermSequence::new(vec![0, 1]).is_err());
        assert!(WordSequence::new(vec![1, 4], 3).is_err());
    }

    #[test]
    fn agrees_with_reference_on_samples() {
        let pats = [
            "12|{1},{3,4},{1,2,3}|(1,2,E)|E,P",
            "231|P,{1},P,P|(1,3,{1})|P,P,P",
            "12|O,4P,P|(1,2,4P)|O,P",
            "21|P,{1,2},E|(0,1,O);(2,3,P)|P,E",
        ];
        let s = [4u32, 1, 6, 3, 7, 2, 5];
        for text in pats {
            let p = parse_pattern(text, Mode::Permutation).unwrap();
            let fast: Vec<Vec<usize>> =
                occurrences(&p, &perm(&s)).unwrap().into_iter().map(|o| o.indices().to_vec()).collect();
            assert_eq!(fast, reference::occurrences(&p, &s, 8), "{text}");
        }
    }
}
