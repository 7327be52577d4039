//! The pattern quadruple `(p, X, Y, Z)` and constructors for the families it
//! subsumes (classical patterns, dashed patterns, conditioned descents, ...).

use std::fmt;

use thiserror::Error;

use crate::intset::IntSet;

/// Whether a pattern is matched against permutations or words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Mode {
    Permutation,
    Word,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Permutation => f.write_str("permutation"),
            Mode::Word => f.write_str("word"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("base must be non-empty")]
    EmptyBase,
    #[error("base {0:?} is not a permutation of 1..{len}", len = .0.len())]
    NotAPermutation(Vec<u32>),
    #[error("base {0:?} does not use every letter from 1 to its maximum")]
    MissingLetters(Vec<u32>),
    #[error("expected {expected} place sets, found {found}")]
    PlaceArity { expected: usize, found: usize },
    #[error("expected {expected} value sets, found {found}")]
    ValueArity { expected: usize, found: usize },
    #[error("difference triple ({s},{t}) must satisfy 0 <= s < t <= {max}")]
    BadTriple { s: usize, t: usize, max: usize },
    #[error("{0}")]
    Invalid(String),
}

/// A difference constraint `|v_s - v_t| ∈ diff`.
///
/// Index `0` and `m + 1` refer to the boundary sentinels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffConstraint {
    pub s: usize,
    pub t: usize,
    pub diff: IntSet,
}

impl DiffConstraint {
    pub fn new(s: usize, t: usize, diff: IntSet) -> Self {
        DiffConstraint { s, t, diff }
    }
}

/// A place-difference-value pattern.
///
/// `places` holds the `m + 1` gap sets `X_0..X_m`, `diffs` the list of
/// difference constraints and `values` the `m` value sets `Z_1..Z_m`.
/// Duplicate difference constraints on the same pair are all enforced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pdvp {
    mode: Mode,
    base: Vec<u32>,
    places: Vec<IntSet>,
    diffs: Vec<DiffConstraint>,
    values: Vec<IntSet>,
}

impl Pdvp {
    pub fn new(
        mode: Mode,
        base: Vec<u32>,
        places: Vec<IntSet>,
        diffs: Vec<DiffConstraint>,
        values: Vec<IntSet>,
    ) -> Result<Self, PatternError> {
        validate_base(mode, &base)?;
        let m = base.len();
        if places.len() != m + 1 {
            return Err(PatternError::PlaceArity { expected: m + 1, found: places.len() });
        }
        if values.len() != m {
            return Err(PatternError::ValueArity { expected: m, found: values.len() });
        }
        for d in &diffs {
            if d.s >= d.t || d.t > m + 1 {
                return Err(PatternError::BadTriple { s: d.s, t: d.t, max: m + 1 });
            }
        }
        Ok(Pdvp { mode, base, places, diffs, values })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    /// Pattern length `m`.
    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn places(&self) -> &[IntSet] {
        &self.places
    }

    pub fn diffs(&self) -> &[DiffConstraint] {
        &self.diffs
    }

    pub fn values(&self) -> &[IntSet] {
        &self.values
    }

    /// The same quadruple interpreted in the other mode.
    pub fn with_mode(&self, mode: Mode) -> Result<Self, PatternError> {
        Pdvp::new(mode, self.base.clone(), self.places.clone(), self.diffs.clone(), self.values.clone())
    }

    /// Reverse-complement of a classical pattern, or `None` if the pattern
    /// carries any place, difference or value restriction.
    pub fn reverse_complement(&self) -> Option<Self> {
        if !self.is_classical() {
            return None;
        }
        let max = *self.base.iter().max()?;
        let base = self.base.iter().rev().map(|&v| max + 1 - v).collect();
        Pdvp::new(self.mode, base, self.places.clone(), Vec::new(), self.values.clone()).ok()
    }

    pub fn is_classical(&self) -> bool {
        self.diffs.is_empty()
            && self.places.iter().all(IntSet::covers_all_positive)
            && self.values.iter().all(IntSet::covers_all_positive)
    }
}

fn validate_base(mode: Mode, base: &[u32]) -> Result<(), PatternError> {
    if base.is_empty() {
        return Err(PatternError::EmptyBase);
    }
    match mode {
        Mode::Permutation => {
            let mut seen = vec![false; base.len()];
            for &v in base {
                let i = v as usize;
                if i == 0 || i > base.len() || seen[i - 1] {
                    return Err(PatternError::NotAPermutation(base.to_vec()));
                }
                seen[i - 1] = true;
            }
        }
        Mode::Word => {
            let max = *base.iter().max().unwrap_or(&0) as usize;
            if base.contains(&0) || max > base.len() {
                return Err(PatternError::MissingLetters(base.to_vec()));
            }
            let mut seen = vec![false; max];
            for &v in base {
                seen[v as usize - 1] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(PatternError::MissingLetters(base.to_vec()));
            }
        }
    }
    Ok(())
}

/// A strictly increasing tuple of 1-based positions witnessing a match.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct Occurrence(Vec<usize>);

impl Occurrence {
    pub fn new(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Occurrence(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

pub(crate) fn write_tuple<T: fmt::Display>(f: &mut impl fmt::Write, xs: &[T]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// Classical pattern: every place and value set is `P`, no difference constraints.
pub fn make_classical(mode: Mode, base: Vec<u32>) -> Result<Pdvp, PatternError> {
    let m = base.len();
    Pdvp::new(mode, base, vec![IntSet::positive(); m + 1], Vec::new(), vec![IntSet::positive(); m])
}

/// Dashed (generalized) pattern. `adjacent[i]` states whether letters `i`
/// and `i + 1` (0-based) must occupy neighbouring positions.
pub fn make_gp(mode: Mode, base: Vec<u32>, adjacent: &[bool]) -> Result<Pdvp, PatternError> {
    let m = base.len();
    if adjacent.len() + 1 != m {
        return Err(PatternError::Invalid(format!(
            "a pattern of length {m} has {} adjacency slots, got {}",
            m.saturating_sub(1),
            adjacent.len()
        )));
    }
    let mut places = vec![IntSet::positive()];
    places.extend(adjacent.iter().map(|&adj| if adj { IntSet::singleton(1) } else { IntSet::positive() }));
    places.push(IntSet::positive());
    Pdvp::new(mode, base, places, Vec::new(), vec![IntSet::positive(); m])
}

/// Consecutive pattern: all letters adjacent.
pub fn make_consecutive(mode: Mode, base: Vec<u32>) -> Result<Pdvp, PatternError> {
    let slots = vec![true; base.len().saturating_sub(1)];
    make_gp(mode, base, &slots)
}

/// Descents `21` whose top lies in `top` and bottom in `bottom`.
pub fn make_xy_descent(top: IntSet, bottom: IntSet) -> Pdvp {
    Pdvp::new(
        Mode::Permutation,
        vec![2, 1],
        vec![IntSet::positive(), IntSet::singleton(1), IntSet::positive()],
        Vec::new(),
        vec![top, bottom],
    )
    .expect("descent pattern is well formed")
}

/// Descents whose drop is exactly `k`.
pub fn make_des_k(k: u32) -> Result<Pdvp, PatternError> {
    if k == 0 {
        return Err(PatternError::Invalid("a descent in a permutation cannot have difference 0".into()));
    }
    Pdvp::new(
        Mode::Permutation,
        vec![2, 1],
        vec![IntSet::positive(), IntSet::singleton(1), IntSet::positive()],
        vec![DiffConstraint::new(1, 2, IntSet::singleton(k))],
        vec![IntSet::positive(); 2],
    )
}

/// Patterns with place adjacency between some neighbouring letters and value
/// adjacency (difference exactly 1) between some pairs of letters.
pub fn make_bcdk(
    base: Vec<u32>,
    adjacent: &[bool],
    value_adjacent: &[(usize, usize)],
) -> Result<Pdvp, PatternError> {
    let gp = make_gp(Mode::Permutation, base, adjacent)?;
    let diffs = value_adjacent
        .iter()
        .map(|&(s, t)| DiffConstraint::new(s, t, IntSet::singleton(1)))
        .collect();
    Pdvp::new(Mode::Permutation, gp.base, gp.places, diffs, gp.values)
}

/// The pair of patterns `12` and `21` at distance `d` with value difference `d`.
pub fn make_tauraso_pair(d: u32) -> (Pdvp, Pdvp) {
    let build = |base: Vec<u32>| {
        Pdvp::new(
            Mode::Permutation,
            base,
            vec![IntSet::positive(), IntSet::singleton(d), IntSet::positive()],
            vec![DiffConstraint::new(1, 2, IntSet::singleton(d))],
            vec![IntSet::positive(); 2],
        )
        .expect("well formed")
    };
    (build(vec![1, 2]), build(vec![2, 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_arity() {
        let p = make_classical(Mode::Permutation, vec![1, 3, 2]).unwrap();
        assert_eq!(p.places().len(), 4);
        assert_eq!(p.values().len(), 3);
        assert!(p.diffs().is_empty());
        assert!(p.is_classical());
    }

    #[test]
    fn rejects_bad_bases() {
        assert!(matches!(
            make_classical(Mode::Permutation, vec![1, 3, 2, 1]),
            Err(PatternError::NotAPermutation(_))
        ));
        assert!(make_classical(Mode::Word, vec![1, 3, 2, 1]).is_ok());
        assert!(matches!(make_classical(Mode::Word, vec![1, 3]), Err(PatternError::MissingLetters(_))));
        assert!(matches!(make_classical(Mode::Word, vec![]), Err(PatternError::EmptyBase)));
    }

    #[test]
    fn gp_places() {
        let p = make_gp(Mode::Permutation, vec![2, 3, 1], &[false, true]).unwrap();
        let expected = [IntSet::positive(), IntSet::positive(), IntSet::singleton(1), IntSet::positive()];
        assert_eq!(p.places(), &expected[..]);

        let all_dashed = make_gp(Mode::Permutation, vec![2, 3, 1], &[false, false]).unwrap();
        assert_eq!(all_dashed, make_classical(Mode::Permutation, vec![2, 3, 1]).unwrap());

        let p12 = make_gp(Mode::Permutation, vec![1, 2], &[true]).unwrap();
        assert_eq!(p12.places()[1], IntSet::singleton(1));
        assert_eq!(p12.places()[0], IntSet::positive());
    }

    #[test]
    fn triple_bounds() {
        let err = Pdvp::new(
            Mode::Permutation,
            vec![1, 2],
            vec![IntSet::positive(); 3],
            vec![DiffConstraint::new(2, 4, IntSet::positive())],
            vec![IntSet::positive(); 2],
        );
        assert!(matches!(err, Err(PatternError::BadTriple { .. })));
        let ok = Pdvp::new(
            Mode::Permutation,
            vec![1, 2],
            vec![IntSet::positive(); 3],
            vec![DiffConstraint::new(0, 3, IntSet::positive())],
            vec![IntSet::positive(); 2],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn des_k_zero_rejected() {
        assert!(make_des_k(0).is_err());
        let p = make_des_k(3).unwrap();
        assert_eq!(p.diffs()[0].diff, IntSet::singleton(3));
    }

    #[test]
    fn reverse_complement_of_classical() {
        let p = make_classical(Mode::Permutation, vec![1, 3, 2]).unwrap();
        assert_eq!(p.reverse_complement().unwrap().base(), &[2, 1, 3]);
        assert!(make_des_k(1).unwrap().reverse_complement().is_none());
    }
}
