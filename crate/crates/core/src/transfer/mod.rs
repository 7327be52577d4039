//! Generating functions for pattern statistics on words.
//!
//! A [`StatPattern`] is a word pattern whose occurrences fit inside a window
//! of bounded width. For such patterns the statistic "number of occurrences"
//! can be tracked by a finite automaton over the last `W - 1` letters, which
//! gives both a forward series computation ([`dp_series`]) and an exact
//! linear system whose solution is the bivariate generating function
//! ([`solve_transfer_system`]).

mod dp;
pub mod fixtures;
mod poly;
mod rational;
mod solver;

use thiserror::Error;

use crate::dsl::{parse_pattern, ParseError};
use crate::matcher::search;
use crate::pattern::{Mode, Pdvp};

pub use dp::{dp_series, dp_series_with_limit, DEFAULT_MAX_STATES};
pub use poly::{BivarPoly, ZPoly};
pub use rational::{expand_rational, gf_equal_series, RationalGF, ZSeriesTable};
pub use solver::{determinant, solve_transfer_system, MAX_UNKNOWNS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error("not a windowed statistic pattern: {0}")]
    NotWindowed(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{states} automaton states exceed the limit of {limit}")]
    Budget { states: u128, limit: usize },
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("denominator must have constant term 1, found q^0 part {0}")]
    NonUnitConstant(String),
    #[error("transfer system is singular: no pivot in column {pivot}")]
    Singular { pivot: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

/// A word pattern whose occurrences span a bounded window.
///
/// Requirements: `X_0` and `X_m` contain every positive integer, each
/// interior `X_i` is finite, and difference constraints only relate pattern
/// letters (indices `1..=m`). The window width is `1 + Σ max(X_i)` over the
/// interior gaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatPattern {
    pattern: Pdvp,
    window: usize,
}

impl StatPattern {
    pub fn new(pattern: Pdvp) -> Result<Self, TransferError> {
        let bad = |msg: &str| Err(TransferError::NotWindowed(msg.to_string()));
        if pattern.mode() != Mode::Word {
            return bad("statistics are defined on words");
        }
        let m = pattern.len();
        let places = pattern.places();
        if !places[0].covers_all_positive() || !places[m].covers_all_positive() {
            return bad("the outer place sets must be P");
        }
        let mut window = 1usize;
        for x in &places[1..m] {
            match x.finite_max() {
                Some(g) if g > 0 => window += g as usize,
                _ => return bad("interior place sets must be finite and non-empty"),
            }
        }
        if pattern.diffs().iter().any(|d| d.s == 0 || d.t > m) {
            return bad("difference constraints may not involve the sentinels");
        }
        Ok(StatPattern { pattern, window })
    }

    /// Parses the pattern notation in word mode.
    pub fn parse(text: &str) -> Result<Self, TransferError> {
        StatPattern::new(parse_pattern(text, Mode::Word)?)
    }

    pub fn pattern(&self) -> &Pdvp {
        &self.pattern
    }

    /// Width `W` of the window containing any occurrence.
    pub fn window(&self) -> usize {
        self.window
    }

    /// Occurrences in `w`.
    pub fn count(&self, w: &[u32], t: u32) -> u32 {
        self.count_where(w, t, |_| true)
    }

    /// Occurrences in `w` whose last letter is the final position.
    pub fn count_ending_at_last(&self, w: &[u32], t: u32) -> u32 {
        let n = w.len();
        self.count_where(w, t, |idx| *idx.last().unwrap() == n)
    }

    /// Occurrences in `w` that use the first position.
    pub fn count_starting_at_first(&self, w: &[u32], t: u32) -> u32 {
        self.count_where(w, t, |idx| idx[0] == 1)
    }

    fn count_where(&self, w: &[u32], t: u32, keep: impl Fn(&[usize]) -> bool) -> u32 {
        let mut n = 0;
        search(&self.pattern, w, t, &mut |idx| {
            if keep(idx) {
                n += 1;
            }
            true
        });
        n
    }
}

/// `s(w)`: positions `i` with `w_{i+2} - w_i = 2`.
pub fn stat_s() -> StatPattern {
    StatPattern::parse("12|P,{2},P|(1,2,{2})|P,P").expect("fixture")
}

/// `t(w)`: positions `i` with `w_{i+1} - w_i = 2`.
pub fn stat_t() -> StatPattern {
    StatPattern::parse("12|P,{1},P|(1,2,{2})|P,P").expect("fixture")
}

/// `p(w)`: rises by exactly 2 at distance 1 or 2.
pub fn stat_p() -> StatPattern {
    StatPattern::parse("12|P,{1,2},P|(1,2,{2})|P,P").expect("fixture")
}

/// `r(w)`: as `p(w)` but the smaller letter must be odd.
pub fn stat_r() -> StatPattern {
    StatPattern::parse("12|P,{1,2},P|(1,2,{2})|O,P").expect("fixture")
}

/// Enumerates all words of length `len` over `1..=t` in lexicographic order.
pub(crate) fn all_words(t: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=t).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(stat_s().window(), 3);
        assert_eq!(stat_t().window(), 2);
        assert_eq!(stat_p().window(), 3);
        assert_eq!(stat_r().window(), 3);
        assert_eq!(StatPattern::parse("1|P,P|-|E").unwrap().window(), 1);
        assert_eq!(StatPattern::parse("121|P,{1,3},{2},P|(1,3,{0})|P,P,P").unwrap().window(), 6);
    }

    #[test]
    fn rejects_unbounded() {
        assert!(StatPattern::parse("12|P,P,P|-|P,P").is_err());
        assert!(StatPattern::parse("12|{1},{1},P|-|P,P").is_err());
        assert!(StatPattern::parse("12|P,{1},P|(0,1,{2})|P,P").is_err());
        assert!(StatPattern::new(crate::dsl::parse_pattern("12|P,{1},P|-|P,P", Mode::Permutation).unwrap()).is_err());
    }

    #[test]
    fn window_counts() {
        let p = stat_p();
        // 1 3 3: adjacent rise 1->3 and distance-two rise 1->3
        assert_eq!(p.count(&[1, 3, 3], 3), 2);
        assert_eq!(p.count_starting_at_first(&[1, 3, 3], 3), 2);
        assert_eq!(p.count_ending_at_last(&[1, 3, 3], 3), 1);
        assert_eq!(stat_r().count(&[2, 4, 4], 4), 0);
        assert_eq!(stat_r().count(&[1, 3, 1], 4), 1);
    }

    #[test]
    fn word_listing() {
        let ws = all_words(3, 2);
        assert_eq!(ws.len(), 9);
        assert_eq!(ws[1], vec![1, 2]);
        assert_eq!(all_words(2, 0), vec![Vec::<u32>::new()]);
    }
}
