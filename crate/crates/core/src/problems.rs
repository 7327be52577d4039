//! Side-by-side counts for conjectured equinumerous families.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::enumerate::{count_perms, perm_multi_avoiders, EnumError, Limits};
use crate::formulas::{a_nk_patterns, words123_patterns};
use crate::matcher::{avoids_raw, count_raw, search};
use crate::pattern::{make_classical, Mode, Pdvp};
use crate::transfer::{dp_series, stat_p, stat_t, TransferError, ZSeriesTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("word would exceed {limit} letters")]
    WordBudget { limit: usize },
    #[error("unknown problem {0}; expected 1 to 4")]
    UnknownProblem(u32),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
}

pub const MAX_MORPHISM_LETTERS: usize = 1 << 20;

/// Iterates `1 -> 123, 2 -> 13, 3 -> 2` on `"1"` and counts rises.
pub fn morphism_rises(iterations: u32) -> Result<(Vec<u8>, usize), ProblemError> {
    let mut word = vec![1u8];
    for _ in 0..iterations {
        let mut next = Vec::with_capacity(word.len() * 2);
        for &c in &word {
            next.extend_from_slice(match c {
                1 => &[1, 2, 3][..],
                2 => &[1, 3][..],
                _ => &[2][..],
            });
        }
        if next.len() > MAX_MORPHISM_LETTERS {
            return Err(ProblemError::WordBudget { limit: MAX_MORPHISM_LETTERS });
        }
        word = next;
    }
    let rises = rises(&word);
    Ok((word, rises))
}

pub fn rises(word: &[u8]) -> usize {
    word.windows(2).filter(|w| w[0] < w[1]).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepRule {
    /// `|w_i - w_{i-1}| = 1`.
    ExactlyOne,
    /// `|w_i - w_{i-1}| <= 1`.
    AtMostOne,
}

impl StepRule {
    fn allows(self, a: u32, b: u32) -> bool {
        let d = a.abs_diff(b);
        match self {
            StepRule::ExactlyOne => d == 1,
            StepRule::AtMostOne => d <= 1,
        }
    }
}

/// Walks `w_0 ... w_steps` on `1..=alphabet_max` from `start` to `end`.
pub fn walk_count(alphabet_max: u32, steps: usize, start: u32, end: u32, rule: StepRule) -> BigUint {
    let k = alphabet_max as usize;
    if !(1..=alphabet_max).contains(&start) || !(1..=alphabet_max).contains(&end) {
        return BigUint::zero();
    }
    let mut at = vec![BigUint::zero(); k];
    at[start as usize - 1] = 1u32.into();
    for _ in 0..steps {
        let mut next = vec![BigUint::zero(); k];
        for (from, ways) in at.iter().enumerate() {
            if ways.is_zero() {
                continue;
            }
            for (to, slot) in next.iter_mut().enumerate() {
                if rule.allows(from as u32, to as u32) {
                    *slot += ways;
                }
            }
        }
        at = next;
    }
    at.swap_remove(end as usize - 1)
}

/// `s(L n R) = s(L) s(R) n`, where `n` is the maximum.
pub fn stack_sort(perm: &[u32]) -> Vec<u32> {
    let Some((pos, &max)) = perm.iter().enumerate().max_by_key(|&(_, v)| *v) else {
        return Vec::new();
    };
    let mut out = stack_sort(&perm[..pos]);
    out.extend(stack_sort(&perm[pos + 1..]));
    out.push(max);
    out
}

fn is_sorted(xs: &[u32]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

/// Permutations of length `n` with `s(s(π))` sorted, optionally restricted to
/// `132`-avoiders and to those with exactly one `123`.
pub fn two_stack_sortable_count(
    n: usize,
    require_avoid_132: bool,
    require_exactly_one_123: bool,
    limits: &Limits,
) -> Result<u64, ProblemError> {
    let p132 = make_classical(Mode::Permutation, vec![1, 3, 2]).expect("well formed");
    let p123 = make_classical(Mode::Permutation, vec![1, 2, 3]).expect("well formed");
    let upper = n as u32 + 1;
    Ok(count_perms(n, limits, |perm| {
        is_sorted(&stack_sort(&stack_sort(perm)))
            && (!require_avoid_132 || avoids_raw(&p132, perm, upper))
            && (!require_exactly_one_123 || exactly_one(&p123, perm, upper))
    })?)
}

fn exactly_one(pat: &Pdvp, values: &[u32], upper: u32) -> bool {
    let mut seen = 0;
    search(pat, values, upper, &mut |_| {
        seen += 1;
        seen < 2
    });
    seen == 1
}

/// One side of a comparison: `values[i]` is the count at index `start + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub name: String,
    pub start: i64,
    pub values: Vec<BigUint>,
}

impl Side {
    pub fn new(name: impl Into<String>, start: i64, values: Vec<BigUint>) -> Self {
        Side { name: name.into(), start, values }
    }

    fn at(&self, index: i64) -> Option<&BigUint> {
        usize::try_from(index - self.start).ok().and_then(|i| self.values.get(i))
    }

    fn json(&self) -> Value {
        json!({
            "name": self.name,
            "start": self.start,
            "values": self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Two sequences and the index shift `d` with `A(n) = B(n + d)`, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub label: String,
    pub a: Side,
    pub b: Side,
    pub max_shift: i64,
    pub min_overlap: usize,
    /// Smallest `|d|` (ties to the negative shift) with at least
    /// `min_overlap` overlapping indices, all equal.
    pub offset: Option<i64>,
    /// `(n, A(n) = B(n + d))` under the detected shift, or shift 0 if none;
    /// `None` where `B(n + d)` was not computed.
    pub flags: Vec<(i64, Option<bool>)>,
    pub notes: Vec<String>,
}

impl ComparisonReport {
    pub fn new(label: impl Into<String>, a: Side, b: Side, max_shift: i64, min_overlap: usize) -> Self {
        let mut shifts: Vec<i64> = (-max_shift..=max_shift).collect();
        shifts.sort_by_key(|d| (d.abs(), *d));
        let offset = shifts.into_iter().find(|&d| {
            let pairs = overlap(&a, &b, d);
            pairs.len() >= min_overlap && pairs.iter().all(|(x, y)| x == y)
        });
        let shown = offset.unwrap_or(0);
        let flags = (0..a.values.len() as i64)
            .map(|i| {
                let n = a.start + i;
                (n, b.at(n + shown).map(|y| *y == a.values[i as usize]))
            })
            .collect();
        ComparisonReport { label: label.into(), a, b, max_shift, min_overlap, offset, flags, notes: Vec::new() }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Overlapping indices under the detected shift.
    pub fn overlap(&self) -> usize {
        self.offset.map_or(0, |d| overlap(&self.a, &self.b, d).len())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "a": self.a.json(),
            "b": self.b.json(),
            "max_shift": self.max_shift,
            "min_overlap": self.min_overlap,
            "offset": self.offset,
            "overlap": self.overlap(),
            "flags": self.flags.iter().map(|(n, eq)| json!({"n": n, "equal": eq})).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

fn overlap<'a>(a: &'a Side, b: &'a Side, d: i64) -> Vec<(&'a BigUint, &'a BigUint)> {
    a.values
        .iter()
        .enumerate()
        .filter_map(|(i, x)| b.at(a.start + i as i64 + d).map(|y| (x, y)))
        .collect()
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.label)?;
        writeln!(f, "  A: {}", self.a.name)?;
        writeln!(f, "  B: {}", self.b.name)?;
        let shown = self.offset.unwrap_or(0);
        let rows: Vec<[String; 4]> = self
            .flags
            .iter()
            .map(|&(n, eq)| {
                [
                    n.to_string(),
                    self.a.at(n).map_or(String::new(), |v| v.to_string()),
                    self.b.at(n + shown).map_or("-".into(), |v| v.to_string()),
                    match eq {
                        Some(true) => "yes".into(),
                        Some(false) => "no".into(),
                        None => "-".into(),
                    },
                ]
            })
            .collect();
        let header = ["n".to_string(), "A(n)".to_string(), format!("B(n{shown:+})"), "equal".to_string()];
        let widths: Vec<usize> =
            (0..4).map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0)).collect();
        let line = |r: &[String; 4]| format!("  {:>w0$}  {:>w1$}  {:>w2$}  {:>w3$}", r[0], r[1], r[2], r[3], w0 = widths[0], w1 = widths[1], w2 = widths[2], w3 = widths[3]);
        writeln!(f, "{}", line(&header))?;
        for r in &rows {
            writeln!(f, "{}", line(r))?;
        }
        match self.offset {
            Some(d) => writeln!(f, "  offset: A(n) = B(n{d:+}) on {} overlapping entries", self.overlap())?,
            None => writeln!(f, "  offset: none with |d| <= {} and at least {} overlapping entries", self.max_shift, self.min_overlap)?,
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

fn to_big(xs: impl IntoIterator<Item = u64>) -> Vec<BigUint> {
    xs.into_iter().map(BigUint::from).collect()
}

fn avoidance_side(name: &str, table: ZSeriesTable) -> Side {
    let values = table.avoidance().into_iter().map(|v| v.to_biguint().expect("counts are non-negative")).collect();
    Side::new(name, 0, values)
}

/// Default sizes: how far each side is computed when the caller has no preference.
pub fn default_max_size(which: u32) -> usize {
    match which {
        1 => 8,
        4 => 9,
        _ => 10,
    }
}

pub fn problem_report(which: u32, max_size: usize, limits: &Limits) -> Result<ComparisonReport, ProblemError> {
    let n_max = max_size.max(1);
    match which {
        1 => {
            let k = 2u32;
            let a = (k as usize + 1..=n_max.min(limits.max_perm_len))
                .map(|n| perm_multi_avoiders(&a_nk_patterns(k), n, limits))
                .collect::<Result<Vec<_>, _>>()?;
            let b = (1..=n_max as u32)
                .map(|j| morphism_rises(j).map(|(_, r)| r as u64))
                .collect::<Result<Vec<_>, _>>()?;
            let literal = rises(&[1, 2, 3, 1, 3, 2, 3]);
            let (w3, r3) = morphism_rises(3)?;
            Ok(ComparisonReport::new(
                "permutations avoiding consecutive 231, 132 and a unit rise at distance 2, vs rises of the morphism iterates",
                Side::new("permutations of length n avoiding the three patterns (k = 2)", k as i64 + 1, to_big(a)),
                Side::new("rises in phi^n(1), phi: 1->123, 2->13, 3->2", 1, to_big(b)),
                3,
                3,
            )
            .with_note(format!(
                "phi^3(1) = {} has {} rises; the example word 1231323 has {} rises",
                w3.iter().map(|c| c.to_string()).collect::<String>(),
                r3,
                literal
            )))
        }
        2 => {
            let a = avoidance_side(
                "words in {1,2,3,4}^n avoiding 12|P,{1},P|(1,2,{2})|P,P",
                dp_series(&stat_t(), 4, n_max)?,
            );
            let b = (0..=n_max).map(|n| walk_count(7, 2 * n + 3, 1, 4, StepRule::ExactlyOne)).collect();
            Ok(ComparisonReport::new(
                "avoiders over {1,2,3,4} vs unit-step walks on {1..7} from 1 to 4",
                a,
                Side::new("walks w_0..w_{2n+3} on {1..7}, |w_i - w_{i-1}| = 1, w_0 = 1, w_{2n+3} = 4", 0, b),
                3,
                6,
            ))
        }
        3 => {
            let a = avoidance_side(
                "words in {1,2,3}^n avoiding 12|P,{1,2},P|(1,2,{2})|P,P",
                dp_series(&stat_p(), 3, n_max)?,
            );
            let b = (0..=n_max + 1).map(|n| walk_count(3, n + 1, 1, 3, StepRule::AtMostOne)).collect();
            Ok(ComparisonReport::new(
                "avoiders over {1,2,3} vs lazy walks on {1,2,3} from 1 to 3",
                a,
                Side::new("walks w_0..w_{n+1} on {1,2,3}, |w_{i+1} - w_i| <= 1, w_0 = 1, w_{n+1} = 3", 0, b),
                3,
                6,
            )
            .with_note("the walk family indexed by w_0..w_{n+2} is the same sequence shifted by one"))
        }
        4 => {
            let [p1, p2] = words123_patterns();
            let pats = [p1, p2];
            let a = (1..=n_max)
                .map(|n| crate::enumerate::word_multi_avoiders(&pats, 3, n, limits))
                .collect::<Result<Vec<_>, _>>()?;
            let b = (1..=n_max.min(limits.max_perm_len))
                .map(|n| two_stack_sortable_count(n, true, true, limits))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ComparisonReport::new(
                "ternary words avoiding P1 and P2 vs 2-stack sortable permutations avoiding 132 with one 123",
                Side::new("words in {1,2,3}^n avoiding both unit-distance patterns", 1, to_big(a)),
                Side::new("2-stack sortable permutations of length n, 132-avoiding, exactly one 123", 1, to_big(b)),
                3,
                3,
            ))
        }
        other => Err(ProblemError::UnknownProblem(other)),
    }
}

/// Whether `s(π)` is sorted exactly when `π` avoids classical `231`, over `S_n`.
pub fn stack_sort_matches_231(n: usize, limits: &Limits) -> Result<bool, ProblemError> {
    let p231 = make_classical(Mode::Permutation, vec![2, 3, 1]).expect("well formed");
    let upper = n as u32 + 1;
    let mismatches =
        count_perms(n, limits, |perm| is_sorted(&stack_sort(perm)) != (count_raw(&p231, perm, upper) == 0))?;
    Ok(mismatches == 0)
}

/// Convenience for small counts that fit a machine word.
pub fn as_u64(xs: &[BigUint]) -> Vec<u64> {
    xs.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn morphism() {
        assert_eq!(morphism_rises(1).unwrap(), (vec![1, 2, 3], 2));
        let (w, r) = morphism_rises(2).unwrap();
        assert_eq!(w, vec![1, 2, 3, 1, 3, 2]);
        assert_eq!(r, 3);
        // 12, 23, 13, 23
        assert_eq!(rises(&[1, 2, 3, 1, 3, 2, 3]), 4);
        assert_eq!(morphism_rises(0).unwrap().1, 0);
    }

    #[test]
    fn walks() {
        let b: Vec<u64> = (0..7).map(|n| walk_count(7, 2 * n + 3, 1, 4, StepRule::ExactlyOne).to_u64().unwrap()).collect();
        assert_eq!(b, vec![1, 4, 14, 48, 164, 560, 1912]);
        let c: Vec<u64> = (0..8).map(|n| walk_count(3, n + 1, 1, 3, StepRule::AtMostOne).to_u64().unwrap()).collect();
        assert_eq!(c, vec![0, 1, 3, 8, 20, 49, 119, 288]);
        assert!(walk_count(9, 2, 1, 5, StepRule::ExactlyOne).is_zero());
        assert!(walk_count(3, 2, 1, 4, StepRule::AtMostOne).is_zero());
    }

    #[test]
    fn walks_match_matrix_powers() {
        for rule in [StepRule::ExactlyOne, StepRule::AtMostOne] {
            let k = 5usize;
            let step: Vec<Vec<u64>> =
                (0..k).map(|i| (0..k).map(|j| rule.allows(i as u32, j as u32) as u64).collect()).collect();
            let mut power: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as u64).collect()).collect();
            for steps in 0..10 {
                for a in 1..=k as u32 {
                    for b in 1..=k as u32 {
                        let direct = walk_count(k as u32, steps, a, b, rule).to_u64().unwrap();
                        assert_eq!(direct, power[a as usize - 1][b as usize - 1]);
                    }
                }
                power = (0..k)
                    .map(|i| (0..k).map(|j| (0..k).map(|l| power[i][l] * step[l][j]).sum()).collect())
                    .collect();
            }
        }
    }

    #[test]
    fn stack_sorting() {
        assert_eq!(stack_sort(&[2, 3, 1]), vec![2, 1, 3]);
        assert_eq!(stack_sort(&[1, 2, 3, 4]), vec![1, 2, 3, 4]);
        assert_eq!(stack_sort(&[3, 2, 1]), vec![1, 2, 3]);
        assert!(stack_sort(&[]).is_empty());
        for n in 1..=7 {
            assert!(stack_sort_matches_231(n, &limits()).unwrap());
        }
    }

    #[test]
    fn two_stack_counts() {
        let plain: Vec<u64> = (1..=7).map(|n| two_stack_sortable_count(n, false, false, &limits()).unwrap()).collect();
        assert_eq!(plain, vec![1, 2, 6, 22, 91, 408, 1938]);
        assert_eq!(two_stack_sortable_count(1, true, true, &limits()).unwrap(), 0);
        // 123 is the only 132-avoider of length 3 with exactly one 123
        assert_eq!(two_stack_sortable_count(3, true, true, &limits()).unwrap(), 1);
    }

    #[test]
    fn offsets() {
        let s = |start, v: &[u64]| Side::new("x", start, to_big(v.iter().copied()));
        let r = ComparisonReport::new("t", s(0, &[1, 2, 3, 4]), s(0, &[0, 1, 2, 3, 4]), 3, 3);
        assert_eq!(r.offset, Some(1));
        assert_eq!(r.overlap(), 4);
        let r = ComparisonReport::new("t", s(0, &[1, 2, 3]), s(0, &[5, 6, 7]), 3, 1);
        assert_eq!(r.offset, None);
        assert_eq!(r.flags[0], (0, Some(false)));
        let r = ComparisonReport::new("t", s(0, &[1, 2, 3]), s(0, &[1, 2]), 0, 2);
        assert_eq!(r.flags[2], (2, None));
        assert_eq!(r.offset, Some(0));
    }

    #[test]
    fn aligned_problems() {
        let r2 = problem_report(2, 8, &limits()).unwrap();
        assert_eq!(r2.offset, Some(0));
        assert!(r2.overlap() >= 6);
        let r3 = problem_report(3, 8, &limits()).unwrap();
        assert_eq!(r3.offset, Some(1));
        assert!(problem_report(5, 3, &limits()).is_err());
        assert!(r3.to_string().contains("offset: A(n) = B(n+1)"));
    }
}
