//! Forward series computation over the last `W - 1` letters.

use super::poly::ZPoly;
use super::rational::ZSeriesTable;
use super::{all_words, StatPattern, TransferError};

pub const DEFAULT_MAX_STATES: usize = 1 << 16;

/// Distribution of the statistic over `{1..t}^n` for `n = 0..=n_max`.
pub fn dp_series(sp: &StatPattern, t: u32, n_max: usize) -> Result<ZSeriesTable, TransferError> {
    dp_series_with_limit(sp, t, n_max, DEFAULT_MAX_STATES)
}

pub fn dp_series_with_limit(
    sp: &StatPattern,
    t: u32,
    n_max: usize,
    max_states: usize,
) -> Result<ZSeriesTable, TransferError> {
    if t == 0 {
        return Err(TransferError::EmptyAlphabet);
    }
    let keep = sp.window() - 1;
    let states = (t as u128).pow(keep as u32);
    if states > max_states as u128 {
        return Err(TransferError::Budget { states, limit: max_states });
    }
    let states = states as usize;

    let mut rows = Vec::with_capacity(n_max + 1);
    // Words shorter than the state length are scanned directly.
    for n in 0..=n_max.min(keep) {
        let mut row = ZPoly::zero();
        for w in all_words(t, n) {
            row.add_shifted(&ZPoly::one(), sp.count(&w, t) as usize);
        }
        rows.push(row);
    }
    if n_max <= keep {
        return Ok(ZSeriesTable::new(rows));
    }

    // weights[u] = Σ z^{stat} over words of the current length ending in u,
    // states encoded base t with the oldest letter most significant.
    let mut weights: Vec<ZPoly> = vec![ZPoly::zero(); states];
    for (code, w) in all_words(t, keep).iter().enumerate() {
        weights[code] = ZPoly::monomial(sp.count(w, t) as usize);
    }
    let drop = states / t as usize;
    let mut step: Vec<Vec<(usize, usize)>> = Vec::with_capacity(states);
    for (code, u) in all_words(t, keep).into_iter().enumerate() {
        let mut window = u;
        window.push(0);
        step.push(
            (1..=t)
                .map(|c| {
                    *window.last_mut().unwrap() = c;
                    let next = (code % drop.max(1)) * t as usize + (c as usize - 1);
                    let next = if keep == 0 { 0 } else { next };
                    (next, sp.count_ending_at_last(&window, t) as usize)
                })
                .collect(),
        );
    }

    for _ in keep + 1..=n_max {
        let mut next = vec![ZPoly::zero(); states];
        for (code, w) in weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for &(to, e) in &step[code] {
                next[to].add_shifted(w, e);
            }
        }
        weights = next;
        let mut row = ZPoly::zero();
        for w in &weights {
            row.add_shifted(w, 0);
        }
        rows.push(row);
    }
    Ok(ZSeriesTable::new(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::{stat_p, stat_r, stat_s, stat_t};
    use num_bigint::BigInt;

    fn avoid(sp: &StatPattern, t: u32, n: usize) -> Vec<i64> {
        dp_series(sp, t, n).unwrap().avoidance().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn avoidance_series() {
        assert_eq!(avoid(&stat_s(), 3, 4)[4], 64);
        assert_eq!(avoid(&stat_s(), 4, 6), vec![1, 4, 16, 56, 196, 672, 2304]);
        assert_eq!(avoid(&stat_r(), 4, 5), vec![1, 4, 15, 54, 193, 688]);
        assert_eq!(avoid(&stat_p(), 3, 6), vec![1, 3, 8, 20, 49, 119, 288]);
        assert_eq!(avoid(&stat_t(), 3, 5), vec![1, 3, 8, 21, 55, 144]);
    }

    #[test]
    fn totals_are_powers() {
        for sp in [stat_s(), stat_t(), stat_p(), stat_r()] {
            for t in 1..=4u32 {
                let table = dp_series(&sp, t, 8).unwrap();
                for (n, total) in table.totals().into_iter().enumerate() {
                    assert_eq!(total, BigInt::from(t).pow(n as u32));
                }
            }
        }
    }

    #[test]
    fn unit_window() {
        // single-letter pattern counting even letters
        let sp = StatPattern::parse("1|P,P|-|E").unwrap();
        let table = dp_series(&sp, 3, 3).unwrap();
        // length 2 over {1,2,3}: number of 2s is binomial
        assert_eq!(table.row(2), &ZPoly::from_i64s(&[4, 4, 1]));
    }

    #[test]
    fn budget() {
        assert!(matches!(dp_series_with_limit(&stat_s(), 9, 3, 10), Err(TransferError::Budget { .. })));
        assert!(dp_series(&stat_s(), 0, 3).is_err());
    }
}
