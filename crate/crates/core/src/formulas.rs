//! Closed-form counts for several pattern families, with the patterns they count.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::dsl::parse_pattern;
use crate::pattern::{make_consecutive, Mode, Pdvp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("no value supplied for A_{{{k},m}}")]
    MissingRow { k: usize },
    #[error("argument out of range: {0}")]
    Domain(String),
}

/// Fibonacci numbers with `fib(0) = 0`, `fib(1) = fib(2) = 1`.
pub fn fib(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `n! / (a! b! (n-a-b)!)`, zero when `a + b > n`.
pub fn multinomial(n: u64, a: u64, b: u64) -> BigUint {
    if a + b > n {
        return BigUint::zero();
    }
    binomial(n, a) * binomial(n - a, b)
}

/// Falling factorial `a (a-1) ... (a-b+1)`.
pub fn falling(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    (a - b + 1..=a).fold(BigUint::one(), |acc, x| acc * x)
}

pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// Fibonacci indexings in use: `F(n) = fib(n + offset)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FibConvention {
    /// `F(1) = F(2) = 1`.
    Standard,
    /// `F(0) = 1, F(1) = 2`: the coefficients of `(1 + q) / (1 - q - q²)`.
    SeriesFromOne,
}

impl FibConvention {
    pub fn offset(self) -> u64 {
        match self {
            FibConvention::Standard => 0,
            FibConvention::SeriesFromOne => 2,
        }
    }

    pub fn value(self, n: u64) -> BigUint {
        fib(n + self.offset())
    }
}

fn row_entry(a_row: &[BigUint], k: usize) -> Result<&BigUint, FormulaError> {
    a_row.get(k).ok_or(FormulaError::MissingRow { k })
}

/// Permutations of length `2n` with `m` occurrences of the even-value,
/// odd-position pattern, given `a_row[k] = A_{k,m}` (occurrences of the
/// underlying classical pattern in `S_k`).
///
/// `Σ_k n! (n-k)! C(n,k)³ A_{k,m}`.
pub fn b_even(a_row: &[BigUint], n: u64) -> Result<BigUint, FormulaError> {
    let mut total = BigUint::zero();
    for k in 0..=n {
        let a = row_entry(a_row, k as usize)?;
        total += factorial(n) * factorial(n - k) * binomial(n, k).pow(3) * a;
    }
    Ok(total)
}

/// The same count for length `2n + 1`, which has `n + 1` odd positions and
/// `n` even values.
///
/// `Σ_k n! (n+1-k)! C(n,k) C(n+1,k)² A_{k,m}`.
pub fn b_odd(a_row: &[BigUint], n: u64) -> Result<BigUint, FormulaError> {
    let mut total = BigUint::zero();
    for k in 0..=n {
        let a = row_entry(a_row, k as usize)?;
        total += factorial(n) * factorial(n + 1 - k) * binomial(n, k) * binomial(n + 1, k).pow(2) * a;
    }
    Ok(total)
}

/// Occurrences of `base` among even values at odd positions.
///
/// For even lengths the last gap `n + 1 - i_m` is odd, so it is pinned to
/// `E` and the pattern reads `(O, E, ..., E)`. For odd lengths that gap is
/// even and only `P` makes sense.
pub fn odd_position_pattern(base: &[u32], odd_length: bool) -> Pdvp {
    let m = base.len();
    let base_text: String = base.iter().map(|d| d.to_string()).collect();
    let mut places = vec!["O".to_string()];
    places.extend(std::iter::repeat_n("E".to_string(), m.saturating_sub(1)));
    places.push(if odd_length { "P" } else { "E" }.to_string());
    let values = vec!["E"; m].join(",");
    parse_pattern(&format!("{base_text}|{}|-|{values}", places.join(",")), Mode::Permutation)
        .expect("well formed")
}

/// `12` at odd positions `4P` apart with odd values `4P` apart.
pub fn k4n_pattern() -> Pdvp {
    parse_pattern("12|O,4P,P|(1,2,4P)|O,P", Mode::Permutation).expect("well formed")
}

/// Permutations of length `4n` avoiding [`k4n_pattern`].
///
/// Positions and values split into classes `A ≡ 1` and `B ≡ 3 (mod 4)`,
/// each of size `n`. With `k1, k2` values of `A` in positions of `A, B` and
/// `l1, l2` values of `B` likewise, each of the four groups is forced to be
/// decreasing. The remaining `r = 2n - k1 - k2 - l1 - l2` slots of `A ∪ B`
/// take values from the `2n` even numbers, and the `2n` other positions take
/// what is left.
pub fn k4n(n: u64) -> BigUint {
    let mut total = BigUint::zero();
    for k1 in 0..=n {
        for k2 in 0..=n - k1 {
            for l1 in 0..=n - k1 {
                for l2 in 0..=(n - l1).min(n - k2) {
                    let r = 2 * n - k1 - k2 - l1 - l2;
                    total += multinomial(n, k1, k2)
                        * multinomial(n, l1, l2)
                        * multinomial(n, k1, l1)
                        * multinomial(n, k2, l2)
                        * falling(2 * n, r);
                }
            }
        }
    }
    total * factorial(2 * n)
}

/// `(2n)! Σ (n!)⁴ / ((k1!)²(k2!)²(l1!)²(l2!)²(n-k1-k2)!(n-l1-l2)!)`.
///
/// This undercounts: it gives 18 for `n = 1`, while 24 permutations of
/// length 4 avoid the pattern.
pub fn k4n_as_printed(n: u64) -> BigUint {
    let nf = factorial(n);
    let mut total = BigUint::zero();
    for k1 in 0..=n {
        for k2 in 0..=n - k1 {
            for l1 in 0..=n {
                for l2 in 0..=n - l1 {
                    let den = (factorial(k1) * factorial(k2) * factorial(l1) * factorial(l2)).pow(2)
                        * factorial(n - k1 - k2)
                        * factorial(n - l1 - l2);
                    total += nf.pow(4) / den;
                }
            }
        }
    }
    total * factorial(2 * n)
}

/// Consecutive `231`, consecutive `132`, and `12` at distance `k` with value
/// difference 1.
pub fn a_nk_patterns(k: u32) -> Vec<Pdvp> {
    vec![
        make_consecutive(Mode::Permutation, vec![2, 3, 1]).expect("well formed"),
        make_consecutive(Mode::Permutation, vec![1, 3, 2]).expect("well formed"),
        parse_pattern(&format!("12|P,{{{k}}},P|(1,2,{{1}})|P,P"), Mode::Permutation).expect("well formed"),
    ]
}

/// Permutations of length `n` avoiding all of [`a_nk_patterns`]`(k)`.
pub fn a_nk(n: u64, k: u64) -> Result<BigUint, FormulaError> {
    if n == 0 || k == 0 {
        return Err(FormulaError::Domain("a_nk needs n, k >= 1".into()));
    }
    Ok(if k == 1 {
        fib(n)
    } else if n <= k {
        BigUint::one() << (n - 1)
    } else {
        BigUint::from(3u32) << (n - 3)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Coefficient of `q^{2n} z^s` (even) or `q^{2n+1} z^s` (odd) in the
/// generating function of the statistic `s` on `{1,2,3}*`.
pub fn coeff_a3(parity: Parity, n: u64, s: u64) -> BigInt {
    let mut total = BigInt::zero();
    for r in 0..=n {
        for m in 0..=r {
            if s > n - m {
                continue;
            }
            let sign = if (m + r + s).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
            let (pick, power) = match parity {
                Parity::Even => (binomial(m + r, 2 * m), BigUint::from(9u32).pow(m as u32)),
                Parity::Odd => (binomial(m + r + 1, 2 * m + 1), BigUint::from(3u32).pow(2 * m as u32 + 1)),
            };
            total += sign * BigInt::from(pick * binomial(n - m, s) * power);
        }
    }
    total
}

/// `P1`: adjacent letters rising by 1. `P2`: letters two apart rising by 2.
pub fn words123_patterns() -> [Pdvp; 2] {
    [
        parse_pattern("12|P,{1},P|(1,2,{1})|P,P", Mode::Word).expect("well formed"),
        parse_pattern("12|P,{2},P|(1,2,{2})|P,P", Mode::Word).expect("well formed"),
    ]
}

/// Words in `{1,2,3}^n` avoiding both [`words123_patterns`]: `fib(n+5) - n - 4`.
pub fn words123_closed(n: u64) -> BigUint {
    fib(n + 5) - BigUint::from(n + 4)
}

/// The same count from `a_n = a_{n-1} + a_{n-2} + n + 1`, `a_1 = 3`, `a_2 = 7`.
pub fn words123_recursion(n: u64) -> Result<BigUint, FormulaError> {
    if n == 0 {
        return Err(FormulaError::Domain("the recursion starts at n = 1".into()));
    }
    let (mut prev, mut cur) = (BigUint::from(3u32), BigUint::from(7u32));
    if n == 1 {
        return Ok(prev);
    }
    for k in 3..=n {
        let next = &cur + &prev + BigUint::from(k + 1);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Words of length `n` over `1..=t` with no adjacent factor `ab`, counted by
/// last letter.
pub fn count_avoiding_factor(t: u32, n: usize, a: u32, b: u32) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let mut ending = vec![BigUint::one(); t as usize];
    for _ in 1..n {
        let total: BigUint = ending.iter().sum();
        ending = (1..=t)
            .map(|c| if c == b { &total - &ending[a as usize - 1] } else { total.clone() })
            .collect();
    }
    ending.iter().sum()
}

/// Ternary words of length `n` avoiding the factor `13`, and binary words of
/// length `2n` avoiding `11`. The map `1 -> 01, 2 -> 00, 3 -> 10` is a
/// bijection between them.
pub fn fib_bijection_counts(n: usize) -> (BigUint, BigUint) {
    (count_avoiding_factor(3, n, 1, 3), count_avoiding_factor(2, 2 * n, 1, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{perm_multi_avoiders, Limits};
    use crate::transfer::{expand_rational, fixtures};

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn standard_values() {
        assert_eq!(catalan(4), big(14));
        assert_eq!(fib(6), big(8));
        assert_eq!((0..6).map(catalan).collect::<Vec<_>>(), [1, 1, 2, 5, 14, 42].map(big));
        assert_eq!(binomial(3, 5), big(0));
        assert_eq!(multinomial(4, 1, 2), big(12));
        assert_eq!(falling(5, 2), big(20));
    }

    #[test]
    fn series_convention() {
        let series = expand_rational(&fixtures::fibonacci(), 8).avoidance();
        for (n, c) in series.iter().enumerate() {
            assert_eq!(BigInt::from(FibConvention::SeriesFromOne.value(n as u64)), *c);
        }
        assert_eq!(FibConvention::SeriesFromOne.value(4), big(8));
    }

    #[test]
    fn even_odd_sums() {
        let ones = vec![big(1), big(1), big(1), big(1)];
        assert_eq!(b_even(&ones, 1).unwrap(), big(2));
        assert_eq!(b_odd(&ones, 0).unwrap(), big(1));
        assert_eq!(b_even(&[big(0), big(0), big(0), big(0)], 3).unwrap(), big(0));
        assert_eq!(b_even(&ones[..2], 3), Err(FormulaError::MissingRow { k: 2 }));
    }

    #[test]
    fn k4n_small() {
        assert_eq!(k4n(0), big(1));
        assert_eq!(k4n_as_printed(0), big(1));
        assert_eq!(k4n_as_printed(1), big(18));
    }

    #[test]
    fn a_nk_branches() {
        assert_eq!(a_nk(5, 2).unwrap(), big(12));
        assert_eq!(a_nk(3, 1).unwrap(), big(2));
        assert_eq!(a_nk(4, 4).unwrap(), big(8));
        assert!(a_nk(0, 2).is_err());
        let limits = Limits::default();
        for k in 1..=3u32 {
            for n in 1..=7usize {
                let brute = perm_multi_avoiders(&a_nk_patterns(k), n, &limits).unwrap();
                assert_eq!(a_nk(n as u64, k as u64).unwrap(), big(brute), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn a3_coefficients() {
        assert_eq!(coeff_a3(Parity::Even, 1, 0), BigInt::from(9));
        assert_eq!(coeff_a3(Parity::Odd, 0, 0), BigInt::from(3));
        for n in 0..5u64 {
            let total: BigInt = (0..=n).map(|s| coeff_a3(Parity::Even, n, s)).sum();
            assert_eq!(total, BigInt::from(9).pow(n as u32));
        }
    }

    #[test]
    fn words123() {
        let expect = [3u64, 7, 14, 26, 46, 79, 133, 221];
        for (i, &e) in expect.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(words123_closed(n), big(e));
            assert_eq!(words123_recursion(n).unwrap(), big(e));
        }
        for n in 1..=40 {
            assert_eq!(words123_closed(n), words123_recursion(n).unwrap());
        }
    }

    #[test]
    fn factor_avoidance() {
        assert_eq!(count_avoiding_factor(2, 4, 1, 1), big(8));
        assert_eq!(count_avoiding_factor(3, 2, 1, 3), big(8));
        let (a, b) = fib_bijection_counts(3);
        assert_eq!(a, b);
        assert_eq!(a, big(21));
    }
}
