//! Exact solution of the prefix recursion as a rational function.

use super::poly::BivarPoly;
use super::rational::RationalGF;
use super::{all_words, StatPattern, TransferError};

pub const MAX_UNKNOWNS: usize = 64;

/// Determinant by fraction-free elimination with row exchanges.
///
/// Every intermediate entry is a minor of the input, so each division is
/// exact. `Err(k)` means column `k` has no non-zero pivot (the determinant
/// is zero).
pub fn determinant(mut a: Vec<Vec<BivarPoly>>) -> Result<BivarPoly, usize> {
    let n = a.len();
    if n == 0 {
        return Ok(BivarPoly::one());
    }
    let mut negate = false;
    let mut prev = BivarPoly::one();
    for k in 0..n {
        let pivot = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].num_terms()).ok_or(k)?;
        if pivot != k {
            a.swap(pivot, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = cross.exact_div(&prev).expect("Bareiss step divides exactly");
            }
            a[i][k] = BivarPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// The generating function `Σ_w q^{|w|} z^{stat(w)}` over all words on `1..=t`.
pub fn solve_transfer_system(sp: &StatPattern, t: u32) -> Result<RationalGF, TransferError> {
    if t == 0 {
        return Err(TransferError::EmptyAlphabet);
    }
    let keep = sp.window().max(2) - 1;
    let states = (t as u128).pow(keep as u32);
    if states > MAX_UNKNOWNS as u128 {
        return Err(TransferError::Budget { states, limit: MAX_UNKNOWNS });
    }
    let states = states as usize;
    let prefixes = all_words(t, keep);
    let drop = states / t as usize;
    let q = BivarPoly::q();
    let q_keep = q.pow(keep as u32);
    let z_pow = |e: u32| BivarPoly::monomial(1.into(), 0, e);

    // Bordered matrix [[I - T, b], [1, 0]]; its leading block is M = I - T.
    let mut bordered = vec![vec![BivarPoly::zero(); states + 1]; states + 1];
    for (code, u) in prefixes.iter().enumerate() {
        bordered[code][code] = BivarPoly::one();
        let mut window = u.clone();
        window.push(0);
        for c in 1..=t {
            *window.last_mut().unwrap() = c;
            let to = (code % drop) * t as usize + (c as usize - 1);
            let step = &q * &z_pow(sp.count_starting_at_first(&window, t));
            bordered[code][to] = &bordered[code][to] - &step;
        }
        bordered[code][states] = &q_keep * &z_pow(sp.count(u, t));
        bordered[states][code] = BivarPoly::one();
    }
    let m: Vec<Vec<BivarPoly>> = bordered[..states].iter().map(|row| row[..states].to_vec()).collect();

    let det_m = determinant(m).map_err(|pivot| TransferError::Singular { pivot })?;
    let det_b = determinant(bordered).map_err(|pivot| TransferError::Singular { pivot })?;

    let mut short = BivarPoly::zero();
    for len in 0..keep {
        for w in all_words(t, len) {
            short = &short + &BivarPoly::monomial(1.into(), len as u32, sp.count(&w, t));
        }
    }
    // Σ_u A(u) = 1ᵀ M⁻¹ b = -det(bordered) / det(M).
    let numerator = &(&short * &det_m) - &det_b;
    RationalGF::new(numerator, det_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::{dp_series, expand_rational, stat_p, stat_r, stat_s, stat_t};

    fn c(k: i64) -> BivarPoly {
        BivarPoly::constant(k)
    }

    #[test]
    fn small_determinants() {
        let q = BivarPoly::q();
        let z = BivarPoly::z();
        assert_eq!(determinant(vec![]).unwrap(), c(1));
        let m = vec![vec![q.clone(), z.clone()], vec![c(1), q.clone()]];
        assert_eq!(determinant(m).unwrap(), &q.pow(2) - &z);
        // needs a row exchange
        let m = vec![vec![c(0), c(1), c(0)], vec![c(1), c(0), c(0)], vec![c(0), c(0), z.clone()]];
        assert_eq!(determinant(m).unwrap(), -z.clone());
        let m = vec![vec![q.clone(), z.clone()], vec![q.clone(), z.clone()]];
        assert_eq!(determinant(m), Err(1));
    }

    #[test]
    fn integer_determinant() {
        // cofactor expansion gives 343
        let m: Vec<Vec<BivarPoly>> =
            [[2, -1, 0, 3], [1, 4, 2, -2], [0, 5, -3, 1], [7, 0, 1, 1]].iter().map(|r| r.iter().map(|&x| c(x)).collect()).collect();
        assert_eq!(determinant(m).unwrap(), c(343));
    }

    #[test]
    fn solver_matches_dp() {
        for (sp, t) in [(stat_t(), 3), (stat_s(), 3), (stat_p(), 3), (stat_t(), 4), (stat_s(), 2)] {
            let gf = solve_transfer_system(&sp, t).unwrap();
            assert_eq!(expand_rational(&gf, 14), dp_series(&sp, t, 14).unwrap());
        }
    }

    #[test]
    fn unit_window_solves() {
        let sp = StatPattern::parse("1|P,P|-|E").unwrap();
        let gf = solve_transfer_system(&sp, 3).unwrap();
        assert_eq!(expand_rational(&gf, 6), dp_series(&sp, 3, 6).unwrap());
    }

    #[test]
    fn too_many_unknowns() {
        assert!(matches!(solve_transfer_system(&stat_r(), 9), Err(TransferError::Budget { .. })));
    }
}
