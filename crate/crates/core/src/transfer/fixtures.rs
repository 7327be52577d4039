//! Closed forms for the statistics `s`, `t`, `p` and `r` on small alphabets.

use super::poly::BivarPoly;
use super::rational::RationalGF;

fn q() -> BivarPoly {
    BivarPoly::q()
}

fn c(k: i64) -> BivarPoly {
    BivarPoly::constant(k)
}

/// `z - 1`.
fn zm1() -> BivarPoly {
    BivarPoly::z() - c(1)
}

fn gf(num: BivarPoly, den: BivarPoly) -> RationalGF {
    RationalGF::new(num, den).expect("fixture denominators have constant term 1")
}

/// `s` on `{1,2,3}*`: `1 / ((1 - q²(1-z)) (1 - 3q - q²(z-1)))`.
pub fn a3() -> RationalGF {
    let left = c(1) + q().pow(2) * zm1();
    let right = c(1) - c(3) * q() - q().pow(2) * zm1();
    gf(c(1), left * right)
}

/// `s` on `{1,2,3,4}*`: `1 / (1 - 4q - 8q³(z-1) - 4q⁴(z-1)²)`.
pub fn a4() -> RationalGF {
    gf(c(1), c(1) - c(4) * q() - c(8) * q().pow(3) * zm1() - c(4) * q().pow(4) * zm1().pow(2))
}

/// `t` on `{1,2,3}*`: `1 / (1 - 3q - q²(z-1))`.
pub fn b3() -> RationalGF {
    gf(c(1), c(1) - c(3) * q() - q().pow(2) * zm1())
}

/// `t` on `{1,2,3,4}*`: `1 / (1 - 4q - 2q²(z-1))`.
pub fn b4() -> RationalGF {
    gf(c(1), c(1) - c(4) * q() - c(2) * q().pow(2) * zm1())
}

/// `p` on `{1,2,3}*`: `1 / (1 - 3q - q²(z-1) - q³(2z+1)(z-1) - q⁴(z-1)²)`.
pub fn d3() -> RationalGF {
    let two_z_plus_1 = c(2) * BivarPoly::z() + c(1);
    gf(
        c(1),
        c(1) - c(3) * q() - q().pow(2) * zm1() - q().pow(3) * two_z_plus_1 * zm1() - q().pow(4) * zm1().pow(2),
    )
}

/// The bivariate display for `p` on `{1,2,3,4}*`:
/// `(1 + 2q²(1-z) - 2q³(z-1)²) / (1 - 4q - 8q²(z-1) - 4q⁴(z-1)²)`.
pub fn d4_bivariate() -> RationalGF {
    gf(
        c(1) - c(2) * q().pow(2) * zm1() - c(2) * q().pow(3) * zm1().pow(2),
        c(1) - c(4) * q() - c(8) * q().pow(2) * zm1() - c(4) * q().pow(4) * zm1().pow(2),
    )
}

/// The avoidance display for `p` on `{1,2,3,4}*`:
/// `(1 + 2q² - 2q³) / (1 - 4q + 8q³ - 4q⁴)`, a function of `q` alone.
pub fn d4_at_zero() -> RationalGF {
    gf(
        c(1) + c(2) * q().pow(2) - c(2) * q().pow(3),
        c(1) - c(4) * q() + c(8) * q().pow(3) - c(4) * q().pow(4),
    )
}

/// `r` on `{1,2,3,4}*`: `1 / (1 - 4q - (z-1)q² - 2(z²-1)q³ - z(z-1)²q⁴)`.
pub fn e4() -> RationalGF {
    let z = BivarPoly::z();
    gf(
        c(1),
        c(1) - c(4) * q()
            - zm1() * q().pow(2)
            - c(2) * (z.pow(2) - c(1)) * q().pow(3)
            - z * zm1().pow(2) * q().pow(4),
    )
}

/// `(1 + q) / (1 - q - q²)`: 1, 2, 3, 5, 8, ...
pub fn fibonacci() -> RationalGF {
    gf(c(1) + q(), c(1) - q() - q().pow(2))
}

/// `1 / (1 - 3q + q²)`: every other Fibonacci number.
pub fn bisected_fibonacci() -> RationalGF {
    gf(c(1), c(1) - c(3) * q() + q().pow(2))
}
