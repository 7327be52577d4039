use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::poly::{BivarPoly, ZPoly};
use super::TransferError;

/// A generating function `numerator / denominator` in `q` and `z`.
///
/// The denominator's `q^0` part is the constant `1`, so the expansion in `q`
/// has polynomial coefficients in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    numerator: BivarPoly,
    denominator: BivarPoly,
}

impl RationalGF {
    /// Builds the fraction, flipping both signs if the denominator's constant
    /// term is `-1`. Any other `q^0` part of the denominator is rejected.
    pub fn new(numerator: BivarPoly, denominator: BivarPoly) -> Result<Self, TransferError> {
        let head = denominator.q_slice(0);
        if head == ZPoly::one() {
            Ok(RationalGF { numerator, denominator })
        } else if head == ZPoly::from_i64s(&[-1]) {
            Ok(RationalGF { numerator: -numerator, denominator: -denominator })
        } else {
            Err(TransferError::NonUnitConstant(head.to_string()))
        }
    }

    /// `1 / denominator`.
    pub fn reciprocal(denominator: BivarPoly) -> Result<Self, TransferError> {
        RationalGF::new(BivarPoly::one(), denominator)
    }

    pub fn numerator(&self) -> &BivarPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &BivarPoly {
        &self.denominator
    }

    /// The same function with `z` fixed.
    pub fn at_z(&self, z: i64) -> RationalGF {
        let z = BigInt::from(z);
        RationalGF { numerator: self.numerator.evaluate_at_z(&z), denominator: self.denominator.evaluate_at_z(&z) }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "numerator": terms_json(&self.numerator),
            "denominator": terms_json(&self.denominator),
        })
    }
}

fn terms_json(p: &BivarPoly) -> Value {
    Value::Array(p.terms().map(|(c, i, j)| json!([c.to_string(), i, j])).collect())
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Coefficients of `q^0 .. q^n_max`, each a polynomial in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeriesTable {
    rows: Vec<ZPoly>,
}

impl ZSeriesTable {
    pub fn new(rows: Vec<ZPoly>) -> Self {
        ZSeriesTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn rows(&self) -> &[ZPoly] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &ZPoly {
        &self.rows[n]
    }

    /// `z^0` coefficients: the number of objects with statistic zero.
    pub fn avoidance(&self) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.coeff(0)).collect()
    }

    /// Row sums: the number of objects of each length.
    pub fn totals(&self) -> Vec<BigInt> {
        self.rows.iter().map(ZPoly::total).collect()
    }

    pub fn truncate(&self, n_max: usize) -> ZSeriesTable {
        ZSeriesTable { rows: self.rows[..=n_max.min(self.max_n())].to_vec() }
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.coeffs().iter().map(|c| Value::String(c.to_string())).collect()))
            .collect();
        json!({ "n": self.max_n(), "entries": entries })
    }
}

impl fmt::Display for ZSeriesTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, r) in self.rows.iter().enumerate() {
            writeln!(f, "q^{n}: {r}")?;
        }
        Ok(())
    }
}

/// Power-series expansion of `gf` through `q^n_max`.
pub fn expand_rational(gf: &RationalGF, n_max: usize) -> ZSeriesTable {
    let den_deg = gf.denominator.q_degree().unwrap_or(0) as usize;
    let den: Vec<ZPoly> = (0..=den_deg).map(|i| gf.denominator.q_slice(i as u32)).collect();
    let mut rows: Vec<ZPoly> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut c = gf.numerator.q_slice(n as u32);
        for (k, d) in den.iter().enumerate().skip(1).take(n) {
            if !d.is_zero() {
                c = c.sub(&d.mul(&rows[n - k]));
            }
        }
        rows.push(c);
    }
    ZSeriesTable::new(rows)
}

/// Whether the expansions of `a` and `b` agree through `q^order`.
pub fn gf_equal_series(a: &RationalGF, b: &RationalGF, order: usize) -> bool {
    expand_rational(a, order) == expand_rational(b, order)
}
