//! Exact integer polynomials in `q` and `z`, and univariate polynomials in `z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial in `z` with integer coefficients, lowest degree first and no
/// trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly(coeffs)
    }

    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    /// `z^e`.
    pub fn monomial(e: usize) -> Self {
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::one();
        ZPoly(v)
    }

    pub fn from_i64s(xs: &[i64]) -> Self {
        ZPoly::new(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Coefficient of `z^e`, zero past the degree.
    pub fn coeff(&self, e: usize) -> BigInt {
        self.0.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    /// Sum of coefficients, the value at `z = 1`.
    pub fn total(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn add_shifted(&mut self, other: &ZPoly, shift: usize) {
        if self.0.len() < other.0.len() + shift {
            self.0.resize(other.0.len() + shift, BigInt::zero());
        }
        for (i, c) in other.0.iter().enumerate() {
            self.0[i + shift] += c;
        }
        *self = ZPoly::new(std::mem::take(&mut self.0));
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let len = self.0.len().max(other.0.len());
        ZPoly::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(BigInt, u32, u32)> =
            self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (c.clone(), 0, e as u32)).collect();
        write_terms(f, &terms)
    }
}

/// Polynomial in `q` and `z` with arbitrary-precision integer coefficients,
/// keyed by `(q-degree, z-degree)`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        BivarPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0, 0)
    }

    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn z() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    /// `c q^i z^j`.
    pub fn monomial(c: BigInt, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BivarPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, u32, u32)>) -> Self {
        let mut p = BivarPoly::zero();
        for (c, i, j) in terms {
            p.add_term(c, i, j);
        }
        p
    }

    fn add_term(&mut self, c: BigInt, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, j)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Terms as `(coefficient, q-degree, z-degree)` in increasing degree order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, u32, u32)> {
        self.terms.iter().map(|(&(i, j), c)| (c, i, j))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn q_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn z_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// The coefficient of `q^i` as a polynomial in `z`.
    pub fn q_slice(&self, i: u32) -> ZPoly {
        let mut v = Vec::new();
        for (&(_, j), c) in self.terms.range((i, 0)..=(i, u32::MAX)) {
            if v.len() <= j as usize {
                v.resize(j as usize + 1, BigInt::zero());
            }
            v[j as usize] = c.clone();
        }
        ZPoly::new(v)
    }

    /// Substitutes a value for `z`, leaving a polynomial in `q` alone.
    pub fn evaluate_at_z(&self, z: &BigInt) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(c * num_traits::pow(z.clone(), j as usize), i, 0);
        }
        out
    }

    pub fn pow(&self, e: u32) -> BivarPoly {
        (0..e).fold(BivarPoly::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, k: &BigInt) -> BivarPoly {
        if k.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly { terms: self.terms.iter().map(|(&key, c)| (key, c * k)).collect() }
    }

    fn dense(&self, qdim: usize, zdim: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); qdim * zdim];
        for (&(i, j), c) in &self.terms {
            out[i as usize * zdim + j as usize] = c.clone();
        }
        out
    }

    fn from_dense(data: Vec<BigInt>, zdim: usize) -> BivarPoly {
        let terms = data
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (((k / zdim) as u32, (k % zdim) as u32), c))
            .collect();
        BivarPoly { terms }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Uses lexicographic order with `q` before `z`.
    pub fn exact_div(&self, divisor: &BivarPoly) -> Option<BivarPoly> {
        let (&(dq, dz), lead) = divisor.terms.last_key_value()?;
        if self.is_zero() {
            return Some(BivarPoly::zero());
        }
        let qdim = self.q_degree()? as usize + 1;
        let zdim = self.z_degree()? as usize + 1;
        let mut rem = self.dense(qdim, zdim);
        let mut quot = Vec::new();
        let divisor_terms: Vec<(usize, usize, &BigInt)> =
            divisor.terms.iter().map(|(&(a, b), c)| (a as usize, b as usize, c)).collect();
        let (dq, dz) = (dq as usize, dz as usize);
        for i in (0..qdim).rev() {
            for j in (0..zdim).rev() {
                let c = &rem[i * zdim + j];
                if c.is_zero() {
                    continue;
                }
                if i < dq || j < dz {
                    return None;
                }
                let (t, r) = c.div_rem(lead);
                if !r.is_zero() {
                    return None;
                }
                let (qi, qj) = (i - dq, j - dz);
                for &(a, b, dc) in &divisor_terms {
                    let (ri, rj) = (qi + a, qj + b);
                    if rj >= zdim {
                        return None;
                    }
                    rem[ri * zdim + rj] -= &t * dc;
                }
                quot.push((t, qi as u32, qj as u32));
            }
        }
        Some(BivarPoly::from_terms(quot))
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(c.clone(), i, j);
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(-c, i, j);
        }
        out
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        if self.is_zero() || rhs.is_zero() {
            return BivarPoly::zero();
        }
        if self.terms.len() == 1 || rhs.terms.len() == 1 {
            let (mono, other) = if self.terms.len() == 1 { (self, rhs) } else { (rhs, self) };
            let (&(mi, mj), mc) = mono.terms.iter().next().unwrap();
            return BivarPoly {
                terms: other.terms.iter().map(|(&(i, j), c)| ((i + mi, j + mj), c * mc)).collect(),
            };
        }
        let qdim = (self.q_degree().unwrap() + rhs.q_degree().unwrap()) as usize + 1;
        let zdim = (self.z_degree().unwrap() + rhs.z_degree().unwrap()) as usize + 1;
        let mut acc = vec![BigInt::zero(); qdim * zdim];
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                acc[(i + k) as usize * zdim + (j + l) as usize] += a * b;
            }
        }
        BivarPoly::from_dense(acc, zdim)
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: BivarPoly) -> BivarPoly { (&self).$m(&rhs) }
        }
        impl $tr<&BivarPoly> for BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: &BivarPoly) -> BivarPoly { (&self).$m(rhs) }
        }
        impl $tr<BivarPoly> for &BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: BivarPoly) -> BivarPoly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(BigInt, u32, u32)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (k, (c, i, j)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        let abs = c.abs();
        let mono = match (i, j) {
            (0, 0) => String::new(),
            (i, 0) => power("q", *i),
            (0, j) => power("z", *j),
            (i, j) => format!("{}*{}", power("q", *i), power("z", *j)),
        };
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            f.write_str(&mono)?;
        } else {
            write!(f, "{abs}*{mono}")?;
        }
    }
    Ok(())
}

fn power(var: &str, e: u32) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(BigInt, u32, u32)> = self.terms().map(|(c, i, j)| (c.clone(), i, j)).collect();
        write_terms(f, &terms)
    }
}
