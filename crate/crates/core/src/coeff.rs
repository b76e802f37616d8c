//! Exact coefficient arithmetic: rationals, sparse Laurent polynomials in
//! a single variable `z`, and truncated bivariate power series in `(x, y)`
//! with Laurent coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// Exact rational scalar.
pub type Rational = BigRational;

/// Shorthand for small rational literals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Raises a nonzero rational to an integer (possibly negative) power.
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let positive = if exp < 0 { base.recip() } else { base.clone() };
    let mut acc = Rational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= &positive;
    }
    acc
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let num = value.numer();
    let den = value.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k.min(n - k) {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Sparse Laurent polynomial in `z` over `Q`.
///
/// No zero coefficients are stored; equality is term by term.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n, 1))
    }

    /// The single term `c * z^exp`.
    pub fn monomial(exp: i32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Returns the value as a rational if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&e, c) in &other.terms {
            let entry = terms.entry(e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&e);
            }
        }
        LaurentPoly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i32, Rational> = BTreeMap::new();
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &other.terms {
                let e = ea.checked_add(eb).expect("Laurent exponent overflow");
                let entry = terms.entry(e).or_insert_with(Rational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        LaurentPoly { terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// JSON rendering as a list of `[exponent, numerator, denominator]`
    /// triples in ascending exponent order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&e, c)| {
                    serde_json::json!([e, c.numer().to_string(), c.denom().to_string()])
                })
                .collect(),
        )
    }
}

impl fmt::Display for LaurentPoly {
    /// Deterministic text rendering in ascending `z`-exponent order,
    /// e.g. `3/32*z^-2 + -1/4*z^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            let (sep, c) = if first {
                (String::new(), c.clone())
            } else if c.is_negative() {
                (" - ".to_string(), -c.clone())
            } else {
                (" + ".to_string(), c.clone())
            };
            first = false;
            match e {
                0 => write!(f, "{sep}{c}")?,
                1 => write!(f, "{sep}{c}*z")?,
                _ => write!(f, "{sep}{c}*z^{e}")?,
            }
        }
        Ok(())
    }
}

/// Truncated power series in `(x, y)` over Laurent coefficients.
///
/// All stored keys `(m, n)` satisfy `m + n <= order`; arithmetic truncates
/// at total degree `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BivariateSeries {
    order: u32,
    coeffs: BTreeMap<(u32, u32), LaurentPoly>,
}

impl BivariateSeries {
    pub fn zero(order: u32) -> Self {
        BivariateSeries { order, coeffs: BTreeMap::new() }
    }

    pub fn one(order: u32) -> Self {
        let mut s = Self::zero(order);
        s.set_coeff(0, 0, LaurentPoly::one());
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, m: u32, n: u32) -> LaurentPoly {
        self.coeffs.get(&(m, n)).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn set_coeff(&mut self, m: u32, n: u32, c: LaurentPoly) {
        if m + n > self.order {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&(m, n));
        } else {
            self.coeffs.insert((m, n), c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &LaurentPoly)> {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for ((m, n), c) in self.iter().chain(other.iter()) {
            if m + n <= order {
                out.set_coeff(m, n, out.coeff(m, n).add(c));
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for ((ma, na), ca) in self.iter() {
            for ((mb, nb), cb) in other.iter() {
                let (m, n) = (ma + mb, na + nb);
                if m + n <= order {
                    out.set_coeff(m, n, out.coeff(m, n).add(&ca.mul(cb)));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.order);
        for ((m, n), v) in self.iter() {
            out.set_coeff(m, n, v.scale(c));
        }
        out
    }

    /// Swaps the roles of `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        let mut out = Self::zero(self.order);
        for ((m, n), v) in self.iter() {
            out.set_coeff(n, m, v.clone());
        }
        out
    }

    fn unit_offset(&self) -> Result<Self> {
        if !self.coeff(0, 0).is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        let mut u = self.clone();
        u.set_coeff(0, 0, LaurentPoly::zero());
        Ok(u)
    }

    /// Square root of a series with unit constant term, via the binomial
    /// series for `(1 + u)^{1/2}`.
    pub fn sqrt(&self) -> Result<Self> {
        let u = self.unit_offset()?;
        let mut out = Self::one(self.order);
        let mut u_pow = Self::one(self.order);
        let mut coeff = Rational::one();
        for k in 1..=self.order as i64 {
            u_pow = u_pow.mul(&u);
            // C(1/2, k) = C(1/2, k-1) * (1/2 - (k-1)) / k
            coeff = coeff * (rat(1, 2) - rat(k - 1, 1)) / rat(k, 1);
            out = out.add(&u_pow.scale(&coeff));
        }
        Ok(out)
    }

    /// Logarithm of a series with unit constant term, via the Mercator
    /// series `log(1 + u) = u - u^2/2 + u^3/3 - …`.
    pub fn log(&self) -> Result<Self> {
        let u = self.unit_offset()?;
        let mut out = Self::zero(self.order);
        let mut u_pow = Self::one(self.order);
        for k in 1..=self.order as i64 {
            u_pow = u_pow.mul(&u);
            let sign = if k % 2 == 0 { -1 } else { 1 };
            out = out.add(&u_pow.scale(&rat(sign, k)));
        }
        Ok(out)
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0, 0).is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let mut out = Self::one(self.order);
        let mut pow = Self::one(self.order);
        let mut fact = Rational::one();
        for k in 1..=self.order as i64 {
            pow = pow.mul(self);
            fact = fact / rat(k, 1);
            out = out.add(&pow.scale(&fact));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_inv(c: Rational) -> LaurentPoly {
        LaurentPoly::monomial(-1, c)
    }

    #[test]
    fn laurent_additive_inverse() {
        let a = z_inv(rat(1, 1));
        let b = z_inv(rat(-1, 1));
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn laurent_product_of_negative_quarters() {
        // (-1/(4z)) * (-1/(4z)) = 1/(16 z^2)
        let a = z_inv(rat(-1, 4));
        assert_eq!(a.mul(&a), LaurentPoly::monomial(-2, rat(1, 16)));
    }

    #[test]
    fn laurent_difference_of_squares() {
        let p = LaurentPoly::one().add(&LaurentPoly::monomial(1, rat(1, 1)));
        let q = LaurentPoly::one().add(&LaurentPoly::monomial(1, rat(-1, 1)));
        let expected = LaurentPoly::one().add(&LaurentPoly::monomial(2, rat(-1, 1)));
        assert_eq!(p.mul(&q), expected);
    }

    #[test]
    fn laurent_render_ascending() {
        let p = z_inv(rat(-1, 4)).add(&LaurentPoly::monomial(-2, rat(3, 32)));
        assert_eq!(p.to_string(), "3/32*z^-2 - 1/4*z^-1");
    }

    #[test]
    fn sqrt_of_one_plus_x() {
        // 1 + x at order 3 -> 1 + x/2 - x^2/8 + x^3/16
        let mut s = BivariateSeries::one(3);
        s.set_coeff(1, 0, LaurentPoly::one());
        let t = s.sqrt().unwrap();
        assert_eq!(t.coeff(0, 0), LaurentPoly::one());
        assert_eq!(t.coeff(1, 0), LaurentPoly::constant(rat(1, 2)));
        assert_eq!(t.coeff(2, 0), LaurentPoly::constant(rat(-1, 8)));
        assert_eq!(t.coeff(3, 0), LaurentPoly::constant(rat(1, 16)));
    }

    #[test]
    fn sqrt_of_one_is_one() {
        let s = BivariateSeries::one(5);
        assert_eq!(s.sqrt().unwrap(), s);
    }

    #[test]
    fn sqrt_of_one_plus_x_over_z_squares_back() {
        let mut s = BivariateSeries::one(2);
        s.set_coeff(1, 0, LaurentPoly::monomial(-1, rat(1, 1)));
        let t = s.sqrt().unwrap();
        assert_eq!(t.coeff(1, 0), LaurentPoly::monomial(-1, rat(1, 2)));
        assert_eq!(t.coeff(2, 0), LaurentPoly::monomial(-2, rat(-1, 8)));
        assert_eq!(t.mul(&t), s);
    }

    #[test]
    fn sqrt_requires_unit_constant() {
        let s = BivariateSeries::zero(2);
        assert_eq!(s.sqrt(), Err(Error::NonUnitConstantTerm));
    }

    #[test]
    fn log_of_one_is_zero() {
        let s = BivariateSeries::one(4);
        assert_eq!(s.log().unwrap(), BivariateSeries::zero(4));
    }

    #[test]
    fn log_of_one_plus_x() {
        let mut s = BivariateSeries::one(2);
        s.set_coeff(1, 0, LaurentPoly::one());
        let l = s.log().unwrap();
        assert_eq!(l.coeff(1, 0), LaurentPoly::one());
        assert_eq!(l.coeff(2, 0), LaurentPoly::constant(rat(-1, 2)));
    }

    #[test]
    fn log_of_squared_sqrt_round_trip() {
        let mut s = BivariateSeries::one(5);
        s.set_coeff(1, 0, LaurentPoly::one());
        let t = s.sqrt().unwrap();
        assert_eq!(t.mul(&t).log().unwrap(), s.log().unwrap());
    }

    #[test]
    fn rational_sqrt_cases() {
        assert_eq!(rational_sqrt(&rat(4, 9)), Some(rat(2, 3)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
    }
}
