//! Ground-field scalars.
//!
//! Everything that flows through an algebra multiplication implements
//! [`Scalar`]: exact rationals, doubles, complex doubles, and multivariate
//! polynomials (the latter is how scalarization works: the generic element
//! carries polynomial coordinates).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

/// Coefficient ring for algebra coordinates.
pub trait Scalar: Clone + Debug + PartialEq + Send + Sync {
    /// Zero of the same "shape" as `self` (same variable count for polynomials).
    fn zero_like(&self) -> Self;
    /// The rational `q` embedded alongside `self`.
    fn constant_like(&self, q: &Rational) -> Self;
    fn is_zero_value(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, q: &Rational) -> Self;
    /// Same as [`Scalar::scale`], with a precomputed double for float types.
    fn scale_approx(&self, q: &Rational, _approx: f64) -> Self {
        self.scale(q)
    }
    /// `self += q·other` in place.
    fn add_scaled(&mut self, other: &Self, q: &Rational, approx: f64) {
        *self = self.add_ref(&other.scale_approx(q, approx));
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn constant_like(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

impl Scalar for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn constant_like(&self, q: &Rational) -> Self {
        to_f64(q)
    }
    fn is_zero_value(&self) -> bool {
        *self == 0.0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self * to_f64(q)
    }
    fn scale_approx(&self, _q: &Rational, approx: f64) -> Self {
        self * approx
    }
}

impl Scalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn constant_like(&self, q: &Rational) -> Self {
        Complex64::new(to_f64(q), 0.0)
    }
    fn is_zero_value(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, q: &Rational) -> Self {
        self * to_f64(q)
    }
    fn scale_approx(&self, _q: &Rational, approx: f64) -> Self {
        self * approx
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // numerator/denominator overflow f64 individually
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Lifts a double to the rational it represents exactly. Non-finite values
/// are rejected.
pub fn from_f64_exact(x: f64) -> Result<Rational> {
    Rational::from_f64(x).ok_or(Error::NotExact(x))
}

/// Parses `"3"`, `"-2/5"`, or a decimal like `"0.25"` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().ok()? };
        let frac: BigInt = fp.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let v = Rational::new(whole * &scale + frac, scale);
        return Some(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// `3`, `-2/5`; integers print without a denominator.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = ratio(6, -4);
        assert_eq!(q, ratio(-3, 2));
        assert!(q.denom().is_positive());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-2/5"), Some(ratio(-2, 5)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn exact_float_lift() {
        assert_eq!(from_f64_exact(0.375).unwrap(), ratio(3, 8));
        assert!(from_f64_exact(f64::NAN).is_err());
    }
}
