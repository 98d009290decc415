//! Sparse multivariate polynomials with exact rational coefficients, and
//! the expansion of polynomial maps into such polynomials.

mod linear;
mod scalarize;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

pub use linear::{linear_coefficient_matrix, poly_det};
pub use scalarize::{expand, scalarize, ScalarizedSystem, SystemExport, VariableAtlas};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, to_f64, Rational, Scalar};

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// ties broken by the exponent of the first variable, then the second, …).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables over ℚ. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, q: Rational) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::one(nvars), q);
        p
    }

    pub fn var(nvars: usize, v: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::var(nvars, v), Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(nvars: usize, terms: I) -> MultiPoly
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        Ok(self.add_ref(other))
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        Ok(self.sub_ref(other))
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        Ok(self.mul_ref(other))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn partial_derivative(&self, v: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[v] -= 1;
            out.add_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Exact evaluation.
    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.nvars {
            return Err(Error::NvarsMismatch(self.nvars, x.len()));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(xi.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| m.0.iter().zip(x).fold(to_f64(c), |t, (&e, xi)| t * xi.powi(e as i32)))
            .sum()
    }

    pub fn eval_complex(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| m.0.iter().zip(x).fold(Complex64::new(to_f64(c), 0.0), |t, (&e, xi)| t * xi.powu(e)))
            .sum()
    }

    /// Appends variables on the right (all with exponent zero).
    pub fn extend_vars(&self, extra: usize) -> MultiPoly {
        let nvars = self.nvars + extra;
        MultiPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// `z^D · h(x / z)` with `z` appended as the last variable, `D` the total
    /// degree.
    pub fn homogenize(&self) -> MultiPoly {
        let d = self.total_degree().unwrap_or(0);
        let nvars = self.nvars + 1;
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.push(d - m.degree());
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Sets the last variable to 1 and drops it.
    pub fn dehomogenize(&self) -> MultiPoly {
        let nvars = self.nvars - 1;
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            out.add_term(Monomial(m.0[..nvars].to_vec()), c.clone());
        }
        out
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.terms.keys().any(|m| m.0[v] > 0)).collect()
    }

    /// Dense coefficients `[c_0, c_1, …]` if the polynomial only involves
    /// variable `v`.
    pub fn as_univariate(&self, v: usize) -> Option<Vec<Rational>> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != v && e > 0) {
                return None;
            }
            let e = m.0[v] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(coeffs)
    }

    pub fn from_univariate(nvars: usize, v: usize, coeffs: &[Rational]) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; nvars];
            m[v] = e as u32;
            p.add_term(Monomial(m), c.clone());
        }
        p
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| to_f64(c).abs()).fold(0.0, f64::max)
    }

    /// Human-readable rendering with the given variable names, highest
    /// graded-lex term first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                .collect();
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format_rational(&mag));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Default variable names `x1, x2, …`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&MultiPoly::default_names(self.nvars)))
    }
}

impl Scalar for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nvars)
    }

    fn constant_like(&self, q: &Rational) -> Self {
        MultiPoly::constant(self.nvars, q.clone())
    }

    fn is_zero_value(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    fn mul_ref(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    fn add_scaled(&mut self, other: &Self, q: &Rational, _approx: f64) {
        debug_assert_eq!(self.nvars, other.nvars);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * q);
        }
    }

    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_ref(rhs)
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.sub_ref(rhs)
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_ref(rhs)
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), int(*c))))
    }

    #[test]
    fn difference_of_squares() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let prod = &(&x + &y) * &(&x - &y);
        assert_eq!(prod, p(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
    }

    #[test]
    fn derivative_of_x2y() {
        let f = p(2, &[(&[2, 1], 1)]);
        assert_eq!(f.partial_derivative(0), p(2, &[(&[1, 1], 2)]));
        assert_eq!(f.partial_derivative(1), p(2, &[(&[2, 0], 1)]));
    }

    #[test]
    fn homogeneous_part_of_eliminant() {
        let q = MultiPoly::from_univariate(
            1,
            0,
            &[int(216), int(0), int(324), int(0), int(-927), int(0), int(-148), int(0), int(2578)],
        );
        assert_eq!(q.homogeneous_part(8), p(1, &[(&[8], 2578)]));
        assert_eq!(q.total_degree(), Some(8));
        assert!(q.homogeneous_part(3).is_zero());
    }

    #[test]
    fn homogenize_examples() {
        assert_eq!(p(1, &[(&[2], 1), (&[0], 1)]).homogenize(), p(2, &[(&[2, 0], 1), (&[0, 2], 1)]));
        let lin = p(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        assert_eq!(lin.homogenize(), p(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]));
        assert_eq!(lin.homogenize().dehomogenize(), lin);
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        assert!(MultiPoly::var(2, 0).try_add(&MultiPoly::var(3, 0)).is_err());
    }

    #[test]
    fn evaluation_agrees() {
        let f = p(2, &[(&[2, 1], 3), (&[0, 0], -1)]);
        assert_eq!(f.eval(&[int(2), int(-1)]).unwrap(), int(-13));
        assert_eq!(f.eval_f64(&[2.0, -1.0]), -13.0);
    }

    #[test]
    fn display() {
        let f = p(2, &[(&[2, 0], -1), (&[1, 1], 2), (&[0, 0], 6)]);
        assert_eq!(f.to_string(), "-x1^2 + 2*x1*x2 + 6");
    }
}
