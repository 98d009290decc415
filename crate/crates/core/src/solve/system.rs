//! Polynomial systems compiled for fast floating-point evaluation.

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex64;

use crate::poly::MultiPoly;
use crate::scalar::to_f64;

/// Real or complex floating-point numbers.
pub trait Num: ComplexField<RealField = f64> + Copy {
    fn from_complex(c: Complex64) -> Self;
    fn to_complex(self) -> Complex64;
}

impl Num for f64 {
    fn from_complex(c: Complex64) -> f64 {
        c.re
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Num for Complex64 {
    fn from_complex(c: Complex64) -> Complex64 {
        c
    }

    fn to_complex(self) -> Complex64 {
        self
    }
}

/// `x^p` by repeated squaring; exact for real arguments with small `p`.
pub fn pow<T: Num>(x: T, mut p: u32) -> T {
    let mut base = x;
    let mut acc = T::one();
    while p > 0 {
        if p & 1 == 1 {
            acc *= base;
        }
        base *= base;
        p >>= 1;
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct FloatPoly {
    nvars: usize,
    /// Coefficient and sparse exponents `(variable, power)`.
    terms: Vec<(Complex64, Vec<(usize, u32)>)>,
}

impl FloatPoly {
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Complex64)>) -> FloatPoly {
        let terms = terms
            .into_iter()
            .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
            .map(|(e, c)| (c, e.iter().enumerate().filter(|(_, &p)| p > 0).map(|(v, &p)| (v, p)).collect()))
            .collect();
        FloatPoly { nvars, terms }
    }

    pub fn from_poly(p: &MultiPoly) -> FloatPoly {
        FloatPoly::from_terms(p.nvars(), p.terms().map(|(m, c)| (m.0.clone(), Complex64::new(to_f64(c), 0.0))))
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(_, e)| e.iter().map(|(_, p)| p).sum()).max().unwrap_or(0)
    }

    pub fn eval<T: Num>(&self, x: &[T]) -> T {
        let mut acc = T::zero();
        for (c, e) in &self.terms {
            let mut t = T::from_complex(*c);
            for &(v, p) in e {
                t *= pow(x[v], p);
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> FloatPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(c, e)| {
                let k = e.iter().position(|&(u, _)| u == v)?;
                let p = e[k].1;
                let mut e = e.clone();
                if p == 1 {
                    e.remove(k);
                } else {
                    e[k].1 = p - 1;
                }
                Some((*c * p as f64, e))
            })
            .collect();
        FloatPoly { nvars: self.nvars, terms }
    }

    /// Homogenization to degree `d` with the new variable appended last.
    pub fn homogenized(&self, d: u32) -> FloatPoly {
        let z = self.nvars;
        let terms = self
            .terms
            .iter()
            .map(|(c, e)| {
                let deg: u32 = e.iter().map(|(_, p)| p).sum();
                let mut e = e.clone();
                if d > deg {
                    e.push((z, d - deg));
                }
                (*c, e)
            })
            .collect();
        FloatPoly { nvars: z + 1, terms }
    }

    /// `self + c`.
    pub fn shifted(&self, c: Complex64) -> FloatPoly {
        let mut out = self.clone();
        match out.terms.iter_mut().find(|(_, e)| e.is_empty()) {
            Some(t) => t.0 += c,
            None => out.terms.push((c, Vec::new())),
        }
        out
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.norm()).fold(0.0, f64::max)
    }
}

/// Polynomials with their Jacobian.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatSystem {
    nvars: usize,
    polys: Vec<FloatPoly>,
    jac: Vec<Vec<FloatPoly>>,
}

impl FloatSystem {
    pub fn new(nvars: usize, polys: Vec<FloatPoly>) -> FloatSystem {
        let jac = polys.iter().map(|p| (0..nvars).map(|v| p.derivative(v)).collect()).collect();
        FloatSystem { nvars, polys, jac }
    }

    pub fn from_polys(polys: &[MultiPoly]) -> FloatSystem {
        let nvars = polys.first().map_or(0, MultiPoly::nvars);
        FloatSystem::new(nvars, polys.iter().map(FloatPoly::from_poly).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> &[FloatPoly] {
        &self.polys
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(FloatPoly::degree).collect()
    }

    pub fn eval<T: Num>(&self, x: &[T]) -> DVector<T> {
        DVector::from_iterator(self.polys.len(), self.polys.iter().map(|p| p.eval(x)))
    }

    pub fn jacobian<T: Num>(&self, x: &[T]) -> DMatrix<T> {
        DMatrix::from_fn(self.polys.len(), self.nvars, |i, j| self.jac[i][j].eval(x))
    }

    /// Largest absolute value of the components.
    pub fn residual<T: Num>(&self, x: &[T]) -> f64 {
        self.polys.iter().map(|p| p.eval(x).modulus()).fold(0.0, f64::max)
    }

    pub fn coefficient_scale(&self) -> f64 {
        self.polys.iter().map(FloatPoly::max_abs_coeff).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn evaluation_and_jacobian() {
        // {x² + y, y}
        let p = MultiPoly::from_terms(2, [(vec![2, 0], int(1)), (vec![0, 1], int(1))]);
        let q = MultiPoly::var(2, 1);
        let s = FloatSystem::from_polys(&[p, q]);
        assert_eq!(s.eval(&[2.0, 3.0]).as_slice(), &[7.0, 3.0]);
        let j = s.jacobian(&[2.0, 3.0]);
        assert_eq!(j, DMatrix::from_row_slice(2, 2, &[4.0, 1.0, 0.0, 1.0]));
        let z = [Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)];
        assert_eq!(s.eval(&z)[0], Complex64::new(0.0, 0.0));
        assert_eq!(s.degrees(), vec![2, 1]);
    }
}
