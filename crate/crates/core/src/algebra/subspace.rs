use num_traits::Zero;

use super::{Algebra, AlgebraKind, Element};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{int, Rational};

/// A finite-dimensional subspace given by a linearly independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn new(ambient_dim: usize, basis: Vec<Vec<Rational>>) -> Result<Subspace> {
        if let Some(b) = basis.iter().find(|b| b.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, got: b.len() });
        }
        if linalg::rank(&basis) != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Subspace { ambient_dim, basis })
    }

    /// The whole algebra with its standard basis.
    pub fn full(alg: &Algebra) -> Subspace {
        let d = alg.dim();
        Subspace { ambient_dim: d, basis: (0..d).map(|i| Element::basis(d, i).coords).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// True when the basis is the standard basis of the ambient algebra.
    pub fn is_standard(&self) -> bool {
        self.dim() == self.ambient_dim
            && self.basis.iter().enumerate().all(|(i, b)| {
                b.iter().enumerate().all(|(k, v)| if i == k { v == &int(1) } else { v.is_zero() })
            })
    }

    /// `Σ_k c_k b_k`.
    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (o, v) in out.iter_mut().zip(b) {
                *o += c * v;
            }
        }
        out
    }

    /// Same as [`Subspace::combine`] for float coefficients.
    pub fn combine_f64(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.ambient_dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (o, v) in out.iter_mut().zip(b) {
                *o += c * crate::scalar::to_f64(v);
            }
        }
        out
    }

    /// Coordinates of `x` in this basis, or `None` when `x` is not in the span.
    pub fn coords_in(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        if x.len() != self.ambient_dim {
            return None;
        }
        // columns are basis vectors
        let a = linalg::transpose(&self.basis);
        if self.basis.is_empty() {
            return x.iter().all(Zero::is_zero).then(Vec::new);
        }
        linalg::solve(&a, x)
    }
}

/// Hermitian `m × m` matrices inside `cmat-as-real:m`, a real subspace of
/// dimension `m²`. Basis order: diagonal units `E_rr`, then `E_rs + E_sr`
/// for `r < s`, then `i(E_sr − E_rs)` for `r < s` (for `m = 2` the last one
/// is the Pauli matrix σ_y).
pub fn hermitian_subspace(alg: &Algebra, m: usize) -> Result<Subspace> {
    if alg.kind() != &(AlgebraKind::ComplexMatrixAsReal { m }) {
        return Err(Error::UnknownAlgebra(format!("hermitian subspace needs cmat-as-real:{m}")));
    }
    let d = alg.dim();
    let mm = m * m;
    let re = |r: usize, c: usize| r * m + c;
    let im = |r: usize, c: usize| mm + r * m + c;
    let mut basis = Vec::new();
    for r in 0..m {
        let mut e = vec![Rational::zero(); d];
        e[re(r, r)] = int(1);
        basis.push(e);
    }
    for r in 0..m {
        for s in r + 1..m {
            let mut e = vec![Rational::zero(); d];
            e[re(r, s)] = int(1);
            e[re(s, r)] = int(1);
            basis.push(e);
        }
    }
    for r in 0..m {
        for s in r + 1..m {
            let mut e = vec![Rational::zero(); d];
            e[im(s, r)] = int(1);
            e[im(r, s)] = int(-1);
            basis.push(e);
        }
    }
    Subspace::new(d, basis)
}
