//! Finite-dimensional algebras given by structure constants.
//!
//! An algebra of dimension `d` is a vector space with basis `b_0, …, b_{d-1}`
//! and a bilinear product fixed by `b_i b_j = Σ_k γ[i][j][k] b_k`. Nothing
//! here assumes associativity, commutativity or a unit.

mod builtin;
mod file;
mod subspace;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use builtin::{cayley_dickson, BuiltinSpec};
pub use file::AlgebraFile;
pub use subspace::{hermitian_subspace, Subspace};

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{format_rational, to_f64, Rational, Scalar};

/// Ground field of an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Where an algebra came from. Builtins unlock shortcuts (division algebra,
/// composition norm) that an arbitrary table does not have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraKind {
    Reals,
    ComplexAsReal,
    Quaternions,
    Octonions,
    Matrix { m: usize, field: Field },
    ComplexMatrixAsReal { m: usize },
    Custom,
}

impl AlgebraKind {
    /// ℍ or 𝕆.
    pub fn is_quaternion_or_octonion(&self) -> bool {
        matches!(self, AlgebraKind::Quaternions | AlgebraKind::Octonions)
    }

    /// ℝ, ℂ, ℍ, 𝕆: no zero divisors.
    pub fn is_division_algebra(&self) -> bool {
        matches!(
            self,
            AlgebraKind::Reals | AlgebraKind::ComplexAsReal | AlgebraKind::Quaternions | AlgebraKind::Octonions
        )
    }
}

#[derive(Debug, Clone)]
struct Entry {
    k: usize,
    coeff: Rational,
    approx: f64,
}

/// A structure-constant algebra. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Algebra {
    kind: AlgebraKind,
    field: Field,
    dim: usize,
    /// Nonzero structure constants, indexed by `i * dim + j`.
    table: Vec<Vec<Entry>>,
    labels: Vec<String>,
    aliases: Vec<(String, Vec<Rational>)>,
    unit: Option<Vec<Rational>>,
    composition_norm: bool,
    /// `(x*)_r = Σ_c involution[r][c] x_c`
    involution: Option<Vec<Vec<Rational>>>,
}

/// Result of [`Algebra::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub associative: bool,
    pub commutative: bool,
    pub unital: bool,
}

/// An element in coordinates relative to the algebra basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub coords: Vec<Rational>,
}

impl Element {
    pub fn new(coords: Vec<Rational>) -> Self {
        Element { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Element { coords: vec![Rational::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Element::zero(dim);
        e.coords[i] = Rational::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element::new(add_coords(&self.coords, &other.coords))
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, q: &Rational) -> Element {
        Element::new(self.coords.iter().map(|a| a * q).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(to_f64).collect()
    }
}

pub(crate) fn add_coords<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.add_ref(y)).collect()
}

impl Algebra {
    /// Builds an algebra from a dense tensor `gamma[i][j][k]`.
    pub fn from_structure_constants(
        field: Field,
        labels: Vec<String>,
        gamma: &[Vec<Vec<Rational>>],
        unit: Option<Vec<Rational>>,
        involution: Option<Vec<Vec<Rational>>>,
    ) -> Result<Algebra> {
        let dim = gamma.len();
        if dim == 0 {
            return Err(Error::InconsistentTensor("dimension must be positive".into()));
        }
        for (i, slab) in gamma.iter().enumerate() {
            if slab.len() != dim || slab.iter().any(|row| row.len() != dim) {
                return Err(Error::InconsistentTensor(format!(
                    "slice {i} is not {dim}×{dim}×{dim}"
                )));
            }
        }
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let c = &gamma[i][j][k];
                    if !c.is_zero() {
                        table[i * dim + j].push(Entry { k, coeff: c.clone(), approx: to_f64(c) });
                    }
                }
            }
        }
        Self::assemble(AlgebraKind::Custom, field, dim, table, labels, unit, involution, false)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        kind: AlgebraKind,
        field: Field,
        dim: usize,
        table: Vec<Vec<Entry>>,
        labels: Vec<String>,
        unit: Option<Vec<Rational>>,
        involution: Option<Vec<Vec<Rational>>>,
        composition_norm: bool,
    ) -> Result<Algebra> {
        if labels.len() != dim {
            return Err(Error::InconsistentTensor(format!(
                "{} labels for dimension {dim}",
                labels.len()
            )));
        }
        let mut alg = Algebra {
            kind,
            field,
            dim,
            table,
            labels,
            aliases: Vec::new(),
            unit: None,
            composition_norm,
            involution: None,
        };
        if let Some(u) = unit {
            if u.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: u.len() });
            }
            for i in 0..dim {
                let b = Element::basis(dim, i).coords;
                if alg.mul(&u, &b) != b || alg.mul(&b, &u) != b {
                    return Err(Error::UnitLaw(i));
                }
            }
            alg.unit = Some(u);
        }
        if let Some(inv) = involution {
            alg.check_involution(&inv)?;
            alg.involution = Some(inv);
        }
        if let Some(u) = &alg.unit {
            if !alg.labels.iter().any(|l| l == "1") {
                alg.aliases.push(("1".into(), u.clone()));
            }
        }
        Ok(alg)
    }

    fn check_involution(&self, inv: &[Vec<Rational>]) -> Result<()> {
        let d = self.dim;
        if inv.len() != d || inv.iter().any(|r| r.len() != d) {
            return Err(Error::Involution(format!("matrix is not {d}×{d}")));
        }
        let apply = |x: &[Rational]| -> Vec<Rational> {
            inv.iter()
                .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
                .collect()
        };
        for i in 0..d {
            let b = Element::basis(d, i).coords;
            if apply(&apply(&b)) != b {
                return Err(Error::Involution(format!("not of order two at basis element {i}")));
            }
            for j in 0..d {
                let bj = Element::basis(d, j).coords;
                let lhs = apply(&self.mul(&b, &bj));
                let rhs = self.mul(&apply(&bj), &apply(&b));
                if lhs != rhs {
                    return Err(Error::Involution(format!(
                        "not anti-multiplicative on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> Option<&[Rational]> {
        self.unit.as_deref()
    }

    pub fn has_composition_norm(&self) -> bool {
        self.composition_norm
    }

    pub fn involution_matrix(&self) -> Option<&[Vec<Rational>]> {
        self.involution.as_deref()
    }

    /// Named elements beyond the basis labels (`1` for the unit, `i` in
    /// complex matrix algebras).
    pub fn aliases(&self) -> &[(String, Vec<Rational>)] {
        &self.aliases
    }

    pub(crate) fn push_alias(&mut self, name: &str, coords: Vec<Rational>) {
        self.aliases.push((name.to_string(), coords));
    }

    /// Looks up a basis label or alias.
    pub fn named_element(&self, name: &str) -> Option<Vec<Rational>> {
        if let Some(i) = self.labels.iter().position(|l| l == name) {
            return Some(Element::basis(self.dim, i).coords);
        }
        self.aliases.iter().find(|(n, _)| n == name).map(|(_, c)| c.clone())
    }

    /// Structure constant `γ[i][j][k]`.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i * self.dim + j]
            .iter()
            .find(|e| e.k == k)
            .map_or_else(Rational::zero, |e| e.coeff.clone())
    }

    /// Dense copy of the structure constants.
    pub fn gamma_tensor(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| (0..self.dim).map(|k| self.gamma(i, j, k)).collect()).collect())
            .collect()
    }

    /// Product of coordinate vectors over any coefficient ring.
    pub fn mul<T: Scalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let mut out = vec![x[0].zero_like(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero_value() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero_value() {
                    continue;
                }
                let entries = &self.table[i * self.dim + j];
                if entries.is_empty() {
                    continue;
                }
                let p = xi.mul_ref(yj);
                for e in entries {
                    out[e.k].add_scaled(&p, &e.coeff, e.approx);
                }
            }
        }
        out
    }

    /// Checked product of two exact elements.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_dim(x.dim())?;
        self.check_dim(y.dim())?;
        Ok(Element::new(self.mul(&x.coords, &y.coords)))
    }

    pub(crate) fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got });
        }
        Ok(())
    }

    /// Applies the involution to a coordinate vector.
    pub fn star<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>> {
        let inv = self.involution.as_ref().ok_or(Error::NoInvolution)?;
        Ok(inv
            .iter()
            .map(|row| {
                row.iter().zip(x).fold(x[0].zero_like(), |acc, (c, xi)| {
                    if c.is_zero() {
                        acc
                    } else {
                        acc.add_ref(&xi.scale(c))
                    }
                })
            })
            .collect())
    }

    /// Euclidean norm of the coordinates. On ℝ, ℂ, ℍ and 𝕆 this is the
    /// multiplicative composition norm.
    pub fn norm(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Exact squared Euclidean norm.
    pub fn norm_squared(&self, x: &[Rational]) -> Rational {
        x.iter().map(|v| v * v).sum()
    }

    /// Decides associativity and commutativity on basis triples and pairs,
    /// which suffices by multilinearity; unitality by solving for a unit.
    pub fn classify(&self) -> Classification {
        let d = self.dim;
        let basis: Vec<Vec<Rational>> = (0..d).map(|i| Element::basis(d, i).coords).collect();
        let mut commutative = true;
        'pairs: for i in 0..d {
            for j in i + 1..d {
                if self.mul(&basis[i], &basis[j]) != self.mul(&basis[j], &basis[i]) {
                    commutative = false;
                    break 'pairs;
                }
            }
        }
        let products: Vec<Vec<Vec<Rational>>> = (0..d)
            .map(|i| (0..d).map(|j| self.mul(&basis[i], &basis[j])).collect())
            .collect();
        let mut associative = true;
        'triples: for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.mul(&products[i][j], &basis[k]);
                    let right = self.mul(&basis[i], &products[j][k]);
                    if left != right {
                        associative = false;
                        break 'triples;
                    }
                }
            }
        }
        Classification { associative, commutative, unital: self.unit.is_some() || self.find_unit().is_some() }
    }

    /// Solves `e b_i = b_i = b_i e` for all `i`.
    pub fn find_unit(&self) -> Option<Vec<Rational>> {
        let d = self.dim;
        // unknown e = Σ e_m b_m; (e b_i)_k = Σ_m e_m γ[m][i][k]
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..d {
            for k in 0..d {
                rows.push((0..d).map(|m| self.gamma(m, i, k)).collect());
                rhs.push(if i == k { Rational::one() } else { Rational::zero() });
                rows.push((0..d).map(|m| self.gamma(i, m, k)).collect());
                rhs.push(if i == k { Rational::one() } else { Rational::zero() });
            }
        }
        linalg::solve(&rows, &rhs)
    }

    /// Short human-readable rendering of an exact element.
    pub fn format_element(&self, x: &[Rational]) -> String {
        let mut out = String::new();
        for (c, label) in x.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag.is_one() {
                out.push_str(label);
            } else {
                out.push_str(&format_rational(&mag));
                out.push('*');
                out.push_str(label);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.kind {
            AlgebraKind::Reals => "reals".to_string(),
            AlgebraKind::ComplexAsReal => "complex numbers (as a real algebra)".to_string(),
            AlgebraKind::Quaternions => "quaternions".to_string(),
            AlgebraKind::Octonions => "octonions".to_string(),
            AlgebraKind::Matrix { m, field } => format!("{m}×{m} matrices over {field:?}"),
            AlgebraKind::ComplexMatrixAsReal { m } => format!("complex {m}×{m} matrices (as a real algebra)"),
            AlgebraKind::Custom => "custom algebra".to_string(),
        };
        write!(f, "{name}, dim {}", self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn el(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn quaternion_relations() {
        let h = BuiltinSpec::Quaternions.build().unwrap();
        assert_eq!(h.dim(), 4);
        assert_eq!(h.labels(), ["1", "i", "j", "k"]);
        let (i, j, k) = (el(&[0, 1, 0, 0]), el(&[0, 0, 1, 0]), el(&[0, 0, 0, 1]));
        assert_eq!(h.mul(&i, &j), k);
        assert_eq!(h.mul(&j, &i), el(&[0, 0, 0, -1]));
        assert_eq!(h.mul(&i, &i), el(&[-1, 0, 0, 0]));
        assert_eq!(h.mul(&k, &i), j);
    }

    #[test]
    fn hand_product_in_quaternions() {
        // (−1 − i + k)(6i) = −6i − 6i² + 6ki = 6 − 6i + 6j
        let h = BuiltinSpec::Quaternions.build().unwrap();
        let c0 = el(&[-1, -1, 0, 1]);
        let six_i = el(&[0, 6, 0, 0]);
        assert_eq!(h.mul(&c0, &six_i), el(&[6, -6, 6, 0]));
    }

    #[test]
    fn matrix_units() {
        let m = BuiltinSpec::Matrix { m: 2, field: Field::Real }.build().unwrap();
        let e11 = m.named_element("E11").unwrap();
        let e12 = m.named_element("E12").unwrap();
        assert_eq!(m.mul(&e11, &e12), e12);
        assert_eq!(m.mul(&e12, &e11), el(&[0, 0, 0, 0]));
        let id = m.named_element("1").unwrap();
        let sum: Vec<Rational> = add_coords(&e11, &id);
        assert_eq!(m.mul(&e11, &sum), el(&[2, 0, 0, 0]));
    }

    #[test]
    fn classification_of_builtins() {
        let h = BuiltinSpec::Quaternions.build().unwrap().classify();
        assert_eq!(h, Classification { associative: true, commutative: false, unital: true });
        let o = BuiltinSpec::Octonions.build().unwrap().classify();
        assert_eq!(o, Classification { associative: false, commutative: false, unital: true });
        let m = BuiltinSpec::Matrix { m: 2, field: Field::Real }.build().unwrap().classify();
        assert_eq!(m, Classification { associative: true, commutative: false, unital: true });
        let c = BuiltinSpec::ComplexAsReal.build().unwrap().classify();
        assert!(c.commutative && c.associative);
    }

    #[test]
    fn unit_law_violation_is_rejected() {
        // 1-dimensional algebra with b·b = 2b, declared unit b fails
        let gamma = vec![vec![vec![int(2)]]];
        let err = Algebra::from_structure_constants(Field::Real, vec!["b".into()], &gamma, Some(el(&[1])), None)
            .unwrap_err();
        assert_eq!(err, Error::UnitLaw(0));
        // the actual unit is b/2
        let alg = Algebra::from_structure_constants(Field::Real, vec!["b".into()], &gamma, None, None).unwrap();
        assert_eq!(alg.find_unit().unwrap(), vec![crate::scalar::ratio(1, 2)]);
    }

    #[test]
    fn inconsistent_tensor_is_rejected() {
        let gamma = vec![vec![vec![int(1), int(0)], vec![int(0)]], vec![vec![int(0); 2]; 2]];
        assert!(matches!(
            Algebra::from_structure_constants(Field::Real, vec!["a".into(), "b".into()], &gamma, None, None),
            Err(Error::InconsistentTensor(_))
        ));
    }

    #[test]
    fn non_unital_zero_algebra() {
        let gamma = vec![vec![vec![int(0)]]];
        let alg = Algebra::from_structure_constants(Field::Real, vec!["n".into()], &gamma, None, None).unwrap();
        assert!(!alg.classify().unital);
        assert!(alg.named_element("1").is_none());
    }

    #[test]
    fn formatting() {
        let h = BuiltinSpec::Quaternions.build().unwrap();
        assert_eq!(h.format_element(&el(&[-1, -1, 0, 1])), "-1 - i + k");
        assert_eq!(h.format_element(&el(&[0, 0, 0, 0])), "0");
        assert_eq!(h.format_element(&el(&[0, 6, 0, 0])), "6*i");
    }
}
