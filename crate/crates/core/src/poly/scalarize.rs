use serde::{Deserialize, Serialize};

use super::MultiPoly;
use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::linalg;
use crate::polymap::PolynomialMap;
use crate::scalar::{format_rational, Rational, Scalar};

/// Bijection between coordinates `λ_{kℓ}` (basis element `k`, argument `ℓ`)
/// and flat variable indices `ℓ·d + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableAtlas {
    pub subspace_dim: usize,
    pub nargs: usize,
    /// An extra trailing variable added by homogenization.
    pub homogenizing: bool,
}

impl VariableAtlas {
    pub fn new(subspace_dim: usize, nargs: usize) -> VariableAtlas {
        VariableAtlas { subspace_dim, nargs, homogenizing: false }
    }

    pub fn index(&self, k: usize, arg: usize) -> usize {
        assert!(k < self.subspace_dim && arg < self.nargs);
        arg * self.subspace_dim + k
    }

    /// Inverse of [`VariableAtlas::index`]; `None` for the homogenizing
    /// variable.
    pub fn coords_of(&self, v: usize) -> Option<(usize, usize)> {
        (v < self.len()).then(|| (v % self.subspace_dim, v / self.subspace_dim))
    }

    /// Number of λ variables (without the homogenizing one).
    pub fn len(&self) -> usize {
        self.subspace_dim * self.nargs
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn nvars(&self) -> usize {
        self.len() + usize::from(self.homogenizing)
    }

    /// `l_k_l`, 1-based, plus `z` for the homogenizing variable.
    pub fn names(&self) -> Vec<String> {
        let mut names: Vec<String> = (0..self.len())
            .map(|v| {
                let (k, l) = self.coords_of(v).expect("in range");
                format!("l_{}_{}", k + 1, l + 1)
            })
            .collect();
        if self.homogenizing {
            names.push("z".into());
        }
        names
    }
}

/// Classical polynomial system `h_{ji}`: the `ℋ′`-coordinates of each map on
/// the generic point of `ℋⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarizedSystem {
    /// Map-major: polys `[i·e .. (i+1)·e]` belong to map `i`.
    pub polys: Vec<MultiPoly>,
    pub atlas: VariableAtlas,
    pub source_basis: Vec<Vec<Rational>>,
    pub target_basis: Vec<Vec<Rational>>,
}

impl ScalarizedSystem {
    /// Builds a system directly from polynomials (no algebra behind it).
    pub fn from_polys(polys: Vec<MultiPoly>) -> ScalarizedSystem {
        let nvars = polys.first().map_or(0, MultiPoly::nvars);
        assert!(polys.iter().all(|p| p.nvars() == nvars), "all polynomials need the same variables");
        let basis = vec![vec![Rational::from_integer(1.into())]];
        ScalarizedSystem {
            polys,
            atlas: VariableAtlas::new(1, nvars),
            source_basis: basis.clone(),
            target_basis: basis,
        }
    }

    pub fn nvars(&self) -> usize {
        self.atlas.nvars()
    }

    /// Number of polynomials per map (`e = dim ℋ′`).
    pub fn per_map(&self) -> usize {
        self.target_basis.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.atlas.names()
    }

    pub fn homogenize(&self) -> ScalarizedSystem {
        let mut atlas = self.atlas.clone();
        atlas.homogenizing = true;
        ScalarizedSystem {
            polys: self.polys.iter().map(MultiPoly::homogenize).collect(),
            atlas,
            source_basis: self.source_basis.clone(),
            target_basis: self.target_basis.clone(),
        }
    }

    pub fn dehomogenize(&self) -> ScalarizedSystem {
        assert!(self.atlas.homogenizing, "system is not homogenized");
        let mut atlas = self.atlas.clone();
        atlas.homogenizing = false;
        ScalarizedSystem {
            polys: self.polys.iter().map(MultiPoly::dehomogenize).collect(),
            atlas,
            source_basis: self.source_basis.clone(),
            target_basis: self.target_basis.clone(),
        }
    }

    /// Entry `(i, v)` is `∂ poly_i / ∂ λ_v`.
    pub fn jacobian(&self) -> Vec<Vec<MultiPoly>> {
        self.polys.iter().map(|p| (0..self.nvars()).map(|v| p.partial_derivative(v)).collect()).collect()
    }

    /// Homogeneous parts of top degree, per polynomial.
    pub fn leading_parts(&self) -> Vec<MultiPoly> {
        self.polys
            .iter()
            .map(|p| p.total_degree().map_or_else(|| p.clone(), |d| p.homogeneous_part(d)))
            .collect()
    }

    pub fn export(&self) -> SystemExport {
        SystemExport {
            variables: self.names(),
            polys: self
                .polys
                .iter()
                .map(|p| p.terms().map(|(m, c)| (m.0.clone(), format_rational(c))).collect())
                .collect(),
        }
    }
}

/// JSON form of a system: variable names and, per polynomial, a list of
/// `[exponent-vector, coeff-string]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemExport {
    pub variables: Vec<String>,
    pub polys: Vec<Vec<(Vec<u32>, String)>>,
}

impl SystemExport {
    pub fn to_polys(&self) -> Result<Vec<MultiPoly>> {
        let n = self.variables.len();
        self.polys
            .iter()
            .map(|terms| {
                let parsed = terms
                    .iter()
                    .map(|(e, c)| {
                        if e.len() != n {
                            return Err(Error::NvarsMismatch(n, e.len()));
                        }
                        let q = crate::scalar::parse_rational(c)
                            .ok_or_else(|| Error::AlgebraFile(format!("malformed coefficient `{c}`")))?;
                        Ok((e.clone(), q))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(MultiPoly::from_terms(n, parsed))
            })
            .collect()
    }
}

/// Ambient coordinates of `map` on the generic point of `ℋⁿ`.
pub fn expand(map: &PolynomialMap, h: &Subspace) -> Vec<MultiPoly> {
    let d = h.dim();
    let atlas = VariableAtlas::new(d, map.nvars());
    let nv = atlas.len();
    let dim = map.algebra().dim();
    let args: Vec<Vec<MultiPoly>> = (0..map.nvars())
        .map(|l| {
            let mut x = vec![MultiPoly::zero(nv); dim];
            for (k, b) in h.basis().iter().enumerate() {
                let lam = MultiPoly::var(nv, atlas.index(k, l));
                for (xc, bc) in x.iter_mut().zip(b) {
                    if *bc != Rational::default() {
                        xc.add_scaled(&lam, bc, 0.0);
                    }
                }
            }
            x
        })
        .collect();
    map.eval_coords(&args)
}

/// Expands each map over `ℋⁿ` and rewrites the result in the basis of `ℋ′`.
/// Fails when some map leaves `ℋ′`.
pub fn scalarize(maps: &[PolynomialMap], h: &Subspace, target: &Subspace) -> Result<ScalarizedSystem> {
    let first = maps.first().ok_or(Error::Arity { expected: 1, got: 0 })?;
    let nargs = first.nvars();
    for m in maps {
        if m.nvars() != nargs {
            return Err(Error::Arity { expected: nargs, got: m.nvars() });
        }
        m.algebra().check_dim(h.ambient_dim())?;
        m.algebra().check_dim(target.ambient_dim())?;
    }
    let atlas = VariableAtlas::new(h.dim(), nargs);
    let nv = atlas.len();
    let standard = target.is_standard();
    // columns of the target basis
    let b_cols = linalg::transpose(&target.basis().to_vec());
    let w = if standard { None } else { Some(linalg::left_inverse(&b_cols).ok_or(Error::DependentBasis)?) };
    let mut polys = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        let y = expand(m, h);
        let Some(w) = &w else {
            polys.extend(y);
            continue;
        };
        let coeffs: Vec<MultiPoly> = w
            .iter()
            .map(|row| {
                row.iter().zip(&y).fold(MultiPoly::zero(nv), |acc, (c, yr)| {
                    if *c == Rational::default() {
                        acc
                    } else {
                        acc.add_ref(&yr.scale(c))
                    }
                })
            })
            .collect();
        // containment: y − B′c must vanish
        for (r, yr) in y.iter().enumerate() {
            let mut back = MultiPoly::zero(nv);
            for (j, c) in coeffs.iter().enumerate() {
                let b = &target.basis()[j][r];
                if *b != Rational::default() {
                    back = back.add_ref(&c.scale(b));
                }
            }
            let residual = yr.sub_ref(&back);
            if !residual.is_zero() {
                return Err(Error::ImageNotContained {
                    map: i,
                    coordinate: r,
                    residual: residual.display_with(&atlas.names()),
                });
            }
        }
        polys.extend(coeffs);
    }
    Ok(ScalarizedSystem {
        polys,
        atlas,
        source_basis: h.basis().to_vec(),
        target_basis: target.basis().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{hermitian_subspace, BuiltinSpec};
    use crate::polymap::Word;
    use crate::scalar::int;

    #[test]
    fn square_on_real_line_of_quaternions() {
        let h = Arc::new(BuiltinSpec::Quaternions.build().unwrap());
        let one = Subspace::new(4, vec![vec![int(1), int(0), int(0), int(0)]]).unwrap();
        let p = PolynomialMap::from_terms(h, 1, vec![(int(1), Word::power(&Word::Var(0), 2))]).unwrap();
        let sys = scalarize(&[p], &one, &one).unwrap();
        assert_eq!(sys.polys, vec![MultiPoly::from_terms(1, [(vec![2], int(1))])]);
    }

    #[test]
    fn containment_violation_is_reported() {
        let h = Arc::new(BuiltinSpec::Quaternions.build().unwrap());
        let one = Subspace::new(4, vec![vec![int(1), int(0), int(0), int(0)]]).unwrap();
        let i = h.named_element("i").unwrap();
        let p = PolynomialMap::from_terms(h, 1, vec![(int(1), Word::prod(Word::Const(i), Word::Var(0)))]).unwrap();
        match scalarize(&[p], &one, &one) {
            Err(Error::ImageNotContained { map: 0, coordinate: 1, residual }) => assert_eq!(residual, "l_1_1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hermitian_square_stays_hermitian() {
        let a = Arc::new(BuiltinSpec::ComplexMatrixAsReal { m: 2 }.build().unwrap());
        let her = hermitian_subspace(&a, 2).unwrap();
        let p = PolynomialMap::from_terms(a, 1, vec![(int(1), Word::power(&Word::Var(0), 3))]).unwrap();
        let sys = scalarize(&[p], &her, &her).unwrap();
        assert_eq!(sys.polys.len(), 4);
        assert_eq!(sys.nvars(), 4);
    }

    #[test]
    fn atlas_is_a_bijection() {
        let atlas = VariableAtlas::new(4, 3);
        for v in 0..12 {
            let (k, l) = atlas.coords_of(v).unwrap();
            assert_eq!(atlas.index(k, l), v);
        }
        assert_eq!(atlas.names()[5], "l_2_2");
    }

    #[test]
    fn jacobian_entries() {
        // {x² + y, y}
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let sys = ScalarizedSystem::from_polys(vec![&(&x * &x) + &y, y.clone()]);
        let j = sys.jacobian();
        assert_eq!(j[0][0], x.scale(&int(2)));
        assert_eq!(j[0][1], MultiPoly::constant(2, int(1)));
        assert!(j[1][0].is_zero());
        assert_eq!(j[1][1], MultiPoly::constant(2, int(1)));
    }

    #[test]
    fn export_round_trip() {
        let x = MultiPoly::var(2, 0);
        let sys = ScalarizedSystem::from_polys(vec![&(&x * &x) - &MultiPoly::constant(2, int(3))]);
        let json = serde_json::to_string(&sys.export()).unwrap();
        let back: SystemExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_polys().unwrap(), sys.polys);
    }
}
