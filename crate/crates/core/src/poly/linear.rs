use num_traits::Zero;

use super::{scalarize, MultiPoly};
use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polymap::PolynomialMap;
use crate::scalar::{Rational, Scalar};

/// Matrix of a linear single-variable map on `ℋ`: column `k` holds the
/// `ℋ`-coordinates of `p(b_k)`.
pub fn linear_coefficient_matrix(p: &PolynomialMap, h: &Subspace) -> Result<Matrix> {
    if p.nvars() != 1 {
        return Err(Error::NotLinear(format!("expected one variable, got {}", p.nvars())));
    }
    let sys = scalarize(std::slice::from_ref(p), h, h)?;
    let d = h.dim();
    let mut m = vec![vec![Rational::zero(); d]; d];
    for (j, poly) in sys.polys.iter().enumerate() {
        for (mono, c) in poly.terms() {
            if mono.degree() != 1 {
                return Err(Error::NotLinear(format!("coordinate {j} has a term of degree {}", mono.degree())));
            }
            let k = mono.0.iter().position(|&e| e == 1).expect("degree one");
            m[j][k] = c.clone();
        }
    }
    Ok(m)
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// the first row. Meant for small symbolic matrices.
pub fn poly_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix");
    if n == 1 {
        return m[0][0].clone();
    }
    let nvars = m[0][0].nvars();
    let mut acc = MultiPoly::zero(nvars);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = m[0][c].mul_ref(&poly_det(&minor));
        acc = if c % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
    }
    acc
}


#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::BuiltinSpec;
    use crate::polymap::Word;
    use crate::scalar::int;

    #[test]
    fn identity_map_gives_identity_matrix() {
        let h = Arc::new(BuiltinSpec::Quaternions.build().unwrap());
        let full = Subspace::full(&h);
        let p = PolynomialMap::from_terms(h, 1, vec![(int(1), Word::Var(0))]).unwrap();
        let m = linear_coefficient_matrix(&p, &full).unwrap();
        for (r, row) in m.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_eq!(*v, if r == c { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn nonlinear_map_rejected() {
        let h = Arc::new(BuiltinSpec::Quaternions.build().unwrap());
        let full = Subspace::full(&h);
        let p = PolynomialMap::from_terms(h, 1, vec![(int(1), Word::power(&Word::Var(0), 2))]).unwrap();
        assert!(matches!(linear_coefficient_matrix(&p, &full), Err(Error::NotLinear(_))));
    }

    #[test]
    fn symbolic_2x2_det() {
        let v = |i| MultiPoly::var(4, i);
        let m = vec![vec![v(0), v(1)], vec![v(2), v(3)]];
        let expected = &(&v(0) * &v(3)) - &(&v(1) * &v(2));
        assert_eq!(poly_det(&m), expected);
    }
}
