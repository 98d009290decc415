//! Exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

/// Transpose of a rectangular matrix.
pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

/// Solves `a x = b`. `None` when inconsistent; free variables are set to zero.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

/// Fraction-free (Bareiss) determinant.
pub fn det(a: &Matrix) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    let mut m = a.clone();
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Rational::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// For a full-column-rank `n × e` matrix `b`, returns an `e × n` matrix `w`
/// with `w b = I`, supported on a set of independent rows of `b`.
pub fn left_inverse(b: &Matrix) -> Option<Matrix> {
    let n = b.len();
    let e = b.first().map_or(0, Vec::len);
    // independent rows of b = pivot columns of bᵀ
    let mut bt = transpose(b);
    let rows = rref(&mut bt);
    if rows.len() != e {
        return None;
    }
    // square block b_R, invert by solving against unit vectors
    let block: Matrix = rows.iter().map(|&r| b[r].clone()).collect();
    let mut w = vec![vec![Rational::zero(); n]; e];
    for (col, &r) in rows.iter().enumerate() {
        let mut unit = vec![Rational::zero(); e];
        unit[col] = Rational::one();
        // column `col` of block⁻¹
        let x = solve(&block, &unit)?;
        for (j, v) in x.into_iter().enumerate() {
            w[j][r] = v;
        }
    }
    Some(w)
}
