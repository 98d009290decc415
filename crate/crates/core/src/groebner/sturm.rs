//! Univariate real root counting over ℚ.
//!
//! Polynomials are dense coefficient vectors, lowest degree first.

use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

pub type UniPoly = Vec<Rational>;

fn trim(mut p: UniPoly) -> UniPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn derivative(p: &[Rational]) -> UniPoly {
    trim(p.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer((k as i64).into())).collect())
}

/// Remainder of `a` divided by `b` (`b` nonzero).
pub fn rem(a: &[Rational], b: &[Rational]) -> UniPoly {
    let db = degree(b).expect("division by zero polynomial");
    let lead = &b[db];
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = &r[dr] / lead;
        let shift = dr - db;
        for (k, c) in b.iter().enumerate().take(db + 1) {
            r[k + shift] -= &q * c;
        }
        r = trim(r);
    }
    r
}

/// Quotient of an exact division.
pub fn div_exact(a: &[Rational], b: &[Rational]) -> UniPoly {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    let Some(da) = degree(&r) else { return Vec::new() };
    if da < db {
        return Vec::new();
    }
    let mut q = vec![Rational::zero(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &b[db];
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate().take(db + 1) {
            r[k + shift] -= &c * bc;
        }
        q[shift] = c;
        r = trim(r);
    }
    trim(q)
}

fn monic(p: UniPoly) -> UniPoly {
    match degree(&p) {
        Some(d) => {
            let l = p[d].clone();
            p.into_iter().map(|c| c / &l).collect()
        }
        None => p,
    }
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> UniPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while degree(&y).is_some() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

/// `p / gcd(p, p')`: same roots, all simple.
pub fn squarefree(p: &[Rational]) -> UniPoly {
    let p = trim(p.to_vec());
    if degree(&p).unwrap_or(0) == 0 {
        return p;
    }
    let g = gcd(&p, &derivative(&p));
    monic(div_exact(&p, &g))
}

/// Sturm chain of `p`: `p, p', −rem(p, p'), …`.
pub fn sturm_chain(p: &[Rational]) -> Vec<UniPoly> {
    let p = trim(p.to_vec());
    let mut chain = vec![p.clone()];
    if degree(&p).is_none() {
        return chain;
    }
    let mut next = derivative(&p);
    while degree(&next).is_some() {
        chain.push(next.clone());
        let n = chain.len();
        next = rem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        next = trim(next);
    }
    chain
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_at_infinity(p: &[Rational], positive: bool) -> i8 {
    match degree(p) {
        None => 0,
        Some(d) => {
            let s = sign(&p[d]);
            if positive || d % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

/// Interval for [`count_real_roots`].
#[derive(Debug, Clone, PartialEq)]
pub enum Range {
    Whole,
    /// Half-open `(lo, hi]`.
    Interval(Rational, Rational),
}

/// Number of distinct real roots of `p` in `range`. Returns `None` for the
/// zero polynomial, which vanishes everywhere.
pub fn count_real_roots(p: &[Rational], range: &Range) -> Option<usize> {
    let sf = squarefree(p);
    degree(&sf)?;
    let chain = sturm_chain(&sf);
    let (lo, hi) = match range {
        Range::Whole => (
            variations(chain.iter().map(|q| sign_at_infinity(q, false))),
            variations(chain.iter().map(|q| sign_at_infinity(q, true))),
        ),
        Range::Interval(a, b) => (
            variations(chain.iter().map(|q| sign(&eval(q, a)))),
            variations(chain.iter().map(|q| sign(&eval(q, b)))),
        ),
    };
    Some(lo.saturating_sub(hi))
}

/// Cauchy bound: every real root lies in `[-B, B]`.
pub fn root_bound(p: &[Rational]) -> Rational {
    let Some(d) = degree(p) else { return Rational::zero() };
    let lead = p[d].abs();
    Rational::one() + p[..d].iter().map(|c| c.abs() / &lead).fold(Rational::zero(), |m, c| if c > m { c } else { m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn poly(c: &[i64]) -> UniPoly {
        c.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn counts() {
        // (x−1)(x−2)(x+3)
        let p = poly(&[6, -7, 0, 1]);
        assert_eq!(count_real_roots(&p, &Range::Whole), Some(3));
        assert_eq!(count_real_roots(&p, &Range::Interval(int(0), int(3))), Some(2));
        // x² + 1
        assert_eq!(count_real_roots(&poly(&[1, 0, 1]), &Range::Whole), Some(0));
        // (x−1)³ has one distinct root
        assert_eq!(count_real_roots(&poly(&[-1, 3, -3, 1]), &Range::Whole), Some(1));
        assert_eq!(count_real_roots(&poly(&[5]), &Range::Whole), Some(0));
        assert_eq!(count_real_roots(&[], &Range::Whole), None);
    }

    #[test]
    fn helpers() {
        assert_eq!(squarefree(&poly(&[1, 2, 1])), poly(&[1, 1]));
        assert_eq!(gcd(&poly(&[-1, 0, 1]), &poly(&[1, 1])), poly(&[1, 1]));
        assert_eq!(eval(&poly(&[1, 0, 1]), &ratio(1, 2)), ratio(5, 4));
        assert_eq!(root_bound(&poly(&[6, -7, 0, 1])), int(8));
    }
}
