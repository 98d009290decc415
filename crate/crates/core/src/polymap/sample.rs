//! Random elements and maps with small integer data, for experiments and
//! tests. Everything is driven by a caller-supplied RNG so runs are
//! reproducible.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use super::{PolynomialMap, Word};
use crate::algebra::Algebra;
use crate::scalar::{int, ratio, Rational};

/// Coordinates drawn uniformly from `-bound..=bound`.
pub fn element<R: Rng>(alg: &Algebra, rng: &mut R, bound: i64) -> Vec<Rational> {
    (0..alg.dim()).map(|_| int(rng.random_range(-bound..=bound))).collect()
}

pub fn nonzero_element<R: Rng>(alg: &Algebra, rng: &mut R, bound: i64) -> Vec<Rational> {
    loop {
        let x = element(alg, rng, bound);
        if x.iter().any(|c| !c.is_zero()) {
            return x;
        }
    }
}

/// `n/d` with `|n| ≤ bound` and `1 ≤ d ≤ bound`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    ratio(rng.random_range(-bound..=bound), rng.random_range(1..=bound.max(1)))
}

/// Random bracketing of `leaves`, given left to right.
fn bracket<R: Rng>(rng: &mut R, mut leaves: Vec<Word>) -> Word {
    while leaves.len() > 1 {
        let k = rng.random_range(0..leaves.len() - 1);
        let right = leaves.remove(k + 1);
        let left = std::mem::replace(&mut leaves[k], Word::Var(0));
        leaves[k] = Word::prod(left, right);
    }
    leaves.pop().expect("at least one leaf")
}

/// A monomial of the given degree: variables chosen at random, each
/// optionally flanked by nonzero constants, then bracketed at random.
pub fn monomial<R: Rng>(alg: &Algebra, rng: &mut R, nvars: usize, degree: usize, bound: i64) -> Word {
    if degree == 0 {
        return Word::Const(nonzero_element(alg, rng, bound));
    }
    let mut leaves = Vec::new();
    for _ in 0..degree {
        if rng.random_bool(0.5) {
            leaves.push(Word::Const(nonzero_element(alg, rng, bound)));
        }
        leaves.push(Word::Var(rng.random_range(0..nvars)));
    }
    if rng.random_bool(0.5) {
        leaves.push(Word::Const(nonzero_element(alg, rng, bound)));
    }
    bracket(rng, leaves)
}

/// `terms` random monomials of degree at most `max_degree`, with random
/// nonzero integer coefficients.
pub fn map<R: Rng>(alg: &Arc<Algebra>, rng: &mut R, nvars: usize, max_degree: usize, terms: usize, bound: i64) -> PolynomialMap {
    let mut p = PolynomialMap::zero(alg.clone(), nvars).expect("nvars > 0");
    for _ in 0..terms {
        let d = rng.random_range(0..=max_degree);
        let c = loop {
            let c = rng.random_range(-bound..=bound);
            if c != 0 {
                break c;
            }
        };
        p.push(int(c), monomial(alg, rng, nvars, d, bound)).expect("valid word");
    }
    p
}

/// A univariate map whose leading form is the single monomial `lead`,
/// plus `lower` random terms of smaller degree.
pub fn with_leading<R: Rng>(alg: &Arc<Algebra>, rng: &mut R, lead: Vec<Word>, degree: usize, lower: usize, bound: i64) -> PolynomialMap {
    let mut p = PolynomialMap::zero(alg.clone(), 1).expect("nvars > 0");
    for w in lead {
        p.push(int(1), w).expect("valid word");
    }
    for _ in 0..lower {
        let d = rng.random_range(0..degree);
        p.push(int(1), monomial(alg, rng, 1, d, bound)).expect("valid word");
    }
    p
}
