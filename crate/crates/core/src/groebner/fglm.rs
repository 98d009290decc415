//! Change of monomial order for zero-dimensional ideals.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};

use super::{divides, pure_power_check, GroebnerBasis, MonomialOrder, Sorted};
use crate::poly::MultiPoly;
use crate::scalar::Rational;

type Vector = BTreeMap<Vec<u32>, Rational>;

/// Incremental reduced row echelon form over a growing list of vectors
/// `b_0, b_1, …`. Each row remembers how it combines the `b_j`.
#[derive(Default)]
struct Relations {
    rows: Vec<(Vec<u32>, Vector, Vec<Rational>)>,
    count: usize,
}

fn axpy(r: &mut Vector, f: &Rational, w: &Vector) {
    for (m, c) in w {
        let e = r.entry(m.clone()).or_insert_with(Rational::zero);
        *e -= f * c;
        if e.is_zero() {
            r.remove(m);
        }
    }
}

fn axpy_dense(r: &mut Vec<Rational>, f: &Rational, w: &[Rational]) {
    if r.len() < w.len() {
        r.resize(w.len(), Rational::zero());
    }
    for (x, c) in r.iter_mut().zip(w) {
        *x -= f * c;
    }
}

impl Relations {
    /// Adds `v` as `b_count`. If `v` is a combination of the earlier
    /// vectors, returns the coefficients `c` with `v = Σ c_j b_j` instead.
    fn insert(&mut self, v: Vector) -> Option<Vec<Rational>> {
        let mut r = v;
        // r = v − Σ comb_j b_j
        let mut comb = vec![Rational::zero(); self.count];
        for (p, w, u) in &self.rows {
            if let Some(f) = r.get(p).cloned() {
                axpy(&mut r, &f, w);
                axpy_dense(&mut comb, &-f, u);
            }
        }
        if r.is_empty() {
            return Some(comb);
        }
        let (p, lead) = r.iter().next_back().map(|(m, c)| (m.clone(), c.clone())).expect("nonzero");
        let inv = Rational::one() / lead;
        let w: Vector = r.into_iter().map(|(m, c)| (m, c * &inv)).collect();
        let mut u: Vec<Rational> = comb.into_iter().map(|c| -c * &inv).collect();
        u.push(inv);
        for (_, w2, u2) in &mut self.rows {
            if let Some(f) = w2.get(&p).cloned() {
                axpy(w2, &f, &w);
                axpy_dense(u2, &f, &u);
            }
        }
        self.rows.push((p, w, u));
        self.count += 1;
        None
    }
}

struct NormalForms {
    basis: Vec<Sorted>,
    order: MonomialOrder,
}

impl NormalForms {
    fn new(gb: &GroebnerBasis) -> NormalForms {
        NormalForms { basis: gb.polys.iter().map(|g| Sorted::from_poly(g, &gb.order)).collect(), order: gb.order.clone() }
    }

    fn of(&self, f: Sorted) -> Sorted {
        let active = vec![true; self.basis.len()];
        f.reduce(&self.basis, &active, &self.order)
    }

    fn of_monomial(&self, m: &[u32]) -> Sorted {
        self.of(Sorted { terms: vec![(m.to_vec(), Rational::one())] })
    }
}

fn vector(s: &Sorted) -> Vector {
    s.terms.iter().cloned().collect()
}

/// Converts a Gröbner basis of a zero-dimensional ideal to the reduced
/// basis for `target`. `None` if the ideal is not zero-dimensional.
pub fn fglm(gb: &GroebnerBasis, target: &MonomialOrder) -> Option<GroebnerBasis> {
    let n = gb.nvars;
    if gb.is_one() {
        return Some(GroebnerBasis { order: target.clone(), nvars: n, polys: gb.polys.clone() });
    }
    pure_power_check(gb)?;
    let nf = NormalForms::new(gb);
    let mut rel = Relations::default();
    let mut staircase: Vec<Vec<u32>> = Vec::new();
    let mut leads: Vec<Vec<u32>> = Vec::new();
    let mut polys: Vec<MultiPoly> = Vec::new();
    let mut candidates: Vec<Vec<u32>> = vec![vec![0; n]];
    let mut seen: HashSet<Vec<u32>> = candidates.iter().cloned().collect();
    while !candidates.is_empty() {
        // smallest candidate first
        let (k, _) = candidates.iter().enumerate().min_by(|a, b| target.cmp(a.1, b.1))?;
        let m = candidates.swap_remove(k);
        if leads.iter().any(|l| divides(l, &m)) {
            continue;
        }
        match rel.insert(vector(&nf.of_monomial(&m))) {
            Some(c) => {
                let mut terms = vec![(m.clone(), Rational::one())];
                terms.extend(c.into_iter().zip(&staircase).filter(|(q, _)| !q.is_zero()).map(|(q, b)| (b.clone(), -q)));
                polys.push(MultiPoly::from_terms(n, terms));
                leads.push(m);
            }
            None => {
                for v in 0..n {
                    let mut next = m.clone();
                    next[v] += 1;
                    if seen.insert(next.clone()) {
                        candidates.push(next);
                    }
                }
                staircase.push(m);
            }
        }
    }
    Some(GroebnerBasis { order: target.clone(), nvars: n, polys })
}

/// Monic generator of `I ∩ ℚ[x_v]` for a zero-dimensional ideal `I`
/// given by a Gröbner basis: the first linear relation among the normal
/// forms of `1, x_v, x_v², …`. `None` if `I` is not zero-dimensional.
pub fn minimal_polynomial(gb: &GroebnerBasis, v: usize) -> Option<MultiPoly> {
    let n = gb.nvars;
    if gb.is_one() {
        return Some(MultiPoly::constant(n, Rational::one()));
    }
    pure_power_check(gb)?;
    let nf = NormalForms::new(gb);
    let mut rel = Relations::default();
    let mut current = nf.of_monomial(&vec![0; n]);
    for k in 0.. {
        if let Some(c) = rel.insert(vector(&current)) {
            let mut coeffs: Vec<Rational> = c.into_iter().map(|q| -q).collect();
            coeffs.resize(k, Rational::zero());
            coeffs.push(Rational::one());
            return Some(MultiPoly::from_univariate(n, v, &coeffs));
        }
        // multiplying every term by x_v keeps them sorted
        for t in &mut current.terms {
            t.0[v] += 1;
        }
        current = nf.of(current);
    }
    unreachable!("the quotient is finite-dimensional")
}
