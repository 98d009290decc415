//! Exact certification: Buchberger's algorithm, elimination, Sturm
//! sequences, and the certificates built from them.

mod certificate;
mod fglm;
pub mod sturm;

use std::cmp::Ordering;

use num_traits::{One, Zero};

pub use certificate::{
    certify_no_real_zero, nondegenerate_complex, nondegenerate_real, pure_power_check, Certificate, RealMethod, Witness,
};
pub use fglm::{fglm, minimal_polynomial};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::scalar::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Grevlex on the first `k` ranked variables, ties broken by grevlex on
    /// the rest. An elimination order for the first `k`.
    Block(usize),
}

/// A monomial order together with a variable ranking: `perm[0]` is the
/// largest variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
}

impl MonomialOrder {
    /// `x_0 > x_1 > … > x_{n-1}`.
    pub fn lex(nvars: usize) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::Lex, perm: (0..nvars).collect() }
    }

    pub fn grevlex(nvars: usize) -> MonomialOrder {
        MonomialOrder { kind: OrderKind::Grevlex, perm: (0..nvars).collect() }
    }

    /// Block order with the eliminated variables in the first block and
    /// `keep` last.
    pub fn elimination(nvars: usize, keep: &[usize]) -> MonomialOrder {
        let mut perm: Vec<usize> = (0..nvars).filter(|v| !keep.contains(v)).collect();
        let split = perm.len();
        perm.extend(keep.iter().copied());
        MonomialOrder { kind: OrderKind::Block(split), perm }
    }

    pub fn with_perm(kind: OrderKind, perm: Vec<usize>) -> Result<MonomialOrder> {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..perm.len()).collect::<Vec<_>>() {
            return Err(Error::NvarsMismatch(perm.len(), sorted.len()));
        }
        Ok(MonomialOrder { kind, perm })
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.perm {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => grevlex_on(&self.perm, a, b),
            OrderKind::Block(k) => {
                let (first, rest) = self.perm.split_at(k.min(self.perm.len()));
                grevlex_on(first, a, b).then_with(|| grevlex_on(rest, a, b))
            }
        }
    }
}

fn grevlex_on(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = vars.iter().map(|&v| a[v]).sum();
    let db: u32 = vars.iter().map(|&v| b[v]).sum();
    if da != db {
        return da.cmp(&db);
    }
    for &v in vars.iter().rev() {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Polynomial as a list of terms sorted by decreasing monomial.
#[derive(Debug, Clone, PartialEq)]
struct Sorted {
    terms: Vec<(Vec<u32>, Rational)>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn quotient(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Sorted {
    fn from_poly(p: &MultiPoly, ord: &MonomialOrder) -> Sorted {
        let mut terms: Vec<(Vec<u32>, Rational)> = p.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Sorted { terms }
    }

    fn to_poly(&self, nvars: usize) -> MultiPoly {
        MultiPoly::from_terms(nvars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &[u32] {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    fn make_monic(&mut self) {
        if self.is_zero() || self.lc().is_one() {
            return;
        }
        let inv = Rational::one() / self.lc();
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// `self − c · x^m · g`, merging sorted lists.
    fn sub_scaled(&self, c: &Rational, m: &[u32], g: &Sorted, ord: &MonomialOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let shifted = g.terms.iter().map(|(e, k)| (e.iter().zip(m).map(|(a, b)| a + b).collect::<Vec<u32>>(), k));
        let mut shifted = shifted.peekable();
        while i < self.terms.len() || shifted.peek().is_some() {
            let take_self = match (self.terms.get(i), shifted.peek()) {
                (Some(a), Some(b)) => ord.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match take_self {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (e, k) = shifted.next().expect("peeked");
                    out.push((e, -(c * k)));
                }
                Ordering::Equal => {
                    let (e, k) = shifted.next().expect("peeked");
                    let v = &self.terms[i].1 - c * k;
                    if !v.is_zero() {
                        out.push((e, v));
                    }
                    i += 1;
                }
            }
        }
        Sorted { terms: out }
    }

    /// Full reduction modulo `basis` (only entries flagged active).
    fn reduce(&self, basis: &[Sorted], active: &[bool], ord: &MonomialOrder) -> Sorted {
        let mut p = self.clone();
        let mut rem: Vec<(Vec<u32>, Rational)> = Vec::new();
        while !p.is_zero() {
            let lm = p.lm().to_vec();
            let divisor = basis.iter().zip(active).find(|(g, &a)| a && divides(g.lm(), &lm)).map(|(g, _)| g);
            match divisor {
                Some(g) => {
                    let c = p.lc() / g.lc();
                    let m = quotient(&lm, g.lm());
                    p = p.sub_scaled(&c, &m, g, ord);
                }
                None => {
                    rem.push(p.terms.remove(0));
                }
            }
        }
        Sorted { terms: rem }
    }
}

/// Degree and size caps for [`buchberger`].
#[derive(Debug, Clone, Copy)]
pub struct GroebnerLimits {
    pub max_basis: usize,
    pub max_degree: u32,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits { max_basis: 500, max_degree: 60 }
    }
}

/// Reduced, monic Gröbner basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub nvars: usize,
    pub polys: Vec<MultiPoly>,
}

impl GroebnerBasis {
    /// True when the basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn is_one(&self) -> bool {
        self.polys.len() == 1 && self.polys[0] == MultiPoly::constant(self.nvars, Rational::one())
    }

    /// Normal form of `f`.
    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        let basis: Vec<Sorted> = self.polys.iter().map(|g| Sorted::from_poly(g, &self.order)).collect();
        let active = vec![true; basis.len()];
        Sorted::from_poly(f, &self.order).reduce(&basis, &active, &self.order).to_poly(self.nvars)
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.reduce(f).is_zero()
    }

    /// Leading monomials, in basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|g| Monomial(Sorted::from_poly(g, &self.order).lm().to_vec())).collect()
    }

    /// S-polynomial of basis elements `i` and `j`.
    pub fn s_polynomial(&self, i: usize, j: usize) -> MultiPoly {
        let a = Sorted::from_poly(&self.polys[i], &self.order);
        let b = Sorted::from_poly(&self.polys[j], &self.order);
        s_poly(&a, &b, &self.order).to_poly(self.nvars)
    }
}

fn s_poly(a: &Sorted, b: &Sorted, ord: &MonomialOrder) -> Sorted {
    let l = lcm(a.lm(), b.lm());
    let ma = quotient(&l, a.lm());
    let mb = quotient(&l, b.lm());
    let zero = Sorted { terms: Vec::new() };
    let left = zero.sub_scaled(&-(Rational::one() / a.lc()), &ma, a, ord);
    left.sub_scaled(&(Rational::one() / b.lc()), &mb, b, ord)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
}

/// Buchberger's algorithm with the Gebauer–Möller pair criteria. Pairs are
/// processed lowest lcm degree first, ties broken by index.
pub fn buchberger(gens: &[MultiPoly], order: &MonomialOrder, limits: GroebnerLimits) -> Result<GroebnerBasis> {
    let nvars = gens.first().map_or(order.perm.len(), MultiPoly::nvars);
    if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::NvarsMismatch(nvars, g.nvars()));
    }
    if order.perm.len() != nvars {
        return Err(Error::NvarsMismatch(nvars, order.perm.len()));
    }
    let mut basis: Vec<Sorted> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Sorted> = gens.iter().map(|g| Sorted::from_poly(g, order)).filter(|g| !g.is_zero()).collect();
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut queue: std::collections::VecDeque<Sorted> = input.into();

    loop {
        let h = if let Some(g) = queue.pop_front() {
            let mut r = g.reduce(&basis, &active, order);
            r.make_monic();
            r
        } else if let Some(idx) = select_pair(&pairs) {
            let p = pairs.swap_remove(idx);
            let s = s_poly(&basis[p.i], &basis[p.j], order);
            let mut r = s.reduce(&basis, &active, order);
            r.make_monic();
            r
        } else {
            break;
        };
        if h.is_zero() {
            continue;
        }
        if h.degree() > limits.max_degree {
            return Err(Error::GuardExceeded(format!("degree {} exceeds {}", h.degree(), limits.max_degree)));
        }
        if h.lm().iter().all(|&e| e == 0) {
            // the ideal is the whole ring
            return Ok(GroebnerBasis {
                order: order.clone(),
                nvars,
                polys: vec![MultiPoly::constant(nvars, Rational::one())],
            });
        }
        update(&mut basis, &mut active, &mut pairs, h);
        if active.iter().filter(|&&a| a).count() > limits.max_basis {
            return Err(Error::GuardExceeded(format!("basis exceeds {} polynomials", limits.max_basis)));
        }
    }

    let kept: Vec<Sorted> = basis.into_iter().zip(active).filter(|(_, a)| *a).map(|(g, _)| g).collect();
    Ok(GroebnerBasis { order: order.clone(), nvars, polys: interreduce(kept, order, nvars) })
}

fn select_pair(pairs: &[Pair]) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            let da: u32 = a.lcm.iter().sum();
            let db: u32 = b.lcm.iter().sum();
            da.cmp(&db).then(a.j.cmp(&b.j)).then(a.i.cmp(&b.i))
        })
        .map(|(k, _)| k)
}

/// Gebauer–Möller installation of a new basis element.
fn update(basis: &mut Vec<Sorted>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Sorted) {
    let t = basis.len();
    let hm = h.lm().to_vec();
    let mut c: Vec<Pair> = (0..t)
        .filter(|&i| active[i])
        .map(|i| Pair { i, j: t, lcm: lcm(basis[i].lm(), &hm) })
        .collect();
    let mut d: Vec<Pair> = Vec::new();
    while !c.is_empty() {
        let p = c.remove(0);
        let keep = coprime(basis[p.i].lm(), &hm)
            || !c.iter().chain(d.iter()).any(|q| divides(&q.lcm, &p.lcm));
        if keep {
            d.push(p);
        }
    }
    d.retain(|p| !coprime(basis[p.i].lm(), &hm));

    pairs.retain(|p| {
        !divides(&hm, &p.lcm)
            || lcm(basis[p.i].lm(), &hm) == p.lcm
            || lcm(basis[p.j].lm(), &hm) == p.lcm
    });
    pairs.extend(d);

    for i in 0..t {
        if active[i] && divides(&hm, basis[i].lm()) {
            active[i] = false;
        }
    }
    basis.push(h);
    active.push(true);
}

fn interreduce(mut g: Vec<Sorted>, order: &MonomialOrder, nvars: usize) -> Vec<MultiPoly> {
    // minimal basis
    g.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Sorted> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| divides(q.lm(), p.lm())) {
            minimal.retain(|q| !divides(p.lm(), q.lm()));
            minimal.push(p);
        }
    }
    let n = minimal.len();
    let mut reduced = Vec::with_capacity(n);
    for i in 0..n {
        let active: Vec<bool> = (0..n).map(|j| j != i).collect();
        let mut r = minimal[i].reduce(&minimal, &active, order);
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    reduced.into_iter().map(|s| s.to_poly(nvars)).collect()
}

/// Reduced Gröbner basis for any order. Zero-dimensional ideals go
/// through a grevlex basis and a change of order, which is much cheaper
/// than running Buchberger in lex directly.
pub fn groebner_basis(gens: &[MultiPoly], order: &MonomialOrder, limits: GroebnerLimits) -> Result<GroebnerBasis> {
    if order.kind == OrderKind::Grevlex {
        return buchberger(gens, order, limits);
    }
    let grevlex = MonomialOrder { kind: OrderKind::Grevlex, perm: order.perm.clone() };
    let gb = buchberger(gens, &grevlex, limits)?;
    match fglm(&gb, order) {
        Some(converted) => Ok(converted),
        None => buchberger(gens, order, limits),
    }
}

/// Basis elements of the elimination ideal for the `keep` variables. For
/// zero-dimensional ideals this is the tail of the reduced lex basis.
pub fn eliminate(gens: &[MultiPoly], keep: &[usize], limits: GroebnerLimits) -> Result<Vec<MultiPoly>> {
    let nvars = gens.first().map_or(0, MultiPoly::nvars);
    let block = MonomialOrder::elimination(nvars, keep);
    let gb = buchberger(gens, &MonomialOrder::grevlex(nvars), limits)?;
    let gb = if let [v] = keep {
        match minimal_polynomial(&gb, *v) {
            Some(p) => return Ok(vec![p]),
            None => buchberger(gens, &block, limits)?,
        }
    } else {
        let lex = MonomialOrder { kind: OrderKind::Lex, perm: block.perm.clone() };
        match fglm(&gb, &lex) {
            Some(converted) => converted,
            None => buchberger(gens, &block, limits)?,
        }
    };
    Ok(gb.polys.into_iter().filter(|p| p.support_vars().iter().all(|v| keep.contains(v))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), int(*c))))
    }

    #[test]
    fn small_lex_basis() {
        // {x² − y, y − 1}, x > y  →  {y − 1, x² − 1}
        let gens = [p(2, &[(&[2, 0], 1), (&[0, 1], -1)]), p(2, &[(&[0, 1], 1), (&[0, 0], -1)])];
        let gb = buchberger(&gens, &MonomialOrder::lex(2), GroebnerLimits::default()).unwrap();
        assert_eq!(gb.polys, vec![p(2, &[(&[0, 1], 1), (&[0, 0], -1)]), p(2, &[(&[2, 0], 1), (&[0, 0], -1)])]);
    }

    #[test]
    fn parametrization_elimination() {
        // {x − t, y − t²} with t eliminated → y − x²
        let gens = [p(3, &[(&[1, 0, 0], 1), (&[0, 0, 1], -1)]), p(3, &[(&[0, 1, 0], 1), (&[0, 0, 2], -1)])];
        let elim = eliminate(&gens, &[0, 1], GroebnerLimits::default()).unwrap();
        assert_eq!(elim, vec![p(3, &[(&[2, 0, 0], 1), (&[0, 1, 0], -1)])]);
    }

    #[test]
    fn minimal_polynomial_matches_lex() {
        // {x² + y² − 5, xy − 2}: lex basis ends in y⁴ − 5y² + 4
        let gens = [
            p(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -5)]),
            p(2, &[(&[1, 1], 1), (&[0, 0], -2)]),
        ];
        let lex = buchberger(&gens, &MonomialOrder::lex(2), GroebnerLimits::default()).unwrap();
        let from_lex: Vec<_> = lex.polys.into_iter().filter(|q| q.support_vars() == [1]).collect();
        let expected = p(2, &[(&[0, 4], 1), (&[0, 2], -5), (&[0, 0], 4)]);
        assert_eq!(from_lex, vec![expected.clone()]);
        assert_eq!(eliminate(&gens, &[1], GroebnerLimits::default()).unwrap(), vec![expected]);
        let block = buchberger(&gens, &MonomialOrder::elimination(2, &[1]), GroebnerLimits::default()).unwrap();
        assert!(block.polys.iter().any(|q| q.support_vars() == [1]));
    }

    #[test]
    fn fglm_matches_direct_lex() {
        let gens = [
            p(3, &[(&[2, 0, 0], 1), (&[0, 1, 1], 1), (&[0, 0, 0], -2)]),
            p(3, &[(&[0, 2, 0], 1), (&[1, 0, 1], -1), (&[0, 0, 0], -1)]),
            p(3, &[(&[0, 0, 2], 1), (&[1, 1, 0], 1), (&[1, 0, 0], -1)]),
        ];
        let lex = MonomialOrder::lex(3);
        let direct = buchberger(&gens, &lex, GroebnerLimits::default()).unwrap();
        let grevlex = buchberger(&gens, &MonomialOrder::grevlex(3), GroebnerLimits::default()).unwrap();
        assert_eq!(fglm(&grevlex, &lex).unwrap(), direct);
        assert_eq!(groebner_basis(&gens, &lex, GroebnerLimits::default()).unwrap(), direct);
    }

    #[test]
    fn positive_dimension_has_no_minimal_polynomial() {
        let gens = [p(2, &[(&[1, 1], 1)])];
        let gb = buchberger(&gens, &MonomialOrder::grevlex(2), GroebnerLimits::default()).unwrap();
        assert!(minimal_polynomial(&gb, 0).is_none());
    }

    #[test]
    fn elimination_is_field_agnostic() {
        // x² + y² keeps no y-only element
        let gens = [p(2, &[(&[2, 0], 1), (&[0, 2], 1)])];
        assert!(eliminate(&gens, &[1], GroebnerLimits::default()).unwrap().is_empty());
    }

    #[test]
    fn inconsistent_system_gives_one() {
        let gens = [p(1, &[(&[1], 1)]), p(1, &[(&[1], 1), (&[0], 1)])];
        let gb = buchberger(&gens, &MonomialOrder::grevlex(1), GroebnerLimits::default()).unwrap();
        assert!(gb.is_one());
    }

    #[test]
    fn guard_is_reported() {
        let gens = [p(2, &[(&[3, 0], 1), (&[0, 1], -1)]), p(2, &[(&[0, 3], 1), (&[1, 0], -1)])];
        let tight = GroebnerLimits { max_basis: 1, max_degree: 60 };
        assert!(matches!(buchberger(&gens, &MonomialOrder::lex(2), tight), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn orders() {
        let lex = MonomialOrder::lex(2);
        assert_eq!(lex.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
        let gr = MonomialOrder::grevlex(3);
        // x y² z vs x² z² : degree 4 both; last var z: 1 < 2 so first is bigger
        assert_eq!(gr.cmp(&[1, 2, 1], &[2, 0, 2]), Ordering::Greater);
        assert!(MonomialOrder::with_perm(OrderKind::Lex, vec![0, 0]).is_err());
    }
}
