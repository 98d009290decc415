//! Polynomial maps `𝒜ⁿ → 𝒜` as linear combinations of bracketed words.
//!
//! A [`Word`] is a binary product tree whose leaves are constants or
//! variables. Bracketing is kept exactly as given: in a non-associative
//! algebra `(x*c)*x` and `x*(c*x)` are different maps.

mod decompose;
mod norm;
pub mod sample;

use std::sync::Arc;

use num_traits::{One, Zero};

pub use decompose::HomogeneousDecomposition;
pub use norm::{monomial_norm, monomial_norm_squared};

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::{self, Rational, Scalar};

/// A bracketed product of constants and variables. Variables are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Word {
    Const(Vec<Rational>),
    Var(usize),
    Prod(Box<Word>, Box<Word>),
}

impl Word {
    pub fn prod(left: Word, right: Word) -> Word {
        Word::Prod(Box::new(left), Box::new(right))
    }

    /// `((w·w)·w)…` with `d ≥ 1` factors.
    pub fn power(w: &Word, d: usize) -> Word {
        assert!(d >= 1, "power needs at least one factor");
        let mut acc = w.clone();
        for _ in 1..d {
            acc = Word::prod(acc, w.clone());
        }
        acc
    }

    /// Number of variable leaves, i.e. the degree of the monomial map.
    pub fn degree(&self) -> usize {
        match self {
            Word::Const(_) => 0,
            Word::Var(_) => 1,
            Word::Prod(l, r) => l.degree() + r.degree(),
        }
    }

    /// Per-variable leaf counts.
    pub fn multidegree(&self, nvars: usize) -> Vec<usize> {
        let mut out = vec![0; nvars];
        self.visit_vars(&mut |v| out[v] += 1);
        out
    }

    fn visit_vars(&self, f: &mut impl FnMut(usize)) {
        match self {
            Word::Const(_) => {}
            Word::Var(v) => f(*v),
            Word::Prod(l, r) => {
                l.visit_vars(f);
                r.visit_vars(f);
            }
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        let mut m = None;
        self.visit_vars(&mut |v| m = Some(m.map_or(v, |x: usize| x.max(v))));
        m
    }

    /// Constant leaves, left to right.
    pub fn constants(&self) -> Vec<&[Rational]> {
        let mut out = Vec::new();
        self.collect_consts(&mut out);
        out
    }

    fn collect_consts<'a>(&'a self, out: &mut Vec<&'a [Rational]>) {
        match self {
            Word::Const(c) => out.push(c),
            Word::Var(_) => {}
            Word::Prod(l, r) => {
                l.collect_consts(out);
                r.collect_consts(out);
            }
        }
    }

    /// Evaluates the tree; `args[v]` are the coordinates of variable `v`.
    pub fn eval<T: Scalar>(&self, alg: &Algebra, args: &[Vec<T>]) -> Vec<T> {
        match self {
            Word::Const(c) => {
                let sample = &args[0][0];
                c.iter().map(|q| sample.constant_like(q)).collect()
            }
            Word::Var(v) => args[*v].clone(),
            Word::Prod(l, r) => alg.mul(&l.eval(alg, args), &r.eval(alg, args)),
        }
    }

    /// Replaces every constant leaf.
    pub fn map_consts(&self, f: &mut impl FnMut(&[Rational]) -> Vec<Rational>) -> Word {
        match self {
            Word::Const(c) => Word::Const(f(c)),
            Word::Var(v) => Word::Var(*v),
            Word::Prod(l, r) => Word::prod(l.map_consts(f), r.map_consts(f)),
        }
    }

    /// A word with a zero constant leaf is the zero map.
    pub fn has_zero_const(&self) -> bool {
        self.constants().iter().any(|c| c.iter().all(Zero::is_zero))
    }
}

/// One summand `coeff · word`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub word: Word,
}

/// A finite linear combination of monomial maps in `nvars` variables.
#[derive(Debug, Clone)]
pub struct PolynomialMap {
    algebra: Arc<Algebra>,
    nvars: usize,
    terms: Vec<Term>,
}

impl PartialEq for PolynomialMap {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms && self.algebra.dim() == other.algebra.dim()
    }
}

impl PolynomialMap {
    /// The zero map.
    pub fn zero(algebra: Arc<Algebra>, nvars: usize) -> Result<PolynomialMap> {
        if nvars == 0 {
            return Err(Error::Arity { expected: 1, got: 0 });
        }
        Ok(PolynomialMap { algebra, nvars, terms: Vec::new() })
    }

    pub fn from_terms(algebra: Arc<Algebra>, nvars: usize, terms: Vec<(Rational, Word)>) -> Result<PolynomialMap> {
        let mut p = PolynomialMap::zero(algebra, nvars)?;
        for (c, w) in terms {
            p.push(c, w)?;
        }
        Ok(p)
    }

    /// Appends a term. A bare constant word absorbs its coefficient, so
    /// `3·[2i]` is stored as `1·[6i]`.
    pub fn push(&mut self, coeff: Rational, word: Word) -> Result<()> {
        if let Some(v) = word.max_var() {
            if v >= self.nvars {
                return Err(Error::Arity { expected: self.nvars, got: v + 1 });
            }
        }
        for c in word.constants() {
            self.algebra.check_dim(c.len())?;
        }
        let term = match word {
            Word::Const(c) if !coeff.is_one() => Term {
                coeff: Rational::one(),
                word: Word::Const(c.iter().map(|x| x * &coeff).collect()),
            },
            word => Term { coeff, word },
        };
        self.terms.push(term);
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Syntactic maximum word degree; see [`PolynomialMap::decompose`] for
    /// the semantic one.
    pub fn syntactic_degree(&self) -> usize {
        self.terms.iter().map(|t| t.word.degree()).max().unwrap_or(0)
    }

    /// Concatenates term lists.
    pub fn add(&self, other: &PolynomialMap) -> Result<PolynomialMap> {
        if self.nvars != other.nvars {
            return Err(Error::Arity { expected: self.nvars, got: other.nvars });
        }
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> PolynomialMap {
        let mut out = PolynomialMap { algebra: self.algebra.clone(), nvars: self.nvars, terms: Vec::new() };
        for t in &self.terms {
            out.push(&t.coeff * q, t.word.clone()).expect("same shape");
        }
        out
    }

    /// Terms whose word has exactly `d` variable leaves.
    pub fn syntactic_part(&self, d: usize) -> PolynomialMap {
        PolynomialMap {
            algebra: self.algebra.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().filter(|t| t.word.degree() == d).cloned().collect(),
        }
    }

    /// Merges terms with identical words and drops zero terms (zero
    /// coefficient, or a zero constant leaf).
    pub fn collect_terms(&self) -> PolynomialMap {
        let mut merged: Vec<Term> = Vec::new();
        for t in &self.terms {
            if let Some(m) = merged.iter_mut().find(|m| m.word == t.word) {
                m.coeff += &t.coeff;
            } else {
                merged.push(t.clone());
            }
        }
        merged.retain(|t| !t.coeff.is_zero() && !t.word.has_zero_const());
        PolynomialMap { algebra: self.algebra.clone(), nvars: self.nvars, terms: merged }
    }

    /// Evaluates over any coefficient ring. `args` holds one coordinate
    /// vector per variable.
    pub fn eval_coords<T: Scalar>(&self, args: &[Vec<T>]) -> Vec<T> {
        let d = self.algebra.dim();
        let mut out = vec![args[0][0].zero_like(); d];
        for t in &self.terms {
            if t.coeff.is_zero() {
                continue;
            }
            let v = t.word.eval(&self.algebra, args);
            for (o, x) in out.iter_mut().zip(&v) {
                o.add_scaled(x, &t.coeff, scalar::to_f64(&t.coeff));
            }
        }
        out
    }

    fn check_args<T>(&self, args: &[Vec<T>]) -> Result<()> {
        if args.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: args.len() });
        }
        for a in args {
            self.algebra.check_dim(a.len())?;
        }
        Ok(())
    }

    /// Exact evaluation at a tuple of elements.
    pub fn evaluate(&self, args: &[Element]) -> Result<Element> {
        let coords: Vec<Vec<Rational>> = args.iter().map(|e| e.coords.clone()).collect();
        self.check_args(&coords)?;
        Ok(Element::new(self.eval_coords(&coords)))
    }

    pub fn evaluate_f64(&self, args: &[Vec<f64>]) -> Result<Vec<f64>> {
        self.check_args(args)?;
        Ok(self.eval_coords(args))
    }

    /// The coordinates of the map on the whole algebra as polynomials in
    /// `nvars · dim` variables (variable `v`, coordinate `k` ↦ `v·dim + k`).
    pub fn expand_full(&self) -> Vec<MultiPoly> {
        let d = self.algebra.dim();
        let nv = self.nvars * d;
        let args: Vec<Vec<MultiPoly>> =
            (0..self.nvars).map(|v| (0..d).map(|k| MultiPoly::var(nv, v * d + k)).collect()).collect();
        self.eval_coords(&args)
    }

    /// Semantic equality: both maps expand to the same polynomials.
    pub fn same_map(&self, other: &PolynomialMap) -> bool {
        self.nvars == other.nvars && self.expand_full() == other.expand_full()
    }

    /// Decides whether `p(a)* = p(a*)` for all `a`, by comparing exact
    /// expansions of both sides.
    pub fn check_self_adjoint(&self) -> Result<bool> {
        let d = self.algebra.dim();
        let nv = self.nvars * d;
        let generic: Vec<Vec<MultiPoly>> =
            (0..self.nvars).map(|v| (0..d).map(|k| MultiPoly::var(nv, v * d + k)).collect()).collect();
        let starred: Vec<Vec<MultiPoly>> =
            generic.iter().map(|g| self.algebra.star(g)).collect::<Result<_>>()?;
        let lhs = self.algebra.star(&self.eval_coords(&generic))?;
        let rhs = self.eval_coords(&starred);
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinSpec;
    use crate::scalar::int;

    fn h() -> Arc<Algebra> {
        Arc::new(BuiltinSpec::Quaternions.build().unwrap())
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn identity_map() {
        let p = PolynomialMap::from_terms(h(), 1, vec![(int(1), Word::Var(0))]).unwrap();
        let j = Element::new(q(&[0, 0, 1, 0]));
        assert_eq!(p.evaluate(&[j.clone()]).unwrap(), j);
    }

    #[test]
    fn left_bracketed_word_matches_hand_product() {
        // ((i·k)·j)·k = ((−j)·j)·k = (1)·k = k
        let alg = h();
        let w = Word::prod(
            Word::prod(Word::prod(Word::Const(q(&[0, 1, 0, 0])), Word::Var(0)), Word::Const(q(&[0, 0, 1, 0]))),
            Word::Var(0),
        );
        let p = PolynomialMap::from_terms(alg, 1, vec![(int(1), w)]).unwrap();
        let k = Element::new(q(&[0, 0, 0, 1]));
        assert_eq!(p.evaluate(&[k]).unwrap().coords, q(&[0, 0, 0, 1]));
    }

    #[test]
    fn arity_is_checked() {
        let mut p = PolynomialMap::zero(h(), 1).unwrap();
        assert!(matches!(p.push(int(1), Word::Var(1)), Err(Error::Arity { .. })));
        assert!(matches!(p.push(int(1), Word::Const(q(&[1, 0]))), Err(Error::DimensionMismatch { .. })));
        assert!(p.evaluate(&[]).is_err());
    }

    #[test]
    fn bare_constant_absorbs_coefficient() {
        let mut p = PolynomialMap::zero(h(), 1).unwrap();
        p.push(int(3), Word::Const(q(&[0, 2, 0, 0]))).unwrap();
        assert_eq!(p.terms()[0], Term { coeff: int(1), word: Word::Const(q(&[0, 6, 0, 0])) });
    }

    fn cmat2() -> Arc<Algebra> {
        Arc::new(BuiltinSpec::ComplexMatrixAsReal { m: 2 }.build().unwrap())
    }

    #[test]
    fn self_adjointness() {
        let alg = cmat2();
        let c = {
            let mut v = vec![int(0); 8];
            v[0] = int(1);
            v[1] = int(2);
            v[4 + 2] = int(-3);
            v
        };
        let c_star = alg.star(&c).unwrap();
        let mut dh = vec![int(0); 8];
        dh[0] = int(5);
        dh[1] = int(1);
        dh[2] = int(1);
        // C a C* + D
        let w = Word::prod(Word::prod(Word::Const(c), Word::Var(0)), Word::Const(c_star));
        let p = PolynomialMap::from_terms(alg.clone(), 1, vec![(int(1), w), (int(1), Word::Const(dh))]).unwrap();
        assert!(p.check_self_adjoint().unwrap());

        let i = alg.named_element("i").unwrap();
        let ia = PolynomialMap::from_terms(alg.clone(), 1, vec![(int(1), Word::prod(Word::Const(i), Word::Var(0)))])
            .unwrap();
        assert!(!ia.check_self_adjoint().unwrap());

        let sq = PolynomialMap::from_terms(alg, 1, vec![(int(1), Word::power(&Word::Var(0), 2))]).unwrap();
        assert!(sq.check_self_adjoint().unwrap());
    }

    #[test]
    fn self_adjoint_needs_involution() {
        let gamma = vec![vec![vec![int(1)]]];
        let alg = Arc::new(
            Algebra::from_structure_constants(crate::algebra::Field::Real, vec!["b".into()], &gamma, None, None)
                .unwrap(),
        );
        let p = PolynomialMap::from_terms(alg, 1, vec![(int(1), Word::Var(0))]).unwrap();
        assert_eq!(p.check_self_adjoint(), Err(Error::NoInvolution));
    }
}
