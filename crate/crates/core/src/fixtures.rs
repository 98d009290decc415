//! The worked quaternion example and the degenerate matrix example, with
//! the checks that reproduce them end to end.
//!
//! The quaternion map is `p(a) = c₀a² + ac₁a + c₂ac₃a + c₄` with
//! `c₀ = −1−i+k`, `c₁ = −1−i+j−k`, `c₂ = −i−j+k`, `c₃ = −1+i+j+k`, `c₄ = 6i`.
//! The leading form has no nonzero real zero, and the full map has no zero at all.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, BuiltinSpec, Field, Subspace};
use crate::groebner::{
    buchberger, certify_no_real_zero, groebner_basis, sturm, Certificate, GroebnerLimits, MonomialOrder,
};
use crate::linalg::{self, Matrix};
use crate::parser::parse_map;
use crate::poly::{linear_coefficient_matrix, poly_det, scalarize, MultiPoly};
use crate::polymap::PolynomialMap;
use crate::scalar::{int, Rational, Scalar};
use crate::solve::{certify_nondegenerate, find_common_zero, Method, SolveConfig};

pub const EXAMPLE_MAP: &str = "[-1 - i + k]*x^2 + x*[-1 - i + j - k]*x + [-i - j + k]*x*[-1 + i + j + k]*x + 6*i";
pub const EXAMPLE_LINEAR: &str = "[-1 - i + k]*x + x*[-1 - i + j - k] + [-i - j + k]*x*[-1 + i + j + k]";
pub const MATRIX_MAP: &str = "E11*x + 1";

pub fn quaternions() -> Arc<Algebra> {
    Arc::new(BuiltinSpec::Quaternions.build().expect("builtin"))
}

pub fn mat2() -> Arc<Algebra> {
    Arc::new(BuiltinSpec::Matrix { m: 2, field: Field::Real }.build().expect("builtin"))
}

pub fn example_map() -> PolynomialMap {
    parse_map(EXAMPLE_MAP, quaternions(), 1).expect("fixture parses")
}

pub fn example_linear_map() -> PolynomialMap {
    parse_map(EXAMPLE_LINEAR, quaternions(), 1).expect("fixture parses")
}

pub fn matrix_map() -> PolynomialMap {
    parse_map(MATRIX_MAP, mat2(), 1).expect("fixture parses")
}

pub fn names4() -> Vec<String> {
    (1..=4).map(|k| format!("a{k}")).collect()
}

fn poly<const N: usize>(terms: &[(i64, [u32; N])]) -> MultiPoly {
    MultiPoly::from_terms(N, terms.iter().map(|(c, e)| (e.to_vec(), int(*c))))
}

/// Coefficient matrix of the linear map `a ↦ c₀a + ac₁ + c₂ac₃`.
pub fn expected_matrix() -> Matrix {
    [[-1, -1, 0, 1], [-3, -1, 1, 0], [4, 3, -1, -1], [-1, 0, 1, -5]]
        .iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect()
}

/// The four real coordinate functions of the example map.
pub fn expected_coordinates() -> Vec<MultiPoly> {
    vec![
        poly(&[
            (-1, [2, 0, 0, 0]),
            (1, [0, 2, 0, 0]),
            (1, [0, 0, 2, 0]),
            (5, [0, 0, 0, 2]),
            (2, [1, 1, 0, 0]),
            (-4, [1, 0, 1, 0]),
            (-4, [0, 1, 1, 0]),
            (2, [1, 0, 0, 1]),
        ]),
        poly(&[
            (-3, [2, 0, 0, 0]),
            (-1, [0, 2, 0, 0]),
            (-1, [0, 0, 2, 0]),
            (-1, [0, 0, 0, 2]),
            (-2, [1, 1, 0, 0]),
            (2, [1, 0, 1, 0]),
            (4, [1, 0, 0, 1]),
            (4, [0, 1, 0, 1]),
            (4, [0, 0, 1, 1]),
            (6, [0, 0, 0, 0]),
        ]),
        poly(&[(4, [2, 0, 0, 0]), (2, [1, 1, 0, 0]), (-2, [1, 0, 1, 0]), (2, [1, 0, 0, 1]), (-4, [0, 1, 0, 1])]),
        poly(&[
            (-1, [2, 0, 0, 0]),
            (1, [0, 0, 2, 0]),
            (1, [0, 0, 0, 2]),
            (-4, [1, 1, 0, 0]),
            (-3, [0, 2, 0, 0]),
            (-2, [1, 0, 1, 0]),
            (-6, [1, 0, 0, 1]),
        ]),
    ]
}

/// `216 + 324a₄² − 927a₄⁴ − 148a₄⁶ + 2578a₄⁸`.
pub fn expected_eliminant() -> MultiPoly {
    poly(&[(216, [0, 0, 0, 0]), (324, [0, 0, 0, 2]), (-927, [0, 0, 0, 4]), (-148, [0, 0, 0, 6]), (2578, [0, 0, 0, 8])])
}

/// `q(x) = 216 + 324x − 927x² − 148x³ + 2578x⁴`, lowest degree first.
pub fn quartic_q() -> Vec<Rational> {
    [216, 324, -927, -148, 2578].iter().map(|&c| int(c)).collect()
}

/// Variables `c01..c04, c11..c14` of the generic linear form `c₀x + xc₁`.
pub fn c_names() -> Vec<String> {
    (0..2).flat_map(|i| (1..=4).map(move |k| format!("c{i}{k}"))).collect()
}

fn c(i: usize, k: usize) -> MultiPoly {
    MultiPoly::var(8, 4 * i + (k - 1))
}

/// The closed-form 4×4 matrix in the eight coefficients of `c₀, c₁`.
pub fn expected_generic_matrix() -> Vec<Vec<MultiPoly>> {
    let s = |a: MultiPoly, b: MultiPoly| &a + &b;
    let d = |a: MultiPoly, b: MultiPoly| &a - &b;
    let neg = |a: MultiPoly| -&a;
    vec![
        vec![s(c(0, 1), c(1, 1)), neg(s(c(0, 2), c(1, 2))), neg(s(c(0, 3), c(1, 3))), neg(s(c(0, 4), c(1, 4)))],
        vec![s(c(0, 2), c(1, 2)), s(c(0, 1), c(1, 1)), d(c(1, 4), c(0, 4)), d(c(0, 3), c(1, 3))],
        vec![s(c(0, 3), c(1, 3)), d(c(0, 4), c(1, 4)), s(c(0, 1), c(1, 1)), d(c(1, 2), c(0, 2))],
        vec![s(c(0, 4), c(1, 4)), d(c(1, 3), c(0, 3)), d(c(0, 2), c(1, 2)), s(c(0, 1), c(1, 1))],
    ]
}

/// `(c01+c11)²((c01+c11)² + 2Σ(c0k² + c1k²)) + (Σc0k² − Σc1k²)²`, k = 2..4.
pub fn expected_sum_of_squares() -> MultiPoly {
    let sq = |p: &MultiPoly| p * p;
    let r = &c(0, 1) + &c(1, 1);
    let im0 = (2..=4).fold(MultiPoly::zero(8), |acc, k| &acc + &sq(&c(0, k)));
    let im1 = (2..=4).fold(MultiPoly::zero(8), |acc, k| &acc + &sq(&c(1, k)));
    let two = MultiPoly::constant(8, int(2));
    let inner = &sq(&r) + &(&two * &(&im0 + &im1));
    &(&sq(&r) * &inner) + &sq(&(&im0 - &im1))
}

/// Coefficient matrix of `x ↦ c₀x + xc₁` computed from the quaternion
/// multiplication with symbolic `c₀, c₁`: column k is the image of the
/// k-th basis element.
pub fn generic_matrix_from_algebra() -> Vec<Vec<MultiPoly>> {
    let h = quaternions();
    let c0: Vec<MultiPoly> = (1..=4).map(|k| c(0, k)).collect();
    let c1: Vec<MultiPoly> = (1..=4).map(|k| c(1, k)).collect();
    let mut cols = Vec::new();
    for k in 0..4 {
        let x: Vec<MultiPoly> = (0..4).map(|r| MultiPoly::constant(8, int((r == k) as i64))).collect();
        let a = h.mul(&c0, &x);
        let b = h.mul(&x, &c1);
        cols.push(a.iter().zip(&b).map(|(p, q)| p + q).collect::<Vec<_>>());
    }
    (0..4).map(|r| (0..4).map(|k| cols[k][r].clone()).collect()).collect()
}

/// `c₀₁ = −c₁₁` and equal squared imaginary norms.
pub fn degeneracy_condition(c0: &[Rational], c1: &[Rational]) -> bool {
    let im = |v: &[Rational]| v[1..].iter().map(|x| x * x).fold(Rational::zero(), |a, b| a + b);
    c0[0] == -c1[0].clone() && im(c0) == im(c1)
}

/// Determinant of the closed-form matrix at exact coefficient values.
pub fn det_at(c0: &[Rational], c1: &[Rational]) -> Rational {
    let point: Vec<Rational> = c0.iter().chain(c1).cloned().collect();
    let m: Matrix = expected_generic_matrix()
        .iter()
        .map(|row| row.iter().map(|p| p.eval(&point).expect("8 variables")).collect())
        .collect();
    linalg::det(&m)
}

/// Random coefficient pairs: half generic, half on the degenerate locus
/// (imaginary parts related by a signed permutation).
pub fn degeneracy_instances(count: usize, seed: u64) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let mut v = || int(rng.random_range(-5..=5));
            let c0: Vec<Rational> = (0..4).map(|_| v()).collect();
            if k % 2 == 0 {
                let c1: Vec<Rational> = (0..4).map(|_| v()).collect();
                (c0, c1)
            } else {
                let mut c1 = vec![-c0[0].clone(), c0[2].clone(), -c0[3].clone(), c0[1].clone()];
                if k % 4 == 3 {
                    // break one of the two conditions
                    c1[(k / 4) % 4] += int(1);
                }
                (c0, c1)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> FixtureCheck {
    FixtureCheck { name, passed, detail }
}

/// `a` equals a positive rational multiple of `b`.
pub fn positive_multiple(a: &MultiPoly, b: &MultiPoly) -> bool {
    let (Some((ma, ca)), Some((mb, cb))) = (a.terms().next_back(), b.terms().next_back()) else {
        return false;
    };
    if ma != mb {
        return false;
    }
    let s = ca / cb;
    s.is_positive() && *a == b.scale(&s)
}

fn matrix_check() -> FixtureCheck {
    let full = Subspace::full(&quaternions());
    match linear_coefficient_matrix(&example_linear_map(), &full) {
        Ok(m) => {
            let d = linalg::det(&m);
            let ok = m == expected_matrix() && !d.is_zero();
            check("coefficient matrix", ok, format!("det = {d}"))
        }
        Err(e) => check("coefficient matrix", false, e.to_string()),
    }
}

fn scalarization_check() -> FixtureCheck {
    let full = Subspace::full(&quaternions());
    match scalarize(&[example_map()], &full, &full) {
        Ok(sys) => {
            let ok = sys.polys == expected_coordinates();
            let shown: Vec<String> = sys.polys.iter().map(|p| p.display_with(&names4())).collect();
            check("scalarization", ok, shown.join("; "))
        }
        Err(e) => check("scalarization", false, e.to_string()),
    }
}

fn eliminant_check() -> FixtureCheck {
    match groebner_basis(&expected_coordinates(), &MonomialOrder::lex(4), GroebnerLimits::default()) {
        Ok(gb) => {
            let hit = gb.polys.iter().find(|p| positive_multiple(&expected_eliminant(), p));
            let detail = match hit {
                Some(p) => p.display_with(&names4()),
                None => format!("{} basis elements, none proportional", gb.polys.len()),
            };
            check("lex eliminant", hit.is_some(), detail)
        }
        Err(e) => check("lex eliminant", false, e.to_string()),
    }
}

fn sturm_check() -> FixtureCheck {
    let n = sturm::count_real_roots(&quartic_q(), &sturm::Range::Whole);
    check("Sturm count of q", n == Some(0), format!("{n:?} real roots"))
}

fn conclusion_check(seed: u64) -> FixtureCheck {
    let full = Subspace::full(&quaternions());
    let p = example_map();
    let sys = match scalarize(std::slice::from_ref(&p), &full, &full) {
        Ok(s) => s,
        Err(e) => return check("no zero in ℍ", false, e.to_string()),
    };
    let cert = certify_no_real_zero(&sys);
    let certified = matches!(cert, Certificate::NoRealZero { variable: Some(3), .. }) && cert.replay(&sys.polys);
    let cfg = SolveConfig { certify_when_empty: false, ..SolveConfig::with_seed(seed) };
    let found = find_common_zero(&[p], &full, &full, Method::Auto, &cfg).map(|r| r.zeros.len());
    let ok = certified && found == Ok(0);
    check("no zero in ℍ", ok, format!("certificate {}, numeric zeros {:?}", cert.kind(), found))
}

fn determinant_identity_check() -> FixtureCheck {
    let shown = expected_generic_matrix();
    let same_matrix = shown == generic_matrix_from_algebra();
    let det = poly_det(&shown);
    let identity = det == expected_sum_of_squares();
    let instances = degeneracy_instances(100, 7);
    let agree = instances.iter().filter(|(a, b)| det_at(a, b).is_zero() == degeneracy_condition(a, b)).count();
    let degenerate = instances.iter().filter(|(a, b)| degeneracy_condition(a, b)).count();
    check(
        "determinant identity",
        same_matrix && identity && agree == instances.len(),
        format!(
            "matrix matches algebra: {same_matrix}; det = sum of squares: {identity}; {agree}/{} instances agree ({degenerate} degenerate)",
            instances.len()
        ),
    )
}

fn matrix_example_check(seed: u64) -> FixtureCheck {
    let p = matrix_map();
    let full = Subspace::full(p.algebra());
    let nondeg = certify_nondegenerate(std::slice::from_ref(&p), &full, &full, seed);
    let lead = scalarize(&[p.leading_form()], &full, &full).map(|s| s.polys).unwrap_or_default();
    let witnessed = matches!(nondeg, Certificate::DegenerateWitness { .. }) && nondeg.replay(&lead);
    let sys = scalarize(std::slice::from_ref(&p), &full, &full);
    let one = sys
        .as_ref()
        .ok()
        .and_then(|s| buchberger(&s.polys, &MonomialOrder::grevlex(s.nvars()), GroebnerLimits::default()).ok())
        .is_some_and(|gb| gb.is_one());
    check("degenerate matrix example", witnessed && one, format!("leading form: {}; basis is {{1}}: {one}", nondeg.kind()))
}

/// Runs the seven checks in order.
pub fn run_all(seed: u64) -> Vec<FixtureCheck> {
    vec![
        matrix_check(),
        scalarization_check(),
        eliminant_check(),
        sturm_check(),
        conclusion_check(seed),
        determinant_identity_check(),
        matrix_example_check(seed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_matrix_equals_algebra_matrix() {
        assert_eq!(expected_generic_matrix(), generic_matrix_from_algebra());
    }

    #[test]
    fn instances_cover_both_sides() {
        let inst = degeneracy_instances(100, 7);
        let deg = inst.iter().filter(|(a, b)| degeneracy_condition(a, b)).count();
        assert!(deg >= 20 && deg <= 80, "{deg}");
    }

    #[test]
    fn positive_multiples() {
        let e = expected_eliminant();
        assert!(positive_multiple(&e, &e.scale(&int(3))));
        assert!(!positive_multiple(&e, &e.scale(&int(-3))));
    }
}
