use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::sturm::{self, Range};
use super::{buchberger, eliminate, GroebnerBasis, GroebnerLimits, MonomialOrder};
use crate::poly::{MultiPoly, ScalarizedSystem};
use crate::scalar::{format_rational, int, Rational};

/// A common zero of a system, exact when one could be found.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Exact(Vec<Rational>),
    Float(Vec<Complex64>),
}

impl Witness {
    pub fn is_real(&self) -> bool {
        match self {
            Witness::Exact(_) => true,
            Witness::Float(v) => v.iter().all(|z| z.im == 0.0),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Witness::Exact(v) => json!({ "exact": v.iter().map(format_rational).collect::<Vec<_>>() }),
            Witness::Float(v) => json!({ "float": v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>() }),
        }
    }
}

/// How real non-degeneracy was established.
#[derive(Debug, Clone, PartialEq)]
pub enum RealMethod {
    /// A single monomial over a division algebra vanishes only at zero.
    DivisionAlgebraMonomial,
    /// Two monomials over a composition algebra whose norms differ by
    /// a positive constant factor on the whole domain.
    NormGap { larger: Rational, smaller: Rational },
    /// The forms together with `Σ λ² = 1` have no real zero.
    Sphere(Box<Certificate>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Every variable has a pure power among the leading monomials of a
    /// grevlex basis, so the forms share no nonzero complex zero.
    NondegenerateComplex { basis: GroebnerBasis, pure_powers: Vec<(usize, u32)> },
    /// The forms share no nonzero real zero.
    NondegenerateReal { method: RealMethod },
    /// A nonzero common zero of homogeneous forms.
    DegenerateWitness { witness: Witness, residual: f64 },
    /// `eliminant` lies in the ideal and has no real root. `variable` is
    /// `None` for the trivial eliminant `1`. With `projection` set the
    /// eliminant is in an extra variable `u = Σ r_v λ_v` appended last.
    NoRealZero {
        variable: Option<usize>,
        eliminant: MultiPoly,
        projection: Option<Vec<Rational>>,
        chain_len: usize,
        root_count: usize,
    },
    Inconclusive { reason: String },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::NondegenerateComplex { .. } => "NondegenerateComplex",
            Certificate::NondegenerateReal { .. } => "NondegenerateReal",
            Certificate::DegenerateWitness { .. } => "DegenerateWitness",
            Certificate::NoRealZero { .. } => "NoRealZero",
            Certificate::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Certificate::Inconclusive { .. })
    }

    /// Re-checks the certificate against `gens` from scratch.
    pub fn replay(&self, gens: &[MultiPoly]) -> bool {
        match self {
            Certificate::NondegenerateComplex { pure_powers, .. } => {
                let Some(n) = gens.first().map(MultiPoly::nvars) else { return false };
                match buchberger(gens, &MonomialOrder::grevlex(n), GroebnerLimits::default()) {
                    Ok(gb) => pure_power_check(&gb).as_deref() == Some(pure_powers.as_slice()),
                    Err(_) => false,
                }
            }
            Certificate::NondegenerateReal { method } => match method {
                RealMethod::Sphere(inner) => match gens.first() {
                    Some(g) => inner.replay(&with_sphere(gens, g.nvars())),
                    None => false,
                },
                // checked structurally by the caller, which owns the map
                RealMethod::DivisionAlgebraMonomial | RealMethod::NormGap { .. } => true,
            },
            Certificate::DegenerateWitness { witness, .. } => replay_witness(gens, witness),
            Certificate::NoRealZero { eliminant, projection, variable, .. } => {
                let Some(n) = gens.first().map(MultiPoly::nvars) else { return false };
                let mut system = gens.to_vec();
                if let Some(r) = projection {
                    system = with_projection(gens, r);
                }
                let univariate = match (variable, projection) {
                    (_, Some(_)) => eliminant.as_univariate(n),
                    (Some(v), None) => eliminant.as_univariate(*v),
                    (None, None) => eliminant.as_univariate(0),
                };
                let Some(u) = univariate else { return false };
                if sturm::count_real_roots(&u, &Range::Whole) != Some(0) {
                    return false;
                }
                let m = system[0].nvars();
                match buchberger(&system, &MonomialOrder::grevlex(m), GroebnerLimits::default()) {
                    Ok(gb) => gb.contains(eliminant),
                    Err(_) => false,
                }
            }
            Certificate::Inconclusive { .. } => false,
        }
    }

    /// Structured form with everything needed to replay, using `names` for
    /// the system variables.
    pub fn to_json(&self, names: &[String]) -> Value {
        let mut extended = names.to_vec();
        extended.push("u".into());
        match self {
            Certificate::NondegenerateComplex { basis, pure_powers } => json!({
                "kind": self.kind(),
                "order": "grevlex",
                "basis": basis.polys.iter().map(|p| p.display_with(names)).collect::<Vec<_>>(),
                "pure_powers": pure_powers.iter().map(|(v, e)| json!({"variable": names.get(*v), "exponent": e})).collect::<Vec<_>>(),
            }),
            Certificate::NondegenerateReal { method } => {
                let m = match method {
                    RealMethod::DivisionAlgebraMonomial => json!({"method": "division-algebra-monomial"}),
                    RealMethod::NormGap { larger, smaller } => json!({
                        "method": "norm-gap",
                        "larger_norm_squared_factor": format_rational(larger),
                        "smaller_norm_squared_factor": format_rational(smaller),
                    }),
                    RealMethod::Sphere(inner) => {
                        json!({"method": "sphere", "certificate": inner.to_json(names)})
                    }
                };
                json!({"kind": self.kind(), "evidence": m})
            }
            Certificate::DegenerateWitness { witness, residual } => json!({
                "kind": self.kind(),
                "witness": witness.to_json(),
                "residual": residual,
            }),
            Certificate::NoRealZero { variable, eliminant, projection, chain_len, root_count } => json!({
                "kind": self.kind(),
                "variable": match (variable, projection) {
                    (_, Some(_)) => Some("u".to_string()),
                    (Some(v), None) => names.get(*v).cloned(),
                    (None, None) => None,
                },
                "projection": projection.as_ref().map(|r| r.iter().map(format_rational).collect::<Vec<_>>()),
                "eliminant": eliminant.display_with(&extended[..eliminant.nvars().min(extended.len())]),
                "sturm_chain_length": chain_len,
                "real_root_count": root_count,
            }),
            Certificate::Inconclusive { reason } => json!({"kind": self.kind(), "reason": reason}),
        }
    }
}

fn replay_witness(gens: &[MultiPoly], w: &Witness) -> bool {
    match w {
        Witness::Exact(x) => {
            x.iter().any(|c| !c.is_zero()) && gens.iter().all(|g| g.eval(x).is_ok_and(|v| v.is_zero()))
        }
        Witness::Float(x) => {
            let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            norm > 0.5 && witness_residual(gens, x) <= 1e-8
        }
    }
}

fn witness_residual(gens: &[MultiPoly], x: &[Complex64]) -> f64 {
    gens.iter().map(|g| g.eval_complex(x).norm()).fold(0.0, f64::max)
}

/// For each variable, the pure power that leads some basis element, or
/// `None` if a variable has none.
pub fn pure_power_check(gb: &GroebnerBasis) -> Option<Vec<(usize, u32)>> {
    let lms = gb.leading_monomials();
    let mut out = Vec::with_capacity(gb.nvars);
    for v in 0..gb.nvars {
        let best = lms
            .iter()
            .filter(|m| m.0.iter().enumerate().all(|(u, &e)| (u == v) == (e > 0)))
            .map(|m| m.0[v])
            .min()?;
        out.push((v, best));
    }
    Some(out)
}

/// Exact check that homogeneous `forms` have no common zero in `ℂⁿ∖{0}`.
/// On failure a witness is sought: first among the coordinate vectors
/// exactly, then numerically.
pub fn nondegenerate_complex(forms: &[MultiPoly], seed: u64) -> Certificate {
    let Some(n) = forms.first().map(MultiPoly::nvars) else {
        return Certificate::Inconclusive { reason: "empty system".into() };
    };
    if let Some(p) = forms.iter().find(|p| !p.is_homogeneous()) {
        return Certificate::Inconclusive { reason: format!("not homogeneous: {p}") };
    }
    let gb = match buchberger(forms, &MonomialOrder::grevlex(n), GroebnerLimits::default()) {
        Ok(gb) => gb,
        Err(e) => return Certificate::Inconclusive { reason: e.to_string() },
    };
    if let Some(pure_powers) = pure_power_check(&gb) {
        return Certificate::NondegenerateComplex { basis: gb, pure_powers };
    }
    for v in 0..n {
        let mut x = vec![Rational::zero(); n];
        x[v] = Rational::one();
        if forms.iter().all(|f| f.eval(&x).is_ok_and(|r| r.is_zero())) {
            return Certificate::DegenerateWitness { witness: Witness::Exact(x), residual: 0.0 };
        }
    }
    match crate::solve::projective_witness(forms, seed) {
        Some(x) => {
            let residual = witness_residual(forms, &x);
            Certificate::DegenerateWitness { witness: Witness::Float(x), residual }
        }
        None => Certificate::Inconclusive {
            reason: "the forms share a nonzero complex zero but none was located numerically".into(),
        },
    }
}

fn with_sphere(forms: &[MultiPoly], n: usize) -> Vec<MultiPoly> {
    let mut sphere = MultiPoly::constant(n, -Rational::one());
    for v in 0..n {
        let mut e = vec![0; n];
        e[v] = 2;
        sphere.add_term(crate::poly::Monomial(e), Rational::one());
    }
    let mut out = forms.to_vec();
    out.push(sphere);
    out
}

fn with_projection(gens: &[MultiPoly], r: &[Rational]) -> Vec<MultiPoly> {
    let n = gens[0].nvars();
    let mut out: Vec<MultiPoly> = gens.iter().map(|g| g.extend_vars(1)).collect();
    let mut lin = MultiPoly::var(n + 1, n);
    for (v, c) in r.iter().enumerate() {
        let mut e = vec![0; n + 1];
        e[v] = 1;
        lin.add_term(crate::poly::Monomial(e), -c.clone());
    }
    out.push(lin);
    out
}

/// Exact check that homogeneous `forms` have no common real zero other
/// than the origin, by showing they have no zero on the unit sphere.
pub fn nondegenerate_real(forms: &[MultiPoly]) -> Certificate {
    let Some(n) = forms.first().map(MultiPoly::nvars) else {
        return Certificate::Inconclusive { reason: "empty system".into() };
    };
    let inner = certify_polys(&with_sphere(forms, n));
    match inner {
        Certificate::NoRealZero { .. } => Certificate::NondegenerateReal { method: RealMethod::Sphere(Box::new(inner)) },
        other => other,
    }
}

/// Tries to prove that the system has no real solution.
pub fn certify_no_real_zero(sys: &ScalarizedSystem) -> Certificate {
    certify_polys(&sys.polys)
}

fn no_real_zero_from(u: Vec<Rational>, variable: Option<usize>, eliminant: MultiPoly, projection: Option<Vec<Rational>>) -> Option<Certificate> {
    let count = sturm::count_real_roots(&u, &Range::Whole)?;
    if count != 0 {
        return None;
    }
    let chain_len = sturm::sturm_chain(&sturm::squarefree(&u)).len();
    Some(Certificate::NoRealZero { variable, eliminant, projection, chain_len, root_count: 0 })
}

fn certify_polys(gens: &[MultiPoly]) -> Certificate {
    let Some(n) = gens.first().map(MultiPoly::nvars) else {
        return Certificate::Inconclusive { reason: "empty system".into() };
    };
    let limits = GroebnerLimits::default();
    let mut reasons = Vec::new();
    match buchberger(gens, &MonomialOrder::grevlex(n), limits) {
        Ok(gb) if gb.is_one() => {
            let one = MultiPoly::constant(n, Rational::one());
            return Certificate::NoRealZero { variable: None, eliminant: one, projection: None, chain_len: 1, root_count: 0 };
        }
        Ok(_) => {}
        Err(e) => return Certificate::Inconclusive { reason: e.to_string() },
    }
    for v in (0..n).rev() {
        match eliminate(gens, &[v], limits) {
            Ok(elim) => {
                let Some(q) = elim.into_iter().find(|p| !p.is_zero()) else {
                    reasons.push(format!("no eliminant in variable {}", v + 1));
                    continue;
                };
                let u = q.as_univariate(v).expect("eliminant is univariate");
                if let Some(c) = no_real_zero_from(u, Some(v), q, None) {
                    return c;
                }
                reasons.push(format!("eliminant in variable {} has real roots", v + 1));
            }
            Err(e) => reasons.push(e.to_string()),
        }
    }
    // generic projection for systems whose coordinate eliminants all have real roots
    if n > 1 {
        let r: Vec<Rational> = (0..n).map(|v| int(1 + ((v as i64 * 7 + 3) % 11))).collect();
        let system = with_projection(gens, &r);
        if let Ok(elim) = eliminate(&system, &[n], limits) {
            if let Some(q) = elim.into_iter().find(|p| !p.is_zero()) {
                let u = q.as_univariate(n).expect("eliminant is univariate");
                if let Some(c) = no_real_zero_from(u, None, q, Some(r)) {
                    return c;
                }
            }
        }
    }
    Certificate::Inconclusive { reason: reasons.join("; ") }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), int(*c))))
    }

    #[test]
    fn roots_exist_is_inconclusive() {
        let sys = ScalarizedSystem::from_polys(vec![p(1, &[(&[2], 1), (&[0], -1)])]);
        assert!(certify_no_real_zero(&sys).is_inconclusive());
    }

    #[test]
    fn no_real_root_univariate() {
        let gens = vec![p(1, &[(&[2], 1), (&[0], 1)])];
        let c = certify_no_real_zero(&ScalarizedSystem::from_polys(gens.clone()));
        assert!(matches!(c, Certificate::NoRealZero { variable: Some(0), .. }));
        assert!(c.replay(&gens));
    }

    #[test]
    fn inconsistent_short_circuits() {
        let gens = vec![p(2, &[(&[1, 0], 1)]), p(2, &[(&[1, 0], 1), (&[0, 0], 1)])];
        let c = certify_no_real_zero(&ScalarizedSystem::from_polys(gens.clone()));
        assert!(matches!(c, Certificate::NoRealZero { variable: None, .. }));
        assert!(c.replay(&gens));
    }

    #[test]
    fn complex_nondegeneracy() {
        // {x², y²}
        let forms = vec![p(2, &[(&[2, 0], 1)]), p(2, &[(&[0, 2], 1)])];
        let c = nondegenerate_complex(&forms, 0);
        assert!(matches!(&c, Certificate::NondegenerateComplex { pure_powers, .. } if pure_powers == &[(0, 2), (1, 2)]));
        assert!(c.replay(&forms));
        // {x y} vanishes on the axes
        let forms = vec![p(2, &[(&[1, 1], 1)])];
        let c = nondegenerate_complex(&forms, 0);
        assert!(matches!(&c, Certificate::DegenerateWitness { witness: Witness::Exact(_), .. }));
        assert!(c.replay(&forms));
    }

    #[test]
    fn complex_degenerate_but_real_nondegenerate() {
        // x² + y² has the complex zero (1, i) but no nonzero real zero
        let forms = vec![p(2, &[(&[2, 0], 1), (&[0, 2], 1)])];
        let c = nondegenerate_complex(&forms, 3);
        match &c {
            Certificate::DegenerateWitness { witness: Witness::Float(_), residual } => assert!(*residual < 1e-8),
            other => panic!("{other:?}"),
        }
        assert!(c.replay(&forms));
        let r = nondegenerate_real(&forms);
        assert!(matches!(r, Certificate::NondegenerateReal { .. }));
        assert!(r.replay(&forms));
    }

    #[test]
    fn real_solutions_stay_inconclusive() {
        // {x² − 1, y² − 1, x y + 1} has the real zeros (1, −1), (−1, 1)
        let gens = vec![p(2, &[(&[2, 0], 1), (&[0, 0], -1)]), p(2, &[(&[0, 2], 1), (&[0, 0], -1)]), p(2, &[(&[1, 1], 1), (&[0, 0], 1)])];
        assert!(certify_no_real_zero(&ScalarizedSystem::from_polys(gens)).is_inconclusive());
    }

    #[test]
    fn projection_fallback() {
        // zeros (1, ±i), (±i, 1): each coordinate takes the real value 1
        // somewhere, but no zero is real
        let gens = vec![p(2, &[(&[1, 1], 1), (&[1, 0], -1), (&[0, 1], -1), (&[0, 0], 1)]), p(2, &[(&[2, 0], 1), (&[0, 2], 1)])];
        let c = certify_no_real_zero(&ScalarizedSystem::from_polys(gens.clone()));
        assert!(matches!(&c, Certificate::NoRealZero { projection: Some(_), .. }), "{c:?}");
        assert!(c.replay(&gens));
    }

    #[test]
    fn json_has_replay_data() {
        let gens = vec![p(1, &[(&[2], 1), (&[0], 1)])];
        let c = certify_no_real_zero(&ScalarizedSystem::from_polys(gens));
        let j = c.to_json(&["x".into()]);
        assert_eq!(j["kind"], "NoRealZero");
        assert_eq!(j["real_root_count"], 0);
        assert_eq!(j["eliminant"], "x^2 + 1");
    }
}
