//! Which existence results cover a given system.

use serde::Serialize;

use super::config::SolveConfig;
use super::probe::numeric_nondegeneracy_min;
use crate::algebra::{Field, Subspace};
use crate::groebner::{nondegenerate_complex, nondegenerate_real, Certificate, RealMethod};
use crate::poly::scalarize;
use crate::polymap::{monomial_norm_squared, PolynomialMap};
use crate::scalar::{ratio, to_f64, Rational};

/// Existence results for common zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Algebraically closed ground field, non-degenerate leading forms,
    /// `dim ℋ′ ≤ dim ℋ`.
    ClosedFieldExistence,
    /// Real ground field, odd degrees, non-degenerate leading forms,
    /// `dim ℋ′ ≤ dim ℋ`.
    OddDegreeRealExistence,
    /// ℍ or 𝕆, odd degrees, non-degenerate leading forms.
    DivisionAlgebraOddDegree,
    /// One map on ℍ or 𝕆 of even degree whose non-degenerate leading form
    /// has at most two monomials.
    TwoMonomialEvenDegree,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: Theorem,
    pub applies: bool,
    pub reason: String,
}

/// Exact non-degeneracy evidence for the leading forms of `maps` on `ℋ`.
/// Single-map shortcuts on division algebras come first, then Gröbner
/// bases: over ℂ for the complex question, on the unit sphere for the
/// real one.
pub fn certify_nondegenerate(maps: &[PolynomialMap], h: &Subspace, target: &Subspace, seed: u64) -> Certificate {
    let Some(first) = maps.first() else {
        return Certificate::Inconclusive { reason: "no maps".into() };
    };
    let alg = first.algebra();
    let mut forms = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        match m.degree() {
            None | Some(0) => return Certificate::Inconclusive { reason: format!("map {} has no positive degree", i + 1) },
            Some(_) => forms.push(m.leading_form().collect_terms()),
        }
    }
    let full = h.dim() == alg.dim() && h.is_standard();
    if maps.len() == 1 && first.nvars() == 1 && full && alg.kind().is_division_algebra() {
        let terms = forms[0].terms();
        if terms.len() == 1 && !terms[0].word.has_zero_const() {
            return Certificate::NondegenerateReal { method: RealMethod::DivisionAlgebraMonomial };
        }
        if terms.len() == 2 && alg.has_composition_norm() {
            let n0 = monomial_norm_squared(alg, &terms[0].word, &terms[0].coeff);
            let n1 = monomial_norm_squared(alg, &terms[1].word, &terms[1].coeff);
            if let (Ok(a), Ok(b)) = (n0, n1) {
                if a != b {
                    let (larger, smaller) = if a > b { (a, b) } else { (b, a) };
                    return Certificate::NondegenerateReal { method: RealMethod::NormGap { larger, smaller } };
                }
            }
        }
    }
    let sys = match scalarize(&forms, h, target) {
        Ok(s) => s,
        Err(e) => return Certificate::Inconclusive { reason: e.to_string() },
    };
    let complex = nondegenerate_complex(&sys.polys, seed);
    if alg.field() == Field::Complex {
        return complex;
    }
    match &complex {
        Certificate::NondegenerateComplex { .. } => return complex,
        Certificate::DegenerateWitness { witness, .. } if witness.is_real() => return complex,
        _ => {}
    }
    match nondegenerate_real(&sys.polys) {
        real @ Certificate::NondegenerateReal { .. } => real,
        other => match complex {
            Certificate::DegenerateWitness { .. } => Certificate::Inconclusive {
                reason: "the leading forms share a nonzero complex zero; no real one was found".into(),
            },
            _ => other,
        },
    }
}

fn nondegenerate_over_reals(c: &Certificate) -> bool {
    matches!(c, Certificate::NondegenerateComplex { .. } | Certificate::NondegenerateReal { .. })
}

fn describe(c: &Certificate) -> String {
    match c {
        Certificate::NondegenerateComplex { .. } => "leading forms certified non-degenerate over ℂ".into(),
        Certificate::NondegenerateReal { .. } => "leading forms certified non-degenerate over ℝ".into(),
        Certificate::DegenerateWitness { .. } => "leading forms are degenerate".into(),
        Certificate::Inconclusive { reason } => format!("non-degeneracy not established: {reason}"),
        Certificate::NoRealZero { .. } => "unexpected certificate kind".into(),
    }
}

/// Checks the hypotheses of each existence result in turn.
pub fn theorem_verdicts(maps: &[PolynomialMap], h: &Subspace, target: &Subspace, nondeg: &Certificate) -> Vec<TheoremVerdict> {
    let Some(first) = maps.first() else { return Vec::new() };
    let alg = first.algebra();
    let degrees: Vec<Option<usize>> = maps.iter().map(PolynomialMap::degree).collect();
    let positive = degrees.iter().all(|d| d.is_some_and(|d| d > 0));
    let odd = degrees.iter().all(|d| d.is_some_and(|d| d % 2 == 1));
    let square = maps.len() == first.nvars();
    let dims = target.dim() <= h.dim();
    let full = h.dim() == alg.dim() && h.is_standard();
    let qo = alg.kind().is_quaternion_or_octonion();

    let check = |conds: &[(bool, String)]| -> (bool, String) {
        match conds.iter().find(|(ok, _)| !ok) {
            Some((_, why)) => (false, why.clone()),
            None => (true, "all hypotheses hold".into()),
        }
    };
    let arity = (square, format!("{} maps in {} variables", maps.len(), first.nvars()));
    let dim_cond = (dims, format!("dim ℋ′ = {} exceeds dim ℋ = {}", target.dim(), h.dim()));
    let deg_pos = (positive, "some map has no positive degree".to_string());
    let deg_odd = (odd, "some map has even degree".to_string());

    let mut out = Vec::new();
    let (applies, reason) = check(&[
        (alg.field() == Field::Complex, "the ground field is not algebraically closed".into()),
        arity.clone(),
        deg_pos.clone(),
        (matches!(nondeg, Certificate::NondegenerateComplex { .. }), describe(nondeg)),
        dim_cond.clone(),
    ]);
    out.push(TheoremVerdict { theorem: Theorem::ClosedFieldExistence, applies, reason });

    let (applies, reason) = check(&[
        (alg.field() == Field::Real, "the ground field is not real".into()),
        arity.clone(),
        deg_odd.clone(),
        (nondegenerate_over_reals(nondeg), describe(nondeg)),
        dim_cond,
    ]);
    out.push(TheoremVerdict { theorem: Theorem::OddDegreeRealExistence, applies, reason });

    let (applies, reason) = check(&[
        (qo, "the algebra is not ℍ or 𝕆".into()),
        (full, "the domain is a proper subspace".into()),
        arity,
        deg_odd,
        (nondegenerate_over_reals(nondeg), describe(nondeg)),
    ]);
    out.push(TheoremVerdict { theorem: Theorem::DivisionAlgebraOddDegree, applies, reason });

    let (applies, reason) = two_monomial_conditions(maps, h, nondeg);
    out.push(TheoremVerdict { theorem: Theorem::TwoMonomialEvenDegree, applies, reason });
    out
}

fn two_monomial_conditions(maps: &[PolynomialMap], h: &Subspace, nondeg: &Certificate) -> (bool, String) {
    let first = &maps[0];
    let alg = first.algebra();
    if !alg.kind().is_quaternion_or_octonion() {
        return (false, "the algebra is not ℍ or 𝕆".into());
    }
    if maps.len() != 1 || first.nvars() != 1 {
        return (false, "not a single map in one variable".into());
    }
    if !(h.dim() == alg.dim() && h.is_standard()) {
        return (false, "the domain is a proper subspace".into());
    }
    let d = match first.degree() {
        None | Some(0) => return (false, "degree is not positive".into()),
        Some(d) => d,
    };
    if d % 2 == 1 {
        return (false, format!("odd degree {d}; the odd-degree result applies instead"));
    }
    let count = first.leading_form().collect_terms().terms().len();
    if count > 2 {
        return (false, format!("{count} monomials in the leading form"));
    }
    if !nondegenerate_over_reals(nondeg) {
        return (false, describe(nondeg));
    }
    (true, format!("even degree {d}, {count} monomial(s), non-degenerate"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoMonomialVerdict {
    pub guaranteed: bool,
    pub reason: String,
    /// `‖m₁‖ ≥ ‖m₂‖` for two-monomial leading forms.
    pub norms: Option<(f64, f64)>,
    /// Smallest value of `‖m₁(a) + (1−t)m₂(a)‖` found on the unit sphere,
    /// per sampled `t`.
    pub homotopy_check: Vec<(f64, f64)>,
}

/// Decides whether the even-degree two-monomial existence result covers
/// `p`, and spot-checks that `m₁ + (1−t)m₂` has no zero on the sphere.
pub fn two_monomial_guarantee(p: &PolynomialMap, cfg: &SolveConfig) -> TwoMonomialVerdict {
    let alg = p.algebra();
    let full = Subspace::full(alg);
    let nondeg = if alg.kind().is_quaternion_or_octonion() && p.nvars() == 1 {
        certify_nondegenerate(std::slice::from_ref(p), &full, &full, cfg.seed)
    } else {
        Certificate::Inconclusive { reason: "not applicable".into() }
    };
    let (guaranteed, reason) = two_monomial_conditions(std::slice::from_ref(p), &full, &nondeg);
    let mut verdict = TwoMonomialVerdict { guaranteed, reason, norms: None, homotopy_check: Vec::new() };
    if !guaranteed {
        return verdict;
    }
    let lead = p.leading_form().collect_terms();
    let terms = lead.terms();
    if terms.len() != 2 {
        return verdict;
    }
    let norm = |k: usize| monomial_norm_squared(alg, &terms[k].word, &terms[k].coeff).unwrap_or_default();
    let (i1, i2) = if norm(0) >= norm(1) { (0, 1) } else { (1, 0) };
    verdict.norms = Some((to_f64(&norm(i1)).sqrt(), to_f64(&norm(i2)).sqrt()));
    let probe_cfg = SolveConfig { n_starts: 16, ..cfg.clone() };
    for k in 0..=4i64 {
        let t = ratio(k, 4);
        let scale: Rational = Rational::from_integer(1.into()) - &t;
        let ht = PolynomialMap::from_terms(
            alg.clone(),
            1,
            vec![
                (terms[i1].coeff.clone(), terms[i1].word.clone()),
                (&terms[i2].coeff * &scale, terms[i2].word.clone()),
            ],
        );
        if let Ok(ht) = ht {
            if let Ok(r) = numeric_nondegeneracy_min(&[ht], &full, &probe_cfg) {
                verdict.homotopy_check.push((to_f64(&t), r.min_value));
            }
        }
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinSpec;
    use crate::parser::parse_map;
    use std::sync::Arc;

    fn quat() -> Arc<crate::algebra::Algebra> {
        Arc::new(BuiltinSpec::Quaternions.build().unwrap())
    }

    #[test]
    fn one_monomial_even_degree() {
        let p = parse_map("x^2 + 6*i", quat(), 1).unwrap();
        let v = two_monomial_guarantee(&p, &SolveConfig::default());
        assert!(v.guaranteed, "{v:?}");
    }

    #[test]
    fn odd_degree_is_not_covered() {
        let p = parse_map("x^3", quat(), 1).unwrap();
        let v = two_monomial_guarantee(&p, &SolveConfig::default());
        assert!(!v.guaranteed && v.reason.contains("odd"));
    }

    #[test]
    fn two_monomials_with_norm_gap() {
        let p = parse_map("2*x^2 + i*x*j*x + 1", quat(), 1).unwrap();
        let v = two_monomial_guarantee(&p, &SolveConfig::default());
        assert!(v.guaranteed, "{v:?}");
        assert_eq!(v.norms, Some((2.0, 1.0)));
        assert_eq!(v.homotopy_check.len(), 5);
        assert!(v.homotopy_check.iter().all(|(_, m)| *m > 0.5));
    }

    #[test]
    fn odd_cube_verdicts() {
        let alg = quat();
        let full = Subspace::full(&alg);
        let p = parse_map("x^3 - 1", alg, 1).unwrap();
        let c = certify_nondegenerate(std::slice::from_ref(&p), &full, &full, 0);
        assert!(matches!(c, Certificate::NondegenerateReal { method: RealMethod::DivisionAlgebraMonomial }));
        let v = theorem_verdicts(&[p], &full, &full, &c);
        let get = |t| v.iter().find(|x| x.theorem == t).unwrap();
        assert!(get(Theorem::DivisionAlgebraOddDegree).applies);
        assert!(get(Theorem::OddDegreeRealExistence).applies);
        assert!(!get(Theorem::ClosedFieldExistence).applies);
        assert!(!get(Theorem::TwoMonomialEvenDegree).applies);
    }

    #[test]
    fn equal_norms_fall_back_to_groebner() {
        // x² + i x i x: ‖m₁‖ = ‖m₂‖ = 1
        let alg = quat();
        let full = Subspace::full(&alg);
        let p = parse_map("x^2 + i*x*i*x", alg, 1).unwrap();
        let c = certify_nondegenerate(std::slice::from_ref(&p), &full, &full, 0);
        assert!(!matches!(c, Certificate::NondegenerateReal { method: RealMethod::NormGap { .. } }), "{c:?}");
    }
}
