//! Topological degree of the leading form by counting signed preimages.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::config::SolveConfig;
use super::homotopy::{track_paths, PathStatus};
use super::newton::damped_newton;
use super::probe::{numeric_nondegeneracy_min, ProbeVerdict};
use super::system::{FloatPoly, FloatSystem};
use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::poly::scalarize;
use crate::polymap::PolynomialMap;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeEstimate {
    pub value: i64,
    /// Target point in the coordinates of `ℋ′`.
    pub regular_value: Vec<f64>,
    pub preimages: Vec<Vec<f64>>,
    /// Sign of the Jacobian determinant at each preimage.
    pub signs: Vec<i8>,
    pub attempts: usize,
    pub low_confidence: bool,
    pub notes: Vec<String>,
}

impl DegreeEstimate {
    pub fn preimage_count(&self) -> usize {
        self.preimages.len()
    }
}

/// Signed count of real solutions of `p(x) = c` for a random unit `c`,
/// with `p` the given homogeneous forms. Retries with a new target up to
/// five times when a path fails or two preimages collide.
pub fn mapping_degree_estimate(forms: &[PolynomialMap], h: &Subspace, target: &Subspace, cfg: &SolveConfig) -> Result<DegreeEstimate> {
    let sys = scalarize(forms, h, target)?;
    if sys.polys.len() != sys.nvars() {
        return Err(Error::NotSquare { polys: sys.polys.len(), vars: sys.nvars() });
    }
    let probe_cfg = SolveConfig { n_starts: 24, ..cfg.clone() };
    if numeric_nondegeneracy_min(forms, h, &probe_cfg)?.verdict == ProbeVerdict::DegenerateWitness {
        return Err(Error::Degenerate);
    }
    let base: Vec<FloatPoly> = sys.polys.iter().map(FloatPoly::from_poly).collect();
    let n = sys.nvars();
    let mut notes = Vec::new();
    let mut last = None;
    for attempt in 0..=5usize {
        let mut rng = cfg.rng(1 << 40 | attempt as u64);
        let mut c: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        c.iter_mut().for_each(|x| *x /= norm);
        let shifted: Vec<FloatPoly> = base
            .iter()
            .zip(&c)
            .map(|(p, ci)| p.shifted(Complex64::new(-ci, 0.0)))
            .collect();
        let fs = FloatSystem::new(n, shifted);
        let paths = track_paths(&fs, cfg)?;
        let mut trouble = Vec::new();
        // paths going to infinity are expected: the complexified forms
        // may vanish off the real points
        for (status, what) in [(PathStatus::SingularEndpoint, "ended singular"), (PathStatus::Failed, "failed")] {
            let bad = paths.iter().filter(|p| p.status == status).count();
            if bad > 0 {
                trouble.push(format!("attempt {attempt}: {bad} paths {what}"));
            }
        }
        let mut real: Vec<Vec<f64>> = Vec::new();
        for p in paths.iter().filter(|p| p.status == PathStatus::Converged) {
            if !p.x.iter().all(|z| z.im.abs() <= cfg.real_filter_tol * (1.0 + z.norm())) {
                continue;
            }
            let x: Vec<f64> = p.x.iter().map(|z| z.re).collect();
            real.push(damped_newton(&fs, x, cfg.max_newton_iters, 0.0, cfg.max_halvings).x);
        }
        for (i, a) in real.iter().enumerate() {
            for b in &real[..i] {
                if a.iter().zip(b).all(|(x, y)| (x - y).abs() <= cfg.tol_dedup) {
                    trouble.push(format!("attempt {attempt}: two paths reached the same preimage"));
                }
            }
        }
        let signs: Vec<i8> = real
            .iter()
            .map(|x| {
                let j: DMatrix<f64> = fs.jacobian(x);
                if j.determinant() > 0.0 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        let estimate = DegreeEstimate {
            value: signs.iter().map(|&s| s as i64).sum(),
            regular_value: c,
            preimages: real,
            signs,
            attempts: attempt + 1,
            low_confidence: !trouble.is_empty(),
            notes: Vec::new(),
        };
        notes.extend(trouble);
        let clean = !estimate.low_confidence;
        last = Some(estimate);
        if clean {
            break;
        }
    }
    let mut est = last.expect("at least one attempt");
    est.notes = notes;
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinSpec;
    use crate::parser::parse_map;
    use std::sync::Arc;

    #[test]
    fn powers_on_quaternions() {
        let alg = Arc::new(BuiltinSpec::Quaternions.build().unwrap());
        let full = Subspace::full(&alg);
        for d in 1..=3 {
            let p = parse_map(&format!("x^{d}"), alg.clone(), 1).unwrap();
            let est = mapping_degree_estimate(&[p], &full, &full, &SolveConfig::default()).unwrap();
            assert_eq!(est.value, d as i64, "{est:?}");
            assert!(!est.low_confidence, "{est:?}");
        }
    }

    #[test]
    fn degenerate_is_refused() {
        let alg = Arc::new(BuiltinSpec::Matrix { m: 2, field: crate::algebra::Field::Real }.build().unwrap());
        let full = Subspace::full(&alg);
        let p = parse_map("E11*x", alg.clone(), 1).unwrap();
        assert!(matches!(mapping_degree_estimate(&[p], &full, &full, &SolveConfig::default()), Err(Error::Degenerate)));
    }
}
