//! Numerical search for common zeros of leading forms on the unit sphere.

use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::config::SolveConfig;
use super::newton::damped_newton;
use super::system::FloatSystem;
use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::poly::{expand, MultiPoly, VariableAtlas};
use crate::polymap::PolynomialMap;
use crate::scalar::{to_f64, Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeVerdict {
    DegenerateWitness,
    NumericallyNondegenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    /// Smallest `maxᵢ ‖pᵢ(a)‖` seen on the unit sphere of `ℋⁿ`.
    pub min_value: f64,
    /// Ambient coordinates of each argument at the minimum.
    pub argmin: Vec<Vec<f64>>,
    pub verdict: ProbeVerdict,
}

struct Setup {
    outputs: FloatSystem,
    /// Ambient coordinates of the arguments as linear forms in λ.
    embed: Vec<Vec<f64>>,
    sphere: MultiPoly,
    dim: usize,
    nforms: usize,
    nargs: usize,
}

impl Setup {
    fn new(forms: &[PolynomialMap], h: &Subspace) -> Result<Setup> {
        let first = forms.first().ok_or(Error::Arity { expected: 1, got: 0 })?;
        let nargs = first.nvars();
        let dim = first.algebra().dim();
        let atlas = VariableAtlas::new(h.dim(), nargs);
        let nv = atlas.len();
        let mut outs = Vec::new();
        for f in forms {
            if f.nvars() != nargs {
                return Err(Error::Arity { expected: nargs, got: f.nvars() });
            }
            outs.extend(expand(f, h));
        }
        let mut embed = Vec::new();
        let mut sphere = MultiPoly::constant(nv, -Rational::from_integer(1.into()));
        for l in 0..nargs {
            for r in 0..dim {
                let mut row = vec![0.0; nv];
                let mut lin = MultiPoly::zero(nv);
                for (k, b) in h.basis().iter().enumerate() {
                    row[atlas.index(k, l)] = to_f64(&b[r]);
                    lin = &lin + &MultiPoly::var(nv, atlas.index(k, l)).scale(&b[r]);
                }
                sphere = &sphere + &(&lin * &lin);
                embed.push(row);
            }
        }
        Ok(Setup { outputs: FloatSystem::from_polys(&outs), embed, sphere, dim, nforms: forms.len(), nargs })
    }

    fn ambient(&self, lam: &[f64]) -> Vec<f64> {
        self.embed.iter().map(|row| row.iter().zip(lam).map(|(a, b)| a * b).sum()).collect()
    }

    fn normalize(&self, lam: &mut [f64]) -> bool {
        let n = self.ambient(lam).iter().map(|x| x * x).sum::<f64>().sqrt();
        if n == 0.0 || !n.is_finite() {
            return false;
        }
        lam.iter_mut().for_each(|x| *x /= n);
        true
    }

    fn objective(&self, lam: &[f64]) -> f64 {
        let v = self.outputs.eval(lam);
        (0..self.nforms)
            .map(|i| (0..self.dim).map(|r| v[i * self.dim + r].powi(2)).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    fn sum_sq(&self, lam: &[f64]) -> f64 {
        self.outputs.eval(lam).norm_squared()
    }

    fn args(&self, lam: &[f64]) -> Vec<Vec<f64>> {
        self.ambient(lam).chunks(self.dim).take(self.nargs).map(<[f64]>::to_vec).collect()
    }
}

fn descend(s: &Setup, mut lam: Vec<f64>, iters: usize) -> Vec<f64> {
    let mut eta = 0.1;
    let mut g = s.sum_sq(&lam);
    for _ in 0..iters {
        let f = s.outputs.eval(&lam);
        let grad: DVector<f64> = s.outputs.jacobian(&lam).transpose() * f * 2.0;
        let mut improved = false;
        for _ in 0..30 {
            let mut trial: Vec<f64> = lam.iter().zip(grad.iter()).map(|(x, d)| x - eta * d).collect();
            if s.normalize(&mut trial) {
                let gt = s.sum_sq(&trial);
                if gt < g {
                    lam = trial;
                    g = gt;
                    improved = true;
                    eta *= 2.0;
                    break;
                }
            }
            eta /= 2.0;
        }
        if !improved || g < 1e-30 {
            break;
        }
    }
    lam
}

/// Minimizes `maxᵢ ‖pᵢ(a)‖` over the unit sphere of `ℋⁿ` by projected
/// gradient descent from `cfg.n_starts` random points. Small minima are
/// polished with Newton's method on the forms plus the sphere equation.
/// This is evidence only, never a proof.
pub fn numeric_nondegeneracy_min(forms: &[PolynomialMap], h: &Subspace, cfg: &SolveConfig) -> Result<ProbeResult> {
    let s = Setup::new(forms, h)?;
    let nv = s.outputs.nvars();
    let results: Vec<(f64, Vec<f64>)> = (0..cfg.n_starts)
        .into_par_iter()
        .filter_map(|k| {
            let mut rng = cfg.rng(k as u64);
            let mut lam: Vec<f64> = (0..nv).map(|_| rng.sample(StandardNormal)).collect();
            if !s.normalize(&mut lam) {
                return None;
            }
            let lam = descend(&s, lam, 300);
            Some((s.objective(&lam), lam))
        })
        .collect();
    let (mut best, mut lam) = results
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .ok_or_else(|| Error::GuardExceeded("no probe start could be normalized".into()))?;
    if best <= 1e-4 {
        let mut polys: Vec<MultiPoly> = forms.iter().flat_map(|f| expand(f, h)).collect();
        polys.push(s.sphere.clone());
        let sys = FloatSystem::from_polys(&polys);
        let out = damped_newton(&sys, lam.clone(), cfg.max_newton_iters, 1e-15, cfg.max_halvings);
        let mut polished = out.x;
        if s.normalize(&mut polished) {
            let v = s.objective(&polished);
            if v < best {
                best = v;
                lam = polished;
            }
        }
    }
    let verdict = if best <= 1e-12 { ProbeVerdict::DegenerateWitness } else { ProbeVerdict::NumericallyNondegenerate };
    Ok(ProbeResult { min_value: best, argmin: s.args(&lam), verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinSpec;
    use crate::parser::parse_map;
    use std::sync::Arc;

    fn cfg() -> SolveConfig {
        SolveConfig { n_starts: 20, ..SolveConfig::default() }
    }

    #[test]
    fn square_on_quaternions_has_min_one() {
        let alg = Arc::new(BuiltinSpec::Quaternions.build().unwrap());
        let p = parse_map("x^2", alg.clone(), 1).unwrap();
        let r = numeric_nondegeneracy_min(&[p], &Subspace::full(&alg), &cfg()).unwrap();
        assert!((r.min_value - 1.0).abs() < 1e-9);
        assert_eq!(r.verdict, ProbeVerdict::NumericallyNondegenerate);
    }

    #[test]
    fn matrix_unit_form_is_degenerate() {
        let alg = Arc::new(BuiltinSpec::Matrix { m: 2, field: crate::algebra::Field::Real }.build().unwrap());
        let p = parse_map("E11*x", alg.clone(), 1).unwrap();
        let r = numeric_nondegeneracy_min(&[p], &Subspace::full(&alg), &cfg()).unwrap();
        assert_eq!(r.verdict, ProbeVerdict::DegenerateWitness);
        // the witness has zero first row
        assert!(r.argmin[0][0].abs() < 1e-10 && r.argmin[0][1].abs() < 1e-10);
        assert!((r.argmin[0].iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-10);
    }
}
