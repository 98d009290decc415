//! Damped Gauss–Newton iteration.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::config::SolveConfig;
use super::system::{FloatPoly, FloatSystem, Num};
use crate::poly::MultiPoly;

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOutcome<T> {
    pub x: Vec<T>,
    /// Largest absolute component of the system at `x`.
    pub residual: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Norms of the accepted steps.
    pub steps: Vec<f64>,
}

fn norm2<T: Num>(v: &DVector<T>) -> f64 {
    v.iter().map(|z| z.modulus_squared()).sum::<f64>().sqrt()
}

fn max_abs<T: Num>(v: &DVector<T>) -> f64 {
    v.iter().map(|z| z.modulus()).fold(0.0, f64::max)
}

/// Minimum-norm least-squares solution of `j · δ = f`.
pub fn lstsq<T: Num>(j: &DMatrix<T>, f: &DVector<T>) -> Option<DVector<T>> {
    let svd = j.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 || !smax.is_finite() {
        return None;
    }
    svd.solve(f, smax * 1e-13).ok()
}

/// Ratio of smallest to largest singular value, `0` for non-square shapes
/// with fewer rows than columns.
pub fn conditioning<T: Num>(j: &DMatrix<T>) -> f64 {
    if j.nrows() < j.ncols() {
        return 0.0;
    }
    let s = j.clone().singular_values();
    let max = s.iter().cloned().fold(0.0, f64::max);
    let min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    if max == 0.0 {
        0.0
    } else {
        min / max
    }
}

/// Newton's method with the step halved until the residual norm drops.
pub fn damped_newton<T: Num>(sys: &FloatSystem, x0: Vec<T>, max_iters: usize, tol: f64, max_halvings: usize) -> NewtonOutcome<T> {
    let mut x = DVector::from_vec(x0);
    let mut f = sys.eval(x.as_slice());
    let mut steps = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    for _ in 0..max_iters {
        if !f.iter().all(|z| z.modulus().is_finite()) {
            break;
        }
        let done = max_abs(&f) <= tol;
        let j = sys.jacobian(x.as_slice());
        let Some(delta) = lstsq(&j, &f) else { break };
        let current = norm2(&f);
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..=max_halvings {
            let trial = &x - &delta * T::from_real(alpha);
            let ft = sys.eval(trial.as_slice());
            if norm2(&ft) < current {
                accepted = Some((trial, ft));
                break;
            }
            if done {
                break;
            }
            alpha /= 2.0;
        }
        match accepted {
            Some((xn, fnew)) => {
                steps.push(norm2(&delta) * alpha);
                iterations += 1;
                x = xn;
                f = fnew;
            }
            None => {
                converged = done;
                break;
            }
        }
        if done {
            converged = true;
            break;
        }
    }
    let residual = max_abs(&f);
    if residual <= tol {
        converged = true;
    }
    NewtonOutcome { x: x.as_slice().to_vec(), residual, converged, iterations, steps }
}

/// Searches for a nonzero common complex zero of homogeneous `forms`,
/// returned with unit Euclidean norm.
pub fn projective_witness(forms: &[MultiPoly], seed: u64) -> Option<Vec<Complex64>> {
    let n = forms.first()?.nvars();
    let cfg = SolveConfig::with_seed(seed);
    let base: Vec<FloatPoly> = forms.iter().map(FloatPoly::from_poly).collect();
    let forms_sys = FloatSystem::new(n, base.clone());
    for k in 0..64u64 {
        let mut rng = cfg.rng(k);
        let mut gauss = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        // random affine chart ℓ(x) = 1
        let mut chart: Vec<(Vec<u32>, Complex64)> = (0..n)
            .map(|v| {
                let mut e = vec![0; n];
                e[v] = 1;
                (e, gauss())
            })
            .collect();
        chart.push((vec![0; n], Complex64::new(-1.0, 0.0)));
        let mut polys = base.clone();
        polys.push(FloatPoly::from_terms(n, chart));
        let sys = FloatSystem::new(n, polys);
        let x0: Vec<Complex64> = (0..n).map(|_| gauss()).collect();
        let out = damped_newton(&sys, x0, 200, 1e-13, 30);
        if !out.converged {
            continue;
        }
        let norm = out.x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            continue;
        }
        let x: Vec<Complex64> = out.x.iter().map(|z| z / norm).collect();
        if forms_sys.residual(&x) <= 1e-10 {
            return Some(x);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn cube_root() {
        let p = MultiPoly::from_terms(1, [(vec![3], int(1)), (vec![0], int(-8))]);
        let sys = FloatSystem::from_polys(&[p]);
        let out = damped_newton(&sys, vec![5.0], 50, 1e-12, 20);
        assert!(out.converged);
        assert!((out.x[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn quadratic_convergence() {
        // x² − 2, y² − 3 from a nearby start
        let p = MultiPoly::from_terms(2, [(vec![2, 0], int(1)), (vec![0, 0], int(-2))]);
        let q = MultiPoly::from_terms(2, [(vec![0, 2], int(1)), (vec![0, 0], int(-3))]);
        let sys = FloatSystem::from_polys(&[p, q]);
        let root = [2f64.sqrt(), 3f64.sqrt()];
        let mut x = vec![1.5, 1.8];
        let mut errs = Vec::new();
        for _ in 0..4 {
            errs.push(((x[0] - root[0]).powi(2) + (x[1] - root[1]).powi(2)).sqrt());
            x = damped_newton(&sys, x, 1, 0.0, 0).x;
        }
        for w in errs.windows(2).skip(1) {
            if w[1] > 1e-15 {
                assert!(w[1] / (w[0] * w[0]) < 1.0, "{errs:?}");
            }
        }
    }

    #[test]
    fn complex_roots() {
        let p = MultiPoly::from_terms(1, [(vec![2], int(1)), (vec![0], int(1))]);
        let sys = FloatSystem::from_polys(&[p]);
        let out = damped_newton(&sys, vec![Complex64::new(0.3, 0.8)], 50, 1e-12, 20);
        assert!(out.converged);
        assert!((out.x[0] - Complex64::new(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn underdetermined_lands_on_the_circle() {
        let p = MultiPoly::from_terms(2, [(vec![2, 0], int(1)), (vec![0, 2], int(1)), (vec![0, 0], int(-1))]);
        let sys = FloatSystem::from_polys(&[p]);
        let out = damped_newton(&sys, vec![3.0, 1.0], 50, 1e-12, 20);
        assert!(out.converged);
        assert!((out.x[0].hypot(out.x[1]) - 1.0).abs() < 1e-10);
    }
}
