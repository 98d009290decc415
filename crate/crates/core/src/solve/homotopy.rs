//! Total-degree homotopy continuation over ℂ.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::config::SolveConfig;
use super::newton::{conditioning, damped_newton};
use super::system::{pow, FloatPoly, FloatSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathStatus {
    Converged,
    Diverged,
    SingularEndpoint,
    /// Step size fell below the minimum or the step budget ran out.
    Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathEnd {
    pub index: usize,
    pub status: PathStatus,
    pub x: Vec<Complex64>,
    pub residual: f64,
    pub steps: usize,
    /// Smallest over largest singular value of the Jacobian at the end.
    pub conditioning: f64,
}

/// Product of the degrees, saturating.
pub fn bezout_count(degrees: &[u32]) -> u128 {
    degrees.iter().fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
}

fn check_square(target: &FloatSystem) -> Result<Vec<u32>> {
    if target.len() != target.nvars() {
        return Err(Error::NotSquare { polys: target.len(), vars: target.nvars() });
    }
    let degrees = target.degrees();
    if let Some(i) = degrees.iter().position(|&d| d == 0) {
        return Err(Error::ZeroDegree(i));
    }
    Ok(degrees)
}

fn start_point(mut index: usize, degrees: &[u32]) -> Vec<Complex64> {
    degrees
        .iter()
        .map(|&d| {
            let k = index % d as usize;
            index /= d as usize;
            Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / d as f64)
        })
        .collect()
}

/// The homotopy in projective coordinates `X = (x, x₀)` restricted to a
/// random affine chart `a·X = 1`, so that paths going to infinity stay
/// bounded.
struct Homotopy<'a> {
    target: &'a FloatSystem,
    /// Homogenized target plus the chart equation.
    projective: FloatSystem,
    degrees: &'a [u32],
    gamma: Complex64,
    chart: Vec<Complex64>,
}

impl<'a> Homotopy<'a> {
    fn new(target: &'a FloatSystem, degrees: &'a [u32], cfg: &SolveConfig) -> Homotopy<'a> {
        let n = target.nvars();
        let mut rng = cfg.rng(u64::MAX - 1);
        let chart: Vec<Complex64> = (0..=n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let mut polys: Vec<FloatPoly> = target.polys().iter().zip(degrees).map(|(p, &d)| p.homogenized(d)).collect();
        let mut lin: Vec<(Vec<u32>, Complex64)> = chart
            .iter()
            .enumerate()
            .map(|(v, a)| {
                let mut e = vec![0; n + 1];
                e[v] = 1;
                (e, *a)
            })
            .collect();
        lin.push((vec![0; n + 1], Complex64::new(-1.0, 0.0)));
        polys.push(FloatPoly::from_terms(n + 1, lin));
        Homotopy { target, projective: FloatSystem::new(n + 1, polys), degrees, gamma: cfg.gamma(), chart }
    }

    fn n(&self) -> usize {
        self.degrees.len()
    }

    fn start_point(&self, index: usize) -> DVector<Complex64> {
        let mut x = start_point(index, self.degrees);
        x.push(Complex64::new(1.0, 0.0));
        let s: Complex64 = x.iter().zip(&self.chart).map(|(a, b)| a * b).sum();
        DVector::from_iterator(x.len(), x.into_iter().map(|z| z / s))
    }

    fn start_value(&self, x: &[Complex64]) -> DVector<Complex64> {
        let x0 = x[self.n()];
        DVector::from_iterator(self.n(), x.iter().zip(self.degrees).map(|(xi, &d)| pow(*xi, d) - pow(x0, d)))
    }

    fn value(&self, x: &[Complex64], t: f64) -> DVector<Complex64> {
        let n = self.n();
        let mut v = self.projective.eval(x) * Complex64::new(t, 0.0);
        let g = self.start_value(x);
        for i in 0..n {
            v[i] += g[i] * self.gamma * (1.0 - t);
        }
        v[n] = self.chart.iter().zip(x).map(|(a, b)| a * b).sum::<Complex64>() - 1.0;
        v
    }

    fn dx(&self, x: &[Complex64], t: f64) -> DMatrix<Complex64> {
        let n = self.n();
        let mut j = self.projective.jacobian(x) * Complex64::new(t, 0.0);
        let x0 = x[n];
        for (i, (xi, &d)) in x.iter().zip(self.degrees).enumerate() {
            let w = self.gamma * (1.0 - t) * d as f64;
            j[(i, i)] += w * pow(*xi, d - 1);
            j[(i, n)] -= w * pow(x0, d - 1);
        }
        for (c, a) in self.chart.iter().enumerate() {
            j[(n, c)] = *a;
        }
        j
    }

    fn dt(&self, x: &[Complex64]) -> DVector<Complex64> {
        let n = self.n();
        let mut v = self.projective.eval(x);
        let g = self.start_value(x);
        for i in 0..n {
            v[i] -= g[i] * self.gamma;
        }
        v[n] = Complex64::new(0.0, 0.0);
        v
    }
}

fn norm(x: &DVector<Complex64>) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// A path that stalls close to `t = 1` while `|x₀| / ‖X‖` keeps shrinking
/// is approaching a singular point at infinity.
fn heading_to_infinity(history: &[(f64, f64)], remaining: f64, ratio: f64) -> bool {
    if remaining > 1e-4 || ratio > 0.05 {
        return false;
    }
    history
        .iter()
        .rev()
        .find(|(r, _)| *r >= 1e4 * remaining)
        .is_some_and(|(_, earlier)| ratio < 0.7 * earlier)
}

fn track(h: &Homotopy, index: usize, cfg: &SolveConfig) -> PathEnd {
    let hc = &cfg.homotopy;
    let n = h.n();
    let mut x = h.start_point(index);
    let mut t = 0.0f64;
    let mut dt = hc.dt_init;
    let mut successes = 0;
    let mut steps = 0;
    let affine = |x: &DVector<Complex64>| -> Vec<Complex64> {
        let x0 = x[n];
        if x0.norm() == 0.0 {
            x.as_slice()[..n].to_vec()
        } else {
            x.as_slice()[..n].iter().map(|z| z / x0).collect()
        }
    };
    let ratio = |x: &DVector<Complex64>| x[n].norm() / norm(x);
    let at_infinity = |x: &DVector<Complex64>, tol: f64| ratio(x) <= tol;
    let mut history: Vec<(f64, f64)> = Vec::new();
    let end = |status, x: &DVector<Complex64>, steps| PathEnd {
        index,
        status,
        x: affine(x),
        residual: f64::INFINITY,
        steps,
        conditioning: 0.0,
    };
    while t < 1.0 {
        if steps >= hc.max_steps {
            return end(PathStatus::Failed, &x, steps);
        }
        steps += 1;
        let step = dt.min(1.0 - t);
        let t1 = if step == 1.0 - t { 1.0 } else { t + step };
        // Euler predictor
        let predicted = h.dx(x.as_slice(), t).lu().solve(&(-h.dt(x.as_slice()))).map(|v| &x + v * Complex64::new(step, 0.0));
        let mut ok = false;
        let mut y = predicted.clone().unwrap_or_else(|| x.clone());
        if let Some(p) = &predicted {
            // the corrector must contract and stay near the prediction,
            // otherwise the step may have jumped to another path
            let mut last = f64::INFINITY;
            for _ in 0..3 {
                let Some(delta) = h.dx(y.as_slice(), t1).lu().solve(&h.value(y.as_slice(), t1)) else { break };
                let dn = norm(&delta);
                if dn > 0.5 * last {
                    break;
                }
                last = dn;
                y -= &delta;
                if norm(&(&y - p)) > 0.1 * (1.0 + norm(p)) {
                    break;
                }
                if dn <= hc.track_tol * (1.0 + norm(&y)) {
                    ok = y.iter().all(|z| z.re.is_finite() && z.im.is_finite());
                    break;
                }
            }
        }
        if ok {
            x = y;
            t = t1;
            history.push((1.0 - t, ratio(&x)));
            successes += 1;
            if successes >= 3 {
                dt = (dt * 2.0).min(0.2);
                successes = 0;
            }
            if norm(&x) > hc.divergence {
                return end(PathStatus::Failed, &x, steps);
            }
        } else {
            dt /= 2.0;
            successes = 0;
            if dt < hc.dt_min {
                let status = if at_infinity(&x, 1e-3) || heading_to_infinity(&history, 1.0 - t, ratio(&x)) {
                    PathStatus::Diverged
                } else {
                    PathStatus::Failed
                };
                return end(status, &x, steps);
            }
        }
    }
    let x = DVector::from_vec(damped_newton(&h.projective, x.as_slice().to_vec(), cfg.max_newton_iters, 0.0, cfg.max_halvings).x);
    if at_infinity(&x, 1e-8) {
        return end(PathStatus::Diverged, &x, steps);
    }
    let polished = damped_newton(h.target, affine(&x), cfg.max_newton_iters, 0.0, cfg.max_halvings);
    let x = DVector::from_vec(polished.x);
    let residual = h.target.residual(x.as_slice());
    let scale = h.target.coefficient_scale().max(1.0);
    let cond = conditioning(&h.target.jacobian(x.as_slice()));
    let status = if norm(&x) > hc.divergence {
        PathStatus::Diverged
    } else if residual <= 1e-8 * scale * (1.0 + norm(&x)).powi(h.degrees.iter().copied().max().unwrap_or(1) as i32) {
        if cond > 1e-10 {
            PathStatus::Converged
        } else {
            PathStatus::SingularEndpoint
        }
    } else {
        PathStatus::Failed
    };
    PathEnd { index, status, x: x.as_slice().to_vec(), residual, steps, conditioning: cond }
}

/// Tracks all `Π dᵢ` paths from `xᵢ^{dᵢ} = 1` to `target`.
pub fn track_paths(target: &FloatSystem, cfg: &SolveConfig) -> Result<Vec<PathEnd>> {
    let degrees = check_square(target)?;
    let count = bezout_count(&degrees);
    if count > cfg.homotopy.max_paths as u128 {
        return Err(Error::GuardExceeded(format!("{count} paths exceed the limit of {}", cfg.homotopy.max_paths)));
    }
    let h = Homotopy::new(target, &degrees, cfg);
    Ok((0..count as usize).into_par_iter().map(|i| track(&h, i, cfg)).collect())
}

/// Sorts points and merges those within `tol` in the max norm.
pub fn dedup_points(mut points: Vec<Vec<Complex64>>, tol: f64) -> Vec<Vec<Complex64>> {
    points.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut kept: Vec<Vec<Complex64>> = Vec::new();
    for p in points {
        let close = kept.iter().any(|q| q.iter().zip(&p).all(|(a, b)| (a - b).norm() <= tol));
        if !close {
            kept.push(p);
        }
    }
    kept
}

/// Distinct finite solutions reached by converged or singular paths.
pub fn finite_solutions(paths: &[PathEnd], tol: f64) -> Vec<Vec<Complex64>> {
    let pts = paths
        .iter()
        .filter(|p| matches!(p.status, PathStatus::Converged | PathStatus::SingularEndpoint))
        .map(|p| p.x.clone())
        .collect();
    dedup_points(pts, tol)
}

/// Roots of `Σ c_k x^k` (lowest degree first), with multiplicity by path.
pub fn univariate_roots(coeffs: &[Complex64], cfg: &SolveConfig) -> Result<Vec<Complex64>> {
    let terms = coeffs.iter().enumerate().map(|(k, c)| (vec![k as u32], *c));
    let sys = FloatSystem::new(1, vec![FloatPoly::from_terms(1, terms)]);
    let paths = track_paths(&sys, cfg)?;
    Ok(paths.into_iter().filter(|p| p.status != PathStatus::Diverged && p.status != PathStatus::Failed).map(|p| p.x[0]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MultiPoly;
    use crate::scalar::int;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_roots() {
        let cfg = SolveConfig::default();
        let mut r = univariate_roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], &cfg).unwrap();
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-10 && (r[1] - c(1.0, 0.0)).norm() < 1e-10);
        let mut r = univariate_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], &cfg).unwrap();
        r.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-10 && (r[1] - c(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn two_by_two_system() {
        // x² + y² − 5, x y − 2: four solutions (±1, ±2), (±2, ±1)
        let p = MultiPoly::from_terms(2, [(vec![2, 0], int(1)), (vec![0, 2], int(1)), (vec![0, 0], int(-5))]);
        let q = MultiPoly::from_terms(2, [(vec![1, 1], int(1)), (vec![0, 0], int(-2))]);
        let sys = FloatSystem::from_polys(&[p, q]);
        let paths = track_paths(&sys, &SolveConfig::default()).unwrap();
        assert_eq!(paths.len(), 4);
        let sols = finite_solutions(&paths, 1e-6);
        assert_eq!(sols.len(), 4);
        for s in &sols {
            assert!(sys.residual(s) < 1e-10);
        }
    }

    #[test]
    fn paths_to_infinity() {
        // x y − 1, x − 2: Bézout 2, one finite solution
        let p = MultiPoly::from_terms(2, [(vec![1, 1], int(1)), (vec![0, 0], int(-1))]);
        let q = MultiPoly::from_terms(2, [(vec![1, 0], int(1)), (vec![0, 0], int(-2))]);
        let sys = FloatSystem::from_polys(&[p, q]);
        let paths = track_paths(&sys, &SolveConfig::default()).unwrap();
        let sols = finite_solutions(&paths, 1e-6);
        assert_eq!(sols.len(), 1);
        assert!((sols[0][1] - c(0.5, 0.0)).norm() < 1e-10);
        let lost = paths.iter().filter(|p| p.status != PathStatus::Converged).count();
        assert_eq!(lost, 1, "{paths:?}");
    }

    #[test]
    fn errors() {
        let p = MultiPoly::var(2, 0);
        assert!(matches!(track_paths(&FloatSystem::from_polys(&[p]), &SolveConfig::default()), Err(Error::NotSquare { .. })));
        let k = MultiPoly::constant(1, int(3));
        assert!(matches!(track_paths(&FloatSystem::from_polys(&[k]), &SolveConfig::default()), Err(Error::ZeroDegree(0))));
    }

    #[test]
    fn deterministic() {
        let coeffs = [c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0), c(2.0, 0.0)];
        let a = univariate_roots(&coeffs, &SolveConfig::with_seed(9)).unwrap();
        let b = univariate_roots(&coeffs, &SolveConfig::with_seed(9)).unwrap();
        assert_eq!(a, b);
    }
}
