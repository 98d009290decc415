//! Zero finding on scalarized systems and at the algebra level.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::config::SolveConfig;
use super::homotopy::{bezout_count, dedup_points, track_paths, PathEnd, PathStatus};
use super::newton::{conditioning, damped_newton};
use super::system::FloatSystem;
use super::verdict::{certify_nondegenerate, theorem_verdicts, TheoremVerdict};
use crate::algebra::Subspace;
use crate::error::{Error, Result};
use crate::groebner::{certify_no_real_zero, Certificate};
use crate::poly::{scalarize, MultiPoly, ScalarizedSystem};
use crate::polymap::PolynomialMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Homotopy,
    Newton,
    #[default]
    Auto,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Method, String> {
        match s {
            "homotopy" => Ok(Method::Homotopy),
            "newton" => Ok(Method::Newton),
            "auto" => Ok(Method::Auto),
            _ => Err(format!("unknown method '{s}' (homotopy, newton, auto)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoundZero {
    /// One coordinate vector per argument: ambient algebra coordinates at
    /// the algebra level, scalar variables otherwise.
    pub point: Vec<Vec<f64>>,
    /// `maxᵢ ‖pᵢ(a)‖`.
    pub residual: f64,
    /// The Jacobian is rank deficient here, so the zero may lie on a
    /// positive-dimensional set.
    pub rank_deficient: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Endpoint {
    pub index: usize,
    pub status: PathStatus,
    pub point: Vec<[f64; 2]>,
    pub residual: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct PathStats {
    pub converged: usize,
    pub diverged: usize,
    pub singular_endpoint: usize,
    pub failed: usize,
    pub endpoints: Vec<Endpoint>,
}

impl PathStats {
    fn from_paths(paths: &[PathEnd]) -> PathStats {
        let count = |s| paths.iter().filter(|p| p.status == s).count();
        PathStats {
            converged: count(PathStatus::Converged),
            diverged: count(PathStatus::Diverged),
            singular_endpoint: count(PathStatus::SingularEndpoint),
            failed: count(PathStatus::Failed),
            endpoints: paths
                .iter()
                .map(|p| Endpoint {
                    index: p.index,
                    status: p.status,
                    point: p.x.iter().map(|z| [z.re, z.im]).collect(),
                    residual: p.residual,
                    steps: p.steps,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub method: Method,
    pub seed: u64,
    pub zeros: Vec<FoundZero>,
    /// Distinct finite complex solutions of the scalar system, when the
    /// homotopy ran.
    pub complex_solutions: Vec<Vec<[f64; 2]>>,
    pub paths: Option<PathStats>,
    pub bezout_count: Option<u128>,
    pub starts: usize,
    pub verdicts: Vec<TheoremVerdict>,
    /// Non-degeneracy evidence for the leading forms.
    pub nondegeneracy: Option<Value>,
    /// Exact nonexistence evidence when no zero was found.
    pub nonexistence: Option<Value>,
    pub notes: Vec<String>,
}

impl SolveReport {
    fn empty(method: Method, seed: u64) -> SolveReport {
        SolveReport {
            method,
            seed,
            zeros: Vec::new(),
            complex_solutions: Vec::new(),
            paths: None,
            bezout_count: None,
            starts: 0,
            verdicts: Vec::new(),
            nondegeneracy: None,
            nonexistence: None,
            notes: Vec::new(),
        }
    }

    /// True when an exact certificate shows there is no real zero.
    pub fn certified_nonexistence(&self) -> bool {
        self.nonexistence.as_ref().is_some_and(|v| v["kind"] == "NoRealZero")
    }
}

/// Typical root magnitude, from the ratio of all coefficients to the
/// top-degree ones.
fn start_scale(polys: &[MultiPoly]) -> f64 {
    let mut scale: f64 = 1.0;
    for p in polys {
        let Some(d) = p.total_degree().filter(|&d| d > 0) else { continue };
        let top = p.homogeneous_part(d).max_abs_coeff();
        let all = p.max_abs_coeff();
        if top > 0.0 {
            scale = scale.max((all / top).powf(1.0 / d as f64));
        }
    }
    scale.min(1e3)
}

fn dedup_real(points: Vec<Vec<f64>>, tol: f64) -> Vec<Vec<f64>> {
    let complex = points.into_iter().map(|p| p.into_iter().map(|x| Complex64::new(x, 0.0)).collect()).collect();
    dedup_points(complex, tol).into_iter().map(|p| p.into_iter().map(|z| z.re).collect()).collect()
}

fn scalar_zero(sys: &FloatSystem, x: Vec<f64>) -> FoundZero {
    let rank_deficient = sys.len() < sys.nvars() || conditioning(&sys.jacobian(&x)) < 1e-8;
    FoundZero { residual: sys.residual(&x), point: vec![x], rank_deficient }
}

fn multistart_points(polys: &[MultiPoly], cfg: &SolveConfig) -> Vec<Vec<f64>> {
    let sys = FloatSystem::from_polys(polys);
    let n = sys.nvars();
    let scale = start_scale(polys);
    let found: Vec<Option<Vec<f64>>> = (0..cfg.n_starts)
        .into_par_iter()
        .map(|k| {
            let mut rng = cfg.rng(k as u64);
            let x0: Vec<f64> = (0..n).map(|_| scale * rng.sample::<f64, _>(StandardNormal)).collect();
            let out = damped_newton(&sys, x0, cfg.max_newton_iters, cfg.tol_residual, cfg.max_halvings);
            (out.converged && out.residual <= cfg.tol_residual).then_some(out.x)
        })
        .collect();
    dedup_real(found.into_iter().flatten().collect(), cfg.tol_dedup)
}

/// Damped Newton from `n_starts` Gaussian starts. Never claims that a
/// system has no zero.
pub fn solve_real_multistart(sys: &ScalarizedSystem, cfg: &SolveConfig) -> SolveReport {
    let fs = FloatSystem::from_polys(&sys.polys);
    let mut report = SolveReport::empty(Method::Newton, cfg.seed);
    report.starts = cfg.n_starts;
    report.zeros = multistart_points(&sys.polys, cfg).into_iter().map(|x| scalar_zero(&fs, x)).collect();
    if report.zeros.iter().any(|z| z.rank_deficient) {
        report.notes.push("rank-deficient Jacobian at a zero: the solution set is possibly positive-dimensional".into());
    }
    report
}

struct HomotopyOutcome {
    paths: Vec<PathEnd>,
    complex: Vec<Vec<Complex64>>,
    real: Vec<Vec<f64>>,
}

fn homotopy_real(polys: &[MultiPoly], cfg: &SolveConfig) -> Result<HomotopyOutcome> {
    let sys = FloatSystem::from_polys(polys);
    let paths = track_paths(&sys, cfg)?;
    let finite: Vec<Vec<Complex64>> = paths
        .iter()
        .filter(|p| matches!(p.status, PathStatus::Converged | PathStatus::SingularEndpoint))
        .map(|p| p.x.clone())
        .collect();
    let complex = dedup_points(finite, cfg.tol_dedup);
    let mut real = Vec::new();
    for z in &complex {
        let near_real = z.iter().all(|c| c.im.abs() <= cfg.real_filter_tol * (1.0 + c.norm()));
        if !near_real {
            continue;
        }
        // one more polish in real arithmetic
        let x: Vec<f64> = z.iter().map(|c| c.re).collect();
        let out = damped_newton(&sys, x, cfg.max_newton_iters, 0.0, cfg.max_halvings);
        if out.residual <= cfg.tol_residual * sys.coefficient_scale().max(1.0) {
            real.push(out.x);
        }
    }
    Ok(HomotopyOutcome { paths, complex, real: dedup_real(real, cfg.tol_dedup) })
}

/// Tracks `Π dᵢ` paths of the total-degree homotopy and reports every
/// finite solution; real ones are listed as zeros.
pub fn solve_complex_total_degree(sys: &ScalarizedSystem, cfg: &SolveConfig) -> Result<SolveReport> {
    let fs = FloatSystem::from_polys(&sys.polys);
    let out = homotopy_real(&sys.polys, cfg)?;
    let mut report = SolveReport::empty(Method::Homotopy, cfg.seed);
    report.bezout_count = Some(bezout_count(&fs.degrees()));
    report.paths = Some(PathStats::from_paths(&out.paths));
    report.complex_solutions = out.complex.iter().map(|p| p.iter().map(|z| [z.re, z.im]).collect()).collect();
    report.zeros = out.real.into_iter().map(|x| scalar_zero(&fs, x)).collect();
    Ok(report)
}

/// Looks for a common zero of `maps` on `ℋⁿ`, with images in `ℋ′`.
/// Zeros are verified by evaluating the maps themselves; existence
/// verdicts and, when nothing is found, a nonexistence certificate are
/// attached.
pub fn find_common_zero(maps: &[PolynomialMap], h: &Subspace, target: &Subspace, method: Method, cfg: &SolveConfig) -> Result<SolveReport> {
    cfg.validate().map_err(Error::GuardExceeded)?;
    let sys = scalarize(maps, h, target)?;
    let fs = FloatSystem::from_polys(&sys.polys);
    let mut report = SolveReport::empty(method, cfg.seed);
    if target.dim() > h.dim() {
        report.notes.push(format!(
            "image subspace has dimension {} > {}: the existence results do not apply",
            target.dim(),
            h.dim()
        ));
    }
    let square = fs.len() == fs.nvars();
    let degrees = fs.degrees();
    let bezout = square.then(|| bezout_count(&degrees));
    report.bezout_count = bezout;

    let mut points: Vec<Vec<f64>> = Vec::new();
    if matches!(method, Method::Newton | Method::Auto) {
        report.starts = cfg.n_starts;
        points.extend(multistart_points(&sys.polys, cfg));
    }
    let homotopy_allowed = square && degrees.iter().all(|&d| d > 0) && bezout.is_some_and(|b| b <= cfg.homotopy.max_paths as u128);
    let run_homotopy = match method {
        Method::Homotopy => true,
        Method::Auto => points.is_empty() && homotopy_allowed,
        Method::Newton => false,
    };
    if run_homotopy {
        let out = homotopy_real(&sys.polys, cfg)?;
        report.paths = Some(PathStats::from_paths(&out.paths));
        report.complex_solutions = out.complex.iter().map(|p| p.iter().map(|z| [z.re, z.im]).collect()).collect();
        points.extend(out.real);
    } else if method == Method::Auto && points.is_empty() {
        report.notes.push("homotopy skipped: system is not square or has too many paths".into());
    }
    let points = dedup_real(points, cfg.tol_dedup);

    for lam in points {
        let args: Vec<Vec<f64>> = (0..sys.atlas.nargs)
            .map(|l| h.combine_f64(&(0..h.dim()).map(|k| lam[sys.atlas.index(k, l)]).collect::<Vec<_>>()))
            .collect();
        let mut residual: f64 = 0.0;
        for m in maps {
            let v = m.evaluate_f64(&args)?;
            residual = residual.max(v.iter().map(|x| x * x).sum::<f64>().sqrt());
        }
        if residual <= cfg.verify_tol {
            let rank_deficient = fs.len() < fs.nvars() || conditioning(&fs.jacobian(&lam)) < 1e-8;
            report.zeros.push(FoundZero { point: args, residual, rank_deficient });
        }
    }
    if report.zeros.iter().any(|z| z.rank_deficient) {
        report.notes.push("rank-deficient Jacobian at a zero: the solution set is possibly positive-dimensional".into());
    }

    let nondeg = certify_nondegenerate(maps, h, target, cfg.seed);
    report.verdicts = theorem_verdicts(maps, h, target, &nondeg);
    report.nondegeneracy = Some(nondeg.to_json(&sys.names()));
    if report.zeros.is_empty() && cfg.certify_when_empty {
        let cert = certify_no_real_zero(&sys);
        if matches!(cert, Certificate::NoRealZero { .. }) {
            report.notes.push("certified: the system has no real zero".into());
        } else {
            report.notes.push("no zero found; this is not a proof of nonexistence".into());
        }
        report.nonexistence = Some(cert.to_json(&sys.names()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn cube_plus_one() {
        let p = MultiPoly::from_terms(1, [(vec![3], int(1)), (vec![0], int(1))]);
        let r = solve_real_multistart(&ScalarizedSystem::from_polys(vec![p]), &SolveConfig::default());
        assert!(r.zeros.iter().any(|z| (z.point[0][0] + 1.0).abs() < 1e-10));
    }

    #[test]
    fn homotopy_reports_complex_and_real() {
        let p = MultiPoly::from_terms(1, [(vec![2], int(1)), (vec![0], int(1))]);
        let r = solve_complex_total_degree(&ScalarizedSystem::from_polys(vec![p]), &SolveConfig::default()).unwrap();
        assert!(r.zeros.is_empty());
        assert_eq!(r.complex_solutions.len(), 2);
        let p = MultiPoly::from_terms(1, [(vec![2], int(1)), (vec![0], int(-1))]);
        let r = solve_complex_total_degree(&ScalarizedSystem::from_polys(vec![p]), &SolveConfig::default()).unwrap();
        let mut xs: Vec<f64> = r.zeros.iter().map(|z| z.point[0][0]).collect();
        xs.sort_by(f64::total_cmp);
        assert!((xs[0] + 1.0).abs() < 1e-12 && (xs[1] - 1.0).abs() < 1e-12);
        assert_eq!(r.bezout_count, Some(2));
    }

    #[test]
    fn method_names() {
        assert_eq!("auto".parse::<Method>().unwrap(), Method::Auto);
        assert!("bogus".parse::<Method>().is_err());
    }
}
