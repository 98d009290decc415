use algzero::solve::{dedup_points, track_paths, univariate_roots, FloatPoly, FloatSystem, PathStatus, SolveConfig};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn companion_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    m.schur().eigenvalues().expect("triangular Schur form").iter().copied().collect()
}

/// Greedy matching; returns the largest distance between partners.
fn match_multisets(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
    let mut pool: Vec<Complex64> = b.to_vec();
    let mut worst: f64 = 0.0;
    for x in a {
        let (k, d) = pool.iter().enumerate().map(|(k, y)| (k, (x - y).norm())).min_by(|p, q| p.1.total_cmp(&q.1)).unwrap();
        worst = worst.max(d);
        pool.swap_remove(k);
    }
    worst
}

#[test]
fn univariate_roots_match_companion_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let cfg = SolveConfig::with_seed(4);
    for trial in 0..50 {
        let degree = rng.random_range(1..=5);
        let coeffs: Vec<Complex64> =
            (0..=degree).map(|_| Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))).collect();
        let homotopy = univariate_roots(&coeffs, &cfg).unwrap();
        let oracle = companion_roots(&coeffs);
        let err = match_multisets(&homotopy, &oracle);
        assert!(err <= 1e-8, "trial {trial}: error {err}");
    }
}

#[test]
fn generic_dense_systems_reach_every_solution() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let cfg = SolveConfig::with_seed(9);
    for (n, d) in [(2, 2), (2, 3), (3, 2)] {
        let polys: Vec<FloatPoly> = (0..n)
            .map(|_| {
                let mut terms = Vec::new();
                for_each_monomial(n, d, &mut |e| {
                    terms.push((e.to_vec(), Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))));
                });
                FloatPoly::from_terms(n, terms)
            })
            .collect();
        let sys = FloatSystem::new(n, polys);
        let paths = track_paths(&sys, &cfg).unwrap();
        let expected = (d as usize).pow(n as u32);
        assert_eq!(paths.len(), expected);
        let converged: Vec<_> = paths.iter().filter(|p| p.status == PathStatus::Converged).collect();
        assert_eq!(converged.len(), expected, "{n} variables, degree {d}");
        for p in &converged {
            assert!(sys.residual(&p.x) <= 1e-8);
        }
        let distinct = dedup_points(converged.iter().map(|p| p.x.clone()).collect(), 1e-6).len();
        assert_eq!(distinct, expected);
    }
}

fn for_each_monomial(n: usize, d: u32, f: &mut impl FnMut(&[u32])) {
    fn rec(e: &mut Vec<u32>, v: usize, left: u32, f: &mut impl FnMut(&[u32])) {
        if v == e.len() {
            f(e);
            return;
        }
        for k in 0..=left {
            e[v] = k;
            rec(e, v + 1, left - k, f);
        }
        e[v] = 0;
    }
    rec(&mut vec![0; n], 0, d, f);
}
