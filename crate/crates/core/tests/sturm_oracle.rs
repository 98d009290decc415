use algzero::groebner::sturm::{count_real_roots, Range, UniPoly};
use algzero::scalar::{int, ratio, to_f64, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mul(a: &[Rational], b: &[Rational]) -> UniPoly {
    let mut out = vec![int(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Products of linear factors with known rational roots (some repeated)
/// and positive-definite quadratics.
#[test]
fn counts_match_constructed_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let mut p: UniPoly = vec![int(rng.random_range(1..=5) * if rng.random_bool(0.5) { 1 } else { -1 })];
        let mut roots: Vec<Rational> = Vec::new();
        let mut degree = 0;
        while degree < 8 && rng.random_bool(0.8) {
            if rng.random_bool(0.6) {
                let r = if !roots.is_empty() && rng.random_bool(0.2) {
                    roots[rng.random_range(0..roots.len())].clone()
                } else {
                    ratio(rng.random_range(-20..=20), rng.random_range(1..=4))
                };
                p = mul(&p, &[-r.clone(), int(1)]);
                roots.push(r);
                degree += 1;
            } else if degree <= 6 {
                // x² + bx + c with b² < 4c
                let b = rng.random_range(-4..=4);
                let c = b * b / 4 + rng.random_range(1..=5);
                p = mul(&p, &[int(c), int(b), int(1)]);
                degree += 2;
            }
        }
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(count_real_roots(&p, &Range::Whole), Some(distinct.len()), "{p:?}");
        let (lo, hi) = (int(-1), ratio(5, 2));
        let inside = distinct.iter().filter(|r| **r > lo && **r <= hi).count();
        assert_eq!(count_real_roots(&p, &Range::Interval(lo, hi)), Some(inside), "{p:?}");
    }
}

fn eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

fn bisect(p: &[f64], mut a: f64, mut b: f64) -> f64 {
    let sa = eval(p, a).signum();
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if eval(p, m).signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn magnitude(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x.abs() + c.abs())
}

/// Real roots in `(a, b)` located by Rolle: between consecutive critical
/// points the polynomial is monotone, so a sign change brackets exactly
/// one root. A critical point where `p` vanishes to rounding is a
/// multiple root.
fn isolate(p: &[f64], a: f64, b: f64) -> Vec<f64> {
    if p.len() <= 1 {
        return Vec::new();
    }
    let critical = isolate(&derivative(p), a, b);
    let touching: Vec<f64> = critical.iter().copied().filter(|&c| eval(p, c).abs() <= 1e-12 * magnitude(p, c.abs().max(1.0))).collect();
    let mut breaks = vec![a];
    breaks.extend(critical.iter().copied().filter(|c| !touching.contains(c)));
    breaks.push(b);
    let mut roots = touching.clone();
    for w in breaks.windows(2) {
        let (fa, fb) = (eval(p, w[0]), eval(p, w[1]));
        if fa * fb < 0.0 && !touching.iter().any(|&t| t > w[0] && t < w[1]) {
            roots.push(bisect(p, w[0], w[1]));
        }
    }
    roots
}

fn cauchy_bound(p: &[f64]) -> f64 {
    let lead = p.last().unwrap().abs();
    1.0 + p[..p.len() - 1].iter().map(|c| c.abs() / lead).fold(0.0, f64::max)
}

#[test]
fn counts_match_bisection_isolator() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let degree = rng.random_range(1..=8);
        let mut p: UniPoly = (0..=degree).map(|_| ratio(rng.random_range(-30..=30), rng.random_range(1..=6))).collect();
        if p[degree] == int(0) {
            p[degree] = int(1);
        }
        let pf: Vec<f64> = p.iter().map(to_f64).collect();
        let b = cauchy_bound(&pf);
        let oracle = isolate(&pf, -b, b).len();
        assert_eq!(count_real_roots(&p, &Range::Whole), Some(oracle), "{p:?}");
    }
}

#[test]
fn quartic_without_real_roots() {
    let q: UniPoly = [216, 324, -927, -148, 2578].iter().map(|&c| int(c)).collect();
    assert_eq!(count_real_roots(&q, &Range::Whole), Some(0));
    let qf: Vec<f64> = q.iter().map(to_f64).collect();
    assert!(isolate(&qf, -cauchy_bound(&qf), cauchy_bound(&qf)).is_empty());
}
