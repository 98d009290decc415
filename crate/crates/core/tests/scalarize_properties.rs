use std::sync::{Arc, LazyLock};

use algzero::algebra::{hermitian_subspace, Algebra, BuiltinSpec, Element, Field, Subspace};
use algzero::parser::{parse_map, print_map};
use algzero::poly::{expand, scalarize, MultiPoly};
use algzero::polymap::sample;
use algzero::scalar::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static ALGEBRAS: LazyLock<Vec<Arc<Algebra>>> = LazyLock::new(|| {
    vec![
        Arc::new(BuiltinSpec::Quaternions.build().unwrap()),
        Arc::new(BuiltinSpec::Octonions.build().unwrap()),
        Arc::new(BuiltinSpec::Matrix { m: 2, field: Field::Real }.build().unwrap()),
    ]
});

fn add(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Scalarized polynomials evaluated at the coordinates of a point agree
/// with evaluating the map in the algebra.
#[test]
fn scalarization_commutes_with_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..1000 {
        let alg = &ALGEBRAS[trial % 3];
        let nvars = rng.random_range(1..=2);
        let p = sample::map(alg, &mut rng, nvars, 3, 3, 3);
        let full = Subspace::full(alg);
        let sys = scalarize(std::slice::from_ref(&p), &full, &full).unwrap();
        let args: Vec<Vec<Rational>> = (0..nvars).map(|_| sample::element(alg, &mut rng, 4)).collect();
        let mut lambda = vec![Rational::default(); sys.nvars()];
        for (l, a) in args.iter().enumerate() {
            for (k, c) in a.iter().enumerate() {
                lambda[sys.atlas.index(k, l)] = c.clone();
            }
        }
        let scalar: Vec<Rational> = sys.polys.iter().map(|f| f.eval(&lambda).unwrap()).collect();
        let direct = p.evaluate(&args.iter().cloned().map(Element::new).collect::<Vec<_>>()).unwrap();
        assert_eq!(scalar, direct.coords, "trial {trial}: {}", print_map(&p));
    }
}

#[test]
fn hermitian_scalarization_commutes_with_evaluation() {
    let alg = Arc::new(BuiltinSpec::ComplexMatrixAsReal { m: 2 }.build().unwrap());
    let h = hermitian_subspace(&alg, 2).unwrap();
    let p = parse_map("x*x*x + x", alg.clone(), 1).unwrap();
    let sys = scalarize(std::slice::from_ref(&p), &h, &h).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let lambda: Vec<Rational> = (0..h.dim()).map(|_| sample::rational(&mut rng, 5)).collect();
        let x = h.combine(&lambda);
        let y = p.evaluate(&[Element::new(x)]).unwrap();
        let coords: Vec<Rational> = sys.polys.iter().map(|f| f.eval(&lambda).unwrap()).collect();
        assert_eq!(h.combine(&coords), y.coords);
    }
}

#[test]
fn homogeneous_components_are_multi_homogeneous() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..120 {
        let alg = &ALGEBRAS[trial % 3];
        // two octonion variables of degree 4 make the expansions large
        let nvars = if alg.dim() > 4 { 1 } else { 2 };
        let p = sample::map(alg, &mut rng, nvars, 4, 4, 3);
        let full = Subspace::full(alg);
        let dec = p.decompose();
        for (d, part) in &dec.components {
            for f in expand(part, &full) {
                if !f.is_zero() {
                    assert!(f.is_homogeneous() && f.total_degree() == Some(*d as u32), "{f} in degree {d}");
                }
            }
        }
        let summed = dec
            .components
            .values()
            .fold(vec![MultiPoly::zero(nvars * alg.dim()); alg.dim()], |acc, part| add(&acc, &expand(part, &full)));
        assert_eq!(summed, expand(&p, &full));
        if let Some(d) = dec.degree {
            assert_eq!(dec.leading_form, dec.components[&d]);
        }
    }
}

#[test]
fn printing_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..300 {
        let alg = &ALGEBRAS[trial % 3];
        let nvars = rng.random_range(1..=3);
        let p = sample::map(alg, &mut rng, nvars, 3, 4, 4);
        let text = print_map(&p);
        let back = parse_map(&text, alg.clone(), nvars).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert!(back.same_map(&p), "{text}");
        // printing a parsed map is a fixed point
        let again = print_map(&back);
        assert_eq!(parse_map(&again, alg.clone(), nvars).unwrap(), back, "{again}");
    }
}
