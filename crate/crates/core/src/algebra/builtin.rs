use std::str::FromStr;

use num_traits::{One, Zero};

use super::{Algebra, AlgebraKind, Element, Entry, Field};
use crate::error::{Error, Result};
use crate::scalar::{int, to_f64, Rational};

/// The builtin algebra catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinSpec {
    Reals,
    /// ℂ viewed as a 2-dimensional real algebra.
    ComplexAsReal,
    Quaternions,
    /// Built from ℍ by Cayley–Dickson doubling.
    Octonions,
    /// `m × m` matrices over ℝ or ℂ, basis of matrix units `E_rc`.
    Matrix { m: usize, field: Field },
    /// `m × m` complex matrices as a `2m²`-dimensional real algebra with
    /// basis `E_rc`, `iE_rc`.
    ComplexMatrixAsReal { m: usize },
}

impl FromStr for BuiltinSpec {
    type Err = Error;

    /// Accepts `reals`, `complex`, `quaternions`, `octonions`, `mat:M`,
    /// `cmat:M`, `cmat-as-real:M` and the one-letter names `R C H O`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let parse_m = |rest: &str| -> Result<usize> {
            rest.parse::<usize>()
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| Error::UnknownAlgebra(s.to_string()))
        };
        Ok(match lower.as_str() {
            "r" | "reals" | "real" => BuiltinSpec::Reals,
            "c" | "complex" | "complexes" | "complex-as-real" => BuiltinSpec::ComplexAsReal,
            "h" | "quaternions" | "quaternion" => BuiltinSpec::Quaternions,
            "o" | "octonions" | "octonion" => BuiltinSpec::Octonions,
            other => {
                if let Some(rest) = other.strip_prefix("cmat-as-real:") {
                    BuiltinSpec::ComplexMatrixAsReal { m: parse_m(rest)? }
                } else if let Some(rest) = other.strip_prefix("cmat:") {
                    BuiltinSpec::Matrix { m: parse_m(rest)?, field: Field::Complex }
                } else if let Some(rest) = other.strip_prefix("mat:") {
                    BuiltinSpec::Matrix { m: parse_m(rest)?, field: Field::Real }
                } else {
                    return Err(Error::UnknownAlgebra(s.to_string()));
                }
            }
        })
    }
}

impl BuiltinSpec {
    pub fn build(self) -> Result<Algebra> {
        match self {
            BuiltinSpec::Reals => reals(),
            BuiltinSpec::ComplexAsReal => {
                let mut c = cayley_dickson(&reals()?, &["1", "i"])?;
                c.kind = AlgebraKind::ComplexAsReal;
                c.composition_norm = true;
                Ok(c)
            }
            BuiltinSpec::Quaternions => {
                let c = BuiltinSpec::ComplexAsReal.build()?;
                let mut h = cayley_dickson(&c, &["1", "i", "j", "k"])?;
                h.kind = AlgebraKind::Quaternions;
                h.composition_norm = true;
                Ok(h)
            }
            BuiltinSpec::Octonions => {
                let h = BuiltinSpec::Quaternions.build()?;
                let labels: Vec<String> = (0..8).map(|i| format!("e{i}")).collect();
                let labels: Vec<&str> = labels.iter().map(String::as_str).collect();
                let mut o = cayley_dickson(&h, &labels)?;
                o.kind = AlgebraKind::Octonions;
                o.composition_norm = true;
                Ok(o)
            }
            BuiltinSpec::Matrix { m, field } => matrix(m, field),
            BuiltinSpec::ComplexMatrixAsReal { m } => complex_matrix_as_real(m),
        }
    }
}

fn entry(k: usize, c: Rational) -> Entry {
    Entry { k, approx: to_f64(&c), coeff: c }
}

fn reals() -> Result<Algebra> {
    Algebra::assemble(
        AlgebraKind::Reals,
        Field::Real,
        1,
        vec![vec![entry(0, Rational::one())]],
        vec!["1".into()],
        Some(vec![Rational::one()]),
        Some(vec![vec![Rational::one()]]),
        true,
    )
}

/// Doubles an algebra with involution: on pairs `(a, b)`,
/// `(a, b)(c, d) = (ac − d̄b, da + bc̄)` and `(a, b)* = (a*, −b)`.
pub fn cayley_dickson(base: &Algebra, labels: &[&str]) -> Result<Algebra> {
    let n = base.dim;
    let d = 2 * n;
    if labels.len() != d {
        return Err(Error::InconsistentTensor(format!("{} labels for dimension {d}", labels.len())));
    }
    let conj = |x: &[Rational]| base.star(x);
    let split = |i: usize| -> (Vec<Rational>, Vec<Rational>) {
        let e = Element::basis(d, i).coords;
        (e[..n].to_vec(), e[n..].to_vec())
    };
    let mut table = vec![Vec::new(); d * d];
    for i in 0..d {
        let (a, b) = split(i);
        for j in 0..d {
            let (c, dd) = split(j);
            let first: Vec<Rational> = base
                .mul(&a, &c)
                .iter()
                .zip(base.mul(&conj(&dd)?, &b))
                .map(|(x, y)| x - y)
                .collect();
            let second: Vec<Rational> = base
                .mul(&dd, &a)
                .iter()
                .zip(base.mul(&b, &conj(&c)?))
                .map(|(x, y)| x + y)
                .collect();
            for (k, v) in first.into_iter().chain(second).enumerate() {
                if !v.is_zero() {
                    table[i * d + j].push(entry(k, v));
                }
            }
        }
    }
    let mut unit = vec![Rational::zero(); d];
    unit[0] = Rational::one();
    let mut inv = vec![vec![Rational::zero(); d]; d];
    let base_inv = base.involution.as_ref().ok_or(Error::NoInvolution)?;
    for r in 0..n {
        for c in 0..n {
            inv[r][c] = base_inv[r][c].clone();
        }
        inv[n + r][n + r] = -Rational::one();
    }
    Algebra::assemble(
        AlgebraKind::Custom,
        base.field,
        d,
        table,
        labels.iter().map(|s| s.to_string()).collect(),
        Some(unit),
        Some(inv),
        false,
    )
}

fn unit_label(r: usize, c: usize, m: usize) -> String {
    if m <= 9 {
        format!("E{}{}", r + 1, c + 1)
    } else {
        format!("E{}_{}", r + 1, c + 1)
    }
}

fn matrix(m: usize, field: Field) -> Result<Algebra> {
    if m == 0 {
        return Err(Error::UnknownAlgebra("mat:0".into()));
    }
    let d = m * m;
    let idx = |r: usize, c: usize| r * m + c;
    let mut table = vec![Vec::new(); d * d];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                // E_ab E_bc = E_ac
                table[idx(a, b) * d + idx(b, c)].push(entry(idx(a, c), Rational::one()));
            }
        }
    }
    let mut unit = vec![Rational::zero(); d];
    let mut transpose = vec![vec![Rational::zero(); d]; d];
    for r in 0..m {
        unit[idx(r, r)] = Rational::one();
        for c in 0..m {
            transpose[idx(r, c)][idx(c, r)] = Rational::one();
        }
    }
    let labels = (0..m).flat_map(|r| (0..m).map(move |c| unit_label(r, c, m))).collect();
    Algebra::assemble(
        AlgebraKind::Matrix { m, field },
        field,
        d,
        table,
        labels,
        Some(unit),
        Some(transpose),
        false,
    )
}

fn complex_matrix_as_real(m: usize) -> Result<Algebra> {
    if m == 0 {
        return Err(Error::UnknownAlgebra("cmat-as-real:0".into()));
    }
    let mm = m * m;
    let d = 2 * mm;
    let re = |r: usize, c: usize| r * m + c;
    let im = |r: usize, c: usize| mm + r * m + c;
    let mut table = vec![Vec::new(); d * d];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                table[re(a, b) * d + re(b, c)].push(entry(re(a, c), int(1)));
                table[im(a, b) * d + re(b, c)].push(entry(im(a, c), int(1)));
                table[re(a, b) * d + im(b, c)].push(entry(im(a, c), int(1)));
                table[im(a, b) * d + im(b, c)].push(entry(re(a, c), int(-1)));
            }
        }
    }
    let mut unit = vec![Rational::zero(); d];
    let mut i_unit = vec![Rational::zero(); d];
    // conjugate transpose
    let mut star = vec![vec![Rational::zero(); d]; d];
    for r in 0..m {
        unit[re(r, r)] = int(1);
        i_unit[im(r, r)] = int(1);
        for c in 0..m {
            star[re(r, c)][re(c, r)] = int(1);
            star[im(r, c)][im(c, r)] = int(-1);
        }
    }
    let mut labels: Vec<String> = (0..m).flat_map(|r| (0..m).map(move |c| unit_label(r, c, m))).collect();
    let imag: Vec<String> = labels.iter().map(|l| format!("i{l}")).collect();
    labels.extend(imag);
    let mut alg = Algebra::assemble(
        AlgebraKind::ComplexMatrixAsReal { m },
        Field::Real,
        d,
        table,
        labels,
        Some(unit),
        Some(star),
        false,
    )?;
    alg.push_alias("i", i_unit);
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    /// Octonion product written out independently of the doubling code:
    /// pairs of quaternions with (a,b)(c,d) = (ac − d̄b, da + bc̄), using a
    /// hand-coded Hamilton product.
    fn hamilton(x: [i64; 4], y: [i64; 4]) -> [i64; 4] {
        let [a, b, c, d] = x;
        let [e, f, g, h] = y;
        [
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        ]
    }

    fn qconj(x: [i64; 4]) -> [i64; 4] {
        [x[0], -x[1], -x[2], -x[3]]
    }

    fn oct_oracle(x: [i64; 8], y: [i64; 8]) -> [i64; 8] {
        let a = [x[0], x[1], x[2], x[3]];
        let b = [x[4], x[5], x[6], x[7]];
        let c = [y[0], y[1], y[2], y[3]];
        let d = [y[4], y[5], y[6], y[7]];
        let ac = hamilton(a, c);
        let db = hamilton(qconj(d), b);
        let da = hamilton(d, a);
        let bc = hamilton(b, qconj(c));
        let mut out = [0; 8];
        for t in 0..4 {
            out[t] = ac[t] - db[t];
            out[4 + t] = da[t] + bc[t];
        }
        out
    }

    fn unit8(i: usize) -> [i64; 8] {
        let mut e = [0; 8];
        e[i] = 1;
        e
    }

    fn to_r(x: [i64; 8]) -> Vec<Rational> {
        x.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn octonion_table_matches_oracle() {
        let o = BuiltinSpec::Octonions.build().unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(o.mul(&to_r(unit8(i)), &to_r(unit8(j))), to_r(oct_oracle(unit8(i), unit8(j))));
            }
        }
    }

    #[test]
    fn octonions_are_not_associative() {
        // (e1 e2) e4 = −e1 (e2 e4), both sides from the oracle
        let lhs = oct_oracle(oct_oracle(unit8(1), unit8(2)), unit8(4));
        let rhs = oct_oracle(unit8(1), oct_oracle(unit8(2), unit8(4)));
        assert_eq!(lhs, rhs.map(|v| -v));
        assert_ne!(lhs, [0; 8]);
        let o = BuiltinSpec::Octonions.build().unwrap();
        let e = |i| to_r(unit8(i));
        assert_eq!(o.mul(&o.mul(&e(1), &e(2)), &e(4)), to_r(lhs));
        assert_eq!(o.mul(&e(1), &o.mul(&e(2), &e(4))), to_r(rhs));
    }

    #[test]
    fn names_parse() {
        assert_eq!("H".parse::<BuiltinSpec>().unwrap(), BuiltinSpec::Quaternions);
        assert_eq!("mat:2".parse::<BuiltinSpec>().unwrap(), BuiltinSpec::Matrix { m: 2, field: Field::Real });
        assert_eq!("cmat-as-real:3".parse::<BuiltinSpec>().unwrap(), BuiltinSpec::ComplexMatrixAsReal { m: 3 });
        assert!("mat:0".parse::<BuiltinSpec>().is_err());
        assert!("sedenions".parse::<BuiltinSpec>().is_err());
    }

    #[test]
    fn complex_matrix_as_real_has_doubled_dimension_and_star() {
        let a = BuiltinSpec::ComplexMatrixAsReal { m: 2 }.build().unwrap();
        assert_eq!(a.dim(), 8);
        let i = a.named_element("i").unwrap();
        let minus_one = a.mul(&i, &i);
        let one = a.named_element("1").unwrap();
        assert_eq!(minus_one, one.iter().map(|x| -x).collect::<Vec<_>>());
        assert_eq!(a.star(&i).unwrap(), i.iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn builtin_involutions_are_conjugations() {
        for spec in [BuiltinSpec::Quaternions, BuiltinSpec::Octonions] {
            let a = spec.build().unwrap();
            let x: Vec<Rational> = (0..a.dim()).map(|i| int(i as i64 + 1)).collect();
            let xs = a.star(&x).unwrap();
            assert_eq!(xs[0], x[0]);
            assert!(xs[1..].iter().zip(&x[1..]).all(|(s, v)| s == &-v));
        }
    }
}
