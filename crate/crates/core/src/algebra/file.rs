use serde::{Deserialize, Serialize};

use super::{Algebra, Field};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

/// JSON algebra definition.
///
/// ```json
/// { "dim": 2, "field": "real", "labels": ["1", "e"],
///   "unit": ["1", "0"],
///   "involution": [["1", "0"], ["0", "-1"]],
///   "gamma": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "-1"]] }
/// ```
///
/// `gamma` lists the nonzero structure constants as `[i, j, k, coeff]` with
/// 0-based indices, meaning `b_i b_j` has coefficient `coeff` on `b_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub field: Field,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub unit: Option<Vec<String>>,
    #[serde(default)]
    pub involution: Option<Vec<Vec<String>>>,
    pub gamma: Vec<(usize, usize, usize, String)>,
}

fn exact(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::AlgebraFile(format!("malformed rational `{s}`")))
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<AlgebraFile> {
        serde_json::from_str(text).map_err(|e| Error::AlgebraFile(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra file serializes")
    }

    pub fn build(&self) -> Result<Algebra> {
        let d = self.dim;
        let mut gamma = vec![vec![vec![Rational::default(); d]; d]; d];
        for (i, j, k, c) in &self.gamma {
            if *i >= d || *j >= d || *k >= d {
                return Err(Error::InconsistentTensor(format!("index ({i}, {j}, {k}) out of range for dim {d}")));
            }
            gamma[*i][*j][*k] += exact(c)?;
        }
        let labels = match &self.labels {
            Some(l) => l.clone(),
            None => (0..d).map(|i| format!("b{i}")).collect(),
        };
        for l in &labels {
            let ok = l == "1"
                || (l.starts_with(|c: char| c.is_ascii_alphabetic())
                    && l.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'));
            if !ok {
                return Err(Error::AlgebraFile(format!("label `{l}` is not an identifier")));
            }
            if l == "x" || (l.starts_with('x') && l[1..].chars().all(|c| c.is_ascii_digit())) {
                return Err(Error::AlgebraFile(format!("label `{l}` clashes with variable names")));
            }
        }
        let unit = self.unit.as_ref().map(|u| u.iter().map(|s| exact(s)).collect::<Result<Vec<_>>>()).transpose()?;
        let involution = self
            .involution
            .as_ref()
            .map(|m| m.iter().map(|row| row.iter().map(|s| exact(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
            .transpose()?;
        let alg = Algebra::from_structure_constants(self.field, labels.clone(), &gamma, unit.clone(), involution)?;
        if labels.iter().any(|l| l == "1") {
            let one = alg.named_element("1").expect("label present");
            if unit.as_deref() != Some(one.as_slice()) {
                return Err(Error::AlgebraFile("label `1` must name the declared unit".into()));
            }
        }
        Ok(alg)
    }

    /// Serializes any algebra into the file format.
    pub fn from_algebra(alg: &Algebra) -> AlgebraFile {
        let d = alg.dim();
        let mut gamma = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = alg.gamma(i, j, k);
                    if c != Rational::default() {
                        gamma.push((i, j, k, format_rational(&c)));
                    }
                }
            }
        }
        AlgebraFile {
            dim: d,
            field: alg.field(),
            labels: Some(alg.labels().to_vec()),
            unit: alg.unit().map(|u| u.iter().map(format_rational).collect()),
            involution: alg
                .involution_matrix()
                .map(|m| m.iter().map(|row| row.iter().map(format_rational).collect()).collect()),
            gamma,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinSpec;

    #[test]
    fn split_complex_numbers_from_json() {
        let text = r#"{ "dim": 2, "field": "real", "labels": ["1", "e"], "unit": ["1", "0"],
            "gamma": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "1"]] }"#;
        let alg = AlgebraFile::from_json(text).unwrap().build().unwrap();
        let e = alg.named_element("e").unwrap();
        assert_eq!(alg.mul(&e, &e), alg.named_element("1").unwrap());
        assert!(alg.classify().commutative);
    }

    #[test]
    fn builtin_survives_file_round_trip() {
        let o = BuiltinSpec::Octonions.build().unwrap();
        let file = AlgebraFile::from_algebra(&o);
        let back = AlgebraFile::from_json(&file.to_json()).unwrap().build().unwrap();
        assert_eq!(back.gamma_tensor(), o.gamma_tensor());
        assert_eq!(back.labels(), o.labels());
    }

    #[test]
    fn bad_files() {
        let out_of_range = r#"{ "dim": 1, "field": "real", "gamma": [[0, 0, 3, "1"]] }"#;
        assert!(AlgebraFile::from_json(out_of_range).unwrap().build().is_err());
        let bad_rational = r#"{ "dim": 1, "field": "real", "gamma": [[0, 0, 0, "1/0"]] }"#;
        assert!(AlgebraFile::from_json(bad_rational).unwrap().build().is_err());
        let bad_unit = r#"{ "dim": 1, "field": "real", "unit": ["1"], "gamma": [[0, 0, 0, "3"]] }"#;
        assert!(matches!(AlgebraFile::from_json(bad_unit).unwrap().build(), Err(Error::UnitLaw(0))));
    }
}
