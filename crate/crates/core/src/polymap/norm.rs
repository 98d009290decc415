use num_traits::Signed;

use super::Word;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::{to_f64, Rational};

/// `|coeff| · Π ‖c‖` over the constant leaves of `word`. On a composition
/// algebra this is the factor in `‖m(a)‖ = ‖m‖ · ‖a‖^deg`.
pub fn monomial_norm(alg: &Algebra, word: &Word, coeff: &Rational) -> Result<f64> {
    Ok(to_f64(&monomial_norm_squared(alg, word, coeff)?).sqrt())
}

/// Exact square of [`monomial_norm`].
pub fn monomial_norm_squared(alg: &Algebra, word: &Word, coeff: &Rational) -> Result<Rational> {
    if !alg.has_composition_norm() {
        return Err(Error::NoCompositionNorm);
    }
    let mut acc = coeff.abs() * coeff.abs();
    for c in word.constants() {
        acc *= alg.norm_squared(c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BuiltinSpec, Field};
    use crate::scalar::int;

    #[test]
    fn product_of_norms() {
        let h = BuiltinSpec::Quaternions.build().unwrap();
        // ‖2i‖ = 2, ‖3j‖ = 3
        let w = Word::prod(
            Word::prod(Word::Const(vec![int(0), int(2), int(0), int(0)]), Word::Var(0)),
            Word::prod(Word::Const(vec![int(0), int(0), int(3), int(0)]), Word::Var(0)),
        );
        assert_eq!(monomial_norm(&h, &w, &int(1)).unwrap(), 6.0);
        assert_eq!(monomial_norm(&h, &Word::power(&Word::Var(0), 2), &int(1)).unwrap(), 1.0);
        assert_eq!(monomial_norm(&h, &Word::Var(0), &int(-3)).unwrap(), 3.0);
    }

    #[test]
    fn needs_composition_norm() {
        let m = BuiltinSpec::Matrix { m: 2, field: Field::Real }.build().unwrap();
        assert_eq!(monomial_norm(&m, &Word::Var(0), &int(1)), Err(Error::NoCompositionNorm));
    }
}
