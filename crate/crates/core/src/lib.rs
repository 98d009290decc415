//! Zeros of polynomial maps over finite-dimensional algebras.
//!
//! The algebras may be non-associative and non-unital (octonions, matrix
//! algebras, anything given by structure constants). A system of polynomial
//! maps `p_1, …, p_n : 𝒜ⁿ → 𝒜` restricted to a subspace `ℋ` is turned into a
//! classical polynomial system over ℚ ([`poly::scalarize`]). That system is
//! then either certified exactly ([`groebner`]: Gröbner bases, elimination,
//! Sturm sequences) or solved numerically ([`solve`]: total-degree homotopy
//! continuation, multistart Newton, mapping-degree estimation).
//!
//! ```
//! use std::sync::Arc;
//! use algzero::algebra::BuiltinSpec;
//! use algzero::parser::parse_map;
//!
//! let h = Arc::new(BuiltinSpec::Quaternions.build().unwrap());
//! let p = parse_map("x^3 - 1", h, 1).unwrap();
//! let dec = p.decompose();
//! assert_eq!(dec.degree, Some(3));
//! assert_eq!(dec.degrees(), vec![0, 3]);
//! ```

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod linalg;
pub mod parser;
pub mod poly;
pub mod polymap;
pub mod scalar;
pub mod solve;

pub use algebra::{Algebra, BuiltinSpec, Element, Field, Subspace};
pub use error::{Error, Result};
pub use polymap::{PolynomialMap, Word};
pub use poly::{MultiPoly, ScalarizedSystem};
pub use scalar::Rational;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/scalarization.md")]
    mod scalarization {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/solving.md")]
    mod solving {}
}
