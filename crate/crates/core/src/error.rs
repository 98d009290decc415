use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("inconsistent structure constants: {0}")]
    InconsistentTensor(String),

    #[error("declared unit fails the unit law at basis element {0}")]
    UnitLaw(usize),

    #[error("invalid involution: {0}")]
    Involution(String),

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("subspace basis is linearly dependent")]
    DependentBasis,

    #[error("algebra has no composition norm")]
    NoCompositionNorm,

    #[error("algebra has no involution")]
    NoInvolution,

    #[error("algebra has no unit; a bare scalar cannot be turned into an element")]
    NoUnit,

    #[error("variable count mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("map {map} leaves the target subspace (coordinate {coordinate} has residual {residual})")]
    ImageNotContained { map: usize, coordinate: usize, residual: String },

    #[error("map is not linear: {0}")]
    NotLinear(String),

    #[error("value is not exactly representable as a rational: {0}")]
    NotExact(f64),

    #[error("polynomial variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),

    #[error("Gröbner guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("zero polynomial has no root count")]
    ZeroPolynomial,

    #[error("system is not square: {polys} polynomials in {vars} variables")]
    NotSquare { polys: usize, vars: usize },

    #[error("polynomial {0} has degree zero")]
    ZeroDegree(usize),

    #[error("leading forms are degenerate")]
    Degenerate,

    #[error(transparent)]
    Parse(#[from] crate::parser::ParseError),

    #[error("invalid algebra file: {0}")]
    AlgebraFile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
