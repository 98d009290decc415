//! Numerical zero finding, non-degeneracy probing, mapping degree
//! estimation and existence verdicts.

pub mod config;
pub mod degree;
pub mod homotopy;
pub mod newton;
pub mod probe;
pub mod report;
pub mod system;
pub mod verdict;

pub use config::{HomotopyConfig, SolveConfig};
pub use homotopy::{bezout_count, dedup_points, finite_solutions, track_paths, univariate_roots, PathEnd, PathStatus};
pub use newton::{damped_newton, projective_witness, NewtonOutcome};
pub use system::{FloatPoly, FloatSystem, Num};
pub use degree::{mapping_degree_estimate, DegreeEstimate};
pub use probe::{numeric_nondegeneracy_min, ProbeResult, ProbeVerdict};
pub use report::{find_common_zero, solve_complex_total_degree, solve_real_multistart, FoundZero, Method, PathStats, SolveReport};
pub use verdict::{certify_nondegenerate, theorem_verdicts, two_monomial_guarantee, Theorem, TheoremVerdict, TwoMonomialVerdict};
