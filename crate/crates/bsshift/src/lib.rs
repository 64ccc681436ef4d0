//! Exact-arithmetic toolkit for the root shifts of Bernstein-Sato polynomials
//! of semi-weighted-homogeneous isolated singularities whose lowest part is of
//! Brieskorn-Pham, chain, or loop type.
//!
//! The crate is organised around six pieces:
//! - [`singularity`]: singularity classes, weight systems, Milnor bases,
//!   spectral numbers, and the deformation monomial set `J`;
//! - [`poly`]: sparse exact-rational polynomials in the deformation parameters;
//! - [`engine`]: the Gröbner-free Gauss-Manin recursion producing the leading
//!   asymptotic terms and the order-one coefficient matrix `g¹`;
//! - [`shift`]: shift vectors, root sets, unshift subspaces, solitude data;
//! - [`strata`]: semigroup combinatorics of the parameter weights and the
//!   bistable-subset stratification;
//! - [`oracle`]: an independent combinatorial path-sum recomputation of `g¹`
//!   for two-variable Brieskorn-Pham classes.
//!
//! The [`cli`] module drives everything from the `bsshift` binary and
//! [`script`] emits Singular verification scripts.

pub mod cli;
pub mod engine;
pub mod oracle;
pub mod poly;
pub mod ratio;
pub mod script;
pub mod shift;
pub mod singularity;
pub mod strata;

pub use engine::{build_gm_table, g1_matrix, theorem2_audit, EngineConfig, GmTable, ParamMode};
pub use poly::{Monomial, ParamPolynomial};
pub use ratio::Rat;
pub use singularity::{
    BasisElement, Comparison, JEntry, Kind, Normalization, SingularityClass, WeightSystem,
};

/// Domain errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("exponent too small: {0}")]
    ExponentTooSmall(String),
    #[error("unsupported arity: {0}")]
    UnsupportedArity(String),
    #[error("graded step not applicable: {0}")]
    PreconditionFailed(String),
    #[error("graded reduction did not terminate at {0}")]
    NonTerminating(String),
    #[error("regime violation: {0}")]
    RegimeViolation(String),
    #[error("resonant denominator: {0}")]
    ResonantDenominator(String),
    #[error("spectral multiplicity condition violated: {0}")]
    M1Violation(String),
    #[error("integer shiftable spectral number {0}; shift rule undefined there")]
    IntegerShiftableRoot(String),
    #[error("not solitary: {0}")]
    NotSolitary(String),
    #[error("subset is not bistable: {0}")]
    NotBistable(String),
    #[error("class too large for the path-sum oracle: {0}")]
    SizeLimit(String),
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
