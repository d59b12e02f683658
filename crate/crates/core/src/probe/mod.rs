//! Floating-point checks: slopes of log-ratios along `e`-families, Fiedler
//! and Jacobi inequalities, and bound searches over sampled positive
//! definite matrices.

mod checks;
mod random;
mod sampler;
mod search;
mod slope;

use thiserror::Error;

use crate::asymptotics::AsnError;
use crate::ratio::EvalError;

pub use checks::{
    corollary_check, decomposition_check, decomposition_identities, fiedler_check, jacobi_check,
    FiedlerReport, IdentityCheck, CHECK_TOLERANCE,
};
pub use random::{random_deficient_matrix, random_homogeneous};
pub use sampler::{sample_all, sample_pd, Distribution, SamplerConfig, DEFAULT_RIDGE};
pub use search::{bound_search, BoundReport, DIVERGENCE_THRESHOLD, MIN_EIGENVALUE};
pub use slope::{
    eval_family_slope, eval_poly_family_slope, least_squares, Behavior, EpsilonGrid, ProbeReport,
    SlopeVerdict,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbeError {
    #[error("formal logarithm is not homogeneous")]
    NotHomogeneous,
    #[error("evaluation failed at e = {epsilon:e}: {source}")]
    FamilyEvaluation { epsilon: f64, source: EvalError },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Asn(#[from] AsnError),
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("invalid sampler configuration: {0}")]
    Sampler(String),
    #[error("matrix is not positive definite; inversion failed")]
    Inversion,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("index {index} out of range for n = {n}")]
    Index { index: usize, n: usize },
    #[error("corollary bound violated at index {index}: {value} > {bound}")]
    CorollaryViolated {
        index: usize,
        value: f64,
        bound: f64,
    },
    #[error("factorization identity for {0} does not hold")]
    IdentityFailed(String),
}
