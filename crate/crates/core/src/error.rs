//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("site count mismatch: {left} vs {right}")]
    SiteCountMismatch { left: usize, right: usize },

    #[error("basis index {bits} out of range for {num_sites} sites")]
    IndexOutOfRange { bits: u64, num_sites: usize },

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("site state {index} is not normalized: |a|^2 + |b|^2 = {norm_sq}")]
    UnnormalizedSite { index: usize, norm_sq: f64 },

    #[error("state is not normalized: sum of |amp|^2 = {norm_sq}")]
    UnnormalizedState { norm_sq: f64 },

    #[error("invalid pairing: {reason}")]
    InvalidPairing { reason: String },

    #[error("empty input: {what}")]
    EmptyInput { what: &'static str },

    #[error("bipartition must be a nonempty proper subset of 0..{n}")]
    InvalidBipartition { n: usize },

    #[error("need at least two sites, got {n}")]
    TooFewSites { n: usize },

    #[error("resource cap exceeded: {what} = {value} > cap {cap}")]
    ResourceCap {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error(
        "initial product state is orthogonal to the ground manifold (overlap norm {overlap:e})"
    )]
    OrthogonalInitial { overlap: f64 },

    #[error(
        "ground state {config} contributes no negative-energy terms; frustration ratio undefined"
    )]
    DegenerateDenominator { config: String },

    #[error("invalid parameters: {reason}")]
    InvalidParams { reason: String },

    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
