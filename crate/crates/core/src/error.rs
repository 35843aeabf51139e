use thiserror::Error;

/// Errors produced by the geometry, norm and search routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Vertex count or vertex dimensions do not describe an n-simplex in R^n.
    #[error("malformed simplex: {0}")]
    MalformedSimplex(String),

    /// The vertex matrix is (numerically) singular.
    #[error("degenerate simplex: |det A| = {det:e} is below the threshold {threshold:e}")]
    DegenerateSimplex { det: f64, threshold: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid ball: {0}")]
    InvalidBall(String),

    /// Exact sign-vector enumeration refused; the Monte Carlo lower bound is the fallback.
    #[error(
        "exact norm needs 2^{dimension} sign vectors (n = {dimension}, cap n = {cap}); \
         use the Monte Carlo lower bound instead"
    )]
    EnumerationCap { dimension: usize, cap: usize },

    /// The simplified centered formula was requested for an off-center ball.
    #[error(
        "centroid of the simplex is {offset:e} away from the ball center (allowed {allowed:e})"
    )]
    CentroidMismatch { offset: f64, allowed: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("spline range [{from}, {to}] is not covered: {reason}")]
    SplineRange { from: u64, to: u64, reason: String },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("search failed: {0}")]
    SearchFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
