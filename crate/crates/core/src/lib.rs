//! Linear interpolation on n-dimensional Euclidean balls.
//!
//! Interpolation at the vertices of a nondegenerate simplex `S ⊂ R^n` by
//! polynomials of degree at most one defines a projector `P`; on a ball `B`
//! its operator norm is `max_{x∈B} Σ_j |λ_j(x)|`. This crate computes that
//! norm exactly, evaluates the closed form for regular inscribed simplices,
//! computes the absorption index of a simplex with respect to a ball, and
//! searches numerically for minimal projectors.
//!
//! - [`geometry`]: simplices, balls, vertex matrices, barycentric coordinates
//! - [`norm`]: exact norms with certificates, Monte Carlo lower bounds, 1-points
//! - [`regular`]: `ψ`, `t∓`, `k*`, `d_n` and the spline bound
//! - [`absorption`]: `ξ(B; S)` and the norm/absorption sandwich
//! - [`optimizer`]: minimal-norm search with nodes on the sphere

pub mod absorption;
pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod norm;
pub mod optimizer;
pub mod regular;
pub mod sampling;

pub use absorption::{
    absorption_index_ball, sandwich_bounds, sandwich_check, theta_lower_bound, AbsorptionResult,
};
pub use error::{Error, Result};
pub use geometry::{
    barycentric, centroid, circumscribed_ball_regular, lagrange_basis, vertex_matrix, Ball,
    LagrangeBasis, Point, Simplex, VertexMatrix,
};
pub use norm::{
    norm_lower_bound_mc, one_point_witness, projector_norm, projector_norm_centered,
    NormCertificate, SignVector,
};
pub use optimizer::{center_regular_in_unit_ball, minimize_norm, SearchConfig, SearchResult};
pub use regular::{
    critical_points, inscribed_regular, is_sqrt_integer_dimension, psi, regular_norm,
    regular_simplex, sigma_tau, spline_bound, RegularReport, SplineBound,
};
