//! Absorption index `ξ(B; S)`: the least `σ >= 1` such that the homothetic
//! copy `σS` about the centroid of `S` contains the ball `B`.
//!
//! Since `λ_j(c + σ(x - c)) = (1 - σ)/(n+1) + σ λ_j(x)`, a point `x` lies in
//! `σS` iff `λ_j(x) >= -(σ - 1)/(n+1)` for every `j`. The minimum of the
//! linear `λ_j` over `B(x0; R)` is `λ_j(x0) - R‖g_j‖`, so
//! `ξ = max(1, max_j [1 + (n+1)(R‖g_j‖ - λ_j(x0))])`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{self, lagrange_basis, Ball, LagrangeBasis, Simplex};
use crate::linalg;

/// Slack used by [`sandwich_check`].
pub const SANDWICH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbsorptionResult {
    pub xi: f64,
    /// Face `j` (opposite vertex `j`) that needs the largest dilation.
    pub binding_face: usize,
    /// `min_{x ∈ B} λ_j(x)` for every `j`.
    pub face_margins: Vec<f64>,
}

pub fn absorption_index_with_basis(basis: &LagrangeBasis, ball: &Ball) -> Result<AbsorptionResult> {
    geometry::check_dim(basis.dim(), ball.dim())?;
    let n = basis.dim();
    let face_margins: Vec<f64> = (0..=n)
        .map(|j| {
            basis.eval_unchecked(j, ball.center())
                - ball.radius() * linalg::norm2(&basis.gradient(j))
        })
        .collect();
    let (binding_face, worst) = face_margins
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least two faces");
    let xi = (1.0 - (n + 1) as f64 * worst).max(1.0);
    Ok(AbsorptionResult {
        xi,
        binding_face,
        face_margins,
    })
}

pub fn absorption_index_ball(simplex: &Simplex, ball: &Ball) -> Result<AbsorptionResult> {
    geometry::check_dim(simplex.dim(), ball.dim())?;
    absorption_index_with_basis(&lagrange_basis(simplex)?, ball)
}

/// Lower and upper sides of `((n+1)/(2n))(‖P‖-1)+1 <= ξ <= ((n+1)/2)(‖P‖-1)+1`.
pub fn sandwich_bounds(norm: f64, n: u64) -> (f64, f64) {
    let m = (n + 1) as f64;
    let excess = norm - 1.0;
    (m / (2.0 * n as f64) * excess + 1.0, m / 2.0 * excess + 1.0)
}

pub fn sandwich_check(norm: f64, xi: f64, n: u64) -> bool {
    let (lo, hi) = sandwich_bounds(norm, n);
    lo - SANDWICH_TOLERANCE <= xi && xi <= hi + SANDWICH_TOLERANCE
}

/// `3 - 4/(n+1)`, a lower bound for the norm of any projector with nodes in `B_n`.
pub fn theta_lower_bound(n: u64) -> f64 {
    3.0 - 4.0 / (n + 1) as f64
}
