//! The regular simplex inscribed into a ball and its closed-form projector norm.
//!
//! With `ψ(t) = (2√n/(n+1))·√(t(n+1-t)) + |1 - 2t/(n+1)|` on `[0, n+1]`, the
//! norm for the regular inscribed simplex is `max{ψ(a), ψ(a+1)}` where
//! `a = ⌊t₋⌋` and `t∓ = (n+1)/2 ∓ √(n+1)/2` are the maximizers of `ψ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{circumscribed_ball_regular, unit_segment, Ball, LagrangeBasis, Simplex};
use crate::linalg::Matrix;

/// One row of the regular-simplex table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularReport {
    pub n: u64,
    pub t_minus: f64,
    pub t_plus: f64,
    pub a: u64,
    pub psi_a: f64,
    pub psi_a_plus_1: f64,
    pub norm: f64,
    pub k_star: u64,
    pub d_n: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoints {
    pub t_minus: f64,
    pub t_plus: f64,
    pub a: u64,
}

/// Vertices `e_1, ..., e_n` and `((1 - √(n+1))/n, ..., (1 - √(n+1))/n)`.
/// Every edge has length `√2`.
pub fn regular_simplex(n: usize) -> Result<Simplex> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "the regular simplex construction needs n >= 2, got {n}; use the unit segment for n = 1"
        )));
    }
    let last = (1.0 - ((n + 1) as f64).sqrt()) / n as f64;
    let mut vertices: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|k| if k == i { 1.0 } else { 0.0 }).collect())
        .collect();
    vertices.push(vec![last; n]);
    Simplex::new(vertices)
}

/// The regular simplex of dimension n (the segment `[0, 1]` for n = 1)
/// together with its circumscribed ball.
pub fn inscribed_regular(n: usize) -> Result<(Simplex, Ball)> {
    let simplex = if n == 1 {
        unit_segment()
    } else {
        regular_simplex(n)?
    };
    Ok((simplex, circumscribed_ball_regular(n)?))
}

/// `σ = ((n-1)√(n+1) + 1)/n` and `τ = (√(n+1) - 1)/n`.
pub fn sigma_tau(n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "sigma/tau are defined for n >= 2, got {n}"
        )));
    }
    let nf = n as f64;
    let r = (nf + 1.0).sqrt();
    Ok((((nf - 1.0) * r + 1.0) / nf, (r - 1.0) / nf))
}

/// Closed-form `A^{-1}` of [`regular_simplex`]: `(1/√(n+1))` times the
/// matrix with `σ` on the diagonal, `-τ` off it, `-1` in the last column
/// and `(τ, ..., τ, 1)` as the last row.
pub fn regular_inverse(n: usize) -> Result<LagrangeBasis> {
    let (sigma, tau) = sigma_tau(n)?;
    let scale = 1.0 / ((n + 1) as f64).sqrt();
    let mut m = Matrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = scale * if i == j { sigma } else { -tau };
        }
        m[(i, n)] = -scale;
        m[(n, i)] = scale * tau;
    }
    m[(n, n)] = scale;
    // det A = 1 + nτ = √(n+1)
    LagrangeBasis::from_inverse(m, ((n + 1) as f64).sqrt())
}

/// `ψ(t)` for `0 <= t <= n+1`.
pub fn psi(n: u64, t: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("psi needs n >= 1".into()));
    }
    let m = (n + 1) as f64;
    if !(0.0..=m).contains(&t) {
        return Err(Error::Domain(format!(
            "psi({n}, t) needs 0 <= t <= {m}, got t = {t}"
        )));
    }
    let nf = n as f64;
    Ok(2.0 * nf.sqrt() / m * (t * (m - t)).sqrt() + (1.0 - 2.0 * t / m).abs())
}

/// `ψ(k)` at an integer `0 <= k <= n+1` as `(2√(n·k(n+1-k)) + |n+1-2k|)/(n+1)`.
///
/// The radicand is an exact integer, so perfect squares (which occur at
/// `n = m² - 1`, `k = t₋`) come out exact.
pub fn psi_at(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n + 1);
    let m = n as u128 + 1;
    let k = k as u128;
    let radicand = n as u128 * k * (m - k);
    let linear = (m as i128 - 2 * k as i128).unsigned_abs();
    (2.0 * int_sqrt_f64(radicand) + linear as f64) / m as f64
}

fn int_sqrt_f64(x: u128) -> f64 {
    let r = isqrt(x);
    if r * r == x {
        r as f64
    } else {
        (x as f64).sqrt()
    }
}

fn isqrt(x: u128) -> u128 {
    if x < 2 {
        return x;
    }
    let mut r = (x as f64).sqrt() as u128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// `a = ⌊(n+1)/2 - √(n+1)/2⌋` in exact integer arithmetic: the largest
/// `a >= 0` with `n+1-2a >= √(n+1)`.
fn floor_t_minus(n: u64) -> u64 {
    let m = n as i128 + 1;
    let fits = |a: i128| {
        let d = m - 2 * a;
        d >= 0 && d * d >= m
    };
    let mut a = ((m as f64 - (m as f64).sqrt()) / 2.0).floor().max(0.0) as i128;
    while a > 0 && !fits(a) {
        a -= 1;
    }
    while fits(a + 1) {
        a += 1;
    }
    a as u64
}

pub fn critical_points(n: u64) -> Result<CriticalPoints> {
    if n == 0 {
        return Err(Error::Domain("critical points need n >= 1".into()));
    }
    let m = (n + 1) as f64;
    let half_root = m.sqrt() / 2.0;
    let a = floor_t_minus(n);
    // exact for n = m² - 1, where t₋ is an integer
    let t_minus = if is_perfect_square(n + 1) {
        a as f64
    } else {
        m / 2.0 - half_root
    };
    Ok(CriticalPoints {
        t_minus,
        t_plus: t_minus + m.sqrt(),
        a,
    })
}

fn is_perfect_square(x: u64) -> bool {
    let r = isqrt(x as u128);
    r * r == x as u128
}

/// True iff `√(n+1)` is an integer `m >= 2`, i.e. exactly when the
/// regular-simplex norm reaches `√(n+1)`.
pub fn is_sqrt_integer_dimension(n: u64) -> bool {
    n >= 3 && is_perfect_square(n + 1)
}

/// Closed-form norm of the projector for the regular inscribed simplex.
///
/// `k_star` is the maximizer of `ψ` among the admissible counts
/// `{a, a+1} ∩ [1, (n+1)/2]`, the smaller one on an exact tie.
pub fn regular_norm(n: u64) -> Result<RegularReport> {
    let cp = critical_points(n)?;
    let a = cp.a;
    let psi_a = psi_at(n, a);
    let psi_a_plus_1 = psi_at(n, a + 1);
    let k_star = if a >= 1 && psi_a >= psi_a_plus_1 {
        a
    } else {
        a + 1
    };
    let norm = psi_a.max(psi_a_plus_1);
    let root = int_sqrt_f64(n as u128 + 1);
    Ok(RegularReport {
        n,
        t_minus: cp.t_minus,
        t_plus: cp.t_plus,
        a,
        psi_a,
        psi_a_plus_1,
        norm,
        k_star,
        d_n: root - norm,
    })
}

/// Piecewise-linear bound `l(n) >= d_n` through the points `(n, d_n)` at
/// `n = m² - 2` and `n = m²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplineBound {
    pub nodes: Vec<(u64, f64)>,
    pub n_from: u64,
    pub n_to: u64,
}

impl SplineBound {
    /// `l(n)`, or `None` outside the node range.
    pub fn eval(&self, n: u64) -> Option<f64> {
        let idx = self.nodes.partition_point(|&(x, _)| x < n);
        let (x1, y1) = *self.nodes.get(idx)?;
        if x1 == n {
            return Some(y1);
        }
        let (x0, y0) = *self.nodes.get(idx.checked_sub(1)?)?;
        let w = (n - x0) as f64 / (x1 - x0) as f64;
        Some(y0 + w * (y1 - y0))
    }

    pub fn is_node(&self, n: u64) -> bool {
        self.nodes.binary_search_by_key(&n, |&(x, _)| x).is_ok()
    }
}

/// Smallest dimension covered by the spline (the node `5² - 2`).
pub const SPLINE_MIN_N: u64 = 23;

pub fn spline_bound(n_from: u64, n_to: u64) -> Result<SplineBound> {
    let err = |reason: &str| Error::SplineRange {
        from: n_from,
        to: n_to,
        reason: reason.to_string(),
    };
    if n_from < SPLINE_MIN_N {
        return Err(err("the first spline node is n = 23"));
    }
    if n_from > n_to {
        return Err(err("empty range"));
    }
    if n_to > u32::MAX as u64 {
        return Err(err("range too large"));
    }
    let mut nodes = Vec::new();
    let mut m: u64 = 5;
    loop {
        let lo = m * m - 2;
        let hi = m * m;
        if hi < n_from {
            // keep only the last node at or below n_from
            nodes.clear();
            nodes.push(hi);
        } else {
            if lo <= n_from {
                nodes.clear();
            }
            nodes.push(lo);
            nodes.push(hi);
        }
        if hi >= n_to {
            break;
        }
        m += 1;
    }
    let nodes = nodes
        .into_iter()
        .map(|x| regular_norm(x).map(|r| (x, r.d_n)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SplineBound {
        nodes,
        n_from,
        n_to,
    })
}
