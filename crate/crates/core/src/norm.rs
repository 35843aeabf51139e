//! Exact norm of the interpolation projector on a ball.
//!
//! For signs `f_j = ±1` put `v_i = Σ_j f_j l_ij` and `Λ(x) = Σ_j f_j λ_j(x)`.
//! On `B(x0; R)` the maximum of `|Λ|` is `R‖v‖ + |Λ(x0)|`, attained at
//! `x0 ± (R/‖v‖) v`, and the projector norm is the maximum of that quantity
//! over all sign vectors. Flipping every sign leaves it unchanged, so only
//! the `2^n` vectors with a trailing `+1` are enumerated.
//!
//! Enumeration walks fixed chunks of `2^12` masks in Gray-code order, so
//! each step updates `v` and `Λ(x0)` with a single column. Chunks restart
//! from an exact evaluation and are independent, which keeps the parallel
//! scan bit-identical to a sequential one.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, centroid, lagrange_basis, Ball, LagrangeBasis, Point, Simplex};
use crate::linalg;
use crate::sampling;

/// Largest dimension n for which the exact norm is computed (`n + 1 = 26` signs).
pub const MAX_EXACT_DIMENSION: usize = 25;

/// Sign vectors whose value is within this relative distance of the
/// maximum are treated as maximizers.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// A barycentric coordinate below `-NEGATIVE_TOLERANCE` counts as negative.
pub const NEGATIVE_TOLERANCE: f64 = 1e-10;

/// Allowed centroid offset for the centered formula, relative to the radius.
pub const CENTERED_TOLERANCE: f64 = 1e-9;

const CHUNK_BITS: usize = 12;

/// Signs `f_1, ..., f_{n+1}` with `f_{n+1} = +1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignVector(Vec<i8>);

impl SignVector {
    /// Canonicalizes by flipping all signs when the last one is negative.
    pub fn new(mut signs: Vec<i8>) -> Result<Self> {
        if signs.len() < 2 || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Domain(
                "a sign vector needs at least two entries, each -1 or +1".into(),
            ));
        }
        if signs[signs.len() - 1] == -1 {
            signs.iter_mut().for_each(|s| *s = -*s);
        }
        Ok(Self(signs))
    }

    /// Entry i (< n) is `+1` iff bit `n-1-i` of `mask` is set, so numeric
    /// order of masks is lexicographic order with `-1 < +1`.
    fn from_mask(mask: u64, n: usize) -> Self {
        let mut signs: Vec<i8> = (0..n)
            .map(|i| if mask >> (n - 1 - i) & 1 == 1 { 1 } else { -1 })
            .collect();
        signs.push(1);
        Self(signs)
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn negatives(&self) -> usize {
        self.0.iter().filter(|&&s| s < 0).count()
    }

    /// Size of the smaller of the two sign classes.
    pub fn minority(&self) -> usize {
        let neg = self.negatives();
        neg.min(self.0.len() - neg)
    }
}

impl TryFrom<Vec<i8>> for SignVector {
    type Error = Error;

    fn try_from(v: Vec<i8>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SignVector> for Vec<i8> {
    fn from(s: SignVector) -> Self {
        s.0
    }
}

/// Exact projector norm together with the data that certifies it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormCertificate {
    /// `‖P‖_B`.
    pub value: f64,
    /// Lexicographically smallest maximizing canonical sign vector.
    pub signs: SignVector,
    /// Number of `-1`s once the sign vector is oriented to have at most
    /// `(n+1)/2` of them.
    pub k: usize,
    /// A point of the sphere where `Σ|λ_j|` equals `value`.
    pub extremal_point: Point,
    /// `v_i = Σ_j f_j l_ij` for the stored signs.
    pub direction: Vec<f64>,
    pub ball: Ball,
}

/// The enumeration kernel: gradients `g_j`, offsets `c_j = λ_j(x0)`, radius.
struct SignProblem {
    n: usize,
    grads: Vec<f64>,
    offsets: Vec<f64>,
    radius: f64,
}

struct Evaluated {
    value: f64,
    v: Vec<f64>,
    s: f64,
}

impl SignProblem {
    fn new(basis: &LagrangeBasis, offsets: Vec<f64>, radius: f64) -> Result<Self> {
        let n = basis.dim();
        if n > MAX_EXACT_DIMENSION {
            return Err(Error::EnumerationCap {
                dimension: n,
                cap: MAX_EXACT_DIMENSION,
            });
        }
        let grads = (0..=n).flat_map(|j| basis.gradient(j)).collect();
        Ok(Self {
            n,
            grads,
            offsets,
            radius,
        })
    }

    fn grad(&self, j: usize) -> &[f64] {
        &self.grads[j * self.n..(j + 1) * self.n]
    }

    fn sign(&self, mask: u64, j: usize) -> f64 {
        if j == self.n || mask >> (self.n - 1 - j) & 1 == 1 {
            1.0
        } else {
            -1.0
        }
    }

    fn evaluate(&self, mask: u64) -> Evaluated {
        let mut v = vec![0.0; self.n];
        let mut s = 0.0;
        for j in 0..=self.n {
            let f = self.sign(mask, j);
            for (vi, gi) in v.iter_mut().zip(self.grad(j)) {
                *vi += f * gi;
            }
            s += f * self.offsets[j];
        }
        Evaluated {
            value: self.radius * linalg::norm2(&v) + s.abs(),
            v,
            s,
        }
    }

    fn chunk_bits(&self) -> usize {
        self.n.min(CHUNK_BITS)
    }

    fn chunks(&self) -> u64 {
        1u64 << (self.n - self.chunk_bits())
    }

    fn scan_chunk(&self, chunk: u64, mut visit: impl FnMut(u64, f64)) {
        let bits = self.chunk_bits();
        let mut mask = chunk << bits;
        let Evaluated {
            value,
            mut v,
            mut s,
        } = self.evaluate(mask);
        visit(mask, value);
        for g in 1u64..(1u64 << bits) {
            let b = g.trailing_zeros() as usize;
            mask ^= 1 << b;
            let j = self.n - 1 - b;
            let delta = if mask >> b & 1 == 1 { 2.0 } else { -2.0 };
            for (vi, gi) in v.iter_mut().zip(self.grad(j)) {
                *vi += delta * gi;
            }
            s += delta * self.offsets[j];
            visit(mask, self.radius * linalg::norm2(&v) + s.abs());
        }
    }

    fn max_value(&self) -> f64 {
        (0..self.chunks())
            .into_par_iter()
            .map(|c| {
                let mut best = f64::NEG_INFINITY;
                self.scan_chunk(c, |_, val| best = best.max(val));
                best
            })
            .reduce(|| f64::NEG_INFINITY, f64::max)
    }

    /// Visits masks with value `>= threshold` in increasing order until `f`
    /// returns `Some`.
    fn find_in_order<T: Send>(
        &self,
        threshold: f64,
        f: impl Fn(u64) -> Option<T> + Sync,
    ) -> Option<T> {
        (0..self.chunks()).into_par_iter().find_map_first(|c| {
            let mut hits = Vec::new();
            self.scan_chunk(c, |mask, val| {
                if val >= threshold {
                    hits.push(mask);
                }
            });
            hits.sort_unstable();
            hits.into_iter().find_map(&f)
        })
    }

    /// Points of the sphere attaining `R‖v‖ + |Λ(x0)|` for one sign vector.
    fn extremal_points(&self, center: &[f64], e: &Evaluated) -> Vec<Vec<f64>> {
        let vnorm = linalg::norm2(&e.v);
        let scale: f64 = self.grads.iter().map(|g| g.abs()).sum::<f64>().max(1.0);
        if vnorm <= f64::EPSILON * scale {
            let mut x = center.to_vec();
            x[0] += self.radius;
            return vec![x];
        }
        let along = |sign: f64| -> Vec<f64> {
            center
                .iter()
                .zip(&e.v)
                .map(|(c, vi)| c + sign * self.radius / vnorm * vi)
                .collect()
        };
        if e.s > 0.0 {
            vec![along(1.0)]
        } else if e.s < 0.0 {
            vec![along(-1.0)]
        } else {
            vec![along(1.0), along(-1.0)]
        }
    }

    fn threshold(max: f64) -> f64 {
        max - TIE_TOLERANCE * max.abs().max(1.0)
    }
}

fn certify(problem: &SignProblem, ball: &Ball) -> NormCertificate {
    let max = problem.max_value();
    let mask = problem
        .find_in_order(SignProblem::threshold(max), Some)
        .expect("the maximum is attained by some mask");
    let e = problem.evaluate(mask);
    let point = problem.extremal_points(ball.center(), &e).swap_remove(0);
    let signs = SignVector::from_mask(mask, problem.n);
    NormCertificate {
        value: e.value,
        k: signs.minority(),
        signs,
        extremal_point: Point::new(point).expect("finite extremal point"),
        direction: e.v,
        ball: ball.clone(),
    }
}

fn offsets_at(basis: &LagrangeBasis, x: &[f64]) -> Vec<f64> {
    basis.barycentric_unchecked(x)
}

/// Exact `‖P‖_B` for the simplex with the given basis.
pub fn projector_norm_with_basis(basis: &LagrangeBasis, ball: &Ball) -> Result<NormCertificate> {
    geometry::check_dim(basis.dim(), ball.dim())?;
    let problem = SignProblem::new(basis, offsets_at(basis, ball.center()), ball.radius())?;
    Ok(certify(&problem, ball))
}

/// Exact `‖P‖_B = max_f [R‖v‖ + |Σ_j f_j λ_j(x0)|]`.
///
/// The simplex need not lie inside the ball.
pub fn projector_norm(simplex: &Simplex, ball: &Ball) -> Result<NormCertificate> {
    geometry::check_dim(simplex.dim(), ball.dim())?;
    if simplex.dim() > MAX_EXACT_DIMENSION {
        return Err(Error::EnumerationCap {
            dimension: simplex.dim(),
            cap: MAX_EXACT_DIMENSION,
        });
    }
    projector_norm_with_basis(&lagrange_basis(simplex)?, ball)
}

/// Norm value only, skipping certificate construction.
pub fn projector_norm_value(basis: &LagrangeBasis, ball: &Ball) -> Result<f64> {
    geometry::check_dim(basis.dim(), ball.dim())?;
    let problem = SignProblem::new(basis, offsets_at(basis, ball.center()), ball.radius())?;
    Ok(problem.max_value())
}

/// Same as [`projector_norm`] when the ball is centered at the centroid,
/// using `|Σ_j f_j| / (n+1)` in place of `|Λ(x0)|`.
pub fn projector_norm_centered(simplex: &Simplex, ball: &Ball) -> Result<NormCertificate> {
    geometry::check_dim(simplex.dim(), ball.dim())?;
    let offset = linalg::distance(&centroid(simplex), ball.center());
    let allowed = CENTERED_TOLERANCE * ball.radius();
    if offset > allowed {
        return Err(Error::CentroidMismatch { offset, allowed });
    }
    if simplex.dim() > MAX_EXACT_DIMENSION {
        return Err(Error::EnumerationCap {
            dimension: simplex.dim(),
            cap: MAX_EXACT_DIMENSION,
        });
    }
    let basis = lagrange_basis(simplex)?;
    let n = simplex.dim();
    let problem = SignProblem::new(&basis, vec![1.0 / (n + 1) as f64; n + 1], ball.radius())?;
    Ok(certify(&problem, ball))
}

/// Lower bound for `‖P‖_B`: the largest `Σ_j |λ_j(x)|` over `samples`
/// uniform points of the sphere. Deterministic in `seed`.
pub fn norm_lower_bound_mc(
    simplex: &Simplex,
    ball: &Ball,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    geometry::check_dim(simplex.dim(), ball.dim())?;
    if samples == 0 {
        return Err(Error::Domain("at least one sample is required".into()));
    }
    let basis = lagrange_basis(simplex)?;
    Ok(sampling::max_over_sphere(
        ball.center(),
        ball.radius(),
        samples,
        seed,
        |x| basis.barycentric_unchecked(x).iter().map(|l| l.abs()).sum(),
    ))
}

/// A 1-point: a sphere point attaining the norm at which exactly one
/// barycentric coordinate is negative. All maximizing sign vectors are
/// examined in lexicographic order; `None` if no such point exists.
pub fn one_point_witness(cert: &NormCertificate, basis: &LagrangeBasis) -> Option<Point> {
    let ball = &cert.ball;
    if basis.dim() != ball.dim() {
        return None;
    }
    let problem = SignProblem::new(basis, offsets_at(basis, ball.center()), ball.radius()).ok()?;
    let threshold = SignProblem::threshold(cert.value);
    problem.find_in_order(threshold, |mask| {
        let e = problem.evaluate(mask);
        problem
            .extremal_points(ball.center(), &e)
            .into_iter()
            .find(|x| {
                basis
                    .barycentric_unchecked(x)
                    .iter()
                    .filter(|&&l| l < -NEGATIVE_TOLERANCE)
                    .count()
                    == 1
            })
            .and_then(|x| Point::new(x).ok())
    })
}
