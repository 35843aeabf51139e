//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use ball_interp::{sampling, Ball, Simplex};
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    sampling::stream_rng(seed, 1000)
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<f64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * m[0][j] * cofactor_det(&minor)
        })
        .sum()
}

/// Vertex matrix rows `(x_j, 1)` built without the library.
pub fn augmented_rows(simplex: &Simplex) -> Vec<Vec<f64>> {
    simplex
        .vertices()
        .iter()
        .map(|v| v.iter().copied().chain([1.0]).collect())
        .collect()
}

/// `A^{-1}` through nalgebra's LU, as nested rows.
pub fn nalgebra_inverse(simplex: &Simplex) -> Vec<Vec<f64>> {
    let rows = augmented_rows(simplex);
    let n = rows.len();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let inv = m.try_inverse().expect("invertible");
    (0..n)
        .map(|i| (0..n).map(|j| inv[(i, j)]).collect())
        .collect()
}

/// Barycentric coordinates by solving `A^T λ = (x, 1)` with nalgebra.
pub fn nalgebra_barycentric(simplex: &Simplex, x: &[f64]) -> Vec<f64> {
    let rows = augmented_rows(simplex);
    let n = rows.len();
    let at = DMatrix::from_fn(n, n, |i, j| rows[j][i]);
    let rhs = nalgebra::DVector::from_iterator(n, x.iter().copied().chain([1.0]));
    let sol = at.lu().solve(&rhs).expect("solvable");
    sol.iter().copied().collect()
}

/// Norm by enumerating all `2^{n+1}` sign vectors (no symmetry quotient),
/// evaluating `R‖v‖ + |Λ(x0)|` from a nalgebra inverse.
pub fn brute_force_norm(simplex: &Simplex, ball: &Ball) -> f64 {
    let inv = nalgebra_inverse(simplex);
    let n = simplex.dim();
    let x0 = ball.center();
    let mut best = f64::NEG_INFINITY;
    for mask in 0u64..(1 << (n + 1)) {
        let f = |j: usize| if mask >> j & 1 == 1 { 1.0 } else { -1.0 };
        let v: Vec<f64> = (0..n)
            .map(|i| (0..=n).map(|j| f(j) * inv[i][j]).sum())
            .collect();
        let lam0: f64 = (0..=n)
            .map(|j| f(j) * ((0..n).map(|i| inv[i][j] * x0[i]).sum::<f64>() + inv[n][j]))
            .sum();
        let val = ball.radius() * v.iter().map(|x| x * x).sum::<f64>().sqrt() + lam0.abs();
        best = best.max(val);
    }
    best
}

/// `max Σ|λ_j|` over `samples` sphere points, barycentrics via nalgebra.
pub fn sampled_norm(simplex: &Simplex, ball: &Ball, samples: usize, seed: u64) -> f64 {
    let inv = nalgebra_inverse(simplex);
    let n = simplex.dim();
    let mut rng = rng(seed);
    let mut best = f64::NEG_INFINITY;
    for _ in 0..samples {
        let u = sampling::unit_vector(&mut rng, n);
        let x: Vec<f64> = ball
            .center()
            .iter()
            .zip(&u)
            .map(|(c, ui)| c + ball.radius() * ui)
            .collect();
        let s: f64 = (0..=n)
            .map(|j| ((0..n).map(|i| inv[i][j] * x[i]).sum::<f64>() + inv[n][j]).abs())
            .sum();
        best = best.max(s);
    }
    best
}

/// Absorption index by bisection on σ, testing containment of sampled
/// sphere points in the dilated simplex `σS` directly from its vertices.
///
/// Sampling underestimates `min λ_j` over the sphere only slightly; the
/// best sample per face is then polished by a shrinking random search.
pub fn bisection_absorption(simplex: &Simplex, ball: &Ball, samples: usize, seed: u64) -> f64 {
    let n = simplex.dim();
    let c: Vec<f64> = (0..n)
        .map(|i| simplex.vertices().iter().map(|v| v[i]).sum::<f64>() / (n + 1) as f64)
        .collect();
    let mut rng = rng(seed);
    let on_sphere = |u: &[f64]| -> Vec<f64> {
        ball.center()
            .iter()
            .zip(u)
            .map(|(ci, ui)| ci + ball.radius() * ui)
            .collect()
    };
    // barycentric coordinates w.r.t. the dilated simplex via nalgebra
    let dilated = |sigma: f64| -> Simplex {
        simplex
            .map_vertices(|v| {
                v.iter()
                    .zip(&c)
                    .map(|(x, ci)| ci + sigma * (x - ci))
                    .collect()
            })
            .unwrap()
    };
    // worst sphere directions, one per face, found at σ = 1
    let inv = nalgebra_inverse(simplex);
    let lambda =
        |x: &[f64], j: usize| -> f64 { (0..n).map(|i| inv[i][j] * x[i]).sum::<f64>() + inv[n][j] };
    let mut worst: Vec<(f64, Vec<f64>)> = vec![(f64::INFINITY, vec![]); n + 1];
    for _ in 0..samples {
        let u = sampling::unit_vector(&mut rng, n);
        let x = on_sphere(&u);
        let lam: Vec<f64> = (0..=n).map(|j| lambda(&x, j)).collect();
        for j in 0..=n {
            if lam[j] < worst[j].0 {
                worst[j] = (lam[j], u.clone());
            }
        }
    }
    let mut probes: Vec<Vec<f64>> = Vec::new();
    for (j, (mut val, mut u)) in worst.into_iter().enumerate() {
        let mut step = 0.05;
        while step > 1e-9 {
            let cand: Vec<f64> = u
                .iter()
                .map(|x| x + step * rng.random_range(-1.0..1.0))
                .collect();
            let norm = cand.iter().map(|x| x * x).sum::<f64>().sqrt();
            let cand: Vec<f64> = cand.iter().map(|x| x / norm).collect();
            let l = lambda(&on_sphere(&cand), j);
            if l < val {
                val = l;
                u = cand;
            } else {
                step *= 0.97;
            }
        }
        probes.push(on_sphere(&u));
    }
    let contains_all = |sigma: f64| -> bool {
        let s = dilated(sigma);
        probes
            .iter()
            .all(|x| nalgebra_barycentric(&s, x).iter().all(|&l| l >= 0.0))
    };
    if contains_all(1.0) {
        return 1.0;
    }
    let mut lo = 1.0;
    let mut hi = 2.0;
    while !contains_all(hi) {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if contains_all(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `n + 1` uniform points in the ball, rejecting poorly shaped simplices.
pub fn random_simplex_in_ball(n: usize, ball: &Ball, rng: &mut ChaCha8Rng) -> Simplex {
    loop {
        let vertices: Vec<Vec<f64>> = (0..=n)
            .map(|_| {
                sampling::unit_ball_point(rng, n)
                    .iter()
                    .zip(ball.center().iter())
                    .map(|(u, c)| c + ball.radius() * u)
                    .collect()
            })
            .collect();
        let s = Simplex::new(vertices).unwrap();
        let det = cofactor_det(&augmented_rows(&s)).abs();
        // keep simplices with a normalized volume that is not tiny
        if det > 1e-3 * ball.radius().powi(n as i32) {
            return s;
        }
    }
}

/// `n + 1` uniform points on the unit sphere.
pub fn random_sphere_simplex(n: usize, rng: &mut ChaCha8Rng) -> Simplex {
    Simplex::new((0..=n).map(|_| sampling::unit_vector(rng, n)).collect()).unwrap()
}

/// Random orthogonal matrix (QR of a Gaussian matrix), rows as vectors.
pub fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let g = DMatrix::from_fn(n, n, |_, _| {
        rng.sample::<f64, _>(rand_distr::StandardNormal)
    });
    let q = g.qr().q();
    (0..n)
        .map(|i| (0..n).map(|j| q[(i, j)]).collect())
        .collect()
}

pub fn apply_affine(m: &[Vec<f64>], shift: &[f64], x: &[f64]) -> Vec<f64> {
    m.iter()
        .zip(shift)
        .map(|(row, s)| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + s)
        .collect()
}
