//! Reproducible uniform sampling on spheres.
//!
//! Each block of samples draws from its own ChaCha8 stream keyed by
//! `(seed, block index)`, so results do not depend on how blocks are
//! scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Samples per independent stream.
pub const BLOCK: usize = 4096;

/// Generator for stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point on the unit sphere of R^n (normalized Gaussian vector).
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-300 {
            v.iter_mut().for_each(|x| *x /= norm);
            return v;
        }
    }
}

/// Uniform point inside the unit ball of R^n.
pub fn unit_ball_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut v = unit_vector(rng, n);
    let r: f64 = rng.random::<f64>().powf(1.0 / n as f64);
    v.iter_mut().for_each(|x| *x *= r);
    v
}

/// Maximum of `f` over `samples` uniform points of the sphere
/// `‖x - center‖ = radius`. Returns `-inf` when `samples == 0`.
pub fn max_over_sphere<F>(center: &[f64], radius: f64, samples: usize, seed: u64, f: F) -> f64
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let blocks = samples.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, b as u64);
            let count = BLOCK.min(samples - b * BLOCK);
            let mut x = vec![0.0; center.len()];
            let mut best = f64::NEG_INFINITY;
            for _ in 0..count {
                let u = unit_vector(&mut rng, center.len());
                for ((xi, ci), ui) in x.iter_mut().zip(center).zip(&u) {
                    *xi = ci + radius * ui;
                }
                best = best.max(f(&x));
            }
            best
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_vectors_are_unit() {
        let mut rng = stream_rng(7, 0);
        for n in 1..6 {
            let v = unit_vector(&mut rng, n);
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn ball_points_inside() {
        let mut rng = stream_rng(7, 1);
        for _ in 0..100 {
            let v = unit_ball_point(&mut rng, 3);
            assert!(v.iter().map(|x| x * x).sum::<f64>() <= 1.0 + 1e-14);
        }
    }

    #[test]
    fn max_is_deterministic_and_bounded() {
        let f = |x: &[f64]| x[0] + 2.0 * x[1];
        let a = max_over_sphere(&[1.0, 1.0], 2.0, 10_000, 3, f);
        let b = max_over_sphere(&[1.0, 1.0], 2.0, 10_000, 3, f);
        assert_eq!(a.to_bits(), b.to_bits());
        let exact = 3.0 + 2.0 * 5f64.sqrt();
        assert!(a <= exact + 1e-12 && a > exact - 1e-3);
    }
}
