//! Benchmark fixtures shared by the criterion targets.

use ball_interp::{sampling, Ball, Simplex};

/// `n + 1` random nodes on the unit sphere, fixed by `seed`.
pub fn random_sphere_simplex(n: usize, seed: u64) -> (Simplex, Ball) {
    let mut rng = sampling::stream_rng(seed, 0);
    let vertices = (0..=n)
        .map(|_| sampling::unit_vector(&mut rng, n))
        .collect();
    (
        Simplex::new(vertices).expect("valid shape"),
        Ball::unit(n).expect("positive radius"),
    )
}
