//! Numerical search for minimal projectors on the unit ball.
//!
//! A minimal projector on `B_n` can always be realized with every node on
//! the unit sphere, so the search only moves nodes along the sphere: a
//! random vertex is perturbed by a Gaussian step and renormalized, and the
//! move is kept when it strictly lowers the exact norm. Rejected moves
//! shrink the step. Restart 0 starts from the regular simplex, so the
//! result never exceeds the regular-simplex norm.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{lagrange_basis, Ball, Simplex};
use crate::norm::{projector_norm_value, MAX_EXACT_DIMENSION};
use crate::regular::inscribed_regular;
use crate::sampling;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    pub restarts: usize,
    pub max_iterations: usize,
    pub initial_step: f64,
    pub step_decay: f64,
    pub tolerance: f64,
    pub seed: u64,
    /// Moves producing `|det A| < epsilon` are rejected.
    pub epsilon: f64,
}

impl SearchConfig {
    /// Default budget: 8 restarts of 5000 iterations, step 0.3, decay 0.995.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            restarts: 8,
            max_iterations: 5000,
            initial_step: 0.3,
            step_decay: 0.995,
            tolerance: 1e-9,
            seed: 0,
            epsilon: 1e-10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n == 0 || self.n > MAX_EXACT_DIMENSION {
            return bad(format!(
                "n must be in 1..={MAX_EXACT_DIMENSION}, got {}",
                self.n
            ));
        }
        if self.restarts == 0 {
            return bad("restarts must be at least 1".into());
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be at least 1".into());
        }
        if !(self.initial_step.is_finite() && self.initial_step > 0.0) {
            return bad(format!(
                "initial step must be positive, got {}",
                self.initial_step
            ));
        }
        if !(self.step_decay > 0.0 && self.step_decay < 1.0) {
            return bad(format!(
                "step decay must lie in (0, 1), got {}",
                self.step_decay
            ));
        }
        if !(self.tolerance > 0.0 && self.tolerance < self.initial_step) {
            return bad(format!(
                "tolerance must be positive and below the initial step, got {}",
                self.tolerance
            ));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_norm: f64,
    pub best_simplex: Simplex,
    /// Best norm reached by each restart; `NaN` for a restart that never
    /// found a nondegenerate start.
    pub history: Vec<f64>,
    /// Longest minus shortest edge of `best_simplex`.
    pub regularity_defect: f64,
}

/// Outcome of one restart.
#[derive(Debug, Clone)]
pub struct Descent {
    pub simplex: Simplex,
    pub norm: f64,
    /// Objective after the start and after every accepted move.
    pub accepted: Vec<f64>,
    pub iterations: usize,
}

/// Regular simplex with centroid at the origin and circumradius 1.
pub fn center_regular_in_unit_ball(n: usize) -> Result<Simplex> {
    let (simplex, ball) = inscribed_regular(n)?;
    let c = ball.center().to_vec();
    let r = ball.radius();
    simplex.map_vertices(|v| v.iter().zip(&c).map(|(x, ci)| (x - ci) / r).collect())
}

fn objective(vertices: &[Vec<f64>], ball: &Ball, epsilon: f64) -> Option<f64> {
    let simplex = Simplex::new(vertices.to_vec()).ok()?;
    let basis = lagrange_basis(&simplex).ok()?;
    if basis.vertex_determinant().abs() < epsilon {
        return None;
    }
    projector_norm_value(&basis, ball).ok()
}

const START_ATTEMPTS: usize = 1000;

/// Runs one restart. Restart 0 starts at the regular simplex; the others at
/// random nodes on the sphere drawn from stream `restart` of the seed.
pub fn descend(config: &SearchConfig, restart: usize) -> Result<Option<Descent>> {
    config.validate()?;
    let n = config.n;
    let ball = Ball::unit(n)?;
    let mut rng = sampling::stream_rng(config.seed, restart as u64);

    let start = if restart == 0 {
        let s = center_regular_in_unit_ball(n)?;
        let vertices: Vec<Vec<f64>> = s.vertices().iter().map(|v| v.to_vec()).collect();
        objective(&vertices, &ball, config.epsilon).map(|f| (vertices, f))
    } else {
        (0..START_ATTEMPTS).find_map(|_| {
            let vertices: Vec<Vec<f64>> = (0..=n)
                .map(|_| sampling::unit_vector(&mut rng, n))
                .collect();
            objective(&vertices, &ball, config.epsilon).map(|f| (vertices, f))
        })
    };
    let Some((mut vertices, mut current)) = start else {
        return Ok(None);
    };

    let mut accepted = vec![current];
    let mut step = config.initial_step;
    let mut iterations = 0;
    while iterations < config.max_iterations && step >= config.tolerance {
        iterations += 1;
        let j = rng.random_range(0..=n);
        let mut moved: Vec<f64> = vertices[j]
            .iter()
            .map(|x| x + step * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let norm = moved.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-300 {
            step *= config.step_decay;
            continue;
        }
        moved.iter_mut().for_each(|x| *x /= norm);
        let previous = std::mem::replace(&mut vertices[j], moved);
        match objective(&vertices, &ball, config.epsilon) {
            Some(f) if f < current => {
                current = f;
                accepted.push(f);
            }
            _ => {
                vertices[j] = previous;
                step *= config.step_decay;
            }
        }
    }
    Ok(Some(Descent {
        simplex: Simplex::new(vertices)?,
        norm: current,
        accepted,
        iterations,
    }))
}

/// Minimizes the projector norm over node sets on the unit sphere.
///
/// Restarts run in parallel; the lowest norm wins, ties going to the lowest
/// restart index.
pub fn minimize_norm(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let runs = (0..config.restarts)
        .into_par_iter()
        .map(|r| descend(config, r))
        .collect::<Result<Vec<_>>>()?;
    let history: Vec<f64> = runs
        .iter()
        .map(|r| r.as_ref().map_or(f64::NAN, |d| d.norm))
        .collect();
    let best = runs
        .into_iter()
        .flatten()
        .reduce(|best, d| if d.norm < best.norm { d } else { best })
        .ok_or_else(|| Error::SearchFailed("every restart was degenerate".into()))?;
    Ok(SearchResult {
        best_norm: best.norm,
        regularity_defect: best.simplex.regularity_defect(),
        best_simplex: best.simplex,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(3).validate().is_ok());
        let bad = [
            SearchConfig {
                restarts: 0,
                ..SearchConfig::new(3)
            },
            SearchConfig {
                n: 0,
                ..SearchConfig::new(3)
            },
            SearchConfig {
                n: 26,
                ..SearchConfig::new(3)
            },
            SearchConfig {
                step_decay: 1.0,
                ..SearchConfig::new(3)
            },
            SearchConfig {
                tolerance: 0.5,
                ..SearchConfig::new(3)
            },
            SearchConfig {
                initial_step: -1.0,
                ..SearchConfig::new(3)
            },
            SearchConfig {
                epsilon: 0.0,
                ..SearchConfig::new(3)
            },
        ];
        for c in bad {
            assert!(
                matches!(minimize_norm(&c), Err(Error::InvalidConfig(_))),
                "{c:?}"
            );
        }
    }

    #[test]
    fn descent_is_monotone() {
        let config = SearchConfig {
            max_iterations: 400,
            seed: 5,
            ..SearchConfig::new(3)
        };
        for restart in 1..4 {
            let d = descend(&config, restart).unwrap().unwrap();
            assert!(d.accepted.windows(2).all(|w| w[1] < w[0]));
            for v in d.simplex.vertices() {
                let r: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                assert!((r - 1.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let config = SearchConfig {
            restarts: 3,
            max_iterations: 300,
            seed: 9,
            ..SearchConfig::new(3)
        };
        let a = minimize_norm(&config).unwrap();
        let b = minimize_norm(&config).unwrap();
        assert_eq!(a, b);
    }
}
