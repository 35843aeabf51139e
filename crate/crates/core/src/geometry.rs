//! Simplices, balls, vertex matrices and the basic Lagrange polynomials.
//!
//! For a simplex with vertices `x1, ..., x_{n+1}` in R^n the vertex matrix
//! `A` has row `j` equal to `(x_j, 1)`. The columns of `A^{-1}` hold the
//! coefficients of the basic Lagrange polynomials `λ_j`, which are at the
//! same time the barycentric coordinates with respect to the simplex.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Relative factor of the degeneracy guard, see [`degeneracy_threshold`].
pub const DEGENERACY_FACTOR: f64 = 1e-12;

/// A point of R^n with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain(
                "point must have at least one coordinate".into(),
            ));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("point coordinates must be finite".into()));
        }
        Ok(Self(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

/// The closed Euclidean ball `B(center; radius)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BallRepr", into = "BallRepr")]
pub struct Ball {
    center: Point,
    radius: f64,
}

#[derive(Serialize, Deserialize)]
struct BallRepr {
    center: Vec<f64>,
    radius: f64,
}

impl Ball {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidBall(format!(
                "radius must be positive, got {radius}"
            )));
        }
        let center = Point::new(center).map_err(|e| Error::InvalidBall(e.to_string()))?;
        Ok(Self { center, radius })
    }

    /// The unit ball `B_n = B(0; 1)`.
    pub fn unit(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n], 1.0)
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        linalg::distance(x, &self.center) <= self.radius + tol
    }
}

impl TryFrom<BallRepr> for Ball {
    type Error = Error;

    fn try_from(r: BallRepr) -> Result<Self> {
        Ball::new(r.center, r.radius)
    }
}

impl From<Ball> for BallRepr {
    fn from(b: Ball) -> Self {
        BallRepr {
            center: b.center.into_inner(),
            radius: b.radius,
        }
    }
}

/// An n-simplex in R^n given by its n+1 vertices.
///
/// Construction checks the shape only; nondegeneracy is checked when the
/// Lagrange basis is built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SimplexRepr", into = "SimplexRepr")]
pub struct Simplex {
    vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct SimplexRepr {
    vertices: Vec<Vec<f64>>,
}

impl Simplex {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::MalformedSimplex(format!(
                "need at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        let n = vertices.len() - 1;
        for (j, v) in vertices.iter().enumerate() {
            if v.len() != n {
                return Err(Error::MalformedSimplex(format!(
                    "{} vertices require dimension {n}, vertex {j} has {} coordinates",
                    n + 1,
                    v.len()
                )));
            }
        }
        let vertices = vertices
            .into_iter()
            .map(Point::new)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::MalformedSimplex(e.to_string()))?;
        Ok(Self { vertices })
    }

    /// Dimension n of the ambient space.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Applies `f` to every vertex.
    pub fn map_vertices(&self, mut f: impl FnMut(&[f64]) -> Vec<f64>) -> Result<Simplex> {
        Simplex::new(self.vertices.iter().map(|v| f(v)).collect())
    }

    /// All pairwise vertex distances, in `(i, j)` order with `i < j`.
    pub fn edge_lengths(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.vertices.len() * self.dim() / 2);
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                out.push(linalg::distance(&self.vertices[i], &self.vertices[j]));
            }
        }
        out
    }

    /// Spread between the longest and the shortest edge; zero for a regular simplex.
    pub fn regularity_defect(&self) -> f64 {
        let edges = self.edge_lengths();
        let max = edges.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = edges.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    }
}

impl TryFrom<SimplexRepr> for Simplex {
    type Error = Error;

    fn try_from(r: SimplexRepr) -> Result<Self> {
        Simplex::new(r.vertices)
    }
}

impl From<Simplex> for SimplexRepr {
    fn from(s: Simplex) -> Self {
        SimplexRepr {
            vertices: s.vertices.into_iter().map(Point::into_inner).collect(),
        }
    }
}

/// The (n+1)x(n+1) matrix whose row j is vertex j followed by a 1.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexMatrix(Matrix);

impl VertexMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }
}

pub fn vertex_matrix(simplex: &Simplex) -> VertexMatrix {
    let rows: Vec<Vec<f64>> = simplex
        .vertices()
        .iter()
        .map(|v| v.iter().copied().chain(std::iter::once(1.0)).collect())
        .collect();
    VertexMatrix(Matrix::from_rows(&rows).expect("simplex rows have equal length"))
}

/// `A^{-1}` for a nondegenerate simplex. Column j holds `(l_1j, ..., l_nj, l_{n+1,j})`.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeBasis {
    coeffs: Matrix,
    det: f64,
}

impl LagrangeBasis {
    /// Wraps a precomputed inverse vertex matrix, e.g. a closed form.
    pub fn from_inverse(coeffs: Matrix, det: f64) -> Result<Self> {
        if coeffs.rows() != coeffs.cols() || coeffs.rows() < 2 {
            return Err(Error::MalformedSimplex(format!(
                "inverse vertex matrix must be square of size >= 2, got {}x{}",
                coeffs.rows(),
                coeffs.cols()
            )));
        }
        Ok(Self { coeffs, det })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.rows() - 1
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    /// Determinant of the vertex matrix this basis was inverted from.
    pub fn vertex_determinant(&self) -> f64 {
        self.det
    }

    /// Linear part `g_j = (l_1j, ..., l_nj)` of `λ_j`.
    pub fn gradient(&self, j: usize) -> Vec<f64> {
        (0..self.dim()).map(|i| self.coeffs[(i, j)]).collect()
    }

    /// Constant term `l_{n+1,j}` of `λ_j`.
    pub fn constant(&self, j: usize) -> f64 {
        self.coeffs[(self.dim(), j)]
    }

    /// `λ_j(x)` without a dimension check.
    pub(crate) fn eval_unchecked(&self, j: usize, x: &[f64]) -> f64 {
        let n = self.dim();
        let mut acc = self.coeffs[(n, j)];
        for (i, xi) in x.iter().enumerate() {
            acc += self.coeffs[(i, j)] * xi;
        }
        acc
    }

    pub(crate) fn barycentric_unchecked(&self, x: &[f64]) -> Vec<f64> {
        (0..=self.dim())
            .map(|j| self.eval_unchecked(j, x))
            .collect()
    }

    /// `Σ_j |λ_j(x)|`, the Lebesgue function of the projector.
    pub fn lebesgue_function(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        Ok(self.barycentric_unchecked(x).iter().map(|l| l.abs()).sum())
    }
}

/// Degeneracy threshold `1e-12 * ρ^n`, with `ρ` the largest vertex distance
/// from the centroid. `det A` scales like `ρ^n` and does not see translations.
pub fn degeneracy_threshold(simplex: &Simplex) -> f64 {
    let c = centroid(simplex);
    let rho = simplex
        .vertices()
        .iter()
        .map(|v| linalg::distance(v, &c))
        .fold(0.0, f64::max);
    DEGENERACY_FACTOR * rho.powi(simplex.dim() as i32)
}

pub fn lagrange_basis(simplex: &Simplex) -> Result<LagrangeBasis> {
    let a = vertex_matrix(simplex);
    let threshold = degeneracy_threshold(simplex);
    match a.0.inverse_with_det() {
        Some((coeffs, det)) if det.abs() >= threshold && det.abs() > 0.0 => {
            Ok(LagrangeBasis { coeffs, det })
        }
        Some((_, det)) => Err(Error::DegenerateSimplex { det, threshold }),
        None => Err(Error::DegenerateSimplex {
            det: 0.0,
            threshold,
        }),
    }
}

/// Barycentric coordinates `(λ_1(x), ..., λ_{n+1}(x))`.
pub fn barycentric(basis: &LagrangeBasis, x: &[f64]) -> Result<Vec<f64>> {
    check_dim(basis.dim(), x.len())?;
    Ok(basis.barycentric_unchecked(x))
}

/// Center of gravity of the vertices.
pub fn centroid(simplex: &Simplex) -> Point {
    let n = simplex.dim();
    let mut c = vec![0.0; n];
    for v in simplex.vertices() {
        for (ci, vi) in c.iter_mut().zip(v.iter()) {
            *ci += vi;
        }
    }
    let scale = 1.0 / (n + 1) as f64;
    c.iter_mut().for_each(|ci| *ci *= scale);
    Point(c)
}

/// The segment `{0}, {1}` used as the one-dimensional regular simplex.
pub fn unit_segment() -> Simplex {
    Simplex::new(vec![vec![0.0], vec![1.0]]).expect("valid segment")
}

/// Ball circumscribed about the standard regular simplex of the given dimension.
///
/// For n >= 2 the simplex has vertices `e_1, ..., e_n` and
/// `((1 - √(n+1))/n, ...)`; its circumcenter has all coordinates
/// `(1 - √(1/(n+1)))/n` and the radius is `√(n/(n+1))`. For n = 1 the
/// simplex is `[0, 1]` and the ball is `B(0.5; 0.5)`.
pub fn circumscribed_ball_regular(n: usize) -> Result<Ball> {
    match n {
        0 => Err(Error::Domain("dimension must be at least 1".into())),
        1 => Ball::new(vec![0.5], 0.5),
        _ => {
            let nf = n as f64;
            let coord = (1.0 - (1.0 / (nf + 1.0)).sqrt()) / nf;
            Ball::new(vec![coord; n], (nf / (nf + 1.0)).sqrt())
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
