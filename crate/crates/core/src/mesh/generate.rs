use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::mesh::{Point2, Triangulation};

/// Grid-point distribution for the unit-square families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grading {
    /// Uniform in both directions.
    Uniform,
    /// `x1 = i/N`, `x2 = (i/N)^eps`, `eps >= 1` (Mesh I).
    PowerLaw(f64),
    /// `(1 - cos(i pi / N)) / 2` on both axes (Mesh II).
    Cosine,
}

impl Grading {
    fn validate(self) -> Result<()> {
        match self {
            Grading::PowerLaw(eps) if !(eps >= 1.0) || !eps.is_finite() => Err(
                Error::InvalidMeshParameter(format!("power-law exponent must be >= 1, got {eps}")),
            ),
            _ => Ok(()),
        }
    }

    /// Grid coordinates `(x1 grid, x2 grid)` for `n` divisions.
    pub fn grid(self, n: usize) -> (Vec<f64>, Vec<f64>) {
        let ratio = |i: usize| i as f64 / n as f64;
        let uniform: Vec<f64> = (0..=n).map(ratio).collect();
        let cosine = || -> Vec<f64> {
            (0..=n)
                .map(|i| if i == n { 1.0 } else { 0.5 * (1.0 - (PI * ratio(i)).cos()) })
                .collect()
        };
        match self {
            Grading::Uniform => (uniform.clone(), uniform),
            Grading::PowerLaw(eps) => {
                let x2 = (0..=n).map(|i| ratio(i).powf(eps)).collect();
                (uniform, x2)
            }
            Grading::Cosine => (cosine(), cosine()),
        }
    }
}

/// Tensor-grid triangulation of the unit square: each grid rectangle is split
/// by its lower-left to upper-right diagonal.
pub fn generate_graded_mesh(n: usize, grading: Grading) -> Result<Triangulation> {
    if n == 0 {
        return Err(Error::InvalidMeshParameter("number of divisions must be >= 1".into()));
    }
    grading.validate()?;
    let (xs, ys) = grading.grid(n);
    let mut vertices = Vec::with_capacity((n + 1) * (n + 1));
    for &y in &ys {
        for &x in &xs {
            vertices.push(Point2::new(x, y));
        }
    }
    let id = |i: usize, j: usize| j * (n + 1) + i;
    let mut cells = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            let (v00, v10, v01, v11) = (id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1));
            cells.push([v00, v10, v11]);
            cells.push([v00, v11, v01]);
        }
    }
    Triangulation::new(vertices, cells)
}
