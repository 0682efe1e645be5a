//! Relative error norms against an exact solution.

use rayon::prelude::*;

use super::problems::{ExactProblem, ExactSolution};
use crate::elements::{edge_midpoint_rule, quadrature_rule, vertex_midpoint_centroid_rule, QuadratureRule};
use crate::error::{Error, Result};
use crate::interpolation::{CrFunction, P0Function};
use crate::mesh::Triangulation;

/// Quadrature degree of all error integrals.
pub const ERROR_QUADRATURE_DEGREE: usize = 12;

fn exact(problem: &ExactProblem) -> Result<&ExactSolution> {
    problem
        .exact
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument(format!("{} has no exact solution", problem.name)))
}

/// Quadrature used for the error integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorQuadrature {
    /// Degree `ERROR_QUADRATURE_DEGREE`; exact for polynomial data up to
    /// that degree.
    #[default]
    HighOrder,
    /// Low-order nodal rules: the degree-3 vertex/midpoint/centroid rule for
    /// velocity norms and the edge-midpoint rule for the pressure norm.
    /// Published convergence tables for this method were computed this way.
    Nodal,
}

impl ErrorQuadrature {
    fn velocity_rule(self) -> QuadratureRule<f64> {
        match self {
            Self::HighOrder => quadrature_rule(ERROR_QUADRATURE_DEGREE).expect("supported degree"),
            Self::Nodal => vertex_midpoint_centroid_rule(),
        }
    }

    fn pressure_rule(self) -> QuadratureRule<f64> {
        match self {
            Self::HighOrder => quadrature_rule(ERROR_QUADRATURE_DEGREE).expect("supported degree"),
            Self::Nodal => edge_midpoint_rule(),
        }
    }
}

/// Sums `(error, reference)` integrals over cells.
fn cell_sums<F>(tri: &Triangulation, per_cell: F) -> (f64, f64)
where
    F: Fn(usize) -> (f64, f64) + Sync + Send,
{
    let parts: Vec<(f64, f64)> = (0..tri.num_cells()).into_par_iter().map(per_cell).collect();
    parts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y))
}

fn ratio(num: f64, den: f64, what: &str) -> Result<f64> {
    if den == 0.0 {
        return Err(Error::InvalidArgument(format!("exact {what} norm vanishes")));
    }
    Ok((num / den).sqrt())
}

/// `|u - u_h|_{H1(T_h)} / |u|_{H1}`.
pub fn error_velocity_h1(u_h: &CrFunction, problem: &ExactProblem, tri: &Triangulation) -> Result<f64> {
    error_velocity_h1_with(u_h, problem, tri, ErrorQuadrature::HighOrder)
}

pub fn error_velocity_h1_with(
    u_h: &CrFunction,
    problem: &ExactProblem,
    tri: &Triangulation,
    quad: ErrorQuadrature,
) -> Result<f64> {
    let ex = exact(problem)?;
    let rule = quad.velocity_rule();
    let (e, r) = cell_sums(tri, |cell| {
        let gh = [u_h.cell_gradient(tri, cell, 0), u_h.cell_gradient(tri, cell, 1)];
        let area = tri.area(cell);
        rule.physical_points(&tri.shape(cell).vertices).fold((0.0, 0.0), |(e, r), (x, w)| {
            let g = (ex.grad_u)(x);
            let mut de = 0.0;
            let mut dr = 0.0;
            for i in 0..2 {
                let d = [g[i][0] - gh[i].x1, g[i][1] - gh[i].x2];
                de += d[0] * d[0] + d[1] * d[1];
                dr += g[i][0] * g[i][0] + g[i][1] * g[i][1];
            }
            (e + w * area * de, r + w * area * dr)
        })
    });
    ratio(e, r, "velocity gradient")
}

/// `||u - u_h||_{L2} / ||u||_{L2}`.
pub fn error_velocity_l2(u_h: &CrFunction, problem: &ExactProblem, tri: &Triangulation) -> Result<f64> {
    error_velocity_l2_with(u_h, problem, tri, ErrorQuadrature::HighOrder)
}

pub fn error_velocity_l2_with(
    u_h: &CrFunction,
    problem: &ExactProblem,
    tri: &Triangulation,
    quad: ErrorQuadrature,
) -> Result<f64> {
    let ex = exact(problem)?;
    let rule = quad.velocity_rule();
    let (e, r) = cell_sums(tri, |cell| {
        let area = tri.area(cell);
        rule.physical_points(&tri.shape(cell).vertices).fold((0.0, 0.0), |(e, r), (x, w)| {
            let u = (ex.u)(x);
            let d = [u[0] - u_h.cell_value(tri, cell, 0, x), u[1] - u_h.cell_value(tri, cell, 1, x)];
            (e + w * area * (d[0] * d[0] + d[1] * d[1]), r + w * area * (u[0] * u[0] + u[1] * u[1]))
        })
    });
    ratio(e, r, "velocity")
}

/// `||p - p_h|| / ||p||` with both pressures shifted to zero mean.
pub fn error_pressure(p_h: &P0Function, problem: &ExactProblem, tri: &Triangulation) -> Result<f64> {
    error_pressure_with(p_h, problem, tri, ErrorQuadrature::HighOrder)
}

pub fn error_pressure_with(
    p_h: &P0Function,
    problem: &ExactProblem,
    tri: &Triangulation,
    quad: ErrorQuadrature,
) -> Result<f64> {
    let ex = exact(problem)?;
    let rule = quad.pressure_rule();
    let integral: Vec<f64> = (0..tri.num_cells())
        .into_par_iter()
        .map(|cell| tri.area(cell) * rule.physical_points(&tri.shape(cell).vertices).map(|(x, w)| w * (ex.p)(x)).sum::<f64>())
        .collect();
    let mean_exact = integral.iter().sum::<f64>() / tri.total_area();
    let mean_h = p_h.mean(tri);
    let (e, r) = cell_sums(tri, |cell| {
        let area = tri.area(cell);
        let ph = p_h.values[cell] - mean_h;
        rule.physical_points(&tri.shape(cell).vertices).fold((0.0, 0.0), |(e, r), (x, w)| {
            let p = (ex.p)(x) - mean_exact;
            (e + w * area * (p - ph) * (p - ph), r + w * area * p * p)
        })
    });
    ratio(e, r, "pressure")
}
