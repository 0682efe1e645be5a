//! Convergence studies over a family of graded meshes.

use rayon::prelude::*;

use super::errors::{error_pressure_with, error_velocity_h1_with, error_velocity_l2_with, ErrorQuadrature};
use super::problems::ExactProblem;
use crate::error::{Error, Result};
use crate::mesh::{generate_graded_mesh, quality_report, Grading, MeshQualityReport};
use crate::solver::{picard_solve, PicardConfig};

/// Experimental order `log(e_N / e_2N) / log 2`.
pub fn convergence_rate(e_n: f64, e_2n: f64) -> Result<f64> {
    rate_between(e_n, e_2n, 2.0)
}

/// Order between two meshes whose division numbers differ by `ratio`.
pub fn rate_between(e_coarse: f64, e_fine: f64, ratio: f64) -> Result<f64> {
    if !(e_coarse > 0.0 && e_fine > 0.0) {
        return Err(Error::InvalidArgument(format!("errors must be positive, got {e_coarse} and {e_fine}")));
    }
    Ok((e_coarse / e_fine).ln() / ratio.ln())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub h: f64,
    pub err_vh: f64,
    pub rate_vh: Option<f64>,
    pub err_l2: f64,
    pub rate_l2: Option<f64>,
    pub err_qh: f64,
    pub rate_qh: Option<f64>,
    pub picard_iters: usize,
    pub converged: bool,
    pub dofs: usize,
}

#[derive(Debug, Clone)]
pub struct StudyReport {
    pub example: String,
    pub grading: Grading,
    pub nu: f64,
    pub error_quadrature: ErrorQuadrature,
    pub solver: PicardConfig,
    pub rows: Vec<ConvergenceRow>,
    pub quality: Vec<MeshQualityReport>,
}

/// Solves `problem` on `generate_graded_mesh(n, grading)` for every `n` in
/// `ns` (ascending) and tabulates relative errors and rates.
pub fn run_study(problem: &ExactProblem, grading: Grading, ns: &[usize], config: &PicardConfig) -> Result<StudyReport> {
    run_study_with(problem, grading, ns, config, ErrorQuadrature::default())
}

/// `run_study` with a chosen error quadrature.
pub fn run_study_with(
    problem: &ExactProblem,
    grading: Grading,
    ns: &[usize],
    config: &PicardConfig,
    quad: ErrorQuadrature,
) -> Result<StudyReport> {
    if ns.is_empty() {
        return Err(Error::InvalidArgument("empty list of division numbers".into()));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!("division numbers must be strictly ascending: {ns:?}")));
    }
    if problem.exact.is_none() {
        return Err(Error::InvalidArgument(format!("{} has no exact solution to measure against", problem.name)));
    }
    let solved: Vec<Result<(ConvergenceRow, MeshQualityReport)>> = ns
        .par_iter()
        .map(|&n| {
            let tri = generate_graded_mesh(n, grading)?;
            let quality = quality_report(&tri);
            let sol = picard_solve(problem, &tri, config)?;
            let row = ConvergenceRow {
                n,
                h: tri.h(),
                err_vh: error_velocity_h1_with(&sol.u_h, problem, &tri, quad)?,
                rate_vh: None,
                err_l2: error_velocity_l2_with(&sol.u_h, problem, &tri, quad)?,
                rate_l2: None,
                err_qh: error_pressure_with(&sol.p_h, problem, &tri, quad)?,
                rate_qh: None,
                picard_iters: sol.iterations,
                converged: sol.converged,
                dofs: tri.num_dofs(),
            };
            Ok((row, quality))
        })
        .collect();
    let mut rows = Vec::with_capacity(ns.len());
    let mut quality = Vec::with_capacity(ns.len());
    for r in solved {
        let (row, q) = r?;
        rows.push(row);
        quality.push(q);
    }
    for i in 1..rows.len() {
        let ratio = rows[i].n as f64 / rows[i - 1].n as f64;
        let (prev, cur) = (&rows[i - 1], &rows[i]);
        let rate = |a: f64, b: f64| rate_between(a, b, ratio).ok();
        let (rv, rl, rq) = (rate(prev.err_vh, cur.err_vh), rate(prev.err_l2, cur.err_l2), rate(prev.err_qh, cur.err_qh));
        rows[i].rate_vh = rv;
        rows[i].rate_l2 = rl;
        rows[i].rate_qh = rq;
    }
    Ok(StudyReport {
        example: problem.name.clone(),
        grading,
        nu: problem.nu,
        error_quadrature: quad,
        solver: config.clone(),
        rows,
        quality,
    })
}
