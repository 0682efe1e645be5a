//! Picard iteration for the discrete rotational Navier-Stokes system.
//!
//! Each step freezes the convecting field, eliminates the boundary velocity
//! DOFs, pins the pressure of cell 0 and solves the saddle system, by default
//! with GMRES preconditioned by ILU(0). The pressure is shifted to zero mean
//! after every solve.

use std::cell::RefCell;

use crate::analysis::ExactProblem;
use crate::assembly::{
    apply_dirichlet, assemble_convection, assemble_divergence, assemble_laplacian, assemble_load_lifted,
    boundary_values, DofMap, SaddleSystem, LOAD_QUADRATURE_DEGREE,
};
use crate::error::{Error, Result};
use crate::interpolation::{interpolate_cr, project_p0, CrFunction, P0Function};
use crate::linalg::vector::dot;
use crate::linalg::{gmres_with_guess, ilu0_factorize, CsrMatrix, GmresOptions, SparseLuPattern};
use crate::mesh::Triangulation;

/// Iterative-refinement rounds after each direct solve.
const LU_REFINEMENT_STEPS: usize = 3;

/// Method for the linear saddle-point solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LinearSolverKind {
    /// Restarted GMRES with ILU(0), warm-started from the previous iterate.
    #[default]
    GmresIlu0,
    /// Sparse LU with partial pivoting; the symbolic analysis is shared by
    /// all Picard steps.
    SparseLu,
}

/// Starting iterate of the Picard loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Initialization {
    /// CR interpolant of the exact velocity and cell means of the exact
    /// pressure.
    ExactInterpolant,
    /// Solution of the Stokes problem with the same data.
    Stokes,
    Zero,
}

#[derive(Debug, Clone)]
pub struct PicardConfig {
    pub end_tol: f64,
    pub max_iters: usize,
    /// `None` picks `ExactInterpolant` when an exact solution is known and
    /// `Stokes` otherwise.
    pub init: Option<Initialization>,
    pub quad_degree_load: usize,
    pub linear_solver: LinearSolverKind,
    /// GMRES settings, used with `LinearSolverKind::GmresIlu0`.
    pub linear: GmresOptions<f64>,
}

impl Default for PicardConfig {
    fn default() -> Self {
        Self {
            end_tol: 1e-10,
            max_iters: 100,
            init: None,
            quad_degree_load: LOAD_QUADRATURE_DEGREE,
            linear_solver: LinearSolverKind::default(),
            linear: GmresOptions::default(),
        }
    }
}

impl PicardConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.end_tol > 0.0) {
            return Err(Error::InvalidArgument(format!("end_tol must be positive, got {}", self.end_tol)));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument("max_iters must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub u_h: CrFunction,
    /// Zero-mean pressure.
    pub p_h: P0Function,
    pub iterations: usize,
    /// `|du|_A + |dp|_M` per Picard step.
    pub history: Vec<f64>,
    pub converged: bool,
    /// GMRES iterations per linear solve (1 per direct solve).
    pub linear_iterations: Vec<usize>,
}

/// `p - (sum_T |T| p_T) / |Omega|`.
pub fn normalize_pressure(p: &P0Function, tri: &Triangulation) -> P0Function {
    let m = p.mean(tri);
    P0Function { values: p.values.iter().map(|v| v - m).collect() }
}

/// Pieces of the system that do not change between Picard steps.
struct Fixed<'a> {
    tri: &'a Triangulation,
    dofs: DofMap,
    a: CsrMatrix<f64>,
    b: CsrMatrix<f64>,
    load: Vec<f64>,
    g_h: Vec<f64>,
    nu: f64,
    kind: LinearSolverKind,
    lu_pattern: RefCell<Option<SparseLuPattern>>,
}

impl<'a> Fixed<'a> {
    fn new(problem: &ExactProblem, tri: &'a Triangulation, config: &PicardConfig) -> Result<Self> {
        config.validate()?;
        let dofs = DofMap::new(tri);
        Ok(Self {
            a: assemble_laplacian(tri, &dofs),
            b: assemble_divergence(tri, &dofs),
            load: assemble_load_lifted(tri, &dofs, &*problem.f, config.quad_degree_load)?,
            g_h: boundary_values(tri, &dofs, &*problem.g),
            nu: problem.nu,
            kind: config.linear_solver,
            lu_pattern: RefCell::new(None),
            dofs,
            tri,
        })
    }

    /// One linear solve, warm-started from `(u0, p0)`.
    fn solve(
        &self,
        convection: Option<CsrMatrix<f64>>,
        u0: &[f64],
        p0: &P0Function,
        opts: &GmresOptions<f64>,
    ) -> Result<(CrFunction, P0Function, usize)> {
        let system = SaddleSystem {
            nu: self.nu,
            a: self.a.clone(),
            b: self.b.clone(),
            n: convection,
            rhs_u: self.load.clone(),
            rhs_p: vec![0.0; self.dofs.num_pressure()],
        };
        let red = apply_dirichlet(&system, &self.dofs, &self.g_h, Some(0))?;
        let (x, iterations) = match self.kind {
            LinearSolverKind::GmresIlu0 => {
                let shifted: Vec<f64> = p0.values.iter().map(|v| v - p0.values[0]).collect();
                let mut x = red.restrict(u0, &shifted);
                let ilu = ilu0_factorize(&red.matrix)?;
                let report = gmres_with_guess(&red.matrix, &red.rhs, &mut x, &ilu, opts)?;
                if !report.converged {
                    return Err(Error::LinearSolver(format!(
                        "GMRES stopped after {} iterations at relative residual {:e}",
                        report.iterations, report.relative_residual
                    )));
                }
                (x, report.iterations)
            }
            LinearSolverKind::SparseLu => {
                let mut cached = self.lu_pattern.borrow_mut();
                let lu = match cached.as_ref().map(|pattern| pattern.factorize(&red.matrix)) {
                    Some(Ok(lu)) => lu,
                    _ => {
                        let pattern = SparseLuPattern::analyze(&red.matrix)?;
                        let lu = pattern.factorize(&red.matrix)?;
                        *cached = Some(pattern);
                        lu
                    }
                };
                (lu.solve_refined(&red.matrix, &red.rhs, LU_REFINEMENT_STEPS)?, 1)
            }
        };
        let (u, p) = red.expand(&x);
        let p = normalize_pressure(&P0Function { values: p }, self.tri);
        Ok((CrFunction::from_values(2, u), p, iterations))
    }

    fn velocity_norm(&self, u: &[f64]) -> f64 {
        let au = self.a.spmv(u).expect("dimensions match");
        dot(u, &au).max(0.0).sqrt()
    }
}

/// Stokes solve (no convection) with the lifted load.
pub fn solve_stokes(problem: &ExactProblem, tri: &Triangulation, config: &PicardConfig) -> Result<SolveResult> {
    let fixed = Fixed::new(problem, tri, config)?;
    let zero_u = vec![0.0; fixed.dofs.num_velocity()];
    let zero_p = P0Function::zeros(tri.num_cells());
    let (u_h, p_h, rep) = fixed.solve(None, &zero_u, &zero_p, &config.linear)?;
    Ok(SolveResult { u_h, p_h, iterations: 1, history: Vec::new(), converged: true, linear_iterations: vec![rep] })
}

/// Picard iteration until
/// `|u^{n+1} - u^n|_A + |p^{n+1} - p^n|_M < end_tol (|u^n|_A + |p^n|_M)`.
/// An exactly vanishing increment also counts as converged. Hitting
/// `max_iters` returns the last iterate with `converged = false`.
pub fn picard_solve(problem: &ExactProblem, tri: &Triangulation, config: &PicardConfig) -> Result<SolveResult> {
    let fixed = Fixed::new(problem, tri, config)?;
    let init = config.init.unwrap_or(if problem.exact.is_some() {
        Initialization::ExactInterpolant
    } else {
        Initialization::Stokes
    });
    let mut linear_iterations = Vec::new();
    let (mut u, mut p) = match init {
        Initialization::ExactInterpolant => {
            let exact = problem.exact.as_ref().ok_or_else(|| {
                Error::InvalidArgument(format!("{} has no exact solution to interpolate", problem.name))
            })?;
            let u = interpolate_cr(tri, &*exact.u);
            let p = normalize_pressure(&project_p0(tri, &*exact.p), tri);
            (u, p)
        }
        Initialization::Stokes => {
            let zero_u = vec![0.0; fixed.dofs.num_velocity()];
            let (u, p, rep) = fixed.solve(None, &zero_u, &P0Function::zeros(tri.num_cells()), &config.linear)?;
            linear_iterations.push(rep);
            (u, p)
        }
        Initialization::Zero => (CrFunction::zeros(2, tri.num_facets()), P0Function::zeros(tri.num_cells())),
    };

    let mut history = Vec::new();
    for it in 1..=config.max_iters {
        let n = assemble_convection(tri, &fixed.dofs, &u);
        let (u_next, p_next, rep) = fixed.solve(Some(n), u.values(), &p, &config.linear)?;
        linear_iterations.push(rep);

        let du: Vec<f64> = u_next.values().iter().zip(u.values()).map(|(a, b)| a - b).collect();
        let dp = P0Function { values: p_next.values.iter().zip(&p.values).map(|(a, b)| a - b).collect() };
        let increment = fixed.velocity_norm(&du) + dp.l2_norm(tri);
        let reference = fixed.velocity_norm(u.values()) + p.l2_norm(tri);
        history.push(increment);
        u = u_next;
        p = p_next;
        if increment == 0.0 || increment < config.end_tol * reference {
            return Ok(SolveResult { u_h: u, p_h: p, iterations: it, history, converged: true, linear_iterations });
        }
    }
    Ok(SolveResult { u_h: u, p_h: p, iterations: config.max_iters, history, converged: false, linear_iterations })
}
