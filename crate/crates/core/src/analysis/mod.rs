//! Benchmark problems, error norms, convergence studies and the discrete
//! Sobolev probe.

mod errors;
mod problems;
mod sobolev;
mod study;

pub use errors::{
    error_pressure, error_pressure_with, error_velocity_h1, error_velocity_h1_with, error_velocity_l2,
    error_velocity_l2_with, ErrorQuadrature, ERROR_QUADRATURE_DEGREE,
};
pub use problems::{
    custom, example1, example1_with_nu, example2, example2_with_nu, ExactProblem, ExactSolution,
    ScalarField, TensorField, VectorField, EXAMPLE1_PRESSURE_SHIFT, GRADIENT_SCALE,
};
pub use sobolev::discrete_sobolev_probe;
pub use study::{convergence_rate, rate_between, run_study, run_study_with, ConvergenceRow, StudyReport};
