//! Pressure-robust Crouzeix-Raviart finite elements for the rotational form of
//! the stationary incompressible Navier-Stokes equations on anisotropic
//! triangular meshes of the unit square.
//!
//! Velocity lives in the nonconforming CR space, pressure in piecewise
//! constants. Load and convection see test and trial functions only through
//! their lowest-order Raviart-Thomas lifting, which makes the discrete
//! velocity independent of irrotational forcing.

pub mod analysis;
pub mod assembly;
pub mod elements;
pub mod error;
pub mod interpolation;
pub mod linalg;
pub mod mesh;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default real type of the mesh, assembly and solver layers.
pub type Real = f64;
pub type Point = mesh::Point2<Real>;
pub type Matrix = linalg::CsrMatrix<Real>;
pub type Shape = elements::TriangleShape<Real>;
pub type Rule = elements::QuadratureRule<Real>;
