//! Shape functions and quadrature.

mod quadrature;
mod shape;

pub use quadrature::{
    edge_midpoint_rule, gauss_legendre_unit, quadrature_rule, vertex_midpoint_centroid_rule, EdgeRule, QuadratureRule, EDGE_QUADRATURE_DEGREE,
    MAX_QUADRATURE_DEGREE,
};
pub use shape::TriangleShape;
