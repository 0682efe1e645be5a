//! Triangulations of the unit square, graded mesh families and mesh-quality
//! diagnostics.

mod generate;
mod io;
mod point;
mod quality;
mod triangulation;

pub use generate::{generate_graded_mesh, Grading};
pub use io::{export_vtk, read_mesh, write_mesh, write_vtk, VtkField};
pub use point::Point2;
pub use quality::{
    cell_geometry, quality_report, quality_report_with_exponent, triangle_geometry, CellGeometry,
    MeshQualityReport, DIS_SOV_EXPONENT,
};
pub use triangulation::Triangulation;
