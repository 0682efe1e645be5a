use crate::error::{Error, Result};
use crate::mesh::{Point2, Triangulation};

/// Per-cell geometric quantities with the vertex labeling of the anisotropic
/// theory: `p1` is opposite the longest edge, `h1 = |p1 - p2| >= h2 = |p1 - p3|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellGeometry {
    pub area: f64,
    /// Cell diameter `h_T` (longest edge).
    pub diameter: f64,
    /// `|L1| <= |L2| <= |L3|`.
    pub edge_lengths_sorted: [f64; 3],
    pub h1: f64,
    pub h2: f64,
    /// `H_T = h1 h2 / |T| * h_T`.
    pub big_h: f64,
    pub grad_barycentric: [Point2<f64>; 3],
}

impl CellGeometry {
    /// Semi-regularity ratio `H_T / h_T`.
    pub fn semi_regularity(&self) -> f64 {
        self.big_h / self.diameter
    }
}

pub fn cell_geometry(tri: &Triangulation, cell: usize) -> Result<CellGeometry> {
    if cell >= tri.num_cells() {
        return Err(Error::CellOutOfRange(cell));
    }
    Ok(geometry_of(tri.shape(cell).vertices, tri.shape(cell).grad_barycentric, tri.area(cell)))
}

/// Geometry of a standalone triangle (any orientation).
pub fn triangle_geometry(vertices: [Point2<f64>; 3]) -> Result<CellGeometry> {
    let [a, b, c] = vertices;
    let signed = 0.5 * (b - a).cross(c - a);
    let ccw = if signed < 0.0 { [a, c, b] } else { vertices };
    let shape = crate::elements::TriangleShape::new(ccw)?;
    Ok(geometry_of(shape.vertices, shape.grad_barycentric, shape.area))
}

fn geometry_of(v: [Point2<f64>; 3], grad_barycentric: [Point2<f64>; 3], area: f64) -> CellGeometry {
    let mut edges = [(v[1] - v[2]).norm(), (v[2] - v[0]).norm(), (v[0] - v[1]).norm()];
    edges.sort_by(f64::total_cmp);
    let [l1, l2, l3] = edges;
    // The two edges meeting at p1 are L1 and L2.
    let (h1, h2) = (l2, l1);
    CellGeometry {
        area,
        diameter: l3,
        edge_lengths_sorted: edges,
        h1,
        h2,
        big_h: h1 * h2 / area * l3,
        grad_barycentric,
    }
}

/// Mesh-condition metrics printed alongside the convergence tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshQualityReport {
    /// `max_T |L3|^2 / |T|`.
    pub min_angle_metric: f64,
    /// `max_T |L1| |L2| / |T|`.
    pub max_angle_metric: f64,
    /// `max_T |T|^(1/p - 1/2) h_T`.
    pub dis_sov: f64,
    /// `max_T H_T / h_T`.
    pub semi_regularity: f64,
    pub num_dofs: usize,
    pub h: f64,
}

pub const DIS_SOV_EXPONENT: f64 = 4.0;

pub fn quality_report(tri: &Triangulation) -> MeshQualityReport {
    quality_report_with_exponent(tri, DIS_SOV_EXPONENT)
}

pub fn quality_report_with_exponent(tri: &Triangulation, p: f64) -> MeshQualityReport {
    let exponent = 1.0 / p - 0.5;
    let mut r = MeshQualityReport {
        min_angle_metric: 0.0,
        max_angle_metric: 0.0,
        dis_sov: 0.0,
        semi_regularity: 0.0,
        num_dofs: tri.num_dofs(),
        h: tri.h(),
    };
    for c in 0..tri.num_cells() {
        let s = tri.shape(c);
        let g = geometry_of(s.vertices, s.grad_barycentric, s.area);
        let [l1, l2, l3] = g.edge_lengths_sorted;
        r.min_angle_metric = r.min_angle_metric.max(l3 * l3 / g.area);
        r.max_angle_metric = r.max_angle_metric.max(l1 * l2 / g.area);
        r.dis_sov = r.dis_sov.max(g.area.powf(exponent) * g.diameter);
        r.semi_regularity = r.semi_regularity.max(g.semi_regularity());
    }
    r
}
