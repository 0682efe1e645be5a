use std::collections::HashMap;

use crate::elements::TriangleShape;
use crate::error::{Error, Result};
use crate::mesh::Point2;

/// Conforming triangulation with facet topology.
///
/// Facet `cell_facets[c][i]` is the edge of cell `c` opposite its local vertex
/// `i`. Facet normals point out of the lower-indexed incident cell, which for
/// boundary facets is the outward normal of the domain.
#[derive(Debug, Clone)]
pub struct Triangulation {
    vertices: Vec<Point2<f64>>,
    cells: Vec<[usize; 3]>,
    facets: Vec<[usize; 2]>,
    facet_cells: Vec<(usize, Option<usize>)>,
    facet_normals: Vec<Point2<f64>>,
    facet_lengths: Vec<f64>,
    cell_facets: Vec<[usize; 3]>,
    cell_facet_signs: Vec<[f64; 3]>,
    boundary_facets: Vec<usize>,
    shapes: Vec<TriangleShape<f64>>,
    h: f64,
}

impl Triangulation {
    /// Builds the facet topology. Cells must be counterclockwise with positive
    /// area and every facet may be shared by at most two cells.
    pub fn new(vertices: Vec<Point2<f64>>, cells: Vec<[usize; 3]>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidMeshParameter("mesh has no cells".into()));
        }
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidMeshParameter(format!("non-finite vertex {p:?}")));
        }
        let mut shapes = Vec::with_capacity(cells.len());
        for (c, cell) in cells.iter().enumerate() {
            if cell.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::InvalidMeshParameter(format!("cell {c} references a missing vertex")));
            }
            let shape = TriangleShape::new(cell.map(|v| vertices[v])).map_err(|e| match e {
                Error::DegenerateCell { area, .. } => Error::DegenerateCell { cell: c, area },
                other => other,
            })?;
            shapes.push(shape);
        }

        let mut lookup: HashMap<(usize, usize), usize> = HashMap::with_capacity(cells.len() * 2);
        let mut facets = Vec::new();
        let mut facet_cells: Vec<(usize, Option<usize>)> = Vec::new();
        let mut cell_facets = Vec::with_capacity(cells.len());
        for (c, cell) in cells.iter().enumerate() {
            let mut local = [0usize; 3];
            for (i, slot) in local.iter_mut().enumerate() {
                let a = cell[(i + 1) % 3];
                let b = cell[(i + 2) % 3];
                let key = (a.min(b), a.max(b));
                let f = *lookup.entry(key).or_insert_with(|| {
                    facets.push([a, b]);
                    facet_cells.push((c, None));
                    facets.len() - 1
                });
                if facet_cells[f].0 != c {
                    if facet_cells[f].1.is_some() {
                        return Err(Error::InvalidMeshParameter(format!(
                            "facet {key:?} shared by more than two cells"
                        )));
                    }
                    facet_cells[f].1 = Some(c);
                }
                *slot = f;
            }
            cell_facets.push(local);
        }

        let mut facet_normals = vec![Point2::default(); facets.len()];
        let mut facet_lengths = vec![0.0; facets.len()];
        let mut cell_facet_signs = vec![[0.0; 3]; cells.len()];
        for (c, local) in cell_facets.iter().enumerate() {
            for (i, &f) in local.iter().enumerate() {
                let owner = facet_cells[f].0 == c;
                if owner {
                    facet_normals[f] = shapes[c].outward_normal(i);
                    facet_lengths[f] = shapes[c].facet_length(i);
                }
                cell_facet_signs[c][i] = if owner { 1.0 } else { -1.0 };
            }
        }
        let boundary_facets = facet_cells
            .iter()
            .enumerate()
            .filter(|(_, (_, other))| other.is_none())
            .map(|(f, _)| f)
            .collect();
        let h = shapes
            .iter()
            .map(|s| (0..3).map(|i| s.facet_length(i)).fold(0.0, f64::max))
            .fold(0.0, f64::max);

        Ok(Self {
            vertices,
            cells,
            facets,
            facet_cells,
            facet_normals,
            facet_lengths,
            cell_facets,
            cell_facet_signs,
            boundary_facets,
            shapes,
            h,
        })
    }

    pub fn vertices(&self) -> &[Point2<f64>] {
        &self.vertices
    }

    pub fn cells(&self) -> &[[usize; 3]] {
        &self.cells
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Vertex ids of facet `f`.
    pub fn facet(&self, f: usize) -> [usize; 2] {
        self.facets[f]
    }

    pub fn facet_endpoints(&self, f: usize) -> (Point2<f64>, Point2<f64>) {
        let [a, b] = self.facets[f];
        (self.vertices[a], self.vertices[b])
    }

    /// Incident cells; the first is the lower-indexed one.
    pub fn facet_cells(&self, f: usize) -> (usize, Option<usize>) {
        self.facet_cells[f]
    }

    pub fn facet_normal(&self, f: usize) -> Point2<f64> {
        self.facet_normals[f]
    }

    pub fn facet_length(&self, f: usize) -> f64 {
        self.facet_lengths[f]
    }

    pub fn is_boundary_facet(&self, f: usize) -> bool {
        self.facet_cells[f].1.is_none()
    }

    pub fn boundary_facets(&self) -> &[usize] {
        &self.boundary_facets
    }

    pub fn cell_facets(&self, c: usize) -> [usize; 3] {
        self.cell_facets[c]
    }

    /// `+1` where the stored facet normal is outward for cell `c`, else `-1`.
    pub fn cell_facet_signs(&self, c: usize) -> [f64; 3] {
        self.cell_facet_signs[c]
    }

    pub fn shape(&self, c: usize) -> &TriangleShape<f64> {
        &self.shapes[c]
    }

    pub fn area(&self, c: usize) -> f64 {
        self.shapes[c].area
    }

    pub fn total_area(&self) -> f64 {
        self.shapes.iter().map(|s| s.area).sum()
    }

    /// Maximum cell diameter.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// `#Np`: two CR velocity components per facet plus one P0 pressure per cell.
    pub fn num_dofs(&self) -> usize {
        2 * self.num_facets() + self.num_cells()
    }
}
