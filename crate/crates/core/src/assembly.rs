//! Global assembly of the discrete saddle-point system.
//!
//! Velocity DOFs are component-major (`c * num_facets + facet`), pressure
//! DOFs are cell ids. On a cell `T` the CR basis function of local facet `k`
//! and component `c` lifts to the RT0 field `alpha (x - p_k)` with
//! `alpha = -(grad lambda_k)_c`, independent of how facet normals are
//! oriented. Load and convection are assembled against these lifted fields.

use rayon::prelude::*;

use crate::elements::quadrature_rule;
use crate::error::{Error, Result};
use crate::interpolation::CrFunction;
use crate::linalg::CsrMatrix;
use crate::mesh::{Point2, Triangulation};

/// Default quadrature degree of the lifted load.
pub const LOAD_QUADRATURE_DEGREE: usize = 14;

/// Numbering of the velocity and pressure unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct DofMap {
    num_facets: usize,
    num_cells: usize,
    boundary_velocity: Vec<usize>,
    is_boundary: Vec<bool>,
}

impl DofMap {
    pub fn new(tri: &Triangulation) -> Self {
        let nf = tri.num_facets();
        let mut is_boundary = vec![false; 2 * nf];
        let mut boundary_velocity = Vec::with_capacity(2 * tri.boundary_facets().len());
        for c in 0..2 {
            for &f in tri.boundary_facets() {
                boundary_velocity.push(c * nf + f);
            }
        }
        boundary_velocity.sort_unstable();
        for &d in &boundary_velocity {
            is_boundary[d] = true;
        }
        Self { num_facets: nf, num_cells: tri.num_cells(), boundary_velocity, is_boundary }
    }

    pub fn num_facets(&self) -> usize {
        self.num_facets
    }

    pub fn num_velocity(&self) -> usize {
        2 * self.num_facets
    }

    pub fn num_pressure(&self) -> usize {
        self.num_cells
    }

    /// `#Np`: all velocity and pressure unknowns, boundary included.
    pub fn total(&self) -> usize {
        self.num_velocity() + self.num_pressure()
    }

    #[inline]
    pub fn velocity_index(&self, facet: usize, comp: usize) -> usize {
        comp * self.num_facets + facet
    }

    /// Sorted ids of velocity DOFs on boundary facets.
    pub fn boundary_velocity(&self) -> &[usize] {
        &self.boundary_velocity
    }

    pub fn is_boundary_velocity(&self, dof: usize) -> bool {
        self.is_boundary[dof]
    }
}

/// Blocks of `[nu A + N, B^T; B, 0] (u, p) = (rhs_u, rhs_p)`.
#[derive(Debug, Clone)]
pub struct SaddleSystem {
    pub nu: f64,
    pub a: CsrMatrix<f64>,
    pub b: CsrMatrix<f64>,
    pub n: Option<CsrMatrix<f64>>,
    pub rhs_u: Vec<f64>,
    pub rhs_p: Vec<f64>,
}

/// Lifted coefficients `alpha[k][c] = -(grad lambda_k)_c` of one cell.
fn lift_coefficients(tri: &Triangulation, cell: usize) -> [[f64; 2]; 3] {
    let g = tri.shape(cell).grad_barycentric;
    [[-g[0].x1, -g[0].x2], [-g[1].x1, -g[1].x2], [-g[2].x1, -g[2].x2]]
}

fn assemble_cells<F>(tri: &Triangulation, nrows: usize, ncols: usize, local: F) -> CsrMatrix<f64>
where
    F: Fn(usize) -> Vec<(usize, usize, f64)> + Sync + Send,
{
    let per_cell: Vec<Vec<(usize, usize, f64)>> =
        (0..tri.num_cells()).into_par_iter().map(local).collect();
    CsrMatrix::from_triplets(nrows, ncols, per_cell.concat()).expect("indices in range")
}

/// Broken Laplacian `sum_T int_T grad phi_j . grad phi_i`, one block per
/// velocity component.
pub fn assemble_laplacian(tri: &Triangulation, dofs: &DofMap) -> CsrMatrix<f64> {
    let n = dofs.num_velocity();
    assemble_cells(tri, n, n, |cell| {
        let s = tri.shape(cell);
        let fs = tri.cell_facets(cell);
        let mut out = Vec::with_capacity(18);
        for comp in 0..2 {
            for i in 0..3 {
                for j in 0..3 {
                    let v = 4.0 * s.area * s.grad_barycentric[i].dot(s.grad_barycentric[j]);
                    out.push((dofs.velocity_index(fs[i], comp), dofs.velocity_index(fs[j], comp), v));
                }
            }
        }
        out
    })
}

/// Divergence block: entry `(T, phi) = -int_T div phi`.
pub fn assemble_divergence(tri: &Triangulation, dofs: &DofMap) -> CsrMatrix<f64> {
    assemble_cells(tri, dofs.num_pressure(), dofs.num_velocity(), |cell| {
        let s = tri.shape(cell);
        let fs = tri.cell_facets(cell);
        let mut out = Vec::with_capacity(6);
        for comp in 0..2 {
            for k in 0..3 {
                let g = s.grad_barycentric[k];
                let d = if comp == 0 { g.x1 } else { g.x2 };
                out.push((cell, dofs.velocity_index(fs[k], comp), 2.0 * s.area * d));
            }
        }
        out
    })
}

/// Linearized rotational convection around `u_prev`:
/// `N(i, j) = sum_T int_T (L phi_j . grad) u_prev . L phi_i - (L phi_i . grad) u_prev . L phi_j`,
/// which on each cell equals `omega_T int_T L phi_j x L phi_i`.
///
/// The integrand is quadratic, so the centroid form
/// `int_T (x - a) x (x - b) = |T| (x_c - a) x (x_c - b)` is exact. Every
/// entry pair is computed from the same products, so `N = -N^T` holds
/// bit for bit.
pub fn assemble_convection(tri: &Triangulation, dofs: &DofMap, u_prev: &CrFunction) -> CsrMatrix<f64> {
    let n = dofs.num_velocity();
    assemble_cells(tri, n, n, |cell| {
        let s = tri.shape(cell);
        let fs = tri.cell_facets(cell);
        let g1 = u_prev.cell_gradient(tri, cell, 0);
        let g2 = u_prev.cell_gradient(tri, cell, 1);
        let scale = (g2.x1 - g1.x2) * s.area;
        if scale == 0.0 {
            return Vec::new();
        }
        let alpha = lift_coefficients(tri, cell);
        let xc = s.centroid();
        let r = [xc - s.vertices[0], xc - s.vertices[1], xc - s.vertices[2]];
        let mut out = Vec::with_capacity(30);
        for k in 0..3 {
            for l in 0..3 {
                if k == l {
                    continue;
                }
                let cross = r[l].cross(r[k]);
                for c in 0..2 {
                    for d in 0..2 {
                        let v = scale * (alpha[k][c] * alpha[l][d]) * cross;
                        out.push((dofs.velocity_index(fs[k], c), dofs.velocity_index(fs[l], d), v));
                    }
                }
            }
        }
        out
    })
}

/// Lifted load `sum_T int_T f . L phi_i` by quadrature of the given degree.
pub fn assemble_load_lifted<F>(tri: &Triangulation, dofs: &DofMap, f: F, degree: usize) -> Result<Vec<f64>>
where
    F: Fn(Point2<f64>) -> [f64; 2] + Sync,
{
    let rule = quadrature_rule::<f64>(degree)?;
    let per_cell: Vec<[f64; 3]> = (0..tri.num_cells())
        .into_par_iter()
        .map(|cell| {
            let s = tri.shape(cell);
            let mut m = [0.0; 3];
            // m[k] = int_T f . (x - p_k), built from int f and int f . x
            let (mut f0, mut f1, mut fx) = (0.0, 0.0, 0.0);
            for (x, w) in rule.physical_points(&s.vertices) {
                let v = f(x);
                f0 += w * v[0];
                f1 += w * v[1];
                fx += w * (v[0] * x.x1 + v[1] * x.x2);
            }
            for (k, mk) in m.iter_mut().enumerate() {
                let p = s.vertices[k];
                *mk = s.area * (fx - f0 * p.x1 - f1 * p.x2);
            }
            m
        })
        .collect();
    let mut rhs = vec![0.0; dofs.num_velocity()];
    for (cell, m) in per_cell.iter().enumerate() {
        let alpha = lift_coefficients(tri, cell);
        let fs = tri.cell_facets(cell);
        for k in 0..3 {
            for c in 0..2 {
                rhs[dofs.velocity_index(fs[k], c)] += alpha[k][c] * m[k];
            }
        }
    }
    Ok(rhs)
}

/// Assembles the full saddle system (boundary included).
pub fn assemble_system<F>(
    tri: &Triangulation,
    dofs: &DofMap,
    nu: f64,
    f: F,
    u_prev: Option<&CrFunction>,
    load_degree: usize,
) -> Result<SaddleSystem>
where
    F: Fn(Point2<f64>) -> [f64; 2] + Sync,
{
    Ok(SaddleSystem {
        nu,
        a: assemble_laplacian(tri, dofs),
        b: assemble_divergence(tri, dofs),
        n: u_prev.map(|u| assemble_convection(tri, dofs, u)),
        rhs_u: assemble_load_lifted(tri, dofs, f, load_degree)?,
        rhs_p: vec![0.0; dofs.num_pressure()],
    })
}

/// System with boundary velocity DOFs (and optionally one pressure DOF)
/// eliminated. Unknowns are the free velocity DOFs followed by the free
/// pressure DOFs, both in increasing global order.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    pub matrix: CsrMatrix<f64>,
    pub rhs: Vec<f64>,
    free_velocity: Vec<usize>,
    free_pressure: Vec<usize>,
    fixed_velocity: Vec<f64>,
    num_pressure: usize,
}

impl ReducedSystem {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn free_velocity(&self) -> &[usize] {
        &self.free_velocity
    }

    pub fn free_pressure(&self) -> &[usize] {
        &self.free_pressure
    }

    /// Scatters a reduced solution into full velocity and pressure vectors.
    pub fn expand(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let mut u = self.fixed_velocity.clone();
        for (r, &g) in self.free_velocity.iter().enumerate() {
            u[g] = x[r];
        }
        let nu = self.free_velocity.len();
        let mut p = vec![0.0; self.num_pressure];
        for (r, &g) in self.free_pressure.iter().enumerate() {
            p[g] = x[nu + r];
        }
        (u, p)
    }

    /// Gathers full velocity and pressure vectors into reduced form.
    pub fn restrict(&self, u: &[f64], p: &[f64]) -> Vec<f64> {
        self.free_velocity
            .iter()
            .map(|&g| u[g])
            .chain(self.free_pressure.iter().map(|&g| p[g]))
            .collect()
    }
}

/// Eliminates boundary velocity DOFs with prescribed values `g_h` (full
/// velocity vector; only boundary entries are read) and pins pressure DOF
/// `pin` to zero when given. Pressure rows carry an explicit zero diagonal so
/// that ILU(0) has a pivot slot to fill.
pub fn apply_dirichlet(
    system: &SaddleSystem,
    dofs: &DofMap,
    g_h: &[f64],
    pin: Option<usize>,
) -> Result<ReducedSystem> {
    let nv = dofs.num_velocity();
    let np = dofs.num_pressure();
    if g_h.len() != nv {
        return Err(Error::DimensionMismatch { expected: nv, got: g_h.len() });
    }
    if let Some(&d) = dofs.boundary_velocity().iter().find(|&&d| !g_h[d].is_finite()) {
        return Err(Error::MissingBoundaryValue(d % dofs.num_facets()));
    }
    if let Some(p) = pin {
        if p >= np {
            return Err(Error::CellOutOfRange(p));
        }
    }
    const NONE: usize = usize::MAX;
    let mut vmap = vec![NONE; nv];
    let mut free_velocity = Vec::new();
    for (g, m) in vmap.iter_mut().enumerate() {
        if !dofs.is_boundary_velocity(g) {
            *m = free_velocity.len();
            free_velocity.push(g);
        }
    }
    let nuf = free_velocity.len();
    let mut pmap = vec![NONE; np];
    let mut free_pressure = Vec::new();
    for (g, m) in pmap.iter_mut().enumerate() {
        if Some(g) != pin {
            *m = nuf + free_pressure.len();
            free_pressure.push(g);
        }
    }
    let mut fixed_velocity = vec![0.0; nv];
    for &d in dofs.boundary_velocity() {
        fixed_velocity[d] = g_h[d];
    }

    let dim = nuf + free_pressure.len();
    let mut rhs = vec![0.0; dim];
    for (r, &g) in free_velocity.iter().enumerate() {
        rhs[r] = system.rhs_u[g];
    }
    for (r, &g) in free_pressure.iter().enumerate() {
        rhs[nuf + r] = system.rhs_p[g];
    }

    let mut trip = Vec::with_capacity(system.a.nnz() * 2 + system.b.nnz() * 2 + np);
    let velocity_entry = |i: usize, j: usize, v: f64, trip: &mut Vec<(usize, usize, f64)>, rhs: &mut [f64]| {
        if vmap[i] == NONE {
            return;
        }
        if vmap[j] == NONE {
            rhs[vmap[i]] -= v * fixed_velocity[j];
        } else {
            trip.push((vmap[i], vmap[j], v));
        }
    };
    for (i, j, v) in system.a.triplets() {
        velocity_entry(i, j, system.nu * v, &mut trip, &mut rhs);
    }
    if let Some(n) = &system.n {
        for (i, j, v) in n.triplets() {
            velocity_entry(i, j, v, &mut trip, &mut rhs);
        }
    }
    for (q, j, v) in system.b.triplets() {
        if pmap[q] == NONE {
            continue;
        }
        if vmap[j] == NONE {
            rhs[pmap[q]] -= v * fixed_velocity[j];
        } else {
            trip.push((pmap[q], vmap[j], v));
            trip.push((vmap[j], pmap[q], v));
        }
    }
    for &row in pmap.iter().filter(|&&r| r != NONE) {
        trip.push((row, row, 0.0));
    }
    let matrix = CsrMatrix::from_triplets(dim, dim, trip)?;
    Ok(ReducedSystem { matrix, rhs, free_velocity, free_pressure, fixed_velocity, num_pressure: np })
}

/// Boundary velocity vector `g_h`: facet means of `g` on boundary facets,
/// zero elsewhere.
pub fn boundary_values<F>(tri: &Triangulation, dofs: &DofMap, g: F) -> Vec<f64>
where
    F: Fn(Point2<f64>) -> [f64; 2] + Sync,
{
    let edge = crate::elements::EdgeRule::<f64>::new(crate::elements::EDGE_QUADRATURE_DEGREE);
    let mut out = vec![0.0; dofs.num_velocity()];
    for &f in tri.boundary_facets() {
        let (a, b) = tri.facet_endpoints(f);
        let m: Point2<f64> = edge.mean(a, b, |x| Point2::from(g(x)));
        out[dofs.velocity_index(f, 0)] = m.x1;
        out[dofs.velocity_index(f, 1)] = m.x2;
    }
    out
}
