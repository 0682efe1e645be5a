//! Discrete function types and the interpolation operators between them:
//! cellwise L2 projection onto constants, CR facet-mean interpolation, RT0
//! flux interpolation and the CR -> RT0 lifting.

use rayon::prelude::*;

use crate::elements::{quadrature_rule, EdgeRule, QuadratureRule, EDGE_QUADRATURE_DEGREE};
use crate::mesh::{Point2, Triangulation};

/// Default quadrature degree for cell projections of smooth fields.
pub const PROJECTION_QUADRATURE_DEGREE: usize = 12;

/// Piecewise constant function (scalar `f64` or vector `[f64; 2]` values).
#[derive(Debug, Clone, PartialEq)]
pub struct P0Function<V = f64> {
    pub values: Vec<V>,
}

impl P0Function<f64> {
    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0.0; n] }
    }

    /// `(sum_T |T| v_T^2)^(1/2)`.
    pub fn l2_norm(&self, tri: &Triangulation) -> f64 {
        self.values.iter().enumerate().map(|(c, v)| tri.area(c) * v * v).sum::<f64>().sqrt()
    }

    /// Area-weighted mean over the mesh.
    pub fn mean(&self, tri: &Triangulation) -> f64 {
        let s: f64 = self.values.iter().enumerate().map(|(c, v)| tri.area(c) * v).sum();
        s / tri.total_area()
    }
}

/// Piecewise linear CR function stored by facet-mean DOFs, component-major:
/// `values[c * num_facets + f]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrFunction {
    ncomp: usize,
    num_facets: usize,
    values: Vec<f64>,
}

impl CrFunction {
    pub fn zeros(ncomp: usize, num_facets: usize) -> Self {
        Self { ncomp, num_facets, values: vec![0.0; ncomp * num_facets] }
    }

    /// Wraps component-major DOF values; panics if the length is not a
    /// multiple of `ncomp`.
    pub fn from_values(ncomp: usize, values: Vec<f64>) -> Self {
        assert!(ncomp > 0 && values.len() % ncomp == 0, "DOF vector length must be a multiple of ncomp");
        Self { ncomp, num_facets: values.len() / ncomp, values }
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn num_facets(&self) -> usize {
        self.num_facets
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn component(&self, c: usize) -> &[f64] {
        &self.values[c * self.num_facets..(c + 1) * self.num_facets]
    }

    pub fn dof(&self, facet: usize, comp: usize) -> f64 {
        self.values[comp * self.num_facets + facet]
    }

    /// Value of component `comp` at `x` using the polynomial of `cell`.
    pub fn cell_value(&self, tri: &Triangulation, cell: usize, comp: usize, x: Point2<f64>) -> f64 {
        let s = tri.shape(cell);
        let l = s.barycentric(x);
        tri.cell_facets(cell)
            .iter()
            .enumerate()
            .map(|(i, &f)| self.dof(f, comp) * (1.0 - 2.0 * l[i]))
            .sum()
    }

    pub fn cell_gradient(&self, tri: &Triangulation, cell: usize, comp: usize) -> Point2<f64> {
        let s = tri.shape(cell);
        tri.cell_facets(cell)
            .iter()
            .enumerate()
            .fold(Point2::default(), |g, (i, &f)| g + s.cr_grad(i) * self.dof(f, comp))
    }

    /// Cellwise divergence of a two-component function.
    pub fn broken_divergence(&self, tri: &Triangulation) -> P0Function {
        assert_eq!(self.ncomp, 2, "divergence needs a vector field");
        P0Function {
            values: (0..tri.num_cells())
                .map(|c| self.cell_gradient(tri, c, 0).x1 + self.cell_gradient(tri, c, 1).x2)
                .collect(),
        }
    }

    /// Cell averages (the value at the centroid) of a two-component function.
    pub fn cell_means(&self, tri: &Triangulation) -> Vec<[f64; 2]> {
        (0..tri.num_cells())
            .map(|c| {
                let fs = tri.cell_facets(c);
                let m = |comp| fs.iter().map(|&f| self.dof(f, comp)).sum::<f64>() / 3.0;
                [m(0), m(1.min(self.ncomp - 1))]
            })
            .collect()
    }

    /// Broken H1 seminorm `(sum_T sum_c |grad u_c|^2 |T|)^(1/2)`.
    pub fn broken_h1_seminorm(&self, tri: &Triangulation) -> f64 {
        (0..tri.num_cells())
            .map(|c| {
                let g2: f64 = (0..self.ncomp)
                    .map(|k| {
                        let g = self.cell_gradient(tri, c, k);
                        g.dot(g)
                    })
                    .sum();
                g2 * tri.area(c)
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// RT0 function stored by facet fluxes `int_F v . n_F ds` with the stored
/// facet normal.
#[derive(Debug, Clone, PartialEq)]
pub struct Rt0Function {
    pub fluxes: Vec<f64>,
}

impl Rt0Function {
    pub fn eval(&self, tri: &Triangulation, cell: usize, x: Point2<f64>) -> Point2<f64> {
        let s = tri.shape(cell);
        let signs = tri.cell_facet_signs(cell);
        tri.cell_facets(cell)
            .iter()
            .enumerate()
            .fold(Point2::default(), |acc, (i, &f)| acc + s.rt0_eval(i, signs[i], x) * self.fluxes[f])
    }

    pub fn cell_divergence(&self, tri: &Triangulation, cell: usize) -> f64 {
        let s = tri.shape(cell);
        let signs = tri.cell_facet_signs(cell);
        tri.cell_facets(cell)
            .iter()
            .enumerate()
            .map(|(i, &f)| s.rt0_div(i, signs[i]) * self.fluxes[f])
            .sum()
    }

    pub fn divergence(&self, tri: &Triangulation) -> P0Function {
        P0Function { values: (0..tri.num_cells()).map(|c| self.cell_divergence(tri, c)).collect() }
    }
}

/// Cell means of a scalar field by quadrature of the default degree.
pub fn project_p0<F>(tri: &Triangulation, f: F) -> P0Function
where
    F: Fn(Point2<f64>) -> f64 + Sync,
{
    let rule = quadrature_rule(PROJECTION_QUADRATURE_DEGREE).expect("supported degree");
    project_p0_with(tri, &rule, f)
}

pub fn project_p0_with<F>(tri: &Triangulation, rule: &QuadratureRule<f64>, f: F) -> P0Function
where
    F: Fn(Point2<f64>) -> f64 + Sync,
{
    let values = (0..tri.num_cells())
        .into_par_iter()
        .map(|c| rule.physical_points(&tri.shape(c).vertices).map(|(x, w)| w * f(x)).sum())
        .collect();
    P0Function { values }
}

pub fn project_p0_vector<F>(tri: &Triangulation, f: F) -> P0Function<[f64; 2]>
where
    F: Fn(Point2<f64>) -> [f64; 2] + Sync,
{
    let rule = quadrature_rule::<f64>(PROJECTION_QUADRATURE_DEGREE).expect("supported degree");
    let values = (0..tri.num_cells())
        .into_par_iter()
        .map(|c| {
            rule.physical_points(&tri.shape(c).vertices).fold([0.0, 0.0], |acc, (x, w)| {
                let v = f(x);
                [acc[0] + w * v[0], acc[1] + w * v[1]]
            })
        })
        .collect();
    P0Function { values }
}

fn facet_means<F>(tri: &Triangulation, f: F) -> Vec<Point2<f64>>
where
    F: Fn(Point2<f64>) -> Point2<f64> + Sync,
{
    let edge = EdgeRule::<f64>::new(EDGE_QUADRATURE_DEGREE);
    (0..tri.num_facets())
        .into_par_iter()
        .map(|fct| {
            let (a, b) = tri.facet_endpoints(fct);
            edge.mean(a, b, &f)
        })
        .collect()
}

/// Componentwise CR interpolation of a vector field: facet DOF = facet mean.
pub fn interpolate_cr<F>(tri: &Triangulation, v: F) -> CrFunction
where
    F: Fn(Point2<f64>) -> [f64; 2] + Sync,
{
    let means = facet_means(tri, |x| Point2::from(v(x)));
    let nf = tri.num_facets();
    let mut values = vec![0.0; 2 * nf];
    for (f, m) in means.iter().enumerate() {
        values[f] = m.x1;
        values[nf + f] = m.x2;
    }
    CrFunction { ncomp: 2, num_facets: nf, values }
}

pub fn interpolate_cr_scalar<F>(tri: &Triangulation, v: F) -> CrFunction
where
    F: Fn(Point2<f64>) -> f64 + Sync,
{
    let means = facet_means(tri, |x| Point2::new(v(x), 0.0));
    CrFunction { ncomp: 1, num_facets: tri.num_facets(), values: means.iter().map(|m| m.x1).collect() }
}

/// RT0 interpolation: facet DOF = `int_F v . n_F ds`.
pub fn interpolate_rt0<F>(tri: &Triangulation, v: F) -> Rt0Function
where
    F: Fn(Point2<f64>) -> [f64; 2] + Sync,
{
    let means = facet_means(tri, |x| Point2::from(v(x)));
    Rt0Function {
        fluxes: means
            .iter()
            .enumerate()
            .map(|(f, m)| tri.facet_length(f) * m.dot(tri.facet_normal(f)))
            .collect(),
    }
}

/// RT0 interpolation of a discrete CR vector field. The flux is taken from
/// the trace of the lower-indexed incident cell; a CR function is linear on
/// each facet, so the midpoint value integrates the trace exactly.
pub fn lift_cr_to_rt0(tri: &Triangulation, v: &CrFunction) -> Rt0Function {
    assert_eq!(v.ncomp, 2, "lifting needs a vector field");
    let fluxes = (0..tri.num_facets())
        .map(|f| {
            let (cell, _) = tri.facet_cells(f);
            let local = tri.cell_facets(cell).iter().position(|&g| g == f).expect("facet of cell");
            let mid = tri.shape(cell).facet_midpoint(local);
            let trace = Point2::new(v.cell_value(tri, cell, 0, mid), v.cell_value(tri, cell, 1, mid));
            tri.facet_length(f) * trace.dot(tri.facet_normal(f))
        })
        .collect();
    Rt0Function { fluxes }
}
