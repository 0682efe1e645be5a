//! Manufactured benchmark problems.

use std::fmt;
use std::sync::Arc;

use crate::mesh::Point2;

pub type ScalarField = Arc<dyn Fn(Point2<f64>) -> f64 + Send + Sync>;
pub type VectorField = Arc<dyn Fn(Point2<f64>) -> [f64; 2] + Send + Sync>;
/// Row `i` holds `grad u_i`.
pub type TensorField = Arc<dyn Fn(Point2<f64>) -> [[f64; 2]; 2] + Send + Sync>;

/// Known exact velocity and pressure.
#[derive(Clone)]
pub struct ExactSolution {
    pub u: VectorField,
    pub grad_u: TensorField,
    pub p: ScalarField,
}

/// Data of the rotational Navier-Stokes problem
/// `-nu Lap u + (curl u) x u + grad p = f`, `div u = 0`, `u = g` on the
/// boundary, optionally with its exact solution.
#[derive(Clone)]
pub struct ExactProblem {
    pub name: String,
    pub nu: f64,
    pub f: VectorField,
    pub g: VectorField,
    pub exact: Option<ExactSolution>,
}

impl fmt::Debug for ExactProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExactProblem")
            .field("name", &self.name)
            .field("nu", &self.nu)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

/// Additive pressure constant of the first example.
pub const EXAMPLE1_PRESSURE_SHIFT: f64 = 0.1238397581254773;
/// Magnitude of the irrotational pressure component shared by both examples.
pub const GRADIENT_SCALE: f64 = 1.0e5;

// a(t) = t^2 (t - 1)^2 and its derivatives
fn a0(t: f64) -> f64 {
    t * t * (t - 1.0) * (t - 1.0)
}
fn a1(t: f64) -> f64 {
    ((4.0 * t - 6.0) * t + 2.0) * t
}
fn a2(t: f64) -> f64 {
    (12.0 * t - 12.0) * t + 2.0
}
fn a3(t: f64) -> f64 {
    24.0 * t - 12.0
}

fn example1_u(x: Point2<f64>) -> [f64; 2] {
    let (s, t) = (x.x1, x.x2);
    [64.0 * a0(s) * a1(t), -64.0 * a1(s) * a0(t)]
}

fn example1_grad(x: Point2<f64>) -> [[f64; 2]; 2] {
    let (s, t) = (x.x1, x.x2);
    [
        [64.0 * a1(s) * a1(t), 64.0 * a0(s) * a2(t)],
        [-64.0 * a2(s) * a0(t), -64.0 * a1(s) * a1(t)],
    ]
}

fn gradient_part(t: f64) -> f64 {
    GRADIENT_SCALE * (1.0 - t).powi(3) - GRADIENT_SCALE / 4.0
}

fn example1_p(x: Point2<f64>) -> f64 {
    let u = example1_u(x);
    0.5 * (u[0] * u[0] + u[1] * u[1]) - EXAMPLE1_PRESSURE_SHIFT + gradient_part(x.x2)
}

/// Example 1: `u = curl phi`, `phi = 64 x1^2 (x1-1)^2 x2^2 (x2-1)^2`, zero
/// boundary data, `p = |u|^2/2 - c + 1e5 (1-x2)^3 - 1e5/4`, `nu = 0.1`.
pub fn example1() -> ExactProblem {
    example1_with_nu(0.1)
}

/// Example 1 with a different viscosity; the forcing follows `nu`.
pub fn example1_with_nu(nu: f64) -> ExactProblem {
    let f = move |x: Point2<f64>| {
        let (s, t) = (x.x1, x.x2);
        let u = example1_u(x);
        let g = example1_grad(x);
        let lap = [
            64.0 * (a2(s) * a1(t) + a0(s) * a3(t)),
            -64.0 * (a3(s) * a0(t) + a1(s) * a2(t)),
        ];
        let omega = g[1][0] - g[0][1];
        // grad(|u|^2 / 2) = (grad u)^T u
        let grad_p = [
            u[0] * g[0][0] + u[1] * g[1][0],
            u[0] * g[0][1] + u[1] * g[1][1] - 3.0 * GRADIENT_SCALE * (1.0 - t).powi(2),
        ];
        [
            -nu * lap[0] - omega * u[1] + grad_p[0],
            -nu * lap[1] + omega * u[0] + grad_p[1],
        ]
    };
    ExactProblem {
        name: "example1".into(),
        nu,
        f: Arc::new(f),
        g: Arc::new(|_| [0.0, 0.0]),
        exact: Some(ExactSolution {
            u: Arc::new(example1_u),
            grad_u: Arc::new(example1_grad),
            p: Arc::new(example1_p),
        }),
    }
}

fn example2_u(x: Point2<f64>) -> [f64; 2] {
    [-(x.x2 - 0.5), x.x1 - 0.5]
}

/// Example 2: rigid rotation `u = (-(x2 - 1/2), x1 - 1/2)` with
/// `p = (x1-1/2)^2 + (x2-1/2)^2 - 1/6 + 1e5 (1-x2)^3 - 1e5/4` and the
/// purely irrotational load `f = (0, -3e5 (1-x2)^2)`, `nu = 1`.
pub fn example2() -> ExactProblem {
    example2_with_nu(1.0)
}

/// The load of the second example does not depend on `nu`.
pub fn example2_with_nu(nu: f64) -> ExactProblem {
    ExactProblem {
        name: "example2".into(),
        nu,
        f: Arc::new(|x| [0.0, -3.0 * GRADIENT_SCALE * (1.0 - x.x2).powi(2)]),
        g: Arc::new(example2_u),
        exact: Some(ExactSolution {
            u: Arc::new(example2_u),
            grad_u: Arc::new(|_| [[0.0, -1.0], [1.0, 0.0]]),
            p: Arc::new(|x| {
                (x.x1 - 0.5).powi(2) + (x.x2 - 0.5).powi(2) - 1.0 / 6.0 + gradient_part(x.x2)
            }),
        }),
    }
}

/// Constant load `force`, homogeneous boundary data and no exact solution.
pub fn custom(nu: f64, force: [f64; 2]) -> ExactProblem {
    ExactProblem {
        name: "custom".into(),
        nu,
        f: Arc::new(move |_| force),
        g: Arc::new(|_| [0.0, 0.0]),
        exact: None,
    }
}
