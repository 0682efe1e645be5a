//! Local Crouzeix-Raviart and lowest-order Raviart-Thomas shape functions on a
//! physical triangle.
//!
//! Local index `i` refers to vertex `p_i` and to the facet `F_i` opposite it.

use crate::error::{Error, Result};
use crate::mesh::Point2;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy)]
pub struct TriangleShape<T> {
    pub vertices: [Point2<T>; 3],
    pub area: T,
    pub grad_barycentric: [Point2<T>; 3],
}

impl<T: Scalar> TriangleShape<T> {
    /// Fails on zero or negative signed area (vertices must be counterclockwise).
    pub fn new(vertices: [Point2<T>; 3]) -> Result<Self> {
        let [p0, p1, p2] = vertices;
        let twice_area = (p1 - p0).cross(p2 - p0);
        if !(twice_area > T::zero()) {
            return Err(Error::DegenerateCell {
                cell: usize::MAX,
                area: twice_area.to_f64().unwrap_or(f64::NAN) * 0.5,
            });
        }
        let inv = T::one() / twice_area;
        let grad = |a: Point2<T>, b: Point2<T>| {
            let e = b - a;
            Point2::new(-e.x2 * inv, e.x1 * inv)
        };
        Ok(Self {
            vertices,
            area: twice_area * T::lit(0.5),
            grad_barycentric: [grad(p1, p2), grad(p2, p0), grad(p0, p1)],
        })
    }

    pub fn barycentric(&self, x: Point2<T>) -> [T; 3] {
        let [p0, p1, p2] = self.vertices;
        let inv = T::one() / (self.area + self.area);
        [
            (p1 - x).cross(p2 - x) * inv,
            (p2 - x).cross(p0 - x) * inv,
            (p0 - x).cross(p1 - x) * inv,
        ]
    }

    pub fn centroid(&self) -> Point2<T> {
        let [p0, p1, p2] = self.vertices;
        (p0 + p1 + p2) * T::lit(1.0 / 3.0)
    }

    /// Endpoints of facet `F_i` (counterclockwise order).
    pub fn facet_endpoints(&self, i: usize) -> (Point2<T>, Point2<T>) {
        (self.vertices[(i + 1) % 3], self.vertices[(i + 2) % 3])
    }

    pub fn facet_length(&self, i: usize) -> T {
        let (a, b) = self.facet_endpoints(i);
        (b - a).norm()
    }

    pub fn facet_midpoint(&self, i: usize) -> Point2<T> {
        let (a, b) = self.facet_endpoints(i);
        (a + b) * T::lit(0.5)
    }

    /// Outward unit normal on `F_i`.
    pub fn outward_normal(&self, i: usize) -> Point2<T> {
        let (a, b) = self.facet_endpoints(i);
        let e = b - a;
        let len = e.norm();
        Point2::new(e.x2 / len, -e.x1 / len)
    }

    /// CR basis `theta_i = 1 - 2 lambda_i`, equal to one on the midpoint of `F_i`.
    pub fn cr_eval(&self, i: usize, x: Point2<T>) -> T {
        T::one() - T::lit(2.0) * self.barycentric(x)[i]
    }

    pub fn cr_grad(&self, i: usize) -> Point2<T> {
        self.grad_barycentric[i] * T::lit(-2.0)
    }

    /// RT0 basis dual to the flux through `F_i` measured with the outward
    /// normal scaled by `sign` (`+1` when the global facet normal is outward).
    ///
    /// `theta_i(x) = sign / (2|T|) (x - p_i)`, so `div theta_i = sign / |T|`.
    pub fn rt0_eval(&self, i: usize, sign: T, x: Point2<T>) -> Point2<T> {
        (x - self.vertices[i]) * (sign / (self.area + self.area))
    }

    /// Divergence of the basis dual to facet `_i`; the same for all three.
    pub fn rt0_div(&self, _i: usize, sign: T) -> T {
        sign / self.area
    }
}
