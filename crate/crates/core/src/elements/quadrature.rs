//! Quadrature on the reference triangle and on segments.
//!
//! Triangle rules are stored in barycentric coordinates with weights that sum
//! to one; callers scale by the cell area. Low degrees use the classical
//! symmetric rules (centroid, 3-point, 7-point Radon); higher degrees use a
//! collapsed Gauss-Legendre product rule, which is exact to the requested
//! degree by construction.

use crate::error::{Error, Result};
use crate::mesh::Point2;
use crate::scalar::Scalar;

pub const MAX_QUADRATURE_DEGREE: usize = 20;

#[derive(Debug, Clone)]
pub struct QuadratureRule<T> {
    /// Polynomial degree integrated exactly.
    pub degree: usize,
    pub points: Vec<[T; 3]>,
    pub weights: Vec<T>,
}

impl<T: Scalar> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Physical quadrature points on the triangle `vertices`, paired with the
    /// normalized weights (sum one).
    pub fn physical_points<'a>(
        &'a self,
        vertices: &'a [Point2<T>; 3],
    ) -> impl Iterator<Item = (Point2<T>, T)> + 'a {
        self.points.iter().zip(&self.weights).map(move |(b, &w)| {
            let x = vertices[0] * b[0] + vertices[1] * b[1] + vertices[2] * b[2];
            (x, w)
        })
    }

    /// Integral of `g` over the reference triangle (0,0), (1,0), (0,1).
    pub fn integrate_reference<F: FnMut(T, T) -> T>(&self, mut g: F) -> T {
        let half = T::lit(0.5);
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(b, &w)| w * g(b[1], b[2]))
            .sum::<T>()
            * half
    }
}

/// Triangle rule exact for polynomials of total degree `degree`.
pub fn quadrature_rule<T: Scalar>(degree: usize) -> Result<QuadratureRule<T>> {
    match degree {
        0 => Err(Error::UnsupportedQuadratureDegree(0)),
        1 => Ok(centroid_rule()),
        2 => Ok(three_point_rule()),
        3..=5 => Ok(seven_point_rule()),
        d if d <= MAX_QUADRATURE_DEGREE => Ok(collapsed_rule(d)),
        d => Err(Error::UnsupportedQuadratureDegree(d)),
    }
}

fn centroid_rule<T: Scalar>() -> QuadratureRule<T> {
    let third = T::lit(1.0 / 3.0);
    QuadratureRule { degree: 1, points: vec![[third; 3]], weights: vec![T::one()] }
}

fn three_point_rule<T: Scalar>() -> QuadratureRule<T> {
    let a = 1.0 / 6.0;
    let b = 2.0 / 3.0;
    let points = [[b, a, a], [a, b, a], [a, a, b]]
        .iter()
        .map(|p| p.map(T::lit))
        .collect();
    QuadratureRule { degree: 2, points, weights: vec![T::lit(1.0 / 3.0); 3] }
}

fn seven_point_rule<T: Scalar>() -> QuadratureRule<T> {
    let s15 = 15f64.sqrt();
    let mut points = vec![[1.0 / 3.0; 3]];
    let mut weights = vec![9.0 / 40.0];
    for (a, w) in [((6.0 - s15) / 21.0, (155.0 - s15) / 1200.0), ((6.0 + s15) / 21.0, (155.0 + s15) / 1200.0)] {
        let b = 1.0 - 2.0 * a;
        points.extend([[b, a, a], [a, b, a], [a, a, b]]);
        weights.extend([w; 3]);
    }
    QuadratureRule {
        degree: 5,
        points: points.into_iter().map(|p| p.map(T::lit)).collect(),
        weights: weights.into_iter().map(T::lit).collect(),
    }
}

/// Degree-2 rule on the three edge midpoints.
pub fn edge_midpoint_rule<T: Scalar>() -> QuadratureRule<T> {
    let points = [[0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]]
        .iter()
        .map(|p| p.map(T::lit))
        .collect();
    QuadratureRule { degree: 2, points, weights: vec![T::lit(1.0 / 3.0); 3] }
}

/// Degree-3 rule on vertices (1/20 each), edge midpoints (2/15 each) and
/// the centroid (9/20).
pub fn vertex_midpoint_centroid_rule<T: Scalar>() -> QuadratureRule<T> {
    let mut points = vec![[1.0 / 3.0; 3]];
    let mut weights = vec![9.0 / 20.0];
    points.extend([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    weights.extend([1.0 / 20.0; 3]);
    points.extend([[0.0, 0.5, 0.5], [0.5, 0.0, 0.5], [0.5, 0.5, 0.0]]);
    weights.extend([2.0 / 15.0; 3]);
    QuadratureRule {
        degree: 3,
        points: points.into_iter().map(|p| p.map(T::lit)).collect(),
        weights: weights.into_iter().map(T::lit).collect(),
    }
}

/// Duffy-collapsed product rule: `xi = s`, `eta = (1 - s) t` with Jacobian
/// `1 - s`, so the `s` direction needs one extra degree.
fn collapsed_rule<T: Scalar>(degree: usize) -> QuadratureRule<T> {
    let (s_nodes, s_weights) = gauss_legendre_unit((degree + 3) / 2);
    let (t_nodes, t_weights) = gauss_legendre_unit((degree + 2) / 2);
    let mut points = Vec::with_capacity(s_nodes.len() * t_nodes.len());
    let mut weights = Vec::with_capacity(points.capacity());
    for (&s, &ws) in s_nodes.iter().zip(&s_weights) {
        for (&t, &wt) in t_nodes.iter().zip(&t_weights) {
            let xi = s;
            let eta = (1.0 - s) * t;
            points.push([T::lit(1.0 - xi - eta), T::lit(xi), T::lit(eta)]);
            // factor 2 normalizes the reference area 1/2 to unit weight sum
            weights.push(T::lit(2.0 * ws * wt * (1.0 - s)));
        }
    }
    QuadratureRule { degree, points, weights }
}

/// Gauss-Legendre nodes and weights on `[0, 1]` (weights sum to one).
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th largest root; store ascending on [0, 1]
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        nodes[i] = 0.5 * (1.0 - x);
        weights[n - 1 - i] = 0.5 * w;
        weights[i] = 0.5 * w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss-Legendre rule on the unit segment, exact to `degree`.
#[derive(Debug, Clone)]
pub struct EdgeRule<T> {
    pub degree: usize,
    /// Parameters in `[0, 1]`.
    pub points: Vec<T>,
    /// Weights summing to one; scale by the segment length.
    pub weights: Vec<T>,
}

impl<T: Scalar> EdgeRule<T> {
    pub fn new(degree: usize) -> Self {
        let (nodes, weights) = gauss_legendre_unit(degree / 2 + 1);
        Self {
            degree: 2 * nodes.len() - 1,
            points: nodes.into_iter().map(T::lit).collect(),
            weights: weights.into_iter().map(T::lit).collect(),
        }
    }

    /// Mean of `g` over the segment `a -> b`.
    pub fn mean<V, F>(&self, a: Point2<T>, b: Point2<T>, mut g: F) -> V
    where
        F: FnMut(Point2<T>) -> V,
        V: std::ops::Add<Output = V> + std::ops::Mul<T, Output = V> + Default,
    {
        self.points.iter().zip(&self.weights).fold(V::default(), |acc, (&t, &w)| {
            acc + g(a + (b - a) * t) * w
        })
    }
}

/// Edge rule used for facet DOF functionals.
pub const EDGE_QUADRATURE_DEGREE: usize = 9;

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn factorial(n: u32) -> f64 {
        (1..=n).map(f64::from).product()
    }

    fn monomial(m: u32, n: u32) -> f64 {
        factorial(m) * factorial(n) / factorial(m + n + 2)
    }

    #[test]
    fn centroid_integrates_x1() {
        let q = quadrature_rule::<f64>(1).unwrap();
        assert_relative_eq!(q.integrate_reference(|x, _| x), 1.0 / 6.0, epsilon = 1e-16);
    }

    #[test]
    fn degree_two_integrates_x1_x2() {
        let q = quadrature_rule::<f64>(2).unwrap();
        assert_relative_eq!(q.integrate_reference(|x, y| x * y), 1.0 / 24.0, epsilon = 1e-16);
    }

    #[test]
    fn degree_fourteen_integrates_x7_y7() {
        let q = quadrature_rule::<f64>(14).unwrap();
        let exact = factorial(7) * factorial(7) / factorial(16);
        let got = q.integrate_reference(|x, y| x.powi(7) * y.powi(7));
        assert_relative_eq!(got, exact, max_relative = 1e-14);
    }

    #[test]
    fn rejects_unsupported_degrees() {
        assert!(quadrature_rule::<f64>(0).is_err());
        assert!(quadrature_rule::<f64>(MAX_QUADRATURE_DEGREE + 1).is_err());
    }

    #[test]
    fn weights_sum_to_one_and_points_inside() {
        for d in 1..=MAX_QUADRATURE_DEGREE {
            let q = quadrature_rule::<f64>(d).unwrap();
            assert!(q.degree >= d);
            assert_relative_eq!(q.weights.iter().sum::<f64>(), 1.0, epsilon = 1e-14);
            for p in &q.points {
                assert!(p.iter().all(|&l| l > 0.0 && l < 1.0));
                assert_relative_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn f32_rules_are_usable() {
        let q = quadrature_rule::<f32>(6).unwrap();
        let got = q.integrate_reference(|x, y| x * x * y);
        assert!((got - monomial(2, 1) as f32).abs() < 1e-6);
    }

    #[test]
    fn nodal_rules_are_exact_to_their_degree() {
        for q in [edge_midpoint_rule::<f64>(), vertex_midpoint_centroid_rule()] {
            assert_relative_eq!(q.weights.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
            for m in 0..=q.degree as u32 {
                for n in 0..=(q.degree as u32 - m) {
                    let got = q.integrate_reference(|x, y| x.powi(m as i32) * y.powi(n as i32));
                    assert_relative_eq!(got, monomial(m, n), max_relative = 1e-14);
                }
            }
            let d = q.degree as i32 + 1;
            let got = q.integrate_reference(|x, _| x.powi(d));
            assert!((got - monomial(d as u32, 0)).abs() > 1e-6);
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in 1..12 {
            let (x, w) = gauss_legendre_unit(n);
            for k in 0..(2 * n) as i32 {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
                assert_relative_eq!(got, 1.0 / (k as f64 + 1.0), max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn edge_mean_of_square() {
        let e = EdgeRule::<f64>::new(EDGE_QUADRATURE_DEGREE);
        let m: f64 = e.mean(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), |p| p.x1 * p.x1);
        assert_relative_eq!(m, 1.0 / 3.0, epsilon = 1e-15);
    }
}
