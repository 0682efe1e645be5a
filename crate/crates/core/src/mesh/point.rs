use crate::scalar::Scalar;
use std::ops::{Add, Mul, Neg, Sub};

/// Point (or vector) in the plane with coordinates `(x1, x2)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2<T> {
    pub x1: T,
    pub x2: T,
}

impl<T: Scalar> Point2<T> {
    #[inline]
    pub fn new(x1: T, x2: T) -> Self {
        Self { x1, x2 }
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    /// Scalar cross product `a1 b2 - a2 b1`.
    #[inline]
    pub fn cross(self, other: Self) -> T {
        self.x1 * other.x2 - self.x2 * other.x1
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x1.hypot(self.x2)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    #[inline]
    pub fn to_array(self) -> [T; 2] {
        [self.x1, self.x2]
    }
}

impl<T: Scalar> From<[T; 2]> for Point2<T> {
    fn from(v: [T; 2]) -> Self {
        Self::new(v[0], v[1])
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl<T: Scalar> Neg for Point2<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x1, -self.x2)
    }
}

impl<T: Scalar> Mul<T> for Point2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.x1 * s, self.x2 * s)
    }
}
