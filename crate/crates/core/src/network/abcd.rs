//! ABCD (transfer) matrices for two-port networks.

use std::ops::Mul;

use crate::scalar::{cx, Cx, Real};

/// `[[a, b], [c, d]]`, with `b` in ohms, `c` in siemens.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPortAbcd<T> {
    pub a: Cx<T>,
    pub b: Cx<T>,
    pub c: Cx<T>,
    pub d: Cx<T>,
}

impl<T: Real> TwoPortAbcd<T> {
    pub fn new(a: Cx<T>, b: Cx<T>, c: Cx<T>, d: Cx<T>) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        let one = cx(T::one(), T::zero());
        let zero = cx(T::zero(), T::zero());
        Self::new(one, zero, zero, one)
    }

    /// Series impedance stamp `[[1, Z], [0, 1]]`.
    pub fn series(z: Cx<T>) -> Self {
        let mut m = Self::identity();
        m.b = z;
        m
    }

    /// Shunt admittance stamp `[[1, 0], [Y, 1]]`.
    pub fn shunt(y: Cx<T>) -> Self {
        let mut m = Self::identity();
        m.c = y;
        m
    }

    pub fn determinant(&self) -> Cx<T> {
        self.a * self.d - self.b * self.c
    }

    /// `self` followed by `next` (matrix product `self · next`).
    pub fn cascade(&self, next: &Self) -> Self {
        Self {
            a: self.a * next.a + self.b * next.c,
            b: self.a * next.b + self.b * next.d,
            c: self.c * next.a + self.d * next.c,
            d: self.c * next.b + self.d * next.d,
        }
    }

    /// Reciprocity defect `|ad − bc − 1|` relative to `max(|ad|, |bc|, 1)`.
    pub fn reciprocity_defect(&self) -> T {
        let ad = self.a * self.d;
        let bc = self.b * self.c;
        let scale = ad.norm().max(bc.norm()).max(T::one());
        (ad - bc - cx(T::one(), T::zero())).norm() / scale
    }

    /// Largest elementwise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        [
            (self.a - other.a).norm(),
            (self.b - other.b).norm(),
            (self.c - other.c).norm(),
            (self.d - other.d).norm(),
        ]
        .into_iter()
        .fold(T::zero(), T::max)
    }
}

impl<T: Real> Mul for TwoPortAbcd<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.cascade(&rhs)
    }
}

/// Matrix product `m1 · m2`.
pub fn cascade<T: Real>(m1: &TwoPortAbcd<T>, m2: &TwoPortAbcd<T>) -> TwoPortAbcd<T> {
    m1.cascade(m2)
}
