//! Exact scalars: Gaussian rationals, univariate polynomials and rational
//! functions over Q(i), plus root finding.

mod gaussian;
mod poly;
mod ratfunc;
pub mod linalg;
pub mod roots;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub use gaussian::GaussianRational;
use num_complex::Complex64;
use num_traits::{One, Zero};
pub use poly::{lagrange_interpolate, Poly1};
pub use ratfunc::RatFunc;

/// A coefficient field usable in local series: exact Q(i) or `Complex64`.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_gr(c: &GaussianRational) -> Self;
    fn from_i64(n: i64) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn to_complex(&self) -> Complex64;
}

impl Field for GaussianRational {
    fn from_gr(c: &GaussianRational) -> Self {
        c.clone()
    }
    fn from_i64(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn to_complex(&self) -> Complex64 {
        GaussianRational::to_complex(self)
    }
}

impl Field for Complex64 {
    fn from_gr(c: &GaussianRational) -> Self {
        c.to_complex()
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn inverse(&self) -> Option<Self> {
        (self.norm() != 0.0).then(|| 1.0 / *self)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}
