use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{GaussianRational as GR, RatFunc};

/// Coefficient ring of a [`super::SemiSeries`]: functions of the chart variable
/// `v` that can be differentiated.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Zero to all orders; differs from `is_zero` only for truncated coefficients.
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn from_gr(c: &GR) -> Self;
    fn derivative(&self) -> Self;
    fn scale_gr(&self, c: &GR) -> Self;
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn from_gr(c: &GR) -> Self {
        RatFunc::constant(c.clone())
    }
    fn derivative(&self) -> Self {
        RatFunc::derivative(self)
    }
    fn scale_gr(&self, c: &GR) -> Self {
        self.scale(c)
    }
}

/// Product of two `x`-series truncated after `x^t`.
pub(crate) fn xs_mul<C: Coeff>(a: &[C], b: &[C], t: usize) -> Vec<C> {
    let mut out = vec![C::zero(); t + 1];
    for (i, ai) in a.iter().enumerate().take(t + 1) {
        if ai.is_exact_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(t + 1 - i) {
            if !bj.is_exact_zero() {
                out[i + j] = out[i + j].clone() + ai.clone() * bj.clone();
            }
        }
    }
    out
}

pub(crate) fn xs_add<C: Coeff>(a: &[C], b: &[C], t: usize) -> Vec<C> {
    (0..=t)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.clone() + y.clone(),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => C::zero(),
        })
        .collect()
}

pub(crate) fn xs_scale<C: Coeff>(a: &[C], c: &C) -> Vec<C> {
    a.iter().map(|x| x.clone() * c.clone()).collect()
}
