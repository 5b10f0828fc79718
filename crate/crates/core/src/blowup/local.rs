use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Coeff;
use crate::error::{Error, Result};
use crate::scalar::{Field, GaussianRational as GR, Poly1, RatFunc};

/// Marks a series known to all orders.
const EXACT: i64 = i64::MAX / 4;

/// Truncated power series in `u = v - v0` with tracked precision: the
/// coefficients of `u^0 ..= u^prec` are known, higher ones are not.
#[derive(Clone, PartialEq)]
pub struct LocalSeries<F: Field> {
    coeffs: Vec<F>,
    prec: i64,
}

impl<F: Field> LocalSeries<F> {
    pub fn new(mut coeffs: Vec<F>, prec: usize) -> Self {
        coeffs.truncate(prec + 1);
        LocalSeries { coeffs, prec: prec as i64 }
    }

    pub fn exact(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LocalSeries { coeffs, prec: EXACT }
    }

    pub fn constant(c: F) -> Self {
        Self::exact(vec![c])
    }

    /// Known precision, `None` when exact; `Some(-1)` means nothing is known.
    pub fn precision(&self) -> Option<i64> {
        (self.prec < EXACT).then_some(self.prec)
    }

    /// Coefficient of `u^j`, or `None` beyond the known precision.
    pub fn coeff(&self, j: usize) -> Option<F> {
        if j as i64 > self.prec {
            return None;
        }
        Some(self.coeffs.get(j).cloned().unwrap_or_else(F::zero))
    }

    pub fn known(&self) -> &[F] {
        &self.coeffs
    }

    /// Index of the first nonzero known coefficient, or `prec + 1`.
    fn valuation(&self) -> i64 {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map_or(self.prec.saturating_add(1), |p| p as i64)
    }

    fn normalise(mut coeffs: Vec<F>, prec: i64) -> Self {
        let prec = prec.min(EXACT);
        if prec < EXACT {
            coeffs.truncate((prec + 1).max(0) as usize);
        } else {
            while coeffs.last().is_some_and(|c| c.is_zero()) {
                coeffs.pop();
            }
        }
        LocalSeries { coeffs, prec }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::normalise(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), self.prec)
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self::normalise(self.coeffs.clone(), self.prec.min(prec as i64))
    }

    /// Taylor expansion of `rf` at `v0` through `u^prec`.
    pub fn expand(rf: &RatFunc, v0: &F, prec: usize) -> Result<Self> {
        let num = shift::<F>(rf.num(), v0);
        let den = shift::<F>(rf.den(), v0);
        let d0 = den.first().cloned().unwrap_or_else(F::zero);
        let inv = d0.inverse().ok_or(Error::Pole)?;
        if rf.is_polynomial() {
            return Ok(Self::exact(num.into_iter().map(|c| c * inv.clone()).collect()));
        }
        let mut out: Vec<F> = Vec::with_capacity(prec + 1);
        for j in 0..=prec {
            let mut s = num.get(j).cloned().unwrap_or_else(F::zero);
            for i in 1..=j.min(den.len().saturating_sub(1)) {
                s = s - den[i].clone() * out[j - i].clone();
            }
            out.push(s * inv.clone());
        }
        Ok(Self::new(out, prec))
    }

    pub fn expand_poly(p: &Poly1, v0: &F) -> Self {
        Self::exact(shift::<F>(p, v0))
    }

    /// Value at `u = 0`.
    pub fn value(&self) -> Option<F> {
        self.coeff(0)
    }
}

/// Coefficients of `p(v0 + u)` in `u`.
fn shift<F: Field>(p: &Poly1, v0: &F) -> Vec<F> {
    let mut out: Vec<F> = p.coeffs().iter().map(F::from_gr).collect();
    let n = out.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = out[j + 1].clone() * v0.clone();
            out[j] = out[j].clone() + t;
        }
    }
    out
}

impl<F: Field> fmt::Debug for LocalSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.precision() {
            Some(p) => write!(f, "{:?} + O(u^{})", self.coeffs, p + 1),
            None => write!(f, "{:?}", self.coeffs),
        }
    }
}

fn add_ls<F: Field>(a: &LocalSeries<F>, b: &LocalSeries<F>, sub: bool) -> LocalSeries<F> {
    let prec = a.prec.min(b.prec);
    let len = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..len)
        .map(|i| {
            let x = a.coeffs.get(i).cloned().unwrap_or_else(F::zero);
            let y = b.coeffs.get(i).cloned().unwrap_or_else(F::zero);
            if sub {
                x - y
            } else {
                x + y
            }
        })
        .collect();
    LocalSeries::normalise(coeffs, prec)
}

fn mul_ls<F: Field>(a: &LocalSeries<F>, b: &LocalSeries<F>) -> LocalSeries<F> {
    let prec = a
        .prec
        .saturating_add(b.valuation())
        .min(b.prec.saturating_add(a.valuation()));
    if a.coeffs.is_empty() || b.coeffs.is_empty() {
        return LocalSeries::normalise(Vec::new(), prec);
    }
    let cap = if prec < EXACT {
        (prec + 1).max(0) as usize
    } else {
        a.coeffs.len() + b.coeffs.len() - 1
    };
    let mut out = vec![F::zero(); cap];
    for (i, x) in a.coeffs.iter().enumerate().take(cap) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate().take(cap - i) {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    LocalSeries::normalise(out, prec)
}

impl<F: Field> Add for LocalSeries<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        add_ls(&self, &rhs, false)
    }
}

impl<F: Field> Sub for LocalSeries<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        add_ls(&self, &rhs, true)
    }
}

impl<F: Field> Mul for LocalSeries<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        mul_ls(&self, &rhs)
    }
}

impl<F: Field> Neg for LocalSeries<F> {
    type Output = Self;
    fn neg(self) -> Self {
        LocalSeries { coeffs: self.coeffs.into_iter().map(|c| -c).collect(), prec: self.prec }
    }
}

impl<F: Field> Coeff for LocalSeries<F> {
    fn zero() -> Self {
        Self::exact(Vec::new())
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn is_exact_zero(&self) -> bool {
        self.prec >= EXACT && self.coeffs.is_empty()
    }
    fn from_gr(c: &GR) -> Self {
        Self::constant(F::from_gr(c))
    }
    fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.clone() * F::from_i64(j as i64))
            .collect();
        Self::normalise(coeffs, if self.prec >= EXACT { EXACT } else { self.prec - 1 })
    }
    fn scale_gr(&self, c: &GR) -> Self {
        self.scale(&F::from_gr(c))
    }
}
