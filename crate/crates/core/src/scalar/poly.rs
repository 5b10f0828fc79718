use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::GaussianRational as GR;
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q(i); `coeffs[d]` multiplies `v^d`.
/// Trailing zeros are never stored, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly1 {
    coeffs: Vec<GR>,
}

impl Poly1 {
    pub fn new(mut coeffs: Vec<GR>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GR::one())
    }

    pub fn constant(c: GR) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `v`.
    pub fn var() -> Self {
        Self::monomial(1, GR::one())
    }

    pub fn monomial(d: usize, c: GR) -> Self {
        let mut coeffs = vec![GR::zero(); d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| GR::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[GR] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> GR {
        self.coeffs.get(d).cloned().unwrap_or_else(GR::zero)
    }

    pub fn leading(&self) -> Option<&GR> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly1::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn eval(&self, v: &GR) -> GR {
        let mut acc = GR::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * v) + c;
        }
        acc
    }

    pub fn eval_complex(&self, v: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c.to_complex();
        }
        acc
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GR::to_complex).collect()
    }

    pub fn derivative(&self) -> Self {
        Poly1::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c.mul_int(d as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn div_rem(&self, rhs: &Poly1) -> Result<(Poly1, Poly1)> {
        let lead_inv = rhs
            .leading()
            .ok_or(Error::DivisionByZeroPolynomial)?
            .inv()
            .unwrap();
        let dr = rhs.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dr {
            return Ok((Poly1::zero(), self.clone()));
        }
        let mut quot = vec![GR::zero(); rem.len() - dr];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dr] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    rem[i + j] -= &(&c * b);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dr);
        Ok((Poly1::new(quot), Poly1::new(rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, rhs: &Poly1) -> Result<Poly1> {
        let (q, r) = self.div_rem(rhs)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly1, b: &Poly1) -> Poly1 {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p(v + c)`.
    pub fn taylor_shift(&self, c: &GR) -> Poly1 {
        let mut out = self.coeffs.clone();
        let n = out.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &out[j + 1] * c;
                out[j] += &t;
            }
        }
        Poly1::new(out)
    }

    /// `p(q(v))`.
    pub fn compose(&self, q: &Poly1) -> Poly1 {
        let mut acc = Poly1::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly1::constant(c.clone());
        }
        acc
    }

    /// `v^n p(1/v)`; requires `n >= deg p`.
    pub fn reversed(&self, n: usize) -> Poly1 {
        let mut out = vec![GR::zero(); n + 1];
        for (d, c) in self.coeffs.iter().enumerate() {
            out[n - d] = c.clone();
        }
        Poly1::new(out)
    }

    /// Squarefree part, made monic.
    pub fn squarefree(&self) -> Poly1 {
        if self.is_zero() {
            return Poly1::zero();
        }
        let g = Poly1::gcd(self, &self.derivative());
        self.div_exact(&g).unwrap().monic()
    }

    pub fn render(&self, var: &str) -> String {
        let terms: Vec<(GR, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| {
                let mono = match d {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{d}"),
                };
                (c.clone(), mono)
            })
            .collect();
        crate::text::render_sum(&terms)
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("v"))
    }
}

impl fmt::Debug for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly1({self})")
    }
}

fn add_polys(a: &Poly1, b: &Poly1, sign: bool) -> Poly1 {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = Vec::with_capacity(n);
    for d in 0..n {
        let x = a.coeffs.get(d);
        let y = b.coeffs.get(d);
        out.push(match (x, y) {
            (Some(x), Some(y)) if sign => x - y,
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) if sign => -y,
            (None, Some(y)) => y.clone(),
            (None, None) => GR::zero(),
        });
    }
    Poly1::new(out)
}

fn mul_polys(a: &Poly1, b: &Poly1) -> Poly1 {
    if a.is_zero() || b.is_zero() {
        return Poly1::zero();
    }
    let mut out = vec![GR::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    Poly1::new(out)
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Poly1> for &'a Poly1 {
            type Output = Poly1;
            fn $method(self, rhs: &'a Poly1) -> Poly1 {
                $body(self, rhs)
            }
        }
        impl $tr for Poly1 {
            type Output = Poly1;
            fn $method(self, rhs: Poly1) -> Poly1 {
                $body(&self, &rhs)
            }
        }
    };
}

poly_binop!(Add, add, |a, b| add_polys(a, b, false));
poly_binop!(Sub, sub, |a, b| add_polys(a, b, true));
poly_binop!(Mul, mul, mul_polys);

impl Neg for &Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly1 {
    type Output = Poly1;
    fn neg(self) -> Poly1 {
        -&self
    }
}

/// The unique polynomial of degree `< n` through `n` points with distinct nodes.
pub fn lagrange_interpolate(points: &[(GR, GR)]) -> Result<Poly1> {
    for (i, (a, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(b, _)| a == b) {
            return Err(Error::NodesNotDistinct);
        }
    }
    let mut acc = Poly1::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly1::one();
        let mut denom = GR::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly1::new(vec![-xj, GR::one()]);
                denom = &denom * &(xi - xj);
            }
        }
        acc = &acc + &basis.scale(&(yi / &denom));
    }
    Ok(acc)
}
