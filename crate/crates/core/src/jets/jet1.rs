use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational as GR;

/// Truncated power series in one variable over Q(i); `coeffs[d]` multiplies `x^d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Jet1 {
    order: u32,
    coeffs: Vec<GR>,
}

impl Jet1 {
    pub fn new(order: u32, mut coeffs: Vec<GR>) -> Self {
        coeffs.resize(order as usize + 1, GR::zero());
        Jet1 { order, coeffs }
    }

    pub fn zero(order: u32) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn x(order: u32) -> Self {
        Self::new(order, vec![GR::zero(), GR::one()])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, d: u32) -> GR {
        self.coeffs.get(d as usize).cloned().unwrap_or_else(GR::zero)
    }

    pub fn coeffs(&self) -> &[GR] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Jet1) -> Jet1 {
        let n = self.order.min(o.order);
        Jet1::new(n, (0..=n).map(|d| &self.coeff(d) + &o.coeff(d)).collect())
    }

    pub fn sub(&self, o: &Jet1) -> Jet1 {
        let n = self.order.min(o.order);
        Jet1::new(n, (0..=n).map(|d| &self.coeff(d) - &o.coeff(d)).collect())
    }

    pub fn scale(&self, c: &GR) -> Jet1 {
        Jet1::new(self.order, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Jet1) -> Jet1 {
        let n = self.order.min(o.order) as usize;
        let mut out = vec![GR::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Jet1::new(n as u32, out)
    }

    /// `self ∘ g` for `g(0) = 0`, by Horner's rule.
    pub fn compose(&self, g: &Jet1) -> Result<Jet1> {
        if !g.coeff(0).is_zero() {
            return Err(Error::NotAtOrigin);
        }
        let n = self.order.min(g.order);
        let mut acc = Jet1::zero(n);
        for c in self.coeffs.iter().take(n as usize + 1).rev() {
            acc = acc.mul(g);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    pub fn invert(&self) -> Result<Jet1> {
        if !self.coeff(0).is_zero() {
            return Err(Error::NotAtOrigin);
        }
        let a = self.coeff(1).inv().ok_or(Error::SingularLinearPart)?;
        let n = self.order;
        let nonlinear = self.sub(&Jet1::x(n).scale(&self.coeff(1)));
        let mut g = Jet1::x(n).scale(&a);
        for _ in 2..=n {
            g = Jet1::x(n).sub(&nonlinear.compose(&g)?).scale(&a);
        }
        Ok(g)
    }

    pub fn eval(&self, x: &GR) -> GR {
        self.coeffs.iter().rev().fold(GR::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn render(&self, var: &str) -> String {
        let terms: Vec<(GR, String)> = self
            .coeffs
            .iter()
            .enumerate()
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

impl fmt::Display for Jet1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl fmt::Debug for Jet1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet1[{}]({self})", self.order)
    }
}
