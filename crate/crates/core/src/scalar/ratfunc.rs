use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{GaussianRational as GR, Poly1};
use crate::error::{Error, Result};

/// Reduced quotient `num/den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly1,
    den: Poly1,
}

impl RatFunc {
    pub fn new(num: Poly1, den: Poly1) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_constant() {
            let c = den.coeff(0).inv().unwrap();
            return Ok(RatFunc { num: num.scale(&c), den: Poly1::one() });
        }
        let g = Poly1::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let lead = den.leading().unwrap().inv().unwrap();
        Ok(RatFunc { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly1::zero(), den: Poly1::one() }
    }

    pub fn one() -> Self {
        Self::constant(GR::one())
    }

    pub fn constant(c: GR) -> Self {
        RatFunc { num: Poly1::constant(c), den: Poly1::one() }
    }

    pub fn var() -> Self {
        Self::from_poly(Poly1::var())
    }

    pub fn from_poly(p: Poly1) -> Self {
        RatFunc { num: p, den: Poly1::one() }
    }

    pub fn num(&self) -> &Poly1 {
        &self.num
    }

    pub fn den(&self) -> &Poly1 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<&Poly1> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn eval(&self, v: &GR) -> Result<GR> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(&self.num.eval(v) / &d)
    }

    pub fn eval_complex(&self, v: Complex64) -> Complex64 {
        self.num.eval_complex(v) / self.den.eval_complex(v)
    }

    pub fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn derivative(&self) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den).unwrap()
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `f(1/s)` as a rational function of `s`.
    pub fn at_reciprocal(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let n = dn.max(dd);
        Self::new(self.num.reversed(n), self.den.reversed(n)).unwrap()
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_polynomial() {
            return self.num.render(var);
        }
        format!("({})/({})", self.num.render(var), self.den.render(var))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly1> for RatFunc {
    fn from(p: Poly1) -> Self {
        Self::from_poly(p)
    }
}

impl From<GR> for RatFunc {
    fn from(c: GR) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("v"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

fn add_rf(a: &RatFunc, b: &RatFunc, sub: bool) -> RatFunc {
    let bn = if sub { -&b.num } else { b.num.clone() };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return RatFunc { num: bn, den: b.den.clone() };
    }
    if a.den == b.den {
        if a.is_polynomial() {
            return RatFunc::from_poly(&a.num + &bn);
        }
        return RatFunc::new(&a.num + &bn, a.den.clone()).unwrap();
    }
    RatFunc::new(&(&a.num * &b.den) + &(&bn * &a.den), &a.den * &b.den).unwrap()
}

fn mul_rf(a: &RatFunc, b: &RatFunc) -> RatFunc {
    if a.is_zero() || b.is_zero() {
        return RatFunc::zero();
    }
    if a.is_polynomial() && b.is_polynomial() {
        return RatFunc::from_poly(&a.num * &b.num);
    }
    RatFunc::new(&a.num * &b.num, &a.den * &b.den).unwrap()
}

macro_rules! rf_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &'a RatFunc) -> RatFunc {
                $body(self, rhs)
            }
        }
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                $body(&self, &rhs)
            }
        }
    };
}

rf_binop!(Add, add, |a, b| add_rf(a, b, false));
rf_binop!(Sub, sub, |a, b| add_rf(a, b, true));
rf_binop!(Mul, mul, mul_rf);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}
