use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of Q(i), stored as `(re_num + im_num*i) / den`.
///
/// The representation is canonical: `den > 0` and `gcd(re_num, im_num, den) = 1`,
/// so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re_num: BigInt,
    im_num: BigInt,
    den: BigInt,
}

impl GaussianRational {
    fn reduced(mut re_num: BigInt, mut im_num: BigInt, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            re_num = -re_num;
            im_num = -im_num;
            den = -den;
        }
        if re_num.is_zero() && im_num.is_zero() {
            return Self::zero();
        }
        if !den.is_one() {
            let g = re_num.gcd(&im_num).gcd(&den);
            if !g.is_one() {
                re_num /= &g;
                im_num /= &g;
                den /= &g;
            }
        }
        GaussianRational { re_num, im_num, den }
    }

    pub fn new(re: BigRational, im: BigRational) -> Self {
        let den = re.denom().lcm(im.denom());
        let a = re.numer() * (&den / re.denom());
        let b = im.numer() * (&den / im.denom());
        Self::reduced(a, b, den)
    }

    /// `n / d` as a real Gaussian rational. Panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::reduced(BigInt::from(n), BigInt::zero(), BigInt::from(d))
    }

    pub fn from_int(n: i64) -> Self {
        Self::reduced(BigInt::from(n), BigInt::zero(), BigInt::one())
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::reduced(n, BigInt::zero(), BigInt::one())
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::reduced(q.numer().clone(), BigInt::zero(), q.denom().clone())
    }

    /// `a + b*i` with integer parts.
    pub fn gaussian_int(a: i64, b: i64) -> Self {
        Self::reduced(BigInt::from(a), BigInt::from(b), BigInt::one())
    }

    pub fn from_parts(re_num: BigInt, im_num: BigInt, den: BigInt) -> Self {
        Self::reduced(re_num, im_num, den)
    }

    pub fn i() -> Self {
        Self::gaussian_int(0, 1)
    }

    pub fn re(&self) -> BigRational {
        BigRational::new(self.re_num.clone(), self.den.clone())
    }

    pub fn im(&self) -> BigRational {
        BigRational::new(self.im_num.clone(), self.den.clone())
    }

    /// Numerators and common denominator of the canonical form.
    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.re_num, &self.im_num, &self.den)
    }

    pub fn is_real(&self) -> bool {
        self.im_num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re_num: self.re_num.clone(),
            im_num: -&self.im_num,
            den: self.den.clone(),
        }
    }

    /// `|z|^2`, a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        BigRational::new(
            &self.re_num * &self.re_num + &self.im_num * &self.im_num,
            &self.den * &self.den,
        )
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = &self.re_num * &self.re_num + &self.im_num * &self.im_num;
        Some(Self::reduced(
            &self.den * &self.re_num,
            -(&self.den * &self.im_num),
            n,
        ))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inv().map(|v| v.pow((-e) as u32))
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let re = self.re().to_f64().unwrap_or(f64::NAN);
        let im = self.im().to_f64().unwrap_or(f64::NAN);
        Complex64::new(re, im)
    }

    /// Scales by an integer.
    pub fn mul_int(&self, n: i64) -> Self {
        Self::reduced(
            &self.re_num * n,
            &self.im_num * n,
            self.den.clone(),
        )
    }

    pub fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero");
        Self::reduced(
            self.re_num.clone(),
            self.im_num.clone(),
            &self.den * n,
        )
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re_num: BigInt::zero(),
            im_num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re_num.is_zero() && self.im_num.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational {
            re_num: BigInt::one(),
            im_num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    fn is_one(&self) -> bool {
        self.re_num.is_one() && self.im_num.is_zero() && self.den.is_one()
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(q: BigRational) -> Self {
        Self::from_rational(&q)
    }
}

fn add_impl(a: &GaussianRational, b: &GaussianRational, negate_b: bool) -> GaussianRational {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let (br, bi) = if negate_b {
        (-&b.re_num, -&b.im_num)
    } else {
        (b.re_num.clone(), b.im_num.clone())
    };
    if a.den == b.den {
        return GaussianRational::reduced(&a.re_num + br, &a.im_num + bi, a.den.clone());
    }
    GaussianRational::reduced(
        &a.re_num * &b.den + br * &a.den,
        &a.im_num * &b.den + bi * &a.den,
        &a.den * &b.den,
    )
}

fn mul_impl(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    if a.is_zero() || b.is_zero() {
        return GaussianRational::zero();
    }
    if a.im_num.is_zero() && b.im_num.is_zero() {
        return GaussianRational::reduced(
            &a.re_num * &b.re_num,
            BigInt::zero(),
            &a.den * &b.den,
        );
    }
    GaussianRational::reduced(
        &a.re_num * &b.re_num - &a.im_num * &b.im_num,
        &a.re_num * &b.im_num + &a.im_num * &b.re_num,
        &a.den * &b.den,
    )
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                $body(self, rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &'a GaussianRational) -> GaussianRational {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, false));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, true));
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, |a: &GaussianRational, b: &GaussianRational| {
    a.checked_div(b).expect("division by zero")
});

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        *self = add_impl(self, rhs, false);
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        *self = add_impl(self, rhs, true);
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = mul_impl(self, rhs);
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re_num: -self.re_num,
            im_num: -self.im_num,
            den: self.den,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -(self.clone())
    }
}

impl Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

fn fmt_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Renders as `p/q`, `r/s*i`, `p/q+r/s*i`; `/1` and unit imaginary
    /// coefficients are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = self.re();
        let im = self.im();
        if im.is_zero() {
            return fmt_rational(f, &re);
        }
        if !re.is_zero() {
            fmt_rational(f, &re)?;
            if im.is_positive() {
                write!(f, "+")?;
            }
        }
        if im.is_one() {
            write!(f, "i")
        } else if (-&im).is_one() {
            write!(f, "-i")
        } else {
            fmt_rational(f, &im)?;
            write!(f, "*i")
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
