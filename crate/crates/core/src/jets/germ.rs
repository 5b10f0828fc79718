use std::fmt;

use num_traits::{One, Zero};

use super::Jet2;
use crate::error::{Error, Result};
use crate::scalar::GaussianRational as GR;

/// A 2x2 matrix over Q(i), row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2(pub [[GR; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([[GR::one(), GR::zero()], [GR::zero(), GR::one()]])
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Self {
        Mat2(m.map(|row| row.map(GR::from_int)))
    }

    pub fn det(&self) -> GR {
        let m = &self.0;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det().inv()?;
        let m = &self.0;
        Some(Mat2([
            [&m[1][1] * &d, -&(&m[0][1] * &d)],
            [-&(&m[1][0] * &d), &m[0][0] * &d],
        ]))
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn scale(&self, c: &GR) -> Mat2 {
        Mat2(self.0.clone().map(|row| row.map(|v| &v * c)))
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        Mat2([
            [&a[0][0] + &b[0][0], &a[0][1] + &b[0][1]],
            [&a[1][0] + &b[1][0], &a[1][1] + &b[1][1]],
        ])
    }

    /// `(M (fx, fy))` for a pair of jets.
    pub fn apply(&self, fx: &Jet2, fy: &Jet2) -> (Jet2, Jet2) {
        let m = &self.0;
        (
            &fx.scale(&m[0][0]) + &fy.scale(&m[0][1]),
            &fx.scale(&m[1][0]) + &fy.scale(&m[1][1]),
        )
    }
}

/// Where the first nonlinear term of a germ tangent to the identity sits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlatOrder {
    /// The linear part is not the identity.
    NotTangent,
    /// The jet equals the identity at its truncation order.
    Identity,
    /// `F - id` starts in degree `m >= 2`, i.e. `F` is in `Diff_m`.
    Flat(u32),
}

/// A jet of a germ of holomorphic map of (C^2, 0), fixing the origin with
/// invertible linear part.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MapGerm {
    fx: Jet2,
    fy: Jet2,
}

impl MapGerm {
    pub fn new(fx: Jet2, fy: Jet2) -> Result<Self> {
        let g = Self::new_unchecked(fx, fy)?;
        if g.linear_part().det().is_zero() {
            return Err(Error::SingularLinearPart);
        }
        Ok(g)
    }

    /// Same as [`MapGerm::new`] but allows a singular linear part.
    pub(crate) fn new_unchecked(fx: Jet2, fy: Jet2) -> Result<Self> {
        if fx.order() != fy.order() {
            return Err(Error::OrderMismatch(fx.order(), fy.order()));
        }
        if !fx.coeff(0, 0).is_zero() || !fy.coeff(0, 0).is_zero() {
            return Err(Error::NotAtOrigin);
        }
        Ok(MapGerm { fx, fy })
    }

    pub fn identity(order: u32) -> Self {
        MapGerm { fx: Jet2::x(order), fy: Jet2::y(order) }
    }

    pub fn linear(order: u32, m: &Mat2) -> Result<Self> {
        let (fx, fy) = m.apply(&Jet2::x(order), &Jet2::y(order));
        Self::new(fx, fy)
    }

    /// `id + (px, py)`.
    pub fn identity_plus(px: &Jet2, py: &Jet2) -> Result<Self> {
        let n = px.order();
        Self::new(&Jet2::x(n) + px, &Jet2::y(n) + py)
    }

    pub fn fx(&self) -> &Jet2 {
        &self.fx
    }

    pub fn fy(&self) -> &Jet2 {
        &self.fy
    }

    pub fn order(&self) -> u32 {
        self.fx.order()
    }

    pub fn linear_part(&self) -> Mat2 {
        Mat2([
            [self.fx.coeff(1, 0), self.fx.coeff(0, 1)],
            [self.fy.coeff(1, 0), self.fy.coeff(0, 1)],
        ])
    }

    pub fn is_identity(&self) -> bool {
        *self == MapGerm::identity(self.order())
    }

    pub fn truncate(&self, n: u32) -> MapGerm {
        MapGerm { fx: self.fx.truncate(n), fy: self.fy.truncate(n) }
    }

    pub fn homogeneous_part(&self, d: u32) -> (Jet2, Jet2) {
        (self.fx.homogeneous_part(d), self.fy.homogeneous_part(d))
    }

    /// `F - id` as a pair of jets.
    pub fn displacement(&self) -> (Jet2, Jet2) {
        let n = self.order();
        (&self.fx - &Jet2::x(n), &self.fy - &Jet2::y(n))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MapGerm) -> Result<MapGerm> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(MapGerm {
            fx: self.fx.compose(&other.fx, &other.fy),
            fy: self.fy.compose(&other.fx, &other.fy),
        })
    }

    pub fn pow(&self, e: u32) -> MapGerm {
        let mut acc = MapGerm::identity(self.order());
        for _ in 0..e {
            acc = acc.compose(self).unwrap();
        }
        acc
    }

    /// Compositional inverse at the same order.
    pub fn invert(&self) -> MapGerm {
        let n = self.order();
        let ainv = self.linear_part().inverse().expect("invertible linear part");
        let (lx, ly) = self.homogeneous_part(1);
        let nx = &self.fx - &lx;
        let ny = &self.fy - &ly;
        // X = A^{-1}(Y - N(X)), gaining one degree per pass.
        let (mut gx, mut gy) = ainv.apply(&Jet2::x(n), &Jet2::y(n));
        for d in 2..=n {
            let (px, py) = (gx.with_order(d), gy.with_order(d));
            let rx = &Jet2::x(d) - &nx.truncate(d).compose(&px, &py);
            let ry = &Jet2::y(d) - &ny.truncate(d).compose(&px, &py);
            let (ux, uy) = ainv.apply(&rx, &ry);
            gx = ux;
            gy = uy;
        }
        MapGerm { fx: gx.with_order(n), fy: gy.with_order(n) }
    }

    /// Jacobian matrix of jets, each of order `N - 1`.
    pub fn jacobian(&self) -> [[Jet2; 2]; 2] {
        [
            [self.fx.partial_x(), self.fx.partial_y()],
            [self.fy.partial_x(), self.fy.partial_y()],
        ]
    }

    pub fn flat_order(&self) -> FlatOrder {
        if self.linear_part() != Mat2::identity() {
            return FlatOrder::NotTangent;
        }
        let (dx, dy) = self.displacement();
        match (dx.min_degree(), dy.min_degree()) {
            (None, None) => FlatOrder::Identity,
            (a, b) => FlatOrder::Flat(a.unwrap_or(u32::MAX).min(b.unwrap_or(u32::MAX))),
        }
    }

    pub fn render(&self) -> String {
        format!("({}, {})", self.fx, self.fy)
    }
}

impl fmt::Debug for MapGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MapGerm[{}]{}", self.order(), self.render())
    }
}

/// A jet of a holomorphic vector field `vx ∂x + vy ∂y` vanishing at the origin.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VFieldGerm {
    vx: Jet2,
    vy: Jet2,
}

impl VFieldGerm {
    pub fn new(vx: Jet2, vy: Jet2) -> Result<Self> {
        if vx.order() != vy.order() {
            return Err(Error::OrderMismatch(vx.order(), vy.order()));
        }
        if !vx.coeff(0, 0).is_zero() || !vy.coeff(0, 0).is_zero() {
            return Err(Error::NotAtOrigin);
        }
        Ok(VFieldGerm { vx, vy })
    }

    pub fn zero(order: u32) -> Self {
        VFieldGerm { vx: Jet2::zero(order), vy: Jet2::zero(order) }
    }

    /// The radial field `x ∂x + y ∂y`.
    pub fn radial(order: u32) -> Self {
        VFieldGerm { vx: Jet2::x(order), vy: Jet2::y(order) }
    }

    pub fn vx(&self) -> &Jet2 {
        &self.vx
    }

    pub fn vy(&self) -> &Jet2 {
        &self.vy
    }

    pub fn order(&self) -> u32 {
        self.vx.order()
    }

    pub fn is_zero(&self) -> bool {
        self.vx.is_zero() && self.vy.is_zero()
    }

    pub fn linear_part(&self) -> Mat2 {
        Mat2([
            [self.vx.coeff(1, 0), self.vx.coeff(0, 1)],
            [self.vy.coeff(1, 0), self.vy.coeff(0, 1)],
        ])
    }

    pub fn min_degree(&self) -> Option<u32> {
        match (self.vx.min_degree(), self.vy.min_degree()) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(u32::MAX).min(b.unwrap_or(u32::MAX))),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> VFieldGerm {
        VFieldGerm { vx: self.vx.homogeneous_part(d), vy: self.vy.homogeneous_part(d) }
    }

    pub fn truncate(&self, n: u32) -> VFieldGerm {
        VFieldGerm { vx: self.vx.truncate(n), vy: self.vy.truncate(n) }
    }

    pub fn scale(&self, c: &GR) -> VFieldGerm {
        VFieldGerm { vx: self.vx.scale(c), vy: self.vy.scale(c) }
    }

    pub fn add(&self, o: &VFieldGerm) -> VFieldGerm {
        VFieldGerm { vx: &self.vx + &o.vx, vy: &self.vy + &o.vy }
    }

    pub fn sub(&self, o: &VFieldGerm) -> VFieldGerm {
        VFieldGerm { vx: &self.vx - &o.vx, vy: &self.vy - &o.vy }
    }

    /// The derivation `g ↦ vx ∂x g + vy ∂y g`, exact at the field's order.
    pub fn apply(&self, g: &Jet2) -> Jet2 {
        let n = self.order();
        let gx = g.partial_x().with_order(n);
        let gy = g.partial_y().with_order(n);
        &self.vx.mul_to(&gx, n) + &self.vy.mul_to(&gy, n)
    }

    pub fn render(&self) -> String {
        format!("({}, {})", self.vx, self.vy)
    }
}

impl fmt::Debug for VFieldGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VFieldGerm[{}]{}", self.order(), self.render())
    }
}

/// `F_* X = (DF · X) ∘ F^{-1}`. Exact at order `N`: the field vanishes at the
/// origin, so the order-`(N-1)` Jacobian is only ever multiplied by terms of
/// degree at least one.
pub fn pushforward(f: &MapGerm, x: &VFieldGerm) -> Result<VFieldGerm> {
    if f.order() != x.order() {
        return Err(Error::OrderMismatch(f.order(), x.order()));
    }
    // DF · X is the derivation X applied to the components of F.
    let ex = x.apply(&f.fx);
    let ey = x.apply(&f.fy);
    let finv = f.invert();
    VFieldGerm::new(ex.compose(finv.fx(), finv.fy()), ey.compose(finv.fx(), finv.fy()))
}
