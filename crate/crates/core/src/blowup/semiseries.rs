use std::fmt;

use super::coeff::{xs_add, xs_mul, xs_scale, Coeff};
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational as GR, Poly1, RatFunc};

/// A semiformal map `(x, v) ↦ (x + Σ a_j(v) x^j, v + Σ b_j(v) x^j)`.
///
/// Truncation is weighted: order `M` keeps `a_j` for `j <= M` and `b_j` for
/// `j <= M - 1`, which is closed under composition and is exactly what the
/// blow-up of an order-`M` jet determines.
#[derive(Clone, PartialEq)]
pub struct SemiSeries<C: Coeff> {
    order: usize,
    xd: Vec<C>,
    vd: Vec<C>,
}

impl<C: Coeff> SemiSeries<C> {
    /// `xd[j]` is `a_j` (`0 <= j <= order`) and `vd[j]` is `b_j` (`0 <= j < order`).
    pub fn new(order: usize, mut xd: Vec<C>, mut vd: Vec<C>) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidArgument("semiseries order must be positive".into()));
        }
        xd.resize(order + 1, C::zero());
        vd.resize(order, C::zero());
        if !xd[0].is_zero() || !vd[0].is_zero() {
            return Err(Error::NotAtOrigin);
        }
        Ok(SemiSeries { order, xd, vd })
    }

    pub fn identity(order: usize) -> Self {
        Self::new(order, Vec::new(), Vec::new()).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient `a_j` of `x^j` in `x_1 - x`.
    pub fn a(&self, j: usize) -> C {
        self.xd.get(j).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient `b_j` of `x^j` in `v_1 - v`.
    pub fn b(&self, j: usize) -> C {
        self.vd.get(j).cloned().unwrap_or_else(C::zero)
    }

    pub fn xcoeffs(&self) -> &[C] {
        &self.xd
    }

    pub fn vcoeffs(&self) -> &[C] {
        &self.vd
    }

    pub fn is_identity(&self) -> bool {
        self.xd.iter().chain(&self.vd).all(Coeff::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order && order >= 1);
        SemiSeries {
            order,
            xd: self.xd[..=order].to_vec(),
            vd: self.vd[..order].to_vec(),
        }
    }

    pub fn map_coeffs<D: Coeff, E>(&self, mut f: impl FnMut(&C) -> std::result::Result<D, E>) -> std::result::Result<SemiSeries<D>, E> {
        Ok(SemiSeries {
            order: self.order,
            xd: self.xd.iter().map(&mut f).collect::<std::result::Result<_, _>>()?,
            vd: self.vd.iter().map(&mut f).collect::<std::result::Result<_, _>>()?,
        })
    }

    /// The `x`-order `k` with `a_j = 0` for `j <= k` and `b_j = 0` for `j < k`,
    /// i.e. the series is `id + O(x^k)` in the weighted sense.
    pub fn flat_index(&self) -> Option<usize> {
        (1..=self.order).find(|&k| {
            !self.a(k + 1).is_zero() || !self.b(k).is_zero()
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SemiSeries<C>) -> SemiSeries<C> {
        let m = self.order.min(inner.order);
        let mut xt = inner.xd[..=m].to_vec();
        xt[1] = xt[1].clone() + C::one();
        let delta = inner.vd[..m].to_vec();
        let mut xpow: Vec<Vec<C>> = vec![{
            let mut one = vec![C::zero(); m + 1];
            one[0] = C::one();
            one
        }];
        for j in 1..=m {
            let next = xs_mul(&xpow[j - 1], &xt, m);
            xpow.push(next);
        }
        let mut dpow: Vec<Vec<C>> = vec![{
            let mut one = vec![C::zero(); m];
            one[0] = C::one();
            one
        }];
        for r in 1..m {
            let next = xs_mul(&dpow[r - 1], &delta, m - 1);
            dpow.push(next);
        }
        // c(v + δ) through x^t.
        let taylor = |c: &C, t: usize| -> Vec<C> {
            let mut out = vec![C::zero(); t + 1];
            let mut deriv = c.clone();
            let mut fact = 1i64;
            for r in 0..=t {
                if r > 0 {
                    deriv = deriv.derivative();
                    fact *= r as i64;
                }
                if deriv.is_exact_zero() {
                    break;
                }
                let w = deriv.scale_gr(&GR::ratio(1, fact));
                out = xs_add(&out, &xs_scale(&dpow[r][..=t.min(m - 1)], &w), t);
            }
            out
        };
        let mut xr = xt.clone();
        for j in 2..=m {
            if self.xd[j].is_exact_zero() {
                continue;
            }
            let t = m - j;
            let s = taylor(&self.xd[j], t);
            xr = xs_add(&xr, &xs_mul(&s, &xpow[j], m), m);
        }
        let mut vr = delta.clone();
        for j in 1..m {
            if self.vd[j].is_exact_zero() {
                continue;
            }
            let t = m - 1 - j;
            let s = taylor(&self.vd[j], t);
            vr = xs_add(&vr, &xs_mul(&s, &xpow[j][..m], m - 1), m - 1);
        }
        xr[1] = xr[1].clone() - C::one();
        SemiSeries { order: m, xd: xr, vd: vr }
    }

    /// Compositional inverse of a series with `a_1 = 0`.
    pub fn inverse(&self) -> Result<SemiSeries<C>> {
        if !self.xd[1].is_zero() {
            return Err(Error::NotTangentToIdentity);
        }
        let m = self.order;
        let mut y = SemiSeries::identity(m);
        for _ in 0..=m + 1 {
            let e = self.compose(&y);
            if e.is_identity() {
                return Ok(y);
            }
            y = SemiSeries {
                order: m,
                xd: y.xd.iter().zip(&e.xd).map(|(a, b)| a.clone() - b.clone()).collect(),
                vd: y.vd.iter().zip(&e.vd).map(|(a, b)| a.clone() - b.clone()).collect(),
            };
        }
        Ok(y)
    }

    /// `h^{-1} ∘ self ∘ h`.
    pub fn conjugate_by(&self, h: &SemiSeries<C>) -> Result<SemiSeries<C>> {
        Ok(h.inverse()?.compose(&self.compose(h)))
    }
}

impl SemiSeries<RatFunc> {
    /// Distinct nonconstant denominators among the coefficients.
    pub fn poles(&self) -> Vec<Poly1> {
        let mut out: Vec<Poly1> = Vec::new();
        for c in self.xd.iter().chain(&self.vd) {
            if !c.is_polynomial() && !out.contains(c.den()) {
                out.push(c.den().clone());
            }
        }
        out
    }

    pub fn to_json(&self, var: &str) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "xcoeffs": self.xd[1..].iter().map(|c| c.render(var)).collect::<Vec<_>>(),
            "vcoeffs": self.vd[1..].iter().map(|c| c.render(var)).collect::<Vec<_>>(),
            "poles": self.poles().iter().map(|p| p.render(var)).collect::<Vec<_>>(),
        })
    }
}

impl<C: Coeff> fmt::Debug for SemiSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SemiSeries")
            .field("order", &self.order)
            .field("a", &self.xd)
            .field("b", &self.vd)
            .finish()
    }
}
