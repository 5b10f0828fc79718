use serde_json::json;

use crate::blowup::{blowup_chart1, SemiSeries};
use crate::error::{Error, Result};
use crate::jets::MapGerm;
use crate::lie::{is_dicritic, Dicriticity};
use crate::scalar::{GaussianRational as GR, Poly1, RatFunc};

/// Solves `(k-l) p h1 + p' h2 = φ1`, `-l p h2 = φ2`.
pub fn solve_homological_dicritic(
    k: u32,
    l: u32,
    p: &Poly1,
    phi1: &RatFunc,
    phi2: &RatFunc,
) -> Result<(RatFunc, RatFunc)> {
    if l == k {
        return Err(Error::ResonantStep);
    }
    if p.is_zero() || l == 0 {
        return Err(Error::InvalidArgument("need p != 0 and l >= 1".into()));
    }
    let pr = RatFunc::from_poly(p.clone());
    let dp = RatFunc::from_poly(p.derivative());
    let h2 = phi2.checked_div(&pr.scale(&GR::from_int(-(l as i64))))?;
    let h1 = (phi1 - &(&dp * &h2)).checked_div(&pr.scale(&GR::from_int(k as i64 - l as i64)))?;
    let res1 = &(&pr.scale(&GR::from_int(k as i64 - l as i64)) * &h1) + &(&dp * &h2);
    let res2 = &pr.scale(&GR::from_int(-(l as i64))) * &h2;
    if &res1 != phi1 || &res2 != phi2 {
        return Err(Error::Internal("homological residual".into()));
    }
    Ok((h1, h2))
}

/// One conjugation `H = (x + x^{l+1} h1(v), v + x^l h2(v))`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugatorStep {
    pub l: u32,
    pub h1: RatFunc,
    pub h2: RatFunc,
}

impl ConjugatorStep {
    pub fn as_series(&self, order: usize) -> SemiSeries<RatFunc> {
        let l = self.l as usize;
        let mut xd = vec![RatFunc::zero(); order + 1];
        let mut vd = vec![RatFunc::zero(); order];
        if l < order {
            xd[l + 1] = self.h1.clone();
            vd[l] = self.h2.clone();
        }
        SemiSeries::new(order, xd, vd).expect("conjugator is tangent to the identity")
    }
}

/// `G_F = (x + x^{k+1} p(v) + x^{2k+1} q(v), v)` with the conjugators that produce it.
#[derive(Clone, Debug)]
pub struct DicriticNormalForm {
    pub k: u32,
    pub order: usize,
    pub p: Poly1,
    pub q: RatFunc,
    pub steps: Vec<ConjugatorStep>,
}

impl DicriticNormalForm {
    pub fn normal_series(&self) -> SemiSeries<RatFunc> {
        let k = self.k as usize;
        let mut xd = vec![RatFunc::zero(); self.order + 1];
        xd[k + 1] = RatFunc::from_poly(self.p.clone());
        xd[2 * k + 1] = self.q.clone();
        SemiSeries::new(self.order, xd, Vec::new()).unwrap()
    }

    /// Conjugates `s` by the recorded steps in order.
    pub fn replay(&self, s: &SemiSeries<RatFunc>) -> Result<SemiSeries<RatFunc>> {
        let mut cur = s.truncate(self.order.min(s.order()));
        for st in &self.steps {
            cur = cur.conjugate_by(&st.as_series(cur.order()))?;
        }
        Ok(cur)
    }

    /// `s = q p^{2k+1}`, when it is a polynomial.
    pub fn numerator(&self) -> Option<Poly1> {
        let pk = RatFunc::from_poly(self.p.pow(2 * self.k + 1));
        (&self.q * &pk).as_poly().cloned()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "k": self.k,
            "order": self.order,
            "p": self.p.render("v"),
            "q": self.q.render("v"),
            "numerator": self.numerator().map(|s| s.render("v")),
            "steps": self.steps.iter().map(|s| json!({
                "l": s.l,
                "h1": s.h1.render("v"),
                "h2": s.h2.render("v"),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Normal form of a dicritic germ at x-order `2k+1`.
pub fn dicritic_normal_form(f: &MapGerm) -> Result<DicriticNormalForm> {
    dicritic_normal_form_with(f, None, &RatFunc::zero())
}

/// As [`dicritic_normal_form`], reducing through x-order `order` (default `2k+1`)
/// and using `h1k` as the free component of the resonant conjugator.
pub fn dicritic_normal_form_with(
    f: &MapGerm,
    order: Option<usize>,
    h1k: &RatFunc,
) -> Result<DicriticNormalForm> {
    let k = match is_dicritic(f) {
        Dicriticity::Dicritic { k, .. } => k,
        _ => return Err(Error::NotDicritic),
    };
    let s = blowup_chart1(f)?;
    normal_form_series(&s, k, order, h1k)
}

/// Normal form of a chart series `(x + x^{k+1} p(v) + …, v + O(x^{k+1}))`.
pub fn normal_form_series(
    s: &SemiSeries<RatFunc>,
    k: u32,
    order: Option<usize>,
    h1k: &RatFunc,
) -> Result<DicriticNormalForm> {
    let ku = k as usize;
    let need = 2 * ku + 1;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let order = order.unwrap_or(need);
    if s.order() < order || order < need {
        return Err(Error::InsufficientOrder(format!(
            "x-order {} below 2k+1 = {need}",
            s.order().min(order)
        )));
    }
    let p = s.a(ku + 1).as_poly().cloned().ok_or(Error::NotDicritic)?;
    let flat = (1..=ku).all(|j| s.a(j).is_zero()) && (1..=ku).all(|j| s.b(j).is_zero());
    if p.is_zero() || !flat {
        return Err(Error::NotDicritic);
    }
    let pr = RatFunc::from_poly(p.clone());
    let dp = RatFunc::from_poly(p.derivative());
    let mut cur = s.truncate(order);
    let mut steps = Vec::new();
    let mut q = RatFunc::zero();
    for l in 1..(order - ku) as u32 {
        let phi1 = cur.a(ku + l as usize + 1);
        let phi2 = cur.b(ku + l as usize);
        let (h1, h2) = if l == k {
            let h2 = phi2.checked_div(&pr.scale(&GR::from_int(k as i64)))?;
            q = &phi1 + &(&dp * &h2);
            (h1k.clone(), h2)
        } else {
            solve_homological_dicritic(k, l, &p, &-phi1, &-phi2)?
        };
        if h1.is_zero() && h2.is_zero() {
            continue;
        }
        let step = ConjugatorStep { l, h1, h2 };
        cur = cur.conjugate_by(&step.as_series(order))?;
        steps.push(step);
    }
    let nf = DicriticNormalForm { k, order, p, q, steps };
    if cur != nf.normal_series() {
        return Err(Error::Internal("dicritic reduction left a residual".into()));
    }
    Ok(nf)
}
