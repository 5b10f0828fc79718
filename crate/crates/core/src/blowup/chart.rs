use super::coeff::{xs_add, xs_mul};
use super::SemiSeries;
use crate::error::{Error, Result};
use crate::jets::{FlatOrder, Jet2, MapGerm};
use crate::scalar::{Poly1, RatFunc};

/// `Σ_{i+j=d} c_ij v^j`, the degree-`d` part of a jet restricted to `y = v x`.
fn restricted_part(f: &Jet2, d: u32) -> Poly1 {
    Poly1::new((0..=d).map(|j| f.coeff(d - j, j)).collect())
}

fn chart1_polys(f: &MapGerm) -> Result<SemiSeries<RatFunc>> {
    if f.flat_order() == FlatOrder::NotTangent {
        return Err(Error::NotTangentToIdentity);
    }
    let n = f.order() as usize;
    let a: Vec<Poly1> = (0..=n).map(|d| restricted_part(f.fx(), d as u32)).collect();
    let b: Vec<Poly1> = (0..=n).map(|d| restricted_part(f.fy(), d as u32)).collect();
    // v_1 = (Σ B_{e+1} x^e) / (Σ A_{e+1} x^e), with A_1 = 1.
    let mut w: Vec<Poly1> = Vec::with_capacity(n);
    for e in 0..n {
        let mut s = b[e + 1].clone();
        for i in 1..=e {
            s = &s - &(&a[i + 1] * &w[e - i]);
        }
        w.push(s);
    }
    let xd: Vec<RatFunc> = (0..=n)
        .map(|d| if d < 2 { RatFunc::zero() } else { RatFunc::from_poly(a[d].clone()) })
        .collect();
    let vd: Vec<RatFunc> = (0..n)
        .map(|e| if e == 0 { RatFunc::zero() } else { RatFunc::from_poly(w[e].clone()) })
        .collect();
    SemiSeries::new(n.max(1), xd, vd)
}

/// The germ in the blow-up chart `y = v x`: `x_1 = F_x(x, vx)`,
/// `v_1 = F_y(x, vx) / F_x(x, vx)`.
pub fn blowup_chart1(f: &MapGerm) -> Result<SemiSeries<RatFunc>> {
    chart1_polys(f)
}

/// The germ in the chart `x = s y`: `y_1 = F_y(sy, y)`, `s_1 = F_x(sy, y) / F_y(sy, y)`.
pub fn blowup_chart2(f: &MapGerm) -> Result<SemiSeries<RatFunc>> {
    let swap = |j: &Jet2| Jet2::from_terms(j.order(), j.terms().map(|(&(a, b), c)| ((b, a), c.clone())));
    let swapped = MapGerm::new(swap(f.fy()), swap(f.fx()))?;
    chart1_polys(&swapped)
}

/// Rewrites a chart-1 series through `(y, s) = (v x, 1/v)`.
pub fn chart_transition(s: &SemiSeries<RatFunc>) -> Result<SemiSeries<RatFunc>> {
    let poles = s.poles();
    if !poles.is_empty() {
        let list: Vec<String> = poles.iter().map(|p| p.render("v")).collect();
        return Err(Error::PatchingPole(list.join(", ")));
    }
    let m = s.order();
    let svar = RatFunc::var();
    let sinv = RatFunc::new(Poly1::one(), Poly1::var())?;
    let spow = |e: usize| svar.pow(e as u32);
    // A = Σ a_j(1/s) s^j y^j, B = Σ b_j(1/s) s^j y^j
    let big_a: Vec<RatFunc> = (0..=m).map(|j| &s.a(j).at_reciprocal() * &spow(j)).collect();
    let big_b: Vec<RatFunc> = (0..m).map(|j| &s.b(j).at_reciprocal() * &spow(j)).collect();
    // y_1 = y + A/s + s y B + A B
    let a_over_s: Vec<RatFunc> = big_a.iter().map(|c| c * &sinv).collect();
    let mut ysb = vec![RatFunc::zero(); m + 1];
    for (j, c) in big_b.iter().enumerate() {
        ysb[j + 1] = c * &svar;
    }
    let mut ydisp = xs_add(&a_over_s, &ysb, m);
    ydisp = xs_add(&ydisp, &xs_mul(&big_a, &big_b, m), m);
    // s_1 = s / (1 + s B)
    let mut den: Vec<RatFunc> = big_b.iter().map(|c| c * &svar).collect();
    den[0] = RatFunc::one();
    let mut q: Vec<RatFunc> = Vec::with_capacity(m);
    for e in 0..m {
        let mut acc = if e == 0 { svar.clone() } else { RatFunc::zero() };
        for i in 1..=e {
            acc = &acc - &(&den[i] * &q[e - i]);
        }
        q.push(acc);
    }
    let mut sdisp = q;
    sdisp[0] = RatFunc::zero();
    for c in ydisp.iter().chain(&sdisp) {
        if !c.is_polynomial() {
            return Err(Error::PatchingPole(format!("{} after transition", c.den().render("s"))));
        }
    }
    SemiSeries::new(m, ydisp, sdisp)
}

/// Degree bound of a blown-up polynomial germ with flat index `k`:
/// `deg a_j <= j` and `deg b_j <= 2j + 2 - k`.
pub fn satisfies_degree_bounds(s: &SemiSeries<RatFunc>) -> bool {
    let Some(k) = s.flat_index() else {
        return true;
    };
    let ok = |c: &RatFunc, bound: usize| {
        c.as_poly()
            .is_some_and(|p| p.degree().is_none_or(|d| d <= bound))
    };
    s.xcoeffs().iter().enumerate().all(|(j, c)| ok(c, j))
        && s.vcoeffs().iter().enumerate().all(|(j, c)| c.is_zero() || (2 * j + 2 >= k && ok(c, 2 * j + 2 - k)))
}
