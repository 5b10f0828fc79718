use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::json;

use crate::blowup::{LocalSeries, SemiSeries};
use crate::error::{Error, Result};
use crate::scalar::roots::{nearest_small_rational, refine_root};
use crate::scalar::{lagrange_interpolate, Field, GaussianRational as GR, Poly1, RatFunc};

/// Largest denominator tried when deciding numerically that `a` is rational.
const RATIONAL_DEN: i64 = 1000;
const RATIONAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum RootValue {
    Exact(GR),
    Numeric { value: Complex64, residual: f64 },
}

impl RootValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            RootValue::Exact(v) => v.to_complex(),
            RootValue::Numeric { value, .. } => *value,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(GR),
    Numeric(Complex64),
}

impl Scalar {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(v) => v.to_complex(),
            Scalar::Numeric(z) => *z,
        }
    }

    fn render(&self) -> String {
        match self {
            Scalar::Exact(v) => v.to_string(),
            Scalar::Numeric(z) => format!("{:.15e}{:+.15e}*i", z.re, z.im),
        }
    }
}

/// The local invariant `λ_{v0}` at a simple root `v0` of `r`.
#[derive(Clone, Debug)]
pub struct LocalInvariant {
    pub v0: RootValue,
    pub lambda: Scalar,
    /// `p(v0) / r'(v0)`.
    pub a: Scalar,
    /// Distance from `a` to the nearest rational with small denominator (numeric mode).
    pub rational_distance: Option<f64>,
    pub vorder: usize,
}

impl LocalInvariant {
    pub fn is_exact(&self) -> bool {
        matches!(self.v0, RootValue::Exact(_))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (v0, residual) = match &self.v0 {
            RootValue::Exact(v) => (v.to_string(), None),
            RootValue::Numeric { value, residual } => {
                (Scalar::Numeric(*value).render(), Some(*residual))
            }
        };
        json!({
            "mode": if self.is_exact() { "exact" } else { "numeric" },
            "v0": v0,
            "root_residual": residual,
            "lambda": self.lambda.render(),
            "a": self.a.render(),
            "rational_distance": self.rational_distance,
            "vorder": self.vorder,
        })
    }
}

fn leading_data(s: &SemiSeries<RatFunc>) -> Result<(usize, Poly1, Poly1)> {
    let k = (1..s.order())
        .find(|&k| !s.b(k).is_zero())
        .ok_or(Error::InvalidArgument("r vanishes identically".into()))?;
    let flat = (1..=k).all(|j| s.a(j).is_zero()) && (1..k).all(|j| s.b(j).is_zero());
    let p = s.a(k + 1).as_poly().cloned();
    let r = s.b(k).as_poly().cloned();
    match (flat, p, r) {
        (true, Some(p), Some(r)) => Ok((k, p, r)),
        _ => Err(Error::InvalidArgument("series is not in blow-up form".into())),
    }
}

/// `λ_{v0}` for a root `v0` of `r` in Q(i).
pub fn lambda_invariant(s: &SemiSeries<RatFunc>, v0: &GR, vorder: Option<usize>) -> Result<LocalInvariant> {
    let (k, p, r) = leading_data(s)?;
    if !r.eval(v0).is_zero() {
        return Err(Error::NotARoot(v0.to_string()));
    }
    let dr = r.derivative().eval(v0);
    if dr.is_zero() {
        return Err(Error::NonSimpleRoot);
    }
    let p0 = p.eval(v0);
    if p0.is_zero() {
        return Err(Error::DegenerateDirection);
    }
    let a = p0.checked_div(&dr).ok_or(Error::DivisionByZero)?;
    if a.is_real() {
        return Err(Error::ResonantRatio);
    }
    let vorder = vorder.unwrap_or(2 * k + 2);
    let lambda = reduce::<GR>(s, k, v0, vorder)?;
    Ok(LocalInvariant {
        v0: RootValue::Exact(v0.clone()),
        lambda: Scalar::Exact(lambda),
        a: Scalar::Exact(a),
        rational_distance: None,
        vorder,
    })
}

/// `λ_{v0}` at a root of `r` known approximately; `v0` is polished by Newton first.
pub fn lambda_invariant_numeric(
    s: &SemiSeries<RatFunc>,
    v0: Complex64,
    vorder: Option<usize>,
) -> Result<LocalInvariant> {
    let (k, p, r) = leading_data(s)?;
    let v = refine_root(&r, v0);
    let residual = r.eval_complex(v).norm();
    let scale = r.coeffs().iter().map(|c| c.to_complex().norm()).fold(1.0, f64::max)
        * v.norm().max(1.0).powi(r.degree().unwrap_or(0) as i32);
    if residual > 1e-8 * scale {
        return Err(Error::NotARoot(format!("{v}")));
    }
    let dr = r.derivative().eval_complex(v);
    if dr.norm() < 1e-8 * scale {
        return Err(Error::NonSimpleRoot);
    }
    let p0 = p.eval_complex(v);
    if p0.norm() < 1e-10 {
        return Err(Error::DegenerateDirection);
    }
    let a = p0 / dr;
    let dist = if a.im.abs() > RATIONAL_TOL {
        a.im.abs()
    } else {
        nearest_small_rational(a.re, RATIONAL_DEN).2
    };
    if dist <= RATIONAL_TOL {
        return Err(Error::ResonantRatio);
    }
    let vorder = vorder.unwrap_or(2 * k + 2);
    let lambda = reduce::<Complex64>(s, k, &v, vorder)?;
    Ok(LocalInvariant {
        v0: RootValue::Numeric { value: v, residual },
        lambda: Scalar::Numeric(lambda),
        a: Scalar::Numeric(a),
        rational_distance: Some(dist),
        vorder,
    })
}

fn known<F: Field>(s: &LocalSeries<F>, j: usize, what: &str) -> Result<F> {
    s.coeff(j)
        .ok_or_else(|| Error::InsufficientOrder(format!("{what} unknown at u^{j}; raise vorder")))
}

/// Reduces `s` near `v0` through the steps `l = 1 .. k-1`, then reads off the
/// constant that makes the resonant step solvable.
fn reduce<F: Field>(s: &SemiSeries<RatFunc>, k: usize, v0: &F, vorder: usize) -> Result<F> {
    if s.order() < 2 * k + 1 {
        return Err(Error::InsufficientOrder(format!("x-order {} below 2k+1", s.order())));
    }
    let mut cur: SemiSeries<LocalSeries<F>> = s
        .truncate(2 * k + 1)
        .map_coeffs(|c| LocalSeries::expand(c, v0, vorder))?;
    let p = cur.a(k + 1);
    let r = cur.b(k);
    let dp = crate::blowup::Coeff::derivative(&p);
    let dr = crate::blowup::Coeff::derivative(&r);
    let r1 = known(&r, 1, "r")?;
    let p0 = known(&p, 0, "p")?;
    for l in 1..k {
        let phi1 = cur.a(k + l + 1);
        let phi2 = cur.b(k + l);
        let depth = [&phi1, &phi2]
            .iter()
            .map(|s| s.precision().unwrap_or(vorder as i64))
            .min()
            .unwrap()
            .min(vorder as i64);
        if depth < 0 {
            return Err(Error::InsufficientOrder(format!("step {l} has no known coefficients")));
        }
        let kl = F::from_i64((k - l) as i64);
        let lf = F::from_i64(l as i64);
        let kf = F::from_i64(k as i64);
        let m11 = |i: usize| Ok::<F, Error>(known(&p, i, "p")? * kl.clone());
        let m12 = |i: usize| known(&dp, i, "p'");
        let m21 = |i: usize| Ok::<F, Error>(known(&r, i, "r")? * kf.clone());
        let m22 = |i: usize| Ok::<F, Error>(known(&dr, i, "r'")? - known(&p, i, "p")? * lf.clone());
        let mut h1: Vec<F> = Vec::new();
        let mut h2: Vec<F> = Vec::new();
        for j in 0..=depth as usize {
            // (j r1 - M0) A_j = φ_j + Σ_{i>=1} M_i A_{j-i} - Σ_{i>=2} r_i (j-i+1) A_{j-i+1}
            let mut b1 = known(&phi1, j, "φ1")?;
            let mut b2 = known(&phi2, j, "φ2")?;
            for i in 1..=j {
                b1 = b1 + m11(i)? * h1[j - i].clone() + m12(i)? * h2[j - i].clone();
                b2 = b2 + m21(i)? * h1[j - i].clone() + m22(i)? * h2[j - i].clone();
            }
            for i in 2..=j + 1 {
                let w = known(&r, i, "r")? * F::from_i64((j + 1 - i) as i64);
                b1 = b1 - w.clone() * h1[j + 1 - i].clone();
                b2 = b2 - w * h2[j + 1 - i].clone();
            }
            let jr = r1.clone() * F::from_i64(j as i64);
            let c11 = jr.clone() - m11(0)?;
            let c12 = -m12(0)?;
            let c21 = -m21(0)?;
            let c22 = jr - m22(0)?;
            let det = c11.clone() * c22.clone() - c12.clone() * c21.clone();
            let inv = det.inverse().ok_or(Error::SingularSystem(j))?;
            h1.push((c22 * b1.clone() - c12 * b2.clone()) * inv.clone());
            h2.push((c11 * b2 - c21 * b1) * inv);
        }
        let mut xd = vec![<LocalSeries<F> as crate::blowup::Coeff>::zero(); cur.order() + 1];
        let mut vd = vec![<LocalSeries<F> as crate::blowup::Coeff>::zero(); cur.order()];
        xd[l + 1] = LocalSeries::new(h1, depth as usize);
        vd[l] = LocalSeries::new(h2, depth as usize);
        let h = SemiSeries::new(cur.order(), xd, vd)?;
        cur = cur.conjugate_by(&h)?;
    }
    let phi1 = known(&cur.a(2 * k + 1), 0, "φ1")?;
    let phi2 = known(&cur.b(2 * k), 0, "φ2")?;
    let dp0 = known(&dp, 0, "p'")?;
    let den = p0 * F::from_i64(k as i64) - r1;
    let inv = den.inverse().ok_or(Error::SingularSystem(0))?;
    Ok(phi1 + dp0 * phi2 * inv)
}

/// Interpolation polynomial through the points `(v_i, λ_{v_i})`.
#[derive(Clone, Debug)]
pub enum LagrangePoly {
    Exact(Poly1),
    /// Coefficients in increasing degree.
    Numeric(Vec<Complex64>),
}

impl LagrangePoly {
    pub fn eval(&self, v: Complex64) -> Complex64 {
        match self {
            LagrangePoly::Exact(p) => p.eval_complex(v),
            LagrangePoly::Numeric(c) => c.iter().rev().fold(Complex64::zero(), |acc, a| acc * v + a),
        }
    }

    pub fn render(&self) -> String {
        match self {
            LagrangePoly::Exact(p) => p.render("v"),
            LagrangePoly::Numeric(c) => c
                .iter()
                .enumerate()
                .map(|(d, z)| format!("({:.12e}{:+.12e}*i)*v^{d}", z.re, z.im))
                .collect::<Vec<_>>()
                .join(" + "),
        }
    }
}

/// `L_F` together with the invariants it interpolates.
pub fn lagrange_lf(s: &SemiSeries<RatFunc>, vorder: Option<usize>) -> Result<(LagrangePoly, Vec<LocalInvariant>)> {
    let (k, _, r) = leading_data(s)?;
    let sq = Poly1::gcd(&r, &r.derivative());
    if !sq.is_constant() || r.degree() != Some(k + 2) {
        return Err(Error::DegenerateR);
    }
    let set = crate::scalar::roots::roots(&r)?;
    let mut invs = Vec::new();
    for (v, _) in &set.exact {
        invs.push(lambda_invariant(s, v, vorder)?);
    }
    for z in &set.numeric {
        invs.push(lambda_invariant_numeric(s, *z, vorder)?);
    }
    if invs.iter().all(LocalInvariant::is_exact) {
        let pts: Vec<(GR, GR)> = invs
            .iter()
            .map(|inv| match (&inv.v0, &inv.lambda) {
                (RootValue::Exact(v), Scalar::Exact(l)) => (v.clone(), l.clone()),
                _ => unreachable!(),
            })
            .collect();
        return Ok((LagrangePoly::Exact(lagrange_interpolate(&pts)?), invs));
    }
    let pts: Vec<(Complex64, Complex64)> =
        invs.iter().map(|i| (i.v0.to_complex(), i.lambda.to_complex())).collect();
    Ok((LagrangePoly::Numeric(interpolate_complex(&pts)), invs))
}

fn interpolate_complex(pts: &[(Complex64, Complex64)]) -> Vec<Complex64> {
    let n = pts.len();
    let mut out = vec![Complex64::zero(); n];
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut basis = vec![Complex64::one()];
        let mut denom = Complex64::one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Complex64::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        for (d, c) in basis.iter().enumerate() {
            out[d] += c * yi / denom;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(c: &[GR]) -> RatFunc {
        RatFunc::from_poly(Poly1::new(c.to_vec()))
    }

    fn model(lambda: GR) -> SemiSeries<RatFunc> {
        // (x + i x^2 + λ x^3, v + x v)
        let z = GR::from_int(0);
        SemiSeries::new(
            3,
            vec![RatFunc::zero(), RatFunc::zero(), rf(&[GR::i()]), rf(&[lambda])],
            vec![RatFunc::zero(), rf(&[z, GR::from_int(1)])],
        )
        .unwrap()
    }

    #[test]
    fn model_returns_its_coefficient() {
        let l = GR::new(GR::ratio(3, 2).re(), GR::from_int(-1).re());
        let inv = lambda_invariant(&model(l.clone()), &GR::from_int(0), None).unwrap();
        assert_eq!(inv.lambda, Scalar::Exact(l));
        assert_eq!(inv.a, Scalar::Exact(GR::i()));
        let num = lambda_invariant_numeric(&model(GR::from_int(2)), Complex64::new(1e-3, 0.0), None).unwrap();
        assert!((num.lambda.to_complex() - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn preconditions() {
        let s = model(GR::from_int(1));
        assert_eq!(lambda_invariant(&s, &GR::from_int(1), None).unwrap_err(), Error::NotARoot("1".into()));
        let real = SemiSeries::new(
            3,
            vec![RatFunc::zero(), RatFunc::zero(), RatFunc::one()],
            vec![RatFunc::zero(), rf(&[GR::from_int(0), GR::from_int(1)])],
        )
        .unwrap();
        assert_eq!(lambda_invariant(&real, &GR::from_int(0), None).unwrap_err(), Error::ResonantRatio);
    }

    #[test]
    fn complex_interpolation_recovers_points() {
        let pts = [
            (Complex64::new(0.0, 0.0), Complex64::new(1.0, 1.0)),
            (Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)),
            (Complex64::new(0.0, 1.0), Complex64::new(-1.0, 3.0)),
        ];
        let c = interpolate_complex(&pts);
        let l = LagrangePoly::Numeric(c);
        for (x, y) in pts {
            assert!((l.eval(x) - y).norm() < 1e-12);
        }
    }
}
