use num_complex::Complex64;
use num_traits::Zero;
use serde_json::json;

use crate::jets::{FlatOrder, MapGerm};
use crate::scalar::roots::{numeric_roots, refine_root, roots, RootSet};
use crate::scalar::{GaussianRational as GR, Poly1};

/// `p(v) = p_{k+1}(1, v)` and `r(v) = q_{k+1}(1, v) - v p_{k+1}(1, v)`.
#[derive(Clone, Debug)]
pub struct DirectionData {
    pub k: u32,
    pub p: Poly1,
    pub r: Poly1,
    /// Roots of `r` in Q(i), with multiplicity.
    pub rational_roots: Vec<(GR, usize)>,
    /// The remaining roots of `r`, as floating-point approximations.
    pub numeric_roots: Vec<Complex64>,
    pub infinity_is_characteristic: bool,
    /// `q_{k+1}(0, 1)`, the eigenvalue at `(0:1)`.
    pub q_at_infinity: GR,
}

impl DirectionData {
    pub fn is_dicritic(&self) -> bool {
        self.r.is_zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "k": self.k,
            "p": self.p.render("v"),
            "r": self.r.render("v"),
            "rational_roots": self.rational_roots.iter()
                .map(|(v, m)| json!({"v": v.to_string(), "multiplicity": m}))
                .collect::<Vec<_>>(),
            "numeric_roots": self.numeric_roots.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "infinity_is_characteristic": self.infinity_is_characteristic,
        })
    }
}

/// `None` when `F` is not tangent to the identity or is the identity.
pub fn direction_data(f: &MapGerm) -> Option<DirectionData> {
    let m = match f.flat_order() {
        FlatOrder::Flat(m) => m,
        _ => return None,
    };
    let (pj, qj) = f.homogeneous_part(m);
    let p = Poly1::new((0..=m).map(|j| pj.coeff(m - j, j)).collect());
    let q = Poly1::new((0..=m).map(|j| qj.coeff(m - j, j)).collect());
    let r = &q - &(&Poly1::var() * &p);
    let (rational_roots, numeric) = if r.is_zero() {
        (Vec::new(), Vec::new())
    } else {
        let set = roots(&r).unwrap_or_else(|_| RootSet {
            exact: Vec::new(),
            numeric: numeric_roots(&r.to_complex()).into_iter().map(|z| refine_root(&r, z)).collect(),
        });
        (set.exact, set.numeric)
    };
    Some(DirectionData {
        k: m - 1,
        p,
        r,
        rational_roots,
        numeric_roots: numeric,
        infinity_is_characteristic: pj.coeff(0, m).is_zero(),
        q_at_infinity: qj.coeff(0, m),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum DirectionPoint {
    /// `(1 : v)` with `v` in Q(i).
    Rational(GR),
    /// `(1 : v)` with `v` known numerically.
    Numeric(Complex64),
    /// `(0 : 1)`.
    Infinity,
}

impl DirectionPoint {
    pub fn render(&self) -> String {
        match self {
            DirectionPoint::Rational(v) => format!("(1:{v})"),
            DirectionPoint::Numeric(z) => format!("(1:{:.12}{:+.12}*i)", z.re, z.im),
            DirectionPoint::Infinity => "(0:1)".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CharacteristicDirection {
    pub point: DirectionPoint,
    /// `F_{k+1}(V) = λ V`; exact when the direction is.
    pub lambda_exact: Option<GR>,
    pub lambda: Complex64,
    pub multiplicity: usize,
    pub degenerate: bool,
}

impl CharacteristicDirection {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "direction": self.point.render(),
            "lambda": self.lambda_exact.as_ref().map_or_else(
                || format!("{:.12}{:+.12}*i", self.lambda.re, self.lambda.im),
                |l| l.to_string()),
            "multiplicity": self.multiplicity,
            "degenerate": self.degenerate,
        })
    }
}

#[derive(Clone, Debug)]
pub enum CharacteristicDirections {
    /// Dicritic germ: every direction is characteristic; the listed ones are
    /// the degenerate directions, where `f` vanishes.
    All { degenerate: Vec<DirectionPoint> },
    Finite(Vec<CharacteristicDirection>),
}

impl CharacteristicDirections {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CharacteristicDirections::All { degenerate } => json!({
                "all": true,
                "degenerate": degenerate.iter().map(DirectionPoint::render).collect::<Vec<_>>(),
            }),
            CharacteristicDirections::Finite(ds) => json!({
                "all": false,
                "directions": ds.iter().map(CharacteristicDirection::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

const NUMERIC_TOL: f64 = 1e-9;

pub fn characteristic_directions(f: &MapGerm) -> Option<CharacteristicDirections> {
    let d = direction_data(f)?;
    if d.is_dicritic() {
        // F_{k+1} = f·(x, y) with f(1, v) = p(v).
        let mut deg: Vec<DirectionPoint> = Vec::new();
        if !d.p.is_zero() {
            let set = roots(&d.p).ok()?;
            deg.extend(set.exact.into_iter().map(|(v, _)| DirectionPoint::Rational(v)));
            deg.extend(set.numeric.into_iter().map(DirectionPoint::Numeric));
            // f(0, 1) is the coefficient of x y^k in the first component.
            let (pj, _) = f.homogeneous_part(d.k + 1);
            if pj.coeff(1, d.k).is_zero() {
                deg.push(DirectionPoint::Infinity);
            }
        }
        return Some(CharacteristicDirections::All { degenerate: deg });
    }
    let common = Poly1::gcd(&d.p, &d.r);
    let common_roots: Vec<Complex64> = if common.is_constant() {
        Vec::new()
    } else {
        numeric_roots(&common.to_complex())
    };
    let mut out = Vec::new();
    for (v, mult) in &d.rational_roots {
        let l = d.p.eval(v);
        out.push(CharacteristicDirection {
            point: DirectionPoint::Rational(v.clone()),
            lambda: l.to_complex(),
            degenerate: l.is_zero(),
            lambda_exact: Some(l),
            multiplicity: *mult,
        });
    }
    for z in &d.numeric_roots {
        let l = d.p.eval_complex(*z);
        out.push(CharacteristicDirection {
            point: DirectionPoint::Numeric(*z),
            lambda: l,
            lambda_exact: None,
            multiplicity: 1,
            degenerate: common_roots.iter().any(|c| (c - z).norm() < NUMERIC_TOL.sqrt()),
        });
    }
    if d.infinity_is_characteristic {
        let deg_r = d.r.degree().unwrap_or(0);
        out.push(CharacteristicDirection {
            point: DirectionPoint::Infinity,
            lambda: d.q_at_infinity.to_complex(),
            degenerate: d.q_at_infinity.is_zero(),
            lambda_exact: Some(d.q_at_infinity.clone()),
            multiplicity: (d.k as usize + 2).saturating_sub(deg_r),
        });
    }
    Some(CharacteristicDirections::Finite(out))
}
