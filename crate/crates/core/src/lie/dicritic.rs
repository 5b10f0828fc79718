use num_traits::{One, Zero};

use super::{flow_power, group_commutator, log_diffeo};
use crate::error::{Error, Result};
use crate::jets::{FlatOrder, Jet2, MapGerm};
use crate::scalar::linalg::determinant;
use crate::scalar::GaussianRational as GR;

/// Whether the first nonlinear term of a germ tangent to the identity is a
/// multiple of the radial field.
#[derive(Clone, PartialEq, Debug)]
pub enum Dicriticity {
    NotTangent,
    Identity,
    /// `F = id + f·(x, y) + O(k+2)` with `f` homogeneous of degree `k`.
    Dicritic { k: u32, f: Jet2 },
    NonDicritic { k: u32 },
}

impl Dicriticity {
    pub fn is_dicritic(&self) -> bool {
        matches!(self, Dicriticity::Dicritic { .. })
    }
}

pub fn is_dicritic(f: &MapGerm) -> Dicriticity {
    let m = match f.flat_order() {
        FlatOrder::NotTangent => return Dicriticity::NotTangent,
        FlatOrder::Identity => return Dicriticity::Identity,
        FlatOrder::Flat(m) => m,
    };
    let k = m - 1;
    let (p, q) = f.homogeneous_part(m);
    // y P = x Q, coefficient by coefficient.
    let dicritic = p.coeff(0, m).is_zero()
        && q.coeff(m, 0).is_zero()
        && (0..m).all(|j| p.coeff(m - j, j) == q.coeff(m - 1 - j, j + 1));
    if !dicritic {
        return Dicriticity::NonDicritic { k };
    }
    let fj = Jet2::from_terms(
        f.order(),
        (0..=k).map(|j| ((k - j, j), p.coeff(k - j + 1, j))),
    );
    Dicriticity::Dicritic { k, f: fj }
}

/// Coefficients of a binary form of degree `d`, `a_j` multiplying `x^(d-j) y^j`.
pub fn binary_form_coeffs(h: &Jet2, d: u32) -> Vec<GR> {
    (0..=d).map(|j| h.coeff(d - j, j)).collect()
}

/// Sylvester resultant of binary forms given by [`binary_form_coeffs`].
pub fn binary_resultant(a: &[GR], b: &[GR]) -> GR {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return GR::one();
    }
    let mut rows = Vec::with_capacity(size);
    for s in 0..n {
        let mut row = vec![GR::zero(); size];
        for (j, c) in a.iter().enumerate() {
            row[s + j] = c.clone();
        }
        rows.push(row);
    }
    for s in 0..m {
        let mut row = vec![GR::zero(); size];
        for (j, c) in b.iter().enumerate() {
            row[s + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Membership of a commuting germ in the formal flow of a generic dicritic germ.
#[derive(Clone, PartialEq, Debug)]
pub enum FlowMembership {
    /// `G = F^[t]`.
    Time(GR),
    NotInFlow,
}

/// For a dicritic `F` whose logarithm `f R + (p, q) + ...` satisfies the
/// genericity condition `gcd(f, x q - y p) = 1`, decides whether a germ `G`
/// commuting with `F` is a flow power of `F`, and returns the time.
pub fn abelian_structure(f: &MapGerm, g: &MapGerm) -> Result<FlowMembership> {
    if f.order() != g.order() {
        return Err(Error::OrderMismatch(f.order(), g.order()));
    }
    let Dicriticity::Dicritic { k, f: lead } = is_dicritic(f) else {
        return Err(Error::NotDicritic);
    };
    let n = f.order();
    if n < k + 2 {
        return Err(Error::InsufficientOrder(format!("need order >= {}", k + 2)));
    }
    let lf = log_diffeo(f)?;
    let p = lf.vx().homogeneous_part(k + 2).with_order(k + 3);
    let q = lf.vy().homogeneous_part(k + 2).with_order(k + 3);
    let h = &(&Jet2::x(k + 3) * &q) - &(&Jet2::y(k + 3) * &p);
    let res = binary_resultant(&binary_form_coeffs(&lead, k), &binary_form_coeffs(&h, k + 3));
    if res.is_zero() {
        return Err(Error::NotGeneric);
    }
    if g.flat_order() == FlatOrder::NotTangent {
        return Err(Error::NotTangentToIdentity);
    }
    if !group_commutator(f, g)?.is_identity() {
        return Err(Error::NonCommuting);
    }
    if g.is_identity() {
        return Ok(FlowMembership::Time(GR::zero()));
    }
    let lg = log_diffeo(g)?;
    if lg.min_degree().is_some_and(|d| d < k + 1) {
        return Ok(FlowMembership::NotInFlow);
    }
    let fk = lf.vx().homogeneous_part(k + 1);
    let (&(i, j), c) = fk.terms().next().expect("dicritic leading term");
    let t = &lg.vx().coeff(i, j) / c;
    if flow_power(f, &t)? == *g {
        Ok(FlowMembership::Time(t))
    } else {
        Ok(FlowMembership::NotInFlow)
    }
}
