use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jets::{FlatOrder, Jet2, MapGerm, VFieldGerm};
use crate::scalar::GaussianRational as GR;

/// `[X, Y] = (∇Y)X - (∇X)Y`. With this sign `[R, P] = (j-1) P` for the radial
/// field `R` and `P` homogeneous of degree `j`.
pub fn lie_bracket(x: &VFieldGerm, y: &VFieldGerm) -> Result<VFieldGerm> {
    if x.order() != y.order() {
        return Err(Error::OrderMismatch(x.order(), y.order()));
    }
    VFieldGerm::new(
        &x.apply(y.vx()) - &y.apply(x.vx()),
        &x.apply(y.vy()) - &y.apply(x.vy()),
    )
}

/// `Σ X^m(u) / m!`, which terminates because `X` raises degrees.
fn lie_series(x: &VFieldGerm, u: Jet2) -> Jet2 {
    let mut sum = u.clone();
    let mut term = u;
    let mut m = 1i64;
    loop {
        term = x.apply(&term).scale(&GR::ratio(1, m));
        if term.is_zero() {
            return sum;
        }
        sum = &sum + &term;
        m += 1;
    }
}

/// Time-one map of a formal vector field with vanishing linear part.
pub fn exp_field(x: &VFieldGerm) -> Result<MapGerm> {
    if x.min_degree().is_some_and(|d| d < 2) {
        return Err(Error::NotFlatField);
    }
    let n = x.order();
    MapGerm::new(lie_series(x, Jet2::x(n)), lie_series(x, Jet2::y(n)))
}

/// The unique formal field `X` with `exp X = F`, built degree by degree:
/// `X_d = F_d - [exp(X_{<d})]_d`.
pub fn log_diffeo(f: &MapGerm) -> Result<VFieldGerm> {
    let n = f.order();
    match f.flat_order() {
        FlatOrder::NotTangent => return Err(Error::NotTangentToIdentity),
        FlatOrder::Identity => return Ok(VFieldGerm::zero(n)),
        FlatOrder::Flat(_) => {}
    }
    let mut x = VFieldGerm::zero(n);
    for d in 2..=n {
        let e = exp_field(&x.truncate(d))?;
        let dx = &f.fx().homogeneous_part(d) - &e.fx().homogeneous_part(d).with_order(n);
        let dy = &f.fy().homogeneous_part(d) - &e.fy().homogeneous_part(d).with_order(n);
        if !dx.is_zero() || !dy.is_zero() {
            x = x.add(&VFieldGerm::new(dx, dy)?);
        }
    }
    Ok(x)
}

/// `F^[t] = exp(t log F)`.
pub fn flow_power(f: &MapGerm, t: &GR) -> Result<MapGerm> {
    let x = log_diffeo(f)?;
    if t.is_zero() {
        return Ok(MapGerm::identity(f.order()));
    }
    exp_field(&x.scale(t))
}

/// `F ∘ G ∘ F^{-1} ∘ G^{-1}`.
pub fn group_commutator(f: &MapGerm, g: &MapGerm) -> Result<MapGerm> {
    f.compose(g)?.compose(&f.invert())?.compose(&g.invert())
}
