use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::jets::{pushforward, Jet2, MapGerm, Mat2, VFieldGerm};
use crate::scalar::GaussianRational as GR;

/// Outcome of searching for the least `n` with `F^n = id`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GermOrder {
    Finite(u32),
    /// No power up to the bound is the identity.
    NoneUpTo(u32),
}

pub fn germ_order(f: &MapGerm, max: u32) -> GermOrder {
    if f.is_identity() {
        return GermOrder::Finite(1);
    }
    // A nontrivial germ tangent to the identity has infinite order.
    if f.linear_part() == Mat2::identity() {
        return GermOrder::NoneUpTo(max);
    }
    let mut p = f.clone();
    for n in 2..=max {
        p = p.compose(f).unwrap();
        if p.is_identity() {
            return GermOrder::Finite(n);
        }
    }
    GermOrder::NoneUpTo(max)
}

/// All elements of the group generated by `gens`, if it has at most `max` elements.
pub fn generate_group(gens: &[MapGerm], max: usize) -> Result<Vec<MapGerm>> {
    let n = gens
        .first()
        .ok_or_else(|| Error::InvalidArgument("no generators".into()))?
        .order();
    if let Some(g) = gens.iter().find(|g| g.order() != n) {
        return Err(Error::OrderMismatch(n, g.order()));
    }
    let id = MapGerm::identity(n);
    let mut seen: HashSet<MapGerm> = HashSet::from([id.clone()]);
    let mut elems = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let h = e.compose(g)?;
            if seen.insert(h.clone()) {
                if seen.len() > max {
                    return Err(Error::GroupNotFinite(max));
                }
                elems.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(elems)
}

/// `g = (1/#H) Σ_{h ∈ H} h'(0)^{-1} ∘ h`, which conjugates every element of the
/// finite group `H` to its linear part.
pub fn average_linearizer(gens: &[MapGerm], max_group: usize) -> Result<MapGerm> {
    let group = generate_group(gens, max_group)?;
    let n = group[0].order();
    let mut sx = Jet2::zero(n);
    let mut sy = Jet2::zero(n);
    for h in &group {
        let ainv = h.linear_part().inverse().ok_or(Error::SingularLinearPart)?;
        let (ux, uy) = ainv.apply(h.fx(), h.fy());
        sx = &sx + &ux;
        sy = &sy + &uy;
    }
    let w = GR::ratio(1, group.len() as i64);
    MapGerm::new(sx.scale(&w), sy.scale(&w))
}

pub fn is_invariant_field(f: &MapGerm, x: &VFieldGerm) -> Result<bool> {
    Ok(pushforward(f, x)? == *x)
}

/// For `X = R + h.o.t.`, a germ `g` tangent to the identity with `g_* X = R`.
/// Degree by degree, `h_j = id - Z_j/(j-1)` kills the degree-`j` part `Z_j`.
pub fn linearize_radial(x: &VFieldGerm) -> Result<MapGerm> {
    if x.linear_part() != Mat2::identity() {
        return Err(Error::NotRadial);
    }
    let n = x.order();
    let mut g = MapGerm::identity(n);
    let mut cur = x.clone();
    for j in 2..=n {
        let z = cur.homogeneous_part(j);
        if z.is_zero() {
            continue;
        }
        let c = -GR::ratio(1, j as i64 - 1);
        let h = MapGerm::identity_plus(&z.vx().scale(&c), &z.vy().scale(&c))?;
        cur = pushforward(&h, &cur)?;
        g = h.compose(&g)?;
    }
    debug_assert!(cur == VFieldGerm::radial(n));
    Ok(g)
}
