#![allow(dead_code)]

use germ_core::jets::{Jet1, Jet2, MapGerm, VFieldGerm};
use germ_core::scalar::{GaussianRational as GR, Poly1};
use num_traits::Zero;
use proptest::prelude::*;

pub fn small_gr() -> impl Strategy<Value = GR> {
    prop_oneof![
        4 => (-3i64..=3).prop_map(GR::from_int),
        2 => (-3i64..=3, 1i64..=3).prop_map(|(n, d)| GR::ratio(n, d)),
        1 => (-2i64..=2, -2i64..=2).prop_map(|(a, b)| GR::gaussian_int(a, b)),
    ]
}

pub fn nonzero_gr() -> impl Strategy<Value = GR> {
    small_gr().prop_filter("nonzero", |c| !c.is_zero())
}

/// Sparse jet with at most `terms` monomials of total degree in `lo..=hi`.
pub fn jet(order: u32, lo: u32, hi: u32, terms: usize) -> impl Strategy<Value = Jet2> {
    let hi = hi.min(order);
    proptest::collection::vec(((lo..=hi), 0u32..=hi, small_gr()), 0..=terms).prop_map(move |ts| {
        Jet2::from_terms(
            order,
            ts.into_iter().map(|(d, j, c)| {
                let j = j.min(d);
                ((d - j, j), c)
            }),
        )
    })
}

/// `id + (terms of degree >= lo)`.
pub fn flat_map(order: u32, lo: u32, terms: usize) -> impl Strategy<Value = MapGerm> {
    (jet(order, lo, order, terms), jet(order, lo, order, terms))
        .prop_map(|(a, b)| MapGerm::identity_plus(&a, &b).unwrap())
}

pub fn flat_field(order: u32, lo: u32, terms: usize) -> impl Strategy<Value = VFieldGerm> {
    (jet(order, lo, order, terms), jet(order, lo, order, terms))
        .prop_map(|(a, b)| VFieldGerm::new(a, b).unwrap())
}

/// Homogeneous polynomial of degree `d` with nonzero coefficients on a random support.
pub fn homogeneous(order: u32, d: u32) -> impl Strategy<Value = Jet2> {
    proptest::collection::vec(small_gr(), (d + 1) as usize)
        .prop_map(move |cs| Jet2::from_terms(order, cs.into_iter().enumerate().map(|(j, c)| ((d - j as u32, j as u32), c))))
        .prop_filter("nonzero", |j| !j.is_zero())
}

/// `X + f(X) X + (terms of degree >= k+2)` with `f` homogeneous of degree `k`.
pub fn dicritic_map(order: u32, k: u32, terms: usize) -> impl Strategy<Value = MapGerm> {
    (homogeneous(order, k), jet(order, k + 2, order, terms), jet(order, k + 2, order, terms)).prop_map(
        move |(f, a, b)| {
            let x = Jet2::x(order);
            let y = Jet2::y(order);
            MapGerm::identity_plus(&(&(&f * &x) + &a), &(&(&f * &y) + &b)).unwrap()
        },
    )
}

pub fn jet1_flat(order: u32, lo: u32) -> impl Strategy<Value = Jet1> {
    proptest::collection::vec(small_gr(), (order + 1 - lo) as usize).prop_map(move |cs| {
        let mut all = vec![GR::from_int(0); lo as usize];
        all[1] = GR::from_int(1);
        all.extend(cs);
        Jet1::new(order, all)
    })
}

pub fn poly(max_deg: usize) -> impl Strategy<Value = Poly1> {
    proptest::collection::vec(small_gr(), 0..=max_deg + 1).prop_map(Poly1::new)
}

pub fn germ(n: u32, px: &[(u32, u32, i64)], py: &[(u32, u32, i64)]) -> MapGerm {
    let j = |t: &[(u32, u32, i64)]| Jet2::from_terms(n, t.iter().map(|&(a, b, c)| ((a, b), GR::from_int(c))));
    MapGerm::identity_plus(&j(px), &j(py)).unwrap()
}
