mod common;

use common::{poly, small_gr};
use germ_core::scalar::{lagrange_interpolate, GaussianRational as GR, Poly1, RatFunc};
use proptest::prelude::*;

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(3), poly(2)).prop_filter_map("nonzero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_a_homomorphism(f in ratfunc(), g in ratfunc(), c in small_gr()) {
        let (Ok(fc), Ok(gc)) = (f.eval(&c), g.eval(&c)) else { return Ok(()); };
        prop_assert_eq!((&f * &g).eval(&c).unwrap(), &fc * &gc);
        prop_assert_eq!((&f + &g).eval(&c).unwrap(), &fc + &gc);
    }

    #[test]
    fn canonical_form_makes_equality_structural(f in ratfunc(), u in poly(2)) {
        prop_assume!(!u.is_zero());
        let g = RatFunc::new(f.num() * &u, f.den() * &u).unwrap();
        prop_assert_eq!(g, f);
    }

    #[test]
    fn interpolation_reproduces_nodes(ys in proptest::collection::vec(small_gr(), 1..6), shift in -3i64..3) {
        let pts: Vec<(GR, GR)> = ys.into_iter().enumerate()
            .map(|(i, y)| (GR::ratio(i as i64 + shift, 2), y))
            .collect();
        let p = lagrange_interpolate(&pts).unwrap();
        prop_assert!(p.degree().map_or(true, |d| d < pts.len()));
        for (x, y) in &pts {
            prop_assert_eq!(&p.eval(x), y);
        }
    }

    #[test]
    fn division_with_remainder(a in poly(5), b in poly(3)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }
}

#[test]
fn repeated_nodes_rejected() {
    let pts = [(GR::from_int(1), GR::from_int(2)), (GR::from_int(1), GR::from_int(3))];
    assert!(lagrange_interpolate(&pts).is_err());
    assert_eq!(Poly1::from_ints(&[0, 0, 1]).eval(&GR::i()), GR::from_int(-1));
}
