mod common;

use common::{flat_field, flat_map, jet1_flat};
use germ_core::jets::MapGerm;
use germ_core::text::{parse_germ, parse_germ_with_order, GermDocument};
use proptest::prelude::*;

fn metadata() -> impl Strategy<Value = Vec<(String, String)>> {
    proptest::collection::vec(("[a-z][a-z0-9_]{0,8}", "[A-Za-z0-9][A-Za-z0-9 ,.()+-]{0,20}[A-Za-z0-9)]"), 0..3)
}

fn round_trips(doc: &GermDocument) -> Result<(), TestCaseError> {
    let text = doc.render();
    let back = parse_germ(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    prop_assert_eq!(&back, doc);
    prop_assert_eq!(back.render(), text);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maps_round_trip(f in flat_map(7, 2, 6), meta in metadata()) {
        let mut doc = GermDocument::from_map("F", &f);
        doc.metadata = meta;
        round_trips(&doc)?;
        prop_assert_eq!(doc.as_map().unwrap(), f);
    }

    #[test]
    fn fields_round_trip(x in flat_field(7, 1, 6), meta in metadata()) {
        let mut doc = GermDocument::from_field("X", &x);
        doc.metadata = meta;
        round_trips(&doc)?;
        prop_assert_eq!(doc.as_field().unwrap(), x);
    }

    #[test]
    fn one_dimensional_germs_round_trip(h in jet1_flat(9, 2)) {
        let doc = GermDocument::from_jet1("h", &h);
        round_trips(&doc)?;
        prop_assert_eq!(doc.as_jet1().unwrap(), h);
    }

    #[test]
    fn lowering_the_order_truncates(f in flat_map(8, 2, 6), n in 2u32..8) {
        let text = GermDocument::from_map("F", &f).render();
        let doc = parse_germ_with_order(&text, Some(n)).unwrap();
        prop_assert_eq!(doc.as_map().unwrap(), f.truncate(n));
    }
}

#[test]
fn identity_renders_plainly() {
    let doc = GermDocument::from_map("I", &MapGerm::identity(4));
    assert_eq!(doc.render(), "map I(x,y) = (x, y) order 4\n");
}
