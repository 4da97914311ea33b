mod common;

use common::{random_kb, Shape};
use corediag::bench::gen_variant;
use corediag::fixtures;
use corediag::format::{parse_kb, serialize_kb};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn parse_inverts_serialize(seed in any::<u64>(), factor in 1usize..4) {
        let kb = gen_variant(&random_kb(seed, &Shape { planted: false, max_constraints: 10, ..Shape::SMALL }), factor, seed);
        let text = serialize_kb(&kb);
        prop_assert_eq!(parse_kb(&text).unwrap(), kb);
    }
}

#[test]
fn bundled_fixtures_round_trip() {
    for (name, kb) in fixtures::all() {
        assert_eq!(parse_kb(&serialize_kb(&kb)).unwrap(), kb, "{name}");
    }
    let car = fixtures::car_prime();
    assert_eq!(car.variables().len(), 5);
    assert_eq!(car.labels(), vec!["ca", "c1", "c2", "c3", "c4", "c5"]);
}

#[test]
fn duplicated_labels_serialize_verbatim() {
    let v = gen_variant(&fixtures::car(), 2, 1);
    let text = serialize_kb(&v);
    assert!(text.contains("constraint c1#1:") && text.contains("constraint c1#2:"));
    assert_eq!(parse_kb(&text).unwrap(), v);
}
