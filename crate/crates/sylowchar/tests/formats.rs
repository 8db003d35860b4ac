use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use sylowchar::data::{parse_root_order, Bundle};
use sylowchar::emit;
use sylowchar::error::Error;
use sylowchar_core::posetkit::count_antichains;
use sylowchar_core::tabulate::{bundled, CountPolynomial};
use sylowchar_core::{CartanType, RootSystem};

#[test]
fn bundle_loads_and_reports_parse_errors() {
    let b = Bundle::bundled().unwrap();
    assert_eq!(b.regimes_of("E6").len(), 3);
    assert!(b.has_families("D6"));
    assert!(!b.has_families("A4"));
    let bad = Bundle::from_texts(bundled::FAMILIES, "E6 p=3 | q^2 | v^\n", bundled::CLAIMED_DELTAS, "test");
    assert!(matches!(bad, Err(Error::Data { .. })));
}

#[test]
fn order_file_parsing() {
    assert!(parse_root_order("1, 2 x").is_err());
    let a2 = CartanType::parse("A2").unwrap();
    let order = parse_root_order("# comment\n2 1\n3 # tail\n").unwrap();
    let rs = RootSystem::build_with_order(a2, &order).unwrap();
    assert_eq!(rs.len(), 3);
    assert!(RootSystem::build_with_order(a2, &parse_root_order("3 2 1").unwrap()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn antichain_count_is_independent_of_root_order(seed in any::<u64>()) {
        let ty = CartanType::parse("D4").unwrap();
        let base = RootSystem::build(ty);
        let mut labels: Vec<usize> = (1..=base.len()).collect();
        let mut rng = StdRng::seed_from_u64(seed);
        for block in labels.chunk_by_mut(|&a, &b| base.roots[a - 1].height == base.roots[b - 1].height) {
            block.shuffle(&mut rng);
        }
        let text = labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
        let rs = RootSystem::build_with_order(ty, &parse_root_order(&text).unwrap()).unwrap();
        prop_assert_eq!(count_antichains(&rs), count_antichains(&base));
    }

    #[test]
    fn json_polynomials_round_trip(coeffs in proptest::collection::vec(-9i64..9, 1..6)) {
        let text = coeffs
            .iter()
            .enumerate()
            .map(|(e, c)| format!("({c})v^{e}"))
            .collect::<Vec<_>>()
            .join("+");
        let p = CountPolynomial::parse(&text).unwrap();
        let v = emit::polynomial(&p);
        prop_assert_eq!(CountPolynomial::parse(v["text"].as_str().unwrap()).unwrap(), p);
    }
}
