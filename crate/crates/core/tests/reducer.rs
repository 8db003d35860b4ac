use std::collections::BTreeSet;

use proptest::prelude::*;
use sylowchar_core::coregraph::form;
use sylowchar_core::posetkit::{antichains, center, is_quattern};
use sylowchar_core::reducer::*;
use sylowchar_core::{CartanType, RootSet, RootSystem};

fn sys(s: &str) -> RootSystem {
    RootSystem::build(CartanType::parse(s).unwrap())
}

#[test]
fn small_rank_counts() {
    for (t, n) in [("A3", 0), ("B3", 0), ("G2", 0), ("B4", 1), ("C4", 0), ("D4", 1), ("F4", 6), ("B5", 7), ("C5", 1), ("D5", 6), ("C6", 16), ("D6", 27)] {
        assert_eq!(enumerate_cores(&sys(t)).distinct_nonabelian().len(), n, "{t}");
    }
}

#[test]
fn d6_leaves_and_distinct_cores() {
    let rs = sys("D6");
    let out = enumerate_cores(&rs);
    assert_eq!(out.nonabelian_cores.len(), 55);
    assert_eq!(out.distinct_nonabelian().len(), 27);
}

#[test]
fn e6_enumeration_lacks_one_printed_core() {
    let rs = sys("E6");
    let cores = enumerate_cores(&rs).distinct_nonabelian();
    assert_eq!(cores.len(), 104);
    let s = RootSet::from_labels([2, 3, 4, 5, 7, 8, 9, 10, 11, 12, 15, 16, 17, 18, 20, 21]);
    let z = RootSet::from_labels([15, 17, 18, 20, 21]);
    assert!(is_quattern(&rs, s));
    assert!(z.is_subset(center(&rs, s)));
    assert!(!cores.contains(&(s, z)));
    let forms: BTreeSet<_> = cores.iter().map(|&(a, b)| form(&rs, a, b)).collect();
    assert_eq!(forms.len(), 15);
    assert!(!forms.contains(&form(&rs, s, z)));
}

#[test]
fn every_leaf_conserves_roots() {
    for t in ["B5", "D6", "E6", "F4"] {
        let rs = sys(t);
        let out = enumerate_cores(&rs);
        for c in out.abelian_cores.iter().chain(&out.nonabelian_cores) {
            assert!(check_conservation(&rs, c), "{t}: origin {}", c.origin);
        }
        assert!(out.abelian_cores.iter().all(|c| c.is_abelian(&rs)));
        assert!(out.nonabelian_cores.iter().all(|c| !c.is_abelian(&rs) && reduction_pairs(&rs, c.s, c.z).is_empty()));
    }
}

#[test]
fn enumeration_is_deterministic() {
    let rs = sys("E6");
    assert_eq!(enumerate_cores(&rs), enumerate_cores(&rs));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leaves_of_an_antichain_are_quatterns_with_central_support(idx in 0usize..833) {
        let rs = sys("E6");
        let sigma = antichains(&rs)[idx];
        let out = reduce_standard_quattern(&rs, sigma).unwrap();
        prop_assert!(!out.abelian_cores.is_empty() || !out.nonabelian_cores.is_empty());
        for c in out.abelian_cores.iter().chain(&out.nonabelian_cores) {
            prop_assert_eq!(c.origin, sigma);
            prop_assert!(is_quattern(&rs, c.s));
            prop_assert!(c.z.is_subset(center(&rs, c.s)));
            prop_assert!(check_conservation(&rs, c));
            prop_assert_eq!(c.l.len(), c.a.len());
        }
    }
}
