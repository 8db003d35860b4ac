use proptest::prelude::*;
use sylowchar_core::rootsys::RootOrder;
use sylowchar_core::{CartanType, RootSystem};

fn sys(s: &str) -> RootSystem {
    RootSystem::build(CartanType::parse(s).unwrap())
}

const SIMPLY_LACED: [&str; 9] = ["A2", "A4", "A6", "D4", "D5", "D6", "E6", "E7", "E8"];

#[test]
fn positive_root_counts() {
    for (t, n) in [("A1", 1), ("A6", 21), ("B4", 16), ("C5", 25), ("D6", 30), ("E6", 36), ("E7", 63), ("E8", 120), ("F4", 24), ("G2", 6)] {
        assert_eq!(sys(t).len(), n, "{t}");
        assert_eq!(CartanType::parse(t).unwrap().positive_root_count(), n);
    }
}

#[test]
fn order_refines_height_and_highest_root_is_last() {
    for t in ["B5", "C4", "D6", "E6", "F4"] {
        let rs = sys(t);
        assert!(rs.roots.windows(2).all(|w| w[0].height <= w[1].height), "{t}");
        assert_eq!(rs.highest(), rs.len() - 1, "{t}");
        for i in 0..rs.len() {
            assert!(rs.le(i, rs.highest()), "{t}: every root lies below the highest");
        }
    }
}

#[test]
fn root_sums_add_heights_and_coefficients() {
    for t in ["B4", "D5", "E6", "G2"] {
        let rs = sys(t);
        for i in 0..rs.len() {
            for j in 0..rs.len() {
                if let Some(k) = rs.root_sum(i, j) {
                    let sum: Vec<i32> = rs.roots[i].coeffs.iter().zip(&rs.roots[j].coeffs).map(|(a, b)| a + b).collect();
                    assert_eq!(rs.roots[k].coeffs, sum);
                    assert_eq!(rs.root_sum(j, i), Some(k));
                }
            }
        }
    }
}

#[test]
fn structure_signs_satisfy_jacobi_and_extraspecial_normalisation() {
    for t in SIMPLY_LACED {
        let rs = sys(t);
        assert!(rs.check_jacobi().is_ok(), "{t}");
        assert!(rs.structure_signs().is_ok(), "{t}");
        for xi in 0..rs.len() {
            if let Some((a, b)) = rs.extraspecial_pair(xi) {
                assert_eq!(rs.sign(a, b), Some(1), "{t}: extraspecial pair of root {}", xi + 1);
            }
        }
    }
}

#[test]
fn ascending_order_is_a_valid_alternative() {
    let asc = RootSystem::build_with_order(CartanType::parse("E6").unwrap(), &RootOrder::AscendingLex).unwrap();
    let desc = sys("E6");
    assert_eq!(asc.len(), desc.len());
    assert_eq!(asc.roots.last().unwrap().coeffs, desc.roots.last().unwrap().coeffs);
    assert!(asc.check_jacobi().is_ok());
}

proptest! {
    #[test]
    fn signs_are_antisymmetric(t in prop::sample::select(SIMPLY_LACED.to_vec()), i in 0usize..120, j in 0usize..120) {
        let rs = sys(t);
        let (i, j) = (i % rs.len(), j % rs.len());
        match (rs.sign(i, j), rs.sign(j, i)) {
            (Some(a), Some(b)) => prop_assert_eq!(a, -b),
            (None, None) => prop_assert!(rs.root_sum(i, j).is_none()),
            _ => prop_assert!(false, "sign defined on one side only"),
        }
    }

    #[test]
    fn position_inverts_coefficients(t in prop::sample::select(vec!["B6", "C6", "E7", "F4"]), i in 0usize..63) {
        let rs = sys(t);
        let i = i % rs.len();
        prop_assert_eq!(rs.position(&rs.roots[i].coeffs), Some(i));
    }
}
