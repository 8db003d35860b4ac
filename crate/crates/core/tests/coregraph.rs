use std::collections::BTreeMap;

use sylowchar_core::coregraph::{arm_leg, arm_leg_with, check_corplus, BaseDirection, form, form_histogram, CoreForm, CoreGraph};
use sylowchar_core::reducer::enumerate_cores;
use sylowchar_core::{CartanType, RootSet, RootSystem};

fn sys(s: &str) -> RootSystem {
    RootSystem::build(CartanType::parse(s).unwrap())
}

fn cores(rs: &RootSystem) -> Vec<(RootSet, RootSet)> {
    enumerate_cores(rs).distinct_nonabelian()
}

fn f(z: usize, m: usize, c: usize) -> CoreForm {
    CoreForm { z, m, c }
}

fn labels(s: RootSet) -> Vec<usize> {
    s.labels()
}

#[test]
fn d6_form_histogram() {
    let rs = sys("D6");
    let hist: BTreeMap<_, _> = form_histogram(&rs, &cores(&rs)).into_iter().collect();
    let expected: BTreeMap<_, _> = [
        (f(3, 9, 6), 7),
        (f(3, 10, 9), 15),
        (f(4, 18, 18), 1),
        (f(4, 21, 28), 1),
        (f(4, 24, 43), 1),
        (f(5, 18, 18), 1),
        (f(6, 19, 20), 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(hist, expected);
}

#[test]
fn d6_hexagon_arm_and_leg() {
    let rs = sys("D6");
    let mut found = false;
    for (s, z) in cores(&rs) {
        if form(&rs, s, z) != f(3, 9, 6) {
            continue;
        }
        let g = CoreGraph::new(&rs, s, z);
        let circles = g.circles();
        assert_eq!(circles.len(), 1);
        assert_eq!(circles[0].len(), 6);
        let (i, j) = arm_leg(&g);
        assert_eq!((i.len(), j.len()), (3, 3));
        if labels(i) == vec![2, 10, 11] && labels(j) == vec![8, 14, 15] {
            found = true;
        }
    }
    assert!(found, "hexagon 2-14-11-8-10-15 with I = {{2,11,10}}");
}

#[test]
fn d6_hearts_and_corplus() {
    let rs = sys("D6");
    let mut hearts = BTreeMap::new();
    let mut off = BTreeMap::new();
    for (s, z) in cores(&rs) {
        let fm = form(&rs, s, z);
        let g = CoreGraph::new(&rs, s, z);
        hearts.insert(fm, g.heart().len());
        off.insert(fm, g.off_circle().len());
        assert!(g.heart().is_subset(g.off_circle()));
        let (i, j) = arm_leg(&g);
        assert!(i.is_disjoint(j));
        let rep = check_corplus(&rs, s, z, i, j);
        assert_eq!(rep.holds(), fm != f(4, 24, 43), "{fm}: {:?}", rep.failures());
    }
    assert_eq!(hearts[&f(4, 18, 18)], 2);
    assert_eq!(hearts[&f(4, 21, 28)], 2);
    assert_eq!(hearts[&f(5, 18, 18)], 1);
    assert_eq!(hearts[&f(3, 9, 6)], 0);
    // The quoted sizes 2, 5, 1 count the vertices on no circle.
    assert_eq!(off[&f(4, 18, 18)], 2);
    assert_eq!(off[&f(4, 21, 28)], 5);
    assert_eq!(off[&f(5, 18, 18)], 1);
    assert_eq!(off[&f(6, 19, 20)], 1);
}

#[test]
fn e6_graph_examples() {
    let rs = sys("E6");
    let all = cores(&rs);
    let mut pentagon = false;
    let mut big = false;
    for &(s, z) in &all {
        let fm = form(&rs, s, z);
        let g = CoreGraph::new(&rs, s, z);
        let (i, j) = arm_leg(&g);
        let rep = check_corplus(&rs, s, z, i, j);
        assert!(rep.holds(), "{fm} S={s} Z={z}: {:?}", rep.failures());
        if fm == f(3, 10, 9) {
            assert_eq!(g.circles().len(), 1);
            assert_eq!(g.heart().len(), 1);
        }
        if fm == f(5, 10, 5) {
            // The odd circle 1-3-4-5-13 is split in the direction of the smaller neighbour.
            let (im, jm) = arm_leg_with(&g, BaseDirection::MinNeighbour);
            pentagon |= labels(im) == vec![1, 4, 13] && labels(jm) == vec![3, 5];
            assert_eq!((labels(i), labels(j)), (vec![1, 3, 5], vec![4, 13]));
            assert!(check_corplus(&rs, s, z, im, jm).holds());
        }
        if fm == f(5, 20, 25) {
            assert_eq!(g.circles().len(), 3);
            assert_eq!(g.off_circle().len(), 5);
            big |= labels(i) == vec![1, 6, 8, 9, 10] && labels(j) == vec![7, 11, 13, 14, 15];
        }
        if fm == f(5, 21, 30) {
            assert_eq!(g.circles().len(), 3);
            assert_eq!(g.heart().len(), 1);
            assert_eq!(g.off_circle().len(), 6);
        }
        if fm == f(6, 16, 12) {
            assert!(g.heart().is_empty());
            assert_eq!(g.circles().len(), 7);
        }
    }
    assert!(pentagon);
    assert!(big);
}

#[test]
fn e6_three_circle_core() {
    let rs = sys("E6");
    let s = RootSet::from_labels([2, 3, 4, 5, 7, 8, 9, 10, 11, 12, 15, 16, 17, 18, 20, 21]);
    let z = RootSet::from_labels([15, 17, 18, 20, 21]);
    assert_eq!(form(&rs, s, z), f(5, 16, 15));
    let g = CoreGraph::new(&rs, s, z);
    // One 10-cycle around the isolated root 4.
    let circles = g.circles();
    assert_eq!(circles.len(), 1);
    let seq: Vec<usize> = circles[0].seq.iter().map(|x| x + 1).collect();
    assert_eq!(seq, vec![2, 12, 5, 9, 11, 8, 7, 10, 3, 16]);
    assert_eq!(labels(g.heart()), vec![4]);
    assert_eq!(g.off_circle(), g.heart());
    let (i, j) = arm_leg(&g);
    assert!(check_corplus(&rs, s, z, i, j).holds());
}

#[test]
fn arm_leg_is_deterministic_and_j_independent() {
    let rs = sys("E6");
    for (s, z) in cores(&rs) {
        let g = CoreGraph::new(&rs, s, z);
        let a = arm_leg(&g);
        assert_eq!(a, arm_leg(&CoreGraph::new(&rs, s, z)));
        let (i, j) = a;
        assert!(i.union(j).is_subset(s.minus(z)));
        let circle_vertices = g.circle_vertices();
        assert!(circle_vertices.is_subset(i.union(j)));
        for c in g.circles().iter().take(1) {
            for x in j.inter(c.vertices()).iter() {
                assert!(g.neighbours(x).inter(j).inter(c.vertices()).is_empty());
            }
        }
        assert!(g.heart().is_disjoint(i.union(j)));
    }
}
