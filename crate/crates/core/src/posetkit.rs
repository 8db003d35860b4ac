//! Patterns, quatterns, centres, direct factors and antichains of the
//! positive-root poset.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rootset::RootSet;
use crate::rootsys::RootSystem;

/// Errors for poset operations whose preconditions fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetError {
    /// `K ⊆ P` with both patterns was required.
    NotNestedPatterns,
    /// An antichain was required.
    NotAntichain(RootSet),
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::NotNestedPatterns => write!(f, "K must be a pattern contained in the pattern P"),
            PosetError::NotAntichain(s) => write!(f, "{s} is not an antichain"),
        }
    }
}

impl core::error::Error for PosetError {}

/// A quattern `S = P ∖ K` together with its witnessing patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quattern {
    pub s: RootSet,
    pub p: RootSet,
    pub k: RootSet,
}

/// True iff `a` is closed under root addition inside `Φ+`.
pub fn is_pattern(rs: &RootSystem, a: RootSet) -> bool {
    a.iter().all(|i| {
        rs.addable(i)
            .inter(a)
            .iter()
            .all(|j| a.contains(rs.root_sum(i, j).unwrap()))
    })
}

/// True iff `K` is normal in `P`: `δ ∈ K`, `β ∈ P`, `δ+β ∈ P` imply `δ+β ∈ K`.
pub fn is_normal(rs: &RootSystem, k: RootSet, p: RootSet) -> Result<bool, PosetError> {
    if !k.is_subset(p) || !is_pattern(rs, k) || !is_pattern(rs, p) {
        return Err(PosetError::NotNestedPatterns);
    }
    Ok(normal_unchecked(rs, k, p))
}

fn normal_unchecked(rs: &RootSystem, k: RootSet, p: RootSet) -> bool {
    k.iter().all(|d| {
        rs.addable(d).inter(p).iter().all(|b| {
            let s = rs.root_sum(d, b).unwrap();
            !p.contains(s) || k.contains(s)
        })
    })
}

/// Additive closure of a set of roots inside `Φ+`.
pub fn pattern_closure(rs: &RootSystem, a: RootSet) -> RootSet {
    let mut p = a;
    loop {
        let mut next = p;
        for i in p.iter() {
            for j in rs.addable(i).inter(p).iter() {
                next.insert(rs.root_sum(i, j).unwrap());
            }
        }
        if next == p {
            return p;
        }
        p = next;
    }
}

/// Returns a quattern witness for `s` if one exists.
///
/// `s` is a quattern iff, with `P` the additive closure of `s`, the set
/// `P ∖ s` is normal in `P`.
pub fn quattern_witness(rs: &RootSystem, s: RootSet) -> Option<Quattern> {
    let p = pattern_closure(rs, s);
    let k = p.minus(s);
    if normal_unchecked(rs, k, p) {
        Some(Quattern { s, p, k })
    } else {
        None
    }
}

/// True iff `s` is a quattern.
pub fn is_quattern(rs: &RootSystem, s: RootSet) -> bool {
    quattern_witness(rs, s).is_some()
}

/// `Z(S) = {γ ∈ S : γ + α ∉ S for all α ∈ S}`.
pub fn center(rs: &RootSystem, s: RootSet) -> RootSet {
    s.iter()
        .filter(|&g| rs.addable(g).inter(s).iter().all(|a| !s.contains(rs.root_sum(g, a).unwrap())))
        .collect()
}

/// The set of roots of `S` that are sums of two roots of `S`.
pub fn internal_sums(rs: &RootSystem, s: RootSet) -> RootSet {
    let mut out = RootSet::EMPTY;
    for a in s.iter() {
        for b in rs.addable(a).inter(s).iter() {
            let c = rs.root_sum(a, b).unwrap();
            if s.contains(c) {
                out.insert(c);
            }
        }
    }
    out
}

/// `D(S)`: central roots that are not sums of two roots of `S`.
pub fn direct_factor_roots(rs: &RootSystem, s: RootSet) -> RootSet {
    center(rs, s).minus(internal_sums(rs, s))
}

/// Roots comparable with `α_i` under dominance (including `α_i`).
pub fn comparable(rs: &RootSystem, i: usize) -> RootSet {
    let mut c = rs.below(i);
    for j in 0..rs.len() {
        if rs.le(i, j) {
            c.insert(j);
        }
    }
    c
}

/// True iff the roots of `a` are pairwise incomparable.
pub fn is_antichain(rs: &RootSystem, a: RootSet) -> bool {
    a.iter().all(|i| comparable(rs, i).inter(a) == RootSet::single(i))
}

/// Precomputed comparability masks used by the antichain enumerator.
pub struct Comparability {
    masks: Vec<RootSet>,
}

impl Comparability {
    pub fn new(rs: &RootSystem) -> Comparability {
        Comparability { masks: (0..rs.len()).map(|i| comparable(rs, i)).collect() }
    }
}

/// All antichains (including the empty one), each exactly once.
///
/// Antichains are produced by depth-first descent that adds roots in
/// increasing position, so the output is sorted lexicographically by the
/// increasing sequence of positions.
pub fn antichains(rs: &RootSystem) -> Vec<RootSet> {
    let cmp = Comparability::new(rs);
    let mut out = vec![RootSet::EMPTY];
    for first in 0..rs.len() {
        antichains_from(&cmp, rs.len(), first, &mut out);
    }
    out
}

/// Appends all antichains whose smallest position is `first` to `out`.
pub fn antichains_from(cmp: &Comparability, n: usize, first: usize, out: &mut Vec<RootSet>) {
    fn rec(cmp: &Comparability, n: usize, start: usize, cur: RootSet, blocked: RootSet, out: &mut Vec<RootSet>) {
        out.push(cur);
        for k in start..n {
            if !blocked.contains(k) {
                rec(cmp, n, k + 1, cur.with(k), blocked.union(cmp.masks[k]), out);
            }
        }
    }
    rec(cmp, n, first + 1, RootSet::single(first), cmp.masks[first], out);
}

/// Number of antichains, computed without materialising them.
pub fn count_antichains(rs: &RootSystem) -> u64 {
    let cmp = Comparability::new(rs);
    fn rec(cmp: &Comparability, n: usize, start: usize, blocked: RootSet) -> u64 {
        let mut c = 1;
        for k in start..n {
            if !blocked.contains(k) {
                c += rec(cmp, n, k + 1, blocked.union(cmp.masks[k]));
            }
        }
        c
    }
    rec(&cmp, rs.len(), 0, RootSet::EMPTY)
}

/// Antichains found by filtering all `2^m` subsets; only for `m ≤ 20`.
pub fn antichains_bruteforce(rs: &RootSystem) -> Option<Vec<RootSet>> {
    let n = rs.len();
    if n > 20 {
        return None;
    }
    let mut out: Vec<RootSet> = (0u128..(1u128 << n))
        .map(RootSet)
        .filter(|&a| is_antichain(rs, a))
        .collect();
    out.sort_by_key(|a| a.to_vec());
    Some(out)
}

/// The standard quattern `S_Σ = Φ+ ∖ K_Σ`, `K_Σ = {β : β ≰ γ for all γ ∈ Σ}`.
pub fn standard_quattern(rs: &RootSystem, sigma: RootSet) -> Result<Quattern, PosetError> {
    if !is_antichain(rs, sigma) {
        return Err(PosetError::NotAntichain(sigma));
    }
    let mut s = RootSet::EMPTY;
    for g in sigma.iter() {
        s = s.union(rs.below(g));
    }
    Ok(Quattern { s, p: rs.all(), k: rs.all().minus(s) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    fn sys(s: &str) -> RootSystem {
        RootSystem::build(CartanType::parse(s).unwrap())
    }

    #[test]
    fn a2_patterns() {
        let rs = sys("A2");
        assert!(is_pattern(&rs, RootSet::from_labels([1, 3])));
        assert!(!is_pattern(&rs, RootSet::from_labels([1, 2])));
        assert!(is_pattern(&rs, RootSet::EMPTY));
        let p = rs.all();
        assert_eq!(is_normal(&rs, RootSet::from_labels([3]), p), Ok(true));
        assert_eq!(is_normal(&rs, RootSet::from_labels([1]), p), Ok(false));
        assert_eq!(is_normal(&rs, p, p), Ok(true));
        assert_eq!(direct_factor_roots(&rs, p), RootSet::EMPTY);
    }

    #[test]
    fn antichain_counts_small() {
        assert_eq!(antichains(&sys("A1")).len(), 2);
        assert_eq!(antichains(&sys("A2")).len(), 5);
        assert_eq!(count_antichains(&sys("A2")), 5);
    }

    #[test]
    fn standard_quattern_extremes() {
        let rs = sys("D4");
        assert_eq!(standard_quattern(&rs, RootSet::EMPTY).unwrap().s, RootSet::EMPTY);
        let top = RootSet::single(rs.highest());
        assert_eq!(standard_quattern(&rs, top).unwrap().s, rs.all());
        assert!(standard_quattern(&rs, RootSet::single(0).with(rs.highest())).is_err());
    }
}
