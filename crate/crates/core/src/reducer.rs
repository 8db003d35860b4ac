//! The core reduction algorithm.
//!
//! Starting from the standard quattern of an antichain, the reducer splits off
//! direct-factor roots, applies the elementary reduction `Ind^β Inf_δ` while a
//! reduction pair exists, and otherwise branches on the largest central root
//! not yet in `Z`. Leaves are abelian (`S = Z(S)`) or nonabelian cores.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::posetkit::{center, direct_factor_roots, internal_sums, standard_quattern, PosetError};
use crate::rootset::RootSet;
use crate::rootsys::RootSystem;

/// A leaf of the reduction tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Core {
    /// The antichain whose standard quattern was reduced.
    pub origin: RootSet,
    pub s: RootSet,
    pub z: RootSet,
    /// Roots `β` used for induction.
    pub a: RootSet,
    /// Roots `δ` used for inflation.
    pub l: RootSet,
    /// All roots moved to the kernel: the inflated `δ`s and the branched `γ`s sent to `K`.
    pub k: RootSet,
    /// Direct-factor roots split off, with their membership in `Z` at the time.
    pub d_split: Vec<(usize, bool)>,
    /// Branching decisions along the path: `false` for `γ → K`, `true` for `γ → Z`.
    pub path: Vec<bool>,
}

impl Core {
    /// True iff `X_S` is abelian.
    pub fn is_abelian(&self, rs: &RootSystem) -> bool {
        center(rs, self.s) == self.s
    }

    /// Number of split-off direct-factor roots outside `Z` and inside `Z`.
    pub fn d_counts(&self) -> (usize, usize) {
        let inz = self.d_split.iter().filter(|d| d.1).count();
        (self.d_split.len() - inz, inz)
    }

    /// Roots of the split-off direct factors.
    pub fn d_roots(&self) -> RootSet {
        self.d_split.iter().map(|d| d.0).collect()
    }
}

/// Abelian (`O1`) and nonabelian (`O2`) cores.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub abelian_cores: Vec<Core>,
    pub nonabelian_cores: Vec<Core>,
}

impl ReductionOutcome {
    pub fn extend(&mut self, other: ReductionOutcome) {
        self.abelian_cores.extend(other.abelian_cores);
        self.nonabelian_cores.extend(other.nonabelian_cores);
    }

    /// Distinct `(S, Z)` pairs among the nonabelian cores, sorted.
    pub fn distinct_nonabelian(&self) -> Vec<(RootSet, RootSet)> {
        let set: BTreeSet<(Vec<usize>, Vec<usize>)> = self
            .nonabelian_cores
            .iter()
            .map(|c| (c.s.to_vec(), c.z.to_vec()))
            .collect();
        set.into_iter()
            .map(|(s, z)| (RootSet::from_indices(s), RootSet::from_indices(z)))
            .collect()
    }
}

/// The set `R(S)` of reduction pairs `(β, δ)`: `δ + β = γ ∈ Z`, `β` is not a sum of
/// two roots of `S`, and `δ + α ∉ S` for every `α ∈ S ∖ {β}`.
pub fn reduction_pairs(rs: &RootSystem, s: RootSet, z: RootSet) -> Vec<(usize, usize)> {
    let sums = internal_sums(rs, s);
    let mut out = Vec::new();
    for g in z.iter() {
        for d in s.without(g).iter() {
            for b in rs.addable(d).inter(s).iter() {
                if rs.root_sum(d, b) != Some(g) || b == g || sums.contains(b) {
                    continue;
                }
                let blocked = rs
                    .addable(d)
                    .inter(s.without(b))
                    .iter()
                    .any(|a| s.contains(rs.root_sum(d, a).unwrap()));
                if !blocked {
                    out.push((b, d));
                }
            }
        }
    }
    out
}

/// Chooses `δ` maximal in the root order and then `β` minimal.
pub fn select_pair(pairs: &[(usize, usize)]) -> Option<(usize, usize)> {
    let dmax = pairs.iter().map(|p| p.1).max()?;
    let bmin = pairs.iter().filter(|p| p.1 == dmax).map(|p| p.0).min()?;
    Some((bmin, dmax))
}

struct Node {
    s: RootSet,
    z: RootSet,
    a: RootSet,
    l: RootSet,
    k: RootSet,
    d: Vec<(usize, bool)>,
    path: Vec<bool>,
}

/// Runs the reduction on the standard quattern of `sigma`.
pub fn reduce_standard_quattern(rs: &RootSystem, sigma: RootSet) -> Result<ReductionOutcome, PosetError> {
    let q = standard_quattern(rs, sigma)?;
    Ok(reduce_quattern(rs, sigma, q.s, sigma))
}

/// Runs the reduction from an arbitrary starting pair `(S, Z)` with `Z ⊆ Z(S)`.
pub fn reduce_quattern(rs: &RootSystem, origin: RootSet, s: RootSet, z: RootSet) -> ReductionOutcome {
    let mut out = ReductionOutcome::default();
    let mut stack = vec![Node {
        s,
        z,
        a: RootSet::EMPTY,
        l: RootSet::EMPTY,
        k: RootSet::EMPTY,
        d: Vec::new(),
        path: Vec::new(),
    }];
    while let Some(mut node) = stack.pop() {
        let dn = direct_factor_roots(rs, node.s);
        if !dn.is_empty() {
            node.d.extend(dn.iter().map(|g| (g, node.z.contains(g))));
            node.s = node.s.minus(dn);
            node.z = node.z.minus(dn);
        }
        let zs = center(rs, node.s);
        let finish = |node: Node| Core {
            origin,
            s: node.s,
            z: node.z,
            a: node.a,
            l: node.l,
            k: node.k,
            d_split: node.d,
            path: node.path,
        };
        if zs == node.s {
            out.abelian_cores.push(finish(node));
            continue;
        }
        let pairs = reduction_pairs(rs, node.s, node.z);
        if let Some((b, d)) = select_pair(&pairs) {
            node.s = node.s.without(b).without(d);
            node.a.insert(b);
            node.l.insert(d);
            node.k.insert(d);
            stack.push(node);
            continue;
        }
        if let Some(g) = zs.minus(node.z).max() {
            let mut zpath = node.path.clone();
            zpath.push(true);
            let mut kpath = node.path;
            kpath.push(false);
            stack.push(Node {
                s: node.s,
                z: node.z.with(g),
                a: node.a,
                l: node.l,
                k: node.k,
                d: node.d.clone(),
                path: zpath,
            });
            stack.push(Node {
                s: node.s.without(g),
                z: node.z,
                a: node.a,
                l: node.l,
                k: node.k.with(g),
                d: node.d,
                path: kpath,
            });
            continue;
        }
        out.nonabelian_cores.push(finish(node));
    }
    out
}

/// Reduction over every antichain, concatenated in antichain order.
pub fn enumerate_cores(rs: &RootSystem) -> ReductionOutcome {
    let mut out = ReductionOutcome::default();
    for sigma in crate::posetkit::antichains(rs) {
        out.extend(reduce_quattern(rs, sigma, standard_s(rs, sigma), sigma));
    }
    out
}

/// `S_Σ` for an antichain already known to be valid.
pub fn standard_s(rs: &RootSystem, sigma: RootSet) -> RootSet {
    sigma.iter().fold(RootSet::EMPTY, |acc, g| acc.union(rs.below(g)))
}

/// Checks that `S ⊔ A ⊔ K ⊔ D` partitions `S_Σ`, `|A| = |L|`, `L ⊆ K` and `Z ⊆ Z(S)`.
pub fn check_conservation(rs: &RootSystem, core: &Core) -> bool {
    let ss = standard_s(rs, core.origin);
    let d = core.d_roots();
    let parts = [core.s, core.a, core.k, d];
    let mut union = RootSet::EMPTY;
    let mut total = 0;
    for p in parts {
        union = union.union(p);
        total += p.len();
    }
    union == ss
        && total == ss.len()
        && d.len() == core.d_split.len()
        && core.a.len() == core.l.len()
        && core.l.is_subset(core.k)
        && core.z.is_subset(center(rs, core.s))
}
