//! Isomorphism testing of quattern groups of simply laced cores.
//!
//! A candidate isomorphism is a bijection `ρ: S → S'` determined by its
//! values on the first local height layer and extended through
//! `ρ(α + β) = ρ(α) + ρ(β)`. It must preserve exactly which pairs have their
//! sum in the quattern. The root-wise scalar twists `ε` are then obtained by
//! solving the linear system `ε_{α+β} = ε_α ε_β N_{αβ} N'_{ρα,ρβ}` over `F_2`;
//! at `p = 2` every sign is `+1`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::coregraph::{form, CoreForm};
use crate::groupcore::{verify_root_map_isomorphism, QuatternGroup};
use crate::rootset::RootSet;
use crate::rootsys::RootSystem;

/// Layers `[S_1, ..., S_d]` of the lower central series of `X_S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalHeightPartition {
    pub layers: Vec<RootSet>,
}

impl LocalHeightPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.len()).collect()
    }

    /// Nilpotency class.
    pub fn class(&self) -> usize {
        self.layers.len()
    }

    /// Layer index (0-based) of a root of `S`.
    pub fn layer_of(&self, root: usize) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(root))
    }
}

/// Local heights from iterated root sums.
pub fn local_heights(rs: &RootSystem, s: RootSet) -> LocalHeightPartition {
    let mut members = vec![s];
    loop {
        let prev = *members.last().unwrap();
        let mut next = RootSet::EMPTY;
        for a in s.iter() {
            for b in rs.addable(a).inter(prev).iter() {
                let g = rs.root_sum(a, b).unwrap();
                if s.contains(g) {
                    next.insert(g);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        members.push(next);
    }
    let mut layers = Vec::with_capacity(members.len());
    for k in 0..members.len() {
        let below = members.get(k + 1).copied().unwrap_or(RootSet::EMPTY);
        layers.push(members[k].minus(below));
    }
    LocalHeightPartition { layers }
}

/// A root bijection `ρ: S → S'` with scalar twists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    /// `(α, ρ(α), ε_α)` for every `α ∈ S`, in increasing `α`.
    pub map: Vec<(usize, usize, i8)>,
    /// True iff the twists on the first layer are all `+1`.
    pub base_all_plus: bool,
}

impl IsoWitness {
    pub fn rho(&self, a: usize) -> Option<usize> {
        self.map.iter().find(|m| m.0 == a).map(|m| m.1)
    }
}

/// Result of an isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(IsoWitness),
    /// The complete search found no compatible root bijection.
    NoWitness,
    /// The node cap was reached before the search finished.
    Inconclusive,
}

/// Search configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoConfig {
    pub node_cap: u64,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig { node_cap: 10_000_000 }
    }
}

struct Side<'a> {
    rs: &'a RootSystem,
    s: RootSet,
    layers: LocalHeightPartition,
    /// For each root of `S`, the sorted profile of layers reached by adding roots of `S`.
    profile: BTreeMap<usize, Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(rs: &'a RootSystem, s: RootSet) -> Side<'a> {
        let layers = local_heights(rs, s);
        let mut profile = BTreeMap::new();
        for a in s.iter() {
            let mut p: Vec<usize> = rs
                .addable(a)
                .inter(s)
                .iter()
                .filter_map(|b| rs.root_sum(a, b).filter(|g| s.contains(*g)))
                .map(|g| layers.layer_of(g).unwrap())
                .collect();
            p.sort_unstable();
            p.push(usize::MAX - layers.layer_of(a).unwrap());
            profile.insert(a, p);
        }
        Side { rs, s, layers, profile }
    }

    fn sum_in(&self, a: usize, b: usize) -> Option<usize> {
        self.rs.root_sum(a, b).filter(|g| self.s.contains(*g))
    }
}

/// Searches for an isomorphism `X_S → X_{S'}` at characteristic `p`.
pub fn try_isomorphism(
    rs1: &RootSystem,
    s1: RootSet,
    rs2: &RootSystem,
    s2: RootSet,
    p: u32,
    config: IsoConfig,
) -> IsoOutcome {
    let a = Side::new(rs1, s1);
    let b = Side::new(rs2, s2);
    if a.layers.sizes() != b.layers.sizes() {
        return IsoOutcome::NoWitness;
    }
    let mut prof_a: Vec<&Vec<usize>> = a.profile.values().collect();
    let mut prof_b: Vec<&Vec<usize>> = b.profile.values().collect();
    prof_a.sort();
    prof_b.sort();
    if prof_a != prof_b {
        return IsoOutcome::NoWitness;
    }
    let base: Vec<usize> = a.layers.layers[0].to_vec();
    // First look for a bijection whose first-layer twists are all +1, then allow any twists.
    let passes: &[bool] = if p == 2 { &[true] } else { &[true, false] };
    let mut capped = false;
    for &base_plus_only in passes {
        let mut search = Search {
            a: &a,
            b: &b,
            base: base.clone(),
            p,
            rho: vec![usize::MAX; rs1.len()],
            used: RootSet::EMPTY,
            nodes: 0,
            cap: config.node_cap,
            capped: false,
            trail: Vec::new(),
            base_plus_only,
        };
        if let Some(w) = search.rec(0) {
            return IsoOutcome::Isomorphic(w);
        }
        capped |= search.capped;
    }
    if capped {
        IsoOutcome::Inconclusive
    } else {
        IsoOutcome::NoWitness
    }
}

struct Search<'a, 'b> {
    a: &'b Side<'a>,
    b: &'b Side<'a>,
    base: Vec<usize>,
    p: u32,
    rho: Vec<usize>,
    used: RootSet,
    nodes: u64,
    cap: u64,
    capped: bool,
    trail: Vec<usize>,
    base_plus_only: bool,
}

impl Search<'_, '_> {
    fn rec(&mut self, depth: usize) -> Option<IsoWitness> {
        if depth == self.base.len() {
            return self.complete();
        }
        let x = self.base[depth];
        let targets = self.b.layers.layers[0].minus(self.used);
        for y in targets.iter() {
            self.nodes += 1;
            if self.nodes > self.cap {
                self.capped = true;
                return None;
            }
            if self.a.profile[&x] != self.b.profile[&y] || !self.compatible(depth, x, y) {
                continue;
            }
            self.rho[x] = y;
            self.used.insert(y);
            let mark = self.trail.len();
            if self.propagate(depth, x, y) {
                if let Some(w) = self.rec(depth + 1) {
                    return Some(w);
                }
            }
            for d in self.trail.drain(mark..) {
                self.used.remove(self.rho[d]);
                self.rho[d] = usize::MAX;
            }
            self.used.remove(y);
            self.rho[x] = usize::MAX;
            if self.capped {
                return None;
            }
        }
        None
    }

    /// Pairwise test against the already assigned first-layer roots.
    fn compatible(&self, depth: usize, x: usize, y: usize) -> bool {
        for &u in &self.base[..depth] {
            let v = self.rho[u];
            let sa = self.a.sum_in(x, u).map(|g| self.a.layers.layer_of(g));
            let sb = self.b.sum_in(y, v).map(|g| self.b.layers.layer_of(g));
            if sa != sb {
                return false;
            }
        }
        true
    }

    /// Fixes `ρ(x + u) = y + ρ(u)` for assigned first-layer roots `u`,
    /// recording new values on the trail.
    fn propagate(&mut self, depth: usize, x: usize, y: usize) -> bool {
        for i in 0..depth {
            let u = self.base[i];
            let Some(g) = self.a.sum_in(x, u) else { continue };
            let h = self.b.sum_in(y, self.rho[u]).expect("checked by compatible");
            if self.rho[g] == h {
                continue;
            }
            if self.rho[g] != usize::MAX || self.used.contains(h) {
                return false;
            }
            self.rho[g] = h;
            self.used.insert(h);
            self.trail.push(g);
        }
        true
    }

    /// Extends `ρ` to all layers and solves for the signs.
    fn complete(&mut self) -> Option<IsoWitness> {
        let mut rho = self.rho.clone();
        let mut image = self.used;
        for k in 1..self.a.layers.class() {
            for d in self.a.layers.layers[k].iter() {
                if rho[d] != usize::MAX {
                    continue;
                }
                let mut val = None;
                for u in self.a.s.iter().filter(|&u| rho[u] != usize::MAX) {
                    if let Some(v) = self.a.rs.addable(u).iter().find(|&v| {
                        rho[v] != usize::MAX && self.a.rs.root_sum(u, v) == Some(d)
                    }) {
                        val = Some((u, v));
                        break;
                    }
                }
                let (u, v) = val?;
                let t = self.b.sum_in(rho[u], rho[v])?;
                if image.contains(t) || self.b.layers.layer_of(t) != Some(k) {
                    return None;
                }
                rho[d] = t;
                image.insert(t);
            }
        }
        if image != self.b.s {
            return None;
        }
        let roots = self.a.s.to_vec();
        let mut triples = Vec::new();
        for (i, &u) in roots.iter().enumerate() {
            for &v in &roots[i + 1..] {
                let sa = self.a.sum_in(u, v);
                let sb = self.b.sum_in(rho[u], rho[v]);
                match (sa, sb) {
                    (None, None) => {}
                    (Some(g), Some(h)) if rho[g] == h => triples.push((u, v, g)),
                    _ => return None,
                }
            }
        }
        let (signs, base_all_plus) = if self.p == 2 {
            (vec![0u8; self.a.rs.len()], true)
        } else {
            self.solve_signs(&roots, &rho, &triples)?
        };
        Some(IsoWitness {
            map: roots.iter().map(|&u| (u, rho[u], if signs[u] == 0 { 1 } else { -1 })).collect(),
            base_all_plus,
        })
    }

    fn solve_signs(&self, roots: &[usize], rho: &[usize], triples: &[(usize, usize, usize)]) -> Option<(Vec<u8>, bool)> {
        let idx: BTreeMap<usize, usize> = roots.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let bit = |s: i8| (s < 0) as u8;
        let rows: Vec<(u128, u8)> = triples
            .iter()
            .map(|&(u, v, g)| {
                let n1 = self.a.rs.sign(u, v).expect("simply laced");
                let n2 = self.b.rs.sign(rho[u], rho[v]).expect("simply laced");
                let mask = (1u128 << idx[&u]) ^ (1u128 << idx[&v]) ^ (1u128 << idx[&g]);
                (mask, bit(n1) ^ bit(n2))
            })
            .collect();
        let mut fixed = rows.clone();
        for &r in &self.base {
            fixed.push((1u128 << idx[&r], 0));
        }
        let (sol, all_plus) = match solve_gf2(&fixed, roots.len()) {
            Some(s) => (s, true),
            None if self.base_plus_only => return None,
            None => (solve_gf2(&rows, roots.len())?, false),
        };
        let mut signs = vec![0u8; self.a.rs.len()];
        for (i, &r) in roots.iter().enumerate() {
            signs[r] = (sol >> i & 1) as u8;
        }
        Some((signs, all_plus))
    }
}

/// Solves a linear system over `F_2` given as rows `(mask, rhs)`.
fn solve_gf2(rows: &[(u128, u8)], n: usize) -> Option<u128> {
    let mut rows = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i].0 >> col & 1 == 1) else {
            continue;
        };
        rows.swap(r, piv);
        let (pm, pb) = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0 >> col & 1 == 1 {
                row.0 ^= pm;
                row.1 ^= pb;
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if rows[r..].iter().any(|row| row.1 == 1) {
        return None;
    }
    let mut sol = 0u128;
    for (row, col) in pivots {
        if rows[row].1 == 1 {
            sol |= 1u128 << col;
        }
    }
    Some(sol)
}

/// Checks a witness `X_{S1} → X_{S2}` by the relations of the group at `q`.
pub fn verify_witness(rs1: &RootSystem, s1: RootSet, rs2: &RootSystem, s2: RootSet, q: u32, w: &IsoWitness) -> bool {
    let (Ok(g1), Ok(g2)) = (QuatternGroup::new(rs1, q, s1), QuatternGroup::new(rs2, q, s2)) else {
        return false;
    };
    let mut map = Vec::with_capacity(w.map.len());
    for &(a, b, e) in &w.map {
        match (g1.local_pos(a), g2.local_pos(b)) {
            (Some(i), Some(j)) if i == map.len() => map.push((j, e)),
            _ => return false,
        }
    }
    verify_root_map_isomorphism(&g1, &g2, &map)
}

/// One isomorphism class of cores.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    pub form: CoreForm,
    pub layer_sizes: Vec<usize>,
    /// Indices into the input list; the first is the representative.
    pub members: Vec<usize>,
    /// Witnesses from the representative to each later member.
    pub witnesses: Vec<IsoWitness>,
    /// True iff some comparison against this class was inconclusive.
    pub inconclusive: bool,
}

/// Partitions cores `(S, Z)` of one root system into isomorphism classes at characteristic `p`.
pub fn classify(rs: &RootSystem, cores: &[(RootSet, RootSet)], p: u32, config: IsoConfig) -> Vec<IsoClass> {
    let mut classes: Vec<IsoClass> = Vec::new();
    for (i, &(s, z)) in cores.iter().enumerate() {
        let fm = form(rs, s, z);
        let sizes = local_heights(rs, s).sizes();
        let mut placed = false;
        for class in classes.iter_mut().filter(|c| c.form == fm && c.layer_sizes == sizes) {
            let rep = cores[class.members[0]].0;
            match try_isomorphism(rs, rep, rs, s, p, config) {
                IsoOutcome::Isomorphic(w) => {
                    class.members.push(i);
                    class.witnesses.push(w);
                    placed = true;
                    break;
                }
                IsoOutcome::Inconclusive => class.inconclusive = true,
                IsoOutcome::NoWitness => {}
            }
        }
        if !placed {
            classes.push(IsoClass {
                form: fm,
                layer_sizes: sizes,
                members: vec![i],
                witnesses: Vec::new(),
                inconclusive: false,
            });
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    #[test]
    fn gf2_solver() {
        // x0 + x1 = 1, x1 + x2 = 0, x0 = 0.
        let rows = [(0b011, 1), (0b110, 0), (0b001, 0)];
        assert_eq!(solve_gf2(&rows, 3), Some(0b110));
        assert_eq!(solve_gf2(&[(0b1, 1), (0b1, 0)], 1), None);
    }

    #[test]
    fn a3_local_heights() {
        let rs = RootSystem::build(CartanType::parse("A3").unwrap());
        assert_eq!(local_heights(&rs, rs.all()).sizes(), vec![3, 2, 1]);
        let s = RootSet::from_labels([1, 2]);
        assert_eq!(local_heights(&rs, s).sizes(), vec![2]);
    }

    #[test]
    fn self_isomorphism_is_identity_like() {
        let rs = RootSystem::build(CartanType::parse("D4").unwrap());
        for p in [2, 3] {
            match try_isomorphism(&rs, rs.all(), &rs, rs.all(), p, IsoConfig::default()) {
                IsoOutcome::Isomorphic(w) => assert!(w.base_all_plus),
                other => panic!("{other:?}"),
            }
        }
    }
}
