//! Core forms, the `Z`-connectivity graph of a core, its circles and heart,
//! and the arm/leg construction `(I, J)` with its hypothesis check.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::fmt::Write;

use crate::posetkit::{center, is_quattern};
use crate::rootset::RootSet;
use crate::rootsys::RootSystem;

/// The form `[z, m, c]` of a core: `|Z|`, `|S|` and the number of sum triples inside `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoreForm {
    pub z: usize,
    pub m: usize,
    pub c: usize,
}

impl fmt::Display for CoreForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.z, self.m, self.c)
    }
}

impl CoreForm {
    /// Parses `[z,m,c]` (brackets optional).
    pub fn parse(s: &str) -> Option<CoreForm> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut it = t.split(',').map(|x| x.trim().parse::<usize>());
        let z = it.next()?.ok()?;
        let m = it.next()?.ok()?;
        let c = it.next()?.ok()?;
        if it.next().is_some() {
            return None;
        }
        Some(CoreForm { z, m, c })
    }
}

/// The form of `(S, Z)`.
pub fn form(rs: &RootSystem, s: RootSet, z: RootSet) -> CoreForm {
    CoreForm { z: z.len(), m: s.len(), c: sum_triples_in(rs, s).len() }
}

/// Triples `(i, j, k)` with `i < j`, `α_i + α_j = α_k` and all three in `S`.
pub fn sum_triples_in(rs: &RootSystem, s: RootSet) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in s.iter() {
        for j in rs.addable(i).inter(s).iter() {
            if j > i {
                let k = rs.root_sum(i, j).unwrap();
                if s.contains(k) {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// A simple cycle of length at least 3, stored from its smallest vertex in
/// the direction of the smaller neighbour.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circle {
    pub seq: Vec<usize>,
}

impl Circle {
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn vertices(&self) -> RootSet {
        self.seq.iter().copied().collect()
    }

    /// The two neighbours of `v` on the circle.
    pub fn neighbours(&self, v: usize) -> Option<(usize, usize)> {
        let n = self.seq.len();
        let i = self.seq.iter().position(|&x| x == v)?;
        Some((self.seq[(i + n - 1) % n], self.seq[(i + 1) % n]))
    }

    /// Walks the circle starting at `start` and continuing through `next`.
    pub fn walk(&self, start: usize, next: usize) -> Vec<usize> {
        let n = self.seq.len();
        let i = self.seq.iter().position(|&x| x == start).expect("start on circle");
        let forward = self.seq[(i + 1) % n] == next;
        (0..n)
            .map(|k| if forward { self.seq[(i + k) % n] } else { self.seq[(i + n - k) % n] })
            .collect()
    }
}

/// The `Z`-connectivity graph of a core.
#[derive(Clone, Debug)]
pub struct CoreGraph {
    pub s: RootSet,
    pub z: RootSet,
    pub vertices: RootSet,
    /// Edges `(α, β, γ)` with `α < β` and `α + β = γ ∈ Z`.
    pub edges: Vec<(usize, usize, usize)>,
    adj: Vec<RootSet>,
}

impl CoreGraph {
    pub fn new(rs: &RootSystem, s: RootSet, z: RootSet) -> CoreGraph {
        let vertices = s.minus(z);
        let mut adj = vec![RootSet::EMPTY; rs.len()];
        let mut edges = Vec::new();
        for a in vertices.iter() {
            for b in rs.addable(a).inter(vertices).iter() {
                let g = rs.root_sum(a, b).unwrap();
                if z.contains(g) {
                    adj[a].insert(b);
                    if a < b {
                        edges.push((a, b, g));
                    }
                }
            }
        }
        CoreGraph { s, z, vertices, edges, adj }
    }

    pub fn neighbours(&self, v: usize) -> RootSet {
        self.adj[v]
    }

    /// Isolated vertices.
    pub fn heart(&self) -> RootSet {
        self.vertices.iter().filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Connected components, each listed by vertex set, ordered by smallest vertex.
    pub fn components(&self) -> Vec<RootSet> {
        let mut seen = RootSet::EMPTY;
        let mut out = Vec::new();
        for v in self.vertices.iter() {
            if seen.contains(v) {
                continue;
            }
            let mut comp = RootSet::single(v);
            let mut frontier = RootSet::single(v);
            while !frontier.is_empty() {
                let mut next = RootSet::EMPTY;
                for u in frontier.iter() {
                    next = next.union(self.adj[u]);
                }
                frontier = next.minus(comp);
                comp = comp.union(next);
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// All simple cycles, in the canonical processing order: even length
    /// before odd, longer before shorter, then the circle containing the
    /// smallest root of the symmetric difference first.
    pub fn circles(&self) -> Vec<Circle> {
        let mut out = Vec::new();
        for start in self.vertices.iter() {
            let mut path = vec![start];
            self.extend_cycles(start, &mut path, RootSet::single(start), &mut out);
        }
        out.sort_by(circle_order);
        out
    }

    fn extend_cycles(&self, start: usize, path: &mut Vec<usize>, on_path: RootSet, out: &mut Vec<Circle>) {
        let last = *path.last().unwrap();
        for w in self.adj[last].iter() {
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(Circle { seq: path.clone() });
            }
            if w > start && !on_path.contains(w) {
                path.push(w);
                self.extend_cycles(start, path, on_path.with(w), out);
                path.pop();
            }
        }
    }

    /// Vertices lying on at least one circle.
    pub fn circle_vertices(&self) -> RootSet {
        self.circles().iter().fold(RootSet::EMPTY, |acc, c| acc.union(c.vertices()))
    }

    /// Vertices lying on no circle; contains the heart.
    pub fn off_circle(&self) -> RootSet {
        self.vertices.minus(self.circle_vertices())
    }

    /// Graph description in the DOT language, with 1-based root labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{name}\" {{");
        for v in self.vertices.iter() {
            let _ = writeln!(s, "  a{};", v + 1);
        }
        for &(a, b, g) in &self.edges {
            let _ = writeln!(s, "  a{} -- a{} [label=\"{}\"];", a + 1, b + 1, g + 1);
        }
        s.push_str("}\n");
        s
    }
}

fn circle_order(a: &Circle, b: &Circle) -> Ordering {
    let parity = |c: &Circle| c.len() % 2;
    parity(a)
        .cmp(&parity(b))
        .then(b.len().cmp(&a.len()))
        .then_with(|| {
            let (va, vb) = (a.vertices(), b.vertices());
            match (va.minus(vb).min(), vb.minus(va).min()) {
                (Some(x), Some(y)) => x.cmp(&y),
                _ => Ordering::Equal,
            }
        })
        .then_with(|| a.seq.cmp(&b.seq))
}

/// Splits a walk into odd positions (1st, 3rd, ...) and even positions.
fn alternate(walk: &[usize]) -> (RootSet, RootSet) {
    let mut odd = RootSet::EMPTY;
    let mut even = RootSet::EMPTY;
    for (k, &v) in walk.iter().enumerate() {
        if k % 2 == 0 {
            odd.insert(v);
        } else {
            even.insert(v);
        }
    }
    (odd, even)
}

/// Direction taken from the minimal root of a circle in the base construction.
///
/// The direction only matters for odd circles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BaseDirection {
    /// Continue towards the larger neighbour.
    #[default]
    MaxNeighbour,
    /// Continue towards the smaller neighbour.
    MinNeighbour,
}

/// Base construction on one circle: start at its minimum, continue to the
/// chosen neighbour, odd positions go to `I` and even positions to `J`.
fn base_split(c: &Circle, dir: BaseDirection) -> (RootSet, RootSet) {
    let d1 = *c.seq.iter().min().unwrap();
    let (x, y) = c.neighbours(d1).unwrap();
    let next = match dir {
        BaseDirection::MaxNeighbour => x.max(y),
        BaseDirection::MinNeighbour => x.min(y),
    };
    alternate(&c.walk(d1, next))
}

/// The arm `I` and leg `J` of a core, built circle by circle.
pub fn arm_leg(graph: &CoreGraph) -> (RootSet, RootSet) {
    arm_leg_with(graph, BaseDirection::default())
}

/// [`arm_leg`] with an explicit base direction.
pub fn arm_leg_with(graph: &CoreGraph, dir: BaseDirection) -> (RootSet, RootSet) {
    let mut i_set = RootSet::EMPTY;
    let mut j_set = RootSet::EMPTY;
    for (k, c) in graph.circles().iter().enumerate() {
        let v = c.vertices();
        let (ic, jc) = if k == 0 || !v.inter(i_set).is_empty() || v.inter(j_set).is_empty() {
            base_split(c, dir)
        } else {
            let d1 = v.inter(j_set).max().unwrap();
            let (x, y) = c.neighbours(d1).unwrap();
            let walk = c.walk(d1, x.min(y));
            let (mut jc, mut ic) = alternate(&walk);
            if walk.len() % 2 == 1 {
                let last = *walk.last().unwrap();
                jc.remove(last);
                ic.insert(last);
            }
            (ic, jc)
        };
        i_set = i_set.union(ic);
        j_set = j_set.union(jc).minus(i_set);
    }
    (i_set, j_set)
}

/// Outcome of checking the reduction-lemma hypotheses for `(S, Z, I, J)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorPlusReport {
    /// `S ∖ I` is a quattern.
    pub quattern: bool,
    /// `Z ⊆ Z(S)`.
    pub z_central: bool,
    /// `J ⊆ Z(S ∖ I)`.
    pub j_central: bool,
    /// `J ∩ Z = ∅`.
    pub j_disjoint: bool,
    /// `α ∈ I`, `β ∈ J`, `α + β ∈ S` imply `α + β ∈ Z`.
    pub sums_in_z: bool,
}

impl CorPlusReport {
    pub fn holds(&self) -> bool {
        self.quattern && self.z_central && self.j_central && self.j_disjoint && self.sums_in_z
    }

    /// Names of the failing conditions.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.quattern {
            out.push("S∖I is not a quattern");
        }
        if !self.z_central {
            out.push("Z ⊄ Z(S)");
        }
        if !self.j_central {
            out.push("J ⊄ Z(S∖I)");
        }
        if !self.j_disjoint {
            out.push("J ∩ Z ≠ ∅");
        }
        if !self.sums_in_z {
            out.push("some α∈I, β∈J has α+β ∈ S∖Z");
        }
        out
    }
}

/// Checks the reduction-lemma hypotheses.
pub fn check_corplus(rs: &RootSystem, s: RootSet, z: RootSet, i: RootSet, j: RootSet) -> CorPlusReport {
    let rest = s.minus(i);
    let sums_in_z = i.iter().all(|a| {
        rs.addable(a)
            .inter(j)
            .iter()
            .all(|b| rs.root_sum(a, b).is_none_or(|g| !s.contains(g) || z.contains(g)))
    });
    CorPlusReport {
        quattern: is_quattern(rs, rest),
        z_central: z.is_subset(center(rs, s)),
        j_central: j.is_subset(center(rs, rest)),
        j_disjoint: j.is_disjoint(z),
        sums_in_z,
    }
}

/// Histogram of forms over distinct `(S, Z)` pairs.
pub fn form_histogram(rs: &RootSystem, cores: &[(RootSet, RootSet)]) -> Vec<(CoreForm, usize)> {
    let mut seen = BTreeSet::new();
    let mut hist: alloc::collections::BTreeMap<CoreForm, usize> = Default::default();
    for &(s, z) in cores {
        if seen.insert((s.0, z.0)) {
            *hist.entry(form(rs, s, z)).or_insert(0) += 1;
        }
    }
    hist.into_iter().collect()
}
