//! Degree spectra of `Irr(X_S)_Z` at a fixed `q` by iterated Clifford steps.
//!
//! For a central character `λ` of `X_Z` the engine keeps a subgroup `V` of
//! `X_S`, a normal subgroup `N ⊴ V` carrying a `V`-invariant linear character
//! `μ` extending `λ`, and an accumulated degree factor. Both subgroups are
//! stored by induced polycyclic generating sequences over `F_p`. A step picks
//! `y ∈ V ∖ N` with `[y, V] ⊆ N` and reads the homomorphism
//! `φ(v) = μ([y, v])`:
//!
//! * if `φ` is trivial, `μ` has `p` extensions to `⟨N, y⟩`, all `V`-invariant,
//!   and the state branches;
//! * otherwise `V` is replaced by `ker φ`, `μ` by one extension to `⟨N, y⟩`,
//!   and the degree is multiplied by `p` (the extensions form one `V`-orbit).
//!
//! When `V / ker μ` is abelian the state contributes `|V : N|` characters of
//! the current degree. The first steps can be driven by the leg `J` of the
//! core (the reduction lemma), and the remaining ones use the deepest
//! generator of `V` outside `N`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coregraph::{arm_leg, check_corplus, CoreForm, CoreGraph};
use crate::field::Field;
use crate::groupcore::{Coords, DixonBounds, GroupError, QuatternGroup, Spectrum};
use crate::posetkit::center;
use crate::rootset::RootSet;
use crate::rootsys::RootSystem;
use crate::tabulate::{family_spectrum_at, FamilyRecord, TabulateError};

/// Errors of the resolver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolveError {
    Group(GroupError),
    /// A hypothesis of a reduction step failed on the concrete state.
    Hypothesis(&'static str),
    /// An enumeration exceeded its bound.
    TooLarge { size: u128, bound: u128 },
    /// The node budget was exhausted.
    Budget,
    /// The mass identity failed on a slice.
    Mass { got: u128, expected: u128 },
}

impl fmt::Display for ResolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolveError::Group(e) => write!(f, "{e}"),
            ResolveError::Hypothesis(s) => write!(f, "reduction hypothesis failed: {s}"),
            ResolveError::TooLarge { size, bound } => write!(f, "enumeration of size {size} exceeds bound {bound}"),
            ResolveError::Budget => write!(f, "node budget exhausted"),
            ResolveError::Mass { got, expected } => write!(f, "slice mass {got} differs from {expected}"),
        }
    }
}

impl core::error::Error for ResolveError {}

impl From<GroupError> for ResolveError {
    fn from(e: GroupError) -> Self {
        ResolveError::Group(e)
    }
}

/// A one-parameter set `{x_{i_1}(c_1 t) ⋯ x_{i_m}(c_m t) : t ∈ F_q}` over local positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedRootGroup {
    pub parts: Vec<(usize, u32)>,
}

impl GeneralizedRootGroup {
    pub fn element(&self, g: &QuatternGroup, t: u32) -> Coords {
        g.generalized_root_element(&self.parts, t)
    }

    /// True iff the underlying roots pairwise commute inside `S`, so the set is a group.
    pub fn is_group(&self, rs: &RootSystem, g: &QuatternGroup) -> bool {
        self.parts.iter().all(|&(a, _)| {
            self.parts
                .iter()
                .all(|&(b, _)| rs.root_sum(g.roots[a], g.roots[b]).is_none_or(|c| !g.s.contains(c)))
        })
    }
}

/// Where a spectrum came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Resolver,
    Dixon,
    /// Some slices by the resolver and some by the oracle.
    Mixed,
    BundledData,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Resolver => "resolver",
            Provenance::Dixon => "dixon",
            Provenance::Mixed => "mixed",
            Provenance::BundledData => "bundled-family-data",
        }
    }
}

/// A slice that could not be resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unresolved {
    /// The `a`-parameters of `λ` on `Z`, in increasing root order.
    pub lambda: Vec<u32>,
    pub reason: String,
}

/// The degree spectrum contributed by a core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpectrum {
    pub spectrum: Spectrum,
    pub provenance: Provenance,
    pub unresolved: Vec<Unresolved>,
    pub stats: ResolveStats,
}

impl FamilySpectrum {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Counters describing the run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ResolveStats {
    pub slices: u64,
    pub nodes: u64,
    pub leaves: u64,
    pub dixon_slices: u64,
    /// Whether the leg of the core drove the first steps.
    pub used_arm_leg: bool,
}

/// Resolver configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolverConfig {
    /// Maximal number of steps per slice before falling back to the oracle.
    pub node_budget: u64,
    pub dixon: DixonBounds,
    /// Start with the leg `J` of the arm/leg construction when its hypotheses hold.
    pub use_arm_leg: bool,
    /// Bound on `q^{|I|}` and `q^{|J|}` in [`compute_primes`].
    pub enumeration_bound: u128,
}

impl Default for ResolverConfig {
    fn default() -> Self {
        ResolverConfig {
            node_budget: 2_000_000,
            dixon: DixonBounds::default(),
            use_arm_leg: true,
            enumeration_bound: 1 << 24,
        }
    }
}

/// Exponent `E` of the cyclic group `Z/p^E` holding values of `μ`.
fn value_exponent(p: u32) -> u32 {
    match p {
        2 => 60,
        3 => 37,
        5 => 25,
        _ => 21,
    }
}

/// A state of the Clifford recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolverState {
    /// Induced pcgs of `V`, sorted by depth, leading digit 1.
    pub v: Vec<Coords>,
    /// Induced pcgs of `N` with the values of `μ` in `Z/p^E`.
    pub n: Vec<(Coords, u64)>,
    /// `log_p` of the degree factor.
    pub degree_log: u32,
}

/// Outcome of one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    /// `V / ker μ` is abelian: `count` characters of degree `p^{degree_log}`.
    Abelian { degree_log: u32, count: u64 },
    /// `V = N`: one character.
    Leaf { degree_log: u32 },
    /// `p` successors, one per extension of `μ`.
    Branch(Vec<ResolverState>),
    /// One successor on the kernel of the commutator form, degree multiplied by `p`.
    Induce(ResolverState),
}

/// The Clifford engine over a fixed quattern group.
pub struct Engine<'g> {
    pub g: &'g QuatternGroup,
    p: u32,
    modulus: u64,
    unit: u64,
}

impl<'g> Engine<'g> {
    pub fn new(g: &'g QuatternGroup) -> Engine<'g> {
        let p = g.field.p;
        let e = value_exponent(p);
        let modulus = (p as u64).pow(e);
        Engine { g, p, modulus, unit: modulus / p as u64 }
    }

    fn field(&self) -> &Field {
        &self.g.field
    }

    /// Depth index `pos·f + b` and leading digit of a non-identity element.
    pub fn depth(&self, w: &[u8]) -> Option<(usize, u32)> {
        let f = self.field().f;
        let pos = w.iter().position(|&x| x != 0)?;
        let t = w[pos] as u32;
        let b = (0..f).find(|&b| self.field().digit(t, b) != 0).unwrap();
        Some((pos * f as usize + b as usize, self.field().digit(t, b)))
    }

    fn inv_p(&self, a: u32) -> u32 {
        (1..self.p).find(|&x| x * a % self.p == 1).unwrap()
    }

    fn power(&self, w: &[u8], e: u32) -> Coords {
        self.g.pow(w, e as u64)
    }

    /// Normalises the leading digit to 1.
    fn normalize(&self, w: Coords) -> Coords {
        match self.depth(&w) {
            Some((_, 1)) | None => w,
            Some((_, d)) => self.power(&w, self.inv_p(d)),
        }
    }

    /// `μ(w)` if `w ∈ N`.
    pub fn sift(&self, n: &[(Coords, u64)], w: &[u8]) -> Option<u64> {
        let mut g = w.to_vec();
        let mut acc = 0u64;
        while let Some((d, lead)) = self.depth(&g) {
            let (gen, val) = n.iter().find(|(x, _)| self.depth(x).map(|t| t.0) == Some(d))?;
            let ginv = self.g.inv(gen);
            let step = self.power(&ginv, lead);
            g = self.g.mul(&step, &g);
            acc = (acc + val * lead as u64) % self.modulus;
        }
        Some(acc)
    }

    /// The state `(X_S, X_Z, λ_a)`.
    pub fn initial_state(&self, z_local: &[usize], a: &[u32]) -> ResolverState {
        let f = self.field();
        let mut v = Vec::new();
        let mut n = Vec::new();
        for pos in 0..self.g.rank() {
            for b in 0..f.f {
                let t = f.basis(b);
                let w = self.g.root_element(pos, t);
                if let Some(k) = z_local.iter().position(|&z| z == pos) {
                    let val = f.trace(f.mul(a[k], t)) as u64 * self.unit;
                    n.push((w.clone(), val));
                }
                v.push(w);
            }
        }
        ResolverState { v, n, degree_log: 0 }
    }

    fn n_depths(&self, n: &[(Coords, u64)]) -> Vec<usize> {
        n.iter().map(|(x, _)| self.depth(x).unwrap().0).collect()
    }

    /// The deepest generator of `V` whose depth is not a depth of `N`.
    pub fn deepest_free(&self, st: &ResolverState) -> Option<Coords> {
        let nd = self.n_depths(&st.n);
        st.v.iter()
            .rev()
            .find(|x| !nd.contains(&self.depth(x).unwrap().0))
            .cloned()
    }

    /// True iff every commutator of generators of `V` lies in `ker μ`.
    fn abelian_mod_kernel(&self, st: &ResolverState) -> bool {
        for i in 0..st.v.len() {
            for j in i + 1..st.v.len() {
                let c = self.g.commutator(&st.v[i], &st.v[j]);
                if self.sift(&st.n, &c) != Some(0) {
                    return false;
                }
            }
        }
        true
    }

    fn insert_sorted(&self, list: &mut Vec<(Coords, u64)>, item: (Coords, u64)) {
        let d = self.depth(&item.0).unwrap().0;
        let at = list.iter().position(|(x, _)| self.depth(x).unwrap().0 > d).unwrap_or(list.len());
        list.insert(at, item);
    }

    /// One Clifford step with the given `y ∈ V ∖ N` satisfying `[y, V] ⊆ N`.
    pub fn step(&self, st: &ResolverState, y: &[u8]) -> Result<StepOutcome, ResolveError> {
        let y = self.normalize(y.to_vec());
        let yd = self.depth(&y).ok_or(ResolveError::Hypothesis("y is the identity"))?.0;
        if self.n_depths(&st.n).contains(&yd) {
            return Err(ResolveError::Hypothesis("depth of y already occurs in N"));
        }
        let mut phi = Vec::with_capacity(st.v.len());
        for v in &st.v {
            let c = self.g.commutator(&y, v);
            let val = self.sift(&st.n, &c).ok_or(ResolveError::Hypothesis("[y, V] is not contained in N"))?;
            if val % self.unit != 0 {
                return Err(ResolveError::Hypothesis("φ takes values outside the p-th roots of unity"));
            }
            phi.push((val / self.unit) as u32);
        }
        let ypow = self.power(&y, self.p);
        let ypv = self.sift(&st.n, &ypow).ok_or(ResolveError::Hypothesis("y^p is not contained in N"))?;
        if ypv % self.p as u64 != 0 {
            return Err(ResolveError::Hypothesis("value exponent too small"));
        }
        let omega = ypv / self.p as u64;
        match phi.iter().rposition(|&x| x != 0) {
            None => {
                if self.abelian_mod_kernel(st) {
                    let count = (self.p as u64).pow((st.v.len() - st.n.len()) as u32);
                    return Ok(StepOutcome::Abelian { degree_log: st.degree_log, count });
                }
                let mut out = Vec::with_capacity(self.p as usize);
                for j in 0..self.p as u64 {
                    let mut n = st.n.clone();
                    self.insert_sorted(&mut n, (y.clone(), (omega + j * self.unit) % self.modulus));
                    out.push(ResolverState { v: st.v.clone(), n, degree_log: st.degree_log });
                }
                Ok(StepOutcome::Branch(out))
            }
            Some(k) => {
                let vk = st.v[k].clone();
                let inv_k = self.inv_p(phi[k]);
                let mut v = Vec::with_capacity(st.v.len() - 1);
                for (j, w) in st.v.iter().enumerate() {
                    if j == k {
                        continue;
                    }
                    if phi[j] == 0 {
                        v.push(w.clone());
                    } else {
                        let c = (self.p - phi[j] * inv_k % self.p) % self.p;
                        v.push(self.g.mul(w, &self.power(&vk, c)));
                    }
                }
                let mut n = st.n.clone();
                self.insert_sorted(&mut n, (y, omega));
                Ok(StepOutcome::Induce(ResolverState { v, n, degree_log: st.degree_log + 1 }))
            }
        }
    }

    /// Resolves a state completely with the deepest-generator rule.
    pub fn finish(&self, st: ResolverState, budget: &mut u64, stats: &mut ResolveStats) -> Result<Spectrum, ResolveError> {
        let mut out = Spectrum::default();
        let mut stack = vec![st];
        while let Some(st) = stack.pop() {
            if *budget == 0 {
                return Err(ResolveError::Budget);
            }
            *budget -= 1;
            stats.nodes += 1;
            if st.v.len() == st.n.len() {
                stats.leaves += 1;
                out.add((self.p as u64).pow(st.degree_log), 1);
                continue;
            }
            let y = self.deepest_free(&st).ok_or(ResolveError::Hypothesis("N is not contained in V"))?;
            match self.step(&st, &y)? {
                StepOutcome::Abelian { degree_log, count } => {
                    stats.leaves += 1;
                    out.add((self.p as u64).pow(degree_log), count);
                }
                StepOutcome::Leaf { degree_log } => {
                    stats.leaves += 1;
                    out.add((self.p as u64).pow(degree_log), 1);
                }
                StepOutcome::Branch(next) => stack.extend(next),
                StepOutcome::Induce(next) => stack.push(next),
            }
        }
        Ok(out)
    }

    /// Applies steps with each generator of `Y` in turn, branching where needed.
    ///
    /// Generators already in `N` are skipped. Every successor's degree factor
    /// grows by `|Y : Y'|` for the `Y'` of its branch.
    pub fn reduce_step(&self, st: ResolverState, y_gens: &[Coords]) -> Result<Vec<ResolverState>, ResolveError> {
        let mut current = vec![st];
        for y in y_gens {
            let mut next = Vec::new();
            for st in current {
                if self.sift(&st.n, y).is_some() {
                    next.push(st);
                    continue;
                }
                match self.step(&st, y)? {
                    StepOutcome::Branch(b) => next.extend(b),
                    StepOutcome::Induce(s) => next.push(s),
                    StepOutcome::Abelian { .. } | StepOutcome::Leaf { .. } => next.push(st),
                }
            }
            current = next;
        }
        Ok(current)
    }
}

/// Local positions of a root set inside `g`.
fn local(g: &QuatternGroup, set: RootSet) -> Vec<usize> {
    set.iter().filter_map(|r| g.local_pos(r)).collect()
}

/// The `F_p` basis `x_β(x^b)` of the root subgroups over a set of local positions.
pub fn root_basis(g: &QuatternGroup, positions: &[usize]) -> Vec<Coords> {
    let mut out = Vec::new();
    for &pos in positions {
        for b in 0..g.field.f {
            out.push(g.root_element(pos, g.field.basis(b)));
        }
    }
    out
}

/// `X'` and `Y'` of the reduction lemma for `X = X_I`, `Y = X_J` and `λ_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primes {
    /// Elements of `X'` as coordinate vectors.
    pub x_prime: Vec<Coords>,
    /// Elements of `Y'`.
    pub y_prime: Vec<Coords>,
    /// `|Y|`.
    pub y_order: u64,
}

impl Primes {
    /// `|Y : Y'|`.
    pub fn index(&self) -> u64 {
        self.y_order / self.y_prime.len() as u64
    }
}

/// Evaluates `λ_a` (as an element of `F_p`) on an element supported on `Z`.
fn lambda_value(g: &QuatternGroup, z_local: &[usize], a: &[u32], w: &[u8]) -> Option<u32> {
    let f = &g.field;
    let mut acc = 0;
    for (pos, &t) in w.iter().enumerate() {
        if t == 0 {
            continue;
        }
        let k = z_local.iter().position(|&z| z == pos)?;
        acc = (acc + f.trace(f.mul(a[k], t as u32))) % f.p;
    }
    Some(acc)
}

fn all_products(g: &QuatternGroup, positions: &[usize], bound: u128) -> Result<Vec<Coords>, ResolveError> {
    let q = g.q() as u128;
    let size = q.pow(positions.len() as u32);
    if size > bound {
        return Err(ResolveError::TooLarge { size, bound });
    }
    let mut out = Vec::with_capacity(size as usize);
    for code in 0..size {
        let mut w = g.identity();
        let mut c = code;
        for &pos in positions {
            let t = (c % q) as u32;
            c /= q;
            g.mul_root(&mut w, pos, t);
        }
        out.push(w);
    }
    Ok(out)
}

/// Brute-force `X' = {x ∈ X : λ([x, y]) = 1 ∀ y ∈ Y}` and `Y'` symmetrically,
/// where `X = Π_{α ∈ I} X_α` and `Y = Π_{β ∈ J} X_β`.
pub fn compute_primes(
    rs: &RootSystem,
    g: &QuatternGroup,
    z: RootSet,
    a: &[u32],
    i: RootSet,
    j: RootSet,
    bound: u128,
) -> Result<Primes, ResolveError> {
    let _ = rs;
    let zl = local(g, z);
    let il = local(g, i);
    let jl = local(g, j);
    let xs = all_products(g, &il, bound)?;
    let ys = all_products(g, &jl, bound)?;
    let xb = root_basis(g, &il);
    let yb = root_basis(g, &jl);
    let pairing = |x: &[u8], y: &[u8]| -> Result<u32, ResolveError> {
        lambda_value(g, &zl, a, &g.commutator(x, y)).ok_or(ResolveError::Hypothesis("[X, Y] is not contained in X_Z"))
    };
    let mut x_prime = Vec::new();
    for x in &xs {
        let mut ok = true;
        for y in &yb {
            if pairing(x, y)? != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            x_prime.push(x.clone());
        }
    }
    let mut y_prime = Vec::new();
    for y in &ys {
        let mut ok = true;
        for x in &xb {
            if pairing(x, y)? != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            y_prime.push(y.clone());
        }
    }
    Ok(Primes { x_prime, y_prime, y_order: ys.len() as u64 })
}

/// Resolves one slice `Irr(X_S | λ_a)`.
pub fn resolve_slice(
    g: &QuatternGroup,
    z_local: &[usize],
    a: &[u32],
    leg: Option<&[usize]>,
    config: &ResolverConfig,
    stats: &mut ResolveStats,
) -> Result<Spectrum, ResolveError> {
    let engine = Engine::new(g);
    let st = engine.initial_state(z_local, a);
    let mut budget = config.node_budget;
    let states = match leg {
        Some(j) => match engine.reduce_step(st.clone(), &root_basis(g, j)) {
            Ok(s) => {
                stats.used_arm_leg = true;
                s
            }
            Err(ResolveError::Hypothesis(_)) => vec![st],
            Err(e) => return Err(e),
        },
        None => vec![st],
    };
    let mut out = Spectrum::default();
    for s in states {
        out.merge(&engine.finish(s, &mut budget, stats)?);
    }
    let expected = (g.q() as u128).pow((g.rank() - z_local.len()) as u32);
    let got = out.mass();
    if got != expected {
        return Err(ResolveError::Mass { got, expected });
    }
    Ok(out)
}

/// Degree spectrum of `Irr(X_S)_Z` at `F_q`, summed over all `λ` with full support on `Z`.
pub fn resolve_core(
    rs: &RootSystem,
    s: RootSet,
    z: RootSet,
    q: u32,
    config: &ResolverConfig,
) -> Result<FamilySpectrum, ResolveError> {
    if !z.is_subset(center(rs, s)) {
        return Err(ResolveError::Group(GroupError::NotCentral(z)));
    }
    let g = QuatternGroup::new(rs, q, s)?;
    let zl = local(&g, z);
    let leg = if config.use_arm_leg {
        let graph = CoreGraph::new(rs, s, z);
        let (i, j) = arm_leg(&graph);
        if !j.is_empty() && check_corplus(rs, s, z, i, j).holds() {
            Some(local(&g, j))
        } else {
            None
        }
    } else {
        None
    };
    let mut stats = ResolveStats::default();
    let mut spectrum = Spectrum::default();
    let mut unresolved = Vec::new();
    let qm1 = q as u64 - 1;
    let nl = qm1.pow(zl.len() as u32);
    for code in 0..nl {
        let mut a = Vec::with_capacity(zl.len());
        let mut c = code;
        for _ in 0..zl.len() {
            a.push((c % qm1) as u32 + 1);
            c /= qm1;
        }
        stats.slices += 1;
        match resolve_slice(&g, &zl, &a, leg.as_deref(), config, &mut stats) {
            Ok(sp) => spectrum.merge(&sp),
            Err(ResolveError::Budget) => match g.dixon_lambda(&zl, &a, config.dixon) {
                Ok(sp) => {
                    stats.dixon_slices += 1;
                    spectrum.merge(&sp);
                }
                Err(e) => unresolved.push(Unresolved {
                    lambda: a,
                    reason: alloc::format!("node budget exhausted; oracle: {e}"),
                }),
            },
            Err(e) => return Err(e),
        }
    }
    let provenance = match (stats.dixon_slices, stats.slices) {
        (0, _) => Provenance::Resolver,
        (d, n) if d == n => Provenance::Dixon,
        _ => Provenance::Mixed,
    };
    Ok(FamilySpectrum { spectrum, provenance, unresolved, stats })
}

/// A degree where two spectra disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectrumDiff {
    pub degree: u64,
    pub expected: u64,
    pub got: u64,
}

/// Compares a spectrum with the bundled family data of its form evaluated at `q`.
///
/// Returns the degrees where the counts differ; an empty list means equality.
pub fn compare_with_family_data(
    families: &[FamilyRecord],
    ty: &str,
    form: CoreForm,
    q: u32,
    spectrum: &Spectrum,
) -> Result<Vec<SpectrumDiff>, TabulateError> {
    let expected = family_spectrum_at(families, ty, form, q)?;
    Ok(spectrum_diff(&expected, spectrum))
}

/// Degrees where `got` differs from `expected`.
pub fn spectrum_diff(expected: &Spectrum, got: &Spectrum) -> Vec<SpectrumDiff> {
    let mut degrees: Vec<u64> = expected.entries().iter().chain(got.entries().iter()).map(|e| e.0).collect();
    degrees.sort_unstable();
    degrees.dedup();
    degrees
        .into_iter()
        .filter_map(|d| {
            let (e, g) = (expected.count_of(d), got.count_of(d));
            (e != g).then_some(SpectrumDiff { degree: d, expected: e, got: g })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    #[test]
    fn a2_slices() {
        let rs = RootSystem::build(CartanType::parse("A2").unwrap());
        for q in [2, 3, 4, 5] {
            let fs = resolve_core(&rs, rs.all(), RootSet::single(2), q, &ResolverConfig::default()).unwrap();
            assert_eq!(fs.spectrum.entries(), vec![(q as u64, q as u64 - 1)]);
            let all = resolve_core(&rs, rs.all(), RootSet::EMPTY, q, &ResolverConfig::default()).unwrap();
            assert_eq!(all.spectrum.entries(), vec![(1, (q * q) as u64), (q as u64, q as u64 - 1)]);
        }
    }

    #[test]
    fn sift_recovers_values() {
        let rs = RootSystem::build(CartanType::parse("A2").unwrap());
        let g = QuatternGroup::new(&rs, 9, rs.all()).unwrap();
        let e = Engine::new(&g);
        let st = e.initial_state(&[2], &[1]);
        for t in 0..9 {
            let w = g.root_element(2, t);
            let f = &g.field;
            assert_eq!(e.sift(&st.n, &w), Some(f.trace(t) as u64 * e.unit));
        }
        assert_eq!(e.sift(&st.n, &g.root_element(0, 1)), None);
    }
}
