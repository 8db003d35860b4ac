//! Arithmetic in quattern groups `X_S` over `F_q` and small-group oracles.
//!
//! Elements are coordinate vectors over the roots of `S` (in increasing root
//! order), read as the ordered product `Π x_α(t_α)`. Multiplication uses
//! collection with the single-term Chevalley relation of simply laced types,
//! `[x_α(s), x_β(t)] = x_{α+β}(N_{αβ} s t)`, dropping every coordinate whose
//! root lies outside `S`.
//!
//! Two oracles are provided: conjugacy class counting by orbit sweeping, and
//! the degree spectrum of `Irr(X_S)_Z` computed from class-algebra moments of
//! the central element `Σ_{a,b} [a,b]` in exact modular arithmetic.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Field, FieldError};
use crate::posetkit::{center, is_quattern};
use crate::rootset::RootSet;
use crate::rootsys::RootSystem;

/// Coordinates of a group element, one field element per root of `S`.
pub type Coords = Vec<u8>;

/// Errors raised by group constructions and oracles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    NotSimplyLaced,
    NotQuattern(RootSet),
    Field(FieldError),
    /// `Z` must consist of central roots of `S`.
    NotCentral(RootSet),
    /// The oracle would exceed its size bound.
    TooLarge { size: u64, bound: u64 },
    /// An exactness check inside an oracle failed.
    Inconsistent(&'static str),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotSimplyLaced => write!(f, "group arithmetic needs a simply laced type"),
            GroupError::NotQuattern(s) => write!(f, "{s} is not a quattern"),
            GroupError::Field(e) => write!(f, "{e}"),
            GroupError::NotCentral(z) => write!(f, "{z} is not contained in the centre"),
            GroupError::TooLarge { size, bound } => write!(f, "size {size} exceeds bound {bound}"),
            GroupError::Inconsistent(s) => write!(f, "oracle consistency check failed: {s}"),
        }
    }
}

impl core::error::Error for GroupError {}

impl From<FieldError> for GroupError {
    fn from(e: FieldError) -> Self {
        GroupError::Field(e)
    }
}

/// A degree spectrum: character degree mapped to the number of characters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Spectrum(pub BTreeMap<u64, u64>);

impl Spectrum {
    pub fn add(&mut self, degree: u64, count: u64) {
        if count > 0 {
            *self.0.entry(degree).or_insert(0) += count;
        }
    }

    pub fn merge(&mut self, other: &Spectrum) {
        for (&d, &c) in &other.0 {
            self.add(d, c);
        }
    }

    /// `Σ degree² · count`.
    pub fn mass(&self) -> u128 {
        self.0.iter().map(|(&d, &c)| (d as u128) * (d as u128) * (c as u128)).sum()
    }

    /// Total number of characters.
    pub fn count(&self) -> u64 {
        self.0.values().sum()
    }

    /// Number of characters of the given degree.
    pub fn count_of(&self, degree: u64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> Vec<(u64, u64)> {
        self.0.iter().map(|(&d, &c)| (d, c)).collect()
    }
}

/// Checks `Σ degree²·count = q^{|S∖Z|} (q−1)^{|Z|}`.
pub fn sum_of_squares_check(q: u64, s_len: usize, z_len: usize, spectrum: &Spectrum) -> bool {
    let rhs = (q as u128).pow((s_len - z_len) as u32) * ((q - 1) as u128).pow(z_len as u32);
    spectrum.mass() == rhs
}

/// A quattern group `X_S` over `F_q`.
#[derive(Clone, Debug)]
pub struct QuatternGroup {
    pub field: Field,
    pub s: RootSet,
    /// Global root positions of the roots of `S`, increasing.
    pub roots: Vec<usize>,
    local: Vec<u8>,
    /// For local positions `(a, b)`: the local position of `α_a + α_b` and `N_{ab}` as a field element.
    comm: Vec<Option<(u8, u8)>>,
}

const NOT_IN_S: u8 = u8::MAX;

impl QuatternGroup {
    /// Builds `X_S` over `F_q`; `S` must be a quattern of a simply laced system.
    pub fn new(rs: &RootSystem, q: u32, s: RootSet) -> Result<QuatternGroup, GroupError> {
        if !rs.ty.is_simply_laced() {
            return Err(GroupError::NotSimplyLaced);
        }
        if !is_quattern(rs, s) {
            return Err(GroupError::NotQuattern(s));
        }
        let field = Field::new(q)?;
        let roots = s.to_vec();
        let m = roots.len();
        let mut local = vec![NOT_IN_S; rs.len()];
        for (i, &r) in roots.iter().enumerate() {
            local[r] = i as u8;
        }
        let mut comm = vec![None; m * m];
        for a in 0..m {
            for b in 0..m {
                if let Some(c) = rs.root_sum(roots[a], roots[b]) {
                    if s.contains(c) {
                        let sign = rs.sign(roots[a], roots[b]).expect("simply laced");
                        comm[a * m + b] = Some((local[c], field.from_sign(sign) as u8));
                    }
                }
            }
        }
        Ok(QuatternGroup { field, s, roots, local, comm })
    }

    /// Number of root coordinates.
    #[inline]
    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q
    }

    /// `|X_S| = q^{|S|}`, saturating.
    pub fn order(&self) -> u128 {
        (self.q() as u128).saturating_pow(self.rank() as u32)
    }

    /// Local coordinate position of a global root position.
    pub fn local_pos(&self, global: usize) -> Option<usize> {
        match self.local.get(global) {
            Some(&l) if l != NOT_IN_S => Some(l as usize),
            _ => None,
        }
    }

    pub fn identity(&self) -> Coords {
        vec![0; self.rank()]
    }

    /// The root element `x_α(t)` for a local position.
    pub fn root_element(&self, pos: usize, t: u32) -> Coords {
        let mut w = self.identity();
        w[pos] = t as u8;
        w
    }

    /// Right multiplication of a normal form by `x_β(t)`, in place.
    pub fn mul_root(&self, w: &mut [u8], b: usize, t: u32) {
        if t == 0 {
            return;
        }
        let m = self.rank();
        let mut tail = [(0u8, 0u8); 128];
        let mut nt = 0;
        for a in b + 1..m {
            if w[a] != 0 {
                tail[nt] = (a as u8, w[a]);
                nt += 1;
                w[a] = 0;
            }
        }
        w[b] = self.field.add(w[b] as u32, t) as u8;
        for &(a, s) in &tail[..nt] {
            let a = a as usize;
            self.mul_root(w, a, s as u32);
            if let Some((c, sign)) = self.comm[a * m + b] {
                let coef = self.field.mul(sign as u32, self.field.mul(s as u32, t));
                self.mul_root(w, c as usize, coef);
            }
        }
    }

    /// `u · v`.
    pub fn mul(&self, u: &[u8], v: &[u8]) -> Coords {
        let mut w = u.to_vec();
        self.mul_into(&mut w, v);
        w
    }

    /// `w ← w · v`.
    pub fn mul_into(&self, w: &mut [u8], v: &[u8]) {
        for (b, &t) in v.iter().enumerate() {
            if t != 0 {
                self.mul_root(w, b, t as u32);
            }
        }
    }

    /// `u^{-1}`.
    pub fn inv(&self, u: &[u8]) -> Coords {
        let mut w = self.identity();
        for b in (0..self.rank()).rev() {
            if u[b] != 0 {
                self.mul_root(&mut w, b, self.field.neg(u[b] as u32));
            }
        }
        w
    }

    /// `[u, v] = u^{-1} v^{-1} u v`.
    pub fn commutator(&self, u: &[u8], v: &[u8]) -> Coords {
        let mut w = self.inv(u);
        let vi = self.inv(v);
        self.mul_into(&mut w, &vi);
        self.mul_into(&mut w, u);
        self.mul_into(&mut w, v);
        w
    }

    /// `u^e`.
    pub fn pow(&self, u: &[u8], e: u64) -> Coords {
        let mut w = self.identity();
        for _ in 0..e {
            self.mul_into(&mut w, u);
        }
        w
    }

    /// The generalized root element `Π_j x_{i_j}(c_j t)` over local positions.
    pub fn generalized_root_element(&self, parts: &[(usize, u32)], t: u32) -> Coords {
        let mut w = self.identity();
        let mut sorted = parts.to_vec();
        sorted.sort();
        for (pos, c) in sorted {
            self.mul_root(&mut w, pos, self.field.mul(c, t));
        }
        w
    }

    /// Generators `x_α(x^b)` of the `F_p`-polycyclic series, in series order.
    pub fn pcgs(&self) -> Vec<(usize, u32)> {
        let mut g = Vec::new();
        for pos in 0..self.rank() {
            for b in 0..self.field.f {
                g.push((pos, self.field.basis(b)));
            }
        }
        g
    }

    /// Index of an element in `0..q^{|S|}`.
    pub fn encode(&self, w: &[u8]) -> u64 {
        let q = self.q() as u64;
        w.iter().rev().fold(0, |acc, &x| acc * q + x as u64)
    }

    pub fn decode(&self, mut idx: u64) -> Coords {
        let q = self.q() as u64;
        let mut w = self.identity();
        for x in w.iter_mut() {
            *x = (idx % q) as u8;
            idx /= q;
        }
        w
    }

    /// Number of conjugacy classes, by orbit sweeping over all elements.
    pub fn conjugacy_class_count(&self, max_order: u64) -> Result<u64, GroupError> {
        let order = self.order();
        if order > max_order as u128 {
            return Err(GroupError::TooLarge { size: order.min(u64::MAX as u128) as u64, bound: max_order });
        }
        let n = order as usize;
        let gens: Vec<(Coords, Coords)> = self
            .pcgs()
            .into_iter()
            .map(|(pos, t)| {
                let g = self.root_element(pos, t);
                let gi = self.inv(&g);
                (g, gi)
            })
            .collect();
        let mut seen = vec![false; n];
        let mut classes = 0u64;
        let mut queue: Vec<u64> = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            classes += 1;
            seen[start] = true;
            queue.clear();
            queue.push(start as u64);
            while let Some(x) = queue.pop() {
                let xw = self.decode(x);
                for (g, gi) in &gens {
                    let mut y = gi.clone();
                    self.mul_into(&mut y, &xw);
                    self.mul_into(&mut y, g);
                    let yi = self.encode(&y) as usize;
                    if !seen[yi] {
                        seen[yi] = true;
                        queue.push(yi as u64);
                    }
                }
            }
        }
        Ok(classes)
    }

    /// Degree spectrum of `Irr(X_S)_Z`: characters nontrivial on every `X_γ`, `γ ∈ Z`.
    ///
    /// Sums [`QuatternGroup::dixon_lambda`] over all central characters with full support on `Z`.
    pub fn dixon_irr_z(&self, rs: &RootSystem, z: RootSet, bounds: DixonBounds) -> Result<Spectrum, GroupError> {
        if !z.is_subset(center(rs, self.s)) {
            return Err(GroupError::NotCentral(z));
        }
        if self.order() > bounds.max_group_order as u128 {
            return Err(GroupError::TooLarge {
                size: self.order().min(u64::MAX as u128) as u64,
                bound: bounds.max_group_order,
            });
        }
        let zl: Vec<usize> = z.iter().map(|g| self.local_pos(g).unwrap()).collect();
        let q = self.q();
        let mut total = Spectrum::default();
        let nl = (q as u64 - 1).pow(zl.len() as u32);
        for code in 0..nl {
            let mut a = Vec::with_capacity(zl.len());
            let mut c = code;
            for _ in 0..zl.len() {
                a.push((c % (q as u64 - 1)) as u32 + 1);
                c /= q as u64 - 1;
            }
            let spec = self.dixon_lambda(&zl, &a, bounds)?;
            total.merge(&spec);
        }
        Ok(total)
    }

    /// Degree spectrum of `Irr(X_S | λ)` where `λ(x_γ(t)) = ζ^{Tr(a_γ t)}` on the
    /// central local positions `z` (all `a_γ ≠ 0`), or of all of `Irr(X_S)` when `z` is empty.
    pub fn dixon_lambda(&self, z: &[usize], a: &[u32], bounds: DixonBounds) -> Result<Spectrum, GroupError> {
        let quotient = CentralQuotient::new(self, z, a, bounds)?;
        quotient.spectrum()
    }
}

/// Size bounds for the oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DixonBounds {
    /// Largest `|X_S|` accepted.
    pub max_group_order: u64,
    /// Largest `|X_S / ker λ|` for which a multiplication table is built.
    pub max_quotient_order: u64,
}

impl Default for DixonBounds {
    fn default() -> Self {
        DixonBounds { max_group_order: 1 << 16, max_quotient_order: 1 << 12 }
    }
}

const MODP: u64 = (1u64 << 61) - 1;

#[inline]
fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODP as u128) as u64
}

#[inline]
fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MODP {
        s - MODP
    } else {
        s
    }
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= MODP;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, MODP - 2)
}

/// A primitive `p`-th root of unity modulo `2^61 - 1`.
fn root_of_unity(p: u64) -> u64 {
    for g in 3.. {
        let z = powmod(g, (MODP - 1) / p);
        if z != 1 {
            return z;
        }
    }
    unreachable!()
}

/// Solves `A x = b` modulo `2^61 - 1` for a square invertible `A`.
fn solve_mod(mut a: Vec<Vec<u64>>, mut b: Vec<u64>) -> Option<Vec<u64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = invmod(a[col][col]);
        for j in 0..n {
            a[col][j] = mulmod(a[col][j], inv);
        }
        b[col] = mulmod(b[col], inv);
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for j in 0..n {
                    a[r][j] = addmod(a[r][j], MODP - mulmod(f, a[col][j]));
                }
                b[r] = addmod(b[r], MODP - mulmod(f, b[col]));
            }
        }
    }
    Some(b)
}

/// `X_S / ker λ` with an explicit multiplication table.
struct CentralQuotient {
    /// Order of the quotient.
    n: usize,
    /// Order of the central cyclic image of `X_Z` (`p`, or 1 when `Z` is empty).
    pc: usize,
    q: u64,
    free: usize,
    p: u64,
    table: Vec<u16>,
    inv: Vec<u16>,
}

impl CentralQuotient {
    fn new(g: &QuatternGroup, z: &[usize], a: &[u32], bounds: DixonBounds) -> Result<CentralQuotient, GroupError> {
        let field = &g.field;
        let q = field.q as u64;
        let free_pos: Vec<usize> = (0..g.rank()).filter(|i| !z.contains(i)).collect();
        let pc = if z.is_empty() { 1 } else { field.p as usize };
        let size = (q as u128).pow(free_pos.len() as u32) * pc as u128;
        let bound = bounds.max_quotient_order.min(u16::MAX as u64 + 1);
        if size > bound as u128 {
            return Err(GroupError::TooLarge { size: size.min(u64::MAX as u128) as u64, bound });
        }
        let n = size as usize;
        // A central element realising λ-value 1.
        let lift_pos = z.first().copied();
        let t0 = match lift_pos {
            Some(_) => (1..field.q)
                .find(|&t| field.trace(field.mul(a[0], t)) == 1)
                .ok_or(GroupError::Inconsistent("no trace-one element"))?,
            None => 0,
        };
        let lift = |idx: usize| -> Coords {
            let mut w = g.identity();
            let mut x = idx / pc;
            for &p in &free_pos {
                w[p] = (x as u64 % q) as u8;
                x /= q as usize;
            }
            if let Some(zp) = lift_pos {
                w[zp] = field.scalar((idx % pc) as u32, t0) as u8;
            }
            w
        };
        let project = |w: &[u8]| -> usize {
            let mut x = 0usize;
            for &p in free_pos.iter().rev() {
                x = x * q as usize + w[p] as usize;
            }
            let mut c = 0u32;
            for (k, &zp) in z.iter().enumerate() {
                c += field.trace(field.mul(a[k], w[zp] as u32));
            }
            x * pc + (c as usize % pc.max(1))
        };
        let lifts: Vec<Coords> = (0..n).map(lift).collect();
        let mut table = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = project(&g.mul(&lifts[x], &lifts[y])) as u16;
            }
        }
        let mut inv = vec![0u16; n];
        for x in 0..n {
            inv[x] = project(&g.inv(&lifts[x])) as u16;
        }
        Ok(CentralQuotient { n, pc, q, free: free_pos.len(), p: field.p as u64, table, inv })
    }

    #[inline]
    fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    fn spectrum(&self) -> Result<Spectrum, GroupError> {
        let n = self.n;
        // N(h) = #{(a, b) : [a, b] = h}.
        let mut ncomm = vec![0u64; n];
        for a in 0..n {
            let ai = self.inv[a] as usize;
            for b in 0..n {
                let bi = self.inv[b] as usize;
                let h = self.mul(self.mul(ai, bi), self.mul(a, b));
                ncomm[h] += 1;
            }
        }
        let support: Vec<(usize, u64)> = ncomm
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(h, &c)| (h, c % MODP))
            .collect();
        let slice_dim = self.q.pow(self.free as u32);
        let mut degrees = Vec::new();
        let mut d = 1u64;
        while d * d <= slice_dim {
            degrees.push(d);
            d *= self.p;
        }
        let k_needed = degrees.len() + 1;
        let zeta = if self.pc > 1 { root_of_unity(self.pc as u64) } else { 1 };
        let zeta_pows: Vec<u64> = (0..self.pc as u64).map(|c| powmod(zeta, c)).collect();
        let scale = (n / self.pc) as u64 % MODP;
        let mut f = vec![0u64; n];
        f[0] = 1;
        let mut moments = Vec::with_capacity(k_needed);
        for k in 0..k_needed {
            if k > 0 {
                let mut next = vec![0u64; n];
                for &(h, c) in &support {
                    let row = &self.table[h * n..(h + 1) * n];
                    for x in 0..n {
                        if f[x] != 0 {
                            let y = row[x] as usize;
                            next[y] = addmod(next[y], mulmod(c, f[x]));
                        }
                    }
                }
                f = next;
            }
            // Central elements have all free coordinates zero: indices 0..pc.
            let mut m = 0u64;
            for c in 0..self.pc {
                m = addmod(m, mulmod(zeta_pows[c], f[c]));
            }
            moments.push(mulmod(m, scale));
        }
        let nsq = (n as u64 * n as u64) % MODP;
        let eig: Vec<u64> = degrees.iter().map(|&d| mulmod(nsq, invmod(mulmod(d, d)))).collect();
        let r = degrees.len();
        let mat: Vec<Vec<u64>> = (0..r).map(|k| eig.iter().map(|&e| powmod(e, k as u64)).collect()).collect();
        let w = solve_mod(mat, moments[..r].to_vec()).ok_or(GroupError::Inconsistent("singular moment system"))?;
        let check = eig
            .iter()
            .zip(&w)
            .fold(0u64, |acc, (&e, &x)| addmod(acc, mulmod(powmod(e, r as u64), x)));
        if check != moments[r] {
            return Err(GroupError::Inconsistent("extra moment disagrees"));
        }
        let mut spec = Spectrum::default();
        let mut mass = 0u128;
        for (&d, &x) in degrees.iter().zip(&w) {
            if x > slice_dim || x % (d * d) != 0 {
                return Err(GroupError::Inconsistent("non-integral multiplicity"));
            }
            mass += x as u128;
            spec.add(d, x / (d * d));
        }
        if mass != slice_dim as u128 {
            return Err(GroupError::Inconsistent("mass mismatch"));
        }
        Ok(spec)
    }
}

/// Checks that a root-wise map `φ(x_α(t)) = x_{ρ(α)}(ε_α t)` is an isomorphism
/// `src → tgt` by verifying every relation of the polycyclic presentation.
///
/// `map[i] = (j, ε)` sends local position `i` of `src` to local position `j` of `tgt`.
pub fn verify_root_map_isomorphism(src: &QuatternGroup, tgt: &QuatternGroup, map: &[(usize, i8)]) -> bool {
    if src.rank() != tgt.rank() || src.q() != tgt.q() || map.len() != src.rank() {
        return false;
    }
    let mut hit = vec![false; tgt.rank()];
    for &(j, _) in map {
        if j >= tgt.rank() || hit[j] {
            return false;
        }
        hit[j] = true;
    }
    let f = &tgt.field;
    let image = |w: &[u8]| -> Coords {
        let mut out = tgt.identity();
        for (i, &t) in w.iter().enumerate() {
            if t != 0 {
                let (j, e) = map[i];
                tgt.mul_root(&mut out, j, f.mul(f.from_sign(e), t as u32));
            }
        }
        out
    };
    let gens: Vec<Coords> = src.pcgs().into_iter().map(|(pos, t)| src.root_element(pos, t)).collect();
    let imgs: Vec<Coords> = gens.iter().map(|g| image(g)).collect();
    for (i, g) in gens.iter().enumerate() {
        if image(&src.pow(g, f.p as u64)) != tgt.pow(&imgs[i], f.p as u64) {
            return false;
        }
        for (j, h) in gens.iter().enumerate().skip(i + 1) {
            let conj = src.mul(&src.mul(&src.inv(g), h), g);
            let rhs = tgt.mul(&tgt.mul(&tgt.inv(&imgs[i]), &imgs[j]), &imgs[i]);
            if image(&conj) != rhs {
                return false;
            }
        }
    }
    true
}
