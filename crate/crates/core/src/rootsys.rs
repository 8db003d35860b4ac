//! Positive root systems, their sum tables and Chevalley structure constants.
//!
//! Simple roots follow the Bourbaki labelling. Positive roots are generated
//! from simple roots by the root-string criterion using an integral Gram
//! matrix, then sorted by height. Ties inside a height are broken by the
//! coefficient vector, in descending lexicographic order by default.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rootset::{RootSet, MAX_ROOTS};

/// The seven families of irreducible finite root systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A Cartan type such as `E6` or `D4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

/// Errors raised while building root systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSysError {
    /// The family/rank pair is not a finite type.
    InvalidType(String),
    /// The explicit ordering is not a height-monotone permutation.
    InvalidOrder(String),
    /// Structure constants were requested for a non-simply-laced type.
    NotSimplyLaced(CartanType),
}

impl fmt::Display for RootSysError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSysError::InvalidType(s) => write!(f, "invalid Cartan type: {s}"),
            RootSysError::InvalidOrder(s) => write!(f, "invalid root order: {s}"),
            RootSysError::NotSimplyLaced(t) => {
                write!(f, "structure constants are only provided for simply laced types, got {t}")
            }
        }
    }
}

impl core::error::Error for RootSysError {}

impl CartanType {
    /// Validates and builds a Cartan type.
    pub fn new(family: Family, rank: usize) -> Result<CartanType, RootSysError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        let ok = ok && family_root_count(family, rank) <= MAX_ROOTS;
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(RootSysError::InvalidType(alloc::format!("{}{}", family.letter(), rank)))
        }
    }

    /// Parses strings such as `"E6"`, `"d4"` or `"A2"`.
    pub fn parse(s: &str) -> Result<CartanType, RootSysError> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(RootSysError::InvalidType(s.into())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RootSysError::InvalidType(s.into()))?;
        CartanType::new(fam, rank)
    }

    /// True for types A, D and E.
    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Classical number of positive roots.
    pub fn positive_root_count(self) -> usize {
        family_root_count(self.family, self.rank)
    }
}

fn family_root_count(family: Family, r: usize) -> usize {
    match family {
        Family::A => r * (r + 1) / 2,
        Family::B | Family::C => r * r,
        Family::D => r * (r - 1),
        Family::E => match r {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Family::F => 24,
        Family::G => 6,
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// 1-based position in the fixed total order.
    pub index: usize,
    /// Coefficients over the simple roots.
    pub coeffs: Vec<i32>,
    /// Sum of the coefficients.
    pub height: i32,
}

/// How roots of equal height are ordered.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum RootOrder {
    /// Height, then coefficient vectors in descending lexicographic order.
    #[default]
    DescendingLex,
    /// Height, then coefficient vectors in ascending lexicographic order.
    AscendingLex,
    /// Explicit order: entry `k` is the 1-based label, in the
    /// [`RootOrder::DescendingLex`] numbering, of the root placed at position `k+1`.
    Permutation(Vec<usize>),
}

/// A positive root system with its sum table and, for simply laced types,
/// signed structure constants.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ty: CartanType,
    pub roots: Vec<Root>,
    n: usize,
    sum: Vec<u8>,
    addable: Vec<RootSet>,
    below: Vec<RootSet>,
    signs: Option<Vec<i8>>,
}

const NONE: u8 = u8::MAX;

/// Integral Gram matrix of the simple roots (short roots have square length 2).
fn gram(ty: CartanType) -> Vec<Vec<i32>> {
    let r = ty.rank;
    let mut g = vec![vec![0i32; r]; r];
    let mut len = vec![2i32; r];
    let mut edges: Vec<(usize, usize, i32)> = Vec::new();
    match ty.family {
        Family::A => edges.extend((0..r - 1).map(|i| (i, i + 1, -1))),
        Family::D => {
            edges.extend((0..r - 2).map(|i| (i, i + 1, -1)));
            edges.push((r - 3, r - 1, -1));
        }
        Family::E => {
            edges.extend([(0, 2, -1), (2, 3, -1), (3, 4, -1), (1, 3, -1)]);
            edges.extend((4..r - 1).map(|i| (i, i + 1, -1)));
        }
        Family::B => {
            len = vec![4; r];
            len[r - 1] = 2;
            edges.extend((0..r - 1).map(|i| (i, i + 1, -2)));
        }
        Family::C => {
            len[r - 1] = 4;
            edges.extend((0..r - 2).map(|i| (i, i + 1, -1)));
            edges.push((r - 2, r - 1, -2));
        }
        Family::F => {
            len = vec![4, 4, 2, 2];
            edges.extend([(0, 1, -2), (1, 2, -2), (2, 3, -1)]);
        }
        Family::G => {
            len = vec![2, 6];
            edges.push((0, 1, -3));
        }
    }
    for i in 0..r {
        g[i][i] = len[i];
    }
    for (i, j, v) in edges {
        g[i][j] = v;
        g[j][i] = v;
    }
    g
}

fn inner(g: &[Vec<i32>], a: &[i32], b: &[i32]) -> i32 {
    let r = a.len();
    let mut s = 0;
    for i in 0..r {
        if a[i] == 0 {
            continue;
        }
        for j in 0..r {
            s += a[i] * g[i][j] * b[j];
        }
    }
    s
}

/// All positive roots as coefficient vectors, unsorted.
fn generate_positive_roots(ty: CartanType) -> Vec<Vec<i32>> {
    let r = ty.rank;
    let g = gram(ty);
    let simple: Vec<Vec<i32>> = (0..r)
        .map(|i| (0..r).map(|k| i32::from(k == i)).collect())
        .collect();
    let mut roots: Vec<Vec<i32>> = simple.clone();
    let mut layer = simple.clone();
    while !layer.is_empty() {
        let mut next: Vec<Vec<i32>> = Vec::new();
        for b in &layer {
            for (i, ai) in simple.iter().enumerate() {
                // Length of the ai-string through b below b.
                let mut down = 0;
                loop {
                    let c: Vec<i32> = b.iter().zip(ai).map(|(x, y)| x - (down + 1) * y).collect();
                    if roots.contains(&c) {
                        down += 1;
                    } else {
                        break;
                    }
                }
                let pairing = 2 * inner(&g, b, ai) / g[i][i];
                if down - pairing > 0 {
                    let nb: Vec<i32> = b.iter().zip(ai).map(|(x, y)| x + y).collect();
                    if !next.contains(&nb) {
                        next.push(nb);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots
}

impl RootSystem {
    /// Builds the positive roots in the default order.
    pub fn build(ty: CartanType) -> RootSystem {
        RootSystem::build_with_order(ty, &RootOrder::DescendingLex)
            .expect("default order is always valid")
    }

    /// Builds the positive roots with an explicit ordering rule.
    pub fn build_with_order(ty: CartanType, order: &RootOrder) -> Result<RootSystem, RootSysError> {
        let mut coeffs = generate_positive_roots(ty);
        let height = |c: &Vec<i32>| c.iter().sum::<i32>();
        match order {
            RootOrder::AscendingLex => coeffs.sort_by(|a, b| height(a).cmp(&height(b)).then(a.cmp(b))),
            RootOrder::DescendingLex | RootOrder::Permutation(_) => {
                coeffs.sort_by(|a, b| height(a).cmp(&height(b)).then(b.cmp(a)))
            }
        }
        if let RootOrder::Permutation(p) = order {
            let n = coeffs.len();
            let mut seen = vec![false; n];
            if p.len() != n {
                return Err(RootSysError::InvalidOrder(alloc::format!(
                    "expected {n} entries, got {}",
                    p.len()
                )));
            }
            for &k in p {
                if k == 0 || k > n || seen[k - 1] {
                    return Err(RootSysError::InvalidOrder(alloc::format!("bad entry {k}")));
                }
                seen[k - 1] = true;
            }
            let permuted: Vec<Vec<i32>> = p.iter().map(|&k| coeffs[k - 1].clone()).collect();
            for w in permuted.windows(2) {
                if height(&w[0]) > height(&w[1]) {
                    return Err(RootSysError::InvalidOrder("order does not refine height".into()));
                }
            }
            coeffs = permuted;
        }
        Ok(RootSystem::from_sorted(ty, coeffs))
    }

    fn from_sorted(ty: CartanType, coeffs: Vec<Vec<i32>>) -> RootSystem {
        let n = coeffs.len();
        let roots: Vec<Root> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| Root { index: i + 1, coeffs: c.clone(), height: c.iter().sum() })
            .collect();
        let mut sum = vec![NONE; n * n];
        let mut addable = vec![RootSet::EMPTY; n];
        let mut below = vec![RootSet::EMPTY; n];
        for i in 0..n {
            for j in 0..n {
                let c: Vec<i32> = coeffs[i].iter().zip(&coeffs[j]).map(|(a, b)| a + b).collect();
                if let Some(k) = coeffs.iter().position(|x| *x == c) {
                    sum[i * n + j] = k as u8;
                    addable[i].insert(j);
                }
                if coeffs[j].iter().zip(&coeffs[i]).all(|(a, b)| a <= b) {
                    below[i].insert(j);
                }
            }
        }
        let mut rs = RootSystem { ty, roots, n, sum, addable, below, signs: None };
        if ty.is_simply_laced() {
            rs.signs = Some(rs.compute_signs());
        }
        rs
    }

    /// Number of positive roots.
    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: every root system here has at least one positive root.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The set of all positive roots.
    pub fn all(&self) -> RootSet {
        RootSet::full(self.n)
    }

    /// Position (0-based) of `α_i + α_j` if it is a positive root.
    #[inline]
    pub fn root_sum(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.sum[i * self.n + j];
        if k == NONE {
            None
        } else {
            Some(k as usize)
        }
    }

    /// Roots `α_j` such that `α_i + α_j` is a root.
    #[inline]
    pub fn addable(&self, i: usize) -> RootSet {
        self.addable[i]
    }

    /// Roots `β` with `β ≤ α_i` in the dominance order.
    #[inline]
    pub fn below(&self, i: usize) -> RootSet {
        self.below[i]
    }

    /// Dominance order: `α_i ≤ α_j` iff `α_j - α_i` is a nonnegative combination of simple roots.
    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    /// Position of the root with the given coefficient vector.
    pub fn position(&self, coeffs: &[i32]) -> Option<usize> {
        self.roots.iter().position(|r| r.coeffs == coeffs)
    }

    /// Position of the highest root.
    pub fn highest(&self) -> usize {
        self.n - 1
    }

    /// Structure constant sign `N_{ij}` with `[e_i, e_j] = N_{ij} e_{i+j}`, defined
    /// when `α_i + α_j` is a root and the type is simply laced.
    #[inline]
    pub fn sign(&self, i: usize, j: usize) -> Option<i8> {
        let s = self.signs.as_ref()?[i * self.n + j];
        if s == 0 {
            None
        } else {
            Some(s)
        }
    }

    /// The full sign table, or an error for non-simply-laced types.
    pub fn structure_signs(&self) -> Result<Vec<(usize, usize, i8)>, RootSysError> {
        let signs = self.signs.as_ref().ok_or(RootSysError::NotSimplyLaced(self.ty))?;
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let s = signs[i * self.n + j];
                if s != 0 {
                    out.push((i, j, s));
                }
            }
        }
        Ok(out)
    }

    /// Extraspecial pair `(α, β)` of a non-simple root `ξ`: `α + β = ξ`, `α < β`, `α` minimal.
    pub fn extraspecial_pair(&self, xi: usize) -> Option<(usize, usize)> {
        (0..xi).find_map(|a| {
            (a + 1..xi)
                .find(|&b| self.root_sum(a, b) == Some(xi))
                .map(|b| (a, b))
        })
    }

    /// Frenkel–Kac cocycle signs renormalised so that every extraspecial pair has sign `+1`.
    fn compute_signs(&self) -> Vec<i8> {
        let n = self.n;
        let r = self.ty.rank;
        let g = gram(self.ty);
        // ε(α_i, α_j) = -1 when i = j or (i < j and the nodes are adjacent).
        let eps = |a: &[i32], b: &[i32]| -> i8 {
            let mut e = 0i32;
            for i in 0..r {
                for j in 0..r {
                    if i == j || (i < j && g[i][j] != 0) {
                        e += a[i] * b[j];
                    }
                }
            }
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        };
        let mut raw = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                if self.root_sum(i, j).is_some() {
                    raw[i * n + j] = eps(&self.roots[i].coeffs, &self.roots[j].coeffs);
                }
            }
        }
        let mut scale = vec![1i8; n];
        for xi in 0..n {
            if let Some((a, b)) = self.extraspecial_pair(xi) {
                scale[xi] = scale[a] * scale[b] * raw[a * n + b];
            }
        }
        let mut out = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                if let Some(k) = self.root_sum(i, j) {
                    out[i * n + j] = raw[i * n + j] * scale[i] * scale[j] * scale[k];
                }
            }
        }
        out
    }

    /// Checks antisymmetry and the Jacobi identity of the signed constants over all root triples.
    pub fn check_jacobi(&self) -> Result<(), (usize, usize, usize)> {
        let n = self.n;
        let nn = |a: usize, b: usize| -> i32 { self.sign(a, b).map_or(0, i32::from) };
        for i in 0..n {
            for j in 0..n {
                if self.root_sum(i, j).is_some() && nn(i, j) != -nn(j, i) {
                    return Err((i, j, j));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let term = |x: usize, y: usize, z: usize| -> i32 {
                        match self.root_sum(x, y) {
                            Some(xy) if self.root_sum(xy, z).is_some() => nn(x, y) * nn(xy, z),
                            _ => 0,
                        }
                    };
                    if term(a, b, c) + term(b, c, a) + term(c, a, b) != 0 {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// All sum triples `(i, j, k)` with `i < j` and `α_i + α_j = α_k`.
    pub fn sum_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if let Some(k) = self.root_sum(i, j) {
                    out.push((i, j, k));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_classical_formulas() {
        for s in ["A1", "A2", "A5", "B3", "C4", "D4", "D6", "E6", "E7", "E8", "F4", "G2"] {
            let t = CartanType::parse(s).unwrap();
            let rs = RootSystem::build(t);
            assert_eq!(rs.len(), t.positive_root_count(), "{s}");
        }
    }

    #[test]
    fn a2_order_and_sums() {
        let rs = RootSystem::build(CartanType::parse("A2").unwrap());
        assert_eq!(rs.roots[2].coeffs, vec![1, 1]);
        assert_eq!(rs.root_sum(0, 1), Some(2));
        assert_eq!(rs.root_sum(0, 0), None);
        assert_eq!(rs.sign(0, 1), Some(1));
        assert_eq!(rs.sign(1, 0), Some(-1));
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(CartanType::parse("E9").is_err());
        assert!(CartanType::parse("D3").is_err());
        assert!(CartanType::parse("F5").is_err());
        assert!(CartanType::parse("X2").is_err());
    }

    #[test]
    fn non_simply_laced_has_no_signs() {
        let rs = RootSystem::build(CartanType::parse("B4").unwrap());
        assert!(matches!(rs.structure_signs(), Err(RootSysError::NotSimplyLaced(_))));
    }

    #[test]
    fn permutation_must_refine_height() {
        let t = CartanType::parse("A2").unwrap();
        assert!(RootSystem::build_with_order(t, &RootOrder::Permutation(vec![2, 1, 3])).is_ok());
        assert!(RootSystem::build_with_order(t, &RootOrder::Permutation(vec![3, 1, 2])).is_err());
    }
}
