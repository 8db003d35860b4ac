//! Exact character-count polynomials in `v = q - 1` and regime tables.
//!
//! Nonabelian cores contribute the bundled per-form family data, abelian
//! cores contribute `q^{|S∖Z|} v^{|Z|}` characters of degree `q^{|A|}`, and
//! split-off direct factors multiply counts by `q` or `v`. Summing these over
//! every leaf of the reduction gives the number of irreducible characters of
//! each degree as a polynomial in `v`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::coregraph::{form, CoreForm};
use crate::groupcore::Spectrum;
use crate::reducer::{Core, ReductionOutcome};
use crate::rootset::RootSet;
use crate::rootsys::RootSystem;

/// The bundled data files.
pub mod bundled {
    /// Family records of the nonabelian core forms of `D6` and `E6`.
    pub const FAMILIES: &str = include_str!("../data/families.txt");
    /// Per-degree character counts for the five regimes.
    pub const REGIME_TABLES: &str = include_str!("../data/regime_tables.txt");
    /// Claimed correction terms between regimes.
    pub const CLAIMED_DELTAS: &str = include_str!("../data/claimed_deltas.txt");
}

/// Exact rational coefficient.
pub type Coeff = Ratio<i128>;

/// Errors of parsing and aggregation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TabulateError {
    Parse { line: usize, msg: String },
    MissingFamily { ty: String, form: CoreForm },
    /// A coefficient with denominator other than 1 or 2.
    Denominator(String),
    RegimeMismatch { regime: String, q: u32 },
    NotInteger { what: String },
}

impl fmt::Display for TabulateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TabulateError::Parse { line, msg } => write!(f, "line {line}: {msg}"),
            TabulateError::MissingFamily { ty, form } => write!(f, "no family record for {ty} form {form}"),
            TabulateError::Denominator(s) => write!(f, "coefficient denominator not dividing 2 in {s}"),
            TabulateError::RegimeMismatch { regime, q } => write!(f, "q = {q} does not belong to regime {regime}"),
            TabulateError::NotInteger { what } => write!(f, "{what} does not evaluate to an integer"),
        }
    }
}

impl core::error::Error for TabulateError {}

/// A polynomial in `v` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountPolynomial {
    coeffs: BTreeMap<u32, Coeff>,
}

impl CountPolynomial {
    pub fn zero() -> Self {
        CountPolynomial::default()
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Coeff, e: u32) -> Self {
        let mut p = CountPolynomial::default();
        if !c.is_zero() {
            p.coeffs.insert(e, c);
        }
        p
    }

    pub fn int(c: i128) -> Self {
        Self::constant(Coeff::from_integer(c))
    }

    /// `v`.
    pub fn v() -> Self {
        Self::monomial(Coeff::one(), 1)
    }

    /// `q = v + 1`.
    pub fn q() -> Self {
        Self::v().add(&Self::int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: u32) -> Coeff {
        self.coeffs.get(&e).copied().unwrap_or_else(Coeff::zero)
    }

    /// Nonzero coefficients in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (u32, Coeff)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &o.coeffs {
            let s = out.coeff(e) + c;
            if s.is_zero() {
                out.coeffs.remove(&e);
            } else {
                out.coeffs.insert(e, s);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        CountPolynomial { coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = CountPolynomial::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &o.coeffs {
                out = out.add(&Self::monomial(c1 * c2, e1 + e2));
            }
        }
        out
    }

    pub fn scale(&self, c: Coeff) -> Self {
        self.mul(&Self::constant(c))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::int(1), |acc, _| acc.mul(self))
    }

    /// Value at `v = q - 1`.
    pub fn eval_q(&self, q: u32) -> Coeff {
        let v = Coeff::from_integer(q as i128 - 1);
        self.coeffs.iter().fold(Coeff::zero(), |acc, (&e, &c)| acc + c * pow_ratio(v, e))
    }

    /// Integer value at `q`, if the value is integral.
    pub fn eval_int(&self, q: u32) -> Option<i128> {
        let x = self.eval_q(q);
        x.is_integer().then(|| x.to_integer())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// True iff every denominator divides 2.
    pub fn half_integral(&self) -> bool {
        self.coeffs.values().all(|c| *c.denom() == 1 || *c.denom() == 2)
    }

    /// Parses an expression over `q`, `v`, integers, `+ - ^ /`, parentheses
    /// and juxtaposition, e.g. `q^2(q-1)^3`, `9(q-1)^6/2` or `3v^4(v^4+9)`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut p = ExprParser { s: s.as_bytes(), i: 0 };
        let out = p.sum()?;
        p.ws();
        if p.i != p.s.len() {
            return Err(format!("unexpected '{}' in {s}", &s[p.i..]));
        }
        Ok(out)
    }
}

fn pow_ratio(x: Coeff, e: u32) -> Coeff {
    (0..e).fold(Coeff::one(), |acc, _| acc * x)
}

impl fmt::Display for CountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let num = *c.numer();
            let den = *c.denom();
            if num < 0 {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let a = num.abs();
            if a != 1 || e == 0 {
                write!(f, "{a}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "v")?,
                _ => write!(f, "v^{e}")?,
            }
            if den != 1 {
                write!(f, "/{den}")?;
            }
        }
        Ok(())
    }
}

struct ExprParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl ExprParser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn sum(&mut self) -> Result<CountPolynomial, String> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.i += 1;
            neg = true;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CountPolynomial, String> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.i += 1;
                    let d = self.integer()?;
                    if d == 0 {
                        return Err("division by zero".to_string());
                    }
                    acc = acc.scale(Coeff::new(1, d));
                }
                Some(b'(') | Some(b'q') | Some(b'v') | Some(b'0'..=b'9') => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<CountPolynomial, String> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let e = self.integer()?;
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i128, String> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        core::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| format!("expected an integer at offset {start}"))
    }

    fn atom(&mut self) -> Result<CountPolynomial, String> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err("missing ')'".to_string());
                }
                self.i += 1;
                Ok(inner)
            }
            Some(b'q') => {
                self.i += 1;
                Ok(CountPolynomial::q())
            }
            Some(b'v') => {
                self.i += 1;
                Ok(CountPolynomial::v())
            }
            Some(b'0'..=b'9') => Ok(CountPolynomial::int(self.integer()?)),
            other => Err(format!("unexpected {:?}", other.map(|c| c as char))),
        }
    }
}

/// A character degree `q^e / d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeKey {
    pub e: u32,
    pub d: u32,
}

impl DegreeKey {
    pub fn new(e: u32, d: u32) -> DegreeKey {
        DegreeKey { e, d }
    }

    /// Parses `1`, `q`, `q^e`, optionally followed by `/d`.
    pub fn parse(s: &str) -> Option<DegreeKey> {
        let s = s.trim();
        let (base, d) = match s.split_once('/') {
            Some((b, d)) => (b.trim(), d.trim().parse().ok()?),
            None => (s, 1),
        };
        let e = match base {
            "1" => 0,
            "q" => 1,
            _ => base.strip_prefix("q^")?.parse().ok()?,
        };
        Some(DegreeKey { e, d })
    }

    /// `q^{e+k} / d`.
    pub fn shift(self, k: u32) -> DegreeKey {
        DegreeKey { e: self.e + k, d: self.d }
    }

    /// Integer value at `q`, if integral.
    pub fn value(self, q: u32) -> Option<u64> {
        let n = (q as u64).checked_pow(self.e)?;
        (n % self.d as u64 == 0).then(|| n / self.d as u64)
    }

    /// `(q^e / d)^2` as a polynomial in `v`.
    pub fn square(self) -> CountPolynomial {
        CountPolynomial::q().pow(2 * self.e).scale(Coeff::new(1, (self.d * self.d) as i128))
    }
}

impl fmt::Display for DegreeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.e {
            0 => write!(f, "1")?,
            1 => write!(f, "q")?,
            e => write!(f, "q^{e}")?,
        }
        if self.d != 1 {
            write!(f, "/{}", self.d)?;
        }
        Ok(())
    }
}

/// Condition on the characteristic `p` attached to a family record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeCondition {
    All,
    Eq(u32),
    Ne(u32),
}

impl PrimeCondition {
    pub fn parse(s: &str) -> Option<PrimeCondition> {
        let s = s.trim();
        if s == "all" {
            return Some(PrimeCondition::All);
        }
        if let Some(r) = s.strip_prefix("p!=") {
            return r.parse().ok().map(PrimeCondition::Ne);
        }
        s.strip_prefix("p=").and_then(|r| r.parse().ok()).map(PrimeCondition::Eq)
    }

    pub fn admits(self, p: u32) -> bool {
        match self {
            PrimeCondition::All => true,
            PrimeCondition::Eq(x) => p == x,
            PrimeCondition::Ne(x) => p != x,
        }
    }
}

impl fmt::Display for PrimeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeCondition::All => write!(f, "all"),
            PrimeCondition::Eq(p) => write!(f, "p={p}"),
            PrimeCondition::Ne(p) => write!(f, "p!={p}"),
        }
    }
}

/// A set of characteristics sharing one table: `p = n` or `p ≥ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeRegime {
    Eq(u32),
    AtLeast(u32),
}

impl PrimeRegime {
    pub fn parse(s: &str) -> Option<PrimeRegime> {
        let s = s.trim();
        if let Some(r) = s.strip_prefix("p>=") {
            return r.parse().ok().map(PrimeRegime::AtLeast);
        }
        s.strip_prefix("p=").and_then(|r| r.parse().ok()).map(PrimeRegime::Eq)
    }

    /// The characteristic used to select family records.
    pub fn representative(self) -> u32 {
        match self {
            PrimeRegime::Eq(p) | PrimeRegime::AtLeast(p) => p,
        }
    }

    pub fn contains(self, p: u32) -> bool {
        match self {
            PrimeRegime::Eq(x) => p == x,
            PrimeRegime::AtLeast(x) => p >= x,
        }
    }
}

impl fmt::Display for PrimeRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeRegime::Eq(p) => write!(f, "p={p}"),
            PrimeRegime::AtLeast(p) => write!(f, "p>={p}"),
        }
    }
}

/// A type together with a prime regime, e.g. `E6 p=3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Regime {
    pub ty: String,
    pub primes: PrimeRegime,
}

impl Regime {
    pub fn parse(s: &str) -> Option<Regime> {
        let (ty, pr) = s.trim().split_once(' ')?;
        Some(Regime { ty: ty.to_string(), primes: PrimeRegime::parse(pr)? })
    }

    /// Checks that `q` lies in this regime.
    pub fn check_q(&self, q: u32) -> Result<u32, TabulateError> {
        let p = crate::field::prime_power(q).map(|x| x.0);
        match p {
            Some(p) if self.primes.contains(p) => Ok(p),
            _ => Err(TabulateError::RegimeMismatch { regime: self.to_string(), q }),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.ty, self.primes)
    }
}

/// One bundled family of characters attached to a nonabelian core form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRecord {
    pub ty: String,
    pub form: CoreForm,
    pub family: String,
    pub label: String,
    pub condition: PrimeCondition,
    pub count: CountPolynomial,
    pub degree: DegreeKey,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then(|| (i + 1, body.split('|').map(str::trim).collect()))
    })
}

/// Parses the family data format `type | z,m,c | family | label | condition | count | degree`.
pub fn parse_families(text: &str) -> Result<Vec<FamilyRecord>, TabulateError> {
    let mut out = Vec::new();
    for (line, f) in data_lines(text) {
        let err = |msg: String| TabulateError::Parse { line, msg };
        if f.len() != 7 {
            return Err(err(format!("expected 7 fields, found {}", f.len())));
        }
        let form = CoreForm::parse(f[1]).ok_or_else(|| err(format!("bad form {}", f[1])))?;
        let condition = PrimeCondition::parse(f[4]).ok_or_else(|| err(format!("bad condition {}", f[4])))?;
        let count = CountPolynomial::parse(f[5]).map_err(err)?;
        if !count.half_integral() {
            return Err(TabulateError::Denominator(f[5].to_string()));
        }
        let degree = DegreeKey::parse(f[6]).ok_or_else(|| err(format!("bad degree {}", f[6])))?;
        out.push(FamilyRecord {
            ty: f[0].to_string(),
            form,
            family: f[2].to_string(),
            label: f[3].to_string(),
            condition,
            count,
            degree,
        });
    }
    Ok(out)
}

/// Per-degree counts of one regime, with an optional separately stated total.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegimeTable {
    pub rows: BTreeMap<DegreeKey, CountPolynomial>,
    pub total: Option<CountPolynomial>,
}

impl RegimeTable {
    /// Sum of all degree rows.
    pub fn row_sum(&self) -> CountPolynomial {
        self.rows.values().fold(CountPolynomial::zero(), |a, b| a.add(b))
    }

    /// `Σ degree² · count`.
    pub fn mass(&self) -> CountPolynomial {
        self.rows.iter().fold(CountPolynomial::zero(), |a, (k, c)| a.add(&k.square().mul(c)))
    }

    /// Rows where the two tables differ: `(degree, self, other)`.
    pub fn diff(&self, other: &RegimeTable) -> Vec<(DegreeKey, CountPolynomial, CountPolynomial)> {
        let mut keys: Vec<DegreeKey> = self.rows.keys().chain(other.rows.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let a = self.rows.get(&k).cloned().unwrap_or_default();
                let b = other.rows.get(&k).cloned().unwrap_or_default();
                (a != b).then_some((k, a, b))
            })
            .collect()
    }
}

/// Parses `regime | degree | polynomial` records; `total` rows fill [`RegimeTable::total`].
pub fn parse_regime_tables(text: &str) -> Result<BTreeMap<Regime, RegimeTable>, TabulateError> {
    let mut out: BTreeMap<Regime, RegimeTable> = BTreeMap::new();
    for (line, f) in data_lines(text) {
        let err = |msg: String| TabulateError::Parse { line, msg };
        if f.len() != 3 {
            return Err(err(format!("expected 3 fields, found {}", f.len())));
        }
        let regime = Regime::parse(f[0]).ok_or_else(|| err(format!("bad regime {}", f[0])))?;
        let poly = CountPolynomial::parse(f[2]).map_err(err)?;
        if !poly.half_integral() {
            return Err(TabulateError::Denominator(f[2].to_string()));
        }
        let table = out.entry(regime).or_default();
        if f[1] == "total" {
            table.total = Some(poly);
        } else {
            let key = DegreeKey::parse(f[1]).ok_or_else(|| err(format!("bad degree {}", f[1])))?;
            table.rows.insert(key, poly);
        }
    }
    Ok(out)
}

/// A claimed difference between the total of a special regime and a generic one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimedDelta {
    pub ty: String,
    pub special: PrimeRegime,
    pub generic: PrimeRegime,
    pub delta: CountPolynomial,
    pub expression: String,
}

/// Parses `type | special regime | generic regime | polynomial` records.
pub fn parse_claimed_deltas(text: &str) -> Result<Vec<ClaimedDelta>, TabulateError> {
    let mut out = Vec::new();
    for (line, f) in data_lines(text) {
        let err = |msg: String| TabulateError::Parse { line, msg };
        if f.len() != 4 {
            return Err(err(format!("expected 4 fields, found {}", f.len())));
        }
        out.push(ClaimedDelta {
            ty: f[0].to_string(),
            special: PrimeRegime::parse(f[1]).ok_or_else(|| err(format!("bad regime {}", f[1])))?,
            generic: PrimeRegime::parse(f[2]).ok_or_else(|| err(format!("bad regime {}", f[2])))?,
            delta: CountPolynomial::parse(f[3]).map_err(err)?,
            expression: f[3].to_string(),
        });
    }
    Ok(out)
}

/// Multiplier `q^{#(D∖Z)} v^{#(D∩Z)}` of the split-off direct factors.
pub fn direct_factor_multiplier(core: &Core) -> CountPolynomial {
    let (out_z, in_z) = core.d_counts();
    CountPolynomial::q().pow(out_z as u32).mul(&CountPolynomial::v().pow(in_z as u32))
}

/// Count and degree of the characters of an abelian core.
pub fn abelian_contribution(core: &Core) -> (CountPolynomial, DegreeKey) {
    let s = core.s.len() as u32;
    let z = core.z.len() as u32;
    let count = CountPolynomial::q()
        .pow(s - z)
        .mul(&CountPolynomial::v().pow(z))
        .mul(&direct_factor_multiplier(core));
    (count, DegreeKey::new(core.a.len() as u32, 1))
}

/// Family records for `(type, form)` admitted at characteristic `p`.
pub fn families_for<'a>(
    families: &'a [FamilyRecord],
    ty: &str,
    form: CoreForm,
    p: u32,
) -> impl Iterator<Item = &'a FamilyRecord> + 'a {
    let ty = ty.to_string();
    families
        .iter()
        .filter(move |f| f.ty == ty && f.form == form && f.condition.admits(p))
}

/// Per-degree counts of `Irr(U)` in the regime, from every leaf of the reduction.
pub fn aggregate_tables(
    rs: &RootSystem,
    outcome: &ReductionOutcome,
    families: &[FamilyRecord],
    regime: &Regime,
) -> Result<RegimeTable, TabulateError> {
    let ty = rs.ty.to_string();
    let p = regime.primes.representative();
    let mut rows: BTreeMap<DegreeKey, CountPolynomial> = BTreeMap::new();
    let mut add = |k: DegreeKey, c: CountPolynomial| {
        let e = rows.entry(k).or_default();
        *e = e.add(&c);
    };
    for core in &outcome.abelian_cores {
        let (c, k) = abelian_contribution(core);
        add(k, c);
    }
    let mut by_form: BTreeMap<CoreForm, Vec<&FamilyRecord>> = BTreeMap::new();
    for core in &outcome.nonabelian_cores {
        let f = form(rs, core.s, core.z);
        let recs = by_form.entry(f).or_insert_with(|| families_for(families, &ty, f, p).collect());
        if recs.is_empty() {
            return Err(TabulateError::MissingFamily { ty: ty.clone(), form: f });
        }
        let mult = direct_factor_multiplier(core);
        for r in recs.iter() {
            add(r.degree.shift(core.a.len() as u32), r.count.mul(&mult));
        }
    }
    rows.retain(|_, c| !c.is_zero());
    let total = rows.values().fold(CountPolynomial::zero(), |a, b| a.add(b));
    Ok(RegimeTable { rows, total: Some(total) })
}

/// `Σ count · degree²` over the records of one form in a regime, and the expected `q^{m-z} v^z`.
pub fn family_mass(families: &[FamilyRecord], ty: &str, form: CoreForm, p: u32) -> (CountPolynomial, CountPolynomial) {
    let got = families_for(families, ty, form, p)
        .fold(CountPolynomial::zero(), |acc, r| acc.add(&r.count.mul(&r.degree.square())));
    let expected = CountPolynomial::q()
        .pow((form.m - form.z) as u32)
        .mul(&CountPolynomial::v().pow(form.z as u32));
    (got, expected)
}

/// The spectrum of one form's families evaluated at `q`.
pub fn family_spectrum_at(families: &[FamilyRecord], ty: &str, form: CoreForm, q: u32) -> Result<Spectrum, TabulateError> {
    let p = crate::field::prime_power(q).map(|x| x.0).unwrap_or(q);
    let mut out = Spectrum::default();
    let mut any = false;
    for r in families_for(families, ty, form, p) {
        any = true;
        let c = r.count.eval_int(q).filter(|c| *c >= 0).ok_or_else(|| TabulateError::NotInteger {
            what: format!("count {} at q={q}", r.count),
        })?;
        let d = r.degree.value(q).ok_or_else(|| TabulateError::NotInteger { what: format!("degree {} at q={q}", r.degree) })?;
        if c > 0 {
            out.add(d, c as u64);
        }
    }
    if !any {
        return Err(TabulateError::MissingFamily { ty: ty.to_string(), form });
    }
    Ok(out)
}

/// A regime table evaluated at `q`: degree value to count.
pub fn evaluate_at_q(table: &RegimeTable, regime: &Regime, q: u32) -> Result<BTreeMap<u64, i128>, TabulateError> {
    regime.check_q(q)?;
    let mut out = BTreeMap::new();
    for (k, c) in &table.rows {
        let d = k.value(q).ok_or_else(|| TabulateError::NotInteger { what: format!("degree {k} at q={q}") })?;
        let n = c.eval_int(q).ok_or_else(|| TabulateError::NotInteger { what: format!("row {k} at q={q}") })?;
        *out.entry(d).or_insert(0) += n;
    }
    out.retain(|_, n| *n != 0);
    Ok(out)
}

/// Per-degree counts of `Irr(U)` at a concrete `q` from numeric core spectra.
///
/// `spectra` maps each distinct nonabelian `(S, Z)` to its spectrum at `q`
/// (core-internal degrees). Abelian cores are evaluated directly.
pub fn numeric_table_at_q(
    outcome: &ReductionOutcome,
    q: u32,
    spectra: &BTreeMap<(RootSet, RootSet), Spectrum>,
) -> Result<BTreeMap<u64, i128>, TabulateError> {
    let mut out: BTreeMap<u64, i128> = BTreeMap::new();
    let int = |p: &CountPolynomial, what: &str| {
        p.eval_int(q).ok_or_else(|| TabulateError::NotInteger { what: format!("{what} at q={q}") })
    };
    for core in &outcome.abelian_cores {
        let (c, k) = abelian_contribution(core);
        let d = k.value(q).ok_or_else(|| TabulateError::NotInteger { what: format!("degree {k}") })?;
        *out.entry(d).or_insert(0) += int(&c, "abelian count")?;
    }
    for core in &outcome.nonabelian_cores {
        let sp = spectra.get(&(core.s, core.z)).ok_or(TabulateError::NotInteger {
            what: "a nonabelian core without spectrum".to_string(),
        })?;
        let mult = int(&direct_factor_multiplier(core), "direct-factor multiplier")?;
        let shift = (q as u64).pow(core.a.len() as u32);
        for (d, c) in sp.entries() {
            *out.entry(d * shift).or_insert(0) += c as i128 * mult;
        }
    }
    out.retain(|_, n| *n != 0);
    Ok(out)
}

/// Total and internal consistency of one regime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegimeTotal {
    pub regime: Regime,
    pub total: CountPolynomial,
    /// Whether a stated total row equals the sum of the rows.
    pub consistent: bool,
}

/// A coefficient where the computed and claimed deltas differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMismatch {
    pub exponent: u32,
    pub computed: Coeff,
    pub claimed: Coeff,
}

/// A computed delta between two regimes compared to a claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub ty: String,
    pub special: PrimeRegime,
    pub generic: PrimeRegime,
    pub computed: CountPolynomial,
    pub claimed: CountPolynomial,
    pub claimed_expression: String,
    pub mismatches: Vec<CoefficientMismatch>,
}

impl DeltaReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Totals per regime and deltas against claimed correction terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalsReport {
    pub totals: Vec<RegimeTotal>,
    pub deltas: Vec<DeltaReport>,
}

/// Computes totals per regime and the differences named by `claims`.
pub fn totals_and_deltas(tables: &BTreeMap<Regime, RegimeTable>, claims: &[ClaimedDelta]) -> TotalsReport {
    let totals: Vec<RegimeTotal> = tables
        .iter()
        .map(|(r, t)| {
            let total = t.row_sum();
            let consistent = t.total.as_ref().is_none_or(|x| *x == total);
            RegimeTotal { regime: r.clone(), total, consistent }
        })
        .collect();
    let find = |ty: &str, pr: PrimeRegime| {
        totals.iter().find(|t| t.regime.ty == ty && t.regime.primes == pr).map(|t| t.total.clone())
    };
    let mut deltas = Vec::new();
    for c in claims {
        let (Some(a), Some(b)) = (find(&c.ty, c.special), find(&c.ty, c.generic)) else {
            continue;
        };
        let computed = a.sub(&b);
        let top = computed.degree().unwrap_or(0).max(c.delta.degree().unwrap_or(0));
        let mismatches = (0..=top)
            .filter_map(|e| {
                let (x, y) = (computed.coeff(e), c.delta.coeff(e));
                (x != y).then_some(CoefficientMismatch { exponent: e, computed: x, claimed: y })
            })
            .collect();
        deltas.push(DeltaReport {
            ty: c.ty.clone(),
            special: c.special,
            generic: c.generic,
            computed,
            claimed: c.delta.clone(),
            claimed_expression: c.expression.clone(),
            mismatches,
        });
    }
    TotalsReport { totals, deltas }
}
