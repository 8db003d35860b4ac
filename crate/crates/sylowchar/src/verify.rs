//! End-to-end verification at a concrete `q`.
//!
//! Resolves every nonabelian core, compares against the oracle on small
//! groups and against the bundled family data, then compares the numeric
//! per-degree table with the polynomial tables evaluated at `q`.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use sylowchar_core::field::prime_power;
use sylowchar_core::groupcore::DixonBounds;
use sylowchar_core::resolver::{spectrum_diff, compare_with_family_data, ResolverConfig};
use sylowchar_core::tabulate::{aggregate_tables, evaluate_at_q, numeric_table_at_q};
use sylowchar_core::RootSystem;

use crate::data::Bundle;
use crate::error::{Error, Result};
use crate::pipeline;

/// One named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// All checks of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub ty: String,
    pub q: u32,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        json!({"type": self.ty, "q": self.q, "passed": self.passed(), "checks": checks})
    }
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.to_string(), passed, detail }
}

/// Runs all checks for `rs` at `q`.
pub fn verify(rs: &RootSystem, bundle: &Bundle, q: u32, bounds: DixonBounds, config: &ResolverConfig) -> Result<VerifyReport> {
    let (p, _) = prime_power(q).ok_or_else(|| Error::Input(format!("q = {q} is not a supported prime power")))?;
    let ty = rs.ty.to_string();
    let outcome = pipeline::enumerate_cores(rs);
    let pairs = outcome.distinct_nonabelian();
    let resolved = pipeline::resolve_cores(rs, &pairs, q, config)?;
    let mut checks = Vec::new();

    let unresolved: Vec<String> = resolved.iter().filter(|r| !r.result.is_complete()).map(|r| r.form.to_string()).collect();
    checks.push(check(
        "resolver completes",
        unresolved.is_empty(),
        format!("{} cores, unresolved: {:?}", resolved.len(), unresolved),
    ));

    let bad_mass: Vec<String> = resolved
        .iter()
        .filter(|r| r.result.is_complete())
        .filter(|r| {
            let expected = (q as u128).pow((r.s.len() - r.z.len()) as u32) * ((q - 1) as u128).pow(r.z.len() as u32);
            r.result.spectrum.mass() != expected
        })
        .map(|r| r.form.to_string())
        .collect();
    checks.push(check("core mass identity", bad_mass.is_empty(), format!("failing: {bad_mass:?}")));

    let oracle = pipeline::dixon_spectra(rs, &pairs, q, bounds)?;
    let mut compared = 0;
    let mut disagree = Vec::new();
    let mut non_power = Vec::new();
    for (r, d) in resolved.iter().zip(&oracle) {
        let Some(d) = d else { continue };
        compared += 1;
        if d.entries().iter().any(|&(deg, _)| !is_power_of(deg, p as u64)) {
            non_power.push(r.form.to_string());
        }
        if r.result.is_complete() && !spectrum_diff(d, &r.result.spectrum).is_empty() {
            disagree.push(r.form.to_string());
        }
    }
    checks.push(check(
        "resolver equals oracle",
        disagree.is_empty(),
        format!("{compared} cores compared, disagreeing: {disagree:?}"),
    ));
    checks.push(check("oracle degrees are p-powers", non_power.is_empty(), format!("failing: {non_power:?}")));

    if bundle.has_families(&ty) {
        let mut mismatched = Vec::new();
        let mut seen = 0;
        for (f, (s, z)) in pipeline::form_representatives(rs, &pairs) {
            let r = resolved.iter().find(|r| r.s == s && r.z == z).unwrap();
            if !r.result.is_complete() {
                continue;
            }
            seen += 1;
            let d = compare_with_family_data(&bundle.families, &ty, f, q, &r.result.spectrum)?;
            if !d.is_empty() {
                mismatched.push(format!("{f}: {d:?}"));
            }
        }
        checks.push(check(
            "spectra equal family data",
            mismatched.is_empty(),
            format!("{seen} forms compared, mismatching: {mismatched:?}"),
        ));
    }

    let spectra = pipeline::spectra_map(&resolved);
    if spectra.len() == pairs.len() {
        let numeric = numeric_table_at_q(&outcome, q, &spectra)?;
        let mass: i128 = numeric.iter().map(|(&d, &n)| d as i128 * d as i128 * n).sum();
        let expected = (q as i128).pow(rs.len() as u32);
        checks.push(check("completeness at q", mass == expected, format!("sum of squares {mass}, group order {expected}")));
        if let Some(regime) = bundle.regimes_of(&ty).into_iter().find(|r| r.primes.contains(p)) {
            let computed = aggregate_tables(rs, &outcome, &bundle.families, &regime)?;
            let ours = evaluate_at_q(&computed, &regime, q)?;
            let shipped = evaluate_at_q(&bundle.tables[&regime], &regime, q)?;
            checks.push(check(
                "numeric table equals aggregated polynomials",
                numeric == ours,
                format!("regime {regime}, {} degrees", numeric.len()),
            ));
            checks.push(check(
                "numeric table equals bundled table",
                numeric == shipped,
                format!("regime {regime}, first difference: {:?}", first_difference(&numeric, &shipped)),
            ));
        }
    }
    Ok(VerifyReport { ty, q, checks })
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn first_difference(a: &BTreeMap<u64, i128>, b: &BTreeMap<u64, i128>) -> Option<(u64, i128, i128)> {
    a.keys()
        .chain(b.keys())
        .copied()
        .find(|k| a.get(k) != b.get(k))
        .map(|k| (k, a.get(&k).copied().unwrap_or(0), b.get(&k).copied().unwrap_or(0)))
}
