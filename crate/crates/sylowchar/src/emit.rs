//! JSON, CSV and TeX renderings.
//!
//! JSON objects use sorted keys, so equal inputs give byte-identical output.
//! Rationals are written as `[numerator, denominator]` pairs.

use serde_json::{json, Value};
use sylowchar_core::coregraph::{check_corplus, arm_leg_with, BaseDirection, CoreForm, CoreGraph};
use sylowchar_core::groupcore::Spectrum;
use sylowchar_core::reducer::Core;
use sylowchar_core::resolver::{FamilySpectrum, SpectrumDiff};
use sylowchar_core::tabulate::{Coeff, CountPolynomial, DegreeKey, Regime, RegimeTable, TotalsReport};
use sylowchar_core::{RootSet, RootSystem};

use crate::error::Result;

/// 1-based labels of a root set.
pub fn labels(set: RootSet) -> Vec<usize> {
    set.labels()
}

pub fn rational(c: Coeff) -> Value {
    json!([*c.numer() as i64, *c.denom() as i64])
}

pub fn polynomial(p: &CountPolynomial) -> Value {
    let coefficients: Vec<Value> = p.terms().map(|(e, c)| json!({"exp": e, "value": rational(c)})).collect();
    json!({"text": p.to_string(), "coefficients": coefficients})
}

pub fn degree_key(k: DegreeKey) -> Value {
    json!({"text": k.to_string(), "exp": k.e, "div": k.d})
}

pub fn spectrum(s: &Spectrum) -> Value {
    Value::Array(s.entries().into_iter().map(|(d, c)| json!({"degree": d, "count": c})).collect())
}

pub fn roots(rs: &RootSystem) -> Value {
    let roots: Vec<Value> = rs
        .roots
        .iter()
        .map(|r| json!({"index": r.index, "coeffs": r.coeffs, "height": r.height}))
        .collect();
    json!({"type": rs.ty.to_string(), "positive_roots": rs.len(), "roots": roots})
}

pub fn core_record(c: &Core) -> Value {
    let d: Vec<Value> = c.d_split.iter().map(|&(r, z)| json!({"root": r + 1, "inZ": z})).collect();
    json!({
        "origin": labels(c.origin),
        "S": labels(c.s),
        "Z": labels(c.z),
        "A": labels(c.a),
        "L": labels(c.l),
        "K": labels(c.k),
        "D": d,
    })
}

pub fn core_id(form: CoreForm, s: RootSet, z: RootSet) -> Value {
    json!({"form": form.to_string(), "S": labels(s), "Z": labels(z)})
}

pub fn graph(rs: &RootSystem, s: RootSet, z: RootSet, form: CoreForm, dir: BaseDirection) -> Value {
    let g = CoreGraph::new(rs, s, z);
    let circles: Vec<Value> = g.circles().iter().map(|c| json!(c.seq.iter().map(|&r| r + 1).collect::<Vec<_>>())).collect();
    let (i, j) = arm_leg_with(&g, dir);
    let report = check_corplus(rs, s, z, i, j);
    let edges: Vec<Value> = g.edges.iter().map(|&(a, b, c)| json!([a + 1, b + 1, c + 1])).collect();
    json!({
        "core": core_id(form, s, z),
        "vertices": labels(g.vertices),
        "edges": edges,
        "circles": circles,
        "heart": labels(g.heart()),
        "off_circle": labels(g.off_circle()),
        "arm": labels(i),
        "leg": labels(j),
        "corplus": {"holds": report.holds(), "failures": report.failures()},
    })
}

pub fn diff(d: &[SpectrumDiff]) -> Value {
    Value::Array(d.iter().map(|x| json!({"degree": x.degree, "expected": x.expected, "got": x.got})).collect())
}

pub fn family_spectrum(form: CoreForm, s: RootSet, z: RootSet, q: u32, fs: &FamilySpectrum) -> Value {
    let unresolved: Vec<Value> = fs
        .unresolved
        .iter()
        .map(|u| json!({"lambda": u.lambda, "reason": u.reason}))
        .collect();
    json!({
        "core": core_id(form, s, z),
        "q": q,
        "entries": spectrum(&fs.spectrum),
        "provenance": fs.provenance.name(),
        "unresolved_states": unresolved,
        "stats": {
            "slices": fs.stats.slices,
            "nodes": fs.stats.nodes,
            "leaves": fs.stats.leaves,
            "dixon_slices": fs.stats.dixon_slices,
            "used_arm_leg": fs.stats.used_arm_leg,
        },
    })
}

pub fn table(regime: &Regime, t: &RegimeTable) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|(k, c)| json!({"degree": degree_key(*k), "count": polynomial(c)}))
        .collect();
    json!({
        "regime": regime.to_string(),
        "rows": rows,
        "total": polynomial(&t.row_sum()),
    })
}

pub fn totals(report: &TotalsReport) -> Value {
    let totals: Vec<Value> = report
        .totals
        .iter()
        .map(|t| json!({"regime": t.regime.to_string(), "total": polynomial(&t.total), "consistent": t.consistent}))
        .collect();
    let deltas: Vec<Value> = report
        .deltas
        .iter()
        .map(|d| {
            let mismatches: Vec<Value> = d
                .mismatches
                .iter()
                .map(|m| json!({"exp": m.exponent, "computed": rational(m.computed), "claimed": rational(m.claimed)}))
                .collect();
            json!({
                "type": d.ty,
                "special": d.special.to_string(),
                "generic": d.generic.to_string(),
                "computed": polynomial(&d.computed),
                "claimed": polynomial(&d.claimed),
                "claimed_expression": d.claimed_expression,
                "agrees": d.agrees(),
                "mismatches": mismatches,
            })
        })
        .collect();
    json!({"totals": totals, "deltas": deltas})
}

/// Regime tables as CSV with columns `regime,degree,count`.
pub fn tables_csv(tables: &[(Regime, RegimeTable)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["regime", "degree", "count"])?;
    for (r, t) in tables {
        for (k, c) in &t.rows {
            w.write_record([r.to_string(), k.to_string(), c.to_string()])?;
        }
        w.write_record([r.to_string(), "total".to_string(), t.row_sum().to_string()])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?).expect("csv output is UTF-8"))
}

/// Rows of `(columns...)` as CSV with a header.
pub fn rows_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?).expect("csv output is UTF-8"))
}

/// A polynomial in TeX notation.
pub fn tex_polynomial(p: &CountPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<(u32, Coeff)> = p.terms().collect();
    for (k, (e, c)) in terms.iter().rev().enumerate() {
        let (n, d) = (*c.numer(), *c.denom());
        if n < 0 {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        let a = n.abs();
        if d != 1 {
            out.push_str(&format!("\\frac{{{a}}}{{{d}}}"));
        } else if a != 1 || *e == 0 {
            out.push_str(&a.to_string());
        }
        match e {
            0 => {}
            1 => out.push('v'),
            _ => out.push_str(&format!("v^{{{e}}}")),
        }
    }
    out
}

pub fn tex_degree(k: DegreeKey) -> String {
    let base = match k.e {
        0 => "1".to_string(),
        1 => "q".to_string(),
        e => format!("q^{{{e}}}"),
    };
    if k.d == 1 {
        base
    } else {
        format!("{base}/{}", k.d)
    }
}

/// One regime table as a TeX `tabular`.
pub fn table_tex(regime: &Regime, t: &RegimeTable) -> String {
    let mut out = format!("% {regime}\n\\begin{{tabular}}{{ll}}\n\\hline\nDegree & Number \\\\\n\\hline\n");
    for (k, c) in &t.rows {
        out.push_str(&format!("${}$ & ${}$ \\\\\n", tex_degree(*k), tex_polynomial(c)));
    }
    out.push_str(&format!("\\hline\nTotal & ${}$ \\\\\n\\hline\n\\end{{tabular}}\n", tex_polynomial(&t.row_sum())));
    out
}
