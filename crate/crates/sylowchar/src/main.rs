use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sylowchar::data::{self, Bundle};
use sylowchar::error::{Error, Result};
use sylowchar::{emit, pipeline, verify};
use sylowchar_core::coregraph::{form_histogram, BaseDirection, CoreForm, CoreGraph};
use sylowchar_core::groupcore::DixonBounds;
use sylowchar_core::isoclass::{classify, verify_witness, IsoConfig};
use sylowchar_core::posetkit::{antichains, count_antichains};
use sylowchar_core::resolver::{compare_with_family_data, ResolverConfig};
use sylowchar_core::tabulate::{aggregate_tables, totals_and_deltas, Regime, RegimeTable};
use sylowchar_core::{RootSet, RootSystem};

#[derive(Parser, Debug)]
#[command(name = "sylowchar", version, about = "Character counts of Sylow p-subgroups of Chevalley groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// File with a permutation of root labels overriding the default order.
    #[arg(long, global = true)]
    root_order: Option<PathBuf>,
    /// Number of worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory receiving the artifact and a manifest instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Tex,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Base {
    Max,
    Min,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive roots in the fixed order.
    Roots {
        #[arg(long = "type")]
        ty: String,
    },
    /// Antichains of the root poset.
    Antichains {
        #[arg(long = "type")]
        ty: String,
        /// Only print the number of antichains.
        #[arg(long)]
        count: bool,
    },
    /// Cores of the reduction algorithm with the form histogram.
    Cores {
        #[arg(long = "type")]
        ty: String,
        /// Include the record of every leaf.
        #[arg(long)]
        records: bool,
        /// Fail unless the number of distinct nonabelian cores equals this.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Core graphs, arms and legs, and the reduction-lemma check.
    Graph {
        #[arg(long = "type")]
        ty: String,
        /// Restrict to one form `z,m,c`.
        #[arg(long)]
        form: Option<String>,
        /// Print Graphviz DOT instead.
        #[arg(long)]
        dot: bool,
        /// Neighbour followed from the minimal root of an odd circle.
        #[arg(long, value_enum, default_value_t = Base::Max)]
        base: Base,
    },
    /// Isomorphism classes of the nonabelian cores.
    Iso {
        #[arg(long = "type")]
        ty: String,
        /// Characteristic.
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long)]
        form: Option<String>,
        /// Node cap of each search; 0 removes the cap.
        #[arg(long, default_value_t = 10_000_000)]
        node_cap: u64,
    },
    /// Degree spectra of the nonabelian cores at concrete q.
    Resolve {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        q: Vec<u32>,
        #[arg(long)]
        form: Option<String>,
        /// Resolve every distinct core instead of one per form.
        #[arg(long)]
        all: bool,
        /// Fail on any difference from the bundled family data or any unresolved slice.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Regime tables, totals and deltas.
    Tables {
        #[arg(long = "type")]
        ty: String,
        /// One regime, e.g. `p=2`.
        #[arg(long)]
        regime: Option<String>,
    },
    /// End-to-end checks at concrete q.
    Verify {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        q: Vec<u32>,
        /// log2 of the largest group handed to the oracle.
        #[arg(long, default_value_t = 16)]
        max_dixon: u32,
        /// log2 of the largest quotient tabulated by the oracle.
        #[arg(long, default_value_t = 12)]
        max_quotient: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Roots { .. } => "roots",
            Command::Antichains { .. } => "antichains",
            Command::Cores { .. } => "cores",
            Command::Graph { .. } => "graph",
            Command::Iso { .. } => "iso",
            Command::Resolve { .. } => "resolve",
            Command::Tables { .. } => "tables",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Rendered artifact and whether all requested checks passed.
struct Output {
    text: String,
    ext: &'static str,
    ok: bool,
}

fn json_out(v: Value, ok: bool) -> Result<Output> {
    Ok(Output { text: serde_json::to_string_pretty(&v)? + "\n", ext: "json", ok })
}

fn csv_out(text: String, ok: bool) -> Output {
    Output { text, ext: "csv", ok }
}

fn parse_form(s: &Option<String>) -> Result<Option<CoreForm>> {
    s.as_ref()
        .map(|f| CoreForm::parse(f).ok_or_else(|| Error::Input(format!("bad form '{f}', expected z,m,c"))))
        .transpose()
}

fn filter_form(rs: &RootSystem, pairs: Vec<(RootSet, RootSet)>, f: Option<CoreForm>) -> Vec<(RootSet, RootSet)> {
    pairs
        .into_iter()
        .filter(|&(s, z)| f.is_none_or(|f| sylowchar_core::coregraph::form(rs, s, z) == f))
        .collect()
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::Input(format!("format {format:?} is not available for {command}"))
}

fn run(cli: &Cli) -> Result<Output> {
    let rs_of = |ty: &str| data::root_system(ty, cli.root_order.as_ref());
    match &cli.command {
        Command::Roots { ty } => {
            let rs = rs_of(ty)?;
            match cli.format {
                Format::Json => json_out(emit::roots(&rs), true),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = rs
                        .roots
                        .iter()
                        .map(|r| {
                            let c: Vec<String> = r.coeffs.iter().map(|x| x.to_string()).collect();
                            vec![r.index.to_string(), r.height.to_string(), c.join(" ")]
                        })
                        .collect();
                    Ok(csv_out(emit::rows_csv(&["index", "height", "coeffs"], &rows)?, true))
                }
                Format::Tex => Err(unsupported(cli.format, "roots")),
            }
        }
        Command::Antichains { ty, count } => {
            let rs = rs_of(ty)?;
            let n = count_antichains(&rs);
            let list = (!count).then(|| antichains(&rs));
            match cli.format {
                Format::Json => {
                    let mut v = json!({"type": rs.ty.to_string(), "count": n});
                    if let Some(l) = &list {
                        v["antichains"] = json!(l.iter().map(|a| a.labels()).collect::<Vec<_>>());
                    }
                    json_out(v, true)
                }
                Format::Csv => {
                    let rows: Vec<Vec<String>> = match &list {
                        Some(l) => l.iter().map(|a| vec![emit::labels(*a).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")]).collect(),
                        None => vec![vec![n.to_string()]],
                    };
                    let header = if list.is_some() { "antichain" } else { "count" };
                    Ok(csv_out(emit::rows_csv(&[header], &rows)?, true))
                }
                Format::Tex => Err(unsupported(cli.format, "antichains")),
            }
        }
        Command::Cores { ty, records, expect } => {
            let rs = rs_of(ty)?;
            let outcome = pipeline::enumerate_cores(&rs);
            let distinct = outcome.distinct_nonabelian();
            let hist = form_histogram(&rs, &distinct);
            let ok = expect.is_none_or(|n| n == distinct.len());
            match cli.format {
                Format::Json => {
                    let forms: Vec<Value> = hist.iter().map(|(f, c)| json!({"form": f.to_string(), "count": c})).collect();
                    let mut v = json!({
                        "type": rs.ty.to_string(),
                        "antichains": count_antichains(&rs),
                        "leaves": {"abelian": outcome.abelian_cores.len(), "nonabelian": outcome.nonabelian_cores.len()},
                        "nonabelian_cores": distinct.len(),
                        "forms": forms,
                    });
                    if let Some(n) = expect {
                        v["expected"] = json!(n);
                        v["matches_expected"] = json!(ok);
                    }
                    if *records {
                        v["records"] = json!({
                            "abelian": outcome.abelian_cores.iter().map(emit::core_record).collect::<Vec<_>>(),
                            "nonabelian": outcome.nonabelian_cores.iter().map(emit::core_record).collect::<Vec<_>>(),
                        });
                    }
                    json_out(v, ok)
                }
                Format::Csv => {
                    let rows: Vec<Vec<String>> = hist.iter().map(|(f, c)| vec![f.to_string(), c.to_string()]).collect();
                    Ok(csv_out(emit::rows_csv(&["form", "count"], &rows)?, ok))
                }
                Format::Tex => Err(unsupported(cli.format, "cores")),
            }
        }
        Command::Graph { ty, form, dot, base } => {
            let rs = rs_of(ty)?;
            let pairs = filter_form(&rs, pipeline::enumerate_cores(&rs).distinct_nonabelian(), parse_form(form)?);
            if *dot {
                let mut text = String::new();
                for (k, &(s, z)) in pairs.iter().enumerate() {
                    text.push_str(&CoreGraph::new(&rs, s, z).to_dot(&format!("core{k}")));
                }
                return Ok(Output { text, ext: "dot", ok: true });
            }
            let dir = match base {
                Base::Max => BaseDirection::MaxNeighbour,
                Base::Min => BaseDirection::MinNeighbour,
            };
            let graphs: Vec<Value> = pairs
                .iter()
                .map(|&(s, z)| emit::graph(&rs, s, z, sylowchar_core::coregraph::form(&rs, s, z), dir))
                .collect();
            let failing = graphs.iter().filter(|g| g["corplus"]["holds"] == json!(false)).count();
            match cli.format {
                Format::Json => json_out(json!({"type": rs.ty.to_string(), "cores": graphs, "corplus_failures": failing}), true),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = graphs
                        .iter()
                        .map(|g| {
                            vec![
                                g["core"]["form"].as_str().unwrap_or_default().to_string(),
                                g["circles"].as_array().map_or(0, |a| a.len()).to_string(),
                                g["heart"].to_string(),
                                g["arm"].to_string(),
                                g["leg"].to_string(),
                                g["corplus"]["holds"].to_string(),
                            ]
                        })
                        .collect();
                    Ok(csv_out(emit::rows_csv(&["form", "circles", "heart", "arm", "leg", "corplus"], &rows)?, true))
                }
                Format::Tex => Err(unsupported(cli.format, "graph")),
            }
        }
        Command::Iso { ty, p, form, node_cap } => {
            let rs = rs_of(ty)?;
            let pairs = filter_form(&rs, pipeline::enumerate_cores(&rs).distinct_nonabelian(), parse_form(form)?);
            let cap = if *node_cap == 0 { u64::MAX } else { *node_cap };
            let classes = classify(&rs, &pairs, *p, IsoConfig { node_cap: cap });
            let forms: std::collections::BTreeSet<_> = classes.iter().map(|c| c.form).collect();
            let mut ok = true;
            let out: Vec<Value> = classes
                .iter()
                .map(|c| {
                    let rep = pairs[c.members[0]].0;
                    let verified = c
                        .witnesses
                        .iter()
                        .enumerate()
                        .all(|(k, w)| verify_witness(&rs, rep, &rs, pairs[c.members[k + 1]].0, *p, w));
                    ok &= verified && !c.inconclusive;
                    let members: Vec<Value> = c
                        .members
                        .iter()
                        .map(|&m| json!({"S": emit::labels(pairs[m].0), "Z": emit::labels(pairs[m].1)}))
                        .collect();
                    json!({
                        "form": c.form.to_string(),
                        "layer_sizes": c.layer_sizes,
                        "members": members,
                        "witnesses_verified": verified,
                        "inconclusive": c.inconclusive,
                    })
                })
                .collect();
            match cli.format {
                Format::Json => json_out(
                    json!({
                        "type": rs.ty.to_string(),
                        "p": p,
                        "classes": out,
                        "class_count": classes.len(),
                        "form_count": forms.len(),
                        "classes_equal_forms": classes.len() == forms.len(),
                    }),
                    ok,
                ),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = out
                        .iter()
                        .map(|c| {
                            vec![
                                c["form"].as_str().unwrap_or_default().to_string(),
                                c["members"].as_array().map_or(0, |a| a.len()).to_string(),
                                c["witnesses_verified"].to_string(),
                                c["inconclusive"].to_string(),
                            ]
                        })
                        .collect();
                    Ok(csv_out(emit::rows_csv(&["form", "members", "verified", "inconclusive"], &rows)?, ok))
                }
                Format::Tex => Err(unsupported(cli.format, "iso")),
            }
        }
        Command::Resolve { ty, q, form, all, check, node_budget } => {
            let rs = rs_of(ty)?;
            let bundle = Bundle::load()?;
            let pairs = filter_form(&rs, pipeline::enumerate_cores(&rs).distinct_nonabelian(), parse_form(form)?);
            let pairs: Vec<_> = if *all { pairs } else { pipeline::form_representatives(&rs, &pairs).into_values().collect() };
            let mut config = ResolverConfig::default();
            if let Some(b) = node_budget {
                config.node_budget = *b;
            }
            let tyname = rs.ty.to_string();
            let mut ok = true;
            let mut items = Vec::new();
            let mut rows = Vec::new();
            for &qq in q {
                for r in pipeline::resolve_cores(&rs, &pairs, qq, &config)? {
                    let mut v = emit::family_spectrum(r.form, r.s, r.z, qq, &r.result);
                    if *check {
                        ok &= r.result.is_complete();
                        if bundle.has_families(&tyname) && r.result.is_complete() {
                            let d = compare_with_family_data(&bundle.families, &tyname, r.form, qq, &r.result.spectrum)?;
                            ok &= d.is_empty();
                            v["family_diff"] = emit::diff(&d);
                        }
                    }
                    for (deg, c) in r.result.spectrum.entries() {
                        rows.push(vec![r.form.to_string(), qq.to_string(), deg.to_string(), c.to_string(), r.result.provenance.name().to_string()]);
                    }
                    items.push(v);
                }
            }
            match cli.format {
                Format::Json => json_out(json!({"type": tyname, "spectra": items}), ok),
                Format::Csv => Ok(csv_out(emit::rows_csv(&["form", "q", "degree", "count", "provenance"], &rows)?, ok)),
                Format::Tex => Err(unsupported(cli.format, "resolve")),
            }
        }
        Command::Tables { ty, regime } => {
            let rs = rs_of(ty)?;
            let bundle = Bundle::load()?;
            let tyname = rs.ty.to_string();
            let mut regimes = bundle.regimes_of(&tyname);
            if let Some(r) = regime {
                let want = Regime::parse(&format!("{tyname} {r}")).ok_or_else(|| Error::Input(format!("bad regime '{r}'")))?;
                regimes.retain(|x| *x == want);
            }
            if regimes.is_empty() {
                return Err(Error::Input(format!("no regime tables for {tyname}")));
            }
            let outcome = pipeline::enumerate_cores(&rs);
            let mut computed: Vec<(Regime, RegimeTable)> = Vec::new();
            for r in &regimes {
                computed.push((r.clone(), aggregate_tables(&rs, &outcome, &bundle.families, r)?));
            }
            let map = computed.iter().cloned().collect();
            let claims: Vec<_> = bundle.claims.iter().filter(|c| c.ty == tyname).cloned().collect();
            let report = totals_and_deltas(&map, &claims);
            let order = sylowchar_core::tabulate::CountPolynomial::q().pow(rs.len() as u32);
            let mut ok = report.totals.iter().all(|t| t.consistent);
            let mut tables_json = Vec::new();
            for (r, t) in &computed {
                let diffs = t.diff(&bundle.tables[r]);
                let complete = t.mass() == order;
                ok &= diffs.is_empty() && complete;
                let mut v = emit::table(r, t);
                v["matches_bundled"] = json!(diffs.is_empty());
                v["completeness"] = json!(complete);
                v["differences"] = json!(diffs
                    .iter()
                    .map(|(k, a, b)| json!({"degree": k.to_string(), "computed": a.to_string(), "bundled": b.to_string()}))
                    .collect::<Vec<_>>());
                tables_json.push(v);
            }
            match cli.format {
                Format::Json => json_out(json!({"type": tyname, "tables": tables_json, "report": emit::totals(&report)}), ok),
                Format::Csv => Ok(csv_out(emit::tables_csv(&computed)?, ok)),
                Format::Tex => {
                    let mut text = String::new();
                    for (r, t) in &computed {
                        text.push_str(&emit::table_tex(r, t));
                        text.push('\n');
                    }
                    for d in &report.deltas {
                        text.push_str(&format!(
                            "% delta {} {} minus {}: computed {}; claimed {}\n",
                            d.ty, d.special, d.generic, d.computed, d.claimed
                        ));
                    }
                    Ok(Output { text, ext: "tex", ok })
                }
            }
        }
        Command::Verify { ty, q, max_dixon, max_quotient } => {
            let rs = rs_of(ty)?;
            let bundle = Bundle::load()?;
            if *max_dixon > 40 || *max_quotient > 16 {
                return Err(Error::Input("oracle bounds too large".to_string()));
            }
            let bounds = DixonBounds { max_group_order: 1u64 << max_dixon, max_quotient_order: 1u64 << max_quotient };
            let mut reports = Vec::new();
            let mut ok = true;
            for &qq in q {
                let r = verify::verify(&rs, &bundle, qq, bounds, &ResolverConfig::default())?;
                ok &= r.passed();
                reports.push(r);
            }
            match cli.format {
                Format::Json => json_out(json!({"passed": ok, "runs": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()}), ok),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = reports
                        .iter()
                        .flat_map(|r| r.checks.iter().map(move |c| vec![r.ty.clone(), r.q.to_string(), c.name.clone(), c.passed.to_string(), c.detail.clone()]))
                        .collect();
                    Ok(csv_out(emit::rows_csv(&["type", "q", "check", "passed", "detail"], &rows)?, ok))
                }
                Format::Tex => Err(unsupported(cli.format, "verify")),
            }
        }
    }
}

fn write_artifacts(cli: &Cli, dir: &PathBuf, out: &Output) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.clone(), source })?;
    let name = format!("{}.{}", cli.command.name(), out.ext);
    let path = dir.join(&name);
    fs::write(&path, &out.text).map_err(|source| Error::Io { path: path.clone(), source })?;
    let args: Vec<String> = std::env::args().skip(1).collect();
    let manifest = json!({
        "command": cli.command.name(),
        "args": args,
        "passed": out.ok,
        "files": [{"name": name, "bytes": out.text.len()}],
    });
    let mpath = dir.join("manifest.json");
    fs::write(&mpath, serde_json::to_string_pretty(&manifest)? + "\n").map_err(|source| Error::Io { path: mpath, source })?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("{}", json!({"error": {"kind": "input", "message": "invalid thread count"}}));
            return ExitCode::from(2);
        }
    }
    let result = run(&cli).and_then(|out| {
        match &cli.out {
            Some(dir) => write_artifacts(&cli, dir, &out)?,
            None => print!("{}", out.text),
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", json!({"error": {"kind": e.kind(), "message": e.to_string()}}));
            ExitCode::from(2)
        }
    }
}
