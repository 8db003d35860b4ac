use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sylowchar")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sylowchar-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn antichain_count_of_e6() {
    let out = run(&["antichains", "--type", "E6", "--count"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["count"], 833);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = run(&["cores", "--type", "D6", "--records", "--threads", "1"]);
    let b = run(&["cores", "--type", "D6", "--records", "--threads", "4"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["nonabelian_cores"], 27);
}

#[test]
fn expectation_controls_exit_code() {
    assert_eq!(run(&["cores", "--type", "D6", "--expect", "27"]).status.code(), Some(0));
    let out = run(&["cores", "--type", "D6", "--expect", "28"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["matches_expected"], false);
}

#[test]
fn errors_are_structured() {
    let out = run(&["roots", "--type", "Q3"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "root-system");
    let out = run(&["cores", "--type", "D4", "--format", "tex"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "input");
}

#[test]
fn resolve_check_passes_for_d6() {
    let out = run(&["resolve", "--type", "D6", "--q", "2,3", "--check"]);
    assert!(out.status.success());
    let v = json(&out);
    let spectra = v["spectra"].as_array().unwrap();
    assert_eq!(spectra.len(), 14);
    assert!(spectra.iter().all(|s| s["family_diff"].as_array().is_some_and(|d| d.is_empty())));
}

#[test]
fn tables_report_deltas_in_every_format() {
    let out = run(&["tables", "--type", "D6"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["tables"].as_array().unwrap().len(), 2);
    assert!(v["tables"].as_array().unwrap().iter().all(|t| t["matches_bundled"] == true));
    let csv = run(&["tables", "--type", "D6", "--format", "csv"]);
    assert!(csv.status.success());
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("regime,"));
    let tex = String::from_utf8(run(&["tables", "--type", "D6", "--format", "tex"]).stdout).unwrap();
    assert!(tex.contains("\\begin{tabular}"));
    assert!(tex.contains("% delta D6 p=2"));
}

#[test]
fn out_directory_gets_artifact_and_manifest() {
    let dir = scratch("out");
    let out = run(&["verify", "--type", "D4", "--q", "2", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "verify");
    assert_eq!(manifest["passed"], true);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("verify.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn root_order_file_is_applied() {
    let dir = scratch("order");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.txt");
    std::fs::write(&path, "# swap the simple roots\n2 1 3\n").unwrap();
    let plain = json(&run(&["roots", "--type", "A2"]));
    let swapped = json(&run(&["roots", "--type", "A2", "--root-order", path.to_str().unwrap()]));
    assert_eq!(plain["roots"][0]["coeffs"], swapped["roots"][1]["coeffs"]);
    std::fs::write(&path, "1 1 3\n").unwrap();
    assert_eq!(run(&["roots", "--type", "A2", "--root-order", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn graph_dot_and_iso() {
    let out = run(&["graph", "--type", "D6", "--form", "3,9,6", "--dot"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().matches("graph ").count(), 7);
    let v = json(&run(&["iso", "--type", "D6", "--p", "3"]));
    assert_eq!(v["class_count"], 7);
    assert_eq!(v["classes_equal_forms"], true);
}

#[test]
fn data_directory_override() {
    let dir = scratch("data");
    std::fs::create_dir_all(&dir).unwrap();
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data");
    for f in ["families.txt", "regime_tables.txt", "claimed_deltas.txt"] {
        std::fs::copy(src.join(f), dir.join(f)).unwrap();
    }
    let out = Command::new(env!("CARGO_BIN_EXE_sylowchar"))
        .args(["tables", "--type", "D6", "--regime", "p=2"])
        .env("SYLOWCHAR_DATA_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    std::fs::write(dir.join("regime_tables.txt"), "D6 p=2 | q^2 | (v\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_sylowchar"))
        .args(["tables", "--type", "D6"])
        .env("SYLOWCHAR_DATA_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "data");
    std::fs::remove_dir_all(dir).unwrap();
}
