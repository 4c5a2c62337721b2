use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn quiver(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../quivers").join(name)
}

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hallforge"));
    cmd.args(args).env_remove("HALLFORGE_CACHE");
    if let Some(dir) = cache {
        cmd.env("HALLFORGE_CACHE", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn a(name: &str) -> String {
    quiver(name).to_string_lossy().into_owned()
}

#[test]
fn period_one_product_example() {
    let out = run(
        &[
            "dha-mul",
            "--t",
            "1",
            "--q",
            "2",
            "--quiver",
            &a("a1.json"),
            "--lhs",
            "[k1@0]",
            "--rhs",
            "[k1@0]",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["command"], "dha-mul");
    assert_eq!(r["results"]["coefficients"]["[k2@0]"], "0 + 3/2*v");
    assert_eq!(r["results"]["coefficients"]["[]"], "0 + 1*v");
    assert_eq!(r["results"]["coefficients"].as_object().unwrap().len(), 2);
    assert!(r["timing_ms"].is_u64());
}

#[test]
fn classes_example() {
    let out = run(
        &["classes", "--quiver", &a("a2.json"), "--q", "2", "--dim", "1,1"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["count"], 2);
}

#[test]
fn green_example() {
    let out = run(
        &["green", "--quiver", &a("a1.json"), "--q", "2", "--max-dim", "2"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["results"]["passed"], true);
    assert!(r["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn empty_bound_is_a_vacuous_pass() {
    let out = run(&["green", "--quiver", &a("a2.json"), "--max-dim", "0"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["checks"][0]["checked"], 1);
}

#[test]
fn sweeps_pass() {
    let q = a("a2.json");
    for args in [
        vec!["dha-assoc", "--quiver", &q, "--t", "0"],
        vec![
            "dha-assoc",
            "--quiver",
            &q,
            "--t",
            "3",
            "--samples",
            "40",
            "--seed",
            "7",
        ],
        vec!["relations", "--quiver", &q, "--max-dim", "1"],
        vec!["crosscheck", "--quiver", &q, "--t", "0"],
        vec!["crosscheck", "--quiver", &q, "--t", "1", "--max-dim", "1"],
    ] {
        let out = run(&args, None);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(json(&out)["results"]["passed"], true, "{args:?}");
    }
}

#[test]
fn reports_are_byte_identical() {
    let q = a("a2.json");
    let args = [
        "dha-assoc",
        "--quiver",
        &q,
        "--t",
        "1",
        "--samples",
        "25",
        "--seed",
        "3",
        "--no-timing",
    ];
    let first = run(&args, None);
    let second = run(&args, None);
    assert_eq!(first.stdout, second.stdout);
    assert!(json(&first)["timing_ms"].is_null());
    let other = run(
        &[
            "dha-assoc",
            "--quiver",
            &q,
            "--t",
            "1",
            "--samples",
            "25",
            "--seed",
            "4",
            "--no-timing",
        ],
        None,
    );
    assert_ne!(json(&first)["fingerprint"], json(&other)["fingerprint"]);
}

#[test]
fn fingerprint_ignores_the_file_path() {
    let dir = tempfile::tempdir().unwrap();
    let copy = dir.path().join("renamed.json");
    fs::copy(quiver("a1.json"), &copy).unwrap();
    let x = run(&["gamma", "--quiver", &a("a1.json"), "--no-timing"], None);
    let y = run(&["gamma", "--quiver", copy.to_str().unwrap(), "--no-timing"], None);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn exit_codes() {
    let q = a("a1.json");
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(run(&["classes"], None).status.code(), Some(2));
    assert_eq!(run(&["dha-mul", "--quiver", &q], None).status.code(), Some(2));
    assert_eq!(
        run(
            &["dha-mul", "--quiver", &q, "--t", "2", "--lhs", "[]", "--rhs", "[]"],
            None
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&["classes", "--quiver", &q, "--q", "4"], None).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["classes", "--quiver", &a("cyclic.json")], None).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["dha-mul", "--quiver", &q, "--lhs", "[x1@0]", "--rhs", "[]"], None)
            .status
            .code(),
        Some(2)
    );
    let big = run(&["classes", "--quiver", &a("a2.json"), "--dim", "5,5"], None);
    assert_eq!(big.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&big.stderr).contains("1048576"));
    assert_eq!(
        run(&["classes", "--quiver", &q, "--q", "11"], None).status.code(),
        Some(3)
    );
}

#[test]
fn csv_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hall.csv");
    let out = run(
        &[
            "hall",
            "--quiver",
            &a("a1.json"),
            "--max-dim",
            "2",
            "--csv",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("quotient,sub,middle,g"));
    assert!(lines.any(|l| l == "k1,k1,k2,3"));
}

fn cache_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

#[test]
fn cache_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let q = a("a2.json");
    let args = ["hall", "--quiver", &q, "--max-dim", "2", "--no-timing"];
    let cold = run(&args, None);
    let first = run(&args, Some(dir.path()));
    let files = cache_files(dir.path());
    assert_eq!(files.len(), 1);
    let warm = run(&args, Some(dir.path()));
    assert!(warm.stderr.is_empty(), "{}", String::from_utf8_lossy(&warm.stderr));
    assert_eq!(cold.stdout, first.stdout);
    assert_eq!(first.stdout, warm.stdout);

    // corrupt entries are reported and recomputed
    fs::write(&files[0], "{ not json").unwrap();
    let fallback = run(&args, Some(dir.path()));
    assert_eq!(fallback.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&fallback.stderr).contains("cache invalid"));
    assert_eq!(fallback.stdout, cold.stdout);
    // and replaced by a good one
    assert!(run(&args, Some(dir.path())).stderr.is_empty());
}

#[test]
fn cache_rejects_foreign_entries() {
    let a1_dir = tempfile::tempdir().unwrap();
    let a2_dir = tempfile::tempdir().unwrap();
    run(&["classes", "--quiver", &a("a1.json")], Some(a1_dir.path()));
    run(&["classes", "--quiver", &a("a2.json")], Some(a2_dir.path()));
    let a1_file = &cache_files(a1_dir.path())[0];
    let a2_file = &cache_files(a2_dir.path())[0];
    assert_ne!(a1_file.file_name(), a2_file.file_name());
    fs::copy(a1_file, a2_file).unwrap();
    let out = run(&["classes", "--quiver", &a("a2.json")], Some(a2_dir.path()));
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cache invalid"));
}

#[test]
fn concurrent_stores_leave_one_consistent_entry() {
    let dir = tempfile::tempdir().unwrap();
    let q = a("a2.json");
    let children: Vec<_> = (0..4)
        .map(|_| {
            Command::new(env!("CARGO_BIN_EXE_hallforge"))
                .args(["gamma", "--quiver", &q, "--no-timing"])
                .env("HALLFORGE_CACHE", dir.path())
                .stdout(std::process::Stdio::null())
                .spawn()
                .unwrap()
        })
        .collect();
    for mut c in children {
        assert!(c.wait().unwrap().success());
    }
    let files = cache_files(dir.path());
    assert_eq!(files.len(), 1, "{files:?}");
    let out = run(&["gamma", "--quiver", &q, "--no-timing"], Some(dir.path()));
    assert!(out.stderr.is_empty(), "{}", String::from_utf8_lossy(&out.stderr));
}
