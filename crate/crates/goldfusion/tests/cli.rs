use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn goldfusion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_goldfusion"))
        .args(args)
        .env_remove("GOLDFUSION_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn verify_named_and_file_rings() {
    let out = goldfusion(&["verify", "--ring", "tt3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tt3.json");
    let built = goldfusion(&["build", "--ring", "tt3", "--out", path.to_str().unwrap()]);
    assert_eq!(built.status.code(), Some(0));
    let out = goldfusion(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["checks"][2]["axiom"], "associativity");
    assert_eq!(report["checks"][2]["checked"], 216);
}

#[test]
fn verify_reports_witness_on_failure() {
    let dir = tempfile::tempdir().unwrap();
    // Fib with tau x tau missing the unit
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"basis":["1","tau"],"unit":0,"dual":[0,1],"fusion":[[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,1,1]]}"#,
    );
    let out = goldfusion(&["verify", "--in", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["passed"], false);
    let failing: Vec<&Value> = report["checks"].as_array().unwrap().iter().filter(|c| c["failures"] != 0).collect();
    assert!(!failing.is_empty());
    assert!(failing[0]["first"]["witness"].is_array());
}

#[test]
fn build_then_identify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let out = goldfusion(&["build", "--family", "fib-wreath", "--n", "2", "--m", "1", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let out = goldfusion(&["identify", "--in", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["name"], "FibWreath(2,1)");

    let pointed = write(
        dir.path(),
        "z2.json",
        r#"{"basis":["e","g"],"unit":0,"dual":[0,1],"fusion":[[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]]}"#,
    );
    assert_eq!(json(&goldfusion(&["identify", "--in", &pointed]))["name"], "unknown");
}

#[test]
fn output_is_deterministic() {
    let a = goldfusion(&["build", "--family", "tt3-wreath", "--n", "1", "--m", "1"]);
    let b = goldfusion(&["--threads", "3", "build", "--family", "tt3-wreath", "--n", "1", "--m", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v1 = goldfusion(&["--threads", "1", "verify", "--ring", "fib^3"]);
    let v4 = goldfusion(&["--threads", "4", "verify", "--ring", "fib^3"]);
    assert_eq!(v1.stdout, v4.stdout);
}

#[test]
fn classify_small_catalog() {
    let out = goldfusion(&["classify", "--n-max", "2", "--m-max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1]["family"], "FibWreath");
    assert_eq!(rows[1]["rank"], 8);
    assert_eq!(rows[1]["grading_order"], 2);
    assert_eq!(rows[1]["global_dim"], serde_json::json!([10, 10]));
    assert_eq!(rows[2]["rank"], 12);
    assert_eq!(rows[2]["twist_count"], 2);
}

#[test]
fn eval_and_consistency() {
    let out = goldfusion(&["eval", "--ring", "tt3", "--map", "a=rho,b=mu", "--word", "ab"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["image"], serde_json::json!({"sigmabar": 1}));
    assert_eq!(v["simple"], true);

    let dir = tempfile::tempdir().unwrap();
    let braid = write(dir.path(), "braid.json", r#"{"generators":2,"relations":[["aba","bab"]]}"#);
    let comm = write(dir.path(), "comm.json", r#"{"generators":2,"relations":[["ab","ba"]]}"#);
    let ok = goldfusion(&["eval", "--ring", "tt3", "--map", "a=rho,b=mu", "--presentation", &braid]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["consistent"], true);
    let bad = goldfusion(&["eval", "--ring", "tt3", "--map", "a=rho,b=mu", "--presentation", &comm]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["first_failure"]["rhs"], serde_json::json!({"sigma": 1}));
}

#[test]
fn derive_n5_case() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "n5case.json",
        r#"{"generators":3,"relations":[["ab","ba"],["bcb","cbc"],["aca","cac"],["abcab","bcaba"]]}"#,
    );
    let out = goldfusion(&["derive", "--presentation", &p, "--budget", "50000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["outcome"], "derived");
    assert_eq!(v["conclusion"], "a = c");
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.last().unwrap()["lhs"].as_str().unwrap().len(), 1);

    let braid = write(dir.path(), "braid.json", r#"{"generators":2,"relations":[["aba","bab"]]}"#);
    let out = goldfusion(&["derive", "--presentation", &braid, "--budget", "500"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"], "exhausted");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(dir.path(), "broken.json", "{\"basis\": [");
    for args in [
        vec!["verify", "--in", broken.as_str()],
        vec!["verify"],
        vec!["verify", "--ring", "nope"],
        vec!["frobnicate"],
        vec!["eval", "--ring", "tt3", "--map", "a=sigma", "--word", "a"],
        vec!["derive", "--presentation", broken.as_str()],
        vec!["classify", "--n-max", "0"],
    ] {
        let out = goldfusion(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn threads_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_goldfusion"))
        .args(["verify", "--ring", "fib^2"])
        .env("GOLDFUSION_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
