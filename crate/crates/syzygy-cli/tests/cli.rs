use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syzygy")).args(args).env_remove("SYZYGY_JOBS").output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("syzygy-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn betti_examples() {
    assert_eq!(stdout(&["betti", "--preset", "veronese:3", "--qmax", "4"]), "R[0,0] = 1\nR[1,2] = 3\nR[2,3] = 2\n");
    assert_eq!(stdout(&["betti", "--preset", "most_singular:2", "--qmax", "4"]), "R[0,0] = 1\nR[1,2] = 3\nR[2,3] = 2\n");
    assert_eq!(stdout(&["betti", "--preset", "veronese:3", "--csv"]), "p,q,dim\n0,0,1\n1,2,3\n2,3,2\n");
}

#[test]
fn betti_json_schema() {
    let v: Value = serde_json::from_str(&stdout(&["betti", "--preset", "pluecker:5", "--qmax", "5", "--json"])).unwrap();
    let entries: Vec<(u64, u64, u64)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["p"].as_u64().unwrap(), e["q"].as_u64().unwrap(), e["dim"].as_u64().unwrap()))
        .collect();
    assert_eq!(entries, vec![(0, 0, 1), (1, 2, 5), (2, 3, 5), (3, 5, 1)]);
    assert_eq!(v["params"]["preset"], "pluecker:5");
    assert_eq!(v["params"]["qmax"], 5);
}

#[test]
fn output_does_not_depend_on_jobs() {
    for args in [vec!["betti", "--preset", "pluecker:5", "--json"], vec!["liecoh", "--preset", "veronese:4"]] {
        let mut one = args.clone();
        one.extend(["--jobs", "1"]);
        let mut four = args.clone();
        four.extend(["--jobs", "4"]);
        assert_eq!(stdout(&one), stdout(&four));
        assert_eq!(stdout(&one), stdout(&one));
    }
}

#[test]
fn custom_preset() {
    // x0 x1 = 0 and x2^2 = 0 in three variables
    let f = scratch("custom.json", r#"{"n_gens": 3, "quadrics": [[[0,1,1,1]], [[2,2,1,1]]]}"#);
    let out = stdout(&["betti", "--custom", f.to_str().unwrap(), "--qmax", "4"]);
    assert!(out.starts_with("R[0,0] = 1\nR[1,2] = 2\n"), "{out}");
    let bad = scratch("bad.json", r#"{"n_gens": 2, "quadrics": [[[1,0,1,1]]]}"#);
    assert_eq!(run(&["betti", "--custom", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_levels() {
    let full = stdout(&["verify", "--preset", "pluecker:5", "--level", "full"]);
    assert!(full.ends_with("status: pass\n"), "{full}");
    assert!(!full.contains("FAIL") && !full.contains("SKIP"));
    let ms = stdout(&["verify", "--preset", "most_singular:3"]);
    assert!(ms.contains("hilbert           PASS") && ms.contains("chevalley         PASS"), "{ms}");
    assert!(ms.contains("duality           SKIP"));
    let v: Value = serde_json::from_str(&stdout(&["verify", "--preset", "pluecker:6", "--qmax", "5", "--json"])).unwrap();
    assert_eq!(v["status"], "partial");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] != "FAIL"));
}

#[test]
fn char_examples() {
    assert_eq!(stdout(&["char", "--expr", "h2@e2"]), "s[2,2] + s[1,1,1,1]\n");
    assert_eq!(stdout(&["char", "--expr", "s[1]*s[1]"]), "s[2] + s[1,1]\n");
    assert_eq!(stdout(&["char", "--expr", "e2", "--nvars", "3"]), "s[1,1]\ndim at 3 variables: 3\n");
    let g = stdout(&["char", "--grchar", "5", "--cutoff", "6"]);
    assert_eq!(g, "t^0: 1\nt^2: -s[1,1,1,1]\nt^3: s[2,1,1,1,1]\nt^5: -s[2,2,2,2,2]\nidentity: PASS\n");
    assert!(stdout(&["char", "--littlewood", "--nvars", "3", "--cutoff", "8"]).ends_with("identity: PASS\n"));
}

#[test]
fn bwb_examples() {
    assert_eq!(stdout(&["bwb", "--system", "A4", "--lambda", "[0,1,0,0]", "--index"]), "N=5\n");
    assert_eq!(stdout(&["bwb", "--system", "D5", "--lambda", "[0,0,0,0,1]", "--index"]), "N=8\n");
    assert_eq!(stdout(&["bwb", "--system", "A4", "--lambda", "[0,2,0,0]", "--index"]), "not subcanonical\n");
    assert!(stdout(&["bwb", "--system", "A1", "--mu", "[2]"]).starts_with("H^1, dim 1\n"));
    assert_eq!(stdout(&["bwb", "--system", "A2", "--mu", "[1,0]"]), "zero\n");
    assert!(stdout(&["bwb", "--system", "A1", "--lambda", "[1]", "--hv", "-3:3"]).ends_with("vanishing pattern: PASS\n"));
}

#[test]
fn hookalg_commands() {
    let t = stdout(&["hookalg", "--gr2n", "5"]);
    assert_eq!(t, "A[0,0] = 1  (dim 1)\nA[1,2] = s[1,1,1,1]  (dim 5)\nA[1,3] = s[2,1,1,1,1]  (dim 5)\nA[2,5] = s[2,2,2,2,2]  (dim 1)\n");
    assert!(stdout(&["hookalg", "--gr2n", "5", "--cross-check", "--quadratic", "2"]).ends_with("quadratic: PASS\n"));
    let spec = scratch("hooks.json", r#"{"hooks": [{"arm": 1, "leg": 1, "parity": 0}, {"arm": 0, "leg": 0, "parity": 0}], "k": 3}"#);
    let v: Value = serde_json::from_str(&stdout(&["hookalg", "--spec", spec.to_str().unwrap(), "--json"])).unwrap();
    let table = v["table"].as_array().unwrap();
    assert_eq!(table.len(), 4);
    let bad = scratch("badhooks.json", r#"{"hooks": [{"arm": 1, "leg": 0, "parity": 0}, {"arm": 0, "leg": 1, "parity": 0}], "k": 3}"#);
    assert_eq!(run(&["hookalg", "--spec", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn liecoh_and_perturbation() {
    let out = stdout(&["liecoh", "--preset", "pluecker:5", "--products"]);
    assert!(out.contains("H^2_5 = 1  (R[3,5])"), "{out}");
    assert!(out.contains("matches Koszul Betti table: PASS") && out.contains("products match Tor algebra: PASS"));
    let sc: Value = serde_json::from_str(&stdout(&["liecoh", "--preset", "most_singular:2", "--qmax", "3", "--structure-constants"])).unwrap();
    let first = &sc.as_array().unwrap()[0];
    for key in ["deg_a", "deg_b", "i", "j", "coeffs"] {
        assert!(first.get(key).is_some(), "missing {key} in {first}");
    }
    let p = stdout(&["perturb-demo", "--preset", "veronese:3"]);
    assert!(p.contains("lemma identities: PASS") && p.ends_with("recovers A: PASS\n"), "{p}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["betti", "--preset", "foo:3"]).status.code(), Some(2));
    assert_eq!(run(&["betti"]).status.code(), Some(2));
    assert_eq!(run(&["char", "--expr", "s[1"]).status.code(), Some(2));
    assert_eq!(run(&["bwb", "--system", "B3", "--mu", "[1,0,0]"]).status.code(), Some(2));
    assert_eq!(run(&["bwb", "--system", "A2", "--mu", "[1,x]"]).status.code(), Some(2));
    assert_eq!(run(&["betti", "--preset", "pluecker:5", "--qmax", "0"]).status.code(), Some(2));
    let o = run(&["betti", "--preset", "veronese:3"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("betti: veronese:3"));
}
