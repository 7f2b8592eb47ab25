//! End-to-end behaviour of the `reflect` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn reflect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflect")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("reflect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn small_spin_exits_with_config_error() {
    let o = reflect(&["--s", "0.3", "verify", "algebra"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("s > 1/2"));
    let cfg = scratch("bad.json", r#"{"params": {"s": 0.3}}"#);
    assert_eq!(reflect(&["--config", cfg.to_str().unwrap(), "table", "--what", "mu"]).status.code(), Some(2));
    assert_eq!(reflect(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn flags_override_the_config_file() {
    let cfg = scratch("cfg.json", r#"{"params": {"s": 0.3}, "lambda_grid": [1.0]}"#);
    let o = reflect(&["--config", cfg.to_str().unwrap(), "--s", "1", "table", "--what", "mu"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn verify_algebra_passes_with_json_report() {
    let o = reflect(&["verify", "algebra", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["suite"], "algebra");
    let cases = report["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    for c in cases {
        let pass = c["residual"].as_f64().unwrap() <= c["tolerance"].as_f64().unwrap();
        assert_eq!(c["pass"].as_bool().unwrap(), pass);
        assert!(!c["reference"].as_str().unwrap().is_empty());
    }
}

#[test]
fn tables_are_deterministic_and_empty_grid_is_header_only() {
    let a = reflect(&["--lambda-grid", "0.5,1,2", "table", "--what", "psi"]);
    let b = reflect(&["--lambda-grid", "0.5,1,2", "table", "--what", "psi"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with('#'));
    assert_eq!(text.lines().count(), 2 + 6);
    let cfg = scratch("empty.json", r#"{"lambda_grid": []}"#);
    let o = reflect(&["--config", cfg.to_str().unwrap(), "table", "--what", "mu"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>()[1..], ["lambda,mu"]);
}

#[test]
fn eigenfn_csv() {
    let z = scratch("z.json", "[[0, 1], [0.5, 2], [-1, 0.3]]");
    let o = reflect(&["eigenfn", "--lambda", "0.8", "--zgrid", z.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<f64>> =
        text.lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    // z = i is the origin of the hypergeometric variable
    assert!((rows[0][2] - 1.0).abs() < 1e-9 && rows[0][3].abs() < 1e-9);
    assert!(rows.iter().all(|r| r[4] < 1e-9));
    let bad = scratch("zbad.json", "[[0, -1]]");
    assert_eq!(reflect(&["eigenfn", "--lambda", "0.8", "--zgrid", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn transform_j_of_sampled_input() {
    let pts: Vec<String> = (0..=400).map(|k| format!("{}", k as f64 * 0.05)).collect();
    let vals: Vec<String> = (0..=400).map(|k| format!("[{}, 0]", (-(k as f64) * 0.05).exp())).collect();
    let input = scratch("exp.json", &format!(r#"{{"points": [{}], "values": [{}]}}"#, pts.join(","), vals.join(",")));
    let o = reflect(&["transform", "--kind", "J", "--input", input.to_str().unwrap(), "--at", "0.5,-0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows: Vec<Vec<f64>> =
        stdout(&o).lines().skip(1).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 2);
    // even in lambda, real for real input
    assert!((rows[0][1] - rows[1][1]).abs() < 1e-10);
    assert!(rows[0][2].abs() < 1e-12);
}

#[test]
fn diagram_rewrite_and_eval() {
    let d = scratch(
        "d.json",
        r#"{"vertices": [{"id": "z", "kind": "external"}, {"id": "w", "kind": "external"}, {"id": "v", "kind": "internal"}],
            "edges": [{"from": "z", "to": "v", "exp": "lam"}, {"from": "v", "to": "w", "exp": "rho"}]}"#,
    );
    let out = d.with_file_name("d2.json");
    let o = reflect(&["diagram", "rewrite", "--rule", "chain", "--vertex", "v", "--in", d.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let eval = |p: &PathBuf| {
        let o = reflect(&["diagram", "eval", "--in", p.to_str().unwrap(), "--assign", "s=1,lam=1.5,rho=1.2", "--points", "z=i,w=0.5+2i"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
    };
    let (a, b) = (eval(&d), eval(&out));
    assert!((a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6, "{a:?} {b:?}");
    let o = reflect(&["diagram", "rewrite", "--rule", "euler", "--vertex", "v", "--in", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "a rule that does not apply is a failure, not an input error");
}
