use std::path::Path;
use std::process::{Command, Output};

use comaxdom::report::{parse_coefficients, RunReport, SweepReport};
use comaxdom::tabular::{flatten_csv, flatten_json};
use num_bigint::BigInt;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_comaxdom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schema")
        .join(name);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_valid(schema: &jsonschema::JSONSchema, doc: &Value) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{e} at {}", e.instance_path))
            .collect();
        panic!("schema violations: {msgs:?}");
    }
}

#[test]
fn compute_n15_json() {
    let o = run(&[
        "compute", "--n", "15", "--method", "auto", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&schema("run_report.schema.json"), &v);
    let r: RunReport = serde_json::from_value(v).unwrap();
    let printed = [
        0, 8, 84, 429, 1346, 2997, 5004, 6435, 6435, 5005, 3003, 1365, 455, 105, 15, 1,
    ];
    assert_eq!(r.polynomial, printed.map(|c: i64| c.to_string()).to_vec());
    assert_eq!(r.gamma, 1);
}

#[test]
fn compute_prime_csv_rows() {
    let o = run(&[
        "compute",
        "--n",
        "7",
        "--method",
        "closed-prime",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let table = text.split("# polynomial\n").nth(1).unwrap();
    let rows: Vec<&str> = table.lines().take_while(|l| !l.is_empty()).collect();
    assert_eq!(rows[0], "index,coefficient");
    // C(7,i) by factorials, minus the constant term.
    let fact = |k: u64| (1..=k).product::<u64>().max(1);
    for i in 0..=7u64 {
        let expect = if i == 0 {
            0
        } else {
            fact(7) / (fact(i) * fact(7 - i))
        };
        assert_eq!(rows[i as usize + 1], format!("{i},{expect}"));
    }
}

#[test]
fn exit_codes() {
    let o = run(&["compute", "--n", "15", "--method", "closed-prime-power"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("15 is not a prime power"));
    assert!(o.stdout.is_empty());

    assert_eq!(code(&run(&["compute", "--n", "1"])), 2);
    assert_eq!(code(&run(&["compute", "--n", "x"])), 2);
    assert_eq!(code(&run(&["compute", "--n", "6", "--method", "nope"])), 2);
    assert_eq!(
        code(&run(&["compute", "--n", "40", "--method", "brute"])),
        3
    );
    assert_eq!(
        code(&run(&["compute", "--n", "30", "--method", "closed-pq"])),
        3
    );
    assert_eq!(code(&run(&["verify", "--range", "1..5"])), 2);
    assert_eq!(code(&run(&["verify", "--range", "5..201"])), 2);
    assert_eq!(code(&run(&["verify", "--range", "9..3"])), 2);
    assert_eq!(code(&run(&["verify", "--range", "abc"])), 2);
    assert_eq!(code(&run(&["roots", "--n", "6", "--tol", "0"])), 2);
    assert_eq!(code(&run(&["roots", "--n", "6", "--max-iter", "0"])), 2);
    assert_eq!(code(&run(&["analyze", "--n", "0"])), 2);
}

#[test]
fn non_convergence_still_reports() {
    let o = run(&["roots", "--n", "21", "--max-iter", "2"]);
    assert_eq!(code(&o), 4);
    let r: RunReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.roots.len(), 21);
    assert!(!r.root_summary.unwrap().converged);
}

#[test]
fn small_roots() {
    let o = run(&["roots", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let r: RunReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.roots.len(), 2);
    assert_eq!((r.roots[0].re, r.roots[0].im), (0.0, 0.0));
    assert!((r.roots[1].re + 2.0).abs() < 1e-12 && r.roots[1].im.abs() < 1e-12);
}

#[test]
fn verify_reports_published_prime_power() {
    let o = run(&["verify", "--range", "32..32"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&schema("sweep_report.schema.json"), &v);
    let r: SweepReport = serde_json::from_value(v).unwrap();
    let row = r
        .rows
        .iter()
        .find(|row| row.claim_id == "closed_prime_power_published_vs_blowup")
        .unwrap();
    assert_eq!(row.status, "discrepant");
    assert_eq!(row.kind, "published");
    assert!(row.detail.contains("degrees 18 vs 32"), "{}", row.detail);
    assert!(r.corrected_ok);
}

#[test]
fn verify_sweep_with_oracle_validates() {
    let o = run(&["verify", "--range", "2..16", "--brute"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&schema("sweep_report.schema.json"), &v);
    let r: SweepReport = serde_json::from_value(v).unwrap();
    let oracle_rows: Vec<_> = r
        .rows
        .iter()
        .filter(|row| row.claim_id == "blowup_vs_oracle")
        .collect();
    assert_eq!(oracle_rows.len(), 15);
    assert!(oracle_rows.iter().all(|row| row.status == "verified"));
    assert_eq!(r.verified + r.discrepant, r.rows.len());
}

#[test]
fn json_and_csv_carry_the_same_fields() {
    let cases: &[&[&str]] = &[
        &["compute", "--n", "12"],
        &["compute", "--n", "32", "--published"],
        &["analyze", "--n", "60"],
        &["analyze", "--n", "15"],
        &["roots", "--n", "15"],
        &["roots", "--n", "32", "--published"],
        &["verify", "--range", "28..32"],
    ];
    for args in cases {
        let json = run(&[args, &["--format", "json"][..]].concat());
        let csv = run(&[args, &["--format", "csv"][..]].concat());
        assert_eq!(code(&json), code(&csv));
        let v: Value = serde_json::from_str(&stdout(&json)).unwrap();
        let a = flatten_json(&v);
        let b = flatten_csv(&stdout(&csv)).unwrap();
        let differing: Vec<_> = a
            .keys()
            .chain(b.keys())
            .filter(|k| a.get(*k) != b.get(*k))
            .map(|k| (k, a.get(k), b.get(k)))
            .collect();
        assert!(differing.is_empty(), "{args:?}: {differing:?}");
    }
}

#[test]
fn run_reports_validate_and_roundtrip() {
    let s = schema("run_report.schema.json");
    for n in [2u64, 4, 9, 30, 36, 97, 128] {
        for cmd in ["compute", "analyze"] {
            let o = run(&[cmd, "--n", &n.to_string()]);
            assert_eq!(code(&o), 0);
            let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
            assert_valid(&s, &v);
            let r: RunReport = serde_json::from_value(v).unwrap();
            let p = parse_coefficients(&r.polynomial).unwrap();
            assert_eq!(
                p.coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>(),
                r.polynomial
            );
            assert_eq!(p.degree(), Some(n as usize));
        }
    }
    let o = run(&["roots", "--n", "21"]);
    assert_valid(&s, &serde_json::from_str(&stdout(&o)).unwrap());
}

#[test]
fn analyze_examples() {
    for n in ["15", "97"] {
        let r: RunReport = serde_json::from_str(&stdout(&run(&["analyze", "--n", n]))).unwrap();
        let shape = r.shape.unwrap();
        assert!(shape.unimodal && shape.log_concave, "n = {n}");
        assert!(shape.oscillation_convention.contains("plateaus"));
    }
}

#[test]
fn svg_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.svg");
    let o = run(&[
        "roots",
        "--n",
        "21",
        "--tol",
        "1e-10",
        "--svg",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#" r="4""#).count(), 21);
    assert!(svg.contains("annulus r = 0.068965517, R = 21.000000000"));
    assert!(!svg.contains("<script"));
}

#[test]
fn failed_write_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("absent").join("zeros.svg");
    let o = run(&["roots", "--n", "6", "--svg", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(!path.exists());
    let out = dir.path().join("report.json");
    let o = run(&[
        "compute",
        "--n",
        "30",
        "--method",
        "closed-pq-powers",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3);
    assert!(!out.exists());
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["compute", "--n", "18", "--output", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read(&out).unwrap(),
        run(&["compute", "--n", "18"]).stdout
    );
}

#[test]
fn edge_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let o = run(&["compute", "--n", "4", "--edges", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# comaximal n=4 order=4"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn published_routing() {
    let r: RunReport =
        serde_json::from_str(&stdout(&run(&["compute", "--n", "32", "--published"]))).unwrap();
    assert_eq!(r.methods_run, ["closed_prime_power_published"]);
    assert_eq!(r.degree, 18);
    let r: RunReport =
        serde_json::from_str(&stdout(&run(&["compute", "--n", "30", "--published"]))).unwrap();
    assert_eq!(r.methods_run, ["g2_pqr_published"]);
    let r: RunReport =
        serde_json::from_str(&stdout(&run(&["compute", "--n", "15", "--published"]))).unwrap();
    assert_eq!(r.methods_run, ["blowup"]);
}
