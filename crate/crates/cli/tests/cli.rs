use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use isolyap_core::exact::mu1_shifted_2x2;
use isolyap_core::validate::Report;
use tempfile::TempDir;

fn isolyap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isolyap")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SCALAR_GAUSSIAN: &str = r#"{"beta":1,"n":1,"rows":[{"type":"gaussian","sigma":1.0}]}"#;
const SHIFTED_2X2: &str = r#"{"beta":1,"n":2,"c":1.0,"sigma":1.0}"#;

#[test]
fn exact_lyap_sum_reports_value_and_method() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "g.json", SCALAR_GAUSSIAN);
    let o = isolyap(&["exact", "--spec", spec.to_str().unwrap(), "--quantity", "lyap-sum"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["method"], "closed-form");
    let v = doc["rows"][0]["estimate"].as_f64().unwrap();
    assert!((v + 0.635_181_4).abs() < 1e-7, "{v}");
}

#[test]
fn sweep_writes_csv_matching_closed_form() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "s.json", SHIFTED_2X2);
    let out = dir.path().join("sweep.csv");
    let o = isolyap(&[
        "sweep",
        "--spec",
        spec.to_str().unwrap(),
        "--quantity",
        "mu1",
        "--param",
        "lambda",
        "--values",
        "1,10,100",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut rdr = csv::Reader::from_path(&out).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["param", "value", "quantity", "estimate", "error"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    for (row, lambda) in rows.iter().zip([1.0, 10.0, 100.0]) {
        assert_eq!(&row[0], "lambda");
        assert_eq!(row[1].parse::<f64>().unwrap(), lambda);
        assert_eq!(&row[2], "mu1");
        let got: f64 = row[3].parse().unwrap();
        let want = mu1_shifted_2x2(0.5 * lambda).unwrap().value;
        assert!((got - want).abs() < 1e-10, "lambda={lambda}: {got} vs {want}");
        // 17 significant digits
        assert_eq!(row[3].split('e').next().unwrap().trim_start_matches('-').len(), 18);
    }
}

#[test]
fn seed_fixes_monte_carlo_output_bytes() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "s.json", SHIFTED_2X2);
    let run = |seed: &str| {
        let o = isolyap(&[
            "mc",
            "--spec",
            spec.to_str().unwrap(),
            "--quantity",
            "spectrum",
            "--m",
            "200",
            "--trials",
            "6",
            "--seed",
            seed,
            "--format",
            "csv",
        ]);
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
}

#[test]
fn validate_writes_a_report_that_parses_back() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("report.json");
    let o = isolyap(&["validate", "--suite", "formula-equivalence", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Report = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(report.passed);
    assert!(report.checks.len() >= 20);
}

#[test]
fn validate_mu1_crosscheck_grid() {
    let o = isolyap(&["validate", "--suite", "mu1-crosscheck", "--samples", "200000"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.checks.len(), 12);
    assert!(report.checks.iter().all(|c| c.score < 4.0));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"beta":3,"n":1,"rows":[{"type":"gaussian","sigma":1.0}]}"#);
    let o = isolyap(&["exact", "--spec", bad.to_str().unwrap(), "--quantity", "mu1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = isolyap(&["validate", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    let o = isolyap(&["exact", "--quantity", "mu1"]);
    assert_eq!(o.status.code(), Some(2));

    let heavy = write(dir.path(), "h.json", r#"{"beta":1,"n":1,"rows":[{"type":"beta2","omega":2.0}]}"#);
    let o = isolyap(&["exact", "--spec", heavy.to_str().unwrap(), "--quantity", "det-moment", "--alpha", "3"]);
    assert_eq!(o.status.code(), Some(3));

    let g = write(dir.path(), "g.json", SCALAR_GAUSSIAN);
    let o = isolyap(&[
        "validate",
        "--suite",
        "mu1-crosscheck",
        "--spec",
        g.to_str().unwrap(),
        "--samples",
        "1000",
        "--z-limit",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn wishart_moment_exact_and_sampled() {
    let dir = TempDir::new().unwrap();
    let spec = write(dir.path(), "w.json", r#"{"beta":1,"n":2,"c":2.0,"sigma":1.0}"#);
    let s = spec.to_str().unwrap();
    let o = isolyap(&["exact", "--spec", s, "--quantity", "wishart-moment", "--alpha", "1", "--k", "1"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((doc["rows"][0]["estimate"].as_f64().unwrap() - 6.0).abs() < 1e-12);
    let o = isolyap(&[
        "mc",
        "--spec",
        s,
        "--quantity",
        "wishart-moment",
        "--alpha",
        "1",
        "--k",
        "1",
        "--samples",
        "100000",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let est = doc["rows"][0]["estimate"].as_f64().unwrap();
    let se = doc["rows"][0]["error"].as_f64().unwrap();
    assert!((est - 6.0).abs() < 4.0 * se);
    assert_eq!(doc["master_seed"], 1);
}
