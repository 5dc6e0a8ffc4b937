use std::io::Write;
use std::process::{Command, Output, Stdio};

use transcert::cli::{certificate_from_str, certificate_to_string};
use transcert::fixtures;

fn dct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dct")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn monomial_pseudoconstant() {
    let o = dct(&[
        "pseudo",
        "(x^2-x)*D^2 + (65/24*x-7/6)*D + 35/48",
        "--max-s",
        "6",
        "--method",
        "monomial",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("sympow_pseudoconstant (s = 5)"), "{s}");
    assert!(s.contains("P = (x^4 - 3*x^3 + 3*x^2 - x)"), "{s}");
}

#[test]
fn growth_table() {
    let o = dct(&["growth", fixtures::HYPERGEOMETRIC_A, "--max-s", "5", "--adjoin-polynomials", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["growth"]["orders"], serde_json::json!([4, 10, 20, 35, 56]));
    assert_eq!(v["growth"]["classification"], "superlinear");
}

#[test]
fn analyze_reports_singular_structure() {
    let o = dct(&["analyze", "D^2 - 1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["certificate"]["kind"], "singular_structure");
    assert_eq!(v["certificate"]["point"], "inf");
    assert_eq!(v["certificate"]["classification"], "irregular");
}

#[test]
fn analyze_exponent_table() {
    let o = dct(&["analyze", fixtures::HYPERGEOMETRIC_A, "--format", "json", "--growth-max-s", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["singularities"].as_array().unwrap();
    let at = |p: &str| rows.iter().find(|r| r["point"] == p).unwrap()["exponents"].clone();
    assert_eq!(at("0"), serde_json::json!(["0", "1/6"]));
    assert_eq!(at("1"), serde_json::json!(["0", "13/24"]));
    assert_eq!(at("inf"), serde_json::json!(["1/8", "1/6"]));
    assert_eq!(v["certificate"]["kind"], "pseudoconstant");
}

#[test]
fn none_found_exits_two() {
    // the pure 2F1 has no pseudoconstant of its own
    let o = dct(&["pseudo", fixtures::HYPERGEOMETRIC_C]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("none_found_at_bounds"));
}

#[test]
fn errors_exit_one() {
    let o = dct(&["pseudo", "D*x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    let o = dct(&["verify", "/nonexistent/cert.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn algsols_square_root() {
    let o = dct(&["algsols", "2*x*D - 1", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("minimal polynomial y^2 - "), "{}", stdout(&o));
    let o = dct(&["algsols", "D^2 - 1", "--degree", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["algsols"]["decision"], "bottom");
}

#[test]
fn json_operator_input() {
    let j = r#"{"var":"x","coeffs":[{"num":["-1"],"den":["1"]},{"num":["0"],"den":["1"]},{"num":["1"],"den":["1"]}]}"#;
    let o = dct(&["analyze", j, "--growth-max-s", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("singular_structure"));
}

fn verify_stdin(text: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dct"))
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn emitted_certificates_verify() {
    let dir = std::env::temp_dir().join(format!("dct-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (k, (op, extra)) in [
        ("D^2 - 1", vec![]),
        (fixtures::EX1, vec![]),
        (fixtures::HYPERGEOMETRIC_C, vec!["--method", "monomial", "--max-s", "5"]),
    ]
    .into_iter()
    .enumerate()
    {
        let path = dir.join(format!("cert{k}.json"));
        let mut args = vec!["pseudo", op, "--format", "json", "--certificate-out", path.to_str().unwrap()];
        args.extend(extra);
        let o = dct(&args);
        assert_eq!(o.status.code(), Some(0), "{op}");
        let cert = std::fs::read_to_string(&path).unwrap();
        // byte-level round trip through the library
        assert_eq!(certificate_to_string(&certificate_from_str(&cert).unwrap()) + "\n", cert);
        let o = dct(&["verify", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("verified: true"));
        // the full report is accepted too
        assert_eq!(verify_stdin(&stdout(&dct(&args))).status.code(), Some(0));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tampered_certificate_exits_two() {
    let o = dct(&["pseudo", fixtures::HYPERGEOMETRIC_C, "--method", "monomial", "--max-s", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut c = v["certificate"].clone();
    c["s"] = serde_json::json!(4);
    let o = verify_stdin(&c.to_string());
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    c["kind"] = serde_json::json!("nonsense");
    assert_eq!(verify_stdin(&c.to_string()).status.code(), Some(1));
}
