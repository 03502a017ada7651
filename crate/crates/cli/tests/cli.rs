//! End-to-end runs of the `ahder` binary: golden transcripts, JSON shape,
//! exit codes, determinism and print/parse round-trips.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use ahder::{FieldSpec, WeylElement};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ahder(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ahder"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str], stdin: Option<&str>) -> Value {
    let mut a = args.to_vec();
    a.extend(["--output", "json"]);
    let r = ahder(&a, stdin);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"))
}

/// Byte-for-byte comparison; `UPDATE_GOLDEN=1` rewrites the files.
fn golden(name: &str, args: &[&str], stdin: Option<&str>) {
    let r = ahder(args, stdin);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &r.stdout).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(r.stdout, want, "output differs from {}", path.display());
}

const D1: &str = r#"{"Dx": "0", "Dyhat": "1"}"#;
const AD_YHAT_HX: &str = r#"{"Dx": "x", "Dyhat": "0"}"#;
const EX_P3: &str = r#"{"Dx": "y^2", "Dyhat": "0"}"#;

#[test]
fn golden_analyze_square_with_factors() {
    golden(
        "analyze_x2_char0",
        &["analyze", "--h", "x^2", "--char", "0", "--factors", "x^2"],
        None,
    );
}

#[test]
fn golden_analyze_weyl_algebra() {
    golden("analyze_1_char0", &["analyze", "--h", "1", "--char", "0"], None);
}

#[test]
fn golden_analyze_x_char3() {
    golden("analyze_x_char3", &["analyze", "--h", "x", "--char", "3"], None);
}

#[test]
fn golden_classify_examples() {
    golden("classify_d1_hx", &["classify", "--h", "x"], Some(D1));
    golden("classify_ad_yhat_hx", &["classify", "--h", "x"], Some(AD_YHAT_HX));
    golden(
        "classify_ex_h1_char3",
        &["classify", "--h", "1", "--char", "3"],
        Some(EX_P3),
    );
}

#[test]
fn golden_center_and_exp() {
    golden("center_x_char3", &["center", "--h", "x", "--char", "3"], None);
    golden("exp_aut_hx", &["exp-aut", "--h", "x", "x^2", "--apply", "x*y"], None);
}

#[test]
fn worked_examples_report_expected_values() {
    let v = json(&["analyze", "--h", "x^2", "--factors", "x^2"], None);
    assert_eq!(v["center_dim"], 1);
    assert_eq!(v["witt_summands"], 1);
    assert_eq!(v["nilpotent_zero"], true);

    let v = json(&["analyze", "--h", "1"], None);
    assert_eq!(v["hh1_zero"], true);

    let v = json(&["analyze", "--h", "x", "--char", "3"], None);
    assert_eq!(v["free_over_center"], true);
    assert_eq!(v["rank_over_center"], 2);

    let v = json(&["classify", "--h", "x"], Some(D1));
    assert_eq!(v["verdict"], "outer");
    assert_eq!(v["g"], "1");

    let v = json(&["classify", "--h", "x"], Some(AD_YHAT_HX));
    assert_eq!(v["verdict"], "inner");
    // unique up to a constant: yhat - 1 and yhat give the same ad
    assert_eq!(v["witness_in_yhat"], "-1 + yhat");

    let v = json(&["classify", "--h", "1", "--char", "3"], Some(EX_P3));
    assert_eq!(v["verdict"], "outer");
    assert_eq!(v["a1_w"], "1");
    assert_eq!(v["a1_z"], "0");
}

#[test]
fn json_output_validates_against_schema() {
    let schema_path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let pair = format!("[{D1}, {AD_YHAT_HX}]");
    let cases: Vec<(Vec<&str>, Option<&str>)> = vec![
        (vec!["analyze", "--h", "x^3"], None),
        (vec!["analyze", "--h", "x^2*(x-1)", "--factors", "x^2,x-1"], None),
        (vec!["analyze", "--h", "x^2", "--char", "5"], None),
        (vec!["classify", "--h", "x"], Some(D1)),
        (
            vec!["classify", "--h", "x^2", "--char", "3"],
            Some(r#"{"Dx": "x^2", "Dyhat": "0"}"#),
        ),
        (vec!["bracket", "--h", "x"], Some(pair.as_str())),
        (vec!["normalizer", "--h", "x^2", "x*y"], None),
        (vec!["center", "--h", "x", "--char", "2"], None),
        (vec!["exp-aut", "--h", "x", "1"], None),
        (vec!["verify", "--h", "x", "--cases", "2"], None),
    ];
    for (args, stdin) in cases {
        let v = json(&args, stdin);
        let msgs: Vec<String> = match validator.validate(&v) {
            Ok(()) => continue,
            Err(errs) => errs.map(|e| e.to_string()).collect(),
        };
        panic!("{args:?}: {msgs:?}");
    }
    // a report missing a required key is rejected
    let mut v = json(&["analyze", "--h", "x"], None);
    v.as_object_mut().unwrap().remove("center_dim");
    assert!(!validator.is_valid(&v));
}

#[test]
fn exit_codes() {
    assert_eq!(ahder(&["center", "--h", "x"], None).code, 0);
    // usage
    assert_eq!(ahder(&[], None).code, 2);
    assert_eq!(ahder(&["frobnicate", "--h", "x"], None).code, 2);
    assert_eq!(ahder(&["analyze"], None).code, 2);
    assert_eq!(ahder(&["analyze", "--h", "x", "--char", "4"], None).code, 2);
    assert_eq!(ahder(&["analyze", "--h", "x^3", "--degree-bound", "2"], None).code, 2);
    assert_eq!(ahder(&["classify", "--h", "x"], Some("not json")).code, 2);
    let bad = ahder(&["analyze", "--h", "x^+1"], None);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.starts_with("error[parse]"), "{}", bad.stderr);
    assert!(bad.stderr.contains("position"), "{}", bad.stderr);
    // domain
    let r = ahder(&["analyze", "--h", "x^2", "--factors", "x^3"], None);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error[factors]"), "{}", r.stderr);
    let r = ahder(&["classify", "--h", "x"], Some(r#"{"Dx": "x*y + 1", "Dyhat": "0"}"#));
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("error[invalid-derivation]"), "{}", r.stderr);
    let r = ahder(&["analyze", "--h", "0"], None);
    assert_eq!(r.code, 1);
    assert!(ahder(&["--help"], None).code == 0);
}

#[test]
fn verify_is_deterministic_per_seed() {
    let args = ["verify", "--h", "x^2", "--seed", "17", "--cases", "4"];
    let a = ahder(&args, None);
    let b = ahder(&args, None);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    let c = ahder(
        &["verify", "--h", "x^3", "--char", "5", "--seed", "3", "--cases", "3"],
        None,
    );
    assert_eq!(c.code, 0, "{}", c.stdout);
    assert!(c.stdout.contains("power-derivative-identity"));
}

#[test]
fn printed_elements_reparse() {
    // ad of a normalizer element, printed by one command and read by another
    let n = json(&["normalizer", "--h", "x", "x^2*y^2 + x*y + 3"], None);
    assert_eq!(n["in_normalizer"], true);
    let d = serde_json::json!({"Dx": n["ad_image_x"], "Dyhat": n["ad_image_yhat"]}).to_string();
    let first = json(&["classify", "--h", "x"], Some(&d));
    assert_eq!(first["verdict"], "inner");
    let again = serde_json::json!({"Dx": first["d_x"], "Dyhat": first["d_yhat"]}).to_string();
    let second = json(&["classify", "--h", "x"], Some(&again));
    assert_eq!(first, second);
    let f = FieldSpec::new(0).unwrap();
    for key in ["d_x", "d_yhat", "inner_witness"] {
        let text = first[key].as_str().unwrap();
        let w = WeylElement::parse(text, f).unwrap();
        assert_eq!(w.to_string(), text);
    }
}
