use std::process::{Command, Output};

fn nsymm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsymm")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn index_of_weight_four() {
    let o = nsymm(&["index", "--weight", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn lyndon_words_of_weight_three() {
    let o = nsymm(&["lyndon", "--weight", "3"]);
    assert_eq!(stdout(&o).trim(), "[[3],[1,2]]");
}

#[test]
fn eval_examples() {
    let cases = [
        ("pair(P(3), [1,1,1])", "1"),
        ("osh([1],[1])", "[2] + 2*[1,1]"),
        ("fN(2, Zn(1))", "2*Z([2]) - Z([1,1])"),
        ("vQ(2, [2])", "2*[1]"),
        ("pi(2*Zn(2) - Zn(1)*Zn(1))", "[2]"),
    ];
    for (expr, want) in cases {
        let o = nsymm(&["eval", expr]);
        assert_eq!(o.status.code(), Some(0), "{expr}: {}", stderr(&o));
        assert_eq!(stdout(&o).trim(), want, "{expr}");
    }
}

#[test]
fn eval_json() {
    let o = nsymm(&["--format", "json", "eval", "-3/2*Z([1,2])"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"mode":"N","value":{"alphabet":"Z","terms":[{"word":[["Z",1],["Z",2]],"coeff":"-3/2"}]}}"#
    );
    let o = nsymm(&["--format", "json", "eval", "3*[1,2]"]);
    assert_eq!(stdout(&o).trim(), r#"{"mode":"Q","value":{"terms":[{"word":[1,2],"coeff":"3"}]}}"#);
}

#[test]
fn parse_errors_are_usage_errors() {
    let o = nsymm(&["eval", "[1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("syntax error at offset 4"), "{}", stderr(&o));
    let o = nsymm(&["eval", "Zn(1) + [1]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("mode error at offset 6"));
    let o = nsymm(&["--bound", "3", "eval", "P(4)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds the bound"));
}

#[test]
fn usage_errors() {
    assert_eq!(nsymm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nsymm(&["index", "--weight", "13"]).status.code(), Some(2));
    assert_eq!(nsymm(&["index", "--weight", "0"]).status.code(), Some(2));
    assert_eq!(nsymm(&["verify", "newton", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn verify_newton_passes() {
    let o = nsymm(&["verify", "newton", "--maxweight", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_tau_json() {
    for name in ["tau", "6.15"] {
        let o = nsymm(&["--format", "json", "verify", name, "--n", "2", "--maxweight", "6"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["suite"], "tau");
    }
}

#[test]
fn verify_isobaric_reports_the_n_verschiebung_failure() {
    let o = nsymm(&["verify", "isobaric", "--maxweight", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("PASS L: Verschiebung v_2 compatibility"), "{out}");
    assert!(out.contains("FAIL N: Verschiebung v_2 compatibility: fails at (1,1)"), "{out}");
    assert!(out.contains("PASS N: reconstruction"));
}

#[test]
fn other_suites_pass() {
    for (suite, w) in [("dps", "5"), ("basis", "4"), ("freeness", "4"), ("duality", "5"), ("frobven", "6")] {
        let o = nsymm(&["--seed", "3", "verify", suite, "--maxweight", w]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
}

#[test]
fn isobaric_table_json() {
    let a = nsymm(&["--format", "json", "isobaric", "N", "--degree", "3"]);
    let b = nsymm(&["--format", "json", "isobaric", "N", "--degree", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["kind"], "N");
    assert_eq!(v["D"], 3);
    let first = &v["entries"][0];
    assert_eq!((first["u"].as_u64(), first["v"].as_u64()), (Some(1), Some(1)));
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn basis_gens_and_matrix() {
    let o = nsymm(&["basis-prim", "--weight", "2"]);
    assert_eq!(stdout(&o), "P_[2] = 2*Z([2]) - Z([1,1])\n");
    let o = nsymm(&["gens", "--weight", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("E_[2] = "));
    let o = nsymm(&["--format", "json", "matrix", "--weight", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"], serde_json::json!([[3], [1, 2]]));
    assert_eq!(v["matrix"].as_array().unwrap().len(), 2);
}
