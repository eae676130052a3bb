use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn intform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intform"))
        .args(args)
        .env_remove("INTFORM_PROFILE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The rendered element: the line after the configuration header.
fn body(o: &Output) -> String {
    let s = stdout(o);
    let mut lines = s.lines();
    assert!(lines.next().unwrap().starts_with("# algebra="));
    lines.collect::<Vec<_>>().join("\n")
}

#[test]
fn eval_examples() {
    let o = intform(&["eval", "p", "--chi", "{[0]:1}"]);
    assert!(o.status.success());
    assert_eq!(body(&o), "-1 (h⊗1)");

    let o = intform(&[
        "eval", "D", "--sign", "+", "--psi1", "{}", "--psi2", "{}", "--psi3", "{[1]:2}",
    ]);
    assert_eq!(body(&o), "(1/2) (x+⊗t)^2");

    let o = intform(&["eval", "p", "--phi", "{[1]:1}", "--chi", "{}"]);
    assert_eq!(body(&o), "0");
}

#[test]
fn eval_accepts_json_arguments() {
    let flags = intform(&[
        "eval", "bbD", "--psi1", "{[1]:1}", "--psi2", "{[0]:1}", "--psi3", "{[0]:1}",
    ]);
    let json = intform(&[
        "eval",
        "bbD",
        "--args",
        r#"{"psi1": "{[1]:1}", "psi2": [[[0], 1]], "psi3": "{[0]:1}"}"#,
    ]);
    assert!(json.status.success());
    assert_eq!(body(&flags), body(&json));
}

#[test]
fn eval_errors_exit_2() {
    for args in [
        &["eval", "p", "--chi", "{[0]:1"][..],
        &["eval", "p", "--chi", "{[0,1]:1}"],
        &[
            "eval", "D", "--psi1", "{}", "--psi2", "{}", "--psi3", "{[0]:1}",
        ],
        &[
            "eval", "xpow", "--sign", "+", "--psi", "{[0]:1}", "--root", "5",
        ],
        &["eval", "p"],
        &["frobnicate"],
    ] {
        let o = intform(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = intform(&["eval", "p", "--chi", "{[0]:1"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
}

#[test]
fn eval_json_round_trips_through_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let o = intform(&["--format", "json", "eval", "p", "--chi", "{[0]:2,[1]:1}"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["algebra"], "sl2");
    fs::write(&path, &o.stdout).unwrap();

    let o = intform(&["--format", "json", "reduce", path.to_str().unwrap()]);
    assert!(o.status.success());
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["integral"], true);
    assert_eq!(r["terms"].as_array().unwrap().len(), 1);
    assert_eq!(r["terms"][0][1], "1");
    assert!(r["config"].is_object());
}

#[test]
fn eval_json_keeps_algebra_for_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let o = intform(&[
        "--format",
        "json",
        "--algebra",
        "sl3",
        "eval",
        "D",
        "--sign",
        "-",
        "--root",
        "2",
        "--psi1",
        "{[1]:1}",
        "--psi2",
        "{[0]:1}",
        "--psi3",
        "{[0]:2}",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    fs::write(&path, &o.stdout).unwrap();
    let o = intform(&["reduce", path.to_str().unwrap()]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("# algebra=sl3"));
    assert!(s.contains("integral: true"));
}

#[test]
fn reduce_examples() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, src: &str| {
        let p = dir.path().join(name);
        fs::write(&p, src).unwrap();
        p.to_str().unwrap().to_string()
    };

    // (x⁺⊗1)(x⁻⊗1), given out of PBW order
    let xy = write(
        "xy.json",
        r#"[{"monomial": [[2, [0], 1], [0, [0], 1]], "coeff": ["1", "1"]}]"#,
    );
    let o = intform(&["reduce", &xy]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("terms: 2"));
    assert!(s.contains("integral: true"));

    let half = write(
        "h.json",
        r#"{"element": [{"monomial": [[1, [0], 1]], "coeff": ["1", "2"]}]}"#,
    );
    let o = intform(&["--format", "json", "reduce", &half]);
    assert!(o.status.success());
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["integral"], false);

    let zero = write("z.json", "[]");
    let o = intform(&["reduce", &zero]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("terms: 0") && s.contains("integral: true"));

    let bad = write(
        "bad.json",
        r#"[{"monomial": [[9, [0], 1]], "coeff": ["1", "1"]}]"#,
    );
    assert_eq!(intform(&["reduce", &bad]).status.code(), Some(2));
    let garbage = write("garbage.json", "{not json");
    assert_eq!(intform(&["reduce", &garbage]).status.code(), Some(2));
    assert_eq!(
        intform(&["reduce", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn straighten_normalizes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("w.json");
    fs::write(
        &p,
        r#"[{"monomial": [[2, [0], 1], [0, [0], 1]], "coeff": ["1", "1"]}]"#,
    )
    .unwrap();
    let o = intform(&["straighten", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(body(&o), "(x-⊗1) (x+⊗1) + (h⊗1)");
}

#[test]
fn basis_examples() {
    let o = intform(&["basis", "--max-degree", "0"]);
    assert!(stdout(&o).ends_with("count: 1\n"));
    let o = intform(&["basis", "--max-degree", "1", "--max-label-degree", "1"]);
    assert!(stdout(&o).ends_with("count: 7\n"));
    let again = intform(&["basis", "--max-degree", "1", "--max-label-degree", "1"]);
    assert_eq!(o.stdout, again.stdout);

    let o = intform(&[
        "--format",
        "json",
        "--algebra",
        "sl3",
        "basis",
        "--max-degree",
        "1",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 9);
    assert_eq!(v["config"]["algebra"], "sl3");
}

#[test]
fn check_examples() {
    let o = intform(&["check", "straightening", "--profile", "smoke"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[PASS] straightening"));

    assert_eq!(
        intform(&["check", "A2", "--algebra", "sl2"]).status.code(),
        Some(2)
    );
    assert_eq!(intform(&["check", "no-such-check"]).status.code(), Some(2));
    assert_eq!(
        intform(&["check", "engine", "--bound", "nope=1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        intform(&["check", "engine", "--profile", "huge"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_all_json_is_an_array_of_reports() {
    let o = intform(&[
        "--format",
        "json",
        "--jobs",
        "2",
        "check",
        "all",
        "--profile",
        "smoke",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stdout)
    );
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 9);
    for r in reports {
        for key in [
            "name",
            "instances",
            "pass",
            "failures",
            "elapsedMs",
            "seed",
            "config",
        ] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert_eq!(r["pass"], true);
        assert_eq!(r["seed"], 24301);
    }
}

#[test]
fn check_profile_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_intform"))
        .args(["check", "divided-powers"])
        .env("INTFORM_PROFILE", "smoke")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("# profile=smoke"));
}

#[test]
fn literal_reading_fails_where_empty_parts_matter() {
    let o = intform(&[
        "check",
        "d-consistency",
        "--profile",
        "smoke",
        "--bound",
        "size=2",
        "--bound",
        "k=2",
        "--literal",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] d-consistency"));
}
