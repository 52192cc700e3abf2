use std::process::{Command, Output};

use hypercat::solver::{wildberger_root, PolynomialProblem};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercat"))
        .args(args)
        .output()
        .expect("spawn hypercat")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&full)).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

fn rational(s: &str) -> BigRational {
    let (n, d) = s.split_once('/').expect("n/d");
    BigRational::new(n.parse::<BigInt>().unwrap(), d.parse::<BigInt>().unwrap())
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn count_examples() {
    assert!(stdout(&["count", "0;3"]).contains("C = 5\n"));
    assert!(stdout(&["count", "0;"]).contains("C = 1\n"));
    let r = stdout(&["count", "1;1"]);
    assert!(r.contains("R = 3\n"));
    assert!(r.contains("V = 3, E = 4, F = 2\n"));
    assert!(r.contains("route enumeration: 3\n"));
    assert!(r.contains("routes agree: true\n"));
}

#[test]
fn count_skips_enumeration_past_the_default_grade() {
    let v = json(&[
        "count",
        "0;0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1",
    ]);
    let routes = v["results"]["routes"].as_array().unwrap();
    assert!(routes.iter().all(|r| r["route"] != "enumeration"));
    assert_eq!(v["results"]["value"], "1");
}

#[test]
fn fine_examples() {
    assert_eq!(stdout(&["fine", "4", "2"]), "3 = 3, pass\n");
    assert_eq!(stdout(&["fine", "1", "1"]), "1 = 1, pass\n");
    let table = stdout(&["fine", "10"]);
    assert!(table.ends_with("row sum 512 = 2^9 = 512, pass\n"));
    assert_eq!(table.lines().count(), 12);
}

#[test]
fn solve_examples() {
    let linear = stdout(&["solve", "1", "2", "--order", "0"]);
    assert!(linear.contains("root: 1/2 (~ 0.5)\n"));
    assert!(linear.contains("residual: 0/1 (~ 0)\n"));
    let origin = stdout(&["solve", "0", "1", "7", "--order", "4"]);
    assert!(origin.contains("root: 0/1 (~ 0)\n"));
    assert!(origin.contains("residual: 0/1 (~ 0)\n"));
}

#[test]
fn solve_accepts_negative_fractions_anywhere() {
    let want = wildberger_root(
        &PolynomialProblem::new(vec![q(1, 1), q(-1, 7), q(2, 1)]).unwrap(),
        3,
    );
    for args in [
        &["solve", "1", "-1/7", "2", "--order", "3"][..],
        &["solve", "--order", "3", "1", "-1/7", "2"],
        &["solve", "1", "-1/7", "--order=3", "2"],
    ] {
        let v = json(args);
        assert_eq!(
            rational(v["results"]["root"]["exact"].as_str().unwrap()),
            want
        );
    }
}

#[test]
fn solve_profile_lists_every_grade() {
    let v = json(&["solve", "1", "1", "1/5", "--order", "6", "--profile"]);
    let rows = v["results"]["profile"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    // Odd grades add nothing to a quadratic, so the residual repeats.
    assert_eq!(rows[2]["residual"], rows[3]["residual"]);
    assert_eq!(v["results"]["strictly_decreasing"], false);
    let text = stdout(&["solve", "1", "1", "1/5", "--order", "6", "--profile"]);
    assert!(text.contains("order\tpartial_sum\tresidual\n"));
}

#[test]
fn float_coefficients_report_approximations_only() {
    let v = json(&["solve", "1", "2.0", "--order", "0"]);
    assert_eq!(v["results"]["arithmetic"], "float");
    assert_eq!(v["results"]["root"]["approx"], "0.5");
    assert!(v["results"]["root"].get("exact").is_none());
}

#[test]
fn solve_help_states_the_sign_convention() {
    let help = stdout(&["solve", "--help"]);
    assert!(help.contains("0 = c0 - c1 x + c2 x^2 + c3 x^3 + ..."));
}

#[test]
fn layers_example() {
    let out = stdout(&["layers", "5"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(
        lines[5],
        "e^5 (7): u1^5 + u1^3 u2 + u1^2 u3 + u1 u2^2 + u1 u4 + u2 u3 + u5"
    );
    assert_eq!(lines[6], "p(n): 1 1 2 3 5 7");
}

#[test]
fn enumerate_examples() {
    assert_eq!(stdout(&["enumerate", "0;1"]), "(2: | |)\n");
    assert_eq!(stdout(&["enumerate", "0;2"]).lines().count(), 2);
    let tub = stdout(&["enumerate", "1;1"]);
    assert_eq!(tub.lines().count(), 3);
    let v = json(&["enumerate", "1;1"]);
    let shapes: Vec<&str> = v["results"]["shapes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert_eq!(shapes, tub.lines().collect::<Vec<_>>());
}

#[test]
fn series_examples() {
    let out = stdout(&["series", "tubdigon", "--order", "6"]);
    assert!(out.ends_with("routes agree: true\n"));
    let sub = stdout(&["series", "subdigon", "--order", "6"]);
    assert!(sub.contains("0;2\t2/1\n"));
    assert!(sub.ends_with("closed form agrees: true\n"));
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(code(&["count", "1;x"]), Some(2));
    assert_eq!(code(&["count", "0;1;2"]), Some(2));
    assert_eq!(code(&["fine", "0"]), Some(2));
    assert_eq!(code(&["fine", "4", "5"]), Some(2));
    assert_eq!(code(&["fine", "4", "0"]), Some(2));
    assert_eq!(code(&["solve", "1", "0", "1"]), Some(2));
    assert_eq!(code(&["solve", "1"]), Some(2));
    assert_eq!(code(&["solve", "1", "abc"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    // Resource bounds.
    assert_eq!(code(&["count", "0;6", "--bound", "10"]), Some(3));
    assert_eq!(code(&["enumerate", "0;6", "--bound", "10"]), Some(3));
    assert_eq!(code(&["enumerate", "4;6", "--bound", "15"]), Some(3));
    assert_eq!(code(&["layers", "201"]), Some(3));
    assert_eq!(code(&["fine", "201", "3"]), Some(3));
    // Help is not an error.
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn errors_go_to_stderr() {
    let out = run(&["count", "nope"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad type literal"));
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 5] = [
        &["count", "2;1,1"],
        &["fine", "9"],
        &["solve", "1", "1", "1/5", "--order", "8", "--profile"],
        &["layers", "6"],
        &["series", "tubdigon", "--order", "5"],
    ];
    for args in cases {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
        let mut a = json(args);
        let mut b = json(args);
        a["timing_ms"] = Value::Null;
        b["timing_ms"] = Value::Null;
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn json_and_text_carry_the_same_values() {
    let v = json(&["count", "2;1,1"]);
    let text = stdout(&["count", "2;1,1"]);
    let value = v["results"]["value"].as_str().unwrap();
    assert!(text.contains(&format!("R = {value}\n")));

    let v = json(&["fine", "7", "3"]);
    assert_eq!(
        stdout(&["fine", "7", "3"]),
        format!(
            "{} = {}, pass\n",
            v["results"]["lhs"].as_str().unwrap(),
            v["results"]["rhs"].as_str().unwrap()
        )
    );

    let args = ["solve", "1", "1", "1/5", "--order", "10"];
    let v = json(&args);
    let root = &v["results"]["root"];
    assert!(stdout(&args).contains(&format!(
        "root: {} (~ {})\n",
        root["exact"].as_str().unwrap(),
        root["approx"].as_str().unwrap()
    )));

    let args = ["series", "tubdigon", "--order", "4"];
    let v = json(&args);
    let from_json: String = v["results"]["fixed_point"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            format!(
                "{}\t{}\n",
                t["type"].as_str().unwrap(),
                t["coefficient"].as_str().unwrap()
            )
        })
        .collect();
    assert!(stdout(&args).starts_with(&from_json));
}

#[test]
fn json_records_round_trip_to_exact_values() {
    let v = json(&["solve", "1", "1", "1/5", "--order", "12"]);
    let p = PolynomialProblem::new(vec![q(1, 1), q(1, 1), q(1, 5)]).unwrap();
    let root = wildberger_root(&p, 12);
    assert_eq!(
        rational(v["results"]["root"]["exact"].as_str().unwrap()),
        root
    );
    assert_eq!(v["inputs"]["coefficients"][2], "1/5");
    assert!(v["timing_ms"].is_number());

    // Exact values are strings, never JSON numbers.
    let v = json(&["count", "0;0,0,0,0,0,0,0,0,10"]);
    let value = v["results"]["value"].as_str().unwrap();
    assert_eq!(value.parse::<BigInt>().unwrap().to_string(), value);

    // Re-serializing a parsed record reproduces it.
    let v = json(&["series", "tubdigon", "--order", "3"]);
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    for t in again["results"]["geometric"].as_array().unwrap() {
        let ty: hypercat::TubType = t["type"].as_str().unwrap().parse().unwrap();
        assert_eq!(ty.to_string(), t["type"].as_str().unwrap());
        rational(t["coefficient"].as_str().unwrap());
    }
}
