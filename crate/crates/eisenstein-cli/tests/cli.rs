//! End-to-end checks of the `eis` binary: output formats, the exit-code
//! contract, and agreement between text and JSON modes.

use std::process::{Command, Output};

use serde_json::Value;

fn eis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).trim().to_string()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = eis(&full);
    let value: Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    (value, out.status.code().unwrap())
}

#[test]
fn arithmetic_commands() {
    let out = eis(&["norm", "2+w"]);
    assert_eq!(stdout(&out), "3");
    assert_eq!(out.status.code(), Some(0));

    let out = eis(&["sigma", "7"]);
    assert_eq!(stdout(&out), "14+10w");

    let out = eis(&["sextant", "-1"]);
    assert_eq!(stdout(&out), "4");

    let out = eis(&["canon", "1-1w"]);
    assert_eq!(stdout(&out), "unit=1+w canonical=2+w");

    let out = eis(&["factor", "6+4w"]);
    assert_eq!(stdout(&out), "(2) * (3+2w)");

    let out = eis(&["construct", "--tau", "2", "--p", "3"]);
    assert_eq!(stdout(&out), "28");
}

#[test]
fn mersenne_text_output() {
    let out = eis(&["mersenne", "--tau", "2+1w", "--k", "2"]);
    let text = stdout(&out);
    assert!(text.contains("M_2 = 3+w"));
    assert!(text.contains("A_2 = 7"));
    assert!(text.contains("prime: yes"));
}

#[test]
fn exit_code_contract() {
    // 0: verified
    let candidate = stdout(&eis(&["construct", "--tau", "2+1w", "--p", "11", "--conj"]));
    let out = eis(&["verify", "--tau", "2+1w", "--eta", &candidate]);
    assert_eq!(out.status.code(), Some(0), "norm-perfect witness verifies");

    // 1: verification failed
    let out = eis(&["verify", "--tau", "2+1w", "--eta", "5+4w"]);
    assert_eq!(out.status.code(), Some(1));

    // 2: malformed literal
    let out = eis(&["norm", "2+"]);
    assert_eq!(out.status.code(), Some(2));

    // 2: structurally invalid input (composite tau)
    let out = eis(&["mersenne", "--tau", "4", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // 2: confidence exponent below the floor
    let out = eis(&["--mr-exponent", "32", "norm", "7"]);
    assert_eq!(out.status.code(), Some(2));

    // 1: search bound beyond the configured budget
    let out = eis(&[
        "--search-budget",
        "100",
        "search",
        "--tau",
        "2",
        "--bound",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // 1: factoring effort exhausted — (2^61 − 1)² resists trial division
    // and a starved rho budget, leaving a diagnostic on stderr
    let out = eis(&[
        "--rho-budget",
        "1",
        "factor",
        "5316911983139663487003542222693990401",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn json_matches_text_values() {
    let (value, code) = json(&["sigma", "7"]);
    assert_eq!(code, 0);
    assert_eq!(value["sigma"]["a"], "14");
    assert_eq!(value["sigma"]["b"], "10");
    assert_eq!(stdout(&eis(&["sigma", "7"])), "14+10w");

    let (value, _) = json(&["norm", "123456789012345678901234567890+1w"]);
    // decimal-string coefficients survive arbitrary precision
    assert_eq!(value["eta"]["a"], "123456789012345678901234567890");
    let text = stdout(&eis(&["norm", "123456789012345678901234567890+1w"]));
    assert_eq!(value["norm"], text);
}

#[test]
fn verify_json_shape() {
    let (value, code) = json(&["verify", "--tau", "2+1w", "--eta", "5+4w"]);
    assert_eq!(code, 1);
    assert_eq!(value["is_norm_perfect"], false);
    assert_eq!(value["n_sigma"], "91");
    assert_eq!(value["n_tau_eta"], "63");
    assert_eq!(value["confidence"], "deterministic");
}

#[test]
fn search_contract() {
    let (value, code) = json(&["search", "--tau", "2", "--bound", "50000"]);
    assert_eq!(code, 0);
    assert_eq!(value["hits"].as_array().unwrap().len(), 0);
    assert!(value["candidates_checked"].as_u64().unwrap() > 1000);
}

#[test]
fn sweep_commands() {
    let (value, code) = json(&["euclid-euler", "--pmax", "15"]);
    assert_eq!(code, 0);
    assert_eq!(value["all_ok"], true);
    let entries = value["entries"].as_array().unwrap();
    let p11 = entries.iter().find(|e| e["p"] == 11).unwrap();
    assert_eq!(p11["outcome"], "checked");
    assert_eq!(p11["norm_perfect"], true);
    assert_eq!(p11["perfect"], false);
    let p13 = entries.iter().find(|e| e["p"] == 13).unwrap();
    assert_eq!(p13["outcome"], "mersenne-composite");

    let (value, code) = json(&["check-obstruction", "--kmax", "32"]);
    assert_eq!(code, 0);
    assert_eq!(value["ok"], true);

    let (value, code) = json(&["check-bound", "--samples", "500"]);
    assert_eq!(code, 0);
    assert_eq!(value["ok"], true);
    assert_eq!(value["strict_violations"], 0);
}

#[test]
fn literal_round_trip_through_the_binary() {
    for literal in ["0", "7", "-3w", "w", "2+w", "5-4w", "-1+w"] {
        let out = eis(&["canon", literal]);
        if out.status.code() == Some(0) {
            // the printed canonical value is a fixed point: it re-parses and
            // re-canonicalizes to itself with unit 1
            let canonical = stdout(&out).split("canonical=").nth(1).unwrap().to_string();
            let reparsed = eis(&["canon", &canonical]);
            assert_eq!(
                stdout(&reparsed),
                format!("unit=1 canonical={canonical}"),
                "literal {literal}"
            );
        } else {
            assert_eq!(literal, "0"); // only zero is rejected
        }
    }
}
