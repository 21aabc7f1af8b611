use std::process::{Command, Output};

use serde_json::Value;

fn lyndon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lyndon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = lyndon(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

/// Output with the wall-clock field removed.
fn stable(args: &[&str]) -> String {
    let out = lyndon(args);
    assert!(out.status.success());
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .filter(|l| !l.contains("duration_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn factor_aab() {
    let v = json(&["factor", "aab"]);
    assert_eq!(v["u"], "a");
    assert_eq!(v["v"], "ab");
    assert_eq!(v["R"], 2);
    assert!((v["r"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);
    assert_eq!(v["metadata"]["command"], "factor");
}

#[test]
fn factor_accepts_integer_letters() {
    let v = json(&["factor", "0,0,1,0,1"]);
    assert_eq!(v["u"], "aab");
    assert_eq!(v["v"], "ab");
}

#[test]
fn count_ten() {
    let v = json(&["count", "--n", "10", "--q", "2"]);
    assert_eq!(v["lyndon_count"], "99");
    assert_eq!(v["primitive_count"], "990");
    assert_eq!(v["atom_mass"]["numerator"], "56");
    assert_eq!(v["atom_mass"]["denominator"], "99");
}

#[test]
fn count_table_is_csv() {
    let out = lyndon(&["count", "--table", "1..6"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "n,q,primitive,lyndon,nonprimitive,atom_mass,atom_mass_value");
    assert_eq!(rows.len(), 7);
    assert!(rows[6].starts_with("6,2,54,9,10,"));
}

#[test]
fn tree_text_and_json() {
    let out = lyndon(&["tree", "aab"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("aab\n  a\n  ab\n    a\n    b\n"), "{text}");
    let v = json(&["tree", "aab", "--format", "json"]);
    assert_eq!(v["word"], "aab");
    assert_eq!(v["u"]["word"], "a");
    assert_eq!(v["v"]["v"]["word"], "b");
    assert_eq!(v["tree_height"], 2);
}

#[test]
fn blocks_report() {
    let v = json(&["blocks", "aaababaaabbb", "--min-run", "3", "--min-block-len", "4"]);
    assert_eq!(v["H"], 2);
    assert_eq!(v["K"], 3);
    assert_eq!(v["j0"], 2);
    assert_eq!(v["d_n"], 0.5);
    assert_eq!(v["blocks"][1]["kind"], "short");
}

#[test]
fn exact_distribution_of_length_four() {
    let v = json(&["exact-dist", "--n", "4"]);
    assert_eq!(v["support"]["1"], "1/3");
    assert_eq!(v["support"]["3"], "2/3");
    assert_eq!(v["atom"], "2/3");
}

#[test]
fn samples_are_reproducible() {
    let args = ["sample", "--n", "30", "--count", "5", "--lyndon", "--seed", "4"];
    let v = json(&args);
    assert_eq!(v["words"].as_array().unwrap().len(), 5);
    assert_eq!(v["metadata"]["seed"], 4);
    assert!(v["metadata"]["generator"].as_str().unwrap().contains("ChaCha8"));
    assert_eq!(stable(&args), stable(&args));
}

#[test]
fn monte_carlo_commands_are_deterministic() {
    for cmd in ["limit-check", "dn-check"] {
        let args = [cmd, "--n", "300", "--samples", "400", "--seed", "7", "--workers", "2"];
        assert_eq!(stable(&args), stable(&args));
        let v = json(&args);
        assert_eq!(v["metadata"]["workers"], 2);
    }
    let tails = ["tails", "--n", "500", "--samples", "200", "--seed", "1"];
    assert_eq!(stable(&tails), stable(&tails));
}

#[test]
fn limit_check_csv_has_one_row_per_sample() {
    let out = lyndon(&["limit-check", "--n", "200", "--samples", "50", "--seed", "2", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "n,R,r,is_atom,is_good,d_n");
    assert_eq!(rows.len(), 51);
}

#[test]
fn usage_and_input_errors_exit_2() {
    for args in [
        vec!["factor", "ba"],
        vec!["factor", "a"],
        vec!["count", "--n", "5", "--q", "1"],
        vec!["factor", "--bogus", "aab"],
        vec!["exact-dist", "--n", "60"],
        vec!["nonsense"],
    ] {
        let out = lyndon(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn help_documents_epsilon_default() {
    for cmd in ["blocks", "limit-check", "dn-check", "tails"] {
        let out = lyndon(&[cmd, "--help"]);
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("[default: 0.2]"), "{cmd}: {text}");
    }
    for cmd in ["count", "enumerate", "factor", "tree", "sample", "exact-dist"] {
        assert!(lyndon(&[cmd, "--help"]).status.success());
    }
}
