use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn unitgrp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unitgrp"))
        .args(args)
        .env_remove("UNITGRP_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn classify_exit_codes() {
    let out = unitgrp(&["classify", "C8 x C5 x Z^7", "--class", "torsion-free"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("realizable: yes"));

    let out = unitgrp(&["classify", "C3", "--class", "torsion-free"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("reason: odd_order"));

    assert_eq!(code(&unitgrp(&["classify", "C6", "--class", "domain0"])), 0);
    assert_eq!(code(&unitgrp(&["classify", "C8", "--class", "domain0"])), 1);
}

#[test]
fn input_errors_exit_2_on_stderr() {
    for args in [
        &["classify", "C2 x", "--class", "domain0"][..],
        &["classify", "C2", "--class", "ring"],
        &["classify", "C2", "--class", "domain0", "--char0"],
        &["crt", "3", "3"],
        &["cyclo", "0"],
        &["catalog", "--max-order", "20000"],
        &["frobnicate"],
    ] {
        let out = unitgrp(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn json_round_trip() {
    for (group, class) in [
        ("C2 x C3 x C5 x Z^3", "torsion-free"),
        ("C8 x Z^2", "domain-int"),
        ("C6 x Z^2", "reduced"),
        ("C5", "reduced"),
        ("C10 x Z", "domain0"),
    ] {
        let out = unitgrp(&["classify", group, "--class", class, "--json"]);
        let text = stdout(&out);
        let v: unitgrp::Verdict = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
        let raw: Value = serde_json::from_str(&text).unwrap();
        for key in ["class", "group", "realizable", "min_rank", "reason", "witness"] {
            assert!(raw.get(key).is_some(), "{key} missing for {group}");
        }
        assert_eq!(code(&out), if v.realizable { 0 } else { 1 });
    }
}

#[test]
fn reduced_submodes() {
    let out = unitgrp(&["classify", "C2 x C2 x C3", "--class", "reduced", "--char0", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["class"], "reduced-char0");
    assert_eq!(v["realizable"], true);

    let out = unitgrp(&["classify", "C6 x Z^2", "--class", "reduced", "--positive-char"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("F_7"));
}

#[test]
fn gmin_reports() {
    let out = unitgrp(&["gmin", "C2 x C8 x C5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("g = 2\n"));
    assert!(stdout(&unitgrp(&["gmin", "C8 x C5"])).contains("g = 7\n"));
    assert!(stdout(&unitgrp(&["gmin", "C2"])).contains("g = 0\n"));
    assert_eq!(code(&unitgrp(&["gmin", "C3"])), 1);

    let out = unitgrp(&["gmin", "C2 x C3 x C5", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["g"], 1);
    assert_eq!(v["mt"], serde_json::json!([6, 10, 2]));
}

#[test]
fn verify_pass_and_budget() {
    for group in ["C2 x C3 x C9", "C2 x C3 x C5", "C2 x C8 x C5"] {
        let out = unitgrp(&["verify", group]);
        assert_eq!(code(&out), 0, "{group}");
        assert!(stdout(&out).starts_with("PASS"), "{group}");
    }
    let out = unitgrp(&["verify", "C2 x C3 x C9", "--budget", "10"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("unverified"));

    let out = Command::new(env!("CARGO_BIN_EXE_unitgrp"))
        .args(["verify", "C2 x C3 x C9"])
        .env("UNITGRP_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert_eq!(code(&unitgrp(&["verify", "C9"])), 1);
}

#[test]
fn witness_subcommand() {
    let out = unitgrp(&["witness", "C2 x C3 x C9", "--json"]);
    assert_eq!(code(&out), 0);
    let w: unitgrp::WitnessDescription = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(w.moduli, vec![6, 18]);
    assert!(w.verified);
}

#[test]
fn cyclo_and_crt() {
    assert_eq!(stdout(&unitgrp(&["cyclo", "12"])), "x^4 - x^2 + 1\n");
    let text = stdout(&unitgrp(&["crt", "3", "4"]));
    assert!(text.contains("surjective: yes\nindex: 1\ntorsion: C2 x C12\n"), "{text}");
    let text = stdout(&unitgrp(&["crt", "3", "9"]));
    assert!(text.contains("surjective: no"), "{text}");
    // -1 lies in every quotient ring, so the torsion is C18 rather than C9
    assert!(text.contains("torsion: C18\n"), "{text}");
}

#[test]
fn catalog_golden() {
    let cases: [(&[&str], &str); 3] = [
        (&["catalog", "--max-order", "12"], "catalog_torsion_free_12.txt"),
        (&["catalog", "--max-order", "6", "--class", "domain0", "--max-rank", "1"], "catalog_domain0_6.txt"),
        (&["catalog", "--max-order", "30", "--class", "reduced", "--max-rank", "2"], "catalog_reduced_30.txt"),
    ];
    for (args, file) in cases {
        let first = stdout(&unitgrp(args));
        assert_eq!(first, golden(file), "{file}");
        assert_eq!(stdout(&unitgrp(args)), first, "{file} is not byte-stable");
    }
}

#[test]
fn catalog_rank_zero_rows() {
    let text = stdout(&unitgrp(&["catalog", "--max-order", "12", "--max-rank", "0"]));
    let zero: Vec<&str> = text
        .lines()
        .skip(2)
        .filter(|l| l.trim_end().ends_with('Y'))
        .map(|l| l.split("  ").next().unwrap().trim())
        .collect();
    assert_eq!(zero, ["C2", "C2 x C2", "C4", "C6", "C2 x C2 x C2", "C2 x C4", "C2 x C6"]);

    let text = stdout(&unitgrp(&["catalog", "--max-order", "1"]));
    assert_eq!(text.lines().count(), 3);
}
