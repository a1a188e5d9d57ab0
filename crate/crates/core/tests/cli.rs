use std::process::{Command, Output};

use braidgen::rewrite::{b6_generator, substitute_b6, B6Gen};

fn braidgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidgen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn nf_examples() {
    let a = braidgen(&["nf", "--n", "3", "1 2 1"]);
    let b = braidgen(&["nf", "--n", "3", "2 1 2"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let e = braidgen(&["nf", "--n", "4", ""]);
    assert_eq!(stdout(&e).trim(), "D^0 |");

    let r = b6_generator(B6Gen::R);
    let rbr = substitute_b6(&[(B6Gen::R, 1), (B6Gen::B, 1), (B6Gen::R, -1)]);
    assert_eq!(r.exponent_sum(), 0);
    let lhs = braidgen(&["nf", "--n", "6", &rbr.to_string()]);
    let rhs = braidgen(&["nf", "--n", "6", "3 -5"]);
    assert_eq!(stdout(&lhs), stdout(&rhs));

    let bad = braidgen(&["nf", "--n", "3", "1 5"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn eq_exit_codes() {
    assert_eq!(braidgen(&["eq", "--n", "4", "1 3", "3 1"]).status.code(), Some(0));
    assert_eq!(braidgen(&["eq", "--n", "3", "1", "2"]).status.code(), Some(1));
    assert_eq!(braidgen(&["eq", "--n", "3", "1", "x"]).status.code(), Some(2));
    assert_eq!(braidgen(&["eq", "--n", "3", "-1 -2", "-2 -1"]).status.code(), Some(1));
    let factor = substitute_b6(&[
        (B6Gen::B, -9),
        (B6Gen::R, 1),
        (B6Gen::A, 1),
        (B6Gen::R, -1),
        (B6Gen::B, 10),
    ]);
    let out = braidgen(&["eq", "--n", "6", "1 -4", &factor.to_string()]);
    assert_eq!(out.status.code(), Some(0));
    let out = braidgen(&["eq", "--lk", "--n", "5", "1 2 1", "2 1 2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("lk oracle: equal"));
}

#[test]
fn rewrite_and_certify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let cert_s = cert.to_str().unwrap();
    let out = braidgen(&["rewrite", "--n", "5", "--k", "2", "--target", "3", "--cert-out", cert_s]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ROOT = S0"));
    assert_eq!(braidgen(&["certify", "--in", cert_s]).status.code(), Some(0));

    let out = braidgen(&["rewrite", "--n", "5", "--k", "2", "--target", "2", "--cert-out", cert_s]);
    assert!(stdout(&out).contains("ROOT = S0 S1 S2"));
    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = text.replacen("\"rhs\": \"", "\"rhs\": \"2 -2 1 ", 1);
    std::fs::write(&cert, tampered).unwrap();
    let out = braidgen(&["certify", "--in", cert_s]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL claim   0"));

    std::fs::write(&cert, "{ \"n\": 5 ").unwrap();
    assert_eq!(braidgen(&["certify", "--in", cert_s]).status.code(), Some(2));
}

#[test]
fn rewrite_words_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("w.json");
    let word = dir.path().join("word.txt");
    std::fs::write(&word, "2 1 -2 -1\n").unwrap();
    let at = format!("@{}", word.display());
    let out = braidgen(&[
        "rewrite", "--n", "5", "--k", "2", "--word", &at, "--cert-out", cert.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("certificate verified"));

    let out = braidgen(&["rewrite-any", "--n", "6", "--word", "2 1 -3 -1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("product equals input: true"));
    let out = braidgen(&["rewrite-any", "--n", "6", "--word", "2 1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = braidgen(&["rewrite", "--n", "6", "--k", "5", "--target", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("congruent to either 1 or -1"));
}

#[test]
fn json_output() {
    let out = braidgen(&["--json", "nf", "--n", "4", "-2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["delta_power"], -1);
    assert_eq!(v["text"], "D^-1 | 4,2,3,1");

    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let out = braidgen(&[
        "rewrite", "--json", "--n", "7", "--k", "3", "--target", "2", "--cert-out",
        cert.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["slp"].as_array().unwrap().last().unwrap(), "ROOT = S0 S1 S2 S3 S4");

    let out = braidgen(&["suite", "--json", "--n", "4", "--cases", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn suite_and_bench() {
    let out = braidgen(&["suite", "--n", "6", "--cases", "10", "--jobs", "2", "--seed", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS B6/B4 generator identities"));
    let details = |jobs: &str| -> Vec<serde_json::Value> {
        let out = braidgen(&["suite", "--json", "--n", "7", "--cases", "10", "--jobs", jobs, "--seed", "3"]);
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| serde_json::json!([c["name"], c["pass"], c["detail"]]))
            .collect()
    };
    assert_eq!(details("1"), details("4"));

    let out = braidgen(&["bench", "--n", "5", "--lengths", "100,1000"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3);
    assert_eq!(braidgen(&["suite"]).status.code(), Some(2));
}
