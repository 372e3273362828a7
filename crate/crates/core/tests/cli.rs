use std::process::{Command, Output};

use serde_json::Value;

fn bchlab(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bchlab"))
        .args(args)
        .env("BCHLAB_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn field_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = bchlab(&["field", "--q", "9", "--m", "2"], dir.path());
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["p"].as_u64(), v["e"].as_u64(), v["D"].as_u64()), (Some(3), Some(2), Some(4)));
    assert_eq!(v["alphaOrder"], 80);
    // constant term last
    assert_eq!(v["modulus"].as_array().unwrap().first(), Some(&Value::from(1)));
}

#[test]
fn cosets_use_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let out = bchlab(&["cosets", "--modulus", "26", "--q", "3", "--odd-only", "--csv"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "leader,size\n1,3\n5,3\n7,3\n13,1\n17,3\n");
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn code_and_weights() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--family", "neg", "--q", "3", "--m", "4", "--delta", "5", "--b", "1"];
    let code = json(&bchlab(&[&["code"][..], &args].concat(), dir.path()));
    assert_eq!((code["n"].as_u64(), code["k"].as_u64()), (Some(40), Some(28)));
    let w = json(&bchlab(&[&["weights", "--via-dual"][..], &args].concat(), dir.path()));
    assert_eq!(w["d"], 6);
    assert_eq!(w["certificate"], "exact-via-dual");
    assert_eq!(w["weights"]["6"], 560);
}

#[test]
fn dualcheck_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&bchlab(&["dualcheck", "--q", "3", "--m", "3", "--delta", "7"], dir.path()));
    assert_eq!(v["duallyBCH"], true);
    assert_eq!(v["closedForm"], true);
}

#[test]
fn formula_command() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&bchlab(&["formula", "--id", "alternating-digit", "--q", "5", "--m", "4", "--a", "1", "--b", "2"], dir.path()));
    assert_eq!(v["value"]["k"], 80);
    assert_eq!(v["preconditionsOk"], true);
    let list = bchlab(&["formula", "--list"], dir.path());
    assert!(String::from_utf8(list.stdout).unwrap().lines().count() >= 18);
    assert_eq!(bchlab(&["formula", "--id", "nope", "--q", "3", "--m", "3"], dir.path()).status.code(), Some(2));
}

#[test]
fn verify_exit_codes_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let pass = ["verify", "--suite", "ext-odd-top", "--q-set", "3,5", "--m-max", "3", "--format", "json"];
    let a = bchlab(&pass, dir.path());
    let b = bchlab(&pass, dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["summary"]["pass"], 2);

    let fail = bchlab(&["verify", "--suite", "top-odd-leaders", "--q-set", "3", "--m-max", "4"], dir.path());
    assert_eq!(fail.status.code(), Some(1));
    assert_eq!(String::from_utf8(fail.stdout).unwrap().lines().last(), Some("FAIL"));

    assert_eq!(bchlab(&["verify", "--suite", "no-such-suite"], dir.path()).status.code(), Some(2));
    assert_eq!(bchlab(&["verify", "--suite", "top-leaders", "--format", "xml"], dir.path()).status.code(), Some(2));
    assert_eq!(bchlab(&["bogus"], dir.path()).status.code(), Some(2));

    let out = dir.path().join("r.csv");
    let csv = bchlab(
        &["verify", "--suite", "top-leaders", "--q-set", "3", "--m-max", "3", "--format", "csv", "--out", out.to_str().unwrap()],
        dir.path(),
    );
    assert!(csv.status.success());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("claimId,params,expected,actual,status,detail"));
    assert_eq!(text.lines().count(), 3);
}
