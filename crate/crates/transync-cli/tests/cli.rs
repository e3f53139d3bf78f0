use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../transync/data").join(name).display().to_string()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_transync")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (v, out.status.code().unwrap())
}

#[test]
fn equiv_at_two_finds_a_witness() {
    let (v, code) = json(&["equiv", "--k", "2", &data("t1.tr"), &data("t2.tr")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "false");
    let w = &v["witness"];
    assert_eq!(w["input"], "aaaa");
    assert!(w["sync_word"].as_str().unwrap().starts_with("i.a"));
}

#[test]
fn identity_inclusion_of_a_transducer_in_itself() {
    let (v, code) = json(&["include", &data("marked.tr"), &data("marked.tr")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "true");
    assert_eq!(v["details"]["resynchronizer"], "identity");
}

#[test]
fn drat_echo_is_uniformizable() {
    let out = tmp("r1_uniformizer.tr");
    let (v, code) = json(&["drat-uniformize", "--K", "1", &data("r1.dtr"), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "yes");
    assert_eq!(v["details"]["delay_bound"], 9);
    let (c, _) = json(&["check", out.to_str().unwrap()]);
    assert_eq!(c["details"]["kind"], "transducer");
    assert_eq!(c["details"]["sequential"], true);
}

#[test]
fn drat_no_carries_k_and_caveat() {
    let (v, code) = json(&["drat-uniformize", "--K", "0", &data("count.dtr")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "no-up-to-0");
    assert!(v["caveat"].as_str().unwrap().contains("saturation"));
}

#[test]
fn one_delay_over_one_letter() {
    let dot = tmp("d1.dot");
    let (v, code) = json(&["dk-build", "--alphabet", "a", "--k", "1", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["states"], 3);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let (lit, _) = json(&["dk-build", "--alphabet", "a", "--k", "1", "--literal"]);
    assert_eq!(lit["details"]["states"], 3);
    assert_eq!(lit["details"]["non_copy_transitions"], 9);
}

#[test]
fn built_resync_checks_out() {
    let out = tmp("d1.rs");
    run(&["dk-build", "--alphabet", "a,b", "--k", "1", "--out", out.to_str().unwrap()]);
    let (v, code) = json(&["check", "--max-len", "2", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["kind"], "resync");
    assert_eq!(v["verdict"], "true");
    let (e, _) = json(&["equiv", "--resync", out.to_str().unwrap(), &data("t1.tr"), &data("t1.tr")]);
    assert_eq!(e["verdict"], "true");
}

#[test]
fn word_commands() {
    let (v, _) = json(&["del", "ab", "a"]);
    assert_eq!(v["details"]["del"], "b^-1");
    let (v, _) = json(&["lag", "i.a o.b", "o.b i.a"]);
    assert_eq!(v["verdict"], "true");
    assert_eq!(v["details"]["lag"], "1");
    let (v, _) = json(&["lag", "i.a", "i.b"]);
    assert_eq!(v["verdict"], "false");
    assert_eq!(v["details"]["lag"], "inf");
}

#[test]
fn monoid_and_enumerate() {
    let (v, code) = json(&["monoid", &data("t1.tr"), "--word", "aaa"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["monoid_size"], 2);
    assert_eq!(v["details"]["factorizations"], 4);
    let (v, _) = json(&["enumerate", "--max-len", "2", &data("t1.tr")]);
    assert_eq!(v["details"]["pairs"], serde_json::json!(["a -> eps", "aa -> eps", "aa -> aa"]));
}

#[test]
fn uniformize_writes_a_sequential_transducer() {
    let out = tmp("t1_uniformizer.tr");
    let dot = tmp("t1_game.dot");
    let (v, code) = json(&["uniformize", &data("t1.tr"), "--out", out.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "yes");
    assert_eq!(v["uniformizer_path"], out.to_str().unwrap());
    let (c, _) = json(&["check", out.to_str().unwrap()]);
    assert_eq!(c["details"]["sequential"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["check", "/nonexistent/file.tr"]).status.code(), Some(1));
    let (v, code) = json(&["--cap", "1", "monoid", &data("t1.tr")]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "error");
    let bad = tmp("bad.tr");
    std::fs::write(&bad, "transducer x\nalphabet a\nstates p\ntrans p a a q\n").unwrap();
    let (v, code) = json(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().starts_with("line 4"));
}

#[test]
fn reports_are_stable() {
    let args = ["--format", "json", "equiv", "--k", "1", &data("t1.tr"), &data("t2.tr")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["caveat", "command", "details", "error", "uniformizer", "uniformizer_path", "verdict", "witness"]);
    let timed: Value = serde_json::from_slice(&run(&["--timing", "--format", "json", "del", "a", "b"]).stdout).unwrap();
    assert!(timed["timing_ms"].is_u64());
}
