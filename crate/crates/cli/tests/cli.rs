use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sparc_cli::solve_checked;
use sparc_core::ground::format_literal_set;
use sparc_core::{load, translate, Limits};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/corpus").join(name)
}

fn sparc(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sparc"));
    cmd.args(args).env_remove("SPARC_ATOM_CAP").env_remove("SPARC_CANDIDATE_CAP");
    cmd
}

fn on(verb: &str, file: &Path, extra: &[&str]) -> Output {
    let mut args = vec![verb, file.to_str().unwrap()];
    args.extend_from_slice(extra);
    sparc(&args).output().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

const PROGRAMS: [&str; 7] = [
    "p1.sp",
    "p2.sp",
    "weak_example.sp",
    "contingency_default.sp",
    "contingency_observed.sp",
    "indirect_exception_asp.sp",
    "misspelled.sp",
];

#[test]
fn exit_codes() {
    assert_eq!(on("solve", &corpus("p1.sp"), &[]).status.code(), Some(0));
    let e1 = on("solve", &corpus("indirect_exception_asp.sp"), &[]);
    assert_eq!(e1.status.code(), Some(1));
    assert!(e1.stdout.is_empty());

    let bad = on("check", &corpus("misspelled.sp"), &[]);
    assert_eq!(bad.status.code(), Some(2));
    let err = text(&bad.stderr);
    assert!(err.contains("misspelled.sp:7:1: error: argument 1 of `parent`: `jone` is not of sort `person`"), "{err}");

    assert_eq!(sparc(&["solve"]).output().unwrap().status.code(), Some(2));
    assert_eq!(sparc(&["frobnicate", "x"]).output().unwrap().status.code(), Some(2));
    assert_eq!(sparc(&["--atom-cap", "0", "solve", "x.sp"]).output().unwrap().status.code(), Some(2));
    let missing = sparc(&["solve", "/nonexistent/x.sp"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    assert!(text(&missing.stderr).starts_with("/nonexistent/x.sp: error: cannot read file"));
}

#[test]
fn syntax_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.sp");
    std::fs::write(&path, "sorts definition\ns(a).\npredicates declaration\np(s)\nprogram rules\np(a) :- .\n").unwrap();
    let out = on("check", &path, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).starts_with(&format!("{}:6:", path.display())), "{}", text(&out.stderr));
}

#[test]
fn caps_from_the_environment() {
    let atoms = sparc(&["solve", corpus("p1.sp").to_str().unwrap()]).env("SPARC_ATOM_CAP", "2").output().unwrap();
    assert_eq!(atoms.status.code(), Some(3));
    assert!(text(&atoms.stderr).contains("exceeds 2 atoms"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("choice.sp");
    std::fs::write(&path, "sorts definition\ns(a).\npredicates declaration\np(s)\nq(s)\nprogram rules\np(X) v q(X).\n")
        .unwrap();
    let nodes = sparc(&["solve", path.to_str().unwrap()]).env("SPARC_CANDIDATE_CAP", "1").output().unwrap();
    assert_eq!(nodes.status.code(), Some(3));
    let flag_wins = sparc(&["--candidate-cap", "100", "solve", path.to_str().unwrap()])
        .env("SPARC_CANDIDATE_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
    assert_eq!(text(&flag_wins.stdout), "{p(a)}\n{q(a)}\n");
}

#[test]
fn output_is_deterministic() {
    for name in PROGRAMS {
        for verb in ["check", "ground", "solve", "translate"] {
            let a = on(verb, &corpus(name), &[]);
            let b = on(verb, &corpus(name), &[]);
            assert_eq!(
                (a.status.code(), &a.stdout, &a.stderr),
                (b.status.code(), &b.stdout, &b.stderr),
                "{verb} {name}"
            );
        }
    }
    let emit =
        |seed: &str| sparc(&["bench", "-n", "7", "-d", "0.4", "--seed", seed, "--emit"]).output().unwrap().stdout;
    assert_eq!(emit("9"), emit("9"));
    assert_ne!(emit("9"), emit("10"));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.txt");
    let out = on("solve", &corpus("p2.sp"), &["-o", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), "{p(a,b), t(a,b)}\n");
}

#[test]
fn check_prints_sorts() {
    let out = on("check", &corpus("p1.sp"), &[]);
    assert_eq!(text(&out.stdout), "sort s1 = {1,2}\nsort s2 = {2,3}\nsort s3 = {f(1,2),f(2,1)}\n");
}

#[test]
fn show_sorts_and_support() {
    let out = on("solve", &corpus("weak_example.sp"), &["--show-sorts", "--show-support"]);
    assert_eq!(text(&out.stdout), "{-p(a), q(a), s(a)} % support: {rn(1,a)}\n");
    let limited = on("solve", &corpus("contingency_default.sp"), &["--limit", "1"]);
    assert_eq!(text(&limited.stdout).lines().count(), 1);
}

#[test]
fn json_records() {
    let out = on("solve", &corpus("weak_example.sp"), &["--format", "json"]);
    let rec: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["answer_set"], serde_json::json!(["-p(a)", "q(a)"]));
    assert_eq!(rec["support"], serde_json::json!(["rn(1,a)"]));
    assert!(rec["elapsed_ms"].as_f64().unwrap() >= 0.0);

    let bench = sparc(&["bench", "-n", "5", "-d", "0.5", "--seed", "4", "--format", "json"]).output().unwrap();
    assert_eq!(bench.status.code(), Some(0));
    let rec: serde_json::Value = serde_json::from_slice(&bench.stdout).unwrap();
    let distance = rec["bench"]["distance"].as_u64().unwrap() as usize;
    assert_eq!(rec["support"].as_array().unwrap().len(), distance);
}

#[test]
fn bench_text_and_errors() {
    let out = sparc(&["bench", "-n", "2", "-d", "1.0", "--seed", "0"]).output().unwrap();
    let line = text(&out.stdout);
    assert!(line.starts_with("vertices=2 edges=2 "), "{line}");
    assert!(line.contains("bfs_distance=1 path_length=1 support=1 "), "{line}");
    for bad in [["-n", "1", "-d", "0.5"], ["-n", "4", "-d", "0"], ["-n", "4", "-d", "1.5"], ["-n", "3", "-d", "0.01"]] {
        let mut args = vec!["bench"];
        args.extend(bad);
        assert_eq!(sparc(&args).output().unwrap().status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn external_solver() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("fake-dlv.sh");
    std::fs::write(&script, "#!/bin/sh\ntest -f \"$1\" || exit 7\necho 'DLV [build test]'\necho\necho 'Best model: {s(a), appl(rn(1,a)), q(a), -p(a)}'\necho 'Cost ([Weight:Level]): <[1:1]>'\n").unwrap();
    let out = sparc(&[
        "translate",
        corpus("weak_example.sp").to_str().unwrap(),
        "--solver",
        "/bin/sh",
        "--solver-arg",
        script.to_str().unwrap(),
    ])
    .output()
    .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    assert_eq!(text(&out.stdout), "{-p(a), q(a), s(a)}\n");

    let missing = on("translate", &corpus("weak_example.sp"), &["--solver", "/nonexistent/dlv"]);
    assert_eq!(missing.status.code(), Some(2));
    let failing = on("translate", &corpus("weak_example.sp"), &["--solver", "/bin/false"]);
    assert_eq!(failing.status.code(), Some(2));
}

/// `solve --show-sorts` agrees with translating, solving the counterpart and
/// stripping `appl`, on every corpus program that checks.
#[test]
fn pipeline_identity_on_corpus() {
    let limits = Limits::default();
    for name in PROGRAMS.iter().filter(|n| **n != "misspelled.sp") {
        let checked = load(&std::fs::read_to_string(corpus(name)).unwrap(), &limits).unwrap();
        let mut direct: Vec<String> =
            solve_checked(&checked, 0, true, &limits).unwrap().iter().map(|(a, _)| format_literal_set(a)).collect();
        let mut counterpart: Vec<String> =
            translate::solve_counterpart(&checked, &limits).unwrap().iter().map(format_literal_set).collect();
        direct.sort();
        counterpart.sort();
        assert_eq!(direct, counterpart, "{name}");

        let cli = on("solve", &corpus(name), &["--show-sorts"]);
        let mut printed: Vec<String> = text(&cli.stdout).lines().map(str::to_owned).collect();
        printed.sort();
        assert_eq!(printed, direct, "{name}");
    }
}
