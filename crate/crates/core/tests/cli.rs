mod common;

use std::path::PathBuf;
use std::process::Command;

use jonquieres::cli::{run, RunResult, EXIT_RESOURCE, EXIT_VALIDATION, EXIT_VERIFICATION};
use jonquieres::downgrade::downgraded_sequence;
use jonquieres::poly::parse_poly;

use common::{fixture, load};

fn jonq(args: &[&str]) -> RunResult {
    run(std::iter::once("jonq").chain(args.iter().copied()))
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn implicitize_section4() {
    let r = jonq(&["implicitize", &path("ex-sec4.jonq")]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "y2^3 - y1^2*y4\n"));
    let r = jonq(&["implicitize", &path("ex-sec6.jonq")]);
    assert_eq!(r.stdout, "dominant\n");
}

#[test]
fn report_first_line() {
    let r = jonq(&["report", &path("ex-sec4.jonq")]);
    assert_eq!(r.stdout.lines().next(), Some("dim=4 depth=4 CM=yes (d=3 ≤ n=3)"));
    assert!(r.stdout.contains("per closed formula"));
    let r = jonq(&["report", &path("ex-n2.jonq")]);
    assert_eq!(r.stdout.lines().next(), Some("dim=3 depth=3 CM=yes (d=2 ≤ n=2)"));
}

#[test]
fn sequence_section6_with_bidegrees() {
    let r = jonq(&["sequence", &path("ex-sec6.jonq")]);
    assert_eq!(
        r.stdout,
        "h1 (3,1): x1*x2^2*y1 + x3^2*x4*y3 - x1^2*x4*y4\n\
         h2 (2,2): x2^2*y1^2 + x3*x4*y3^2 - x1*x4*y1*y4\n\
         h3 (1,3): x2*y1^2*y2 + x4*y3^3 - x4*y1^2*y4\n"
    );
}

#[test]
fn sequence_output_round_trips() {
    for name in ["ex-sec4.jonq", "ex-sec6.jonq", "ex-n2.jonq"] {
        let m = load(name);
        let seq = downgraded_sequence(&m).unwrap();
        let r = jonq(&["sequence", &path(name)]);
        let parsed: Vec<_> = r
            .stdout
            .lines()
            .map(|line| parse_poly(line.split_once(": ").unwrap().1, m.ring()).unwrap())
            .collect();
        assert_eq!(parsed, seq.polys);
    }
}

#[test]
fn rees_lists_minors_then_sequence() {
    let r = jonq(&["rees", &path("ex-n2.jonq")]);
    assert_eq!(r.stdout.lines().count(), 3);
    assert_eq!(r.stdout.lines().last(), Some("y1^2 + y2^2 - y1*y3"));
}

#[test]
fn betti_output() {
    let r = jonq(&["betti", &path("ex-n2.jonq")]);
    assert!(r.stdout.starts_with("F0 = B\nF1 = B^2(-1,-1)\nF2 = B(-2,-2)\n"), "{}", r.stdout);
    let r = jonq(&["betti", "--json", &path("ex-sec4.jonq")]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["ranks"], serde_json::json!([1, 4, 5, 2]));
}

#[test]
fn verify_exit_codes() {
    let r = jonq(&["verify", &path("ex-sec4.jonq")]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.ends_with("result: pass\n"));
    let r = jonq(&["verify", "--corrupt", &path("ex-sec4.jonq")]);
    assert_eq!(r.code, EXIT_VERIFICATION);
    let r = jonq(&["verify", "--budget", "1", &path("ex-sec4.jonq")]);
    assert_eq!(r.code, EXIT_RESOURCE, "{}{}", r.stdout, r.stderr);
}

#[test]
fn output_is_deterministic() {
    for verb in ["verify", "sequence", "rees", "betti", "report"] {
        let a = jonq(&[verb, "--json", "--seed", "9", &path("ex-sec6.jonq")]);
        let b = jonq(&[verb, "--json", "--seed", "9", &path("ex-sec6.jonq")]);
        assert_eq!(a, b, "{verb}");
    }
}

#[test]
fn validation_errors_are_single_lines() {
    let p = scratch("bad-monoid.jonq", "mode = generalized\nn = 3\nf = x3*x4^2\ng = x1^4\n");
    let r = jonq(&["sequence", p.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_VALIDATION);
    assert!(r.stderr.starts_with("error: validation:"), "{}", r.stderr);
    assert!(r.stderr.contains("x3*x4^2"));
    assert_eq!(r.stderr.lines().count(), 1);

    let p = scratch("missing-g.jonq", "mode = standard\nn = 2\nf = x1\n");
    let r = jonq(&["sequence", p.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_VALIDATION);
    assert!(r.stderr.starts_with("error: format: line 4"), "{}", r.stderr);

    let r = jonq(&["sequence", "no/such/file.jonq"]);
    assert!(r.stderr.starts_with("error: io:"));
    let r = jonq(&["frobnicate"]);
    assert_eq!(r.code, EXIT_VALIDATION);
    assert!(r.stderr.starts_with("error: usage:"));
}

#[test]
fn field_override() {
    let r = jonq(&["--field", "Fp=7", "sequence", &path("ex-n2.jonq")]);
    assert_eq!(r.code, 0);
    let r = jonq(&["--field", "Fp=32003", "verify", &path("ex-sec4.jonq")]);
    assert!(r.stdout.contains("field=Fp 32003"));
    assert_eq!(r.code, 0);
}

#[test]
fn oracle_verbs() {
    let p = path("ex-sec4.jonq");
    assert_eq!(jonq(&["oracle", "dim", "L", &p]).stdout, "4\n");
    assert_eq!(jonq(&["oracle", "dim", "minors", &p]).stdout, "5\n");
    assert_eq!(jonq(&["oracle", "eliminate", "J", &p]).stdout, "y2^3 - y1^2*y4\n");
    let sat = jonq(&["oracle", "saturate", "L", &p]);
    assert!(sat.stdout.starts_with("steps=2\n"));
    assert_eq!(jonq(&["oracle", "gb", "minors", &p]).stdout.lines().count(), 3);
    let colon = jonq(&["oracle", "colon", "J1", &p, "--by", "m"]);
    assert_eq!(colon.code, 0);
    assert_eq!(jonq(&["oracle", "gb", "J9", &p]).code, EXIT_VALIDATION);
}

#[test]
fn binary_process() {
    let out = Command::new(env!("CARGO_BIN_EXE_jonq")).args(["implicitize", &path("ex-sec4.jonq")]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "y2^3 - y1^2*y4\n");
    let out = Command::new(env!("CARGO_BIN_EXE_jonq")).args(["verify", "--corrupt", &path("ex-sec4.jonq")]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
