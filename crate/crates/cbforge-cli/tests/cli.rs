use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cbforge/tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbforge")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_builtin_g2() {
    let o = run(&["--builtin", "rank2:m6lr", "--radius", "6", "validate"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches(": PASS").count(), 4, "{text}");
}

#[test]
fn mutated_fixture_fails_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let path = fixture("g2_mutated.cb");
    let o = run(&["--blueprint", path.to_str().unwrap(), "--radius", "5", "--report", report.to_str().unwrap(), "validate"]);
    assert_eq!(o.status.code(), Some(1));
    let records = std::fs::read_to_string(&report).unwrap();
    assert!(records.contains("REPORT title=\"Weyl g2_mutated r=5\" verdict=FAIL"), "{records}");
    assert!(records.contains("VIOLATION axiom=Weyl w=1.2.1.2.1 s=2 gallery=1.2.1.2.1 i=1 j=5 expected=[4] found=[3,4]"));
    assert!(records.lines().all(|l| l.starts_with("REPORT ") || l.starts_with("NOTE ") || l.starts_with("VIOLATION ")));
}

#[test]
fn output_is_byte_stable() {
    let path = fixture("b2_short.cb");
    let a = run(&["--blueprint", path.to_str().unwrap(), "validate"]);
    let b = run(&["--blueprint", path.to_str().unwrap(), "validate"]);
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn group_summary() {
    let o = run(&["--builtin", "rank2:m6lr", "group"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("order=2^6=64"), "{text}");
    assert!(text.contains("class=3"));
    assert!(text.contains("2^6 > 2^3 > 2^1 > 2^0"));
    let o = run(&["--builtin", "rank2:m3", "group", "--word", "1.2"]);
    assert!(stdout(&o).contains("order=2^2=4"));
}

#[test]
fn chambers_with_dump() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("adj.txt");
    let o = run(&["--builtin", "rank2:m3", "chambers", "--dump", dump.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("21 chambers, building: PASS, action: PASS, braid: PASS"));
    assert!(!std::fs::read_to_string(&dump).unwrap().is_empty());
}

#[test]
fn appendix_catalog_and_rank_three() {
    let o = run(&["--builtin", "rank2:m6lr", "appendix"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("126 of 126 identities hold"));
    let path = fixture("a2inf.cb");
    let o = run(&["--blueprint", path.to_str().unwrap(), "--radius", "1", "appendix"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn residue_and_roots() {
    let o = run(&["--builtin", "rank2:m3", "residue"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(u_s tau_s)^3 rank2:m3"));
    let o = run(&["--builtin", "rank2:m3", "roots", "--word", "1.2.1"]);
    assert_eq!(stdout(&o).trim(), "1.2.1: (e, 1) [1, 0] (1, 2) [1, 1] (1.2, 1) [0, 1]");
}

#[test]
fn usage_and_load_errors() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["validate"]).status.code(), Some(2));
    assert_eq!(run(&["--builtin", "rank2:m5", "validate"]).status.code(), Some(2));
    assert_eq!(run(&["--blueprint", "/nonexistent.cb", "validate"]).status.code(), Some(2));
    assert_eq!(run(&["--builtin", "rank2:m3", "--blueprint", "x.cb", "validate"]).status.code(), Some(2));
    assert_eq!(run(&["--builtin", "rank2:m3", "--cap-galleries", "0", "validate"]).status.code(), Some(2));
    assert_eq!(run(&["--builtin", "rank2:m3", "roots", "--word", "1.3"]).status.code(), Some(2));
    let o = run(&["--builtin", "rank2:m3", "chambers", "--s", "1", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
}

#[test]
fn corrupt_file_is_a_load_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cb");
    std::fs::write(&path, "rank 2\nm 1 2 3\nrel 1.2.1 1 3 : 3\n").unwrap();
    let o = run(&["--blueprint", path.to_str().unwrap(), "validate"]);
    assert_eq!(o.status.code(), Some(2));
}
