//! `(τ_sτ_t)^m` on the generators of `N_{s,t}` in rank-3 fixtures.

mod support;

use cbforge::chambers::appendix_conjugation_check;
use cbforge::report::Limits;
use support::fixture;

fn run(name: &str, s: usize, t: usize, r: usize) -> (usize, String) {
    let m = fixture(name).system().matrix().order(s, t).unwrap() as usize;
    run_within(name, s, t, r, r + m)
}

fn run_within(name: &str, s: usize, t: usize, r: usize, ambient: usize) -> (usize, String) {
    let bp = fixture(name);
    let rep = appendix_conjugation_check(&bp, s, t, r, ambient, &Limits::default()).unwrap();
    assert!(rep.passed(), "{name} ({s}, {t}): {:?}", rep.violations.first());
    assert!(rep.checks > 0, "{name}");
    (rep.checks, rep.notes.join("; "))
}

#[test]
fn right_angled() {
    let (_, note) = run("ra.cb", 0, 1, 2);
    assert!(note.contains(" 0 unverifiable"), "{note}");
}

#[test]
fn a2_with_infinite_edges() {
    let (_, note) = run("a2inf.cb", 0, 1, 2);
    assert!(note.contains(" 0 unverifiable"), "{note}");
}

#[test]
fn b2_with_infinite_edges() {
    run("b2inf.cb", 0, 1, 1);
}

#[test]
fn g2_with_infinite_edges() {
    run("g2inf.cb", 0, 1, 1);
}

#[test]
fn spherical_a3_every_pair() {
    // radius 6 reaches the longest element, so every instance is decided
    for (s, t) in [(0, 1), (1, 2), (0, 2)] {
        let (_, note) = run_within("a3.cb", s, t, 2, 6);
        assert!(note.contains(" 0 unverifiable"), "{note}");
    }
}

#[test]
fn affine_a2() {
    run("affine_a2.cb", 0, 1, 1);
}
