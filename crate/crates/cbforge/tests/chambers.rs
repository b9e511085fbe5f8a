//! Rank-2 chamber systems `C_J` with the `U_J` and `τ` actions.

mod support;

use std::time::Instant;

use cbforge::blueprints::Blueprint;
use cbforge::chambers::{braid_check, build_cj, verify_action, verify_building};
use cbforge::report::Limits;

fn full_run(name: &str, s: usize, t: usize, count: usize) {
    let start = Instant::now();
    let bp = Blueprint::builtin(name).unwrap();
    let cs = build_cj(&bp, s, t, &Limits::default()).unwrap();
    assert_eq!(cs.len(), count, "{name}");
    assert_eq!(cs.expected_count(), count);
    let b = verify_building(&cs);
    assert!(b.passed() && b.checks > 0, "{b:?}");
    for x in 0..2 {
        let a = verify_action(&cs, x).unwrap();
        assert!(a.passed() && a.checks > 0, "{a:?}");
    }
    let br = braid_check(&cs).unwrap();
    assert!(br.passed(), "{br:?}");
    assert!(br.checks >= count);
    assert!(start.elapsed().as_secs() < 10);
}

#[test]
fn m2_nine() {
    full_run("rank2:m2", 0, 1, 9);
}

#[test]
fn m3_twenty_one() {
    full_run("rank2:m3", 0, 1, 21);
}

#[test]
fn m4_forty_five() {
    full_run("rank2:m4", 0, 1, 45);
}

#[test]
fn m6_one_eighty_nine() {
    full_run("rank2:m6lr", 0, 1, 189);
    full_run("rank2:m6rl", 1, 0, 189);
}

#[test]
fn counts_follow_the_formula() {
    // one chamber per (w, uU_w): Σ_w 2^{m - ℓ(w)} over the dihedral group of order 2m
    for (m, n) in [(2usize, 9usize), (3, 21), (4, 45), (6, 189)] {
        let sum: usize = (0..=m).map(|l| if l == 0 || l == m { 1 } else { 2 } << (m - l)).sum();
        assert_eq!(sum, n);
    }
}

#[test]
fn rank_three_fixture_pairs() {
    let bp = support::fixture("a3.cb");
    for (s, t) in [(0, 1), (1, 2), (0, 2)] {
        let cs = build_cj(&bp, s, t, &Limits::default()).unwrap();
        assert!(verify_building(&cs).passed());
        assert!(verify_action(&cs, 0).unwrap().passed());
        assert!(braid_check(&cs).unwrap().passed());
    }
}

#[test]
fn infinite_pair_refused() {
    let bp = support::fixture("a2inf.cb");
    let mut refused = 0;
    for (s, t) in [(0, 1), (1, 2), (0, 2)] {
        refused += usize::from(build_cj(&bp, s, t, &Limits::default()).is_err());
    }
    assert!(refused > 0);
}

#[test]
fn corrupted_table_is_refused() {
    let bp = support::fixture("g2_mutated.cb");
    let outcome = build_cj(&bp, 0, 1, &Limits::default());
    match outcome {
        Err(e) => assert!(e.to_string().contains("inconsistent"), "{e}"),
        Ok(cs) => {
            let ok = verify_building(&cs).passed()
                && verify_action(&cs, 0).unwrap().passed()
                && verify_action(&cs, 1).unwrap().passed()
                && braid_check(&cs).unwrap().passed();
            assert!(!ok, "corruption went unnoticed");
        }
    }
}
