//! Every displayed rank-2 equality, collected to normal form.

use std::time::Instant;

use cbforge::blueprints::Blueprint;
use cbforge::identities::{verify, verify_catalog, Rank2Context, CATALOG};

fn builtins(m: u32) -> &'static [&'static str] {
    match m {
        2 => &["rank2:m2"],
        3 => &["rank2:m3"],
        4 => &["rank2:m4"],
        6 => &["rank2:m6lr", "rank2:m6rl"],
        _ => unreachable!(),
    }
}

fn holds(name: &str) {
    let identity = CATALOG.iter().find(|i| i.name == name).unwrap();
    for b in builtins(identity.m) {
        let ctx = Rank2Context::new(&Blueprint::builtin(b).unwrap(), 0, 1).unwrap();
        let out = verify(&ctx, identity).unwrap();
        assert!(out.holds(), "{b} {name}: {:?}", out.first_break());
    }
}

#[test]
fn six_one() {
    holds("m6 (1)");
    let ctx = Rank2Context::new(&Blueprint::builtin("rank2:m6lr").unwrap(), 0, 1).unwrap();
    let v = ctx.evaluate("u1 u5 u6 = u6 u4 u3 u1").unwrap();
    assert_eq!(v[0], v[1]);
}

#[test]
fn six_two() {
    holds("m6 (2)");
    let ctx = Rank2Context::new(&Blueprint::builtin("rank2:m6rl").unwrap(), 0, 1).unwrap();
    let v = ctx.evaluate("u1 u3 u5 = u5 u3 u1").unwrap();
    assert_eq!(v[0], v[1]);
}

#[test]
fn whole_catalog() {
    let start = Instant::now();
    let mut per_m = [0usize; 7];
    for m in [2, 3, 4, 6] {
        for b in builtins(m) {
            let (rep, outcomes) = verify_catalog(&Blueprint::builtin(b).unwrap(), 0, 1).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert!(outcomes.iter().all(|o| o.holds()));
            per_m[m as usize] = outcomes.len();
        }
    }
    assert_eq!(per_m.iter().sum::<usize>(), CATALOG.len());
    assert!(per_m[6] >= 40, "only {} m = 6 identities", per_m[6]);
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn a_wrong_chain_is_refused() {
    let ctx = Rank2Context::new(&Blueprint::builtin("rank2:m6lr").unwrap(), 0, 1).unwrap();
    let v = ctx.evaluate("u1 u5 u6 = u6 u4 u3 u2 u1").unwrap();
    assert_ne!(v[0], v[1]);
    let v = ctx.evaluate("u1 u3 = u3 u1").unwrap();
    assert_ne!(v[0], v[1]);
}
