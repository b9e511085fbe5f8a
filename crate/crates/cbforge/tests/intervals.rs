//! Cone intervals against the half-space definition.

mod support;

use cbforge::blueprints::Blueprint;
use cbforge::galleries::min_gal;
use support::compare_intervals as compare;

#[test]
fn builtin_rank_two() {
    for name in ["rank2:m2", "rank2:m3", "rank2:m4", "rank2:m6lr", "rank2:m6rl"] {
        let bp = Blueprint::builtin(name).unwrap();
        // the ball of radius m is the whole group
        assert!(compare(bp.system(), 6, 6) > 0, "{name}");
    }
}

#[test]
fn builtin_universal() {
    let bp = Blueprint::builtin("allempty:universal3").unwrap();
    assert_eq!(compare(bp.system(), 6, 8), 3 * (1..=6).map(|k| (1usize << (k - 1)) * k * (k + 1) / 2).sum::<usize>());
}

#[test]
fn radius_is_stable() {
    // widening the sampled ball does not change any verdict
    for name in ["a3.cb", "affine_a2.cb", "g2inf.cb"] {
        let bp = support::fixture(name);
        let a = compare(bp.system(), 4, 7);
        let b = compare(bp.system(), 4, 9);
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn open_interval_of_commuting_pair_is_empty() {
    let bp = Blueprint::builtin("rank2:m2").unwrap();
    let sys = bp.system();
    let g = &min_gal(sys, &cbforge::coxeter::alternating(0, 1, 2), 8).unwrap()[0];
    assert!(sys.open_interval(g, 0, 1).is_empty());
    let oracle = sys.interval_oracle(&g.roots()[0], &g.roots()[1], 2).unwrap();
    assert_eq!(oracle.len(), 2);
}
