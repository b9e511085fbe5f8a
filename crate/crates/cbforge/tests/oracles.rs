//! Consistency verdicts and lower central series against coset enumeration.

mod support;

use cbforge::blueprints::Blueprint;
use cbforge::coxeter::{alternating, Word};
use cbforge::galleries::{min_gal, Gallery};
use cbforge::groupforge::{build_uw, PcPresentation};
use cbforge::report::Limits;
use support::{all_tables, fixture, lcs_orders, presented_order, raw_presentation, relators, verdict_agrees, CosetTable};

const FIXTURES: [&str; 12] = [
    "a2.cb",
    "g2.cb",
    "g2_cb1_broken.cb",
    "g2_mutated.cb",
    "b2_short.cb",
    "universal3_empty.cb",
    "ra.cb",
    "a2inf.cb",
    "b2inf.cb",
    "g2inf.cb",
    "affine_a2.cb",
    "a3.cb",
];

fn raw(bp: &Blueprint, g: &Gallery) -> PcPresentation {
    raw_presentation(bp, g)
}

fn agree(p: &PcPresentation) -> bool {
    verdict_agrees(p)
}

#[test]
fn enumeration_sanity() {
    assert_eq!(presented_order(&PcPresentation::abelian(0).unwrap()), 1);
    assert_eq!(presented_order(&PcPresentation::abelian(3).unwrap()), 8);
    // dihedral of order 8 on the three involutions s, st s, t
    let d8 = PcPresentation::new(3, vec![vec![vec![], vec![], vec![1]]]).unwrap();
    assert_eq!(presented_order(&d8), 8);
    // x^2 = y^2 = 1, xy = yx, and xy = 1 as well
    let perms = CosetTable::enumerate(2, &[vec![0, 0], vec![1, 1], vec![0, 1]], 100);
    assert_eq!(perms[0].len(), 2);
}

#[test]
fn every_small_table() {
    let mut seen = [0usize; 2];
    for k in 0..=4 {
        for p in all_tables(k) {
            assert!(agree(&p), "verdict disagrees on {:?}", relators(&p));
            seen[usize::from(p.is_consistent())] += 1;
        }
    }
    assert_eq!(seen[0] + seen[1], 1 + 1 + 1 + 2 + 16);
    assert!(seen[0] > 0, "no inconsistent table exercised");
}

#[test]
fn fixture_presentations() {
    let mut count = 0;
    let mut inconsistent = 0;
    for name in FIXTURES {
        let bp = fixture(name);
        let sys = bp.system();
        for w in sys.ball(4).unwrap() {
            for g in min_gal(sys, &w, 64).unwrap() {
                let p = raw(&bp, &g);
                assert!(agree(&p), "{name} gallery {}", g.word());
                count += 1;
                inconsistent += usize::from(!p.is_consistent());
            }
        }
    }
    assert!(count > 100);
    // the corrupted fixtures break gallery agreement, not the presentations
    assert_eq!(inconsistent, 0);
}

#[test]
fn fixture_presentations_up_to_six() {
    let mut inconsistent = Vec::new();
    for name in FIXTURES {
        let bp = fixture(name);
        let sys = bp.system();
        for w in sys.ball(6).unwrap().into_iter().filter(|w| w.len() > 4) {
            for g in min_gal(sys, &w, 64).unwrap() {
                let p = raw(&bp, &g);
                assert!(agree(&p), "{name} gallery {}", g.word());
                if !p.is_consistent() {
                    inconsistent.push(format!("{name} {}", g.word()));
                }
            }
        }
    }
    assert_eq!(inconsistent, ["g2_cb1_broken.cb 1.2.1.2.1.2", "g2_mutated.cb 2.1.2.1.2.1"]);
}

#[test]
fn lower_central_series_rank_two() {
    let cases = [("rank2:m2", vec![4, 1]), ("rank2:m3", vec![8, 2, 1]), ("rank2:m4", vec![16, 2, 1])];
    let cases = cases.into_iter().chain([("rank2:m6lr", vec![64, 8, 2, 1]), ("rank2:m6rl", vec![64, 8, 2, 1])]);
    for (name, want) in cases {
        let bp = Blueprint::builtin(name).unwrap();
        let m = bp.system().matrix().order(0, 1).unwrap() as usize;
        for first in [0, 1] {
            let w = alternating(first, 1 - first, m);
            let (u, rep) = build_uw(&bp, &w, &Limits::default()).unwrap();
            assert!(rep.passed());
            let perms = CosetTable::enumerate(m, &relators(u.presentation()), 1 << 12);
            assert_eq!(lcs_orders(&perms), want, "{name} oracle");
            let ours: Vec<usize> =
                u.presentation().lower_central_series(24).unwrap().iter().map(|s| s.len()).collect();
            assert_eq!(ours, want, "{name} library");
        }
    }
}

#[test]
fn lower_central_series_rank_three() {
    let bp = fixture("a3.cb");
    for w in bp.system().ball(5).unwrap() {
        let (u, _) = build_uw(&bp, &w, &Limits::default()).unwrap();
        let perms = CosetTable::enumerate(u.order_bits(), &relators(u.presentation()), 1 << 12);
        let ours: Vec<usize> = u.presentation().lower_central_series(24).unwrap().iter().map(|s| s.len()).collect();
        if w == Word::empty() {
            assert_eq!(ours, vec![1]);
            continue;
        }
        assert_eq!(lcs_orders(&perms), ours, "w={w}");
    }
}
