//! Check suites run both by the topic tests and by the acceptance target.

use std::collections::HashSet;

use cbforge::blueprints::Blueprint;
use cbforge::coxeter::{alternating, CoxeterSystem, Word};
use cbforge::galleries::min_gal;
use cbforge::groupforge::{build_uw, GroupElem, PcPresentation};
use cbforge::identities::{verify, Rank2Context, CATALOG};
use cbforge::parabolics::{build_residue_group, tau_on_residue};
use cbforge::report::Limits;
use cbforge::roots::{HalfSpaceTable, Residue2, Root};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use super::fixture;
use super::oracle::{all_tables, relators, CosetTable};

/// One displayed `(u_sτ_s)³` computation: table positions of `(u_sτ_s)^k.u_start`
/// for `k = 1, 2, 3`, `None` where the value is left implicit.
pub struct Line {
    pub name: &'static str,
    pub builtins: &'static [&'static str],
    /// Table position of `α_s`: 1 or `m`.
    pub simple_at: usize,
    pub start: usize,
    pub orbit: [Option<&'static [usize]>; 3],
}

const G2: &[&str] = &["rank2:m6lr", "rank2:m6rl"];

pub const TAUSV: &[Line] = &[
    Line { name: "tau A1xA1 u2", builtins: &["rank2:m2"], simple_at: 1, start: 2, orbit: [Some(&[2]), Some(&[2]), Some(&[2])] },
    Line { name: "tau A2 epsilon", builtins: &["rank2:m3"], simple_at: 1, start: 3, orbit: [Some(&[2]), Some(&[2, 3]), Some(&[3])] },
    Line { name: "tau A2 delta", builtins: &["rank2:m3"], simple_at: 1, start: 2, orbit: [None, Some(&[3]), Some(&[2])] },
    Line { name: "tau B2 gamma", builtins: &["rank2:m4"], simple_at: 1, start: 3, orbit: [Some(&[3]), Some(&[3]), Some(&[3])] },
    Line { name: "tau B2 epsilon", builtins: &["rank2:m4"], simple_at: 1, start: 4, orbit: [Some(&[2]), Some(&[2, 3, 4]), Some(&[4])] },
    Line { name: "tau B2 delta", builtins: &["rank2:m4"], simple_at: 1, start: 2, orbit: [None, Some(&[4]), Some(&[2])] },
    Line { name: "tau G2 s=1 u4", builtins: G2, simple_at: 1, start: 4, orbit: [Some(&[4]), Some(&[4]), Some(&[4])] },
    Line { name: "tau G2 s=1 u6", builtins: G2, simple_at: 1, start: 6, orbit: [Some(&[2]), Some(&[2, 3, 4, 5, 6]), Some(&[6])] },
    Line { name: "tau G2 s=1 u2", builtins: G2, simple_at: 1, start: 2, orbit: [None, Some(&[6]), Some(&[2])] },
    Line { name: "tau G2 s=1 u5", builtins: G2, simple_at: 1, start: 5, orbit: [Some(&[2, 3]), Some(&[3, 4, 6]), Some(&[5])] },
    Line { name: "tau G2 s=1 u3", builtins: G2, simple_at: 1, start: 3, orbit: [Some(&[2, 4, 5]), None, Some(&[3])] },
    Line { name: "tau G2 s=6 u3", builtins: G2, simple_at: 6, start: 3, orbit: [Some(&[3]), Some(&[3]), Some(&[3])] },
    Line { name: "tau G2 s=6 u1", builtins: G2, simple_at: 6, start: 1, orbit: [Some(&[5]), Some(&[1, 2, 3, 4, 5]), Some(&[1])] },
    Line { name: "tau G2 s=6 u5", builtins: G2, simple_at: 6, start: 5, orbit: [None, Some(&[1]), Some(&[5])] },
    Line { name: "tau G2 s=6 u2", builtins: G2, simple_at: 6, start: 2, orbit: [Some(&[4]), Some(&[2, 4]), Some(&[2])] },
    Line { name: "tau G2 s=6 u4", builtins: G2, simple_at: 6, start: 4, orbit: [None, Some(&[2]), Some(&[4])] },
];

/// Residue audit, the displayed orbit and the catalog chain for one line.
pub fn check_tausv(name: &str) {
    let line = TAUSV.iter().find(|l| l.name == name).unwrap_or_else(|| panic!("no line {name}"));
    for &builtin in line.builtins {
        let bp = Blueprint::builtin(builtin).unwrap();
        let lead = bp.system().matrix().leading(0, 1);
        // table position 1 belongs to the leading generator
        let s = if line.simple_at == 1 { lead } else { 1 - lead };
        let rg = build_residue_group(&bp, &Residue2 { base: Word::empty(), pair: (0, 1) }, s).unwrap();
        assert_eq!(rg.frame_position(0), line.simple_at);
        let audit = tau_on_residue(&bp, &rg, &Limits::default()).unwrap();
        assert!(audit.passed(), "{builtin}: residue audit failed");

        let x = rg.from_frame(&[line.start]).unwrap();
        let mut y = x;
        for (k, want) in line.orbit.iter().enumerate() {
            y = rg.us_tau(y).unwrap();
            if let Some(positions) = want {
                assert_eq!(y, rg.from_frame(positions).unwrap(), "{builtin} {name}: step {}", k + 1);
            }
        }
        assert_eq!(y, x, "{builtin} {name}: cube");
        assert_eq!(rg.tau(rg.tau(x).unwrap()).unwrap(), x, "{builtin} {name}: involution");

        let ctx = Rank2Context::new(&bp, 0, 1).unwrap();
        let identity = CATALOG.iter().find(|i| i.name == name).unwrap_or_else(|| panic!("{name} not in catalog"));
        let out = verify(&ctx, identity).unwrap();
        assert!(out.holds(), "{builtin} {name}: chain breaks at term {:?}", out.first_break());
    }
}

/// Cone intervals against the half-space table on every pair of every gallery
/// of every `w` with `ℓ(w) ≤ len`; returns the number of pairs.
pub fn compare_intervals(sys: &CoxeterSystem, len: usize, radius: usize) -> usize {
    let table = HalfSpaceTable::new(sys, radius).unwrap();
    let mut pairs = 0;
    for w in sys.ball(len).unwrap() {
        for g in min_gal(sys, &w, 1024).unwrap() {
            let roots = g.roots();
            for j in 0..g.len() {
                for i in 0..=j {
                    let cone: HashSet<Root> = sys.interval(&g, i, j).into_iter().map(|k| roots[k].clone()).collect();
                    let oracle: HashSet<Root> = table.interval(&roots[i], &roots[j]).into_iter().collect();
                    assert_eq!(cone, oracle, "w={w} gallery={} ({}, {})", g.word(), i + 1, j + 1);
                    pairs += 1;
                }
            }
        }
    }
    pairs
}

/// `U_G` read off the blueprint without any consistency check.
pub fn raw_presentation(bp: &Blueprint, g: &cbforge::galleries::Gallery) -> PcPresentation {
    let k = g.len();
    let mut rel = vec![vec![Vec::new(); k]; k];
    for j in 0..k {
        for i in 0..j {
            rel[i][j] = bp.query(g, i, j).unwrap();
        }
    }
    PcPresentation::new(k, rel).unwrap()
}

/// The library verdict matches the enumerated order.
pub fn verdict_agrees(p: &PcPresentation) -> bool {
    let order = super::presented_order(p);
    assert!(order <= 1 << p.generators(), "collection bounds the order");
    p.is_consistent() == (order == 1 << p.generators())
}

pub const CASES: u32 = 10_000;

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() })
}

fn apply(perms: &[Vec<usize>], word: &[usize]) -> usize {
    // image of the trivial coset, which identifies the element in the regular action
    word.iter().fold(0, |c, &g| perms[g][c])
}

/// Presentations exercised by the collection suite.
pub fn presentations() -> Vec<(String, PcPresentation)> {
    let mut out = Vec::new();
    for name in ["rank2:m3", "rank2:m4", "rank2:m6lr", "rank2:m6rl"] {
        let bp = Blueprint::builtin(name).unwrap();
        let m = bp.system().matrix().order(0, 1).unwrap() as usize;
        let (u, _) = build_uw(&bp, &alternating(0, 1, m), &Limits::default()).unwrap();
        out.push((name.to_string(), u.presentation().clone()));
    }
    let a3 = fixture("a3.cb");
    let (u, _) = build_uw(&a3, &Word(vec![0, 1, 0, 2, 1, 0]), &Limits::default()).unwrap();
    out.push(("a3 longest".into(), u.presentation().clone()));
    for (i, p) in all_tables(4).into_iter().filter(|p| p.is_consistent()).enumerate() {
        out.push((format!("table {i}"), p));
    }
    out
}

/// Determinism, idempotence and agreement with the regular representation
/// on random words.
pub fn collection_suite(name: &str, p: &PcPresentation) {
    let k = p.generators();
    let perms = CosetTable::enumerate(k, &relators(p), 1 << 12);
    let words = prop::collection::vec(0..k, 0..48);
    runner()
        .run(&words, |w| {
            let x = p.collect(&w).unwrap();
            prop_assert_eq!(x, p.collect(&w).unwrap());
            prop_assert_eq!(p.collect(&x.support()).unwrap(), x);
            prop_assert_eq!(apply(&perms, &x.support()), apply(&perms, &w));
            let (a, b) = w.split_at(w.len() / 2);
            let prod = p.mul(p.collect(a).unwrap(), p.collect(b).unwrap()).unwrap();
            prop_assert_eq!(prod, x);
            prop_assert_eq!(p.mul(x, p.inv(x).unwrap()).unwrap(), GroupElem(0));
            Ok(())
        })
        .unwrap_or_else(|e| panic!("{name}: {e}"));
}

/// Replace the first braid `sts⋯` at or after `at` by `tst⋯`, or insert `ss`.
fn rewrite(sys: &CoxeterSystem, w: &mut Vec<usize>, at: usize, s: usize, insert: bool) {
    let n = sys.rank();
    let s = s % n;
    if insert || w.is_empty() {
        let at = at % (w.len() + 1);
        w.splice(at..at, [s, s]);
        return;
    }
    for shift in 0..w.len() {
        let i = (at + shift) % w.len();
        let a = w[i];
        for t in (0..n).filter(|&t| t != a) {
            let Some(m) = sys.matrix().order(a, t) else { continue };
            let m = m as usize;
            if i + m <= w.len() && w[i..i + m] == alternating(a, t, m).0[..] {
                w.splice(i..i + m, alternating(t, a, m).0);
                return;
            }
        }
    }
}

/// Element of the dihedral group of order `2m` as `ρ^r σ^f`, with
/// `s_0 = σ` and `s_1 = ρσ`.
pub fn dihedral(m: usize, w: &[usize]) -> (usize, bool) {
    w.iter().fold((0, false), |(r, f), &g| if f { ((r + m - g) % m, false) } else { ((r + g) % m, true) })
}

fn free_reduce(w: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for &g in w {
        if out.last() == Some(&g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

/// Random words, randomly braid-rewritten, share a normal form.
pub fn normal_form_suite(name: &str, bp: &Blueprint) {
    let sys = bp.system();
    let n = sys.rank();
    let moves = prop::collection::vec((any::<usize>(), any::<usize>(), prop::bool::weighted(0.3)), 0..8);
    let strategy = (prop::collection::vec(0..n, 0..16), moves);
    runner()
        .run(&strategy, |(w, moves)| {
            let mut v = w.clone();
            for (at, s, insert) in moves {
                rewrite(sys, &mut v, at, s, insert);
            }
            let nf = sys.normal_form(&Word(w.clone()));
            prop_assert_eq!(&sys.normal_form(&Word(v)), &nf);
            prop_assert_eq!(&sys.normal_form(&nf), &nf);
            prop_assert_eq!(sys.length(&nf), nf.len());
            if let (2, Some(m)) = (n, sys.matrix().order(0, 1)) {
                prop_assert_eq!(dihedral(m as usize, &nf.0), dihedral(m as usize, &w));
            }
            if name.starts_with("allempty:universal") {
                prop_assert_eq!(&nf.0, &free_reduce(&w));
            }
            Ok(())
        })
        .unwrap_or_else(|e| panic!("{name}: {e}"));
}

/// Blueprints for the normal form suite.
pub fn coxeter_systems() -> Vec<(String, Blueprint)> {
    let mut out: Vec<(String, Blueprint)> =
        Blueprint::builtin_names().into_iter().map(|n| (n.to_string(), Blueprint::builtin(n).unwrap())).collect();
    for f in ["affine_a2.cb", "a3.cb", "g2inf.cb"] {
        out.push((f.to_string(), fixture(f)));
    }
    out
}

/// For `ℓ(sw) = ℓ(w) ± 1 = ℓ(wt)`: `ℓ(swt) = ℓ(w) ± 2` or `swt = w`.
/// Returns the number of triples the hypothesis applies to.
pub fn condition_f(sys: &CoxeterSystem, r: usize) -> usize {
    let mut cases = 0;
    for w in sys.ball(r).unwrap() {
        let lw = w.len() as isize;
        for s in 0..sys.rank() {
            for t in 0..sys.rank() {
                let sw = Word([s].into_iter().chain(w.0.iter().copied()).collect());
                let wt = Word(w.0.iter().copied().chain([t]).collect());
                let swt = Word([s].into_iter().chain(w.0.iter().copied()).chain([t]).collect());
                for eps in [1isize, -1] {
                    if sys.length(&sw) as isize == lw + eps && sys.length(&wt) as isize == lw + eps {
                        let ok = sys.length(&swt) as isize == lw + 2 * eps || sys.same_element(&swt, &w);
                        assert!(ok, "w={w} s={} t={} eps={eps}", s + 1, t + 1);
                        cases += 1;
                    }
                }
            }
        }
    }
    cases
}

/// Every `U_w` of an all-empty blueprint over `ball(r)` has class 1, except the trivial one.
pub fn all_empty_class_one(bp: &Blueprint, r: usize) -> usize {
    let words = bp.system().ball(r).unwrap();
    for w in &words {
        let (u, rep) = build_uw(bp, w, &Limits::default()).unwrap();
        assert!(rep.passed());
        let class = u.presentation().nilpotency_class(24).unwrap();
        assert_eq!(class, usize::from(!w.is_empty()), "w={w}");
    }
    words.len()
}
