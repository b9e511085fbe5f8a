//! Randomized and exhaustive structural properties.

mod support;

use cbforge::blueprints::Blueprint;
use cbforge::coxeter::alternating;
use support::{all_empty_class_one, collection_suite, condition_f, coxeter_systems, dihedral, fixture, normal_form_suite, presentations};

#[test]
fn collection_is_deterministic_and_idempotent() {
    let ps = presentations();
    assert!(ps.len() > 5);
    for (name, p) in &ps {
        collection_suite(name, p);
    }
}

#[test]
fn normal_form_is_canonical() {
    for (name, bp) in coxeter_systems() {
        normal_form_suite(&name, &bp);
    }
}

#[test]
fn dihedral_oracle_sanity() {
    // s_0 s_1 is a rotation of order m
    for m in [2, 3, 4, 6] {
        let w: Vec<usize> = alternating(0, 1, 2 * m).0;
        assert_eq!(dihedral(m, &w), (0, false));
        assert_ne!(dihedral(m, &w[..2]), (0, false));
    }
}

#[test]
fn condition_f_on_builtin_types() {
    for name in Blueprint::builtin_names() {
        let bp = Blueprint::builtin(name).unwrap();
        assert!(condition_f(bp.system(), 5) > 0, "{name}");
    }
}

#[test]
fn all_empty_universal_is_abelian() {
    assert_eq!(all_empty_class_one(&Blueprint::builtin("allempty:universal3").unwrap(), 6), 190);
    assert_eq!(all_empty_class_one(&fixture("universal3_empty.cb"), 6), 190);
}
