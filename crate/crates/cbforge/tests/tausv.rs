//! The `(u_sτ_s)³ = 1` computations on rank-2 residues, one test per displayed line.

mod support;

use support::check_tausv;

#[test]
fn a1xa1_u2() {
    check_tausv("tau A1xA1 u2");
}

#[test]
fn a2_epsilon() {
    check_tausv("tau A2 epsilon");
}

#[test]
fn a2_delta() {
    check_tausv("tau A2 delta");
}

#[test]
fn b2_gamma() {
    check_tausv("tau B2 gamma");
}

#[test]
fn b2_epsilon() {
    check_tausv("tau B2 epsilon");
}

#[test]
fn b2_delta() {
    check_tausv("tau B2 delta");
}

#[test]
fn g2_first_simple_u4() {
    check_tausv("tau G2 s=1 u4");
}

#[test]
fn g2_first_simple_u6() {
    check_tausv("tau G2 s=1 u6");
}

#[test]
fn g2_first_simple_u2() {
    check_tausv("tau G2 s=1 u2");
}

#[test]
fn g2_first_simple_u5() {
    check_tausv("tau G2 s=1 u5");
}

#[test]
fn g2_first_simple_u3() {
    check_tausv("tau G2 s=1 u3");
}

#[test]
fn g2_last_simple_u3() {
    check_tausv("tau G2 s=6 u3");
}

#[test]
fn g2_last_simple_u1() {
    check_tausv("tau G2 s=6 u1");
}

#[test]
fn g2_last_simple_u5() {
    check_tausv("tau G2 s=6 u5");
}

#[test]
fn g2_last_simple_u2() {
    check_tausv("tau G2 s=6 u2");
}

#[test]
fn g2_last_simple_u4() {
    check_tausv("tau G2 s=6 u4");
}

#[test]
fn every_line_has_a_test() {
    assert_eq!(support::TAUSV.len(), 16);
}
