//! Worked values for every scalar family, each derived by hand arithmetic.

use meanbound_core::scalar::*;
use meanbound_core::{Branch, Depth, ReverseForm, ScalarPair, Weight};

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn p(a: f64, b: f64) -> ScalarPair {
    ScalarPair::new(a, b).unwrap()
}
fn w(v: f64) -> Weight {
    Weight::new(v).unwrap()
}
fn d(n: u32) -> Depth {
    Depth::new(n).unwrap()
}

fn close(x: f64, y: f64, tol: f64) {
    assert!((x - y).abs() <= tol, "{x} vs {y}");
}

#[test]
fn means() {
    assert_eq!(young_lhs(p(1.0, 16.0), w(0.125)), 2.875);
    assert_eq!(young_lhs(p(5.0, 5.0), w(0.3)), 5.0);
    assert_eq!(young_lhs(p(1.0, 4.0), w(2.0)), 7.0);

    close(weighted_geometric(p(1.0, 16.0), w(0.125)), SQRT2, 1e-15);
    assert_eq!(weighted_geometric(p(7.0, 7.0), w(-3.2)), 7.0);
    close(weighted_geometric(p(2.0, 8.0), w(2.0)), 32.0, 1e-13);

    close(heinz_scalar(p(1.0, 16.0), w(0.125)), (SQRT2 + 16f64.powf(0.875)) / 2.0, 1e-14);
    close(heinz_scalar(p(1.0, 16.0), w(0.125)), 6.363961031, 1e-9);
    close(heinz_scalar(p(9.0, 9.0), w(0.77)), 9.0, 1e-14);
    close(heinz_scalar(p(1.0, 16.0), w(0.5)), 4.0, 1e-14);
}

#[test]
fn reverse_young_basic_examples() {
    let r = reverse_young_basic(p(1.0, 4.0), w(2.0)).unwrap();
    close(r.gap, 9.0, 1e-13);
    assert!(r.hypothesis_ok && r.holds);
    let r = reverse_young_basic(p(3.0, 3.0), w(5.0)).unwrap();
    close(r.gap, 0.0, 1e-13);
    let r = reverse_young_basic(p(1.0, 16.0), w(0.125)).unwrap();
    assert!(!r.hypothesis_ok);
    close(r.gap, SQRT2 - 2.875, 1e-14);
    // Endpoints are outside the hypothesis but still equalities.
    let r = reverse_young_basic(p(2.0, 9.0), w(1.0)).unwrap();
    assert!(!r.hypothesis_ok && r.gap.abs() < 1e-14);
}

#[test]
fn corollary_examples() {
    let r = corollary_one_term(p(4.0, 1.0), w(2.0), Branch::I).unwrap();
    close(r.lhs, -2.0, 1e-15);
    close(r.rhs, 2.25, 1e-14);
    close(r.gap, 4.25, 1e-14);
    assert!(r.hypothesis_ok && r.holds);
    let r = corollary_one_term(p(6.0, 6.0), w(0.9), Branch::I).unwrap();
    close(r.gap, 0.0, 1e-14);
    let r = corollary_one_term(p(1.0, 16.0), w(0.125), Branch::II).unwrap();
    close(r.rhs, SQRT2 + 7.875, 1e-14);
    assert!(r.hypothesis_ok && r.holds);
}

#[test]
fn main_reverse_examples() {
    let r = theorem_main_reverse(p(1.0, 16.0), w(0.125), d(2), Branch::I).unwrap();
    close(r.rhs, SQRT2 + 7.875 - 3.0, 1e-14);
    close(r.gap, 3.4142136, 1e-7);
    assert_eq!(r.lhs, 2.875);
    assert!(r.hypothesis_ok && r.holds);

    let r = theorem_main_reverse(p(2.0, 2.0), w(0.9), d(5), Branch::I).unwrap();
    assert_eq!((r.lhs, r.rhs, r.gap), (2.0, 2.0, 0.0));

    let r = theorem_main_reverse(p(16.0, 1.0), w(0.875), d(2), Branch::II).unwrap();
    close(r.gap, 3.4142136, 1e-7);
}

#[test]
fn v_half_is_excluded_but_evaluated() {
    let r = theorem_main_reverse(p(1.0, 16.0), w(0.5), d(3), Branch::I).unwrap();
    assert!(!r.hypothesis_ok);
    close(r.gap, 0.0, 1e-13);
}

#[test]
fn index_examples() {
    let i = sababheh_indices(w(0.25), 2).unwrap();
    assert_eq!((i.j, i.r, i.s), (0, 1, 0.5));
    let i = sababheh_indices(w(0.0), 7).unwrap();
    assert_eq!((i.j, i.r, i.s), (0, 0, 0.0));
    let i = sababheh_indices(w(0.25), 1).unwrap();
    assert_eq!((i.j, i.r, i.s), (0, 0, 0.25));
}

#[test]
fn refinement_sum_examples() {
    // 1 + 0.5 (256^(1/4) - 64^(1/4))^2
    let expect = 1.0 + 0.5 * (4.0 - 64f64.powf(0.25)).powi(2);
    close(refinement_sum_s(w(0.25), p(4.0, 16.0), d(2)).unwrap(), expect, 1e-14);
    close(expect, 1.6862915, 1e-7);
    assert_eq!(refinement_sum_s(w(0.0), p(3.0, 11.0), d(5)).unwrap(), 0.0);
    close(refinement_sum_s(w(0.5), p(4.0, 16.0), d(1)).unwrap(), 2.0, 1e-14);
}

#[test]
fn sm_reverse_examples() {
    let r = lemma_sm_reverse(p(1.0, 16.0), w(0.125), d(2), Branch::I).unwrap();
    close(r.rhs, 7.6029221, 1e-7);
    assert!(r.hypothesis_ok && r.holds);
    let r = lemma_sm_reverse(p(10.0, 10.0), w(0.3), d(3), Branch::I).unwrap();
    close(r.gap, 0.0, 1e-13);
    let r = lemma_sm_reverse(p(16.0, 1.0), w(0.875), d(2), Branch::II).unwrap();
    close(r.gap, 4.7279221, 1e-7);
}

#[test]
fn forward_refinement_examples() {
    let r = kittaneh_manasrah(p(1.0, 16.0), w(0.125)).unwrap();
    close(r.rhs, SQRT2 + 1.125, 1e-14);
    close(r.gap, 0.3357864, 1e-7);
    assert!(r.holds);
    close(kittaneh_manasrah(p(3.0, 3.0), w(0.4)).unwrap().gap, 0.0, 1e-14);
    let r = kittaneh_manasrah(p(1.0, 16.0), w(0.5)).unwrap();
    close(r.rhs, 8.5, 1e-14);
    close(r.gap, 0.0, 1e-14);

    let r = zhao_wu_forward(p(1.0, 16.0), w(0.125)).unwrap();
    close(r.rhs, SQRT2 + 1.375, 1e-14);
    close(r.gap, 0.0857864, 1e-7);
    close(zhao_wu_forward(p(2.0, 2.0), w(0.2)).unwrap().gap, 0.0, 1e-14);
    close(zhao_wu_forward(p(16.0, 1.0), w(0.875)).unwrap().gap, 0.0857864, 1e-7);

    let r = sababheh_choi_forward(p(1.0, 16.0), w(0.125), d(1)).unwrap();
    close(r.rhs, SQRT2 + 1.125, 1e-14);
    let r = sababheh_choi_forward(p(1.0, 16.0), w(0.125), d(2)).unwrap();
    close(r.rhs, SQRT2 + 1.375, 1e-14);
    close(sababheh_choi_forward(p(5.0, 5.0), w(0.7), d(4)).unwrap().gap, 0.0, 1e-14);
}

#[test]
fn zhao_wu_reverse_examples() {
    let l = zhao_wu_reverse(p(1.0, 16.0), w(0.125), ReverseForm::Lemma).unwrap();
    close(l.rhs, SQRT2 + 7.875 - 1.0, 1e-14);
    assert!(l.holds);
    let q = zhao_wu_reverse(p(1.0, 16.0), w(0.125), ReverseForm::Proposition).unwrap();
    assert_eq!(l.rhs, q.rhs);
    close(zhao_wu_reverse(p(4.0, 4.0), w(0.6), ReverseForm::Lemma).unwrap().gap, 0.0, 1e-14);
}

#[test]
fn extended_sc_examples() {
    let r = theorem_extended_sc(p(1.0, 4.0), w(2.0), d(1), Branch::I).unwrap();
    close(r.rhs, 18.0, 1e-13);
    close(r.gap, 11.0, 1e-13);
    let r = theorem_extended_sc(p(1.0, 4.0), w(2.0), d(2), Branch::I).unwrap();
    close(r.rhs, 16.0 + 2.0 * (1.0 + 2.0 * (1.0 - SQRT2).powi(2)), 1e-13);
    close(r.gap, 11.6862915, 1e-7);
    for br in [Branch::I, Branch::II] {
        close(theorem_extended_sc(p(8.0, 8.0), w(-1.5), d(3), br).unwrap().gap, 0.0, 1e-13);
    }
}

#[test]
fn heinz_examples() {
    let r = heinz_reverse_main(p(1.0, 16.0), w(0.125), d(2), Branch::II).unwrap();
    close(r.rhs, 9.3639610, 1e-7);
    assert_eq!(r.lhs, 8.5);
    assert!(r.holds);
    let m = heinz_reverse_main(p(1.0, 16.0), w(0.875), d(2), Branch::I).unwrap();
    close(m.rhs, r.rhs, 1e-13);
    close(heinz_reverse_main(p(3.0, 3.0), w(2.0), d(3), Branch::I).unwrap().gap, 0.0, 1e-13);

    let r = heinz_reverse_sc(p(1.0, 4.0), w(2.0), d(1), Branch::I).unwrap();
    close(r.rhs, 10.125, 1e-13);
    assert_eq!(r.lhs, 2.5);
    let r = heinz_reverse_sc(p(1.0, 4.0), w(-1.0), d(1), Branch::II).unwrap();
    close(r.rhs, 10.125, 1e-13);
    close(heinz_reverse_sc(p(6.0, 6.0), w(4.0), d(2), Branch::I).unwrap().gap, 0.0, 1e-13);
}

#[test]
fn heinz_main_needs_depth_two() {
    assert!(heinz_reverse_main(p(1.0, 2.0), w(2.0), d(1), Branch::I).is_err());
}

#[test]
fn limit_examples() {
    let e2 = std::f64::consts::E.powi(2);
    assert!(log_limit_gap(p(1.0, e2), d(20)) <= 1e-5);
    assert_eq!(log_limit_gap(p(3.0, 3.0), d(7)), 0.0);
    assert_eq!(limit_inequality_slack(p(1.0, 16.0), w(0.5)), 0.0);
}
