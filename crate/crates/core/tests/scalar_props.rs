use meanbound_core::scalar::*;
use meanbound_core::{Branch, Depth, Family, ReverseForm, ScalarPair, Weight};
use proptest::prelude::*;

fn pos() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_map(|e| 10f64.powf(e))
}

fn unit() -> impl Strategy<Value = f64> {
    0.0f64..=1.0
}

fn branch() -> impl Strategy<Value = Branch> {
    prop_oneof![Just(Branch::I), Just(Branch::II)]
}

fn p(a: f64, b: f64) -> ScalarPair {
    ScalarPair::new(a, b).unwrap()
}
fn w(v: f64) -> Weight {
    Weight::new(v).unwrap()
}
fn d(n: u32) -> Depth {
    Depth::new(n).unwrap()
}

fn rel_close(x: f64, y: f64, scale: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * scale.max(f64::MIN_POSITIVE)
}

proptest! {
    #[test]
    fn main_reverse_mirror(a in pos(), b in pos(), v in -6.0f64..6.0, n in 1u32..8) {
        let x = theorem_main_reverse(p(a, b), w(v), d(n), Branch::II).unwrap();
        let y = theorem_main_reverse(p(b, a), w(1.0 - v), d(n), Branch::I).unwrap();
        let scale = x.lhs.abs() + x.rhs.abs();
        prop_assert!(rel_close(x.lhs, y.lhs, scale, 1e-13));
        prop_assert!(rel_close(x.rhs, y.rhs, scale, 1e-13));
    }

    #[test]
    fn sm_reverse_mirror(a in pos(), b in pos(), v in unit(), n in 1u32..8) {
        let x = lemma_sm_reverse(p(a, b), w(v), d(n), Branch::II).unwrap();
        let y = lemma_sm_reverse(p(b, a), w(1.0 - v), d(n), Branch::I).unwrap();
        let scale = x.lhs.abs() + x.rhs.abs();
        prop_assert!(rel_close(x.rhs, y.rhs, scale, 1e-13));
    }

    #[test]
    fn heinz_families_symmetric(a in pos(), b in pos(), v in -6.0f64..6.0, n in 2u32..7, br in branch()) {
        let other = if br == Branch::I { Branch::II } else { Branch::I };
        for f in [heinz_reverse_main, heinz_reverse_sc] {
            let x = f(p(a, b), w(v), d(n), br).unwrap();
            let swapped = f(p(b, a), w(v), d(n), br).unwrap();
            let mirrored = f(p(a, b), w(1.0 - v), d(n), other).unwrap();
            let scale = x.lhs.abs() + x.rhs.abs();
            prop_assert!(rel_close(x.rhs, swapped.rhs, scale, 1e-13));
            prop_assert!(rel_close(x.rhs, mirrored.rhs, scale, 1e-13));
            prop_assert_eq!(x.hypothesis_ok, mirrored.hypothesis_ok);
        }
    }

    #[test]
    fn restatement_is_bit_identical(a in pos(), b in pos(), v in unit()) {
        let x = zhao_wu_reverse(p(a, b), w(v), ReverseForm::Lemma).unwrap();
        let y = zhao_wu_reverse(p(a, b), w(v), ReverseForm::Proposition).unwrap();
        prop_assert_eq!(x.rhs.to_bits(), y.rhs.to_bits());
    }

    #[test]
    fn depth_one_reduces_to_corollary(a in pos(), b in pos(), v in -6.0f64..6.0) {
        // Branch i of the main bound at n = 1 is the corollary's branch ii and vice versa.
        for (main_br, cor_br) in [(Branch::I, Branch::II), (Branch::II, Branch::I)] {
            let x = theorem_main_reverse(p(a, b), w(v), d(1), main_br).unwrap();
            let y = corollary_one_term(p(a, b), w(v), cor_br).unwrap();
            prop_assert!(rel_close(x.rhs, y.rhs, x.rhs.abs(), 1e-15));
            prop_assert_eq!(x.hypothesis_ok, y.hypothesis_ok);
        }
    }

    #[test]
    fn equal_operands_close_every_gap(a in pos(), v in -6.0f64..6.0, n in 2u32..8, br in branch()) {
        for f in Family::ALL {
            let r = evaluate(f, p(a, a), w(v), d(n), br).unwrap();
            prop_assert!(r.gap.abs() <= r.tau_abs(), "{} {}", f, r.gap);
        }
    }

    #[test]
    fn hypothesis_implies_inequality(a in pos(), b in pos(), v in -10.0f64..10.0, n in 1u32..7, br in branch()) {
        for f in Family::ALL {
            if n < f.min_depth() {
                continue;
            }
            let r = evaluate(f, p(a, b), w(v), d(n), br).unwrap();
            prop_assert!(!r.violated(), "{} {:?} gap {}", f, br, r.gap);
        }
    }

    #[test]
    fn refinement_sum_nonnegative(a in pos(), b in pos(), v in unit(), n in 1u32..=10) {
        prop_assert!(refinement_sum_s(w(v), p(a, b), d(n)).unwrap() >= 0.0);
    }

    #[test]
    fn index_coherence(v in unit(), k in 1u32..20) {
        let x = sababheh_indices(w(v), k).unwrap();
        let y = sababheh_indices(w(v), k + 1).unwrap();
        prop_assert!(x.r == 2 * x.j || x.r == 2 * x.j + 1);
        prop_assert!(y.j == 2 * x.j || y.j == 2 * x.j + 1);
        prop_assert!((0.0..=0.5).contains(&x.s));
    }

    #[test]
    fn extended_sc_grows_with_depth_for_positive_v(a in pos(), b in pos(), v in 0.0f64..6.0, n in 1u32..10) {
        let x = theorem_extended_sc(p(a, b), w(v), d(n), Branch::I).unwrap();
        let y = theorem_extended_sc(p(a, b), w(v), d(n + 1), Branch::I).unwrap();
        prop_assert!(y.rhs >= x.rhs - 1e-15 * x.rhs.abs());
    }

    #[test]
    fn log_limit_remainder(a in 0.01f64..100.0, b in 0.01f64..100.0, n in 5u32..25) {
        let l = (b / a).ln();
        let delta = log_limit_gap(p(a, b), d(n));
        prop_assert!(delta <= l * l * 2f64.powi(1 - n as i32) + 1e-15 * l.abs());
    }

    #[test]
    fn log_inequalities(x in 1e-6f64..1e6, a in pos(), b in pos(), v in -10.0f64..10.0) {
        prop_assert!(fundamental_log_slack(x) >= 0.0);
        prop_assert!(limit_inequality_slack(p(a, b), w(v)) >= 0.0);
    }

    #[test]
    fn comparison_polynomials_nonnegative(x in 0.01f64..100.0, v in 0.75f64..=1.0) {
        let f = comparison_poly_f(x, w(v));
        let g = comparison_poly_g(x, w(v));
        prop_assert!(f >= -1e-12 * (1.0 + x.powi(5)));
        prop_assert!(g >= -1e-12 * (1.0 + x.powi(6)));
        prop_assert!(f >= comparison_poly_f(x, w(0.75)) - 1e-11 * (1.0 + x.powi(5)));
    }

    #[test]
    fn factorizations(x in 0.01f64..100.0) {
        let f = comparison_poly_f(x, w(0.75));
        let g = comparison_poly_g(x, w(0.75));
        prop_assert!((f - comparison_poly_f_factored(x)).abs() <= 1e-12 * (1.0 + x.powi(5)));
        prop_assert!((g - comparison_poly_g_factored(x)).abs() <= 1e-12 * (1.0 + x.powi(6)));
        prop_assert!(cubic_a2(x) <= 1e-12 * (1.0 + x.powi(3)));
    }

    #[test]
    fn gap_bounds_dominate_true_gap(a in pos(), b in pos(), v in unit(), n in 2u32..6) {
        let r = compare_gap_bounds(p(a, b), w(v), d(n)).unwrap();
        for e in r.entries.iter().filter(|e| e.hypothesis_ok) {
            prop_assert!(e.value >= r.true_gap - 1e-9 * (a + b), "{} {}", e.label, e.value);
        }
        for dom in &r.dominance {
            prop_assert!(dom.margin >= 0.0);
        }
    }
}
