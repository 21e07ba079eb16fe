use meanbound::rng::{stream_id, substream};
use meanbound::{random_spd, replay_scalar, run_operator_suite, run_scalar_suite, run_suites, SuiteConfig};

const SCALAR_OPS: [&str; 20] = [
    "young_lhs",
    "weighted_geometric",
    "heinz_scalar",
    "reverse_young_basic",
    "corollary_one_term",
    "theorem_main_reverse",
    "sababheh_indices",
    "refinement_sum_S",
    "lemma_sm_reverse",
    "kittaneh_manasrah",
    "zhao_wu_forward",
    "zhao_wu_reverse",
    "sababheh_choi_forward",
    "theorem_extended_sc",
    "heinz_reverse_main",
    "heinz_reverse_sc",
    "log_limit_gap",
    "comparison_poly_f",
    "comparison_poly_g",
    "compare_gap_bounds",
];
const OPERATOR_OPS: [&str; 4] = ["theorem_t6", "theorem_t66", "corollary_c3", "corollary_c33"];

fn cfg(pairs: &[(&str, &str)]) -> SuiteConfig {
    let mut c = SuiteConfig::default();
    for (k, v) in pairs {
        c.set(k, v).unwrap();
    }
    c
}

#[test]
fn all_families_touch_every_operation() {
    let r = run_suites(&cfg(&[("trials", "3"), ("dims", "1,2"), ("grid", "5")])).unwrap();
    for op in SCALAR_OPS.iter().chain(&OPERATOR_OPS) {
        assert!(r.coverage.get(*op).copied().unwrap_or(0) > 0, "{op} never evaluated");
    }
    assert_eq!(r.total_failures(), 0);
}

#[test]
fn main_reverse_suite_has_no_failures() {
    let r = run_scalar_suite(&cfg(&[
        ("seed", "42"),
        ("trials", "1000"),
        ("families", "theorem-main-reverse"),
        ("depths", "2..6"),
    ]))
    .unwrap();
    let s = r.summary("theorem-main-reverse").unwrap();
    assert_eq!(s.trials, 1000);
    assert_eq!(s.failures, 0);
    assert_eq!(s.passes + s.failures + s.skips, s.trials);
}

#[test]
fn operator_suite_has_no_failures() {
    let r = run_operator_suite(&cfg(&[
        ("seed", "7"),
        ("trials", "200"),
        ("dims", "2,4,8"),
        ("families", "theorem-t6"),
        ("depths", "2,3,4"),
    ]))
    .unwrap();
    assert_eq!(r.total_failures(), 0);
    let s = r.summary("theorem-t6").unwrap();
    assert_eq!(s.passes + s.skips, 200);
}

#[test]
fn single_trial_per_family() {
    let r = run_scalar_suite(&cfg(&[("trials", "1"), ("families", "scalar")])).unwrap();
    for s in &r.summaries {
        assert_eq!(s.passes + s.failures + s.skips, 1, "{}", s.family);
    }
}

#[test]
fn zero_trials_rejected() {
    let mut c = SuiteConfig::default();
    assert!(c.set("trials", "0").is_err() || c.validate().is_err());
}

#[test]
fn reports_are_deterministic() {
    let c = cfg(&[("seed", "11"), ("trials", "40"), ("dims", "1,3"), ("grid", "6"), ("record_all", "true")]);
    let x = run_suites(&c).unwrap().to_json_deterministic();
    let y = run_suites(&c).unwrap().to_json_deterministic();
    assert_eq!(x, y);
    let other = cfg(&[("seed", "12"), ("trials", "40"), ("dims", "1,3"), ("grid", "6"), ("record_all", "true")]);
    assert_ne!(x, run_suites(&other).unwrap().to_json_deterministic());
}

#[test]
fn recorded_trials_replay_exactly() {
    let c = cfg(&[("seed", "5"), ("trials", "30"), ("families", "scalar"), ("record_all", "true")]);
    let r = run_scalar_suite(&c).unwrap();
    let mut replayed = 0;
    for rec in r.results.iter().filter(|rec| rec.gap.is_some()) {
        let Ok(again) = replay_scalar(rec) else { continue };
        assert_eq!(again.gap.to_bits(), rec.gap.unwrap().to_bits(), "{} {:?}", rec.family, rec.trial);
        replayed += 1;
    }
    assert!(replayed > 100);
}

#[test]
fn random_spd_is_deterministic_and_conditioned() {
    let draw = || {
        let mut rng = substream(99, stream_id("test/spd"), 3);
        random_spd(6, 1e4, &mut rng).unwrap()
    };
    let (a, b) = (draw(), draw());
    assert_eq!(a.as_sym(), b.as_sym());
    let l = a.decomposition().eigenvalues();
    assert!(l[0] >= 0.99e-2 && l[l.len() - 1] <= 1.01e2);
}

#[test]
fn json_round_trips() {
    let r = run_suites(&cfg(&[("trials", "4"), ("dims", "2"), ("grid", "4")])).unwrap();
    let text = r.to_json();
    let back: meanbound::SuiteReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_json(), text);
}
