//! Seeded suites over every scalar and operator family.
//!
//! Each family gets `trials` independent trials; trial `t` draws from its own
//! substream keyed by `(seed, family, t)` and cycles through the family's
//! (branch, depth[, dim]) cases. Results are collected in trial order, so
//! parallel execution does not change the report.

use std::collections::BTreeMap;
use std::time::Instant;

use meanbound_core::operator::evaluate_operator;
use meanbound_core::scalar::{
    evaluate, fundamental_log_slack, heinz_scalar, limit_inequality_slack, log_limit_gap, refinement_sum_s,
    sababheh_indices, weighted_geometric, young_lhs, Window,
};
use meanbound_core::{Branch, Depth, Family, OperatorFamily, ScalarPair, SpdMatrix, Weight};
use rayon::prelude::*;

use crate::claims;
use crate::config::{AuxCheck, Selection, SuiteConfig};
use crate::error::{Error, Result};
use crate::report::{FamilySummary, Inputs, SuiteReport, TrialRecord, TOOL_VERSION};
use crate::rng::{log_uniform, stream_id, substream, uniform, Rng};
use crate::sampling::{random_spd, Region};

/// Records of one family, in trial order, plus the library operations each
/// trial exercised.
pub(crate) struct FamilyRun {
    pub suite: &'static str,
    pub family: String,
    pub records: Vec<TrialRecord>,
    pub ops: &'static [&'static str],
}

/// Library operation names, used as coverage keys.
fn scalar_ops(f: Family) -> &'static [&'static str] {
    match f {
        Family::ReverseYoungBasic => &["reverse_young_basic"],
        Family::CorollaryOneTerm => &["corollary_one_term"],
        Family::TheoremMainReverse => &["theorem_main_reverse"],
        Family::LemmaSmReverse => &["lemma_sm_reverse"],
        Family::KittanehManasrah => &["kittaneh_manasrah"],
        Family::ZhaoWuForward => &["zhao_wu_forward"],
        Family::ZhaoWuReverse => &["zhao_wu_reverse"],
        Family::SababhehChoiForward => &["sababheh_choi_forward"],
        Family::TheoremExtendedSc => &["theorem_extended_sc"],
        Family::HeinzReverseMain => &["heinz_reverse_main"],
        Family::HeinzReverseSc => &["heinz_reverse_sc"],
    }
}

fn operator_ops(f: OperatorFamily) -> &'static [&'static str] {
    match f {
        OperatorFamily::T6 => &["theorem_t6"],
        OperatorFamily::T66 => &["theorem_t66"],
        OperatorFamily::C3 => &["corollary_c3"],
        OperatorFamily::C33 => &["corollary_c33"],
    }
}

fn aux_ops(c: AuxCheck) -> &'static [&'static str] {
    match c {
        AuxCheck::MeanSandwich => &["young_lhs", "weighted_geometric", "heinz_scalar"],
        AuxCheck::RefinementIndices => &["sababheh_indices", "refinement_sum_S"],
        AuxCheck::LogLimit => &["log_limit_gap"],
    }
}

/// One (branch, depth) combination of a scalar family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarCase {
    pub branch: Branch,
    pub label: Option<&'static str>,
    pub n: u32,
}

pub fn scalar_cases(f: Family, depths: &[u32]) -> Result<Vec<ScalarCase>> {
    let branches: Vec<(Branch, Option<&'static str>)> = match f {
        Family::ZhaoWuReverse => vec![(Branch::I, Some("lemma")), (Branch::II, Some("proposition"))],
        _ if f.branches().is_empty() => vec![(Branch::I, None)],
        _ => f.branches().iter().map(|b| (*b, Some(b.name()))).collect(),
    };
    let ns: Vec<u32> = if f.uses_depth() {
        depths.iter().copied().filter(|&n| n >= f.min_depth()).collect()
    } else {
        vec![1]
    };
    if ns.is_empty() {
        return Err(Error::Config(format!(
            "{} needs a depth >= {}, none configured",
            f.name(),
            f.min_depth()
        )));
    }
    Ok(ns
        .iter()
        .flat_map(|&n| branches.iter().map(move |&(branch, label)| ScalarCase { branch, label, n }))
        .collect())
}

/// Draws `v` from the admissible region, or uniformly from `v_range` when
/// the region is empty (such trials come out hypothesis-skipped).
fn draw_v(window: Window, cfg: &SuiteConfig, rng: &mut Rng) -> f64 {
    let region = Region::new(window, cfg.v_range, cfg.margin);
    match region.sample(rng) {
        Some(v) => v,
        None => uniform(rng, cfg.v_range.0, cfg.v_range.1),
    }
}

fn error_record(suite: &str, family: &str, branch: Option<String>, trial: u64, inputs: Inputs, e: &Error) -> TrialRecord {
    TrialRecord {
        suite: suite.into(),
        family: family.into(),
        branch,
        trial: Some(trial),
        inputs,
        lhs: None,
        rhs: None,
        gap: None,
        hypothesis_ok: true,
        holds: false,
        degenerate: None,
        cause: Some(e.to_string()),
    }
}

fn scalar_trial(f: Family, cases: &[ScalarCase], cfg: &SuiteConfig, t: u64) -> TrialRecord {
    let mut rng = substream(cfg.seed, stream_id(&format!("scalar/{}", f.name())), t);
    let case = cases[(t % cases.len() as u64) as usize];
    let (lo, hi) = cfg.scalar_range;
    let a = log_uniform(&mut rng, lo, hi);
    let b = log_uniform(&mut rng, lo, hi);
    let v = draw_v(f.window(Some(case.branch), case.n), cfg, &mut rng);
    let branch = case.label.map(String::from);
    let n = f.uses_depth().then_some(case.n);
    let inputs = Inputs {
        a: Some(a),
        b: Some(b),
        v: Some(v),
        n,
        ..Inputs::default()
    };
    match eval_scalar(f, a, b, v, case.n, case.branch) {
        Ok(r) => {
            let mut rec = TrialRecord::from_bound(&r, branch, Some(t));
            rec.holds = r.gap >= -cfg.tau_rel * (r.lhs.abs() + r.rhs.abs());
            rec
        }
        Err(e) => error_record("scalar", f.name(), branch, t, inputs, &e),
    }
}

fn eval_scalar(f: Family, a: f64, b: f64, v: f64, n: u32, branch: Branch) -> Result<meanbound_core::BoundReport> {
    let p = ScalarPair::new(a, b)?;
    let w = Weight::new(v)?;
    Ok(evaluate(f, p, w, Depth::new(n)?, branch)?)
}

/// Re-evaluates a recorded scalar trial from its inputs alone.
pub fn replay_scalar(rec: &TrialRecord) -> Result<meanbound_core::BoundReport> {
    let f = Family::parse(&rec.family).ok_or_else(|| Error::Config(format!("unknown family {:?}", rec.family)))?;
    let branch = match rec.branch.as_deref() {
        None | Some("lemma") => Branch::I,
        Some("proposition") => Branch::II,
        Some(b) => Branch::parse(b).ok_or_else(|| Error::Config(format!("unknown branch {b:?}")))?,
    };
    let missing = || Error::Config("record lacks a, b or v".into());
    let i = &rec.inputs;
    eval_scalar(
        f,
        i.a.ok_or_else(missing)?,
        i.b.ok_or_else(missing)?,
        i.v.ok_or_else(missing)?,
        i.n.unwrap_or(1),
        branch,
    )
}

fn run_scalar_family(f: Family, cfg: &SuiteConfig) -> Result<FamilyRun> {
    let cases = scalar_cases(f, &cfg.depths)?;
    let records = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| scalar_trial(f, &cases, cfg, t))
        .collect();
    Ok(FamilyRun {
        suite: "scalar",
        family: f.name().into(),
        records,
        ops: scalar_ops(f),
    })
}

fn aux_trial(c: AuxCheck, cfg: &SuiteConfig, t: u64) -> TrialRecord {
    let mut rng = substream(cfg.seed, stream_id(&format!("scalar/{}", c.name())), t);
    let (lo, hi) = cfg.scalar_range;
    let unit = Window::inside(0.0, 1.0);
    let mut rec = TrialRecord {
        suite: "scalar".into(),
        family: c.name().into(),
        branch: None,
        trial: Some(t),
        inputs: Inputs::default(),
        lhs: None,
        rhs: None,
        gap: None,
        hypothesis_ok: true,
        holds: true,
        degenerate: None,
        cause: None,
    };
    let res: Result<()> = (|| {
        match c {
            AuxCheck::MeanSandwich => {
                let a = log_uniform(&mut rng, lo, hi);
                let b = log_uniform(&mut rng, lo, hi);
                let v = Region::new(unit, (0.0, 1.0), 0.0).sample(&mut rng).unwrap_or(0.5);
                let p = ScalarPair::new(a, b)?;
                let w = Weight::new(v)?;
                let g = weighted_geometric(p, w);
                let h = heinz_scalar(p, w);
                // (lhs, rhs) pairs of lhs <= rhs statements.
                let checks = [(g, young_lhs(p, w)), (p.sqrt_prod(), h), (h, 0.5 * (a + b))];
                let (l, r) = checks
                    .into_iter()
                    .min_by(|x, y| (x.1 - x.0).total_cmp(&(y.1 - y.0)))
                    .expect("nonempty");
                rec.inputs = Inputs { a: Some(a), b: Some(b), v: Some(v), ..Inputs::default() };
                rec.lhs = Some(l);
                rec.rhs = Some(r);
                rec.gap = Some(r - l);
                rec.holds = r - l >= -cfg.tau_rel * (a + b);
            }
            AuxCheck::RefinementIndices => {
                let a = log_uniform(&mut rng, lo, hi);
                let b = log_uniform(&mut rng, lo, hi);
                let v = uniform(&mut rng, 0.0, 1.0);
                let n = cfg.depths[(t % cfg.depths.len() as u64) as usize].min(10);
                let w = Weight::new(v)?;
                let p = ScalarPair::new(a, b)?;
                let mut coherent = true;
                let mut prev = sababheh_indices(w, 1)?;
                for k in 1..=20 {
                    let cur = sababheh_indices(w, k)?;
                    coherent &= cur.r == 2 * cur.j || cur.r == 2 * cur.j + 1;
                    coherent &= (0.0..=0.5).contains(&cur.s);
                    if k > 1 {
                        coherent &= cur.j == 2 * prev.j || cur.j == 2 * prev.j + 1;
                    }
                    prev = cur;
                }
                let s = refinement_sum_s(w, p, Depth::new(n)?)?;
                rec.inputs = Inputs { a: Some(a), b: Some(b), v: Some(v), n: Some(n), ..Inputs::default() };
                rec.lhs = Some(0.0);
                rec.rhs = Some(s);
                rec.gap = Some(s);
                rec.holds = coherent && s >= -cfg.tau_rel * (a + b);
            }
            AuxCheck::LogLimit => {
                let a = 1.0;
                let b = log_uniform(&mut rng, 1e-2, 1e2);
                let n = 5 + (t % 16) as u32;
                let p = ScalarPair::new(a, b)?;
                let l = p.ln_ratio();
                let d = log_limit_gap(p, Depth::new(n)?);
                let d_next = log_limit_gap(p, Depth::new(n + 1)?);
                let noise = 1e-15 * l.abs();
                let bound = l * l * 2f64.powi(1 - n as i32);
                let v = uniform(&mut rng, cfg.v_range.0, cfg.v_range.1);
                let slack = fundamental_log_slack(b).min(limit_inequality_slack(p, Weight::new(v)?));
                rec.inputs = Inputs { a: Some(a), b: Some(b), v: Some(v), n: Some(n), ..Inputs::default() };
                rec.lhs = Some(d);
                rec.rhs = Some(bound);
                rec.gap = Some(bound - d);
                rec.holds = d <= bound + noise && 1.9 * d_next <= d + noise && slack >= 0.0;
            }
        }
        Ok(())
    })();
    if let Err(e) = res {
        let inputs = rec.inputs.clone();
        return error_record("scalar", c.name(), None, t, inputs, &e);
    }
    rec
}

fn run_aux(c: AuxCheck, cfg: &SuiteConfig) -> FamilyRun {
    let records = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| aux_trial(c, cfg, t))
        .collect();
    FamilyRun {
        suite: "scalar",
        family: c.name().into(),
        records,
        ops: aux_ops(c),
    }
}

/// One (branch, depth, dim) combination of an operator family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorCase {
    pub branch: Branch,
    pub n: u32,
    pub dim: usize,
}

pub fn operator_cases(f: OperatorFamily, depths: &[u32], dims: &[usize]) -> Result<Vec<OperatorCase>> {
    let mut out = Vec::new();
    for &n in depths.iter().filter(|&&n| n >= f.min_depth()) {
        for &dim in dims {
            for branch in [Branch::I, Branch::II] {
                out.push(OperatorCase { branch, n, dim });
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Config(format!(
            "{} needs a depth >= {}, none configured",
            f.name(),
            f.min_depth()
        )));
    }
    Ok(out)
}

fn operator_window(f: OperatorFamily, branch: Branch, n: u32) -> Window {
    f.scalar_counterpart().window(Some(branch), n)
}

/// The matrices and weight of operator trial `t`, regenerated from the seed.
pub fn operator_draw(f: OperatorFamily, cfg: &SuiteConfig, t: u64) -> Result<(OperatorCase, SpdMatrix, SpdMatrix, f64)> {
    let cases = operator_cases(f, &cfg.depths, &cfg.dims)?;
    let case = cases[(t % cases.len() as u64) as usize];
    let mut rng = substream(cfg.seed, stream_id(&format!("operator/{}", f.name())), t);
    let a = random_spd(case.dim, cfg.cond_max, &mut rng)?;
    let b = random_spd(case.dim, cfg.cond_max, &mut rng)?;
    let v = draw_v(operator_window(f, case.branch, case.n), cfg, &mut rng);
    Ok((case, a, b, v))
}

fn operator_trial(f: OperatorFamily, cfg: &SuiteConfig, t: u64) -> TrialRecord {
    let drawn = operator_draw(f, cfg, t);
    let (case, a, b, v) = match drawn {
        Ok(x) => x,
        Err(e) => return error_record("operator", f.name(), None, t, Inputs::default(), &e),
    };
    let result = Weight::new(v)
        .map_err(Error::from)
        .and_then(|w| Ok(evaluate_operator(f, &a, &b, w, Depth::new(case.n)?, case.branch)?));
    let mut rec = match result {
        Ok(r) => {
            let mut rec = TrialRecord::from_operator(&r, Some(t));
            rec.holds = r.degenerate || r.min_eig_gap >= -cfg.loewner_rel * (r.lhs_norm + r.rhs_norm);
            rec
        }
        Err(e) => {
            let inputs = Inputs {
                v: Some(v),
                n: Some(case.n),
                dim: Some(case.dim),
                ..Inputs::default()
            };
            error_record("operator", f.name(), Some(case.branch.name().into()), t, inputs, &e)
        }
    };
    if rec.failed() {
        rec.inputs.matrix_a = Some(a.as_sym().as_slice().to_vec());
        rec.inputs.matrix_b = Some(b.as_sym().as_slice().to_vec());
    }
    rec
}

fn run_operator_family(f: OperatorFamily, cfg: &SuiteConfig) -> Result<FamilyRun> {
    operator_cases(f, &cfg.depths, &cfg.dims)?;
    let records = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| operator_trial(f, cfg, t))
        .collect();
    Ok(FamilyRun {
        suite: "operator",
        family: f.name().into(),
        records,
        ops: operator_ops(f),
    })
}

fn assemble(cfg: &SuiteConfig, runs: Vec<FamilyRun>, started: Instant) -> SuiteReport {
    let mut summaries = Vec::with_capacity(runs.len());
    let mut results = Vec::new();
    let mut failures = Vec::new();
    let mut coverage: BTreeMap<String, u64> = BTreeMap::new();
    for run in runs {
        let (mut passes, mut fails, mut skips) = (0, 0, 0);
        let mut worst: Option<&TrialRecord> = None;
        for r in &run.records {
            if r.failed() {
                fails += 1;
            } else if !r.hypothesis_ok {
                skips += 1;
            } else {
                passes += 1;
            }
            if r.hypothesis_ok {
                if let Some(g) = r.gap {
                    if worst.and_then(|w| w.gap).is_none_or(|wg| g < wg) {
                        worst = Some(r);
                    }
                }
            }
        }
        for op in run.ops {
            *coverage.entry((*op).to_string()).or_default() += run.records.len() as u64;
        }
        summaries.push(FamilySummary {
            suite: run.suite.into(),
            family: run.family.clone(),
            trials: run.records.len() as u64,
            passes,
            failures: fails,
            skips,
            worst_gap: worst.and_then(|w| w.gap),
        });
        if cfg.record_all {
            results.extend(run.records.iter().cloned());
        } else if let Some(w) = worst.or(run.records.first()) {
            results.push(w.clone());
        }
        failures.extend(run.records.into_iter().filter(|r| r.failed()));
    }
    failures.sort_by(|x, y| {
        (x.suite.as_str(), x.family.as_str(), x.trial).cmp(&(y.suite.as_str(), y.family.as_str(), y.trial))
    });
    SuiteReport {
        tool_version: TOOL_VERSION.into(),
        config: serde_json::to_value(cfg).expect("config serializes"),
        summaries,
        results,
        failures,
        coverage,
        wall_time_s: Some(started.elapsed().as_secs_f64()),
    }
}

fn scalar_runs(cfg: &SuiteConfig, sel: &Selection) -> Result<Vec<FamilyRun>> {
    let mut runs = Vec::new();
    for &f in &sel.scalar {
        runs.push(run_scalar_family(f, cfg)?);
    }
    for &c in &sel.aux {
        runs.push(run_aux(c, cfg));
    }
    Ok(runs)
}

fn operator_runs(cfg: &SuiteConfig, sel: &Selection) -> Result<Vec<FamilyRun>> {
    sel.operator.iter().map(|&f| run_operator_family(f, cfg)).collect()
}

/// Scalar families (and the auxiliary scalar checks) of the selection.
pub fn run_scalar_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let sel = cfg.validate()?;
    Ok(assemble(cfg, scalar_runs(cfg, &sel)?, started))
}

/// Operator families of the selection on random SPD pairs.
pub fn run_operator_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let sel = cfg.validate()?;
    Ok(assemble(cfg, operator_runs(cfg, &sel)?, started))
}

/// Dominance claims and polynomial checks.
pub fn run_comparison_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    cfg.validate()?;
    Ok(assemble(cfg, claims::run_claims(cfg), started))
}

/// Every suite the selection asks for, in one report.
pub fn run_suites(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let sel = cfg.validate()?;
    let mut runs = scalar_runs(cfg, &sel)?;
    runs.extend(operator_runs(cfg, &sel)?);
    if sel.comparison {
        runs.extend(claims::run_claims(cfg));
    }
    Ok(assemble(cfg, runs, started))
}

/// Evaluates every scalar family, branch and configured depth exactly at the
/// finite endpoints of its hypothesis window for a few fixed pairs. The
/// hypothesis is false there by construction; by continuity the inequality
/// should still hold, which is what `holds` reports.
pub fn boundary_probe(cfg: &SuiteConfig) -> Result<Vec<TrialRecord>> {
    let pairs = [(1.0, 16.0), (16.0, 1.0), (0.01, 3.0), (2.0, 2.5)];
    let mut out = Vec::new();
    for f in Family::ALL {
        for case in scalar_cases(f, &cfg.depths)? {
            let w = f.window(Some(case.branch), case.n);
            for v in [w.lo, w.hi] {
                for &(a, b) in &pairs {
                    let r = eval_scalar(f, a, b, v, case.n, case.branch)?;
                    let mut rec = TrialRecord::from_bound(&r, case.label.map(String::from), None);
                    rec.suite = "boundary".into();
                    rec.holds = r.gap >= -cfg.tau_rel * (r.lhs.abs() + r.rhs.abs());
                    out.push(rec);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(families: &[&str], trials: usize) -> SuiteConfig {
        SuiteConfig {
            seed: 42,
            trials,
            families: families.iter().map(|s| s.to_string()).collect(),
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn case_enumeration() {
        let c = scalar_cases(Family::HeinzReverseMain, &[1, 2, 3]).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|c| c.n >= 2));
        assert!(scalar_cases(Family::HeinzReverseMain, &[1]).is_err());
        assert_eq!(scalar_cases(Family::KittanehManasrah, &[1, 2, 3]).unwrap().len(), 1);
        assert_eq!(operator_cases(OperatorFamily::T6, &[1, 2], &[1, 2]).unwrap().len(), 4);
    }

    #[test]
    fn single_trial_report() {
        let r = run_scalar_suite(&cfg(&["theorem-main-reverse"], 1)).unwrap();
        assert_eq!(r.summaries.len(), 1);
        assert_eq!(r.summaries[0].trials, 1);
        let rec = &r.results[0];
        let again = replay_scalar(rec).unwrap();
        assert_eq!(again.gap.to_bits(), rec.gap.unwrap().to_bits());
    }

    #[test]
    fn basic_family_inside_unit_interval_is_all_skipped() {
        let mut c = cfg(&["reverse-young-basic"], 50);
        c.v_range = (0.1, 0.9);
        let r = run_scalar_suite(&c).unwrap();
        let s = &r.summaries[0];
        assert_eq!((s.skips, s.passes, s.failures), (50, 0, 0));
    }

    #[test]
    fn scalar_suite_small_run_passes() {
        let r = run_scalar_suite(&cfg(&["scalar"], 300)).unwrap();
        for s in &r.summaries {
            assert_eq!(s.failures, 0, "{s:?}");
            assert_eq!(s.passes + s.failures + s.skips, s.trials);
        }
    }

    #[test]
    fn operator_suite_small_run_passes() {
        let mut c = cfg(&["operator"], 40);
        c.dims = vec![1, 3];
        let r = run_operator_suite(&c).unwrap();
        assert_eq!(r.total_failures(), 0, "{:?}", r.failures.first());
    }

    #[test]
    fn boundary_probe_holds_by_continuity() {
        let c = cfg(&["all"], 1);
        let recs = boundary_probe(&c).unwrap();
        assert!(!recs.is_empty());
        for r in recs.iter().filter(|r| r.inputs.v.unwrap().abs() <= 6.0) {
            assert!(r.holds, "{r:?}");
        }
    }
}
