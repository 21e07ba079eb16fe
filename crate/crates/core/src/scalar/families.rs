use super::refine::s_sum_raw;
use super::{pow2, BoundReport, Branch, Depth, Family, ReverseForm, ScalarPair, Weight};
use crate::error::BoundError;

/// `(1 - v) a + v b`.
pub fn young_lhs(p: ScalarPair, w: Weight) -> f64 {
    let v = w.value();
    (1.0 - v) * p.a() + v * p.b()
}

/// `a^(1-v) b^v`, evaluated as `a * exp(v ln(b/a))` so that `a = b` is an
/// exact fixed point. Falls back to `exp((1-v) ln a + v ln b)` when the
/// intermediate factor leaves the floating range.
pub fn weighted_geometric(p: ScalarPair, w: Weight) -> f64 {
    let v = w.value();
    let direct = p.a() * libm::exp(v * p.ln_ratio());
    if direct.is_finite() && direct > 0.0 {
        direct
    } else {
        libm::exp((1.0 - v) * libm::log(p.a()) + v * libm::log(p.b()))
    }
}

/// Heinz mean `(a^(1-v) b^v + a^v b^(1-v)) / 2`.
pub fn heinz_scalar(p: ScalarPair, w: Weight) -> f64 {
    let v = w.value();
    let lo = weighted_geometric(p, w);
    let hi = weighted_geometric(p, Weight(1.0 - v));
    0.5 * (lo + hi)
}

/// `(t^(1/2^k) - 1)` from `ln t`.
#[inline]
fn root_m1(ln_t: f64, k: u32) -> f64 {
    libm::expm1(ln_t * pow2(-(k as i32)))
}

/// `sum_{k=2}^n 2^(k-2) (t^(1/2^k) - 1)^2`, smallest terms first.
fn dyadic_sum_from2(ln_t: f64, n: u32) -> f64 {
    let mut total = 0.0;
    for k in (2..=n).rev() {
        let e = root_m1(ln_t, k);
        total += pow2(k as i32 - 2) * e * e;
    }
    total
}

/// `sum_{k=1}^n 2^(k-1) (t^(1/2^k) - 1)^2`, smallest terms first.
fn dyadic_sum_from1(ln_t: f64, n: u32) -> f64 {
    let mut total = 0.0;
    for k in (1..=n).rev() {
        let e = root_m1(ln_t, k);
        total += pow2(k as i32 - 1) * e * e;
    }
    total
}

fn hyp(family: Family, branch: Option<Branch>, n: u32, v: f64) -> bool {
    family.window(branch, n).admits(v)
}

fn require_depth(family: Family, n: Depth) -> Result<(), BoundError> {
    if n.get() < family.min_depth() {
        return Err(BoundError::DepthTooSmall {
            family: family.name(),
            depth: n.get(),
            min: family.min_depth(),
        });
    }
    Ok(())
}

/// Reverse Young: `(1-v)a + vb <= a^(1-v) b^v` for `v` outside `[0, 1]`.
pub fn reverse_young_basic(p: ScalarPair, w: Weight) -> Result<BoundReport, BoundError> {
    let f = Family::ReverseYoungBasic;
    BoundReport::build(
        f,
        None,
        young_lhs(p, w),
        weighted_geometric(p, w),
        hyp(f, None, 1, w.value()),
        p,
        w,
        None,
    )
}

/// One-term reverse bounds: branch I adds `v (sqrt a - sqrt b)^2` (needs
/// `v` outside `[0, 1/2]`), branch II adds `(1-v) (sqrt a - sqrt b)^2`
/// (needs `v` outside `[1/2, 1]`).
pub fn corollary_one_term(
    p: ScalarPair,
    w: Weight,
    branch: Branch,
) -> Result<BoundReport, BoundError> {
    let f = Family::CorollaryOneTerm;
    let v = w.value();
    let coef = match branch {
        Branch::I => v,
        _ => 1.0 - v,
    };
    let rhs = weighted_geometric(p, w) + coef * p.sqrt_diff_sq();
    BoundReport::build(
        f,
        Some(branch),
        young_lhs(p, w),
        rhs,
        hyp(f, Some(branch), 1, v),
        p,
        w,
        None,
    )
}

/// Extended-range reverse Young bound with the dyadic correction sum.
///
/// Branch I: `a^(1-v) b^v + (1-v)(sqrt a - sqrt b)^2
///   + (2v-1) sqrt(ab) sum_{k=2}^n 2^(k-2) ((b/a)^(1/2^k) - 1)^2`,
/// valid for `v` outside `[1/2, (2^(n-1)+1)/2^n]`.
/// Branch II mirrors it under `a <-> b`, `v <-> 1-v`.
///
/// With `n = 1` the sum is empty and branch I (II) coincides with branch
/// II (I) of [`corollary_one_term`].
pub fn theorem_main_reverse(
    p: ScalarPair,
    w: Weight,
    n: Depth,
    branch: Branch,
) -> Result<BoundReport, BoundError> {
    let f = Family::TheoremMainReverse;
    let v = w.value();
    let l = p.ln_ratio();
    let correction = match branch {
        Branch::I => {
            (1.0 - v) * p.sqrt_diff_sq() + (2.0 * v - 1.0) * p.sqrt_prod() * dyadic_sum_from2(l, n.get())
        }
        _ => v * p.sqrt_diff_sq() + (1.0 - 2.0 * v) * p.sqrt_prod() * dyadic_sum_from2(-l, n.get()),
    };
    BoundReport::build(
        f,
        Some(branch),
        young_lhs(p, w),
        weighted_geometric(p, w) + correction,
        hyp(f, Some(branch), n.get(), v),
        p,
        w,
        Some(n.get()),
    )
}

/// Sababheh-Moslehian reverse bound with `S_n` subtracted.
///
/// Branch I (`v` in `[0, 1/2]`): `(1-v)(sqrt a - sqrt b)^2 - S_n(2v, sqrt(ab), b)`.
/// Branch II (`v` in `[1/2, 1]`): `v (sqrt a - sqrt b)^2 - S_n(2(1-v), sqrt(ab), a)`.
/// Outside its window the index formulas are still evaluated and the report
/// carries `hypothesis_ok = false`.
pub fn lemma_sm_reverse(
    p: ScalarPair,
    w: Weight,
    n: Depth,
    branch: Branch,
) -> Result<BoundReport, BoundError> {
    let f = Family::LemmaSmReverse;
    let v = w.value();
    let g = p.sqrt_prod();
    let correction = match branch {
        Branch::I => (1.0 - v) * p.sqrt_diff_sq() - s_sum_raw(2.0 * v, g, p.b(), n.get()),
        _ => v * p.sqrt_diff_sq() - s_sum_raw(2.0 * (1.0 - v), g, p.a(), n.get()),
    };
    BoundReport::build(
        f,
        Some(branch),
        young_lhs(p, w),
        weighted_geometric(p, w) + correction,
        hyp(f, Some(branch), n.get(), v),
        p,
        w,
        Some(n.get()),
    )
}

/// Forward refinement `(1-v)a + vb >= a^(1-v) b^v + min(v, 1-v) (sqrt a - sqrt b)^2`.
pub fn kittaneh_manasrah(p: ScalarPair, w: Weight) -> Result<BoundReport, BoundError> {
    let f = Family::KittanehManasrah;
    let v = w.value();
    let r0 = v.min(1.0 - v);
    BoundReport::build(
        f,
        None,
        young_lhs(p, w),
        weighted_geometric(p, w) + r0 * p.sqrt_diff_sq(),
        hyp(f, None, 1, v),
        p,
        w,
        None,
    )
}

/// `(sqrt a - (ab)^(1/4))^2` and `(sqrt b - (ab)^(1/4))^2`.
fn quarter_terms(p: ScalarPair) -> (f64, f64) {
    let l = p.ln_ratio();
    let ea = root_m1(l, 2);
    let eb = root_m1(-l, 2);
    (p.a() * ea * ea, p.b() * eb * eb)
}

/// `r0 = min(2r, 1 - 2r)` with `r = min(v, 1 - v)`.
fn zhao_wu_r0(v: f64) -> f64 {
    let r = v.min(1.0 - v);
    (2.0 * r).min(1.0 - 2.0 * r)
}

/// Two-term forward refinement; the branch is chosen by `v <= 1/2`.
pub fn zhao_wu_forward(p: ScalarPair, w: Weight) -> Result<BoundReport, BoundError> {
    let f = Family::ZhaoWuForward;
    let v = w.value();
    let r0 = zhao_wu_r0(v);
    let (xa, xb) = quarter_terms(p);
    let (branch, extra) = if v <= 0.5 {
        (Branch::I, v * p.sqrt_diff_sq() + r0 * xa)
    } else {
        (Branch::II, (1.0 - v) * p.sqrt_diff_sq() + r0 * xb)
    };
    BoundReport::build(
        f,
        Some(branch),
        young_lhs(p, w),
        weighted_geometric(p, w) + extra,
        hyp(f, None, 1, v),
        p,
        w,
        None,
    )
}

/// Zhao-Wu reverse bound, either as the two-branch statement or the
/// equivalent four-branch restatement. Both produce bit-identical `rhs`.
pub fn zhao_wu_reverse(
    p: ScalarPair,
    w: Weight,
    form: ReverseForm,
) -> Result<BoundReport, BoundError> {
    let f = Family::ZhaoWuReverse;
    let v = w.value();
    let (xa, xb) = quarter_terms(p);
    let d = p.sqrt_diff_sq();
    let (branch, correction) = match form {
        ReverseForm::Lemma => {
            let r0 = zhao_wu_r0(v);
            if v <= 0.5 {
                (Branch::I, (1.0 - v) * d - r0 * xb)
            } else {
                (Branch::II, v * d - r0 * xa)
            }
        }
        ReverseForm::Proposition => {
            if v <= 0.25 {
                (Branch::I, (1.0 - v) * d + (-2.0 * v) * xb)
            } else if v <= 0.5 {
                (Branch::II, (1.0 - v) * d + (2.0 * v - 1.0) * xb)
            } else if v <= 0.75 {
                (Branch::III, v * d - (2.0 * v - 1.0) * xa)
            } else {
                (Branch::IV, v * d + (2.0 * v - 2.0) * xa)
            }
        }
    };
    BoundReport::build(
        f,
        Some(branch),
        young_lhs(p, w),
        weighted_geometric(p, w) + correction,
        hyp(f, None, 1, v),
        p,
        w,
        None,
    )
}

/// Complete forward refinement with `n` dyadic terms. Equal to
/// `a^(1-v) b^v + S_n(v, b, a)`.
pub fn sababheh_choi_forward(
    p: ScalarPair,
    w: Weight,
    n: Depth,
) -> Result<BoundReport, BoundError> {
    let f = Family::SababhehChoiForward;
    let v = w.value();
    let sum = s_sum_raw(v, p.b(), p.a(), n.get());
    BoundReport::build(
        f,
        None,
        young_lhs(p, w),
        weighted_geometric(p, w) + sum,
        hyp(f, None, n.get(), v),
        p,
        w,
        Some(n.get()),
    )
}

/// Extended-range Sababheh-Choi reverse bounds.
///
/// Branch I: `a^(1-v) b^v + v sum_{k=1}^n 2^(k-1) (sqrt a - (a^(2^(k-1)-1) b)^(1/2^k))^2`
/// for `v` outside `[0, 1/2^n]`; branch II is the `a <-> b`, `v <-> 1-v` mirror.
pub fn theorem_extended_sc(
    p: ScalarPair,
    w: Weight,
    n: Depth,
    branch: Branch,
) -> Result<BoundReport, BoundError> {
    let f = Family::TheoremExtendedSc;
    let v = w.value();
    let l = p.ln_ratio();
    let correction = match branch {
        Branch::I => v * (p.a() * dyadic_sum_from1(l, n.get())),
        _ => (1.0 - v) * (p.b() * dyadic_sum_from1(-l, n.get())),
    };
    BoundReport::build(
        f,
        Some(branch),
        young_lhs(p, w),
        weighted_geometric(p, w) + correction,
        hyp(f, Some(branch), n.get(), v),
        p,
        w,
        Some(n.get()),
    )
}

/// Reverse Heinz bound from averaging [`theorem_main_reverse`] over both
/// orientations. Requires `n >= 2`.
pub fn heinz_reverse_main(
    p: ScalarPair,
    w: Weight,
    n: Depth,
    branch: Branch,
) -> Result<BoundReport, BoundError> {
    let f = Family::HeinzReverseMain;
    require_depth(f, n)?;
    let v = w.value();
    let l = p.ln_ratio();
    let both = dyadic_sum_from2(-l, n.get()) + dyadic_sum_from2(l, n.get());
    let correction = match branch {
        Branch::I => (1.0 - v) * p.sqrt_diff_sq() + (v - 0.5) * p.sqrt_prod() * both,
        _ => v * p.sqrt_diff_sq() + (0.5 - v) * p.sqrt_prod() * both,
    };
    BoundReport::build(
        f,
        Some(branch),
        0.5 * (p.a() + p.b()),
        heinz_scalar(p, w) + correction,
        hyp(f, Some(branch), n.get(), v),
        p,
        w,
        Some(n.get()),
    )
}

/// Reverse Heinz bound from [`theorem_extended_sc`] over both orientations.
pub fn heinz_reverse_sc(
    p: ScalarPair,
    w: Weight,
    n: Depth,
    branch: Branch,
) -> Result<BoundReport, BoundError> {
    let f = Family::HeinzReverseSc;
    let v = w.value();
    let l = p.ln_ratio();
    let sum = 0.5 * (p.a() * dyadic_sum_from1(l, n.get()) + p.b() * dyadic_sum_from1(-l, n.get()));
    let coef = match branch {
        Branch::I => v,
        _ => 1.0 - v,
    };
    BoundReport::build(
        f,
        Some(branch),
        0.5 * (p.a() + p.b()),
        heinz_scalar(p, w) + coef * sum,
        hyp(f, Some(branch), n.get(), v),
        p,
        w,
        Some(n.get()),
    )
}

/// Uniform dispatch used by the harness and CLI. `branch` is ignored by
/// families without a branch choice; `n` by families without a depth.
/// For [`Family::ZhaoWuReverse`], `Branch::I` selects the lemma form and any
/// other branch the proposition form.
pub fn evaluate(
    family: Family,
    p: ScalarPair,
    w: Weight,
    n: Depth,
    branch: Branch,
) -> Result<BoundReport, BoundError> {
    match family {
        Family::ReverseYoungBasic => reverse_young_basic(p, w),
        Family::CorollaryOneTerm => corollary_one_term(p, w, branch),
        Family::TheoremMainReverse => theorem_main_reverse(p, w, n, branch),
        Family::LemmaSmReverse => lemma_sm_reverse(p, w, n, branch),
        Family::KittanehManasrah => kittaneh_manasrah(p, w),
        Family::ZhaoWuForward => zhao_wu_forward(p, w),
        Family::ZhaoWuReverse => {
            let form = if branch == Branch::I {
                ReverseForm::Lemma
            } else {
                ReverseForm::Proposition
            };
            zhao_wu_reverse(p, w, form)
        }
        Family::SababhehChoiForward => sababheh_choi_forward(p, w, n),
        Family::TheoremExtendedSc => theorem_extended_sc(p, w, n, branch),
        Family::HeinzReverseMain => heinz_reverse_main(p, w, n, branch),
        Family::HeinzReverseSc => heinz_reverse_sc(p, w, n, branch),
    }
}
