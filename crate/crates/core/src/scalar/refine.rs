//! Dyadic refinement indices and the `S_n` sum.

use super::{pow2, Depth, ScalarPair, Weight};
use crate::error::BoundError;

/// Indices `(j_k, r_k, s_k)` of the k-th refinement term at weight `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementIndex {
    pub k: u32,
    /// `floor(2^(k-1) v)`
    pub j: u64,
    /// `floor(2^k v)`
    pub r: u64,
    /// `(-1)^r 2^(k-1) v + (-1)^(r+1) floor((r+1)/2)`
    pub s: f64,
}

/// Index triple for `v` in `[0, 1]`, `1 <= k <= 62`.
pub fn sababheh_indices(w: Weight, k: u32) -> Result<RefinementIndex, BoundError> {
    let v = w.value();
    if !(0.0..=1.0).contains(&v) {
        return Err(BoundError::OutOfDomain {
            value: v,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if !(1..=62).contains(&k) {
        return Err(BoundError::InvalidDepth { depth: k, max: 62 });
    }
    let (j, r, s) = raw_index(v, k);
    Ok(RefinementIndex {
        k,
        j: j as u64,
        r: r as u64,
        s,
    })
}

/// The index formulas evaluated without a domain check. `j` and `r` are
/// integers carried in `f64` (exact below 2^53).
pub(crate) fn raw_index(v: f64, k: u32) -> (f64, f64, f64) {
    let k = k as i32;
    let half = pow2(k - 1) * v;
    let j = libm::floor(half);
    let r = libm::floor(pow2(k) * v);
    let odd = libm::fmod(r, 2.0) != 0.0;
    let carry = libm::floor((r + 1.0) / 2.0);
    let s = if odd { carry - half } else { half - carry };
    (j, r, s)
}

/// `sum_{k=1}^n s_k(u) * b * (a/b)^(2j/2^k) * ((a/b)^(1/2^k) - 1)^2`, which is
/// the `S_n(u, a, b)` sum written in ratio form. No domain check on `u`.
pub(crate) fn s_sum_raw(u: f64, a: f64, b: f64, n: u32) -> f64 {
    let m = if a == b {
        0.0
    } else {
        let r = a / b;
        if r.is_finite() && r > 0.0 {
            libm::log(r)
        } else {
            libm::log(a) - libm::log(b)
        }
    };
    let mut total = 0.0;
    for k in (1..=n).rev() {
        let (j, _, s) = raw_index(u, k);
        let scale = pow2(-(k as i32));
        let step = libm::expm1(m * scale);
        total += s * b * libm::exp(2.0 * j * m * scale) * step * step;
    }
    total
}

/// `S_n(v, a, b)` with `a = p.a()`, `b = p.b()`; `v` must lie in `[0, 1]`.
pub fn refinement_sum_s(w: Weight, p: ScalarPair, n: Depth) -> Result<f64, BoundError> {
    let v = w.value();
    if !(0.0..=1.0).contains(&v) {
        return Err(BoundError::OutOfDomain {
            value: v,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(s_sum_raw(v, p.a(), p.b(), n.get()))
}
