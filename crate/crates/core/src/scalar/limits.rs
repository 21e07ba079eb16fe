//! Large-depth limits of the dyadic bounds.

use super::{pow2, Depth, ScalarPair, Weight};

/// `|2^n ((b/a)^(1/2^n) - 1) - ln(b/a)|`, the distance of the dyadic
/// difference quotient from its logarithmic limit.
pub fn log_limit_gap(p: ScalarPair, n: Depth) -> f64 {
    let l = p.ln_ratio();
    let k = n.get() as i32;
    libm::fabs(pow2(k) * libm::expm1(l * pow2(-k)) - l)
}

/// `x - 1 - ln x`, nonnegative for every `x > 0` and zero only at `x = 1`.
/// Returns NaN for `x <= 0`.
pub fn fundamental_log_slack(x: f64) -> f64 {
    if x <= 0.0 || x.is_nan() {
        return f64::NAN;
    }
    if libm::fabs(x - 1.0) < 0.25 {
        let y = libm::log1p(x - 1.0);
        // x - 1 - ln x = expm1(y) - y with y = ln x
        libm::expm1(y) - y
    } else {
        x - 1.0 - libm::log(x)
    }
}

/// Slack of the limiting inequality `ln x <= x - 1` at `x = (b/a)^(v - 1/2)`.
pub fn limit_inequality_slack(p: ScalarPair, w: Weight) -> f64 {
    let y = (w.value() - 0.5) * p.ln_ratio();
    libm::expm1(y) - y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_vanishes_for_equal_operands() {
        let p = ScalarPair::new(3.5, 3.5).unwrap();
        for n in 1..=30 {
            assert_eq!(log_limit_gap(p, Depth::new(n).unwrap()), 0.0);
        }
    }

    #[test]
    fn delta_small_at_depth_20() {
        let e2 = core::f64::consts::E * core::f64::consts::E;
        let p = ScalarPair::new(1.0, e2).unwrap();
        let d = log_limit_gap(p, Depth::new(20).unwrap());
        assert!(d <= 1e-5, "{d}");
        // leading term (ln r)^2 / 2^(n+1) = 4 / 2^21
        assert!((d - 4.0 / 2f64.powi(21)).abs() < 1e-9);
    }

    #[test]
    fn slack_zero_at_half() {
        let p = ScalarPair::new(1.0, 16.0).unwrap();
        assert_eq!(limit_inequality_slack(p, Weight::new(0.5).unwrap()), 0.0);
        assert_eq!(fundamental_log_slack(1.0), 0.0);
        assert!(fundamental_log_slack(0.0).is_nan());
        assert!((fundamental_log_slack(core::f64::consts::E) - (core::f64::consts::E - 2.0)).abs() < 1e-15);
    }
}
