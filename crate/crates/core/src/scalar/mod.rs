//! Scalar Young and Heinz bounds.
//!
//! Every inequality family evaluates to a [`BoundReport`]. Reverse (upper)
//! bounds and forward refinements (lower bounds) share the report type; the
//! `gap` field is oriented so that a satisfied inequality always has
//! `gap >= 0`.

mod compare;
mod families;
mod limits;
mod refine;

pub use compare::{
    compare_gap_bounds, comparison_poly_f, comparison_poly_f_factored, comparison_poly_g,
    comparison_poly_g_factored, cubic_a2, gap_bound, ineq11_form, ComparisonReport, Dominance,
    GapBoundEntry, GapBoundKind, REPORTED_SM2_GAP,
};
pub use families::{
    corollary_one_term, evaluate, heinz_reverse_main, heinz_reverse_sc, heinz_scalar,
    kittaneh_manasrah, lemma_sm_reverse, reverse_young_basic, sababheh_choi_forward,
    theorem_extended_sc, theorem_main_reverse, weighted_geometric, young_lhs, zhao_wu_forward,
    zhao_wu_reverse,
};
pub use limits::{fundamental_log_slack, limit_inequality_slack, log_limit_gap};
pub use refine::{refinement_sum_s, sababheh_indices, RefinementIndex};

use crate::error::BoundError;
use core::fmt;

/// Relative tolerance for scalar verdicts.
pub const TAU_REL: f64 = 1e-9;

/// Largest supported refinement depth.
pub const MAX_DEPTH: u32 = 30;

/// A pair of strictly positive operands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarPair {
    a: f64,
    b: f64,
}

impl ScalarPair {
    pub fn new(a: f64, b: f64) -> Result<Self, BoundError> {
        if a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0 {
            Ok(Self { a, b })
        } else {
            Err(BoundError::NonPositive { a, b })
        }
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    /// The pair with roles exchanged.
    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a }
    }

    /// `ln(b / a)`.
    pub fn ln_ratio(&self) -> f64 {
        let r = self.b / self.a;
        if r.is_finite() && r > 0.0 {
            libm::log(r)
        } else {
            libm::log(self.b) - libm::log(self.a)
        }
    }

    /// `sqrt(a * b)`.
    pub fn sqrt_prod(&self) -> f64 {
        libm::sqrt(self.a) * libm::sqrt(self.b)
    }

    /// `(sqrt(a) - sqrt(b))^2`.
    pub fn sqrt_diff_sq(&self) -> f64 {
        let d = libm::sqrt(self.a) - libm::sqrt(self.b);
        d * d
    }
}

/// A finite real weight `v`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Weight(f64);

impl Weight {
    pub fn new(v: f64) -> Result<Self, BoundError> {
        if v.is_finite() {
            Ok(Self(v))
        } else {
            Err(BoundError::NonFiniteWeight(v))
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }

    /// `v` lies in the closed unit interval, where the means are Kubo-Ando means.
    pub fn in_unit_interval(&self) -> bool {
        (0.0..=1.0).contains(&self.0)
    }
}

/// Refinement depth `n`, capped at [`MAX_DEPTH`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Depth(u32);

impl Depth {
    pub fn new(n: u32) -> Result<Self, BoundError> {
        if (1..=MAX_DEPTH).contains(&n) {
            Ok(Self(n))
        } else {
            Err(BoundError::InvalidDepth {
                depth: n,
                max: MAX_DEPTH,
            })
        }
    }

    #[inline]
    pub fn get(&self) -> u32 {
        self.0
    }
}

/// Exact `2^k` for the small exponents used by the dyadic weights.
#[inline]
pub(crate) fn pow2(k: i32) -> f64 {
    libm::ldexp(1.0, k)
}

/// Branch selector. Two-branch families use `I` and `II`; the four-branch
/// restatement of the Zhao-Wu reverse bound uses all four.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    I,
    II,
    III,
    IV,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::I => "i",
            Branch::II => "ii",
            Branch::III => "iii",
            Branch::IV => "iv",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Some(Branch::I),
            "ii" | "2" => Some(Branch::II),
            "iii" | "3" => Some(Branch::III),
            "iv" | "4" => Some(Branch::IV),
            _ => None,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which of the two Zhao-Wu reverse statements to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReverseForm {
    /// Two branches split at `v = 1/2`.
    Lemma,
    /// Four branches split at `1/4, 1/2, 3/4`.
    Proposition,
}

/// Scalar inequality families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    ReverseYoungBasic,
    CorollaryOneTerm,
    TheoremMainReverse,
    LemmaSmReverse,
    KittanehManasrah,
    ZhaoWuForward,
    ZhaoWuReverse,
    SababhehChoiForward,
    TheoremExtendedSc,
    HeinzReverseMain,
    HeinzReverseSc,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::ReverseYoungBasic,
        Family::CorollaryOneTerm,
        Family::TheoremMainReverse,
        Family::LemmaSmReverse,
        Family::KittanehManasrah,
        Family::ZhaoWuForward,
        Family::ZhaoWuReverse,
        Family::SababhehChoiForward,
        Family::TheoremExtendedSc,
        Family::HeinzReverseMain,
        Family::HeinzReverseSc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::ReverseYoungBasic => "reverse-young-basic",
            Family::CorollaryOneTerm => "corollary-one-term",
            Family::TheoremMainReverse => "theorem-main-reverse",
            Family::LemmaSmReverse => "lemma-sm-reverse",
            Family::KittanehManasrah => "kittaneh-manasrah",
            Family::ZhaoWuForward => "zhao-wu-forward",
            Family::ZhaoWuReverse => "zhao-wu-reverse",
            Family::SababhehChoiForward => "sababheh-choi-forward",
            Family::TheoremExtendedSc => "theorem-extended-sc",
            Family::HeinzReverseMain => "heinz-reverse-main",
            Family::HeinzReverseSc => "heinz-reverse-sc",
        }
    }

    /// Accepts the kebab-case name, or the same with underscores.
    pub fn parse(s: &str) -> Option<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s || f.name().replace('-', "_") == s)
    }

    pub fn direction(&self) -> Direction {
        match self {
            Family::KittanehManasrah | Family::ZhaoWuForward | Family::SababhehChoiForward => {
                Direction::Lower
            }
            _ => Direction::Upper,
        }
    }

    /// Branches a caller may select. `None` means the family has a single
    /// statement (or picks its branch from `v`).
    pub fn branches(&self) -> &'static [Branch] {
        match self {
            Family::CorollaryOneTerm
            | Family::TheoremMainReverse
            | Family::LemmaSmReverse
            | Family::TheoremExtendedSc
            | Family::HeinzReverseMain
            | Family::HeinzReverseSc => &[Branch::I, Branch::II],
            _ => &[],
        }
    }

    pub fn uses_depth(&self) -> bool {
        matches!(
            self,
            Family::TheoremMainReverse
                | Family::LemmaSmReverse
                | Family::SababhehChoiForward
                | Family::TheoremExtendedSc
                | Family::HeinzReverseMain
                | Family::HeinzReverseSc
        )
    }

    /// Smallest admissible depth.
    pub fn min_depth(&self) -> u32 {
        match self {
            Family::HeinzReverseMain => 2,
            _ => 1,
        }
    }

    /// Hypothesis window on `v` for the given branch and depth. Families that
    /// pick their branch from `v` ignore `branch`.
    pub fn window(&self, branch: Option<Branch>, n: u32) -> Window {
        let n = n.clamp(1, MAX_DEPTH) as i32;
        let br = branch.unwrap_or(Branch::I);
        match self {
            Family::ReverseYoungBasic => Window::outside(0.0, 1.0),
            Family::CorollaryOneTerm => match br {
                Branch::I => Window::outside(0.0, 0.5),
                _ => Window::outside(0.5, 1.0),
            },
            Family::TheoremMainReverse | Family::HeinzReverseMain => match br {
                Branch::I => Window::outside(0.5, (pow2(n - 1) + 1.0) / pow2(n)),
                _ => Window::outside((pow2(n - 1) - 1.0) / pow2(n), 0.5),
            },
            Family::LemmaSmReverse => match br {
                Branch::I => Window::inside(0.0, 0.5),
                _ => Window::inside(0.5, 1.0),
            },
            Family::KittanehManasrah
            | Family::ZhaoWuForward
            | Family::ZhaoWuReverse
            | Family::SababhehChoiForward => Window::inside(0.0, 1.0),
            Family::TheoremExtendedSc | Family::HeinzReverseSc => match br {
                Branch::I => Window::outside(0.0, 1.0 / pow2(n)),
                _ => Window::outside((pow2(n) - 1.0) / pow2(n), 1.0),
            },
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Whether the family bounds the left side from above or below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `lhs <= rhs`; gap = rhs - lhs.
    Upper,
    /// `lhs >= rhs`; gap = lhs - rhs.
    Lower,
}

/// Hypothesis region for `v`: either a closed interval or its complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
    /// `true`: admissible iff `v` is outside `[lo, hi]`.
    pub complement: bool,
}

impl Window {
    pub const fn outside(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            complement: true,
        }
    }

    pub const fn inside(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            complement: false,
        }
    }

    /// Exact closed-interval membership test.
    pub fn admits(&self, v: f64) -> bool {
        let within = self.lo <= v && v <= self.hi;
        within != self.complement
    }
}

/// One evaluated inequality instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub family: Family,
    pub branch: Option<Branch>,
    pub direction: Direction,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub hypothesis_ok: bool,
    pub holds: bool,
    pub a: f64,
    pub b: f64,
    pub v: f64,
    pub n: Option<u32>,
}

impl BoundReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn build(
        family: Family,
        branch: Option<Branch>,
        lhs: f64,
        rhs: f64,
        hypothesis_ok: bool,
        p: ScalarPair,
        w: Weight,
        n: Option<u32>,
    ) -> Result<Self, BoundError> {
        if !lhs.is_finite() || !rhs.is_finite() {
            return Err(BoundError::Overflow);
        }
        let direction = family.direction();
        let gap = match direction {
            Direction::Upper => rhs - lhs,
            Direction::Lower => lhs - rhs,
        };
        let holds = gap >= -tau_abs(lhs, rhs);
        Ok(Self {
            family,
            branch,
            direction,
            lhs,
            rhs,
            gap,
            hypothesis_ok,
            holds,
            a: p.a(),
            b: p.b(),
            v: w.value(),
            n,
        })
    }

    /// Absolute tolerance used for `holds`.
    pub fn tau_abs(&self) -> f64 {
        tau_abs(self.lhs, self.rhs)
    }

    /// A counterexample: hypothesis satisfied but the inequality fails.
    pub fn violated(&self) -> bool {
        self.hypothesis_ok && !self.holds
    }
}

/// `TAU_REL * (|lhs| + |rhs|)`.
pub fn tau_abs(lhs: f64, rhs: f64) -> f64 {
    TAU_REL * (libm::fabs(lhs) + libm::fabs(rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_rejects_nonpositive_and_nonfinite() {
        assert!(ScalarPair::new(0.0, 1.0).is_err());
        assert!(ScalarPair::new(1.0, -2.0).is_err());
        assert!(ScalarPair::new(f64::INFINITY, 1.0).is_err());
        assert!(ScalarPair::new(f64::NAN, 1.0).is_err());
        assert!(ScalarPair::new(1e-300, 1e300).is_ok());
    }

    #[test]
    fn weight_and_depth_validation() {
        assert!(Weight::new(f64::NAN).is_err());
        assert!(Weight::new(-1e6).is_ok());
        assert!(Depth::new(0).is_err());
        assert!(Depth::new(MAX_DEPTH + 1).is_err());
        assert_eq!(Depth::new(30).unwrap().get(), 30);
    }

    #[test]
    fn windows_use_closed_intervals() {
        let w = Family::TheoremMainReverse.window(Some(Branch::I), 2);
        assert_eq!((w.lo, w.hi), (0.5, 0.75));
        assert!(!w.admits(0.5));
        assert!(!w.admits(0.75));
        assert!(w.admits(0.75 + 1e-12));
        let w = Family::TheoremMainReverse.window(Some(Branch::II), 3);
        assert_eq!((w.lo, w.hi), (0.375, 0.5));
        let w = Family::TheoremExtendedSc.window(Some(Branch::II), 3);
        assert_eq!((w.lo, w.hi), (0.875, 1.0));
        let w = Family::LemmaSmReverse.window(Some(Branch::II), 7);
        assert!(w.admits(0.5) && w.admits(1.0) && !w.admits(0.49));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(Family::parse(f.name()), Some(f));
        }
        assert_eq!(Family::parse("theorem_main_reverse"), Some(Family::TheoremMainReverse));
        assert_eq!(Family::parse("nope"), None);
    }
}
