//! Operator versions of the reverse Young and Heinz bounds, decided in the
//! Loewner order on SPD matrices.
//!
//! Every family compares `LHS <= RHS` where both sides are assembled from
//! weighted geometric means `A #_w B` at dyadic weights. The verdict is the
//! smallest eigenvalue of `RHS - LHS` against
//! `1e-8 * (||LHS||_F + ||RHS||_F)`.

use core::fmt;

use crate::error::{BoundError, MatrixError};
use crate::matrix::{loewner_default_tol, loewner_leq, MeanPencil, SpdMatrix, SymMatrix};
use crate::scalar::{pow2, Branch, Depth, Family, Weight};

/// `||A - B||_F <= DEGENERATE_REL * ||A||_F` short-circuits to a zero gap.
pub const DEGENERATE_REL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorFamily {
    /// Lift of the main extended-range reverse Young bound.
    T6,
    /// Lift of the extended Sababheh-Choi bound.
    T66,
    /// Heinz counterpart of `T6`.
    C3,
    /// Heinz counterpart of `T66`.
    C33,
}

impl OperatorFamily {
    pub const ALL: [OperatorFamily; 4] = [
        OperatorFamily::T6,
        OperatorFamily::T66,
        OperatorFamily::C3,
        OperatorFamily::C33,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OperatorFamily::T6 => "theorem-t6",
            OperatorFamily::T66 => "theorem-t66",
            OperatorFamily::C3 => "corollary-c3",
            OperatorFamily::C33 => "corollary-c33",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s.replace('_', "-");
        OperatorFamily::ALL.iter().copied().find(|f| {
            f.name() == s
                || match f {
                    OperatorFamily::T6 => s == "t6",
                    OperatorFamily::T66 => s == "t66" || s == "t6-6",
                    OperatorFamily::C3 => s == "c3",
                    OperatorFamily::C33 => s == "c33" || s == "c3-3",
                }
        })
    }

    /// The scalar family this one reduces to on 1x1 matrices.
    pub fn scalar_counterpart(&self) -> Family {
        match self {
            OperatorFamily::T6 => Family::TheoremMainReverse,
            OperatorFamily::T66 => Family::TheoremExtendedSc,
            OperatorFamily::C3 => Family::HeinzReverseMain,
            OperatorFamily::C33 => Family::HeinzReverseSc,
        }
    }

    pub fn min_depth(&self) -> u32 {
        match self {
            OperatorFamily::T6 | OperatorFamily::C3 => 2,
            _ => 1,
        }
    }

    pub fn hypothesis(&self, branch: Branch, n: u32, v: f64) -> bool {
        let f = match self {
            OperatorFamily::T6 | OperatorFamily::C3 => Family::TheoremMainReverse,
            _ => Family::TheoremExtendedSc,
        };
        f.window(Some(branch), n).admits(v)
    }
}

impl fmt::Display for OperatorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBoundReport {
    pub family: OperatorFamily,
    pub branch: Branch,
    pub dim: usize,
    pub v: f64,
    pub n: u32,
    /// Smallest eigenvalue of `RHS - LHS`.
    pub min_eig_gap: f64,
    pub tol: f64,
    pub lhs_norm: f64,
    pub rhs_norm: f64,
    pub hypothesis_ok: bool,
    pub holds: bool,
    /// `A` and `B` coincide to within `DEGENERATE_REL`; the gap is reported as 0.
    pub degenerate: bool,
    pub fingerprint_a: u64,
    pub fingerprint_b: u64,
}

impl OperatorBoundReport {
    pub fn violated(&self) -> bool {
        self.hypothesis_ok && !self.holds
    }
}

/// Both sides of an operator bound.
#[derive(Debug, Clone)]
pub struct OperatorSides {
    pub lhs: SymMatrix,
    pub rhs: SymMatrix,
}

/// `sum_{k} c_k (X_k)` accumulated from the largest `k` down.
fn accumulate<F>(dim: usize, ks: core::ops::RangeInclusive<u32>, mut term: F) -> Result<SymMatrix, MatrixError>
where
    F: FnMut(u32) -> Result<(f64, SymMatrix), MatrixError>,
{
    let mut acc = SymMatrix::from_diag(&alloc::vec![0.0; dim])?;
    for k in ks.rev() {
        let (c, x) = term(k)?;
        acc.add_scaled(c, &x);
    }
    Ok(acc)
}

/// `X - 2 Y + Z`.
fn second_difference(x: &SymMatrix, y: &SymMatrix, z: &SymMatrix) -> Result<SymMatrix, MatrixError> {
    x.lincomb(1.0, y, -2.0)?.plus(z)
}

/// Assembles `LHS` and `RHS` for one family and branch.
pub fn operator_sides(
    family: OperatorFamily,
    pencil: &MeanPencil,
    w: Weight,
    n: Depth,
    branch: Branch,
) -> Result<OperatorSides, MatrixError> {
    let v = w.value();
    let n = n.get();
    let dim = pencil.dim();
    let a = pencil.a();
    let b = pencil.b();
    let nabla = a.lincomb(0.5, b, 0.5)?;
    let upper = branch == Branch::I;

    match family {
        OperatorFamily::T6 | OperatorFamily::C3 => {
            let heinz = family == OperatorFamily::C3;
            let mean = |x: f64| if heinz { pencil.heinz(x) } else { pencil.geometric(x) };
            let sharp = pencil.geometric(0.5)?;
            let sum = accumulate(dim, 2..=n, |k| {
                let (w1, w2) = if upper {
                    (0.5 + pow2(-(k as i32)), 0.5 + pow2(1 - k as i32))
                } else {
                    (0.5 - pow2(-(k as i32)), 0.5 - pow2(1 - k as i32))
                };
                let t = second_difference(&sharp, &mean(w1)?, &mean(w2)?)?;
                Ok((pow2(k as i32 - 2), t))
            })?;
            let (c1, c2) = if upper {
                (2.0 * (1.0 - v), 2.0 * v - 1.0)
            } else {
                (2.0 * v, 1.0 - 2.0 * v)
            };
            let spread = nabla.minus(&sharp)?;
            let correction = sum.lincomb(c2, &spread, c1)?;
            let lead = mean(v)?;
            let lhs = if heinz {
                nabla
            } else {
                a.lincomb(1.0 - v, b, v)?
            };
            Ok(OperatorSides {
                lhs,
                rhs: lead.plus(&correction)?,
            })
        }
        OperatorFamily::T66 | OperatorFamily::C33 => {
            let heinz = family == OperatorFamily::C33;
            let mean = |x: f64| if heinz { pencil.heinz(x) } else { pencil.geometric(x) };
            let anchor = if heinz {
                nabla.clone()
            } else if upper {
                a.clone()
            } else {
                b.clone()
            };
            let sum = accumulate(dim, 1..=n, |k| {
                let (w1, w2) = if upper {
                    (pow2(-(k as i32)), pow2(1 - k as i32))
                } else {
                    (1.0 - pow2(-(k as i32)), 1.0 - pow2(1 - k as i32))
                };
                let t = second_difference(&anchor, &mean(w1)?, &mean(w2)?)?;
                Ok((pow2(k as i32 - 1), t))
            })?;
            let coef = if upper { v } else { 1.0 - v };
            let lead = mean(v)?;
            let lhs = if heinz {
                nabla
            } else {
                a.lincomb(1.0 - v, b, v)?
            };
            Ok(OperatorSides {
                lhs,
                rhs: lead.lincomb(1.0, &sum, coef)?,
            })
        }
    }
}

/// Evaluates one operator bound on `(A, B)`.
pub fn evaluate_operator(
    family: OperatorFamily,
    a: &SpdMatrix,
    b: &SpdMatrix,
    w: Weight,
    n: Depth,
    branch: Branch,
) -> Result<OperatorBoundReport, MatrixError> {
    if a.dim() != b.dim() {
        return Err(MatrixError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    if n.get() < family.min_depth() {
        return Err(MatrixError::Bound(BoundError::DepthTooSmall {
            family: family.name(),
            depth: n.get(),
            min: family.min_depth(),
        }));
    }
    let branch = if branch == Branch::I { Branch::I } else { Branch::II };
    let v = w.value();
    let hypothesis_ok = family.hypothesis(branch, n.get(), v);
    let fingerprint_a = a.as_sym().fingerprint();
    let fingerprint_b = b.as_sym().fingerprint();
    let base = |min_eig_gap, tol, lhs_norm, rhs_norm, holds, degenerate| OperatorBoundReport {
        family,
        branch,
        dim: a.dim(),
        v,
        n: n.get(),
        min_eig_gap,
        tol,
        lhs_norm,
        rhs_norm,
        hypothesis_ok,
        holds,
        degenerate,
        fingerprint_a,
        fingerprint_b,
    };

    let sep = a.as_sym().minus(b.as_sym())?.frobenius();
    if sep <= DEGENERATE_REL * a.as_sym().frobenius() {
        let norm = a.as_sym().frobenius();
        return Ok(base(0.0, 2.0 * crate::matrix::LOEWNER_REL_TOL * norm, norm, norm, true, true));
    }

    let pencil = MeanPencil::new(a, b)?;
    let sides = operator_sides(family, &pencil, w, n, branch)?;
    let tol = loewner_default_tol(&sides.lhs, &sides.rhs);
    let verdict = loewner_leq(&sides.lhs, &sides.rhs, Some(tol))?;
    Ok(base(
        verdict.min_eig_diff,
        tol,
        sides.lhs.frobenius(),
        sides.rhs.frobenius(),
        verdict.holds,
        false,
    ))
}

pub fn theorem_t6(a: &SpdMatrix, b: &SpdMatrix, w: Weight, n: Depth, branch: Branch) -> Result<OperatorBoundReport, MatrixError> {
    evaluate_operator(OperatorFamily::T6, a, b, w, n, branch)
}

pub fn theorem_t66(a: &SpdMatrix, b: &SpdMatrix, w: Weight, n: Depth, branch: Branch) -> Result<OperatorBoundReport, MatrixError> {
    evaluate_operator(OperatorFamily::T66, a, b, w, n, branch)
}

pub fn corollary_c3(a: &SpdMatrix, b: &SpdMatrix, w: Weight, n: Depth, branch: Branch) -> Result<OperatorBoundReport, MatrixError> {
    evaluate_operator(OperatorFamily::C3, a, b, w, n, branch)
}

pub fn corollary_c33(a: &SpdMatrix, b: &SpdMatrix, w: Weight, n: Depth, branch: Branch) -> Result<OperatorBoundReport, MatrixError> {
    evaluate_operator(OperatorFamily::C33, a, b, w, n, branch)
}
