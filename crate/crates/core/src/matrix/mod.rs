//! Dense symmetric matrices, SPD certification, spectral powers, operator
//! means and the Loewner order.

mod jacobi;
mod means;

pub use jacobi::{eigh, EigenDecomp, MAX_SWEEPS, OFF_DIAGONAL_TOL};
pub use means::{arithmetic_mean, geometric_mean, heinz_mean, MeanPencil, MeanRegime};

use alloc::vec;
use alloc::vec::Vec;

use crate::error::MatrixError;
use crate::scalar::Weight;

/// Largest tolerated asymmetry `||(M - M^T)/2||_F` at construction, relative to `||M||_F`.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Asymmetry tolerated in intermediate products before they are symmetrized.
pub const PRODUCT_SYMMETRY_TOL: f64 = 1e-10;
/// Per-dimension SPD threshold: `lambda_min > dim * SPD_REL_TOL * ||A||_2`.
pub const SPD_REL_TOL: f64 = 1e-14;
/// Default Loewner tolerance factor on `||A||_F + ||B||_F`.
pub const LOEWNER_REL_TOL: f64 = 1e-8;

/// Real symmetric matrix, stored dense and row-major. Symmetry is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
    asymmetry: f64,
}

impl SymMatrix {
    /// Builds from row-major entries, symmetrizing as `(M + M^T) / 2`.
    /// Fails if the asymmetry residual exceeds `SYMMETRY_TOL * ||M||_F`.
    pub fn from_rows(dim: usize, entries: &[f64]) -> Result<Self, MatrixError> {
        Self::from_rows_with_tol(dim, entries, SYMMETRY_TOL)
    }

    pub(crate) fn from_rows_with_tol(dim: usize, entries: &[f64], tol: f64) -> Result<Self, MatrixError> {
        if dim == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        if entries.len() != dim * dim {
            return Err(MatrixError::Shape {
                dim,
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(MatrixError::NonFinite);
        }
        let mut data = vec![0.0; dim * dim];
        let mut skew = 0.0;
        let mut norm = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let x = entries[i * dim + j];
                let y = entries[j * dim + i];
                data[i * dim + j] = if i == j { x } else { 0.5 * (x + y) };
                let d = 0.5 * (x - y);
                skew += d * d;
                norm += x * x;
            }
        }
        let residual = libm::sqrt(skew);
        let limit = tol * libm::sqrt(norm);
        if residual > limit {
            return Err(MatrixError::Asymmetric { residual, limit });
        }
        // the symmetrized upper triangle is authoritative
        for i in 0..dim {
            for j in (i + 1)..dim {
                data[j * dim + i] = data[i * dim + j];
            }
        }
        Ok(Self {
            dim,
            data,
            asymmetry: residual,
        })
    }

    pub(crate) fn from_symmetric_unchecked(dim: usize, data: Vec<f64>) -> Self {
        Self {
            dim,
            data,
            asymmetry: 0.0,
        }
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self, MatrixError> {
        let n = diag.len();
        if n == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        if diag.iter().any(|x| !x.is_finite()) {
            return Err(MatrixError::NonFinite);
        }
        let mut data = vec![0.0; n * n];
        for (i, d) in diag.iter().enumerate() {
            data[i * n + i] = *d;
        }
        Ok(Self::from_symmetric_unchecked(n, data))
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Self::from_symmetric_unchecked(dim, data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Asymmetry residual removed at construction.
    pub fn asymmetry(&self) -> f64 {
        self.asymmetry
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x * x).sum())
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| i == j || self.data[i * n + j] == 0.0))
    }

    fn check_dim(&self, other: &SymMatrix) -> Result<(), MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// `alpha * self + beta * other`.
    pub fn lincomb(&self, alpha: f64, other: &SymMatrix, beta: f64) -> Result<SymMatrix, MatrixError> {
        self.check_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| alpha * x + beta * y)
            .collect();
        Ok(Self::from_symmetric_unchecked(self.dim, data))
    }

    pub fn plus(&self, other: &SymMatrix) -> Result<SymMatrix, MatrixError> {
        self.lincomb(1.0, other, 1.0)
    }

    pub fn minus(&self, other: &SymMatrix) -> Result<SymMatrix, MatrixError> {
        self.lincomb(1.0, other, -1.0)
    }

    pub fn scaled(&self, s: f64) -> SymMatrix {
        Self::from_symmetric_unchecked(self.dim, self.data.iter().map(|x| s * x).collect())
    }

    /// In-place `self += s * other`.
    pub(crate) fn add_scaled(&mut self, s: f64, other: &SymMatrix) {
        debug_assert_eq!(self.dim, other.dim);
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += s * y;
        }
    }

    /// 64-bit FNV-1a digest of the dimension and entry bit patterns.
    pub fn fingerprint(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut h = OFFSET;
        let mut eat = |bytes: [u8; 8]| {
            for byte in bytes {
                h ^= byte as u64;
                h = h.wrapping_mul(PRIME);
            }
        };
        eat((self.dim as u64).to_le_bytes());
        for x in &self.data {
            eat(x.to_bits().to_le_bytes());
        }
        h
    }
}

/// Row-major dense product of two square matrices.
pub(crate) fn matmul(n: usize, x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let xik = x[i * n + k];
            if xik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += xik * y[k * n + j];
            }
        }
    }
    out
}

/// Symmetric positive-definite matrix with its cached spectral factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdMatrix {
    base: SymMatrix,
    eig: EigenDecomp,
    certified_min_eig: f64,
}

impl SpdMatrix {
    /// Certifies `lambda_min > dim * 1e-14 * ||A||_2`; near-singular input is
    /// rejected, never regularized.
    pub fn new(base: SymMatrix) -> Result<Self, MatrixError> {
        let eig = eigh(&base)?;
        let min_eig = eig.min_eigenvalue();
        let threshold = base.dim() as f64 * SPD_REL_TOL * eig.max_abs_eigenvalue();
        if !(min_eig > threshold) {
            return Err(MatrixError::NotPositiveDefinite { min_eig, threshold });
        }
        Ok(Self {
            base,
            eig,
            certified_min_eig: min_eig,
        })
    }

    /// Accepts any strictly positive computed spectrum. Used for derived
    /// matrices (powers, means) whose conditioning may legitimately exceed
    /// the construction threshold.
    pub(crate) fn new_positive(base: SymMatrix) -> Result<Self, MatrixError> {
        let eig = eigh(&base)?;
        let min_eig = eig.min_eigenvalue();
        if !(min_eig > 0.0) {
            return Err(MatrixError::NotPositiveDefinite {
                min_eig,
                threshold: 0.0,
            });
        }
        Ok(Self {
            base,
            eig,
            certified_min_eig: min_eig,
        })
    }

    pub fn from_rows(dim: usize, entries: &[f64]) -> Result<Self, MatrixError> {
        Self::new(SymMatrix::from_rows(dim, entries)?)
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self, MatrixError> {
        Self::new(SymMatrix::from_diag(diag)?)
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn as_sym(&self) -> &SymMatrix {
        &self.base
    }

    pub fn into_sym(self) -> SymMatrix {
        self.base
    }

    pub fn decomposition(&self) -> &EigenDecomp {
        &self.eig
    }

    pub fn certified_min_eig(&self) -> f64 {
        self.certified_min_eig
    }
}

/// `Q diag(lambda^p) Q^T`. The result's factorization is inherited from the
/// input, so no second eigensolve is needed.
pub fn spd_power(a: &SpdMatrix, p: f64) -> Result<SpdMatrix, MatrixError> {
    let e = a.decomposition();
    let n = e.dim();
    let mut mu = Vec::with_capacity(n);
    for &l in e.eigenvalues() {
        let m = if p == 1.0 { l } else { libm::exp(p * libm::log(l)) };
        if !m.is_finite() || m <= 0.0 {
            return Err(MatrixError::Overflow { eigenvalue: l, power: p });
        }
        mu.push(m);
    }
    let base = if p == 1.0 {
        a.as_sym().clone()
    } else {
        jacobi::congruence_diag(n, e.eigenvectors(), &mu)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| mu[i].total_cmp(&mu[j]));
    let q_src = e.eigenvectors();
    let mut q = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            q[row * n + col] = q_src[row * n + src];
        }
    }
    let lambda: Vec<f64> = order.iter().map(|&i| mu[i]).collect();
    let certified_min_eig = lambda[0];
    Ok(SpdMatrix {
        base,
        eig: EigenDecomp::from_parts(n, q, lambda),
        certified_min_eig,
    })
}

/// Outcome of an `A <= B` test in the Loewner order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoewnerVerdict {
    /// Smallest eigenvalue of `B - A`.
    pub min_eig_diff: f64,
    pub tol: f64,
    pub holds: bool,
}

/// Default Loewner tolerance `1e-8 * (||A||_F + ||B||_F)`.
pub fn loewner_default_tol(a: &SymMatrix, b: &SymMatrix) -> f64 {
    LOEWNER_REL_TOL * (a.frobenius() + b.frobenius())
}

/// Decides `A <= B` via the smallest eigenvalue of `B - A`.
pub fn loewner_leq(a: &SymMatrix, b: &SymMatrix, tol: Option<f64>) -> Result<LoewnerVerdict, MatrixError> {
    let diff = b.minus(a)?;
    let tol = tol.unwrap_or_else(|| loewner_default_tol(a, b));
    let min_eig_diff = eigh(&diff)?.min_eigenvalue();
    Ok(LoewnerVerdict {
        min_eig_diff,
        tol,
        holds: min_eig_diff >= -tol,
    })
}

/// `A nabla_v B` as a plain symmetric matrix (it need not be SPD for `v` outside `[0, 1]`).
pub fn weighted_arithmetic(a: &SymMatrix, b: &SymMatrix, w: Weight) -> Result<SymMatrix, MatrixError> {
    let v = w.value();
    a.lincomb(1.0 - v, b, v)
}
