//! Cyclic Jacobi eigensolver for dense real symmetric matrices.

use alloc::vec;
use alloc::vec::Vec;

use super::SymMatrix;
use crate::error::MatrixError;

/// Maximum number of full sweeps.
pub const MAX_SWEEPS: usize = 30;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to `||A||_F`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Spectral factorization `A = Q diag(lambda) Q^T`.
///
/// `q` is stored row-major; column `j` is the eigenvector of `lambda[j]`.
/// Eigenvalues are ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomp {
    dim: usize,
    q: Vec<f64>,
    lambda: Vec<f64>,
}

impl EigenDecomp {
    pub(crate) fn from_parts(dim: usize, q: Vec<f64>, lambda: Vec<f64>) -> Self {
        debug_assert_eq!(q.len(), dim * dim);
        debug_assert_eq!(lambda.len(), dim);
        Self { dim, q, lambda }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.lambda
    }

    /// Row-major eigenvector matrix.
    pub fn eigenvectors(&self) -> &[f64] {
        &self.q
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.lambda[0]
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.lambda.iter().fold(0.0f64, |m, x| m.max(libm::fabs(*x)))
    }

    /// `Q diag(f(lambda)) Q^T`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> SymMatrix {
        let mu: Vec<f64> = self.lambda.iter().map(|&l| f(l)).collect();
        congruence_diag(self.dim, &self.q, &mu)
    }

    /// `Q diag(lambda) Q^T`.
    pub fn reconstruct(&self) -> SymMatrix {
        congruence_diag(self.dim, &self.q, &self.lambda)
    }

    /// `||Q^T Q - I||_F`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.q[k * n + i] * self.q[k * n + j];
                }
                let d = if i == j { s - 1.0 } else { s };
                acc += d * d;
            }
        }
        libm::sqrt(acc)
    }
}

/// `W diag(mu) W^T` for a row-major square `w`, built from the upper
/// triangle so the result is exactly symmetric.
pub(crate) fn congruence_diag(n: usize, w: &[f64], mu: &[f64]) -> SymMatrix {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut s = 0.0;
            for k in 0..n {
                s += w[i * n + k] * mu[k] * w[j * n + k];
            }
            out[i * n + j] = s;
            out[j * n + i] = s;
        }
    }
    SymMatrix::from_symmetric_unchecked(n, out)
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j] * a[i * n + j];
            }
        }
    }
    libm::sqrt(acc)
}

/// Full eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps stop once the off-diagonal norm is at most
/// `OFF_DIAGONAL_TOL * ||A||_F` and a complete sweep found nothing left to
/// rotate (every `|a_pq| <= eps * sqrt(|a_pp a_qq|)`), or after
/// [`MAX_SWEEPS`] sweeps. Failing the norm test at that point is an error.
pub fn eigh(s: &SymMatrix) -> Result<EigenDecomp, MatrixError> {
    let n = s.dim();
    let mut a = s.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let limit = OFF_DIAGONAL_TOL * s.frobenius();

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a, n);
        if sweeps == MAX_SWEEPS {
            if off <= limit {
                break;
            }
            return Err(MatrixError::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        if off == 0.0 {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                if apq == 0.0 || libm::fabs(apq) <= f64::EPSILON * libm::sqrt(libm::fabs(app * aqq)) {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_finite() {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (libm::fabs(theta) + libm::hypot(theta, 1.0))
                } else {
                    0.0
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let sn = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - sn * akq;
                    a[k * n + q] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - sn * aqk;
                    a[q * n + k] = sn * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - sn * vkq;
                    v[k * n + q] = sn * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        if !rotated && off_norm(&a, n) <= limit {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let lambda: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let mut q = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            q[row * n + col] = v[row * n + src];
        }
    }
    Ok(EigenDecomp::from_parts(n, q, lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input_sorts() {
        let m = SymMatrix::from_diag(&[3.0, 1.0]).unwrap();
        let e = eigh(&m).unwrap();
        assert_eq!(e.eigenvalues(), &[1.0, 3.0]);
        let q = e.eigenvectors();
        assert_eq!(q, &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = SymMatrix::from_rows(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let e = eigh(&m).unwrap();
        let l = e.eigenvalues();
        assert!((l[0] - 1.0).abs() < 1e-15 && (l[1] - 3.0).abs() < 1e-15);
        let q = e.eigenvectors();
        let r = core::f64::consts::FRAC_1_SQRT_2;
        // column 0 ~ (1, -1)/sqrt2, column 1 ~ (1, 1)/sqrt2, up to sign
        assert!((q[0].abs() - r).abs() < 1e-15 && (q[0] + q[2]).abs() < 1e-15);
        assert!((q[1].abs() - r).abs() < 1e-15 && (q[1] - q[3]).abs() < 1e-15);
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let m = SymMatrix::identity(5);
        let e = eigh(&m).unwrap();
        assert!(e.eigenvalues().iter().all(|&x| x == 1.0));
        assert_eq!(e.reconstruct().minus(&m).unwrap().frobenius(), 0.0);
    }

    #[test]
    fn indefinite_matrix_converges() {
        let m = SymMatrix::from_rows(
            3,
            &[1.0, 4.0, -2.0, 4.0, -3.0, 0.5, -2.0, 0.5, 0.0],
        )
        .unwrap();
        let e = eigh(&m).unwrap();
        let res = e.reconstruct().minus(&m).unwrap().frobenius();
        assert!(res <= 1e-13 * m.frobenius(), "{res}");
        assert!(e.orthogonality_residual() <= 1e-14);
        let trace: f64 = e.eigenvalues().iter().sum();
        assert!((trace - (-2.0)).abs() < 1e-13);
    }
}
