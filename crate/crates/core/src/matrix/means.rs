use alloc::vec::Vec;

use super::jacobi::{congruence_diag, eigh, EigenDecomp};
use super::{matmul, spd_power, SpdMatrix, SymMatrix, PRODUCT_SYMMETRY_TOL};
use crate::error::MatrixError;
use crate::scalar::Weight;

/// Whether a weight gives a Kubo-Ando mean (`v` in `[0, 1]`) or the same
/// expression on the extended range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanRegime {
    Sharp,
    Natural,
}

impl MeanRegime {
    pub fn of(w: Weight) -> Self {
        if w.in_unit_interval() {
            MeanRegime::Sharp
        } else {
            MeanRegime::Natural
        }
    }
}

fn check_dims(a: &SpdMatrix, b: &SpdMatrix) -> Result<(), MatrixError> {
    if a.dim() != b.dim() {
        return Err(MatrixError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// `(1 - v) A + v B`.
pub fn arithmetic_mean(a: &SpdMatrix, b: &SpdMatrix, w: Weight) -> Result<SymMatrix, MatrixError> {
    check_dims(a, b)?;
    super::weighted_arithmetic(a.as_sym(), b.as_sym(), w)
}

/// Precomputed factorization of the pair `(A, B)` for evaluating
/// `A #_w B = A^(1/2) (A^(-1/2) B A^(-1/2))^w A^(1/2)` at many weights.
///
/// With `A^(-1/2) B A^(-1/2) = U diag(mu) U^T` and `W = A^(1/2) U`, every
/// mean is `W diag(mu^w) W^T`.
#[derive(Debug, Clone)]
pub struct MeanPencil {
    a: SymMatrix,
    b: SymMatrix,
    w: Vec<f64>,
    ln_mu: Vec<f64>,
    inner: EigenDecomp,
}

impl MeanPencil {
    pub fn new(a: &SpdMatrix, b: &SpdMatrix) -> Result<Self, MatrixError> {
        check_dims(a, b)?;
        let n = a.dim();
        let half = spd_power(a, 0.5)?;
        let inv_half = spd_power(a, -0.5)?;
        let ib = matmul(n, inv_half.as_sym().as_slice(), b.as_sym().as_slice());
        let c = matmul(n, &ib, inv_half.as_sym().as_slice());
        let c = SymMatrix::from_rows_with_tol(n, &c, PRODUCT_SYMMETRY_TOL)?;
        let inner = eigh(&c)?;
        let mut ln_mu = Vec::with_capacity(n);
        for &m in inner.eigenvalues() {
            if !(m > 0.0) {
                return Err(MatrixError::NotPositiveDefinite {
                    min_eig: m,
                    threshold: 0.0,
                });
            }
            ln_mu.push(libm::log(m));
        }
        let w = matmul(n, half.as_sym().as_slice(), inner.eigenvectors());
        Ok(Self {
            a: a.as_sym().clone(),
            b: b.as_sym().clone(),
            w,
            ln_mu,
            inner,
        })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn a(&self) -> &SymMatrix {
        &self.a
    }

    pub fn b(&self) -> &SymMatrix {
        &self.b
    }

    /// Spectrum of `A^(-1/2) B A^(-1/2)`, ascending.
    pub fn relative_spectrum(&self) -> &[f64] {
        self.inner.eigenvalues()
    }

    /// `A #_v B` for any real `v`. Weights 0 and 1 return `A` and `B` exactly.
    pub fn geometric(&self, v: f64) -> Result<SymMatrix, MatrixError> {
        if v == 0.0 {
            return Ok(self.a.clone());
        }
        if v == 1.0 {
            return Ok(self.b.clone());
        }
        self.map(|ln_t| libm::exp(v * ln_t))
    }

    /// `(A #_v B + A #_(1-v) B) / 2`.
    pub fn heinz(&self, v: f64) -> Result<SymMatrix, MatrixError> {
        let x = self.geometric(v)?;
        let y = self.geometric(1.0 - v)?;
        x.lincomb(0.5, &y, 0.5)
    }

    /// `A^(1/2) f(A^(-1/2) B A^(-1/2)) A^(1/2)`, with `f` given as a function
    /// of `ln t`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Result<SymMatrix, MatrixError> {
        let mut mu = Vec::with_capacity(self.ln_mu.len());
        for &l in &self.ln_mu {
            let m = f(l);
            if !m.is_finite() {
                return Err(MatrixError::Overflow {
                    eigenvalue: libm::exp(l),
                    power: f64::NAN,
                });
            }
            mu.push(m);
        }
        Ok(congruence_diag(self.dim(), &self.w, &mu))
    }
}

/// `A #_v B` (for `v` outside `[0, 1]` the same expression, often written
/// with a natural sign). The output is certified to have a positive spectrum.
pub fn geometric_mean(a: &SpdMatrix, b: &SpdMatrix, w: Weight) -> Result<SpdMatrix, MatrixError> {
    let pencil = MeanPencil::new(a, b)?;
    SpdMatrix::new_positive(pencil.geometric(w.value())?)
}

/// Heinz operator mean `(A #_v B + A #_(1-v) B) / 2`.
pub fn heinz_mean(a: &SpdMatrix, b: &SpdMatrix, w: Weight) -> Result<SpdMatrix, MatrixError> {
    let pencil = MeanPencil::new(a, b)?;
    SpdMatrix::new_positive(pencil.heinz(w.value())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: f64) -> Weight {
        Weight::new(v).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = SpdMatrix::from_diag(&[1.0, 4.0]).unwrap();
        let b = SpdMatrix::from_diag(&[16.0, 1.0]).unwrap();
        let m = arithmetic_mean(&a, &b, w(0.125)).unwrap();
        assert_eq!(m.diagonal(), [2.875, 3.625]);
        assert_eq!(&arithmetic_mean(&a, &b, w(0.0)).unwrap(), a.as_sym());
        assert_eq!(&arithmetic_mean(&a, &a, w(0.37)).unwrap(), a.as_sym());
    }

    #[test]
    fn geometric_commuting_case() {
        let a = SpdMatrix::from_diag(&[1.0, 4.0]).unwrap();
        let b = SpdMatrix::from_diag(&[16.0, 1.0]).unwrap();
        let g = geometric_mean(&a, &b, w(0.125)).unwrap();
        let d = g.as_sym().diagonal();
        assert!((d[0] - 2f64.sqrt()).abs() < 1e-14);
        assert!((d[1] - 4f64.powf(0.875)).abs() < 1e-14);
        assert!((d[1] - 3.3635857).abs() < 1e-7);
        assert!(g.as_sym().get(0, 1).abs() < 1e-15);
    }

    #[test]
    fn geometric_of_equal_pair_is_identity_map() {
        let a = SpdMatrix::from_rows(2, &[3.0, 1.0, 1.0, 2.0]).unwrap();
        for v in [-2.0, 0.3, 0.5, 4.0] {
            let g = geometric_mean(&a, &a, w(v)).unwrap();
            assert!(g.as_sym().minus(a.as_sym()).unwrap().frobenius() < 1e-13);
        }
    }

    #[test]
    fn heinz_endpoints_and_commuting_case() {
        let a = SpdMatrix::from_rows(2, &[3.0, 1.0, 1.0, 2.0]).unwrap();
        let b = SpdMatrix::from_rows(2, &[1.0, -0.5, -0.5, 4.0]).unwrap();
        let h0 = heinz_mean(&a, &b, w(0.0)).unwrap();
        let nabla = arithmetic_mean(&a, &b, w(0.5)).unwrap();
        assert!(h0.as_sym().minus(&nabla).unwrap().frobenius() < 1e-14);

        let a = SpdMatrix::from_diag(&[1.0, 4.0]).unwrap();
        let b = SpdMatrix::from_diag(&[16.0, 1.0]).unwrap();
        let h = heinz_mean(&a, &b, w(0.125)).unwrap();
        let d = h.as_sym().diagonal();
        assert!((d[0] - 6.3639610).abs() < 1e-7);
        assert!((d[1] - (4f64.powf(0.875) + 4f64.powf(0.125)) / 2.0).abs() < 1e-14);
        assert!((d[1] - 2.2763964).abs() < 1e-7);
    }

    #[test]
    fn regime_flag() {
        assert_eq!(MeanRegime::of(w(0.0)), MeanRegime::Sharp);
        assert_eq!(MeanRegime::of(w(1.0)), MeanRegime::Sharp);
        assert_eq!(MeanRegime::of(w(-0.1)), MeanRegime::Natural);
    }

    #[test]
    fn dimension_mismatch() {
        let a = SpdMatrix::from_diag(&[1.0, 4.0]).unwrap();
        let b = SpdMatrix::from_diag(&[1.0]).unwrap();
        assert!(matches!(
            geometric_mean(&a, &b, w(0.5)),
            Err(MatrixError::DimensionMismatch { .. })
        ));
    }
}
