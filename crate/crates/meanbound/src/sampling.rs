//! Hypothesis-aware sampling of weights and random SPD matrices.

use meanbound_core::scalar::Window;
use meanbound_core::{SpdMatrix, SymMatrix, Weight};
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::{uniform, Rng};

/// Admissible `v` for a window, clipped to `v_range` and kept at least
/// `margin` away from the window's endpoints: a union of at most two closed
/// intervals of positive length.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub pieces: Vec<(f64, f64)>,
}

impl Region {
    pub fn new(window: Window, v_range: (f64, f64), margin: f64) -> Self {
        let (vlo, vhi) = v_range;
        let raw = if window.complement {
            vec![(vlo, vhi.min(window.lo - margin)), (vlo.max(window.hi + margin), vhi)]
        } else {
            vec![(vlo.max(window.lo + margin), vhi.min(window.hi - margin))]
        };
        Self {
            pieces: raw.into_iter().filter(|(a, b)| a < b).collect(),
        }
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(|(a, b)| b - a).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, v: f64) -> bool {
        self.pieces.iter().any(|&(a, b)| a <= v && v <= b)
    }

    /// Uniform draw over the union.
    pub fn sample(&self, rng: &mut Rng) -> Option<f64> {
        let total = self.length();
        if self.is_empty() {
            return None;
        }
        let mut u = uniform(rng, 0.0, total);
        for &(a, b) in &self.pieces {
            let len = b - a;
            if u <= len {
                return Some((a + u).clamp(a, b));
            }
            u -= len;
        }
        self.pieces.last().map(|&(_, b)| b)
    }
}

/// Uniform `v` over a window's admissible region. An empty region is an
/// error: the configured `v_range` lies entirely inside the excluded set.
pub fn sample_weight(window: Window, v_range: (f64, f64), margin: f64, rng: &mut Rng) -> Result<Weight> {
    let region = Region::new(window, v_range, margin);
    let v = region.sample(rng).ok_or_else(|| {
        Error::EmptyRegion(format!(
            "{} [{}, {}] clipped to [{}, {}] with margin {}",
            if window.complement { "complement of" } else { "interval" },
            window.lo,
            window.hi,
            v_range.0,
            v_range.1,
            margin
        ))
    })?;
    Ok(Weight::new(v)?)
}

/// `Q diag(lambda) Q^T` with `Q` from Gram-Schmidt on a standard Gaussian
/// matrix and `lambda_i` log-uniform in `[1/sqrt(cond_max), sqrt(cond_max)]`.
pub fn random_spd(dim: usize, cond_max: f64, rng: &mut Rng) -> Result<SpdMatrix> {
    if dim == 0 {
        return Err(Error::Config("dim must be positive".into()));
    }
    if !(cond_max >= 1.0) {
        return Err(Error::Config(format!("cond_max must be >= 1, got {cond_max}")));
    }
    let q = random_orthogonal(dim, rng);
    let half = 0.5 * cond_max.ln();
    let lambda: Vec<f64> = (0..dim).map(|_| uniform(rng, -half, half).exp()).collect();
    let mut m = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let s: f64 = (0..dim).map(|k| q[i * dim + k] * lambda[k] * q[j * dim + k]).sum();
            m[i * dim + j] = s;
            m[j * dim + i] = s;
        }
    }
    Ok(SpdMatrix::new(SymMatrix::from_rows(dim, &m)?)?)
}

/// Row-major orthogonal matrix whose columns come from modified
/// Gram-Schmidt; a column that collapses is redrawn.
fn random_orthogonal(dim: usize, rng: &mut Rng) -> Vec<f64> {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut c: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        for prev in &cols {
            let d: f64 = prev.iter().zip(&c).map(|(p, x)| p * x).sum();
            for (x, p) in c.iter_mut().zip(prev) {
                *x -= d * p;
            }
        }
        let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            c.iter_mut().for_each(|x| *x /= norm);
            cols.push(c);
        }
    }
    let mut q = vec![0.0; dim * dim];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..dim {
            q[i * dim + j] = c[i];
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;

    #[test]
    fn complement_region_examples() {
        let r = Region::new(Window::outside(0.5, 0.75), (-2.0, 3.0), 1e-6);
        assert_eq!(r.pieces, vec![(-2.0, 0.5 - 1e-6), (0.75 + 1e-6, 3.0)]);
        let r = Region::new(Window::outside(0.0, 0.125), (0.2, 0.3), 1e-6);
        assert_eq!(r.pieces, vec![(0.2, 0.3)]);
        let mut rng = substream(0, 0, 0);
        let e = sample_weight(Window::outside(0.0, 1.0), (0.1, 0.9), 1e-6, &mut rng);
        assert!(matches!(e, Err(Error::EmptyRegion(_))));
    }

    #[test]
    fn samples_respect_region() {
        let w = Window::outside(0.5, 0.75);
        let r = Region::new(w, (-2.0, 3.0), 1e-6);
        let mut rng = substream(5, 0, 0);
        let mut left = 0;
        for _ in 0..2000 {
            let v = sample_weight(w, (-2.0, 3.0), 1e-6, &mut rng).unwrap().value();
            assert!(r.contains(v) && w.admits(v));
            if v < 0.5 {
                left += 1;
            }
        }
        // 2.5 of the 4.75 admissible length lies left of the window.
        let frac = left as f64 / 2000.0;
        assert!((frac - 2.5 / 4.75).abs() < 0.05, "{frac}");
    }

    #[test]
    fn inside_region_shrinks_by_margin() {
        let r = Region::new(Window::inside(0.0, 0.5), (-6.0, 6.0), 1e-6);
        assert_eq!(r.pieces, vec![(1e-6, 0.5 - 1e-6)]);
    }

    #[test]
    fn random_spd_properties() {
        let mut rng = substream(3, 0, 0);
        let a = random_spd(1, 1e4, &mut rng).unwrap();
        let x = a.as_sym().get(0, 0);
        assert!((1e-2..=1e2).contains(&x));

        let a = random_spd(4, 1e4, &mut rng).unwrap();
        assert!(a.certified_min_eig() >= 1e-2 * (1.0 - 1e-9));
        let top = a.decomposition().eigenvalues()[3];
        assert!(top <= 1e2 * (1.0 + 1e-9));

        let x = random_spd(6, 100.0, &mut substream(9, 1, 2)).unwrap();
        let y = random_spd(6, 100.0, &mut substream(9, 1, 2)).unwrap();
        assert_eq!(x.as_sym(), y.as_sym());
    }
}
