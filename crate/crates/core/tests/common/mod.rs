#![allow(dead_code)]

use meanbound_core::{SpdMatrix, SymMatrix};
use proptest::prelude::*;

/// `X X^T + shift I` from row-major `X`.
pub fn gram(dim: usize, x: &[f64], shift: f64) -> SpdMatrix {
    let mut m = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut s = 0.0;
            for k in 0..dim {
                s += x[i * dim + k] * x[j * dim + k];
            }
            m[i * dim + j] = s;
        }
        m[i * dim + i] += shift;
    }
    SpdMatrix::from_rows(dim, &m).unwrap()
}

pub fn spd(dim: usize) -> impl Strategy<Value = SpdMatrix> {
    (prop::collection::vec(-2.0f64..2.0, dim * dim), 0.05f64..2.0).prop_map(move |(x, s)| gram(dim, &x, s))
}

pub fn spd_pair() -> impl Strategy<Value = (SpdMatrix, SpdMatrix)> {
    (1usize..=5).prop_flat_map(|d| (spd(d), spd(d)))
}

pub fn sym(dim: usize) -> impl Strategy<Value = SymMatrix> {
    prop::collection::vec(-10.0f64..10.0, dim * dim).prop_map(move |x| {
        let mut m = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                m[i * dim + j] = 0.5 * (x[i * dim + j] + x[j * dim + i]);
            }
        }
        SymMatrix::from_rows(dim, &m).unwrap()
    })
}

pub fn product(a: &SymMatrix, b: &SymMatrix) -> Vec<f64> {
    let n = a.dim();
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = (0..n).map(|k| a.get(i, k) * b.get(k, j)).sum();
        }
    }
    out
}

pub fn rel_dist(x: &SymMatrix, y: &SymMatrix) -> f64 {
    x.minus(y).unwrap().frobenius() / (x.frobenius() + y.frobenius()).max(f64::MIN_POSITIVE)
}
