//! Dense rank-3 tensors used for structure constants and bilinear maps.

use nalgebra::{DMatrix, DVector};

/// Dense tensor `t[k][i][j]` representing the bilinear map
/// `(x, y) ↦ Σ_k (Σ_ij t[k][i][j] x_i y_j) e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    shape: (usize, usize, usize),
    data: Vec<f64>,
}

impl Tensor3 {
    pub fn zeros(out: usize, left: usize, right: usize) -> Self {
        Self {
            shape: (out, left, right),
            data: vec![0.0; out * left * right],
        }
    }

    /// `(output, left, right)` dimensions.
    pub fn shape(&self) -> (usize, usize, usize) {
        self.shape
    }

    #[inline]
    fn idx(&self, k: usize, i: usize, j: usize) -> usize {
        let (d0, d1, d2) = self.shape;
        assert!(k < d0 && i < d1 && j < d2, "tensor index out of range");
        (k * d1 + i) * d2 + j
    }

    #[inline]
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.data[self.idx(k, i, j)]
    }

    #[inline]
    pub fn set(&mut self, k: usize, i: usize, j: usize, v: f64) {
        let n = self.idx(k, i, j);
        self.data[n] = v;
    }

    #[inline]
    pub fn add(&mut self, k: usize, i: usize, j: usize, v: f64) {
        let n = self.idx(k, i, j);
        self.data[n] += v;
    }

    /// Nonzero entries as `(k, i, j, value)`.
    pub fn nonzeros(&self) -> Vec<(usize, usize, usize, f64)> {
        let (d0, d1, d2) = self.shape;
        let mut out = Vec::new();
        for k in 0..d0 {
            for i in 0..d1 {
                for j in 0..d2 {
                    let v = self.get(k, i, j);
                    if v != 0.0 {
                        out.push((k, i, j, v));
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&mut self, s: f64) {
        self.data.iter_mut().for_each(|v| *v *= s);
    }

    /// Full contraction `Σ_ij t[k][i][j] x_i y_j`.
    pub fn apply(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let (d0, d1, d2) = self.shape;
        debug_assert_eq!(x.len(), d1);
        debug_assert_eq!(y.len(), d2);
        let mut out = DVector::zeros(d0);
        for k in 0..d0 {
            let mut s = 0.0;
            for i in 0..d1 {
                if x[i] == 0.0 {
                    continue;
                }
                let base = (k * d1 + i) * d2;
                let row = &self.data[base..base + d2];
                let mut r = 0.0;
                for (j, t) in row.iter().enumerate() {
                    r += t * y[j];
                }
                s += x[i] * r;
            }
            out[k] = s;
        }
        out
    }

    /// Matrix of `y ↦ t(x, y)`: `M[k][j] = Σ_i t[k][i][j] x_i`.
    pub fn left_matrix(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let (d0, d1, d2) = self.shape;
        debug_assert_eq!(x.len(), d1);
        let mut m = DMatrix::zeros(d0, d2);
        for k in 0..d0 {
            for i in 0..d1 {
                if x[i] == 0.0 {
                    continue;
                }
                for j in 0..d2 {
                    m[(k, j)] += self.get(k, i, j) * x[i];
                }
            }
        }
        m
    }

    /// Matrix of `x ↦ t(x, y)`: `M[k][i] = Σ_j t[k][i][j] y_j`.
    pub fn right_matrix(&self, y: &DVector<f64>) -> DMatrix<f64> {
        let (d0, d1, d2) = self.shape;
        debug_assert_eq!(y.len(), d2);
        let mut m = DMatrix::zeros(d0, d1);
        for k in 0..d0 {
            for i in 0..d1 {
                let mut s = 0.0;
                for j in 0..d2 {
                    s += self.get(k, i, j) * y[j];
                }
                m[(k, i)] = s;
            }
        }
        m
    }
}
