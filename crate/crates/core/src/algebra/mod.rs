//! Finite-dimensional Lie algebras given by structure constants.
//!
//! Covectors are expressed in the dual basis, so the pairing `⟨μ, ξ⟩` is the
//! coordinate dot product.

pub mod presets;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::tensor::Tensor3;

pub const DEFAULT_TOL: f64 = 1e-10;

/// A Lie algebra with `[e_i, e_j] = Σ_k c[k][i][j] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    c: Tensor3,
    tol: f64,
}

/// Outcome of [`LieAlgebra::validate`].
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub antisymmetry: f64,
    pub antisymmetry_witness: Option<(usize, usize, usize)>,
    pub jacobi: f64,
    pub jacobi_witness: Option<(usize, usize, usize)>,
    pub tol: f64,
    pub passed: bool,
}

fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl LieAlgebra {
    /// Builds an algebra from entries `(k, i, j, value)` with `i < j`; the
    /// `(k, j, i)` entries are filled in by antisymmetry. Entries with
    /// `i > j` are flipped, diagonal entries are rejected.
    pub fn from_sparse(
        dim: usize,
        labels: Option<Vec<String>>,
        entries: &[(usize, usize, usize, f64)],
    ) -> Result<Self> {
        let mut c = Tensor3::zeros(dim, dim, dim);
        for &(k, i, j, v) in entries {
            if k >= dim || i >= dim || j >= dim {
                return Err(Error::InvalidStructure(format!(
                    "entry ({k},{i},{j}) out of range for dim {dim}"
                )));
            }
            if i == j {
                return Err(Error::InvalidStructure(format!(
                    "diagonal entry ({k},{i},{j}) violates antisymmetry"
                )));
            }
            let (i, j, v) = if i < j { (i, j, v) } else { (j, i, -v) };
            c.add(k, i, j, v);
            c.add(k, j, i, -v);
        }
        Self::from_tensor(labels, c)
    }

    /// Builds an algebra from a full tensor, rejecting any antisymmetry defect.
    pub fn from_tensor(labels: Option<Vec<String>>, c: Tensor3) -> Result<Self> {
        let a = Self::from_tensor_unchecked(labels, c)?;
        let (res, w) = a.antisymmetry_residual();
        if res != 0.0 {
            let (k, i, j) = w.unwrap_or_default();
            return Err(Error::InvalidStructure(format!(
                "c[{k}][{i}][{j}] + c[{k}][{j}][{i}] = {res:e}"
            )));
        }
        Ok(a)
    }

    /// Builds an algebra without checking antisymmetry, so that
    /// [`validate`](Self::validate) can report on arbitrary tensors.
    pub fn from_tensor_unchecked(labels: Option<Vec<String>>, c: Tensor3) -> Result<Self> {
        let (d0, d1, d2) = c.shape();
        if d0 != d1 || d1 != d2 {
            return Err(Error::InvalidStructure(format!(
                "structure tensor must be cubic, got {d0}x{d1}x{d2}"
            )));
        }
        let labels = labels.unwrap_or_else(|| default_labels("e", d0));
        check_dim(d0, labels.len())?;
        Ok(Self {
            dim: d0,
            labels,
            c,
            tol: DEFAULT_TOL,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_dim(self.dim, labels.len())?;
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn structure(&self) -> &Tensor3 {
        &self.c
    }

    pub fn basis(&self, i: usize) -> DVector<f64> {
        let mut e = DVector::zeros(self.dim);
        e[i] = 1.0;
        e
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.dim, x.len())?;
        check_dim(self.dim, y.len())?;
        Ok(self.c.apply(x, y))
    }

    /// Matrix of `ad_x`, so that `ad_matrix(x) * y = [x, y]`.
    pub fn ad_matrix(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        check_dim(self.dim, x.len())?;
        Ok(self.c.left_matrix(x))
    }

    /// Matrix of `ad*_x = -(ad_x)ᵀ`.
    pub fn coad_matrix(&self, x: &DVector<f64>) -> Result<DMatrix<f64>> {
        Ok(-self.ad_matrix(x)?.transpose())
    }

    /// `ad*_x μ`.
    pub fn coad(&self, x: &DVector<f64>, mu: &DVector<f64>) -> Result<DVector<f64>> {
        check_dim(self.dim, mu.len())?;
        Ok(self.coad_matrix(x)? * mu)
    }

    fn antisymmetry_residual(&self) -> (f64, Option<(usize, usize, usize)>) {
        let n = self.dim;
        let mut worst = 0.0;
        let mut witness = None;
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let r = (self.c.get(k, i, j) + self.c.get(k, j, i)).abs();
                    if r > worst {
                        worst = r;
                        witness = Some((k, i, j));
                    }
                }
            }
        }
        (worst, witness)
    }

    /// Jacobiator `[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, l: usize) -> DVector<f64> {
        let n = self.dim;
        let mut out = DVector::zeros(n);
        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
            for m in 0..n {
                let s = self.c.get(m, a, b);
                if s == 0.0 {
                    continue;
                }
                for (q, o) in out.iter_mut().enumerate() {
                    *o += s * self.c.get(q, m, c);
                }
            }
        }
        out
    }

    /// Checks antisymmetry and the Jacobi identity over all basis triples.
    pub fn validate(&self) -> ValidationReport {
        let (antisymmetry, antisymmetry_witness) = self.antisymmetry_residual();
        let n = self.dim;
        let mut jacobi = 0.0;
        let mut jacobi_witness = None;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let r = self.jacobiator(i, j, l).amax();
                    if r > jacobi {
                        jacobi = r;
                        jacobi_witness = Some((i, j, l));
                    }
                }
            }
        }
        ValidationReport {
            antisymmetry,
            antisymmetry_witness,
            jacobi,
            jacobi_witness,
            tol: self.tol,
            passed: antisymmetry <= self.tol && jacobi <= self.tol,
        }
    }

    /// Direct sum `self ⊕ other`, with `self` occupying the first coordinates.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let (n, p) = (self.dim, other.dim);
        let mut c = Tensor3::zeros(n + p, n + p, n + p);
        for (k, i, j, v) in self.c.nonzeros() {
            c.set(k, i, j, v);
        }
        for (k, i, j, v) in other.c.nonzeros() {
            c.set(n + k, n + i, n + j, v);
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        LieAlgebra {
            dim: n + p,
            labels,
            c,
            tol: self.tol.max(other.tol),
        }
    }

    /// Tangent algebra `𝔤 ⋉ 𝔤` with
    /// `[(x1, x2), (y1, y2)] = ([x1, y1], [x1, y2] + [x2, y1])`.
    pub fn tangent(&self) -> LieAlgebra {
        let n = self.dim;
        let mut c = Tensor3::zeros(2 * n, 2 * n, 2 * n);
        for (k, i, j, v) in self.c.nonzeros() {
            c.set(k, i, j, v);
            c.set(n + k, i, n + j, v);
            c.set(n + k, n + i, j, v);
        }
        let mut labels = self.labels.clone();
        labels.extend(self.labels.iter().map(|l| format!("d{l}")));
        LieAlgebra {
            dim: 2 * n,
            labels,
            c,
            tol: self.tol,
        }
    }

    /// Structure constants in the basis `f_a = Σ_i p[(i, a)] e_i`.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Result<LieAlgebra> {
        check_dim(self.dim, p.nrows())?;
        check_dim(self.dim, p.ncols())?;
        let pinv = p.clone().try_inverse().ok_or(Error::SingularMatrix)?;
        let n = self.dim;
        let mut c = Tensor3::zeros(n, n, n);
        for a in 0..n {
            let fa = p.column(a).into_owned();
            for b in 0..n {
                let fb = p.column(b).into_owned();
                let br = &pinv * self.c.apply(&fa, &fb);
                for k in 0..n {
                    c.set(k, a, b, br[k]);
                }
            }
        }
        Ok(LieAlgebra {
            dim: n,
            labels: default_labels("f", n),
            c,
            tol: self.tol,
        })
    }
}

/// Dual pairing `⟨μ, ξ⟩`.
pub fn pairing(mu: &DVector<f64>, xi: &DVector<f64>) -> Result<f64> {
    check_dim(mu.len(), xi.len())?;
    Ok(mu.dot(xi))
}
