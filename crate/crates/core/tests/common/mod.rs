#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unimech::algebra::presets::{heisenberg, sl2, so3};
use unimech::tangent::{JetElement, MatrixGroup};
use unimech::{LieAlgebra, UnifiedProductData};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vec(r: &mut impl Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| r.random_range(-1.0..1.0))
}

pub fn mat(r: &mut impl Rng, n: usize, m: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, m, |_, _| r.random_range(-1.0..1.0))
}

/// Random symmetric positive-definite matrix with spectrum in [0.5, 2.5].
pub fn spd(r: &mut impl Rng, n: usize) -> DMatrix<f64> {
    let q = mat(r, n, n).qr().q();
    let d = DMatrix::from_diagonal(&DVector::from_fn(n, |_, _| r.random_range(0.5..2.5)));
    let m = &q * d * q.transpose();
    (&m + m.transpose()) * 0.5
}

/// Brute-force `[x, y]` straight from the constants.
pub fn bracket_loop(a: &LieAlgebra, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
    let n = a.dim();
    let mut out = DVector::zeros(n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                out[k] += a.structure().get(k, i, j) * x[i] * y[j];
            }
        }
    }
    out
}

/// Largest Jacobiator over basis triples, via the brute-force bracket.
pub fn jacobi_loop(a: &LieAlgebra) -> f64 {
    let n = a.dim();
    let e = |i| a.basis(i);
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let r = bracket_loop(a, &bracket_loop(a, &e(i), &e(j)), &e(l))
                    + bracket_loop(a, &bracket_loop(a, &e(j), &e(l)), &e(i))
                    + bracket_loop(a, &bracket_loop(a, &e(l), &e(i)), &e(j));
                worst = worst.max(r.amax());
            }
        }
    }
    worst
}

/// `-(ad_x)ᵀ μ` of the composed algebra, with `ad_x` assembled column by
/// column from brackets with basis vectors.
pub fn coad_transpose_oracle(a: &LieAlgebra, x: &DVector<f64>, mu: &DVector<f64>) -> DVector<f64> {
    let n = a.dim();
    let mut ad = DMatrix::zeros(n, n);
    for j in 0..n {
        ad.set_column(j, &bracket_loop(a, x, &a.basis(j)));
    }
    -(ad.transpose() * mu)
}

/// Algebras with a subalgebra spanned by the trailing basis vectors, paired
/// with the size of the complement.
pub fn split_algebras() -> Vec<(LieAlgebra, usize)> {
    vec![
        (sl2().direct_sum(&so3()), 3),
        (sl2().tangent(), 3),
        (so3().direct_sum(&heisenberg()), 3),
        (MatrixGroup::gl(2).algebra(), 2),
        (heisenberg().tangent(), 3),
    ]
}

/// Random basis change that keeps the trailing block a subalgebra, so every
/// structure map of the split comes out generic.
pub fn scrambled_split(r: &mut impl Rng, g: &LieAlgebra, dim_m: usize) -> UnifiedProductData {
    let d = g.dim();
    let mut p = mat(r, d, d);
    for i in 0..dim_m {
        for a in dim_m..d {
            p[(i, a)] = 0.0;
        }
    }
    for i in 0..d {
        p[(i, i)] += 3.0;
    }
    let h = g.change_basis(&p).unwrap();
    UnifiedProductData::from_split(&h, dim_m).unwrap()
}

pub fn random_so3_jet(r: &mut impl Rng, slots: usize, scale: f64) -> JetElement {
    let g = MatrixGroup::so3();
    let base = g.exp(&g.hat(&vec(r, 3)).unwrap());
    let slots = (0..slots).map(|_| g.hat(&(vec(r, 3) * scale)).unwrap()).collect();
    JetElement::new(g, base, slots).unwrap()
}

pub fn random_sl2_jet(r: &mut impl Rng, slots: usize, scale: f64) -> JetElement {
    let g = MatrixGroup::sl2();
    let base = g.exp(&g.hat(&(vec(r, 3) * 0.5)).unwrap());
    let slots = (0..slots).map(|_| g.hat(&(vec(r, 3) * scale)).unwrap()).collect();
    JetElement { group: g, base, slots }
}

pub fn ad(x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
    x * y - y * x
}

pub fn conj_inv(y: &DMatrix<f64>, x: &DMatrix<f64>) -> DMatrix<f64> {
    y.clone().try_inverse().unwrap() * x * y
}
