//! Group law of `T^nG` and its embedding into `T(T^{n−1}G)`.
//!
//! ```text
//! (x, ξ)(y, ζ) = (xy, ρ),
//! ρ_k = ζ_k + Σ (−1)^{l−1} N_(i1..il) ad_{ζ_{i_{l−1}}} ⋯ ad_{ζ_{i1}} Ad_{y⁻¹} ξ_{il}
//! ```
//!
//! summed over compositions `(i1, …, il)` of `k`.

use nalgebra::DMatrix;

use super::combinatorics::{compositions, partition_coefficient};
use super::group::{check_group, JetElement, MatrixGroup};
use crate::error::{Error, Result};

/// Minimal matrix arithmetic shared by plain and dual-number matrices.
pub(crate) trait Mat: Clone {
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn scaled(&self, s: f64) -> Self;

    /// `[self, x]`.
    fn ad(&self, x: &Self) -> Self {
        self.times(x).minus(&x.times(self))
    }
}

impl Mat for DMatrix<f64> {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn scaled(&self, s: f64) -> Self {
        self * s
    }
}

/// Matrix `v + ε d` with `ε² = 0`.
#[derive(Clone, Debug)]
pub(crate) struct Dual {
    pub v: DMatrix<f64>,
    pub d: DMatrix<f64>,
}

impl Dual {
    pub fn constant(v: DMatrix<f64>) -> Self {
        let d = DMatrix::zeros(v.nrows(), v.ncols());
        Self { v, d }
    }
}

impl Mat for Dual {
    fn plus(&self, o: &Self) -> Self {
        Dual { v: &self.v + &o.v, d: &self.d + &o.d }
    }
    fn minus(&self, o: &Self) -> Self {
        Dual { v: &self.v - &o.v, d: &self.d - &o.d }
    }
    fn times(&self, o: &Self) -> Self {
        Dual { v: &self.v * &o.v, d: &self.v * &o.d + &self.d * &o.v }
    }
    fn scaled(&self, s: f64) -> Self {
        Dual { v: &self.v * s, d: &self.d * s }
    }
}

/// Slots of the product given both bases, `y⁻¹`, and the slot lists.
pub(crate) fn tn_slots<M: Mat>(xi: &[M], yinv: &M, y: &M, zeta: &[M]) -> Vec<M> {
    let n = xi.len();
    let conj: Vec<M> = xi.iter().map(|s| yinv.times(s).times(y)).collect();
    (1..=n)
        .map(|k| {
            let mut acc = zeta[k - 1].clone();
            for comp in compositions(k) {
                let l = comp.len();
                let mut term = conj[comp[l - 1] - 1].clone();
                for &i in &comp[..l - 1] {
                    term = zeta[i - 1].ad(&term);
                }
                let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
                acc = acc.plus(&term.scaled(sign * partition_coefficient(&comp) as f64));
            }
            acc
        })
        .collect()
}

/// Product in `T^nG`, `n = a.slots.len()`.
pub fn tn_multiply(a: &JetElement, b: &JetElement) -> Result<JetElement> {
    check_group(a, b)?;
    let yinv = b.base.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    Ok(JetElement {
        group: a.group,
        base: &a.base * &b.base,
        slots: tn_slots(&a.slots, &yinv, &b.base, &b.slots),
    })
}

/// Unit `(e, 0, …, 0)` of `T^nG`.
pub fn tn_unit(group: MatrixGroup, n: usize) -> JetElement {
    JetElement::unit(group, n)
}

/// Inverse in `T^nG`:
/// `ω_k = −Σ N_(i1..il) Ad_x ad_{ξ_{i1}} ⋯ ad_{ξ_{i_{l−1}}} ξ_{il}`.
pub fn tn_inverse(a: &JetElement) -> Result<JetElement> {
    let x = &a.base;
    let xinv = x.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    let n = a.slots.len();
    let slots = (1..=n)
        .map(|k| {
            let mut acc = DMatrix::zeros(x.nrows(), x.ncols());
            for comp in compositions(k) {
                let l = comp.len();
                let mut term = a.slots[comp[l - 1] - 1].clone();
                for &i in comp[..l - 1].iter().rev() {
                    term = a.slots[i - 1].ad(&term);
                }
                acc += term * partition_coefficient(&comp) as f64;
            }
            -(x * acc * &xinv)
        })
        .collect();
    Ok(JetElement { group: a.group, base: xinv, slots })
}

/// Element `(a, A)` of the left-trivialized tangent group `T(T^{n−1}G)`,
/// where `A` lists the base and slot components of a vector in the algebra
/// of `T^{n−1}G`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentElement {
    pub point: JetElement,
    pub vector: Vec<DMatrix<f64>>,
}

/// `(x, ξ1, …, ξn) ↦ ((x, ξ1, …, ξ_{n−1}), (ξ1, …, ξn))`.
pub fn tangent_embed(a: &JetElement) -> Result<TangentElement> {
    let n = a.slots.len();
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one slot".into()));
    }
    Ok(TangentElement {
        point: JetElement {
            group: a.group,
            base: a.base.clone(),
            slots: a.slots[..n - 1].to_vec(),
        },
        vector: a.slots.clone(),
    })
}

/// `(a, A)(b, B) = (ab, B + Ad_{b⁻¹} A)`, with the adjoint action of
/// `T^{n−1}G` on its algebra computed exactly by differentiating
/// `b⁻¹ c(s) b` along `c(s) = (I + sA_0, sA_1, …)` in dual numbers.
pub fn tangent_multiply(a: &TangentElement, b: &TangentElement) -> Result<TangentElement> {
    check_group(&a.point, &b.point)?;
    let m = a.point.slots.len();
    if a.vector.len() != m + 1 || b.vector.len() != m + 1 {
        return Err(Error::Dimension { expected: m + 1, got: a.vector.len().min(b.vector.len()) });
    }
    let point = tn_multiply(&a.point, &b.point)?;
    let binv = tn_inverse(&b.point)?;
    let k = a.point.base.nrows();
    let id = DMatrix::identity(k, k);
    let zero = DMatrix::zeros(k, k);

    let c_base = Dual { v: id.clone(), d: a.vector[0].clone() };
    let c_slots: Vec<Dual> = a.vector[1..].iter().map(|s| Dual { v: zero.clone(), d: s.clone() }).collect();
    let c_base_inv = Dual { v: id.clone(), d: -&a.vector[0] };
    let binv_base = Dual::constant(binv.base.clone());
    let binv_slots: Vec<Dual> = binv.slots.iter().cloned().map(Dual::constant).collect();
    let b_base = Dual::constant(b.point.base.clone());
    let b_base_inv = Dual::constant(binv.base.clone());
    let b_slots: Vec<Dual> = b.point.slots.iter().cloned().map(Dual::constant).collect();

    // b⁻¹ · c(s)
    let left_base = binv_base.times(&c_base);
    let left_slots = tn_slots(&binv_slots, &c_base_inv, &c_base, &c_slots);
    // (b⁻¹ · c(s)) · b
    let conj_base = left_base.times(&b_base);
    let conj_slots = tn_slots(&left_slots, &b_base_inv, &b_base, &b_slots);

    let mut vector = Vec::with_capacity(m + 1);
    vector.push(&b.vector[0] + &conj_base.d);
    for (bv, s) in b.vector[1..].iter().zip(&conj_slots) {
        vector.push(bv + &s.d);
    }
    Ok(TangentElement { point, vector })
}
