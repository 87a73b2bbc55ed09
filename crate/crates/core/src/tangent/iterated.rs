//! Iterated tangent groups `T^(n)G` and the decomposition
//! `T^(3)G ≅ 𝔤^×4 ⋈ T³G`.
//!
//! Slot `s` holds the component indexed by the subset with bitmask `s + 1`,
//! so for `n = 3` the order is `1, 2, 21, 3, 31, 32, 321`.

use nalgebra::DMatrix;

use super::combinatorics::ordered_set_partitions;
use super::group::{check_group, JetElement, MatrixGroup};
use super::jet::Mat;
use crate::error::{Error, Result};

fn order_of(slots: usize) -> Result<u32> {
    let n = (slots + 1).trailing_zeros();
    if slots == 0 || (1usize << n) != slots + 1 {
        return Err(Error::InvalidArgument(format!(
            "{slots} slots is not 2^n − 1 for any n ≥ 1"
        )));
    }
    Ok(n)
}

/// Sum of the partition terms of `Z_α` with at least `min_blocks` blocks:
/// `Σ (−1)^{l−1} ad_{Y_{λ_{l−1}}} ⋯ ad_{Y_{λ1}} X'_{λl}` where `X'` are the
/// already conjugated left slots.
fn partition_sum(alpha: u32, conj: &[DMatrix<f64>], y: &[DMatrix<f64>], min_blocks: usize) -> DMatrix<f64> {
    let k = conj[0].nrows();
    let mut acc = DMatrix::zeros(k, k);
    for part in ordered_set_partitions(alpha) {
        let l = part.len();
        if l < min_blocks {
            continue;
        }
        let mut term = conj[part[l - 1] as usize - 1].clone();
        for &b in &part[..l - 1] {
            term = y[b as usize - 1].ad(&term);
        }
        if l % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Product in `T^(n)G`:
/// `Z_α = Y_α + Σ_{λ∈P(α)} (−1)^{l−1} ad_{Y_{λ_{l−1}}} ⋯ ad_{Y_{λ1}} Ad_{y⁻¹} X_{λl}`.
pub fn iterated_multiply(a: &JetElement, b: &JetElement) -> Result<JetElement> {
    check_group(a, b)?;
    order_of(a.slots.len())?;
    let y = &b.base;
    let yinv = y.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    let conj: Vec<_> = a.slots.iter().map(|s| &yinv * s * y).collect();
    let slots = (1..=a.slots.len() as u32)
        .map(|alpha| &b.slots[alpha as usize - 1] + partition_sum(alpha, &conj, &b.slots, 1))
        .collect();
    Ok(JetElement { group: a.group, base: &a.base * y, slots })
}

/// Unit of `T^(n)G`.
pub fn iterated_unit(group: MatrixGroup, n: u32) -> JetElement {
    JetElement::unit(group, (1usize << n) - 1)
}

/// Inverse in `T^(n)G`:
/// `W_α = −Σ_{λ∈P(α)} Ad_x ad_{X_{λ1}} ⋯ ad_{X_{λ_{l−1}}} X_{λl}`.
pub fn iterated_inverse(a: &JetElement) -> Result<JetElement> {
    order_of(a.slots.len())?;
    let x = &a.base;
    let xinv = x.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    let k = x.nrows();
    let slots = (1..=a.slots.len() as u32)
        .map(|alpha| {
            let mut acc = DMatrix::zeros(k, k);
            for part in ordered_set_partitions(alpha) {
                let l = part.len();
                let mut term = a.slots[part[l - 1] as usize - 1].clone();
                for &bl in part[..l - 1].iter().rev() {
                    term = a.slots[bl as usize - 1].ad(&term);
                }
                acc += term;
            }
            -(x * acc * &xinv)
        })
        .collect();
    Ok(JetElement { group: a.group, base: xinv, slots })
}

/// `(x, ξ1, ξ2, ξ3) ↦ (x, ξ1, ξ1, ξ2, ξ1, ξ2, ξ2, ξ3)`: slot `α` receives
/// `ξ_|α|`.
pub fn t3_embed(j: &JetElement) -> Result<JetElement> {
    if j.slots.len() != 3 {
        return Err(Error::Dimension { expected: 3, got: j.slots.len() });
    }
    let slots = (1..=7u32).map(|a| j.slots[a.count_ones() as usize - 1].clone()).collect();
    Ok(JetElement { group: j.group, base: j.base.clone(), slots })
}

/// An element `(X1, X2, X21, X31)` of `𝔤^×4`.
#[derive(Clone, Debug, PartialEq)]
pub struct G4 {
    pub x1: DMatrix<f64>,
    pub x2: DMatrix<f64>,
    pub x21: DMatrix<f64>,
    pub x31: DMatrix<f64>,
}

impl G4 {
    pub fn zeros(k: usize) -> Self {
        let z = DMatrix::zeros(k, k);
        Self { x1: z.clone(), x2: z.clone(), x21: z.clone(), x31: z }
    }

    pub fn max_abs(&self) -> f64 {
        [&self.x1, &self.x2, &self.x21, &self.x31].iter().fold(0.0, |m, x| m.max(x.amax()))
    }
}

/// `(X1, X2, X21, X31) ↦ (e, X1, X2, X21, 0, X31, 0, 0)`.
pub fn g4_embed(group: MatrixGroup, m: &G4) -> JetElement {
    let z = DMatrix::zeros(group.n, group.n);
    JetElement {
        group,
        base: group.identity(),
        slots: vec![m.x1.clone(), m.x2.clone(), m.x21.clone(), z.clone(), m.x31.clone(), z.clone(), z],
    }
}

/// Slots of `T^(3)G` that `g4_embed` leaves at zero: `3`, `32`, `321`.
const CHAIN: [u32; 3] = [0b100, 0b110, 0b111];

fn set_g4(m: &mut G4, alpha: u32, v: DMatrix<f64>) {
    match alpha {
        0b001 => m.x1 = v,
        0b010 => m.x2 = v,
        0b011 => m.x21 = v,
        0b101 => m.x31 = v,
        _ => unreachable!("not a free g4 slot"),
    }
}

/// Splits `j` as `g4_embed(M) · t3_embed(t)`.
///
/// Components are solved in order of subset size: on the chain subsets the
/// left factor vanishes, which fixes `ξ_s`; the remaining subsets of size `s`
/// then give `M_α = Ad_x(Z_α − ξ_s − R_α)`, where `R_α` collects the partition
/// terms with two or more blocks.
pub fn t3_factorize(j: &JetElement, tol: f64) -> Result<(G4, JetElement)> {
    if j.slots.len() != 7 {
        return Err(Error::Dimension { expected: 7, got: j.slots.len() });
    }
    let group = j.group;
    let k = group.n;
    let x = &j.base;
    let xinv = x.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    let mut m = G4::zeros(k);
    let mut xi = vec![DMatrix::zeros(k, k); 3];
    // Right-factor slots and conjugated left-factor slots, filled as solved.
    let mut y = vec![DMatrix::zeros(k, k); 7];
    let mut conj = vec![DMatrix::zeros(k, k); 7];
    for size in 1..=3u32 {
        let members: Vec<u32> = (1..=7u32).filter(|a| a.count_ones() == size).collect();
        let chain = CHAIN[size as usize - 1];
        let r = partition_sum(chain, &conj, &y, 2);
        xi[size as usize - 1] = &j.slots[chain as usize - 1] - r;
        for &a in &members {
            y[a as usize - 1] = xi[size as usize - 1].clone();
        }
        for &a in members.iter().filter(|&&a| a != chain) {
            let r = partition_sum(a, &conj, &y, 2);
            let c = &j.slots[a as usize - 1] - &xi[size as usize - 1] - r;
            set_g4(&mut m, a, x * &c * &xinv);
            conj[a as usize - 1] = c;
        }
    }
    let t = JetElement { group, base: x.clone(), slots: xi };
    let rebuilt = iterated_multiply(&g4_embed(group, &m), &t3_embed(&t)?)?;
    let residual = rebuilt.distance(j);
    if !(residual <= tol) {
        return Err(Error::Factorization { residual });
    }
    Ok((m, t))
}

/// Twisted cocycle: the `T³G` part of `g4_embed(m1) · g4_embed(m2)`.
pub fn gamma(group: MatrixGroup, m1: &G4, m2: &G4, tol: f64) -> Result<JetElement> {
    let p = iterated_multiply(&g4_embed(group, m1), &g4_embed(group, m2))?;
    Ok(t3_factorize(&p, tol)?.1)
}

/// Defined by `t3_embed(t) · g4_embed(m) = g4_embed(t ▷ m) · t3_embed(σ(t, m))`;
/// returns `σ(t, m)`.
pub fn sigma(t: &JetElement, m: &G4, tol: f64) -> Result<JetElement> {
    let p = iterated_multiply(&t3_embed(t)?, &g4_embed(t.group, m))?;
    Ok(t3_factorize(&p, tol)?.1)
}

/// The induced action `t ▷ m`, defined alongside [`sigma`].
pub fn mixed_action(t: &JetElement, m: &G4, tol: f64) -> Result<G4> {
    let p = iterated_multiply(&t3_embed(t)?, &g4_embed(t.group, m))?;
    Ok(t3_factorize(&p, tol)?.0)
}
