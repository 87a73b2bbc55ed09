//! Worked models: the Kepler energy-momentum algebra and the four-field
//! tokamak algebra, each with a direct implementation of its equations of
//! motion for regression against the generic fields.

use nalgebra::{DVector, Vector3};

use crate::algebra::presets::so3;
use crate::algebra::LieAlgebra;
use crate::dynamics::{ep_field, lp_field, EnergySpec};
use crate::error::{check_dim, Error, Result};
use crate::tensor::Tensor3;
use crate::unified::UnifiedProductData;

/// Energy level `e`, mass `m` and force constant `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KeplerParams {
    pub e: f64,
    pub m: f64,
    pub k: f64,
}

impl KeplerParams {
    pub fn new(e: f64, m: f64, k: f64) -> Result<Self> {
        if !(m > 0.0 && k > 0.0 && e.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "kepler parameters need m > 0, k > 0 and finite e (got e={e}, m={m}, k={k})"
            )));
        }
        Ok(Self { e, m, k })
    }

    /// `2e / (m³ k²)`.
    pub fn coupling(&self) -> f64 {
        2.0 * self.e / (self.m.powi(3) * self.k.powi(2))
    }
}

/// `𝔪 = 𝔥 = ℝ³` with `θ(v, w) = c v×w`, `η▷v = η×v`, `[η, β] = η×β` and
/// `φ = ψ = 0`.
pub fn kepler_algebra(p: &KeplerParams) -> Result<UnifiedProductData> {
    let p = KeplerParams::new(p.e, p.m, p.k)?;
    let eps = so3();
    let h = eps
        .clone()
        .with_labels(vec!["eta1".into(), "eta2".into(), "eta3".into()])?;
    let mut theta = eps.structure().clone();
    theta.scale(p.coupling());
    let act = eps.structure().clone();
    let d = UnifiedProductData::new(
        3,
        h,
        act,
        Tensor3::zeros(3, 3, 3),
        theta,
        Tensor3::zeros(3, 3, 3),
    )?;
    d.with_m_labels(vec!["v1".into(), "v2".into(), "v3".into()])
}

fn v3(x: &DVector<f64>, start: usize) -> Vector3<f64> {
    Vector3::new(x[start], x[start + 1], x[start + 2])
}

fn join(a: Vector3<f64>, b: Vector3<f64>) -> DVector<f64> {
    DVector::from_iterator(6, a.iter().chain(b.iter()).copied())
}

/// Hand-written Kepler Euler-Poincaré equations:
/// `π̇_v = π_v×η + c π_η×v`, `π̇_η = π_η×η − v×π_v`.
pub fn kepler_ep_printed(p: &KeplerParams, spec: &EnergySpec, pi: &DVector<f64>) -> Result<DVector<f64>> {
    check_dim(6, pi.len())?;
    let x = spec.velocity(pi)?;
    let (v, eta) = (v3(&x, 0), v3(&x, 3));
    let (pv, pe) = (v3(pi, 0), v3(pi, 3));
    let c = p.coupling();
    Ok(join(pv.cross(&eta) + c * pe.cross(&v), pe.cross(&eta) - v.cross(&pv)))
}

/// Hand-written Kepler Lie-Poisson equations:
/// `κ̇ = −κ×H_λ + c H_κ×λ`, `λ̇ = H_λ×λ + H_κ×κ`.
pub fn kepler_lp_printed(p: &KeplerParams, spec: &EnergySpec, mu: &DVector<f64>) -> Result<DVector<f64>> {
    check_dim(6, mu.len())?;
    let g = spec.hamiltonian_derivative(mu)?;
    let (hk, hl) = (v3(&g, 0), v3(&g, 3));
    let (kappa, lambda) = (v3(mu, 0), v3(mu, 3));
    let c = p.coupling();
    Ok(join(
        -kappa.cross(&hl) + c * hk.cross(&lambda),
        hl.cross(&lambda) + hk.cross(&kappa),
    ))
}

/// Largest difference between the generic and hand-written Kepler fields,
/// with `state` read as an EP momentum and as an LP covector.
pub fn kepler_regression(p: &KeplerParams, spec: &EnergySpec, state: &DVector<f64>) -> Result<f64> {
    let d = kepler_algebra(p)?;
    let ep = (ep_field(&d, spec, state)? - kepler_ep_printed(p, spec, state)?).amax();
    let lp = (lp_field(&d, spec, state)? - kepler_lp_printed(p, spec, state)?).amax();
    Ok(ep.max(lp))
}

/// Base algebra and compressibility `B_i` of the four-field model.
#[derive(Clone, Debug)]
pub struct TokamakParams {
    pub base: LieAlgebra,
    pub b_i: f64,
}

impl TokamakParams {
    pub fn new(base: LieAlgebra, b_i: f64) -> Result<Self> {
        let r = base.validate();
        if !r.passed {
            return Err(Error::InvalidStructure(format!(
                "base algebra fails validation (antisymmetry {:e}, jacobi {:e})",
                r.antisymmetry, r.jacobi
            )));
        }
        Ok(Self { base, b_i })
    }
}

/// `𝔪 = (v, β)`, `𝔥 = (w, α)`, four copies of the base algebra, with
/// `(w,α)▷(v,β) = ([α,v], [α,β])`, `θ((v,β),(v',β')) = (−B_i([β,v'] + [v,β']), 0)`,
/// `[(w,α),(w',α')] = ([α,w'] + [w,α'], [α,α'])` and `φ = ψ = 0`.
pub fn tokamak_algebra(p: &TokamakParams) -> Result<UnifiedProductData> {
    let g = &p.base;
    let n = g.dim();
    let c = g.structure();
    let mut hc = Tensor3::zeros(2 * n, 2 * n, 2 * n);
    let mut act = Tensor3::zeros(2 * n, 2 * n, 2 * n);
    let mut theta = Tensor3::zeros(2 * n, 2 * n, 2 * n);
    for (k, i, j, v) in c.nonzeros() {
        // 𝔥: w block first, α block second.
        hc.set(k, n + i, j, v);
        hc.set(k, i, n + j, v);
        hc.set(n + k, n + i, n + j, v);
        // α acts on both 𝔪 blocks.
        act.set(k, n + i, j, v);
        act.set(n + k, n + i, n + j, v);
        // θ lands in the w block.
        theta.add(k, n + i, j, -p.b_i * v);
        theta.add(k, i, n + j, -p.b_i * v);
    }
    let labels = |p: &str| g.labels().iter().map(|l| format!("{p}.{l}")).collect::<Vec<_>>();
    let mut hl = labels("w");
    hl.extend(labels("alpha"));
    let h = LieAlgebra::from_tensor(Some(hl), hc)?.with_tol(g.tol());
    let mut ml = labels("v");
    ml.extend(labels("beta"));
    UnifiedProductData::new(
        2 * n,
        h,
        act,
        Tensor3::zeros(2 * n, 2 * n, 2 * n),
        theta,
        Tensor3::zeros(2 * n, 2 * n, 2 * n),
    )?
    .with_m_labels(ml)
}

struct Blocks {
    v: DVector<f64>,
    beta: DVector<f64>,
    w: DVector<f64>,
    alpha: DVector<f64>,
}

fn blocks(x: &DVector<f64>, n: usize) -> Blocks {
    Blocks {
        v: x.rows(0, n).into_owned(),
        beta: x.rows(n, n).into_owned(),
        w: x.rows(2 * n, n).into_owned(),
        alpha: x.rows(3 * n, n).into_owned(),
    }
}

fn stack(parts: [DVector<f64>; 4]) -> DVector<f64> {
    let n = parts[0].len();
    let mut out = DVector::zeros(4 * n);
    for (i, p) in parts.iter().enumerate() {
        out.rows_mut(i * n, n).copy_from(p);
    }
    out
}

/// Hand-written four-field Euler-Poincaré equations, term for term as
/// usually displayed, with `ad*_x = −(ad_x)ᵀ` of the base algebra.
pub fn tokamak_ep_printed(p: &TokamakParams, spec: &EnergySpec, pi: &DVector<f64>) -> Result<DVector<f64>> {
    let n = p.base.dim();
    check_dim(4 * n, pi.len())?;
    let x = blocks(&spec.velocity(pi)?, n);
    let m = blocks(pi, n);
    let ad = |a: &DVector<f64>, mu: &DVector<f64>| p.base.coad(a, mu);
    let b = p.b_i;
    Ok(stack([
        -ad(&x.alpha, &m.v)? + ad(&x.beta, &m.w)? * b,
        -ad(&x.alpha, &m.beta)? + ad(&x.v, &m.w)? * b,
        ad(&x.alpha, &m.w)?,
        ad(&x.w, &m.w)? + ad(&x.alpha, &m.alpha)? - ad(&x.v, &m.v)? - ad(&x.beta, &m.beta)?,
    ]))
}

/// Hand-written four-field Lie-Poisson equations, term for term as usually
/// displayed.
pub fn tokamak_lp_printed(p: &TokamakParams, spec: &EnergySpec, mu: &DVector<f64>) -> Result<DVector<f64>> {
    let n = p.base.dim();
    check_dim(4 * n, mu.len())?;
    let g = blocks(&spec.hamiltonian_derivative(mu)?, n);
    let m = blocks(mu, n);
    let ad = |a: &DVector<f64>, mu: &DVector<f64>| p.base.coad(a, mu);
    let b = p.b_i;
    Ok(stack([
        ad(&g.alpha, &m.v)? - ad(&g.beta, &m.w)? * b,
        ad(&g.alpha, &m.beta)? - ad(&g.v, &m.w)? * b,
        -ad(&g.alpha, &m.w)?,
        -ad(&g.w, &m.w)? - ad(&g.alpha, &m.alpha)? + ad(&g.v, &m.v)? + ad(&g.beta, &m.beta)?,
    ]))
}

/// Largest difference between the generic and hand-written four-field
/// fields, with `state` read as an EP momentum and as an LP covector.
pub fn tokamak_regression(p: &TokamakParams, spec: &EnergySpec, state: &DVector<f64>) -> Result<f64> {
    let d = tokamak_algebra(p)?;
    let ep = (ep_field(&d, spec, state)? - tokamak_ep_printed(p, spec, state)?).amax();
    let lp = (lp_field(&d, spec, state)? - tokamak_lp_printed(p, spec, state)?).amax();
    Ok(ep.max(lp))
}
