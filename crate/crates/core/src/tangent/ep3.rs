//! Third-order Euler-Poincaré dynamics on `(𝔤 ⋉ 𝔤) ⋉_θ 𝔤`.

use nalgebra::DVector;

use crate::algebra::presets::abelian;
use crate::algebra::LieAlgebra;
use crate::dynamics::{EnergySpec, Trajectory};
use crate::error::{check_dim, Error, Result};
use crate::unified::UnifiedProductData;

fn block(x: &DVector<f64>, n: usize, i: usize) -> DVector<f64> {
    x.rows(i * n, n).into_owned()
}

/// With `(η0, η1, η2) = I⁻¹(π0, π1, π2)`:
///
/// ```text
/// π̇0 = −ad*_{η0} π0 − ad*_{η1} π1 − ad*_{η2} π2
/// π̇1 = −ad*_{η0} π1 − 2 ad*_{η1} π2
/// π̇2 = −ad*_{η0} π2
/// ```
pub fn ep3_field(g: &LieAlgebra, spec: &EnergySpec, pi: &DVector<f64>) -> Result<DVector<f64>> {
    let n = g.dim();
    check_dim(3 * n, pi.len())?;
    let eta = spec.velocity(pi)?;
    let (e0, e1, e2) = (block(&eta, n, 0), block(&eta, n, 1), block(&eta, n, 2));
    let (p0, p1, p2) = (block(pi, n, 0), block(pi, n, 1), block(pi, n, 2));
    let d0 = -(g.coad(&e0, &p0)? + g.coad(&e1, &p1)? + g.coad(&e2, &p2)?);
    let d1 = -(g.coad(&e0, &p1)? + g.coad(&e1, &p2)? * 2.0);
    let d2 = -g.coad(&e0, &p2)?;
    let mut out = DVector::zeros(3 * n);
    out.rows_mut(0, n).copy_from(&d0);
    out.rows_mut(n, n).copy_from(&d1);
    out.rows_mut(2 * n, n).copy_from(&d2);
    Ok(out)
}

/// The algebra of `T²G` as a unified product: `𝔪 = 𝔤 ⋉ 𝔤` carrying its own
/// bracket in `φ`, `𝔥 = 𝔤` as an abelian ideal, `▷ = 0`,
/// `ψ(η, (w0, w1)) = [η, w0]` and `θ((η0, η1), (ζ0, ζ1)) = −2 ad_{ζ1} η1`.
pub fn t2g_unified(g: &LieAlgebra) -> Result<UnifiedProductData> {
    let n = g.dim();
    let c = g.structure();
    let mut d = UnifiedProductData::zeros(2 * n, abelian(n).with_tol(g.tol()));
    *d.phi_tensor_mut() = g.tangent().structure().clone();
    for (k, i, j, v) in c.nonzeros() {
        d.theta_tensor_mut().set(k, n + i, n + j, 2.0 * v);
        d.psi_tensor_mut().set(k, i, j, v);
    }
    let mut labels: Vec<String> = g.labels().iter().map(|l| format!("eta0.{l}")).collect();
    labels.extend(g.labels().iter().map(|l| format!("eta1.{l}")));
    Ok(d.with_m_labels(labels)?.with_tol(g.tol()))
}

/// 4th-order stencils for the first three derivatives at the centre of
/// seven equally spaced samples `f(−3h) … f(3h)`.
fn stencils(f: &[DVector<f64>], h: f64) -> [DVector<f64>; 3] {
    let d1 = (&f[1] - &f[5] + (&f[4] - &f[2]) * 8.0) / (12.0 * h);
    let d2 = (-&f[1] - &f[5] + (&f[2] + &f[4]) * 16.0 - &f[3] * 30.0) / (12.0 * h * h);
    let d3 = (&f[0] - &f[6] + (&f[5] - &f[1]) * 8.0 + (&f[2] - &f[4]) * 13.0) / (8.0 * h * h * h);
    [d1, d2, d3]
}

/// Norm of `(d/dt + ad*_{η0})(π0 − π̇1 + π̈2)` at every sample with three
/// neighbours on each side. Time derivatives use 4th-order central
/// differences, which needs at least seven uniformly spaced samples.
pub fn third_order_identity_residual(g: &LieAlgebra, spec: &EnergySpec, traj: &Trajectory) -> Result<Vec<f64>> {
    let n = g.dim();
    let len = traj.len();
    if len < 7 {
        return Err(Error::TooFewPoints { needed: 7, got: len });
    }
    let h = traj.times[1] - traj.times[0];
    if !(h > 0.0) {
        return Err(Error::InvalidArgument("times must increase".into()));
    }
    let mut out = Vec::with_capacity(len - 6);
    for c in 3..len - 3 {
        let win = &traj.states[c - 3..=c + 3];
        let pick = |b: usize| win.iter().map(|s| block(s, n, b)).collect::<Vec<_>>();
        let (p0, p1, p2) = (pick(0), pick(1), pick(2));
        let [p0_t, _, _] = stencils(&p0, h);
        let [p1_t, p1_tt, _] = stencils(&p1, h);
        let [_, p2_tt, p2_ttt] = stencils(&p2, h);
        let q = &p0[3] - &p1_t + &p2_tt;
        let q_t = p0_t - p1_tt + p2_ttt;
        let eta0 = block(&spec.velocity(&traj.states[c])?, n, 0);
        let r = q_t + g.coad(&eta0, &q)?;
        out.push(r.amax());
    }
    Ok(out)
}
