//! Euler-Lagrange equations on `T(T²G)` for a black-box Lagrangian
//! `L(g, ξ1, ξ2, η0, η1, η2)`.

use nalgebra::{DMatrix, DVector};

use super::group::MatrixGroup;
use crate::algebra::LieAlgebra;
use crate::error::{check_dim, Error, Result};

/// Arguments of the Lagrangian. Algebra-valued entries are coordinates in
/// the group's basis.
#[derive(Clone, Debug, PartialEq)]
pub struct T2gPoint {
    pub g: DMatrix<f64>,
    pub xi1: DVector<f64>,
    pub xi2: DVector<f64>,
    pub eta: [DVector<f64>; 3],
}

fn fd<F: Fn(&DVector<f64>) -> f64>(f: F, x: &DVector<f64>, eps: f64) -> DVector<f64> {
    let mut g = DVector::zeros(x.len());
    let mut y = x.clone();
    for i in 0..x.len() {
        y[i] = x[i] + eps;
        let fp = f(&y);
        y[i] = x[i] - eps;
        let fm = f(&y);
        y[i] = x[i];
        g[i] = (fp - fm) / (2.0 * eps);
    }
    g
}

/// Left-trivialized group gradient, `⟨T*L_g δL/δg, E_i⟩ = d/ds L(g exp(sE_i))`.
pub fn group_gradient<L>(group: MatrixGroup, lag: &L, p: &T2gPoint, eps: f64) -> DVector<f64>
where
    L: Fn(&T2gPoint) -> f64,
{
    let basis = group.basis();
    let mut out = DVector::zeros(basis.len());
    let mut q = p.clone();
    for (i, e) in basis.iter().enumerate() {
        q.g = &p.g * (e * eps).exp();
        let fp = lag(&q);
        q.g = &p.g * (e * -eps).exp();
        let fm = lag(&q);
        out[i] = (fp - fm) / (2.0 * eps);
    }
    out
}

/// Fiber derivatives `(δL/δη0, δL/δη1, δL/δη2)`.
pub fn fiber_derivative<L>(lag: &L, p: &T2gPoint, eps: f64) -> [DVector<f64>; 3]
where
    L: Fn(&T2gPoint) -> f64,
{
    std::array::from_fn(|k| {
        fd(
            |e| {
                let mut q = p.clone();
                q.eta[k] = e.clone();
                lag(&q)
            },
            &p.eta[k],
            eps,
        )
    })
}

/// Time derivatives of the fiber momenta `p_k = δL/δη_k`:
///
/// ```text
/// ṗ0 = T*L_g(δL/δg) − ad*_{ξ1} δL/δξ1 − ad*_{ξ2} δL/δξ2 − ad*_{η0} p0 − ad*_{η1} p1 − ad*_{η2} p2
/// ṗ1 = δL/δξ1 − ad*_{ξ1} δL/δξ2 − ad*_{η0} p1 − 2 ad*_{η1} p2
/// ṗ2 = δL/δξ2 − ad*_{η0} p2
/// ```
///
/// The cotangent lifts on the vector-space factors are the identity.
pub fn el_t_t2g_field<L>(group: MatrixGroup, lag: &L, p: &T2gPoint, eps: f64) -> Result<[DVector<f64>; 3]>
where
    L: Fn(&T2gPoint) -> f64,
{
    let d = group.algebra_dim();
    check_dim(group.n, p.g.nrows())?;
    check_dim(group.n, p.g.ncols())?;
    for v in [&p.xi1, &p.xi2, &p.eta[0], &p.eta[1], &p.eta[2]] {
        check_dim(d, v.len())?;
    }
    let alg: LieAlgebra = group.algebra();
    let coad = |x: &DVector<f64>, mu: &DVector<f64>| alg.coad(x, mu);
    let dg = group_gradient(group, lag, p, eps);
    let dxi1 = fd(|x| lag(&T2gPoint { xi1: x.clone(), ..p.clone() }), &p.xi1, eps);
    let dxi2 = fd(|x| lag(&T2gPoint { xi2: x.clone(), ..p.clone() }), &p.xi2, eps);
    let [p0, p1, p2] = fiber_derivative(lag, p, eps);
    let [e0, e1, e2] = &p.eta;
    let r0 = dg - coad(&p.xi1, &dxi1)? - coad(&p.xi2, &dxi2)? - coad(e0, &p0)? - coad(e1, &p1)? - coad(e2, &p2)?;
    let r1 = dxi1 - coad(&p.xi1, &dxi2)? - coad(e0, &p1)? - coad(e1, &p2)? * 2.0;
    let r2 = dxi2 - coad(e0, &p2)?;
    Ok([r0, r1, r2])
}

/// Solves `δL/δη(g, ξ1, ξ2, η) = target` for `η` by Newton iteration with a
/// finite-difference Jacobian, starting from `p.eta`.
pub fn fiber_inverse<L>(lag: &L, p: &T2gPoint, target: &[DVector<f64>; 3], eps: f64) -> Result<[DVector<f64>; 3]>
where
    L: Fn(&T2gPoint) -> f64,
{
    let d = p.eta[0].len();
    for t in target {
        check_dim(d, t.len())?;
    }
    let flat = |e: &[DVector<f64>; 3]| DVector::from_iterator(3 * d, e.iter().flat_map(|v| v.iter().copied()));
    let unflat = |x: &DVector<f64>| -> [DVector<f64>; 3] { std::array::from_fn(|k| x.rows(k * d, d).into_owned()) };
    let want = flat(target);
    let momentum = |x: &DVector<f64>| {
        let q = T2gPoint { eta: unflat(x), ..p.clone() };
        flat(&fiber_derivative(lag, &q, eps))
    };
    let mut x = flat(&p.eta);
    let scale = want.amax().max(1.0);
    for _ in 0..50 {
        let r = momentum(&x) - &want;
        if r.amax() <= 1e-10 * scale {
            return Ok(unflat(&x));
        }
        let h = 1e-4;
        let mut jac = DMatrix::zeros(3 * d, 3 * d);
        for j in 0..3 * d {
            let mut xp = x.clone();
            xp[j] += h;
            let mut xm = x.clone();
            xm[j] -= h;
            jac.set_column(j, &((momentum(&xp) - momentum(&xm)) / (2.0 * h)));
        }
        let step = jac.lu().solve(&r).ok_or(Error::SingularFiberMap)?;
        if step.iter().any(|v| !v.is_finite()) {
            return Err(Error::SingularFiberMap);
        }
        x -= step;
    }
    Err(Error::SingularFiberMap)
}
