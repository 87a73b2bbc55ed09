//! Reduced Euler-Poincaré and Lie-Poisson fields, RK4 integration and
//! conservation diagnostics.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::unified::{Split, UnifiedProductData};

type ScalarFn = Arc<dyn Fn(&DVector<f64>) -> f64 + Send + Sync>;

/// Energy of a reduced system.
///
/// The quadratic kind is `ℓ(ξ) = ½⟨Iξ, ξ⟩` on the Lagrangian side and its
/// Legendre dual `H(μ) = ½⟨μ, I⁻¹μ⟩` on the Hamiltonian side. The black-box
/// kind wraps an arbitrary function whose gradient is taken by central
/// differences.
#[derive(Clone)]
pub enum EnergySpec {
    Quadratic {
        inertia: DMatrix<f64>,
        inverse: DMatrix<f64>,
    },
    Blackbox {
        f: ScalarFn,
        fd_eps: f64,
    },
}

impl fmt::Debug for EnergySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Quadratic { inertia, .. } => {
                f.debug_struct("Quadratic").field("inertia", inertia).finish()
            }
            Self::Blackbox { fd_eps, .. } => f.debug_struct("Blackbox").field("fd_eps", fd_eps).finish(),
        }
    }
}

pub const DEFAULT_FD_EPS: f64 = 1e-6;

impl EnergySpec {
    /// Quadratic energy; `inertia` must be symmetric to 1e-12 and
    /// positive-definite.
    pub fn quadratic(inertia: DMatrix<f64>) -> Result<Self> {
        if !inertia.is_square() {
            return Err(Error::SingularInertia("inertia is not square".into()));
        }
        let asym = (&inertia - inertia.transpose()).amax();
        if asym > 1e-12 {
            return Err(Error::SingularInertia(format!("asymmetry {asym:e}")));
        }
        let chol = inertia
            .clone()
            .cholesky()
            .ok_or_else(|| Error::SingularInertia("not positive-definite".into()))?;
        let inverse = chol.inverse();
        Ok(Self::Quadratic { inertia, inverse })
    }

    pub fn identity(n: usize) -> Self {
        Self::quadratic(DMatrix::identity(n, n)).expect("identity is positive-definite")
    }

    pub fn diagonal(d: &[f64]) -> Result<Self> {
        Self::quadratic(DMatrix::from_diagonal(&DVector::from_column_slice(d)))
    }

    pub fn blackbox<F>(f: F) -> Self
    where
        F: Fn(&DVector<f64>) -> f64 + Send + Sync + 'static,
    {
        Self::Blackbox {
            f: Arc::new(f),
            fd_eps: DEFAULT_FD_EPS,
        }
    }

    pub fn with_fd_eps(self, eps: f64) -> Self {
        match self {
            Self::Blackbox { f, .. } => Self::Blackbox { f, fd_eps: eps },
            q => q,
        }
    }

    /// Dimension fixed by the inertia, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Self::Quadratic { inertia, .. } => Some(inertia.nrows()),
            Self::Blackbox { .. } => None,
        }
    }

    fn check(&self, x: &DVector<f64>) -> Result<()> {
        match self.dim() {
            Some(n) => check_dim(n, x.len()),
            None => Ok(()),
        }
    }

    /// `ℓ(ξ)`.
    pub fn lagrangian(&self, xi: &DVector<f64>) -> Result<f64> {
        self.check(xi)?;
        Ok(match self {
            Self::Quadratic { inertia, .. } => 0.5 * xi.dot(&(inertia * xi)),
            Self::Blackbox { f, .. } => f(xi),
        })
    }

    /// `H(μ)`.
    pub fn hamiltonian(&self, mu: &DVector<f64>) -> Result<f64> {
        self.check(mu)?;
        Ok(match self {
            Self::Quadratic { inverse, .. } => 0.5 * mu.dot(&(inverse * mu)),
            Self::Blackbox { f, .. } => f(mu),
        })
    }

    /// `δℓ/δξ`.
    pub fn lagrangian_derivative(&self, xi: &DVector<f64>) -> Result<DVector<f64>> {
        self.check(xi)?;
        Ok(match self {
            Self::Quadratic { inertia, .. } => inertia * xi,
            Self::Blackbox { f, fd_eps } => central_gradient(f.as_ref(), xi, *fd_eps),
        })
    }

    /// `δH/δμ`.
    pub fn hamiltonian_derivative(&self, mu: &DVector<f64>) -> Result<DVector<f64>> {
        self.check(mu)?;
        Ok(match self {
            Self::Quadratic { inverse, .. } => inverse * mu,
            Self::Blackbox { f, fd_eps } => central_gradient(f.as_ref(), mu, *fd_eps),
        })
    }

    /// Velocity `I⁻¹π` of a momentum; only defined for quadratic energies.
    pub fn velocity(&self, pi: &DVector<f64>) -> Result<DVector<f64>> {
        self.check(pi)?;
        match self {
            Self::Quadratic { inverse, .. } => Ok(inverse * pi),
            Self::Blackbox { .. } => Err(Error::UnsupportedEnergy),
        }
    }
}

/// Central-difference gradient with step `eps`.
pub fn central_gradient(
    f: &(dyn Fn(&DVector<f64>) -> f64 + Send + Sync),
    x: &DVector<f64>,
    eps: f64,
) -> DVector<f64> {
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

/// Euler-Poincaré field in momentum form. With `(v, η) = I⁻¹(π_v, π_η)`:
///
/// ```text
/// π̇_v = −𝔞𝔡*_v π_v + π_v ◁* η + 𝔞*_η π_η + θ*_v π_η
/// π̇_η = −ad*_η π_η − 𝔟*_v π_v − _vψ* π_η
/// ```
pub fn ep_field(d: &UnifiedProductData, spec: &EnergySpec, pi: &DVector<f64>) -> Result<DVector<f64>> {
    check_dim(d.dim(), pi.len())?;
    let x = Split::from_flat(&spec.velocity(pi)?, d.dim_m())?;
    let p = Split::from_flat(pi, d.dim_m())?;
    let (v, eta) = (&x.m, &x.h);
    let (pv, pe) = (&p.m, &p.h);
    let m = -d.ad_star_m(v, pv) + d.act_dual(pv, eta) + d.a_star(eta, pe) + d.theta_star(v, pe);
    let h = -d.ad_star_h(eta, pe) - d.b_star(v, pv) - d.psi_star(v, pe);
    Ok(Split::new(m, h).to_flat())
}

/// Lie-Poisson field. With `(a, b) = (δH/δκ, δH/δλ)`:
///
/// ```text
/// κ̇ = 𝔞𝔡*_a κ − κ ◁* b − 𝔞*_b λ − θ*_a λ
/// λ̇ = ad*_b λ + 𝔟*_a κ + _aψ* λ
/// ```
pub fn lp_field(d: &UnifiedProductData, spec: &EnergySpec, mu: &DVector<f64>) -> Result<DVector<f64>> {
    check_dim(d.dim(), mu.len())?;
    let g = Split::from_flat(&spec.hamiltonian_derivative(mu)?, d.dim_m())?;
    let p = Split::from_flat(mu, d.dim_m())?;
    Ok(d.coad(&g, &p)?.to_flat())
}

/// A state at a time.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoint {
    pub t: f64,
    pub state: DVector<f64>,
}

/// Uniformly sampled trajectory.
#[derive(Clone, Debug, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DVector<f64>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn point(&self, i: usize) -> PhasePoint {
        PhasePoint {
            t: self.times[i],
            state: self.states[i].clone(),
        }
    }

    /// Writes `t,<labels>` followed by one row per sample in shortest
    /// round-trip decimal form.
    pub fn write_csv<W: Write>(&self, mut w: W, labels: &[String]) -> Result<()> {
        write!(w, "t")?;
        for l in labels {
            write!(w, ",{l}")?;
        }
        writeln!(w)?;
        for (t, s) in self.times.iter().zip(&self.states) {
            check_dim(labels.len(), s.len())?;
            write!(w, "{t:?}")?;
            for v in s.iter() {
                write!(w, ",{v:?}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Classical fourth-order Runge-Kutta with `n` fixed steps of size `h`.
pub fn rk4<F>(field: F, p0: &DVector<f64>, h: f64, n: usize) -> Result<Trajectory>
where
    F: Fn(&DVector<f64>) -> Result<DVector<f64>>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one step".into()));
    }
    if p0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteState { step: 0 });
    }
    let mut traj = Trajectory {
        times: Vec::with_capacity(n + 1),
        states: Vec::with_capacity(n + 1),
    };
    traj.times.push(0.0);
    traj.states.push(p0.clone());
    let mut y = p0.clone();
    for step in 1..=n {
        let k1 = field(&y)?;
        let k2 = field(&(&y + &k1 * (0.5 * h)))?;
        let k3 = field(&(&y + &k2 * (0.5 * h)))?;
        let k4 = field(&(&y + &k3 * h))?;
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteState { step });
        }
        traj.times.push(step as f64 * h);
        traj.states.push(y.clone());
    }
    Ok(traj)
}

/// A named scalar function of the state.
pub struct Functional {
    pub name: String,
    f: Box<dyn Fn(&DVector<f64>) -> f64>,
}

impl Functional {
    pub fn new<F: Fn(&DVector<f64>) -> f64 + 'static>(name: impl Into<String>, f: F) -> Self {
        Self {
            name: name.into(),
            f: Box::new(f),
        }
    }

    pub fn eval(&self, x: &DVector<f64>) -> f64 {
        (self.f)(x)
    }

    /// `½ Σ_{i∈[start,end)} x_i²`.
    pub fn norm_sq_block(start: usize, end: usize) -> Self {
        Self::new(format!("norm_sq_block[{start},{end})"), move |x| {
            0.5 * x.rows(start, end - start).norm_squared()
        })
    }
}

/// Drift of one functional along a trajectory.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Drift {
    pub functional: String,
    pub initial: f64,
    pub max_abs_drift: f64,
    /// `max_abs_drift / |initial|`, or the absolute drift when the initial
    /// value is zero.
    pub max_rel_drift: f64,
}

pub fn conservation_report(traj: &Trajectory, functionals: &[Functional]) -> Result<Vec<Drift>> {
    let first = traj
        .states
        .first()
        .ok_or(Error::TooFewPoints { needed: 1, got: 0 })?;
    Ok(functionals
        .iter()
        .map(|f| {
            let initial = f.eval(first);
            let max_abs_drift = traj
                .states
                .iter()
                .map(|s| (f.eval(s) - initial).abs())
                .fold(0.0, f64::max);
            let max_rel_drift = if initial != 0.0 {
                max_abs_drift / initial.abs()
            } else {
                max_abs_drift
            };
            Drift {
                functional: f.name.clone(),
                initial,
                max_abs_drift,
                max_rel_drift,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::so3;

    #[test]
    fn quadratic_derivatives() {
        let s = EnergySpec::identity(6);
        let x = DVector::from_vec(vec![1.0, 2.0, 3.0, 0.0, 0.0, 0.0]);
        assert_eq!(s.lagrangian_derivative(&x).unwrap(), x);
        let s = EnergySpec::diagonal(&[2.0; 6]).unwrap();
        let e1 = DVector::from_fn(6, |i, _| if i == 0 { 1.0 } else { 0.0 });
        assert_eq!(s.lagrangian_derivative(&e1).unwrap(), e1.clone() * 2.0);
        assert!((s.hamiltonian_derivative(&e1).unwrap() - e1 * 0.5).amax() < 1e-15);
    }

    #[test]
    fn rejects_bad_inertia() {
        assert!(matches!(
            EnergySpec::diagonal(&[1.0, 0.0]),
            Err(Error::SingularInertia(_))
        ));
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(EnergySpec::quadratic(m).is_err());
    }

    #[test]
    fn blackbox_velocity_unsupported() {
        let s = EnergySpec::blackbox(|x| x.norm_squared());
        assert!(matches!(s.velocity(&DVector::zeros(2)), Err(Error::UnsupportedEnergy)));
    }

    #[test]
    fn blackbox_half_norm_matches_identity() {
        let s = EnergySpec::blackbox(|x| 0.5 * x.norm_squared());
        let x = DVector::from_vec(vec![0.3, -1.2, 2.5, 0.9]);
        assert!((s.lagrangian_derivative(&x).unwrap() - &x).amax() < 1e-8);
    }

    #[test]
    fn zero_states_and_constant_energy() {
        let d = UnifiedProductData::from_algebra(so3());
        let s = EnergySpec::identity(3);
        assert_eq!(ep_field(&d, &s, &DVector::zeros(3)).unwrap().amax(), 0.0);
        let c = EnergySpec::blackbox(|_| 4.0);
        let mu = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        assert_eq!(lp_field(&d, &c, &mu).unwrap().amax(), 0.0);
    }

    #[test]
    fn rk4_exponential() {
        let y0 = DVector::from_element(1, 1.0);
        let t = rk4(|y| Ok(y.clone()), &y0, 0.1, 10).unwrap();
        assert_eq!(t.len(), 11);
        // One RK4 step multiplies by the degree-4 Taylor polynomial of e^h.
        let h: f64 = 0.1;
        let growth = 1.0 + h + h * h / 2.0 + h.powi(3) / 6.0 + h.powi(4) / 24.0;
        assert!((t.states[10][0] - growth.powi(10)).abs() < 1e-14);
        assert!((t.states[10][0] - std::f64::consts::E).abs() < 2.1e-6);
    }

    #[test]
    fn rk4_zero_field_is_constant() {
        let y0 = DVector::from_vec(vec![1.0, -2.0]);
        let t = rk4(|y| Ok(DVector::zeros(y.len())), &y0, 0.5, 4).unwrap();
        assert!(t.states.iter().all(|s| s == &y0));
        let rep = conservation_report(&t, &[Functional::norm_sq_block(0, 2)]).unwrap();
        assert_eq!(rep[0].max_abs_drift, 0.0);
    }

    #[test]
    fn rk4_reports_blow_up() {
        let y0 = DVector::from_element(1, 1.0);
        let err = rk4(|y| Ok(y.map(|v| v * v * 1e150)), &y0, 1.0, 10).unwrap_err();
        assert!(matches!(err, Error::NonFiniteState { .. }));
        assert!(rk4(|y| Ok(y.clone()), &y0, 0.0, 1).is_err());
        assert!(rk4(|y| Ok(y.clone()), &y0, 0.1, 0).is_err());
    }

    #[test]
    fn rigid_body_casimir() {
        let d = UnifiedProductData::from_algebra(so3());
        let s = EnergySpec::diagonal(&[1.0, 2.0, 3.0]).unwrap();
        let mu0 = DVector::from_vec(vec![0.4, -0.8, 1.1]);
        let t = rk4(|m| lp_field(&d, &s, m), &mu0, 1e-3, 10_000).unwrap();
        let rep = conservation_report(&t, &[Functional::norm_sq_block(0, 3)]).unwrap();
        assert!(rep[0].max_abs_drift < 1e-10, "{:?}", rep[0]);
    }

    #[test]
    fn csv_layout() {
        let t = Trajectory {
            times: vec![0.0, 0.1],
            states: vec![DVector::from_vec(vec![1.0, 0.1 + 0.2]), DVector::from_vec(vec![-1.5, 2.0])],
        };
        let mut out = Vec::new();
        t.write_csv(&mut out, &["a".into(), "b".into()]).unwrap();
        let s = String::from_utf8(out).unwrap();
        assert_eq!(s, "t,a,b\n0.0,1.0,0.30000000000000004\n0.1,-1.5,2.0\n");
    }
}
