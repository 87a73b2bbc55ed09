//! Unified products `𝔪 ⋈_θ 𝔥` (cocycle double cross sums).
//!
//! The data consist of a Lie algebra `𝔥`, a complement `𝔪`, a left action
//! `▷: 𝔥⊗𝔪→𝔪`, a bracket-like map `φ: 𝔪⊗𝔪→𝔪`, a twisted cocycle
//! `θ: 𝔪⊗𝔪→𝔥` and a right action `ψ: 𝔥⊗𝔪→𝔥`. The composed bracket is
//!
//! ```text
//! [(v1,η1),(v2,η2)] = (φ(v1,v2) + η1▷v2 − η2▷v1,
//!                      [η1,η2] + ψ(η1,v2) − ψ(η2,v1) + θ(v1,v2))
//! ```
//!
//! with `𝔪` coordinates first.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{check_dim, Error, Result};
use crate::tensor::Tensor3;

/// A state split into its `𝔪` and `𝔥` blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub m: DVector<f64>,
    pub h: DVector<f64>,
}

pub type SplitVector = Split;
pub type SplitCovector = Split;

impl Split {
    pub fn new(m: DVector<f64>, h: DVector<f64>) -> Self {
        Self { m, h }
    }

    pub fn zeros(dim_m: usize, dim_h: usize) -> Self {
        Self::new(DVector::zeros(dim_m), DVector::zeros(dim_h))
    }

    /// Splits a flat coordinate vector after the first `dim_m` entries.
    pub fn from_flat(x: &DVector<f64>, dim_m: usize) -> Result<Self> {
        if x.len() < dim_m {
            return Err(Error::Dimension { expected: dim_m, got: x.len() });
        }
        Ok(Self::new(
            x.rows(0, dim_m).into_owned(),
            x.rows(dim_m, x.len() - dim_m).into_owned(),
        ))
    }

    pub fn to_flat(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.m.len() + self.h.len());
        v.rows_mut(0, self.m.len()).copy_from(&self.m);
        v.rows_mut(self.m.len(), self.h.len()).copy_from(&self.h);
        v
    }
}

/// Residual of one compatibility condition.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomResidual {
    pub name: &'static str,
    pub description: &'static str,
    pub value: f64,
    /// Basis indices attaining the maximum, in the order the condition names
    /// its arguments (`𝔥` indices for `η`, `𝔪` indices for `v`).
    pub witness: Vec<usize>,
}

/// Outcome of [`UnifiedProductData::validate_axioms`].
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub residuals: Vec<AxiomResidual>,
    pub tol: f64,
    pub passed: bool,
}

impl AxiomReport {
    pub fn get(&self, name: &str) -> Option<&AxiomResidual> {
        self.residuals.iter().find(|r| r.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.value))
    }

    pub fn failing(&self) -> impl Iterator<Item = &AxiomResidual> {
        self.residuals.iter().filter(move |r| r.value > self.tol)
    }
}

/// Structure data of a unified product.
#[derive(Clone, Debug)]
pub struct UnifiedProductData {
    dim_m: usize,
    m_labels: Vec<String>,
    h: LieAlgebra,
    /// `act[k][a][i]`: component `k` of `f_a ▷ e_i`.
    act: Tensor3,
    /// `phi[k][i][j]`: component `k` of `φ(e_i, e_j)`.
    phi: Tensor3,
    /// `theta[a][i][j]`: component `a` of `θ(e_i, e_j)`.
    theta: Tensor3,
    /// `psi[b][a][i]`: component `b` of `ψ(f_a, e_i)`.
    psi: Tensor3,
    tol: f64,
}

impl UnifiedProductData {
    pub fn new(
        dim_m: usize,
        h: LieAlgebra,
        act: Tensor3,
        phi: Tensor3,
        theta: Tensor3,
        psi: Tensor3,
    ) -> Result<Self> {
        let n = h.dim();
        let expect = |what: &str, t: &Tensor3, s: (usize, usize, usize)| {
            if t.shape() == s {
                Ok(())
            } else {
                Err(Error::InvalidStructure(format!(
                    "{what} has shape {:?}, expected {:?}",
                    t.shape(),
                    s
                )))
            }
        };
        expect("act", &act, (dim_m, n, dim_m))?;
        expect("phi", &phi, (dim_m, dim_m, dim_m))?;
        expect("theta", &theta, (n, dim_m, dim_m))?;
        expect("psi", &psi, (n, n, dim_m))?;
        Ok(Self {
            dim_m,
            m_labels: (1..=dim_m).map(|i| format!("m{i}")).collect(),
            tol: h.tol(),
            h,
            act,
            phi,
            theta,
            psi,
        })
    }

    /// All maps zero: the direct sum of an abelian `𝔪` and `h`.
    pub fn zeros(dim_m: usize, h: LieAlgebra) -> Self {
        let n = h.dim();
        Self::new(
            dim_m,
            h,
            Tensor3::zeros(dim_m, n, dim_m),
            Tensor3::zeros(dim_m, dim_m, dim_m),
            Tensor3::zeros(n, dim_m, dim_m),
            Tensor3::zeros(n, n, dim_m),
        )
        .expect("zero tensors have matching shapes")
    }

    /// A plain Lie algebra viewed as a unified product with `𝔪 = 0`.
    pub fn from_algebra(h: LieAlgebra) -> Self {
        Self::zeros(0, h)
    }

    /// Decomposes `g` along its first `dim_m` basis vectors, which must
    /// complement the subalgebra spanned by the remaining ones.
    pub fn from_split(g: &LieAlgebra, dim_m: usize) -> Result<Self> {
        let d = g.dim();
        if dim_m > d {
            return Err(Error::Dimension { expected: d, got: dim_m });
        }
        let n = d - dim_m;
        let c = g.structure();
        let mut hc = Tensor3::zeros(n, n, n);
        for a in 0..n {
            for b in 0..n {
                for k in 0..dim_m {
                    let leak = c.get(k, dim_m + a, dim_m + b);
                    if leak.abs() > g.tol() {
                        return Err(Error::InvalidStructure(format!(
                            "trailing {n} basis vectors do not span a subalgebra"
                        )));
                    }
                }
                for q in 0..n {
                    hc.set(q, a, b, c.get(dim_m + q, dim_m + a, dim_m + b));
                }
            }
        }
        let labels = g.labels();
        let h = LieAlgebra::from_tensor_unchecked(Some(labels[dim_m..].to_vec()), hc)?
            .with_tol(g.tol());
        let mut data = Self::zeros(dim_m, h);
        data.m_labels = labels[..dim_m].to_vec();
        for i in 0..dim_m {
            for j in 0..dim_m {
                for k in 0..dim_m {
                    data.phi.set(k, i, j, c.get(k, i, j));
                }
                for a in 0..n {
                    data.theta.set(a, i, j, c.get(dim_m + a, i, j));
                }
            }
            for a in 0..n {
                for k in 0..dim_m {
                    data.act.set(k, a, i, c.get(k, dim_m + a, i));
                }
                for b in 0..n {
                    data.psi.set(b, a, i, c.get(dim_m + b, dim_m + a, i));
                }
            }
        }
        data.tol = g.tol();
        Ok(data)
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self.h = self.h.with_tol(tol);
        self
    }

    pub fn with_m_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_dim(self.dim_m, labels.len())?;
        self.m_labels = labels;
        Ok(self)
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    pub fn dim(&self) -> usize {
        self.dim_m + self.h.dim()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn h(&self) -> &LieAlgebra {
        &self.h
    }

    pub fn m_labels(&self) -> &[String] {
        &self.m_labels
    }

    /// Labels of the composed basis, `𝔪` first.
    pub fn labels(&self) -> Vec<String> {
        let mut l = self.m_labels.clone();
        l.extend(self.h.labels().iter().cloned());
        l
    }

    pub fn act_tensor(&self) -> &Tensor3 {
        &self.act
    }
    pub fn phi_tensor(&self) -> &Tensor3 {
        &self.phi
    }
    pub fn theta_tensor(&self) -> &Tensor3 {
        &self.theta
    }
    pub fn psi_tensor(&self) -> &Tensor3 {
        &self.psi
    }
    pub fn act_tensor_mut(&mut self) -> &mut Tensor3 {
        &mut self.act
    }
    pub fn phi_tensor_mut(&mut self) -> &mut Tensor3 {
        &mut self.phi
    }
    pub fn theta_tensor_mut(&mut self) -> &mut Tensor3 {
        &mut self.theta
    }
    pub fn psi_tensor_mut(&mut self) -> &mut Tensor3 {
        &mut self.psi
    }

    fn check_split(&self, x: &Split) -> Result<()> {
        check_dim(self.dim_m, x.m.len())?;
        check_dim(self.dim_h(), x.h.len())
    }

    /// `η ▷ v`.
    pub fn act(&self, eta: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        self.act.apply(eta, v)
    }

    /// `φ(v, w) = [[v, w]]`.
    pub fn phi(&self, v: &DVector<f64>, w: &DVector<f64>) -> DVector<f64> {
        self.phi.apply(v, w)
    }

    /// `θ(v, w)`.
    pub fn theta(&self, v: &DVector<f64>, w: &DVector<f64>) -> DVector<f64> {
        self.theta.apply(v, w)
    }

    /// `ψ(η, v)`.
    pub fn psi(&self, eta: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        self.psi.apply(eta, v)
    }

    /// The composed bracket evaluated on split vectors.
    pub fn split_bracket(&self, x: &Split, y: &Split) -> Result<Split> {
        self.check_split(x)?;
        self.check_split(y)?;
        let m = self.phi(&x.m, &y.m) + self.act(&x.h, &y.m) - self.act(&y.h, &x.m);
        let h = self.h.bracket(&x.h, &y.h)? + self.psi(&x.h, &y.m) - self.psi(&y.h, &x.m)
            + self.theta(&x.m, &y.m);
        Ok(Split::new(m, h))
    }

    /// Structure constants of `𝔪 ⋈_θ 𝔥`.
    pub fn compose_bracket(&self) -> LieAlgebra {
        let (dm, dh) = (self.dim_m, self.dim_h());
        let d = dm + dh;
        let mut c = Tensor3::zeros(d, d, d);
        for i in 0..d {
            for j in 0..d {
                let ei = Split::from_flat(&unit(d, i), dm).expect("basis split");
                let ej = Split::from_flat(&unit(d, j), dm).expect("basis split");
                let r = self.split_bracket(&ei, &ej).expect("consistent blocks").to_flat();
                for k in 0..d {
                    c.set(k, i, j, r[k]);
                }
            }
        }
        LieAlgebra::from_tensor_unchecked(Some(self.labels()), c)
            .expect("cubic tensor")
            .with_tol(self.tol)
    }

    /// Evaluates every compatibility condition over all basis tuples.
    ///
    /// Besides the six defining conditions the report includes the left
    /// module property of `▷` and the Jacobi identity of `𝔥`, which the
    /// construction assumes of its inputs.
    pub fn validate_axioms(&self) -> AxiomReport {
        let (dm, dh) = (self.dim_m, self.dim_h());
        let em = |i| unit(dm, i);
        let eh = |a| unit(dh, a);
        let br = |x: &DVector<f64>, y: &DVector<f64>| self.h.structure().apply(x, y);
        let mut residuals = Vec::new();
        let mut track = |name, description, f: &mut dyn FnMut(&mut Worst)| {
            let mut w = Worst::default();
            f(&mut w);
            residuals.push(AxiomResidual {
                name,
                description,
                value: w.value,
                witness: w.witness,
            });
        };

        track("A1", "[[v,v]] = 0 and θ(v,v) = 0", &mut |w| {
            for i in 0..dm {
                for j in i..dm {
                    for k in 0..dm {
                        w.see((self.phi.get(k, i, j) + self.phi.get(k, j, i)).abs(), &[i, j]);
                    }
                    for a in 0..dh {
                        w.see((self.theta.get(a, i, j) + self.theta.get(a, j, i)).abs(), &[i, j]);
                    }
                }
            }
        });

        track(
            "A2",
            "η▷[[v1,v2]] = [[η▷v1,v2]] + [[v1,η▷v2]] + ψ(η,v1)▷v2 − ψ(η,v2)▷v1",
            &mut |w| {
                for a in 0..dh {
                    let eta = eh(a);
                    for i in 0..dm {
                        for j in 0..dm {
                            let (v1, v2) = (em(i), em(j));
                            let r = self.act(&eta, &self.phi(&v1, &v2))
                                - self.phi(&self.act(&eta, &v1), &v2)
                                - self.phi(&v1, &self.act(&eta, &v2))
                                - self.act(&self.psi(&eta, &v1), &v2)
                                + self.act(&self.psi(&eta, &v2), &v1);
                            w.see(r.amax(), &[a, i, j]);
                        }
                    }
                }
            },
        );

        track(
            "A3",
            "[η,θ(v1,v2)] = θ(η▷v1,v2) + θ(v1,η▷v2) + ψ(ψ(η,v1),v2) − ψ(ψ(η,v2),v1) − ψ(η,[[v1,v2]])",
            &mut |w| {
                for a in 0..dh {
                    let eta = eh(a);
                    for i in 0..dm {
                        for j in 0..dm {
                            let (v1, v2) = (em(i), em(j));
                            let r = br(&eta, &self.theta(&v1, &v2))
                                - self.theta(&self.act(&eta, &v1), &v2)
                                - self.theta(&v1, &self.act(&eta, &v2))
                                - self.psi(&self.psi(&eta, &v1), &v2)
                                + self.psi(&self.psi(&eta, &v2), &v1)
                                + self.psi(&eta, &self.phi(&v1, &v2));
                            w.see(r.amax(), &[a, i, j]);
                        }
                    }
                }
            },
        );

        track(
            "A4",
            "ψ([η1,η2],v) = [η1,ψ(η2,v)] + [ψ(η1,v),η2] + ψ(η1,η2▷v) − ψ(η2,η1▷v)",
            &mut |w| {
                for a in 0..dh {
                    for b in 0..dh {
                        let (e1, e2) = (eh(a), eh(b));
                        for i in 0..dm {
                            let v = em(i);
                            let r = self.psi(&br(&e1, &e2), &v)
                                - br(&e1, &self.psi(&e2, &v))
                                - br(&self.psi(&e1, &v), &e2)
                                - self.psi(&e1, &self.act(&e2, &v))
                                + self.psi(&e2, &self.act(&e1, &v));
                            w.see(r.amax(), &[a, b, i]);
                        }
                    }
                }
            },
        );

        track("A5", "↺ [[[[v1,v2]],v3]] + ↺ θ(v1,v2)▷v3 = 0", &mut |w| {
            for i in 0..dm {
                for j in 0..dm {
                    for l in 0..dm {
                        let mut r = DVector::zeros(dm);
                        for (x, y, z) in [(i, j, l), (j, l, i), (l, i, j)] {
                            let (v1, v2, v3) = (em(x), em(y), em(z));
                            r += self.phi(&self.phi(&v1, &v2), &v3)
                                + self.act(&self.theta(&v1, &v2), &v3);
                        }
                        w.see(r.amax(), &[i, j, l]);
                    }
                }
            }
        });

        track("A6", "↺ ψ(θ(v1,v2),v3) + ↺ θ([[v1,v2]],v3) = 0", &mut |w| {
            for i in 0..dm {
                for j in 0..dm {
                    for l in 0..dm {
                        let mut r = DVector::zeros(dh);
                        for (x, y, z) in [(i, j, l), (j, l, i), (l, i, j)] {
                            let (v1, v2, v3) = (em(x), em(y), em(z));
                            r += self.psi(&self.theta(&v1, &v2), &v3)
                                + self.theta(&self.phi(&v1, &v2), &v3);
                        }
                        w.see(r.amax(), &[i, j, l]);
                    }
                }
            }
        });

        track("module", "[η1,η2]▷v = η1▷(η2▷v) − η2▷(η1▷v)", &mut |w| {
            for a in 0..dh {
                for b in 0..dh {
                    let (e1, e2) = (eh(a), eh(b));
                    for i in 0..dm {
                        let v = em(i);
                        let r = self.act(&br(&e1, &e2), &v) - self.act(&e1, &self.act(&e2, &v))
                            + self.act(&e2, &self.act(&e1, &v));
                        w.see(r.amax(), &[a, b, i]);
                    }
                }
            }
        });

        track("h_jacobi", "antisymmetry and Jacobi identity of 𝔥", &mut |w| {
            let rep = self.h.validate();
            w.see(rep.antisymmetry, &rep.antisymmetry_witness.map(|t| vec![t.0, t.1, t.2]).unwrap_or_default());
            w.see(rep.jacobi, &rep.jacobi_witness.map(|t| vec![t.0, t.1, t.2]).unwrap_or_default());
        });

        let passed = residuals.iter().all(|r| r.value <= self.tol);
        AxiomReport {
            residuals,
            tol: self.tol,
            passed,
        }
    }

    /// `𝔞𝔡*_v α`, defined by `⟨𝔞𝔡*_v α, w⟩ = −⟨α, [[v, w]]⟩`.
    pub fn ad_star_m(&self, v: &DVector<f64>, alpha: &DVector<f64>) -> DVector<f64> {
        -(self.phi.left_matrix(v).transpose() * alpha)
    }

    /// `α ◁* η`, defined by `⟨α ◁* η, w⟩ = ⟨α, η ▷ w⟩`.
    pub fn act_dual(&self, alpha: &DVector<f64>, eta: &DVector<f64>) -> DVector<f64> {
        self.act.left_matrix(eta).transpose() * alpha
    }

    /// `𝔞*_η β`, defined by `⟨𝔞*_η β, w⟩ = ⟨β, ψ(η, w)⟩`.
    pub fn a_star(&self, eta: &DVector<f64>, beta: &DVector<f64>) -> DVector<f64> {
        self.psi.left_matrix(eta).transpose() * beta
    }

    /// `θ*_v β`, defined by `⟨θ*_v β, w⟩ = ⟨β, θ(v, w)⟩`.
    pub fn theta_star(&self, v: &DVector<f64>, beta: &DVector<f64>) -> DVector<f64> {
        self.theta.left_matrix(v).transpose() * beta
    }

    /// `𝔟*_v α`, defined by `⟨𝔟*_v α, ζ⟩ = ⟨α, ζ ▷ v⟩`.
    pub fn b_star(&self, v: &DVector<f64>, alpha: &DVector<f64>) -> DVector<f64> {
        self.act.right_matrix(v).transpose() * alpha
    }

    /// `_vψ* β`, defined by `⟨_vψ* β, ζ⟩ = ⟨β, ψ(ζ, v)⟩`.
    pub fn psi_star(&self, v: &DVector<f64>, beta: &DVector<f64>) -> DVector<f64> {
        self.psi.right_matrix(v).transpose() * beta
    }

    /// `ad*_η β` in `𝔥*`.
    pub fn ad_star_h(&self, eta: &DVector<f64>, beta: &DVector<f64>) -> DVector<f64> {
        -(self.h.structure().left_matrix(eta).transpose() * beta)
    }

    /// Coadjoint action assembled from the six dual maps:
    /// `(𝔞𝔡*_v α − α◁*η − 𝔞*_η β − θ*_v β, ad*_η β + 𝔟*_v α + _vψ* β)`.
    pub fn coad(&self, x: &Split, mu: &Split) -> Result<Split> {
        self.check_split(x)?;
        self.check_split(mu)?;
        let (v, eta) = (&x.m, &x.h);
        let (alpha, beta) = (&mu.m, &mu.h);
        let m = self.ad_star_m(v, alpha)
            - self.act_dual(alpha, eta)
            - self.a_star(eta, beta)
            - self.theta_star(v, beta);
        let h = self.ad_star_h(eta, beta) + self.b_star(v, alpha) + self.psi_star(v, beta);
        Ok(Split::new(m, h))
    }
}

#[derive(Default)]
struct Worst {
    value: f64,
    witness: Vec<usize>,
}

impl Worst {
    fn see(&mut self, r: f64, at: &[usize]) {
        if r > self.value || r.is_nan() {
            self.value = if r.is_nan() { f64::INFINITY } else { r };
            self.witness = at.to_vec();
        }
    }
}

fn unit(n: usize, i: usize) -> DVector<f64> {
    let mut e = DVector::zeros(n);
    e[i] = 1.0;
    e
}

/// Matrix of `μ ↦ coad(x, μ)` assembled from the dual maps.
pub fn coad_operator(d: &UnifiedProductData, x: &Split) -> Result<DMatrix<f64>> {
    let n = d.dim();
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        let mu = Split::from_flat(&unit(n, j), d.dim_m())?;
        m.set_column(j, &d.coad(x, &mu)?.to_flat());
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::{sl2, so3};

    #[test]
    fn zero_maps_with_abelian_h_give_abelian_algebra() {
        let d = UnifiedProductData::zeros(2, crate::algebra::presets::abelian(3));
        let g = d.compose_bracket();
        assert_eq!(g.dim(), 5);
        assert_eq!(g.structure().max_abs(), 0.0);
        assert!(d.validate_axioms().passed);
    }

    #[test]
    fn so3_phi_and_so3_h_give_direct_sum() {
        let mut d = UnifiedProductData::zeros(3, so3());
        *d.phi_tensor_mut() = so3().structure().clone();
        assert!(d.validate_axioms().passed);
        let g = d.compose_bracket();
        assert_eq!(g, so3().direct_sum(&so3()).with_labels(d.labels()).unwrap());
        assert!(g.validate().passed);
    }

    #[test]
    fn from_split_round_trips_the_bracket() {
        let g = sl2().tangent();
        let d = UnifiedProductData::from_split(&g, 3).unwrap();
        assert!(d.validate_axioms().passed);
        let c = d.compose_bracket();
        assert!((0..6).all(|k| (0..6).all(|i| (0..6).all(|j| {
            c.structure().get(k, i, j) == g.structure().get(k, i, j)
        }))));
    }

    #[test]
    fn from_split_rejects_non_subalgebra() {
        // span(e1, e2) is not closed in so3.
        assert!(UnifiedProductData::from_split(&so3(), 1).is_err());
    }

    #[test]
    fn module_failure_is_flagged() {
        let mut d = UnifiedProductData::zeros(3, so3());
        for (k, a, i, v) in so3().structure().nonzeros() {
            d.act_tensor_mut().set(k, a, i, -v);
        }
        let r = d.validate_axioms();
        assert!(!r.passed);
        assert!(r.get("module").unwrap().value > 0.5);
    }

    #[test]
    fn coad_of_zero_is_zero() {
        let d = UnifiedProductData::from_split(&sl2().tangent(), 3).unwrap();
        let x = Split::zeros(3, 3);
        let mu = Split::new(DVector::from_element(3, 1.0), DVector::from_element(3, -2.0));
        assert_eq!(d.coad(&x, &mu).unwrap().to_flat().amax(), 0.0);
    }

    #[test]
    fn degenerate_blocks_are_plain_algebras() {
        let d = UnifiedProductData::from_algebra(so3());
        assert_eq!(d.compose_bracket().structure(), so3().structure());
        assert!(d.validate_axioms().passed);
        let d = UnifiedProductData::from_split(&so3(), 3).unwrap();
        assert_eq!(d.dim_h(), 0);
        assert!(d.validate_axioms().passed);
    }
}
