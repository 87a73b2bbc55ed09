//! JSON documents for algebras and unified products.
//!
//! Indices are 0-based. An algebra is `{"dim", "labels"?, "c": [[k,i,j,v],…]}`
//! listing nonzero constants with `i < j`. A unified product is
//! `{"dim_m", "labels"?, "h": <algebra>, "act"?, "phi"?, "theta"?, "psi"?}`
//! where each map is a sparse list `[[out, left, right, value], …]` in the
//! index order of the corresponding tensor.

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::tensor::Tensor3;
use crate::unified::UnifiedProductData;

pub type Entry = (usize, usize, usize, f64);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub c: Vec<Entry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnifiedDoc {
    pub dim_m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub h: AlgebraDoc,
    #[serde(default)]
    pub act: Vec<Entry>,
    #[serde(default)]
    pub phi: Vec<Entry>,
    #[serde(default)]
    pub theta: Vec<Entry>,
    #[serde(default)]
    pub psi: Vec<Entry>,
}

impl AlgebraDoc {
    pub fn build(&self) -> Result<LieAlgebra> {
        LieAlgebra::from_sparse(self.dim, self.labels.clone(), &self.c)
    }

    pub fn from_algebra(a: &LieAlgebra) -> Self {
        let c = a.structure().nonzeros().into_iter().filter(|&(_, i, j, _)| i < j).collect();
        Self { dim: a.dim(), labels: Some(a.labels().to_vec()), c }
    }
}

fn fill(name: &str, shape: (usize, usize, usize), entries: &[Entry]) -> Result<Tensor3> {
    let mut t = Tensor3::zeros(shape.0, shape.1, shape.2);
    for &(k, i, j, v) in entries {
        if k >= shape.0 || i >= shape.1 || j >= shape.2 {
            return Err(Error::InvalidStructure(format!(
                "{name} entry ({k},{i},{j}) outside shape {shape:?}"
            )));
        }
        t.add(k, i, j, v);
    }
    Ok(t)
}

/// Stores `φ` and `θ` entries as given; a one-sided list therefore breaks
/// antisymmetry and is reported by the axiom check rather than repaired.
impl UnifiedDoc {
    pub fn build(&self) -> Result<UnifiedProductData> {
        let h = self.h.build()?;
        let (m, n) = (self.dim_m, h.dim());
        let act = fill("act", (m, n, m), &self.act)?;
        let phi = fill("phi", (m, m, m), &self.phi)?;
        let theta = fill("theta", (n, m, m), &self.theta)?;
        let psi = fill("psi", (n, n, m), &self.psi)?;
        let d = UnifiedProductData::new(m, h, act, phi, theta, psi)?;
        match &self.labels {
            Some(l) => d.with_m_labels(l.clone()),
            None => Ok(d),
        }
    }

    pub fn from_data(d: &UnifiedProductData) -> Self {
        Self {
            dim_m: d.dim_m(),
            labels: Some(d.m_labels().to_vec()),
            h: AlgebraDoc::from_algebra(d.h()),
            act: d.act_tensor().nonzeros(),
            phi: d.phi_tensor().nonzeros(),
            theta: d.theta_tensor().nonzeros(),
            psi: d.psi_tensor().nonzeros(),
        }
    }
}

pub fn algebra_from_json(s: &str) -> Result<LieAlgebra> {
    serde_json::from_str::<AlgebraDoc>(s)?.build()
}

pub fn algebra_to_json(a: &LieAlgebra) -> Result<String> {
    Ok(serde_json::to_string_pretty(&AlgebraDoc::from_algebra(a))?)
}

pub fn unified_from_json(s: &str) -> Result<UnifiedProductData> {
    serde_json::from_str::<UnifiedDoc>(s)?.build()
}

pub fn unified_to_json(d: &UnifiedProductData) -> Result<String> {
    Ok(serde_json::to_string_pretty(&UnifiedDoc::from_data(d))?)
}
