//! Unified-product Lie algebras, reduced Euler-Poincaré and Lie-Poisson
//! dynamics, and higher-order tangent groups of matrix Lie groups.
//!
//! Algebras are given by structure constants `c[k][i][j]` with
//! `[e_i, e_j] = Σ_k c[k][i][j] e_k`. Covectors use the dual basis, so the
//! pairing is the coordinate dot product and `ad*_x = −(ad_x)ᵀ`.

pub mod algebra;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod presets;
pub mod tangent;
pub mod tensor;
pub mod unified;

pub use algebra::{presets::preset, LieAlgebra, ValidationReport};
pub use dynamics::{
    conservation_report, ep_field, lp_field, rk4, Drift, EnergySpec, Functional, PhasePoint, Trajectory,
};
pub use error::{Error, Result};
pub use tensor::Tensor3;
pub use unified::{AxiomReport, AxiomResidual, Split, SplitCovector, SplitVector, UnifiedProductData};
