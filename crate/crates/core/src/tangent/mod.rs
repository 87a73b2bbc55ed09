//! Higher-order tangent groups of matrix Lie groups.
//!
//! `T^nG` is trivialized as `G × 𝔤^n` and the iterated group `T^(n)G` as
//! `G × 𝔤^(2ⁿ−1)`, with slots indexed by nonempty subsets of `{1..n}`.

pub mod combinatorics;
pub mod ep3;
pub mod group;
pub mod iterated;
pub mod jet;
pub mod lagrangian;

pub use combinatorics::{compositions, ordered_set_partitions, partition_coefficient};
pub use ep3::{ep3_field, t2g_unified, third_order_identity_residual};
pub use group::{GroupKind, JetElement, MatrixGroup, MatrixGroupElement};
pub use iterated::{
    g4_embed, gamma, iterated_inverse, iterated_multiply, iterated_unit, mixed_action, sigma,
    t3_embed, t3_factorize, G4,
};
pub use jet::{tn_inverse, tn_multiply, tn_unit, tangent_embed, tangent_multiply, TangentElement};
pub use lagrangian::{el_t_t2g_field, fiber_inverse, T2gPoint};
