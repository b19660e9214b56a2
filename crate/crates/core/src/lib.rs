//! Exact computations with the rank-two `p`-groups `G(n, ε)`: their
//! representations, the restriction of their Chern subring to `⟨B⟩` in
//! integral cohomology, and the analogous computation in Brown–Peterson
//! cohomology modulo `(p, v_1, v_2, …)`.

pub mod bp_fgl;
pub mod chern_integral;
pub mod cli;
pub mod error;
pub mod graded_ring;
pub mod group_rep;
pub mod report;
pub mod semigroup;

pub use error::{Error, Result};
