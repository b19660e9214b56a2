//! Truncated `p`-typical formal group law over `Q[v_1, …, v_K]`, formal
//! sums and multiples, reduction modulo `I = (p, v_1, v_2, …)`, and the
//! BP version of the restricted Chern image of `G(n, ε)`.

pub mod cache;
mod fgl;
pub mod lemma4;
mod mod_i;
mod series;
pub(crate) mod vpoly;

pub use cache::{load_or_build, CacheStatus};
pub use fgl::{build_fgl, log_coefficients, FglContext};
pub use lemma4::{
    bp_c1, bp_conj_map, bp_total_chern, verify_lemma4, verify_lemma4_with_law, BpConjMap,
};
pub use mod_i::{reduce_mod_i, ModIClass};
pub use series::TruncSeries;
pub use vpoly::{VMono, VPoly};
