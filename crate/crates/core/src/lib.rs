//! Exact overlaps of the projections `C_t = {x + t·y : (x, y) ∈ C}` of the
//! four-corner Cantor set `C`.
//!
//! `C_t` is generated by the four maps `x ↦ (x + d)/4` with
//! `d ∈ {0, 3t, 3, 3t+3}`. For rational `t = p/q` in lowest terms it has an
//! exact overlap iff neither `p` nor `q` lies in
//! `Γ = {(2k − 1)·2^(2ℓ − 1)}`, the integers with odd 2-adic valuation.
//!
//! - [`classifier`] decides the question from the closed form.
//! - [`oracles`] decides it three more ways (difference-state search,
//!   polynomial divisibility, matrix rank) for cross-validation.
//! - [`density`] counts overlap pairs in `[1, N]²`.
//! - [`geometry`] builds level-`n` approximations, exact measures and
//!   box-dimension estimates.

pub mod classifier;
pub mod density;
pub mod error;
pub mod geometry;
pub mod numtheory;
pub mod oracles;

pub use classifier::{classify, membership_in_w, OverlapClassification, ReducedRational, Regime, Variant};
pub use density::{
    coprime_count, count_w_hat_by_formula, enumerate_counts, odd_totient_ratio_sum, CountingSchedule,
    DensityReport, OddTotientAverage,
};
pub use error::{Error, Result};
pub use geometry::{
    level_endpoints, measure_and_dimension, render_w_grid, LevelApproximation, MeasureEstimate, WGrid,
};
pub use numtheory::{Factorization, GammaWitness};
pub use oracles::{find_overlap_witness, DigitSet, OverlapWitness};
