//! Repeated-trial experiments and their statistics.
//!
//! [`scenario`] builds concrete measurement setups (a spin tilted against
//! the measurement axis, declarative product trees, interference of two
//! witnessed arms).  [`trials`] runs a selection policy many times over a
//! tree and scores the observed outcome frequencies against the normalized
//! squared-amplitude weights with the chi-square machinery in [`stats`].
//! Runs are reproducible down to the byte: trial `t` always draws from the
//! stream hashed out of `(seed, t)`, so reports are independent of thread
//! count.

pub mod scenario;
pub mod stats;
pub mod trials;

pub use scenario::{
    alignment_scan, born_expected, fitted_log_visibility_slope, interference_visibility,
    product_tree, witness_photon_energy, SternGerlachScenario,
};
pub use stats::{chi_square, least_squares_fit, median, total_variation, ChiSquare};
pub use trials::{compare_policies, run_trials, PairwiseDistance, PolicyComparison, TrialReport};
