//! Measurement chains: furcation, witness production, alignment, trees.
//!
//! A measurement is modeled in stages.  [`furcate`] splits a state along an
//! orthogonal projector family into unnormalized branches.
//! [`emit_witnesses`] stamps each branch with a macroscopic witness record;
//! two records for different outcomes overlap by `eps^n_modes`, the single
//! number that controls how classical the event is.  [`alignment_apply`]
//! carries that factor onto cross-branch interference coefficients.
//! Finally a [`BranchTree`] chains several events (with optional commuting
//! unitaries in between) and enumerates the resulting outcome paths with
//! their squared-amplitude weights — the raw material every selection
//! policy in [`crate::select`] consumes.

mod event;
mod tree;
mod witness;

pub use event::{furcate, Branch, MeasurementEvent};
pub use tree::{BranchTree, Path, PATH_ENUM_CAP};
pub use witness::{alignment_apply, emit_witnesses, WitnessModel, WitnessedBranch, WitnessedState};

/// Max-abs tolerance for pairwise projector orthogonality.
pub const ORTHOGONALITY_TOL: f64 = 1e-12;
/// Max-abs tolerance for the completeness check on a projector family.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Max-abs tolerance for commutation of interleaved unitaries with earlier
/// projectors.
pub const COMMUTE_TOL: f64 = 1e-10;
/// Branch norms at or below this count as exactly dead.
pub const FURCATION_ZERO: f64 = 1e-14;
/// Denominators below this are refused by weight ratios.
pub const ZERO_WEIGHT_GUARD: f64 = 1e-30;
