//! Crate-wide error type.
//!
//! All fallible operations return [`Result`].  Variants carry enough context
//! (dimensions, deviations, indices) that a caller can report a useful
//! message without re-deriving the failure.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by state construction, evolution, branching and selection.
#[derive(Debug, Error)]
pub enum Error {
    /// A vector or operator does not live in the expected space.
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A tensor factor with dimension zero was requested.
    #[error("factor dimensions must be at least 1")]
    InvalidFactorDimension,

    /// The product of factor dimensions exceeds the dense-representation cap.
    #[error("total dimension {dim} exceeds the dense cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    /// A matrix is not square or has the wrong shape for its space.
    #[error("matrix shape {rows}x{cols} does not match space dimension {dim}")]
    MatrixShape { rows: usize, cols: usize, dim: usize },

    /// A matrix failed the numeric check for its declared kind
    /// (unitary, projector or hermitian).
    #[error("matrix is not {expected} (max deviation {deviation:.3e})")]
    KindViolation {
        expected: &'static str,
        deviation: f64,
    },

    /// An operation required a specific operator kind.
    #[error("operator kind must be {expected}, got {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },

    /// A state that must be normalized is not.
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    /// Time labels of an evolution schedule must increase strictly.
    #[error("time labels must be strictly increasing (step {step})")]
    TimeLabelsNotIncreasing { step: usize },

    /// A step-boundary index lies outside `0..=n_steps`.
    #[error("step boundary {index} out of range for {n_steps} steps")]
    InvalidStepIndex { index: usize, n_steps: usize },

    /// Step-boundary insertion points must be sorted ascending.
    #[error("insertion points must be sorted ascending (position {position})")]
    UnsortedInsertionPoints { position: usize },

    /// Exhaustive path enumeration would exceed the configured cap.
    #[error("path count {count} exceeds the enumeration cap of {cap}")]
    PathCountOverflow { count: u128, cap: u64 },

    /// A measurement event needs at least two outcomes.
    #[error("measurement event needs at least 2 projectors, got {found}")]
    TooFewOutcomes { found: usize },

    /// Projectors of one event must be mutually orthogonal.
    #[error("projectors {a} and {b} are not orthogonal (max deviation {deviation:.3e})")]
    ProjectorsNotOrthogonal { a: usize, b: usize, deviation: f64 },

    /// The projector family of an event must sum to a projector.
    #[error("projector family does not sum to a projector (max deviation {deviation:.3e})")]
    ProjectorsIncomplete { deviation: f64 },

    /// Every branch norm vanished; the input state is orthogonal to the
    /// whole projector family.
    #[error("furcation is degenerate: all branch norms below {threshold:.1e}")]
    DegenerateFurcation { threshold: f64 },

    /// A per-mode witness overlap must lie in `[0, 1]`.
    #[error("per-mode overlap {value} outside [0, 1]")]
    InvalidOverlap { value: f64 },

    /// A branch tree needs exactly one interleaved slot between consecutive
    /// events.
    #[error("expected {expected} interleaved unitaries (events - 1), got {found}")]
    InterleavedCount { expected: usize, found: usize },

    /// An interleaved unitary fails to commute with an earlier event's
    /// projectors, which would break witness bookkeeping.
    #[error(
        "interleaved unitary after event {slot} does not commute with projector {projector} \
         of event {event} (max deviation {deviation:.3e})"
    )]
    NonCommutingInterleaved {
        slot: usize,
        event: usize,
        projector: usize,
        deviation: f64,
    },

    /// An outcome tuple does not address a leaf of the tree.
    #[error("outcome tuple is not a path of this tree ({reason})")]
    PathNotInTree { reason: &'static str },

    /// A weight vector that must sum to one does not.
    #[error("weights must sum to 1 (got {sum})")]
    WeightsNotNormalized { sum: f64 },

    /// Weights must be non-negative.
    #[error("weight {value} at index {index} is negative")]
    NegativeWeight { index: usize, value: f64 },

    /// A uniform variate must lie in `[0, 1)`.
    #[error("rand value {value} outside [0, 1)")]
    RandValueOutOfRange { value: f64 },

    /// Weight ratios against a (numerically) zero weight are undefined.
    #[error("weight ratio denominator {value:.3e} is below the zero guard")]
    ZeroWeightDivision { value: f64 },

    /// Power iteration did not reach the requested residual.
    #[error(
        "power iteration did not converge in {iterations} iterations \
         (last residual {residual:.3e})"
    )]
    EigenNonConvergence { iterations: usize, residual: f64 },

    /// The sequential surjection policy only runs on all-binary trees.
    #[error("event {event} has {outcomes} outcomes; this policy requires binary events")]
    NonBinaryEvent { event: usize, outcomes: usize },

    /// No branch produced a nonzero overlap amplitude, so no race winner
    /// exists.
    #[error("all overlap amplitudes are zero; no branch can win the race")]
    AllAmplitudesZero,

    /// A single uniform variate cannot drive this policy; it needs a full
    /// RNG stream.
    #[error("policy `{policy}` is not driven by a single uniform variate")]
    PolicyNeedsStream { policy: &'static str },

    /// Two paired slices disagree in length.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A scalar parameter is outside its documented range.
    #[error("parameter `{name}` = {value} is out of range ({requirement})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A collection that must be non-empty is empty.
    #[error("{what} must not be empty")]
    EmptyInput { what: &'static str },
}
