//! Choice-decision policies: which branch actually happens.
//!
//! Given the weighted paths of a [`BranchTree`](crate::chain::BranchTree),
//! a policy picks one.  Four rules are implemented:
//!
//! * [`SelectionPolicy::CumulativeRandom`] — inverse-CDF sampling on the
//!   path weights.  Reproduces the squared-amplitude rule *by construction*
//!   and serves as the reference everything else is scored against.
//! * [`SelectionPolicy::DominantVector`] — deterministic dominance: build
//!   the mixture of path-state outer products, take its dominant
//!   eigenvector, score each path by overlap with it.  Because path states
//!   are mutually orthogonal the heaviest path *is* the dominant
//!   eigenvector, so away from ties this policy degenerates to "always the
//!   biggest branch" — a deliberately wrong rule kept as a falsifiable
//!   contrast.  Spectral ties (or power-iteration failure) fall back to
//!   cumulative sampling and set a diagnostic flag.
//! * [`SelectionPolicy::SurjectionJoint`] — every leaf draws a complex
//!   Gaussian overlap amplitude against an independent conjugate boundary
//!   (variance proportional to its weight over the register dimension);
//!   the largest squared magnitude wins the race outright.
//! * [`SelectionPolicy::SurjectionSequential`] — the same race run level by
//!   level down a binary tree, two subtree aggregates at a time.
//!
//! The file-level question the experiments answer: which of these races
//! reproduce squared-amplitude statistics, and which measurably do not.
//! For a binary race with weights `(w0, w1)` the exponential-race identity
//! `P(w0 Exp > w1 Exp) = w0/(w0+w1)` makes the joint and sequential rules
//! agree with the reference exactly; for three or more simultaneous
//! contestants the joint race provably deviates (the max of several
//! exponentials is not a categorical sampler), and the experiments measure
//! exactly that gap.

mod cumulative;
mod dominant;
mod matrix;
mod prepared;
mod surjection;

pub use cumulative::select_cumulative;
pub use dominant::dominant_vector_select;
pub use matrix::{build_path_matrix, mixture_matrix, PathMatrix};
pub use prepared::PreparedSelector;
pub use surjection::{
    surjection_amplitudes, surjection_select_joint, surjection_select_sequential,
};

use crate::chain::{BranchTree, Path};
use crate::error::Result;
use crate::rng::Stream;

/// Default dimension of the effective overlap register for surjection
/// policies.
pub const DEFAULT_OVERLAP_DIM: u64 = 1 << 16;
/// Default power-iteration residual tolerance for the dominant-vector
/// policy.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;
/// Default power-iteration cap for the dominant-vector policy.
pub const DEFAULT_EIGEN_MAX_ITER: usize = 10_000;

/// A choice-decision rule with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum SelectionPolicy {
    /// Inverse-CDF sampling on path weights.
    CumulativeRandom,
    /// Dominant-eigenvector scoring with cumulative fallback on spectral
    /// ties.
    DominantVector { tol: f64, max_iter: usize },
    /// One simultaneous overlap race over all leaves.
    SurjectionJoint { overlap_dim: u64 },
    /// Binary overlap races, one per tree level.
    SurjectionSequential { overlap_dim: u64 },
}

impl SelectionPolicy {
    /// Cumulative sampling (no parameters).
    pub fn cumulative_random() -> Self {
        SelectionPolicy::CumulativeRandom
    }

    /// Dominant-vector policy with default eigensolver parameters.
    pub fn dominant_vector() -> Self {
        SelectionPolicy::DominantVector {
            tol: DEFAULT_EIGEN_TOL,
            max_iter: DEFAULT_EIGEN_MAX_ITER,
        }
    }

    /// Joint surjection race with the default register dimension.
    pub fn surjection_joint() -> Self {
        SelectionPolicy::SurjectionJoint {
            overlap_dim: DEFAULT_OVERLAP_DIM,
        }
    }

    /// Sequential surjection race with the default register dimension.
    pub fn surjection_sequential() -> Self {
        SelectionPolicy::SurjectionSequential {
            overlap_dim: DEFAULT_OVERLAP_DIM,
        }
    }

    /// Stable kebab-case name used in reports and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            SelectionPolicy::CumulativeRandom => "cumulative-random",
            SelectionPolicy::DominantVector { .. } => "dominant-vector",
            SelectionPolicy::SurjectionJoint { .. } => "surjection-joint",
            SelectionPolicy::SurjectionSequential { .. } => "surjection-sequential",
        }
    }
}

/// Per-selection diagnostics, kept cheap enough to fill on every trial.
#[derive(Debug, Clone, Default)]
pub struct Diagnostics {
    /// Leaf weights, in enumeration order.
    pub weights: Vec<f64>,
    /// Normalized dominance scores (dominant-vector policy only).
    pub branch_scores: Option<Vec<f64>>,
    /// Squared overlap amplitudes of the race (joint policy only).
    pub overlap_sq: Option<Vec<f64>>,
    /// `ln(|A_winner|^2 / |A_runner_up|^2)` per race, finite entries only.
    /// A large typical magnitude means races are decided by wide margins.
    pub race_log_ratios: Vec<f64>,
    /// Estimated spectral gap of the path mixture (dominant-vector only).
    pub spectral_gap: Option<f64>,
    /// True when a spectral tie (or eigensolver failure) forced the
    /// dominant-vector policy down its cumulative fallback.
    pub fallback: bool,
}

/// The result of one choice decision.
#[derive(Debug, Clone)]
pub struct SelectionOutcome {
    /// Index of the chosen path in enumeration (lexicographic) order.
    pub leaf_index: usize,
    /// The chosen path itself.
    pub path: Path,
    /// How the decision came about.
    pub diagnostics: Diagnostics,
}

/// Runs one choice decision of `policy` on `tree`.
///
/// This is the one-shot convenience entry; repeated-trial callers should
/// build a [`PreparedSelector`] once and reuse it (this function does
/// exactly that internally, so both routes make identical decisions from
/// identical RNG states).
pub fn select(
    policy: &SelectionPolicy,
    tree: &BranchTree,
    rng: &mut Stream,
) -> Result<SelectionOutcome> {
    PreparedSelector::new(policy.clone(), tree)?.select(rng)
}
