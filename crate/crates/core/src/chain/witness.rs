//! Witness production and alignment projection.
//!
//! When a branch forms, the apparatus and its environment imprint the
//! outcome on many independent modes (pointer positions, scattered photons,
//! amplified charge).  Each mode overlaps the corresponding mode of a
//! sibling branch by at most some `eps < 1`, so the total overlap between
//! two branch witness records is `eps^n_modes` — exponentially small in the
//! number of modes.  That one scalar is all downstream code needs, so the
//! model never materializes the `2^n`-dimensional witness register; the
//! suppression factor is carried analytically.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::event::Branch;

/// The witness side of one measurement event: how many modes record the
/// outcome and how much two distinct outcomes' modes still overlap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessModel {
    n_modes: usize,
    per_mode_overlap: f64,
}

impl WitnessModel {
    /// A model with `n_modes` modes of pairwise overlap `per_mode_overlap`,
    /// which must lie in `[0, 1]`.
    pub fn new(n_modes: usize, per_mode_overlap: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&per_mode_overlap) {
            return Err(Error::InvalidOverlap {
                value: per_mode_overlap,
            });
        }
        Ok(Self {
            n_modes,
            per_mode_overlap,
        })
    }

    /// Perfectly distinguishing witnesses: overlap 0 per mode.
    pub fn perfect(n_modes: usize) -> Self {
        Self {
            n_modes,
            per_mode_overlap: 0.0,
        }
    }

    /// No witnesses at all: zero modes, suppression factor 1.
    pub fn none() -> Self {
        Self {
            n_modes: 0,
            per_mode_overlap: 1.0,
        }
    }

    /// Number of witness modes.
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Overlap contributed by a single mode.
    pub fn per_mode_overlap(&self) -> f64 {
        self.per_mode_overlap
    }

    /// Total overlap `eps^n_modes` between the witness records of two
    /// distinct outcomes.  Zero modes means no record and no suppression
    /// (the factor is 1, including for `eps = 0`).
    pub fn suppression(&self) -> f64 {
        if self.n_modes == 0 {
            1.0
        } else {
            self.per_mode_overlap.powi(self.n_modes as i32)
        }
    }

    /// Overlap of the records of outcomes `a` and `b`: 1 on the diagonal,
    /// [`suppression`](Self::suppression) off it.
    pub fn cross_overlap(&self, a: usize, b: usize) -> f64 {
        if a == b {
            1.0
        } else {
            self.suppression()
        }
    }
}

/// A branch whose outcome has been imprinted on witness modes.
#[derive(Debug, Clone)]
pub struct WitnessedBranch {
    /// Outcome index within the event.
    pub outcome: usize,
    /// Unnormalized system state of the branch (witnesses are tracked
    /// analytically, not as tensor factors).
    pub state: crate::hilbert::StateVector,
    /// Branch amplitude norm.
    pub norm: f64,
}

/// All branches of one event after witness production.
#[derive(Debug, Clone)]
pub struct WitnessedState {
    branches: Vec<WitnessedBranch>,
    model: WitnessModel,
}

impl WitnessedState {
    /// The witnessed branches, in outcome order.
    pub fn branches(&self) -> &[WitnessedBranch] {
        &self.branches
    }

    /// The witness model stamped on every branch.
    pub fn model(&self) -> &WitnessModel {
        &self.model
    }

    /// Effective witness overlap between branches `u` and `v`.
    pub fn cross_overlap(&self, u: usize, v: usize) -> f64 {
        self.model
            .cross_overlap(self.branches[u].outcome, self.branches[v].outcome)
    }
}

/// Stamps a witness record on every branch of a furcation.
pub fn emit_witnesses(branches: Vec<Branch>, model: WitnessModel) -> WitnessedState {
    let branches = branches
        .into_iter()
        .map(|b| WitnessedBranch {
            outcome: b.outcome,
            state: b.state,
            norm: b.norm,
        })
        .collect();
    WitnessedState { branches, model }
}

/// Alignment projection on a matrix of cross-branch coefficients: each
/// off-diagonal entry — the interference between two distinct outcomes — is
/// multiplied by the witness suppression factor; diagonals pass through.
///
/// With even one perfectly distinguishing mode the result is exactly
/// diagonal, and applying the projection twice equals applying it once.
pub fn alignment_apply(
    coeffs: &Array2<Complex64>,
    model: &WitnessModel,
) -> Result<Array2<Complex64>> {
    if coeffs.nrows() != coeffs.ncols() {
        return Err(Error::MatrixShape {
            rows: coeffs.nrows(),
            cols: coeffs.ncols(),
            dim: coeffs.nrows(),
        });
    }
    let s = model.suppression();
    let mut out = coeffs.clone();
    for ((i, j), z) in out.indexed_iter_mut() {
        if i != j {
            *z *= s;
        }
    }
    Ok(out)
}
