//! Per-tree precomputation shared across many trials.

use num_complex::Complex64;
use rand::Rng;

use crate::chain::{BranchTree, Path, ZERO_WEIGHT_GUARD};
use crate::error::{Error, Result};
use crate::rng::Stream;
use crate::select::dominant::dominant_scores;
use crate::select::{
    select_cumulative, surjection_amplitudes, surjection_select_joint, Diagnostics,
    SelectionOutcome, SelectionPolicy,
};

/// Everything about a `(policy, tree)` pair that does not change between
/// trials: enumerated paths, weights, spectral scores, level aggregates.
///
/// Building one of these versus calling [`crate::select::select`] per trial
/// changes nothing about the decisions — the per-trial code path is shared —
/// but moves the enumeration and eigensolver work out of the trial loop.
#[derive(Debug, Clone)]
pub struct PreparedSelector {
    policy: SelectionPolicy,
    paths: Vec<Path>,
    weights: Vec<f64>,
    mode: Mode,
}

#[derive(Debug, Clone)]
enum Mode {
    Cumulative {
        normalized: Vec<f64>,
    },
    Dominant {
        scores: Vec<f64>,
        gap: Option<f64>,
        fallback: bool,
    },
    Joint {
        overlap_dim: u64,
    },
    Sequential {
        overlap_dim: u64,
        /// `level_sums[l]` holds the `2^l` subtree weight aggregates at
        /// depth `l`; level 0 is the root total, the last level the leaf
        /// weights.
        level_sums: Vec<Vec<f64>>,
    },
}

/// Minimal per-trial result for hot loops: no cloned weight vectors.
#[derive(Debug, Clone)]
pub struct LeanSelection {
    /// Chosen leaf in enumeration order.
    pub leaf_index: usize,
    /// Finite `ln(|A_win|^2 / |A_lose|^2)` margins of this trial's races.
    pub race_log_ratios: Vec<f64>,
    /// Squared race amplitudes per leaf (joint policy only).
    pub overlap_sq: Option<Vec<f64>>,
    /// Whether the dominant-vector fallback was active.
    pub fallback: bool,
}

impl PreparedSelector {
    /// Enumerates the tree and performs all per-policy precomputation.
    ///
    /// Fails fast on incompatible pairs — e.g. the sequential policy on a
    /// non-binary tree — so a repeated-trial run never dies mid-flight.
    pub fn new(policy: SelectionPolicy, tree: &BranchTree) -> Result<Self> {
        let paths = tree.enumerate_paths()?;
        let weights: Vec<f64> = paths.iter().map(|p| p.weight).collect();
        let total: f64 = weights.iter().sum();
        if total <= ZERO_WEIGHT_GUARD {
            return Err(Error::DegenerateFurcation {
                threshold: ZERO_WEIGHT_GUARD,
            });
        }
        let normalized: Vec<f64> = weights.iter().map(|w| w / total).collect();

        let mode = match &policy {
            SelectionPolicy::CumulativeRandom => Mode::Cumulative { normalized },
            SelectionPolicy::DominantVector { tol, max_iter } => {
                let d = dominant_scores(tree, &paths, &normalized, *tol, *max_iter)?;
                Mode::Dominant {
                    scores: d.scores,
                    gap: d.gap,
                    fallback: d.fallback,
                }
            }
            SelectionPolicy::SurjectionJoint { overlap_dim } => {
                if *overlap_dim == 0 {
                    return Err(Error::InvalidParameter {
                        name: "overlap_dim",
                        value: 0.0,
                        requirement: "must be >= 1",
                    });
                }
                Mode::Joint {
                    overlap_dim: *overlap_dim,
                }
            }
            SelectionPolicy::SurjectionSequential { overlap_dim } => {
                if *overlap_dim == 0 {
                    return Err(Error::InvalidParameter {
                        name: "overlap_dim",
                        value: 0.0,
                        requirement: "must be >= 1",
                    });
                }
                for (event, e) in tree.events().iter().enumerate() {
                    if e.n_outcomes() != 2 {
                        return Err(Error::NonBinaryEvent {
                            event,
                            outcomes: e.n_outcomes(),
                        });
                    }
                }
                let depth = tree.events().len();
                let mut level_sums = vec![Vec::new(); depth + 1];
                level_sums[depth] = weights.clone();
                for l in (0..depth).rev() {
                    let below = &level_sums[l + 1];
                    let mut level = Vec::with_capacity(below.len() / 2);
                    for pair in below.chunks_exact(2) {
                        level.push(pair[0] + pair[1]);
                    }
                    level_sums[l] = level;
                }
                Mode::Sequential {
                    overlap_dim: *overlap_dim,
                    level_sums,
                }
            }
        };
        Ok(Self {
            policy,
            paths,
            weights,
            mode,
        })
    }

    /// The policy this selector runs.
    pub fn policy(&self) -> &SelectionPolicy {
        &self.policy
    }

    /// Enumerated paths in lexicographic order.
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    /// Leaf weights in enumeration order.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// One choice decision with minimal allocation; see [`LeanSelection`].
    pub fn select_index(&self, rng: &mut Stream) -> Result<LeanSelection> {
        match &self.mode {
            Mode::Cumulative { normalized } => {
                let r: f64 = rng.random();
                Ok(LeanSelection {
                    leaf_index: select_cumulative(normalized, r)?,
                    race_log_ratios: Vec::new(),
                    overlap_sq: None,
                    fallback: false,
                })
            }
            Mode::Dominant {
                scores, fallback, ..
            } => {
                let r: f64 = rng.random();
                Ok(LeanSelection {
                    leaf_index: select_cumulative(scores, r)?,
                    race_log_ratios: Vec::new(),
                    overlap_sq: None,
                    fallback: *fallback,
                })
            }
            Mode::Joint { overlap_dim } => {
                let preps = vec![Complex64::ONE; self.weights.len()];
                let amps =
                    surjection_amplitudes(&self.weights, &preps, *overlap_dim, rng)?;
                let winner = surjection_select_joint(&amps)?;
                let sq: Vec<f64> = amps.iter().map(|a| a.norm_sqr()).collect();
                let mut ratios = Vec::new();
                let runner_up = sq
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != winner)
                    .map(|(_, &s)| s)
                    .fold(0.0_f64, f64::max);
                if runner_up > 0.0 {
                    ratios.push((sq[winner] / runner_up).ln());
                }
                Ok(LeanSelection {
                    leaf_index: winner,
                    race_log_ratios: ratios,
                    overlap_sq: Some(sq),
                    fallback: false,
                })
            }
            Mode::Sequential {
                overlap_dim,
                level_sums,
            } => {
                let depth = level_sums.len() - 1;
                let mut idx = 0usize;
                let mut ratios = Vec::with_capacity(depth);
                for l in 0..depth {
                    let left = level_sums[l + 1][2 * idx];
                    let right = level_sums[l + 1][2 * idx + 1];
                    let amps = surjection_amplitudes(
                        &[left, right],
                        &[Complex64::ONE, Complex64::ONE],
                        *overlap_dim,
                        rng,
                    )?;
                    let winner = surjection_select_joint(&amps)?;
                    let win_sq = amps[winner].norm_sqr();
                    let lose_sq = amps[1 - winner].norm_sqr();
                    if lose_sq > 0.0 {
                        ratios.push((win_sq / lose_sq).ln());
                    }
                    idx = 2 * idx + winner;
                }
                Ok(LeanSelection {
                    leaf_index: idx,
                    race_log_ratios: ratios,
                    overlap_sq: None,
                    fallback: false,
                })
            }
        }
    }

    /// One choice decision with full diagnostics.
    pub fn select(&self, rng: &mut Stream) -> Result<SelectionOutcome> {
        let lean = self.select_index(rng)?;
        Ok(self.outcome_from(lean))
    }

    /// One decision of a uniform-driven policy (cumulative or dominant)
    /// from an explicit variate in `[0, 1)`; surjection policies need a
    /// full stream and are refused.
    pub fn select_uniform_driven(&self, rand_value: f64) -> Result<SelectionOutcome> {
        let lean = match &self.mode {
            Mode::Cumulative { normalized } => LeanSelection {
                leaf_index: select_cumulative(normalized, rand_value)?,
                race_log_ratios: Vec::new(),
                overlap_sq: None,
                fallback: false,
            },
            Mode::Dominant {
                scores, fallback, ..
            } => LeanSelection {
                leaf_index: select_cumulative(scores, rand_value)?,
                race_log_ratios: Vec::new(),
                overlap_sq: None,
                fallback: *fallback,
            },
            Mode::Joint { .. } | Mode::Sequential { .. } => {
                return Err(Error::PolicyNeedsStream {
                    policy: self.policy.name(),
                })
            }
        };
        Ok(self.outcome_from(lean))
    }

    fn outcome_from(&self, lean: LeanSelection) -> SelectionOutcome {
        let (branch_scores, spectral_gap) = match &self.mode {
            Mode::Dominant { scores, gap, .. } => (Some(scores.clone()), *gap),
            _ => (None, None),
        };
        SelectionOutcome {
            leaf_index: lean.leaf_index,
            path: self.paths[lean.leaf_index].clone(),
            diagnostics: Diagnostics {
                weights: self.weights.clone(),
                branch_scores,
                overlap_sq: lean.overlap_sq,
                race_log_ratios: lean.race_log_ratios,
                spectral_gap,
                fallback: lean.fallback,
            },
        }
    }
}
