//! Repeated-trial Monte Carlo over selection policies.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::BranchTree;
use crate::error::{Error, Result};
use crate::rng::trial_stream;
use crate::select::{PreparedSelector, SelectionPolicy};

use super::stats::{chi_square, median, total_variation};

/// Outcome counts and fit statistics of one `(tree, policy)` run.
///
/// Everything serialized here is a pure function of `(tree, policy,
/// n_trials, seed)`: trial `t` draws from the stream hashed out of
/// `(seed, t)` no matter which thread executes it, and all aggregates are
/// order-independent, so two runs of the same inputs serialize to identical
/// bytes regardless of thread count.  Wall time is measured but deliberately
/// excluded from serialization for exactly that reason.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialReport {
    /// Policy name (see [`SelectionPolicy::name`]).
    pub policy: String,
    /// Number of trials run.
    pub n_trials: u64,
    /// Root seed of the run.
    pub seed: u64,
    /// Outcome tuple of each leaf, in enumeration order.
    pub leaf_outcomes: Vec<Vec<usize>>,
    /// Trials that selected each leaf.
    pub observed: Vec<u64>,
    /// Normalized squared-amplitude weight of each leaf: the reference
    /// distribution the counts are scored against.
    pub expected: Vec<f64>,
    /// Pearson statistic of observed against expected.
    pub chi_square: f64,
    /// Degrees of freedom of that test.
    pub dof: usize,
    /// Upper-tail p-value of that test.
    pub p_value: f64,
    /// True when a zero-expected leaf was observed (infinite statistic).
    pub chi_square_infinite: bool,
    /// True when the test had a single live cell and is vacuous.
    pub degenerate_dof: bool,
    /// Median of `|ln(|A_win|^2 / |A_lose|^2)|` pooled over all races of
    /// all trials; `None` for policies that run no races.  Values well
    /// above 1 mean races are decided by wide margins rather than
    /// photo-finishes.
    pub median_abs_race_log_ratio: Option<f64>,
    /// Fraction of trials that used the dominant-vector fallback.
    pub fallback_share: f64,
    /// Wall-clock seconds for the trial loop (not serialized).
    #[serde(skip)]
    pub wall_seconds: f64,
}

/// Accumulator merged across threads; every field is order-independent.
struct Tally {
    counts: Vec<u64>,
    abs_log_ratios: Vec<f64>,
    fallbacks: u64,
}

impl Tally {
    fn new(leaves: usize) -> Self {
        Self {
            counts: vec![0; leaves],
            abs_log_ratios: Vec::new(),
            fallbacks: 0,
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.abs_log_ratios.extend(other.abs_log_ratios);
        self.fallbacks += other.fallbacks;
        self
    }
}

/// Runs `n_trials` independent choice decisions of `policy` on `tree` and
/// scores the outcome frequencies against the normalized path weights.
pub fn run_trials(
    tree: &BranchTree,
    policy: &SelectionPolicy,
    n_trials: u64,
    seed: u64,
) -> Result<TrialReport> {
    if n_trials == 0 {
        return Err(Error::InvalidParameter {
            name: "n_trials",
            value: 0.0,
            requirement: "must be >= 1",
        });
    }
    let prepared = PreparedSelector::new(policy.clone(), tree)?;
    let leaves = prepared.paths().len();
    let total_weight: f64 = prepared.weights().iter().sum();
    let expected: Vec<f64> = prepared.weights().iter().map(|w| w / total_weight).collect();

    let started = std::time::Instant::now();
    let tally = (0..n_trials)
        .into_par_iter()
        .try_fold(
            || Tally::new(leaves),
            |mut tally, trial| -> Result<Tally> {
                let mut rng = trial_stream(seed, trial);
                let lean = prepared.select_index(&mut rng)?;
                tally.counts[lean.leaf_index] += 1;
                tally
                    .abs_log_ratios
                    .extend(lean.race_log_ratios.iter().map(|r| r.abs()));
                if lean.fallback {
                    tally.fallbacks += 1;
                }
                Ok(tally)
            },
        )
        .try_reduce(|| Tally::new(leaves), |a, b| Ok(a.merge(b)))?;
    let wall_seconds = started.elapsed().as_secs_f64();

    let fit = chi_square(&tally.counts, &expected)?;
    let median_abs_race_log_ratio = median(tally.abs_log_ratios);
    Ok(TrialReport {
        policy: policy.name().to_string(),
        n_trials,
        seed,
        leaf_outcomes: prepared.paths().iter().map(|p| p.outcomes.clone()).collect(),
        observed: tally.counts,
        expected,
        chi_square: fit.statistic,
        dof: fit.dof,
        p_value: fit.p_value,
        chi_square_infinite: fit.infinite,
        degenerate_dof: fit.degenerate_dof,
        median_abs_race_log_ratio,
        fallback_share: tally.fallbacks as f64 / n_trials as f64,
        wall_seconds,
    })
}

/// Observed-frequency distance between two policies on the same tree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairwiseDistance {
    pub policy_a: String,
    pub policy_b: String,
    /// Total variation distance between the two observed frequency vectors.
    pub total_variation: f64,
}

/// Reports for several policies on one tree, plus their pairwise distances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolicyComparison {
    pub reports: Vec<TrialReport>,
    pub distances: Vec<PairwiseDistance>,
}

/// Runs every policy on the same tree with the same seed and trial count.
///
/// Incompatibilities (e.g. the sequential policy on a non-binary tree)
/// surface as errors before any trials run.
pub fn compare_policies(
    tree: &BranchTree,
    policies: &[SelectionPolicy],
    n_trials: u64,
    seed: u64,
) -> Result<PolicyComparison> {
    if policies.is_empty() {
        return Err(Error::EmptyInput { what: "policies" });
    }
    // Fail fast on any incompatible pair before burning trials on the rest.
    for policy in policies {
        PreparedSelector::new(policy.clone(), tree)?;
    }
    let reports: Vec<TrialReport> = policies
        .iter()
        .map(|p| run_trials(tree, p, n_trials, seed))
        .collect::<Result<Vec<_>>>()?;
    let mut distances = Vec::new();
    for a in 0..reports.len() {
        for b in (a + 1)..reports.len() {
            let fa: Vec<f64> = reports[a]
                .observed
                .iter()
                .map(|&c| c as f64 / n_trials as f64)
                .collect();
            let fb: Vec<f64> = reports[b]
                .observed
                .iter()
                .map(|&c| c as f64 / n_trials as f64)
                .collect();
            distances.push(PairwiseDistance {
                policy_a: reports[a].policy.clone(),
                policy_b: reports[b].policy.clone(),
                total_variation: total_variation(&fa, &fb)?,
            });
        }
    }
    Ok(PolicyComparison { reports, distances })
}
