//! Dominant-eigenvector scoring.

use crate::chain::{BranchTree, Path};
use crate::error::{Error, Result};
use crate::hilbert::dominant_eigenpair;
use crate::select::{mixture_matrix, PreparedSelector, SelectionOutcome, SelectionPolicy};

/// Outcome of the spectral scoring step: normalized per-path scores, the
/// estimated spectral gap (when the eigensolver returned one), and whether
/// a tie or solver failure forced the cumulative fallback.
pub(crate) struct DominantScores {
    pub scores: Vec<f64>,
    pub gap: Option<f64>,
    pub fallback: bool,
}

/// Scores each path by squared overlap with the dominant eigenvector of
/// the path-mixture matrix `sum_k |phi_k><phi_k|`.
///
/// Path states of one tree are mutually orthogonal, so the mixture's
/// eigenvalues are exactly the path weights and its dominant eigenvector is
/// the heaviest path's (normalized) state.  Away from spectral ties the
/// normalized scores therefore concentrate on that single path: the policy
/// is deterministic dominance, not probabilistic sampling.  On a tie
/// (estimated gap below `tol`) or solver non-convergence the scores fall
/// back to the normalized weights and the fallback flag is raised.
pub(crate) fn dominant_scores(
    tree: &BranchTree,
    paths: &[Path],
    normalized_weights: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<DominantScores> {
    let mix = mixture_matrix(tree, paths)?;
    let pair = match dominant_eigenpair(&mix, tol, max_iter) {
        Ok(pair) => pair,
        Err(Error::EigenNonConvergence { .. }) => {
            return Ok(DominantScores {
                scores: normalized_weights.to_vec(),
                gap: None,
                fallback: true,
            })
        }
        Err(e) => return Err(e),
    };
    if pair.degenerate {
        return Ok(DominantScores {
            scores: normalized_weights.to_vec(),
            gap: Some(pair.gap),
            fallback: true,
        });
    }
    let mut scores = Vec::with_capacity(paths.len());
    for path in paths {
        let phi = tree.path_state(&path.outcomes)?;
        scores.push(pair.vector.inner(&phi)?.norm_sqr());
    }
    // The eigenvector carries a residual-sized error component, which leaks
    // a squared-residual-sized score onto paths that are exactly orthogonal
    // to the true dominant vector.  Zero that noise floor so losing paths
    // get a genuinely empty sampling interval; real near-ties never get
    // here (they trip the degeneracy fallback above).
    let noise_floor = scores.iter().copied().fold(0.0_f64, f64::max) * 1e-18;
    for s in &mut scores {
        if *s < noise_floor {
            *s = 0.0;
        }
    }
    let total: f64 = scores.iter().sum();
    if total <= f64::MIN_POSITIVE {
        // The eigenvector escaped the span of the path states, which only
        // float pathology can produce; weights remain the honest answer.
        return Ok(DominantScores {
            scores: normalized_weights.to_vec(),
            gap: Some(pair.gap),
            fallback: true,
        });
    }
    for s in &mut scores {
        *s /= total;
    }
    Ok(DominantScores {
        scores,
        gap: Some(pair.gap),
        fallback: false,
    })
}

/// One dominant-vector choice decision driven by an explicit uniform
/// variate in `[0, 1)`.
pub fn dominant_vector_select(
    tree: &BranchTree,
    rand_value: f64,
    tol: f64,
    max_iter: usize,
) -> Result<SelectionOutcome> {
    let policy = SelectionPolicy::DominantVector { tol, max_iter };
    PreparedSelector::new(policy, tree)?.select_uniform_driven(rand_value)
}
