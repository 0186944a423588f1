//! Overlap-race amplitudes and winners.
//!
//! The conjugate boundary state is modeled as Haar-random relative to every
//! branch's witness configuration.  Branch `b`, carrying squared amplitude
//! `w_b` spread over an effective register of dimension `D`, therefore sees
//! a complex Gaussian overlap amplitude `A_b` with `E[|A_b|^2] = w_b / D`:
//! heavier branches are *likelier* to produce the largest overlap, but any
//! branch can win any single race.  `|A_b|^2` is exponentially distributed,
//! and for a two-way race the exponential order statistics give
//! `P(b wins) = w_b / (w_0 + w_1)` exactly — the squared-amplitude rule.
//! With three or more simultaneous contestants the winner distribution is
//! *not* the normalized weight vector, which is precisely the measurable
//! difference between the joint and sequential policies.

use num_complex::Complex64;

use crate::chain::BranchTree;
use crate::error::{Error, Result};
use crate::rng::{complex_gaussian, Stream};
use crate::select::{SelectionOutcome, SelectionPolicy};

/// Draws one overlap amplitude per branch.
///
/// `A_b = prep_overlaps[b] * G_b` with `G_b` complex Gaussian of variance
/// `branch_weights[b] / overlap_dim`.  Callers whose weights already include
/// the preparation factor pass unit `prep_overlaps`.  A branch of exactly
/// zero weight draws nothing — its amplitude is exactly zero and the RNG
/// stream is left untouched, so dead branches do not shift the randomness
/// of live ones.
pub fn surjection_amplitudes(
    branch_weights: &[f64],
    prep_overlaps: &[Complex64],
    overlap_dim: u64,
    rng: &mut Stream,
) -> Result<Vec<Complex64>> {
    if branch_weights.len() != prep_overlaps.len() {
        return Err(Error::LengthMismatch {
            left: branch_weights.len(),
            right: prep_overlaps.len(),
        });
    }
    if overlap_dim == 0 {
        return Err(Error::InvalidParameter {
            name: "overlap_dim",
            value: 0.0,
            requirement: "must be >= 1",
        });
    }
    let d = overlap_dim as f64;
    branch_weights
        .iter()
        .zip(prep_overlaps.iter())
        .enumerate()
        .map(|(index, (&w, &prep))| {
            if w < 0.0 {
                return Err(Error::NegativeWeight { index, value: w });
            }
            if w == 0.0 {
                return Ok(Complex64::ZERO);
            }
            Ok(prep * complex_gaussian(rng, w / d))
        })
        .collect()
}

/// The winner of a joint race: the index with the largest `|A_b|^2`.
///
/// Exact ties resolve to the lowest index (they occur with probability zero
/// for continuous draws); an all-zero amplitude vector has no winner and is
/// refused.
pub fn surjection_select_joint(amplitudes: &[Complex64]) -> Result<usize> {
    if amplitudes.is_empty() {
        return Err(Error::EmptyInput { what: "amplitudes" });
    }
    let mut best = 0usize;
    let mut best_sq = 0.0f64;
    for (i, a) in amplitudes.iter().enumerate() {
        let sq = a.norm_sqr();
        if sq > best_sq {
            best = i;
            best_sq = sq;
        }
    }
    if best_sq == 0.0 {
        return Err(Error::AllAmplitudesZero);
    }
    Ok(best)
}

/// Runs the sequential race on a binary tree: at every level, the two
/// subtree weight aggregates race pairwise and the loser's subtree is
/// discarded.
///
/// Requires every event to be binary; non-binary trees are refused up
/// front.  Selection statistics match per-level conditional weights
/// exactly (each binary race is Born-exact), so this policy reproduces the
/// squared-amplitude rule on any tree it accepts.
pub fn surjection_select_sequential(
    tree: &BranchTree,
    overlap_dim: u64,
    rng: &mut Stream,
) -> Result<SelectionOutcome> {
    let policy = SelectionPolicy::SurjectionSequential { overlap_dim };
    crate::select::PreparedSelector::new(policy, tree)?.select(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn amplitude_variances_track_weights() {
        let mut rng = rng::stream(21);
        let n = 100_000;
        let (mut s0, mut s1) = (0.0, 0.0);
        for _ in 0..n {
            let amps = surjection_amplitudes(
                &[0.3, 0.7],
                &[Complex64::ONE, Complex64::ONE],
                1 << 16,
                &mut rng,
            )
            .unwrap();
            s0 += amps[0].norm_sqr();
            s1 += amps[1].norm_sqr();
        }
        let d = (1u64 << 16) as f64;
        let m0 = s0 / n as f64 * d;
        let m1 = s1 / n as f64 * d;
        // Exponential mean estimate: sd ~ w/sqrt(n) ~ 0.002.
        assert!((m0 - 0.3).abs() < 0.01, "E|A0|^2 * D = {m0}");
        assert!((m1 - 0.7).abs() < 0.02, "E|A1|^2 * D = {m1}");
    }

    #[test]
    fn zero_weight_branch_draws_nothing() {
        let mut a = rng::stream(5);
        let mut b = rng::stream(5);
        let with_zero = surjection_amplitudes(
            &[0.5, 0.0, 0.5],
            &[Complex64::ONE; 3],
            16,
            &mut a,
        )
        .unwrap();
        let without = surjection_amplitudes(
            &[0.5, 0.5],
            &[Complex64::ONE; 2],
            16,
            &mut b,
        )
        .unwrap();
        assert_eq!(with_zero[1], Complex64::ZERO);
        assert_eq!(with_zero[0], without[0]);
        assert_eq!(with_zero[2], without[1]);
    }

    #[test]
    fn prep_overlap_scales_amplitudes() {
        let mut a = rng::stream(9);
        let mut b = rng::stream(9);
        let unit = surjection_amplitudes(&[1.0], &[Complex64::ONE], 4, &mut a).unwrap();
        let scaled =
            surjection_amplitudes(&[1.0], &[Complex64::new(0.0, 2.0)], 4, &mut b).unwrap();
        assert!((scaled[0] / unit[0] - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn joint_winner_is_argmax() {
        let amps = [
            Complex64::new(0.1, 0.0),
            Complex64::new(0.0, -0.5),
            Complex64::new(0.3, 0.3),
        ];
        assert_eq!(surjection_select_joint(&amps).unwrap(), 1);
    }

    #[test]
    fn all_zero_race_is_refused() {
        assert!(matches!(
            surjection_select_joint(&[Complex64::ZERO, Complex64::ZERO]),
            Err(Error::AllAmplitudesZero)
        ));
        assert!(matches!(
            surjection_select_joint(&[]),
            Err(Error::EmptyInput { .. })
        ));
    }

    #[test]
    fn mismatched_inputs_are_refused() {
        let mut rng = rng::stream(1);
        assert!(matches!(
            surjection_amplitudes(&[1.0], &[], 4, &mut rng),
            Err(Error::LengthMismatch { left: 1, right: 0 })
        ));
        assert!(matches!(
            surjection_amplitudes(&[1.0], &[Complex64::ONE], 0, &mut rng),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            surjection_amplitudes(&[-0.1], &[Complex64::ONE], 4, &mut rng),
            Err(Error::NegativeWeight { .. })
        ));
    }

    #[test]
    fn binary_race_matches_weight_share() {
        // P(branch 0 wins) = w0/(w0+w1) exactly for exponential variates;
        // check the Monte Carlo frequency at 3 sigma.
        let mut rng = rng::stream(33);
        let (w0, w1) = (0.25, 0.75);
        let n = 200_000u64;
        let mut wins0 = 0u64;
        for _ in 0..n {
            let amps = surjection_amplitudes(
                &[w0, w1],
                &[Complex64::ONE, Complex64::ONE],
                1 << 16,
                &mut rng,
            )
            .unwrap();
            if surjection_select_joint(&amps).unwrap() == 0 {
                wins0 += 1;
            }
        }
        let freq = wins0 as f64 / n as f64;
        let sigma = (0.25 * 0.75 / n as f64).sqrt();
        assert!(
            (freq - 0.25).abs() < 3.0 * sigma,
            "freq = {freq}, sigma = {sigma}"
        );
    }
}
