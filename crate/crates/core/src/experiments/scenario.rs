//! Concrete measurement scenarios.

use num_complex::Complex64;

use crate::chain::{
    alignment_apply, emit_witnesses, furcate, BranchTree, MeasurementEvent, WitnessModel,
};
use crate::error::{Error, Result};
use crate::hilbert::{CompositeSpace, Operator, StateVector};

use super::stats::least_squares_fit;

/// Planck constant times the speed of light, in joule-meters
/// (both factors are exact SI definitions).
const HC_JOULE_METERS: f64 = 6.626_070_15e-34 * 299_792_458.0;

/// A spin-1/2 prepared at angle `theta` against the measurement axis and
/// measured along that axis.
///
/// The squared amplitudes are `cos^2(theta/2)` and `sin^2(theta/2)` — the
/// classic one-parameter family every selection policy is scored against.
#[derive(Debug, Clone)]
pub struct SternGerlachScenario {
    theta: f64,
    witness: WitnessModel,
}

impl SternGerlachScenario {
    /// A scenario with tilt `theta` in `[0, pi]` and a single perfectly
    /// distinguishing witness mode.
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                requirement: "must lie in [0, pi]",
            });
        }
        Ok(Self {
            theta,
            witness: WitnessModel::perfect(1),
        })
    }

    /// Replaces the witness model.
    pub fn with_witness(mut self, witness: WitnessModel) -> Self {
        self.witness = witness;
        self
    }

    /// The tilt angle.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The squared amplitudes `(cos^2(theta/2), sin^2(theta/2))`.
    pub fn born_weights(&self) -> (f64, f64) {
        born_expected(self.theta)
    }

    /// The one-event branch tree of this scenario.
    pub fn branch_tree(&self) -> Result<BranchTree> {
        let space = CompositeSpace::single(2)?;
        let half = self.theta / 2.0;
        let prep = StateVector::from_slice(
            space.clone(),
            &[
                Complex64::new(half.cos(), 0.0),
                Complex64::new(half.sin(), 0.0),
            ],
        )?;
        let event = MeasurementEvent::factor_basis(space, 0, self.witness, "spin-axis")?;
        BranchTree::bare(prep, vec![event])
    }
}

/// The squared-amplitude pair `(cos^2(theta/2), sin^2(theta/2))` for a
/// tilt of `theta`.
pub fn born_expected(theta: f64) -> (f64, f64) {
    let half = theta / 2.0;
    (half.cos().powi(2), half.sin().powi(2))
}

/// Builds a product tree from declarative per-event outcome weights.
///
/// Row `e` of `event_weights` lists the outcome probabilities of event `e`;
/// each row must have at least two non-negative entries summing to 1 within
/// `1e-9`.  The tree is realized as a genuine quantum system — one tensor
/// factor per event, prepared in the product of per-factor superpositions
/// `sum_u sqrt(w_u) |u>` — so its enumerated leaf weights reproduce the
/// declared products exactly (up to rounding) and every policy can run on
/// it.  All events share the given witness model.
pub fn product_tree(event_weights: &[Vec<f64>], witness: WitnessModel) -> Result<BranchTree> {
    if event_weights.is_empty() {
        return Err(Error::EmptyInput {
            what: "event weight rows",
        });
    }
    for row in event_weights {
        if row.len() < 2 {
            return Err(Error::TooFewOutcomes { found: row.len() });
        }
        let mut sum = 0.0;
        for (index, &w) in row.iter().enumerate() {
            if w < 0.0 {
                return Err(Error::NegativeWeight { index, value: w });
            }
            sum += w;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::WeightsNotNormalized { sum });
        }
    }
    let dims: Vec<usize> = event_weights.iter().map(|row| row.len()).collect();
    let space = CompositeSpace::new(dims)?;

    let mut prep = factor_superposition(&event_weights[0])?;
    for row in &event_weights[1..] {
        prep = prep.tensor(&factor_superposition(row)?)?;
    }
    // Re-wrap into the composite space built above (identical layout).
    let prep = StateVector::new(space.clone(), prep.amps().clone())?;

    let events = (0..event_weights.len())
        .map(|e| MeasurementEvent::factor_basis(space.clone(), e, witness, format!("event-{e}")))
        .collect::<Result<Vec<_>>>()?;
    BranchTree::bare(prep, events)
}

fn factor_superposition(weights: &[f64]) -> Result<StateVector> {
    let space = CompositeSpace::single(weights.len())?;
    let amps: Vec<Complex64> = weights
        .iter()
        .map(|&w| Complex64::new(w.sqrt(), 0.0))
        .collect();
    StateVector::from_slice(space, &amps)
}

/// Energy in joules of a photon with the given wavelength in meters.
///
/// Witness modes in the radio band — wavelengths of centimeters to tens of
/// meters — carry energies around 1e-23 to 1e-26 J each: recording an
/// outcome on thousands of such modes costs essentially nothing
/// thermodynamically, which is why mode counts in the hundreds are the
/// physically ordinary regime.
pub fn witness_photon_energy(wavelength_m: f64) -> Result<f64> {
    if !(wavelength_m > 0.0) {
        return Err(Error::InvalidParameter {
            name: "wavelength_m",
            value: wavelength_m,
            requirement: "must be > 0",
        });
    }
    Ok(HC_JOULE_METERS / wavelength_m)
}

/// Fringe visibility of a two-arm interferometer whose arms carry witness
/// records under `model`.
///
/// The state `(|0> + |1>)/sqrt(2)` is furcated along the arm basis, each
/// arm is stamped with witnesses, and the arms are recombined through a
/// phase-and-mixer analyzer.  The detector intensity is assembled from the
/// cross-arm coefficient matrix with [`alignment_apply`], so the fringe
/// contrast directly measures the witness suppression factor:
/// `I(phi) = (1 + eps^n cos phi) / 2`, visibility exactly `eps^n`.
pub fn interference_visibility(model: &WitnessModel) -> Result<f64> {
    let space = CompositeSpace::single(2)?;
    let s = Complex64::new(0.5_f64.sqrt(), 0.0);
    let prep = StateVector::from_slice(space.clone(), &[s, s])?;
    let arm_event = MeasurementEvent::factor_basis(space.clone(), 0, *model, "arm")?;
    let witnessed = emit_witnesses(furcate(&prep, &arm_event)?, *model);

    let detector = Operator::basis_projector(space.clone(), 0, 0)?;
    let branches = witnessed.branches();
    let k = branches.len();

    let mut max_i = f64::NEG_INFINITY;
    let mut min_i = f64::INFINITY;
    for step in 0..=16 {
        let phi = std::f64::consts::PI * step as f64 / 8.0;
        let analyzer = mixer(&space, phi)?;
        // Cross-arm coefficients at the detector, then alignment.
        let mut coeffs = ndarray::Array2::from_elem((k, k), Complex64::ZERO);
        for (u, bu) in branches.iter().enumerate() {
            let au = analyzer.apply(&bu.state)?;
            for (v, bv) in branches.iter().enumerate() {
                let av = analyzer.apply(&bv.state)?;
                coeffs[(u, v)] = au.inner(&detector.apply(&av)?)?;
            }
        }
        let aligned = alignment_apply(&coeffs, model)?;
        let intensity: Complex64 = aligned.iter().sum();
        let intensity = intensity.re;
        max_i = max_i.max(intensity);
        min_i = min_i.min(intensity);
    }
    Ok((max_i - min_i) / (max_i + min_i))
}

/// The analyzer `H * diag(1, e^{i phi})`: a relative phase between the arms
/// followed by a balanced mixer.
fn mixer(space: &CompositeSpace, phi: f64) -> Result<Operator> {
    let s = Complex64::new(0.5_f64.sqrt(), 0.0);
    let e = Complex64::from_polar(1.0, phi);
    let m = ndarray::array![[s, s * e], [s, -s * e]];
    Operator::unitary(space.clone(), m)
}

/// Visibility as a function of witness mode count, for a fixed per-mode
/// overlap strictly between 0 and 1 (the endpoints make the log-linear
/// decay fit below degenerate).
pub fn alignment_scan(per_mode_overlap: f64, n_modes_max: usize) -> Result<Vec<(usize, f64)>> {
    if !(per_mode_overlap > 0.0 && per_mode_overlap < 1.0) {
        return Err(Error::InvalidParameter {
            name: "per_mode_overlap",
            value: per_mode_overlap,
            requirement: "must lie strictly between 0 and 1",
        });
    }
    (0..=n_modes_max)
        .map(|n| {
            let model = WitnessModel::new(n, per_mode_overlap)?;
            Ok((n, interference_visibility(&model)?))
        })
        .collect()
}

/// Least-squares slope of `ln(visibility)` against the mode count; for an
/// exponential decay `eps^n` this recovers `ln(eps)`.
pub fn fitted_log_visibility_slope(scan: &[(usize, f64)]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = scan
        .iter()
        .map(|&(n, v)| (n as f64, v.ln()))
        .collect();
    least_squares_fit(&pts).map(|(slope, _)| slope)
}
