//! Two independently chosen boundary states and sandwiched brackets.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{Operator, StateVector};

use super::schedule::EvolutionSchedule;

/// A pair of boundary states: the forward-evolving wave side and a second,
/// conjugate side that closes the bracket from the other end.
///
/// A *related* boundary uses one state for both sides, which reproduces
/// ordinary single-state quantum mechanics.  An *unrelated* boundary draws
/// the conjugate side independently; the mismatch between the two sides is
/// the extra degree of freedom everything in [`crate::select`] races over.
#[derive(Debug, Clone)]
pub struct TwoSidedBoundary {
    wave: StateVector,
    conjugate: StateVector,
    related: bool,
}

impl TwoSidedBoundary {
    /// Both sides equal to one normalized state.
    pub fn related(state: StateVector) -> Result<Self> {
        if !state.is_normalized() {
            return Err(Error::NotNormalized { norm: state.norm() });
        }
        Ok(Self {
            conjugate: state.clone(),
            wave: state,
            related: true,
        })
    }

    /// Independently chosen sides; both must be normalized and share a space.
    pub fn unrelated(wave: StateVector, conjugate: StateVector) -> Result<Self> {
        if wave.space().total_dim() != conjugate.space().total_dim() {
            return Err(Error::DimensionMismatch {
                expected: wave.space().total_dim(),
                found: conjugate.space().total_dim(),
            });
        }
        for s in [&wave, &conjugate] {
            if !s.is_normalized() {
                return Err(Error::NotNormalized { norm: s.norm() });
            }
        }
        Ok(Self {
            wave,
            conjugate,
            related: false,
        })
    }

    /// The wave-side boundary state.
    pub fn wave(&self) -> &StateVector {
        &self.wave
    }

    /// The conjugate-side boundary state.
    pub fn conjugate(&self) -> &StateVector {
        &self.conjugate
    }

    /// Whether both sides are the same state.
    pub fn is_related(&self) -> bool {
        self.related
    }
}

/// The closed bracket of a two-sided boundary over a schedule:
/// `<U psi_conj | U psi_wave>`.
///
/// Unitarity cancels the evolution, so the value equals the plain overlap
/// `<psi_conj | psi_wave>` up to rounding: exactly 1 (within float error)
/// for a related boundary, and for Haar-random unrelated sides a complex
/// number whose squared magnitude averages `1/dim`.
pub fn closed_trace(
    boundary: &TwoSidedBoundary,
    schedule: &EvolutionSchedule,
) -> Result<Complex64> {
    let wave_out = schedule.evolve(boundary.wave())?;
    let conj_out = schedule.evolve(boundary.conjugate())?;
    conj_out.inner(&wave_out)
}

/// The bracket with `mid` inserted at step boundary `at_step` on the wave
/// side only: `<U psi_conj | U_post mid U_pre psi_wave>`.
///
/// `at_step` counts completed steps, so `0` applies `mid` before any
/// evolution and `n_steps` after all of it.
pub fn sandwich(
    boundary: &TwoSidedBoundary,
    schedule: &EvolutionSchedule,
    mid: &Operator,
    at_step: usize,
) -> Result<Complex64> {
    let n = schedule.n_steps();
    if at_step > n {
        return Err(Error::InvalidStepIndex {
            index: at_step,
            n_steps: n,
        });
    }
    let pre = schedule.evolve_range(boundary.wave(), 0, at_step)?;
    let cut = mid.apply(&pre)?;
    let wave_out = schedule.evolve_range(&cut, at_step, n)?;
    let conj_out = schedule.evolve(boundary.conjugate())?;
    conj_out.inner(&wave_out)
}

/// The symmetric variant of [`sandwich`]: `mid` on the wave side and
/// `mid^dag` at the mirrored position on the conjugate side, so the bracket
/// reads `<U_post mid^dag U_pre psi_conj | U_post mid U_pre psi_wave>`.
///
/// For a projector `mid` and a related boundary this equals the asymmetric
/// sandwich whenever the later steps commute with `mid` (both reduce to the
/// expectation of `mid` in the pre-cut state).
pub fn sandwich_symmetric(
    boundary: &TwoSidedBoundary,
    schedule: &EvolutionSchedule,
    mid: &Operator,
    at_step: usize,
) -> Result<Complex64> {
    let n = schedule.n_steps();
    if at_step > n {
        return Err(Error::InvalidStepIndex {
            index: at_step,
            n_steps: n,
        });
    }
    let wave_pre = schedule.evolve_range(boundary.wave(), 0, at_step)?;
    let wave_out = schedule.evolve_range(&mid.apply(&wave_pre)?, at_step, n)?;
    let conj_pre = schedule.evolve_range(boundary.conjugate(), 0, at_step)?;
    let conj_out = schedule.evolve_range(&mid.adjoint().apply(&conj_pre)?, at_step, n)?;
    conj_out.inner(&wave_out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::CompositeSpace;
    use approx::assert_abs_diff_eq;
    use ndarray::array;
    use num_complex::Complex64 as C;

    fn qubit() -> CompositeSpace {
        CompositeSpace::single(2).unwrap()
    }

    fn hadamard() -> Operator {
        let s = C::new(0.5_f64.sqrt(), 0.0);
        Operator::unitary(qubit(), array![[s, s], [s, -s]]).unwrap()
    }

    fn two_step() -> EvolutionSchedule {
        EvolutionSchedule::new(qubit(), 0.0, vec![(hadamard(), 1.0), (hadamard(), 2.0)]).unwrap()
    }

    #[test]
    fn related_boundary_closes_to_one() {
        let mut rng = crate::rng::stream(3);
        let psi = StateVector::haar_random(qubit(), &mut rng);
        let b = TwoSidedBoundary::related(psi).unwrap();
        let t = closed_trace(&b, &two_step()).unwrap();
        assert_abs_diff_eq!(t.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t.im, 0.0, epsilon = 1e-12);
        assert!(b.is_related());
    }

    #[test]
    fn unrelated_trace_is_plain_overlap() {
        let mut rng = crate::rng::stream(4);
        let wave = StateVector::haar_random(qubit(), &mut rng);
        let conj = StateVector::haar_random(qubit(), &mut rng);
        let overlap = conj.inner(&wave).unwrap();
        let b = TwoSidedBoundary::unrelated(wave, conj).unwrap();
        let t = closed_trace(&b, &two_step()).unwrap();
        assert_abs_diff_eq!(t.re, overlap.re, epsilon = 1e-12);
        assert_abs_diff_eq!(t.im, overlap.im, epsilon = 1e-12);
        assert!(!b.is_related());
    }

    #[test]
    fn sandwich_with_identity_is_closed_trace() {
        let mut rng = crate::rng::stream(5);
        let b = TwoSidedBoundary::related(StateVector::haar_random(qubit(), &mut rng)).unwrap();
        let sched = two_step();
        let id = Operator::identity(qubit());
        for at in 0..=2 {
            let s = sandwich(&b, &sched, &id, at).unwrap();
            let t = closed_trace(&b, &sched).unwrap();
            assert_abs_diff_eq!(s.re, t.re, epsilon = 1e-12);
            assert_abs_diff_eq!(s.im, t.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn symmetric_equals_asymmetric_for_commuting_tail() {
        // Schedule whose second step is diagonal, hence commutes with the
        // basis projector inserted after step 1.
        let phase = Operator::unitary(
            qubit(),
            array![[C::ONE, C::ZERO], [C::ZERO, C::from_polar(1.0, 0.9)]],
        )
        .unwrap();
        let sched =
            EvolutionSchedule::new(qubit(), 0.0, vec![(hadamard(), 1.0), (phase, 2.0)]).unwrap();
        let p = Operator::basis_projector(qubit(), 0, 0).unwrap();
        let mut rng = crate::rng::stream(6);
        let b = TwoSidedBoundary::related(StateVector::haar_random(qubit(), &mut rng)).unwrap();
        let asym = sandwich(&b, &sched, &p, 1).unwrap();
        let sym = sandwich_symmetric(&b, &sched, &p, 1).unwrap();
        assert_abs_diff_eq!(sym.re, asym.re, epsilon = 1e-12);
        assert_abs_diff_eq!(sym.im, asym.im, epsilon = 1e-12);
        // Both equal the expectation of P in the mid-schedule state.
        let mid_state = sched.evolve_range(b.wave(), 0, 1).unwrap();
        let expect = mid_state.inner(&p.apply(&mid_state).unwrap()).unwrap();
        assert_abs_diff_eq!(asym.re, expect.re, epsilon = 1e-12);
    }

    #[test]
    fn sandwich_rejects_out_of_range_boundary() {
        let mut rng = crate::rng::stream(7);
        let b = TwoSidedBoundary::related(StateVector::haar_random(qubit(), &mut rng)).unwrap();
        let id = Operator::identity(qubit());
        assert!(matches!(
            sandwich(&b, &two_step(), &id, 3),
            Err(Error::InvalidStepIndex { index: 3, n_steps: 2 })
        ));
    }

    #[test]
    fn unnormalized_boundary_is_rejected() {
        let half = StateVector::from_slice(qubit(), &[C::new(0.5, 0.0), C::ZERO]).unwrap();
        assert!(matches!(
            TwoSidedBoundary::related(half),
            Err(Error::NotNormalized { .. })
        ));
    }
}
