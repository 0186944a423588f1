//! Trees of chained measurement events.

use crate::error::{Error, Result};
use crate::hilbert::{Operator, OperatorKind, StateVector};

use super::event::MeasurementEvent;
use super::{COMMUTE_TOL, ZERO_WEIGHT_GUARD};

/// Hard cap on the number of leaves [`BranchTree::enumerate_paths`] will
/// expand.
pub const PATH_ENUM_CAP: u64 = 1_000_000;

/// One root-to-leaf outcome path with its squared-amplitude weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    /// Outcome index chosen at each event, in event order.
    pub outcomes: Vec<usize>,
    /// Squared norm of the path state.
    pub weight: f64,
}

/// A preparation followed by a chain of measurement events, optionally with
/// a unitary between consecutive events.
///
/// Each interleaved unitary is validated at construction to commute with
/// the projectors of every event at or before its slot.  That keeps the
/// witness records of earlier events intact through later evolution and
/// makes path states independent of whether projections are evaluated at
/// their event times or pushed to the final time (see
/// [`path_state_final_projection`](Self::path_state_final_projection)).
#[derive(Debug, Clone)]
pub struct BranchTree {
    prep: StateVector,
    events: Vec<MeasurementEvent>,
    interleaved: Vec<Option<Operator>>,
}

impl BranchTree {
    /// Builds a tree from a normalized preparation, a non-empty event
    /// chain, and one optional unitary per gap between consecutive events
    /// (`interleaved.len() == events.len() - 1`; `None` means identity).
    pub fn new(
        prep: StateVector,
        events: Vec<MeasurementEvent>,
        interleaved: Vec<Option<Operator>>,
    ) -> Result<Self> {
        if !prep.is_normalized() {
            return Err(Error::NotNormalized { norm: prep.norm() });
        }
        if events.is_empty() {
            return Err(Error::EmptyInput {
                what: "event chain",
            });
        }
        let dim = prep.space().total_dim();
        for event in &events {
            if event.space().total_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: event.space().total_dim(),
                });
            }
        }
        let expected_slots = events.len() - 1;
        if interleaved.len() != expected_slots {
            return Err(Error::InterleavedCount {
                expected: expected_slots,
                found: interleaved.len(),
            });
        }
        for (slot, entry) in interleaved.iter().enumerate() {
            let Some(u) = entry else { continue };
            if u.kind() != OperatorKind::Unitary {
                return Err(Error::WrongKind {
                    expected: "unitary",
                    found: u.kind().name(),
                });
            }
            if u.space().total_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: u.space().total_dim(),
                });
            }
            // The unitary sits after event `slot`; it must preserve the
            // branch structure of that event and all earlier ones.
            for (event_idx, event) in events.iter().enumerate().take(slot + 1) {
                for (proj_idx, p) in event.projectors().iter().enumerate() {
                    let dev = u.commutator_max_abs(p)?;
                    if dev > COMMUTE_TOL {
                        return Err(Error::NonCommutingInterleaved {
                            slot,
                            event: event_idx,
                            projector: proj_idx,
                            deviation: dev,
                        });
                    }
                }
            }
        }
        Ok(Self {
            prep,
            events,
            interleaved,
        })
    }

    /// A tree with no interleaved unitaries.
    pub fn bare(prep: StateVector, events: Vec<MeasurementEvent>) -> Result<Self> {
        let slots = events.len().saturating_sub(1);
        Self::new(prep, events, vec![None; slots])
    }

    /// The preparation state.
    pub fn prep(&self) -> &StateVector {
        &self.prep
    }

    /// The event chain.
    pub fn events(&self) -> &[MeasurementEvent] {
        &self.events
    }

    /// The interleaved unitaries (`None` = identity) per gap.
    pub fn interleaved(&self) -> &[Option<Operator>] {
        &self.interleaved
    }

    /// Number of leaves: the product of outcome counts over all events.
    pub fn n_paths(&self) -> u128 {
        self.events
            .iter()
            .map(|e| e.n_outcomes() as u128)
            .product()
    }

    /// All root-to-leaf paths in lexicographic outcome order, each with its
    /// squared-amplitude weight.  Weights of a legal tree sum to the squared
    /// prep norm (1 for complete projector families); dead paths appear
    /// with weight 0.  Trees with more than [`PATH_ENUM_CAP`] leaves are
    /// refused.
    pub fn enumerate_paths(&self) -> Result<Vec<Path>> {
        let count = self.n_paths();
        if count > PATH_ENUM_CAP as u128 {
            return Err(Error::PathCountOverflow {
                count,
                cap: PATH_ENUM_CAP,
            });
        }
        let mut paths = Vec::with_capacity(count as usize);
        let mut outcomes = Vec::with_capacity(self.events.len());
        self.descend(&self.prep, 0, &mut outcomes, &mut paths)?;
        Ok(paths)
    }

    fn descend(
        &self,
        state: &StateVector,
        depth: usize,
        outcomes: &mut Vec<usize>,
        paths: &mut Vec<Path>,
    ) -> Result<()> {
        if depth == self.events.len() {
            let norm = state.norm();
            paths.push(Path {
                outcomes: outcomes.clone(),
                weight: norm * norm,
            });
            return Ok(());
        }
        let state = if depth > 0 {
            match &self.interleaved[depth - 1] {
                Some(u) => u.apply(state)?,
                None => state.clone(),
            }
        } else {
            state.clone()
        };
        for (k, p) in self.events[depth].projectors().iter().enumerate() {
            let child = p.apply(&state)?;
            outcomes.push(k);
            self.descend(&child, depth + 1, outcomes, paths)?;
            outcomes.pop();
        }
        Ok(())
    }

    /// The unnormalized state of one path, with every projection applied at
    /// its own event time:
    /// `P_N ... U_2 P_2 U_1 P_1 |prep>`.
    pub fn path_state(&self, outcomes: &[usize]) -> Result<StateVector> {
        self.check_outcomes(outcomes)?;
        let mut state = self.prep.clone();
        for (e, &k) in outcomes.iter().enumerate() {
            if e > 0 {
                if let Some(u) = &self.interleaved[e - 1] {
                    state = u.apply(&state)?;
                }
            }
            state = self.events[e].projectors()[k].apply(&state)?;
        }
        Ok(state)
    }

    /// The same path state with all projections deferred to the final time:
    /// the full unitary chain runs first, then every event's projector is
    /// applied in event order.  Because interleaved unitaries commute with
    /// all earlier projectors, this agrees with
    /// [`path_state`](Self::path_state) up to float rounding — projection
    /// timing is irrelevant by construction.
    pub fn path_state_final_projection(&self, outcomes: &[usize]) -> Result<StateVector> {
        self.check_outcomes(outcomes)?;
        let mut state = self.prep.clone();
        for u in self.interleaved.iter().flatten() {
            state = u.apply(&state)?;
        }
        for (e, &k) in outcomes.iter().enumerate() {
            state = self.events[e].projectors()[k].apply(&state)?;
        }
        Ok(state)
    }

    /// Ratio of two path weights, recomputed from their outcome tuples.
    ///
    /// Refused when the denominator path's weight is numerically zero.
    pub fn weight_ratio(&self, numerator: &Path, denominator: &Path) -> Result<f64> {
        let num = self.path_state(&numerator.outcomes)?.norm().powi(2);
        let den = self.path_state(&denominator.outcomes)?.norm().powi(2);
        if den <= ZERO_WEIGHT_GUARD {
            return Err(Error::ZeroWeightDivision { value: den });
        }
        Ok(num / den)
    }

    fn check_outcomes(&self, outcomes: &[usize]) -> Result<()> {
        if outcomes.len() != self.events.len() {
            return Err(Error::PathNotInTree {
                reason: "outcome count differs from event count",
            });
        }
        for (e, &k) in outcomes.iter().enumerate() {
            if k >= self.events[e].n_outcomes() {
                return Err(Error::PathNotInTree {
                    reason: "outcome index out of range for its event",
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::witness::WitnessModel;
    use crate::hilbert::CompositeSpace;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64 as C;

    /// Two-qubit tree: event 0 measures factor 0, event 1 measures factor 1.
    fn two_qubit_tree(amps: [f64; 4]) -> BranchTree {
        let space = CompositeSpace::new(vec![2, 2]).unwrap();
        let prep = StateVector::from_slice(
            space.clone(),
            &amps.map(|a| C::new(a, 0.0)),
        )
        .unwrap();
        let e0 =
            MeasurementEvent::factor_basis(space.clone(), 0, WitnessModel::perfect(2), "first")
                .unwrap();
        let e1 =
            MeasurementEvent::factor_basis(space, 1, WitnessModel::perfect(2), "second").unwrap();
        BranchTree::bare(prep, vec![e0, e1]).unwrap()
    }

    #[test]
    fn weights_are_squared_amplitudes_in_lex_order() {
        // |psi> = 0.6|00> + 0.8|11>.
        let tree = two_qubit_tree([0.6, 0.0, 0.0, 0.8]);
        let paths = tree.enumerate_paths().unwrap();
        assert_eq!(paths.len(), 4);
        let outcomes: Vec<&[usize]> = paths.iter().map(|p| p.outcomes.as_slice()).collect();
        assert_eq!(
            outcomes,
            vec![&[0, 0][..], &[0, 1][..], &[1, 0][..], &[1, 1][..]]
        );
        let weights: Vec<f64> = paths.iter().map(|p| p.weight).collect();
        assert_abs_diff_eq!(weights[0], 0.36, epsilon = 1e-14);
        assert_abs_diff_eq!(weights[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(weights[2], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(weights[3], 0.64, epsilon = 1e-14);
        let total: f64 = weights.iter().sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn path_states_are_mutually_orthogonal() {
        let half = 0.5;
        let tree = two_qubit_tree([half, half, half, half]);
        let paths = tree.enumerate_paths().unwrap();
        for a in 0..paths.len() {
            for b in (a + 1)..paths.len() {
                let sa = tree.path_state(&paths[a].outcomes).unwrap();
                let sb = tree.path_state(&paths[b].outcomes).unwrap();
                assert_abs_diff_eq!(sa.inner(&sb).unwrap().norm(), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn weight_ratio_and_zero_guard() {
        let tree = two_qubit_tree([0.6, 0.0, 0.0, 0.8]);
        let paths = tree.enumerate_paths().unwrap();
        let ratio = tree.weight_ratio(&paths[3], &paths[0]).unwrap();
        assert_abs_diff_eq!(ratio, 0.64 / 0.36, epsilon = 1e-12);
        assert!(matches!(
            tree.weight_ratio(&paths[0], &paths[1]),
            Err(Error::ZeroWeightDivision { .. })
        ));
    }

    #[test]
    fn commuting_interleaved_unitary_is_accepted_and_inert_on_weights() {
        let space = CompositeSpace::new(vec![2, 2]).unwrap();
        let amp = C::new(0.5, 0.0);
        let prep = StateVector::from_slice(space.clone(), &[amp; 4]).unwrap();
        let e0 =
            MeasurementEvent::factor_basis(space.clone(), 0, WitnessModel::perfect(1), "first")
                .unwrap();
        let e1 =
            MeasurementEvent::factor_basis(space.clone(), 1, WitnessModel::perfect(1), "second")
                .unwrap();
        // Phase on factor 1 commutes with factor-0 projectors.
        let mut m = ndarray::Array2::from_elem((4, 4), C::ZERO);
        for i in 0..4 {
            m[(i, i)] = if i % 2 == 1 {
                C::from_polar(1.0, 0.8)
            } else {
                C::ONE
            };
        }
        let u = Operator::unitary(space, m).unwrap();
        let tree = BranchTree::new(prep, vec![e0, e1], vec![Some(u)]).unwrap();
        let paths = tree.enumerate_paths().unwrap();
        for p in &paths {
            assert_abs_diff_eq!(p.weight, 0.25, epsilon = 1e-14);
        }
    }

    #[test]
    fn non_commuting_interleaved_unitary_is_rejected() {
        let space = CompositeSpace::new(vec![2, 2]).unwrap();
        let amp = C::new(0.5, 0.0);
        let prep = StateVector::from_slice(space.clone(), &[amp; 4]).unwrap();
        let e0 =
            MeasurementEvent::factor_basis(space.clone(), 0, WitnessModel::perfect(1), "first")
                .unwrap();
        let e1 =
            MeasurementEvent::factor_basis(space.clone(), 1, WitnessModel::perfect(1), "second")
                .unwrap();
        // Hadamard on factor 0 does not commute with factor-0 projectors.
        let s = C::new(0.5_f64.sqrt(), 0.0);
        let h = Operator::unitary(
            CompositeSpace::single(2).unwrap(),
            ndarray::array![[s, s], [s, -s]],
        )
        .unwrap();
        let u = h.kron(&Operator::identity(CompositeSpace::single(2).unwrap())).unwrap();
        assert!(matches!(
            BranchTree::new(prep, vec![e0, e1], vec![Some(u)]),
            Err(Error::NonCommutingInterleaved {
                slot: 0,
                event: 0,
                ..
            })
        ));
    }

    #[test]
    fn final_projection_matches_event_time_projection() {
        let space = CompositeSpace::new(vec![2, 2]).unwrap();
        let amp = C::new(0.5, 0.0);
        let prep = StateVector::from_slice(space.clone(), &[amp; 4]).unwrap();
        let e0 =
            MeasurementEvent::factor_basis(space.clone(), 0, WitnessModel::perfect(1), "first")
                .unwrap();
        let e1 =
            MeasurementEvent::factor_basis(space.clone(), 1, WitnessModel::perfect(1), "second")
                .unwrap();
        let mut m = ndarray::Array2::from_elem((4, 4), C::ZERO);
        for i in 0..4 {
            m[(i, i)] = C::from_polar(1.0, 0.3 * i as f64);
        }
        let u = Operator::unitary(space, m).unwrap();
        let tree = BranchTree::new(prep, vec![e0, e1], vec![Some(u)]).unwrap();
        for outcomes in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let at_event = tree.path_state(&outcomes).unwrap();
            let at_final = tree.path_state_final_projection(&outcomes).unwrap();
            for (a, b) in at_event.amps().iter().zip(at_final.amps().iter()) {
                assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn malformed_paths_are_rejected() {
        let tree = two_qubit_tree([1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(
            tree.path_state(&[0]),
            Err(Error::PathNotInTree { .. })
        ));
        assert!(matches!(
            tree.path_state(&[0, 5]),
            Err(Error::PathNotInTree { .. })
        ));
    }

    #[test]
    fn wrong_interleaved_slot_count_is_rejected() {
        let space = CompositeSpace::single(2).unwrap();
        let prep = StateVector::basis(space.clone(), 0).unwrap();
        let e = MeasurementEvent::factor_basis(space, 0, WitnessModel::none(), "z").unwrap();
        assert!(matches!(
            BranchTree::new(prep, vec![e], vec![None]),
            Err(Error::InterleavedCount {
                expected: 0,
                found: 1
            })
        ));
    }
}
