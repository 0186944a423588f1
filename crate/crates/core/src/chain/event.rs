//! Measurement events and furcation.

use crate::error::{Error, Result};
use crate::hilbert::{max_abs, CompositeSpace, Operator, OperatorKind, StateVector};

use super::witness::WitnessModel;
use super::{COMPLETENESS_TOL, FURCATION_ZERO, ORTHOGONALITY_TOL};

/// One measurement: an orthogonal projector family plus the witness model
/// describing how macroscopically its outcomes get recorded.
///
/// Construction validates the family once — every member is a projector,
/// distinct members annihilate each other, and the family sum is itself a
/// projector (it need not be the identity: outcomes outside the family are
/// simply never produced).
#[derive(Debug, Clone)]
pub struct MeasurementEvent {
    projectors: Vec<Operator>,
    witness: WitnessModel,
    label: String,
}

impl MeasurementEvent {
    /// Builds an event from an explicit projector family.
    pub fn new(
        projectors: Vec<Operator>,
        witness: WitnessModel,
        label: impl Into<String>,
    ) -> Result<Self> {
        if projectors.len() < 2 {
            return Err(Error::TooFewOutcomes {
                found: projectors.len(),
            });
        }
        let dim = projectors[0].space().total_dim();
        for p in &projectors {
            if p.kind() != OperatorKind::Projector {
                return Err(Error::WrongKind {
                    expected: "projector",
                    found: p.kind().name(),
                });
            }
            if p.space().total_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.space().total_dim(),
                });
            }
        }
        for a in 0..projectors.len() {
            for b in (a + 1)..projectors.len() {
                let prod = projectors[a].compose(&projectors[b])?;
                let dev = max_abs(prod.entries().iter());
                if dev > ORTHOGONALITY_TOL {
                    return Err(Error::ProjectorsNotOrthogonal {
                        a,
                        b,
                        deviation: dev,
                    });
                }
            }
        }
        // Completeness: the family sum must again be a projector.
        let mut sum = projectors[0].entries().clone();
        for p in &projectors[1..] {
            sum = &sum + p.entries();
        }
        let idem_dev = max_abs((&sum.dot(&sum) - &sum).iter());
        if idem_dev > COMPLETENESS_TOL {
            return Err(Error::ProjectorsIncomplete {
                deviation: idem_dev,
            });
        }
        Ok(Self {
            projectors,
            witness,
            label: label.into(),
        })
    }

    /// The event that measures one tensor factor in its computational
    /// basis: one projector per basis value of that factor.
    pub fn factor_basis(
        space: CompositeSpace,
        factor: usize,
        witness: WitnessModel,
        label: impl Into<String>,
    ) -> Result<Self> {
        let dims = space.factor_dims();
        if factor >= dims.len() {
            return Err(Error::DimensionMismatch {
                expected: dims.len(),
                found: factor,
            });
        }
        let projectors = (0..dims[factor])
            .map(|v| Operator::basis_projector(space.clone(), factor, v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(projectors, witness, label)
    }

    /// The projector family, in outcome order.
    pub fn projectors(&self) -> &[Operator] {
        &self.projectors
    }

    /// Number of outcomes.
    pub fn n_outcomes(&self) -> usize {
        self.projectors.len()
    }

    /// The witness model of this event.
    pub fn witness(&self) -> &WitnessModel {
        &self.witness
    }

    /// Human-readable event label.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// The space the event acts on.
    pub fn space(&self) -> &CompositeSpace {
        self.projectors[0].space()
    }
}

/// One unnormalized branch of a furcation.
#[derive(Debug, Clone)]
pub struct Branch {
    /// Outcome index within the event.
    pub outcome: usize,
    /// `P_outcome |psi>`, deliberately not rescaled.
    pub state: StateVector,
    /// Norm of that state: the branch amplitude magnitude.
    pub norm: f64,
}

/// Splits a state along an event's projector family.
///
/// Branches with (numerically) zero norm are kept — downstream policies must
/// cope with dead branches — but a furcation in which *every* branch is dead
/// means the state lies outside the family's range and is refused.
pub fn furcate(psi: &StateVector, event: &MeasurementEvent) -> Result<Vec<Branch>> {
    let branches = event
        .projectors()
        .iter()
        .enumerate()
        .map(|(outcome, p)| {
            let state = p.apply(psi)?;
            let norm = state.norm();
            Ok(Branch {
                outcome,
                state,
                norm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if branches.iter().all(|b| b.norm <= FURCATION_ZERO) {
        return Err(Error::DegenerateFurcation {
            threshold: FURCATION_ZERO,
        });
    }
    Ok(branches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;
    use num_complex::Complex64 as C;

    fn qubit() -> CompositeSpace {
        CompositeSpace::single(2).unwrap()
    }

    fn basis_event() -> MeasurementEvent {
        MeasurementEvent::factor_basis(qubit(), 0, WitnessModel::perfect(1), "z").unwrap()
    }

    #[test]
    fn furcation_splits_norm_squared() {
        let theta: f64 = 1.1;
        let psi = StateVector::from_slice(
            qubit(),
            &[
                C::new((theta / 2.0).cos(), 0.0),
                C::new((theta / 2.0).sin(), 0.0),
            ],
        )
        .unwrap();
        let branches = furcate(&psi, &basis_event()).unwrap();
        assert_eq!(branches.len(), 2);
        assert_abs_diff_eq!(branches[0].norm, (theta / 2.0).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(branches[1].norm, (theta / 2.0).sin(), epsilon = 1e-15);
        let total: f64 = branches.iter().map(|b| b.norm * b.norm).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-14);
        // Branch states are left unnormalized.
        assert!(!branches[0].state.is_normalized());
    }

    #[test]
    fn branches_are_mutually_orthogonal() {
        let psi = StateVector::from_slice(
            qubit(),
            &[C::new(0.6, 0.0), C::new(0.0, 0.8)],
        )
        .unwrap();
        let branches = furcate(&psi, &basis_event()).unwrap();
        let overlap = branches[0].state.inner(&branches[1].state).unwrap();
        assert_eq!(overlap, C::ZERO);
    }

    #[test]
    fn dead_branch_is_kept() {
        let e0 = StateVector::basis(qubit(), 0).unwrap();
        let branches = furcate(&e0, &basis_event()).unwrap();
        assert_eq!(branches[1].norm, 0.0);
    }

    #[test]
    fn fully_dead_furcation_is_refused() {
        let space = CompositeSpace::new(vec![2, 2]).unwrap();
        // Family that only covers factor-0 value 0; feed it value 1.
        let p0 = Operator::basis_projector(space.clone(), 1, 0).unwrap();
        let p1 = Operator::basis_projector(space.clone(), 1, 1).unwrap();
        let event = MeasurementEvent::new(
            vec![
                p0.compose(&Operator::basis_projector(space.clone(), 0, 0).unwrap())
                    .and_then(|m| Operator::projector(space.clone(), m.entries().clone()))
                    .unwrap(),
                p1.compose(&Operator::basis_projector(space.clone(), 0, 0).unwrap())
                    .and_then(|m| Operator::projector(space.clone(), m.entries().clone()))
                    .unwrap(),
            ],
            WitnessModel::none(),
            "partial",
        )
        .unwrap();
        // |1> (x) |0> lies outside the family's range (factor 0 is 1).
        let outside = StateVector::basis(space, 2).unwrap();
        assert!(matches!(
            furcate(&outside, &event),
            Err(Error::DegenerateFurcation { .. })
        ));
    }

    #[test]
    fn non_orthogonal_family_is_rejected() {
        let p = Operator::basis_projector(qubit(), 0, 0).unwrap();
        assert!(matches!(
            MeasurementEvent::new(
                vec![p.clone(), p],
                WitnessModel::none(),
                "dup"
            ),
            Err(Error::ProjectorsNotOrthogonal { .. })
        ));
    }

    #[test]
    fn single_projector_is_rejected() {
        let p = Operator::basis_projector(qubit(), 0, 0).unwrap();
        assert!(matches!(
            MeasurementEvent::new(vec![p], WitnessModel::none(), "one"),
            Err(Error::TooFewOutcomes { found: 1 })
        ));
    }

    #[test]
    fn incomplete_but_orthogonal_family_is_legal() {
        // Two of the three basis projectors of a qutrit: orthogonal, and
        // their sum is still a projector.
        let space = CompositeSpace::single(3).unwrap();
        let p0 = Operator::basis_projector(space.clone(), 0, 0).unwrap();
        let p1 = Operator::basis_projector(space.clone(), 0, 1).unwrap();
        let event = MeasurementEvent::new(vec![p0, p1], WitnessModel::none(), "partial");
        assert!(event.is_ok());
    }

    #[test]
    fn overlapping_rank_one_projectors_are_rejected() {
        // |0> and |+> are individually fine projectors but not orthogonal.
        let plus = array![
            [C::new(0.5, 0.0), C::new(0.5, 0.0)],
            [C::new(0.5, 0.0), C::new(0.5, 0.0)]
        ];
        let p_plus = Operator::projector(qubit(), plus).unwrap();
        let p0 = Operator::basis_projector(qubit(), 0, 0).unwrap();
        assert!(matches!(
            MeasurementEvent::new(vec![p0, p_plus], WitnessModel::none(), "bad"),
            Err(Error::ProjectorsNotOrthogonal { a: 0, b: 1, .. })
        ));
    }

    #[test]
    fn factor_basis_event_spans_one_factor() {
        let space = CompositeSpace::new(vec![3, 2]).unwrap();
        let event =
            MeasurementEvent::factor_basis(space.clone(), 0, WitnessModel::perfect(4), "which-slit")
                .unwrap();
        assert_eq!(event.n_outcomes(), 3);
        assert_eq!(event.label(), "which-slit");
        assert_eq!(event.space().total_dim(), 6);
        // Acting on a uniform state, each branch captures one value of
        // factor 0 with weight 1/3.
        let amp = C::new((1.0 / 6.0_f64).sqrt(), 0.0);
        let psi = StateVector::from_slice(space, &[amp; 6]).unwrap();
        let branches = furcate(&psi, &event).unwrap();
        for b in &branches {
            assert_abs_diff_eq!(b.norm * b.norm, 1.0 / 3.0, epsilon = 1e-14);
        }
    }
}
