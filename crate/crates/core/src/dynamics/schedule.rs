//! Evolution schedules and bracket evaluation.

use ndarray::Array1;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{CompositeSpace, Operator, OperatorKind, StateVector};

/// Hard cap on the number of terms [`path_terms`] will enumerate.
pub const PATH_CAP: u64 = 10_000_000;

/// An ordered list of unitary steps with strictly increasing time labels.
///
/// Step `k` (1-based in the physics reading) carries the unitary that maps
/// the state at label `t_{k-1}` to the state at label `t_k`.  An empty step
/// list is the identity schedule: a single time label and no evolution.
#[derive(Debug, Clone)]
pub struct EvolutionSchedule {
    space: CompositeSpace,
    t_start: f64,
    steps: Vec<(Operator, f64)>,
}

impl EvolutionSchedule {
    /// Builds a schedule from `(unitary, end-label)` pairs.
    ///
    /// Every operator must be of unitary kind and act on `space`; labels
    /// must increase strictly starting from `t_start`.
    pub fn new(space: CompositeSpace, t_start: f64, steps: Vec<(Operator, f64)>) -> Result<Self> {
        let mut prev = t_start;
        for (k, (op, t_end)) in steps.iter().enumerate() {
            if op.kind() != OperatorKind::Unitary {
                return Err(Error::WrongKind {
                    expected: "unitary",
                    found: op.kind().name(),
                });
            }
            if op.space().total_dim() != space.total_dim() {
                return Err(Error::DimensionMismatch {
                    expected: space.total_dim(),
                    found: op.space().total_dim(),
                });
            }
            if !(*t_end > prev) {
                return Err(Error::TimeLabelsNotIncreasing { step: k });
            }
            prev = *t_end;
        }
        Ok(Self {
            space,
            t_start,
            steps,
        })
    }

    /// The identity schedule: one time label, no steps.
    pub fn identity(space: CompositeSpace, t: f64) -> Self {
        Self {
            space,
            t_start: t,
            steps: Vec::new(),
        }
    }

    /// A single-step schedule.
    pub fn single(op: Operator, t_start: f64, t_end: f64) -> Result<Self> {
        let space = op.space().clone();
        Self::new(space, t_start, vec![(op, t_end)])
    }

    /// The space the schedule acts on.
    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    /// Earliest time label.
    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    /// Latest time label (`t_start` for the identity schedule).
    pub fn t_end(&self) -> f64 {
        self.steps.last().map_or(self.t_start, |(_, t)| *t)
    }

    /// Number of steps.
    pub fn n_steps(&self) -> usize {
        self.steps.len()
    }

    /// The steps as `(unitary, end-label)` pairs.
    pub fn steps(&self) -> &[(Operator, f64)] {
        &self.steps
    }

    /// Ordered product `U_n ... U_1` as a single operator.
    pub fn total_unitary(&self) -> Operator {
        let mut acc = Operator::identity(self.space.clone());
        for (op, _) in &self.steps {
            acc = op
                .compose(&acc)
                .expect("schedule operators share one space");
        }
        acc
    }

    /// Applies all steps to `psi` in time order.
    pub fn evolve(&self, psi: &StateVector) -> Result<StateVector> {
        self.evolve_range(psi, 0, self.steps.len())
    }

    /// Applies steps `from..to` (0-based step indices) to `psi` in order.
    pub(crate) fn evolve_range(
        &self,
        psi: &StateVector,
        from: usize,
        to: usize,
    ) -> Result<StateVector> {
        let mut state = psi.clone();
        for (op, _) in &self.steps[from..to] {
            state = op.apply(&state)?;
        }
        Ok(state)
    }
}

/// The bracket `<i| U_n ... U_1 |f>`.
///
/// `f` is evolved through the schedule and closed with `i`; for any unitary
/// schedule the squared magnitudes over a full basis of `i` (or of `f`)
/// therefore sum to 1.
pub fn amplitude(
    i: &StateVector,
    schedule: &EvolutionSchedule,
    f: &StateVector,
) -> Result<Complex64> {
    i.inner(&schedule.evolve(f)?)
}

/// The individual terms of the basis-label path sum for the bracket
/// `<i| U_n ... U_1 |f>`.
///
/// `insertion_points` are step boundaries, i.e. values in `0..=n_steps`,
/// sorted ascending (duplicates allowed; each one inserts a fresh complete
/// basis).  Boundary `p` sits after step `p`, so `0` is the early boundary
/// itself and `n_steps` the late one.  The returned vector has one complex
/// term per tuple of intermediate labels, ordered lexicographically with the
/// earliest insertion's label varying slowest; its sum equals [`amplitude`]
/// exactly in exact arithmetic.  With no insertion points the single term
/// *is* the amplitude.  Enumerations beyond [`PATH_CAP`] terms are refused.
pub fn path_terms(
    i: &StateVector,
    schedule: &EvolutionSchedule,
    f: &StateVector,
    insertion_points: &[usize],
) -> Result<Vec<Complex64>> {
    let n = schedule.n_steps();
    for (pos, &p) in insertion_points.iter().enumerate() {
        if p > n {
            return Err(Error::InvalidStepIndex {
                index: p,
                n_steps: n,
            });
        }
        if pos > 0 && insertion_points[pos - 1] > p {
            return Err(Error::UnsortedInsertionPoints { position: pos });
        }
    }
    let dim = schedule.space().total_dim();
    let m = insertion_points.len();
    let count = (dim as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if count > PATH_CAP as u128 {
        return Err(Error::PathCountOverflow {
            count,
            cap: PATH_CAP,
        });
    }

    if m == 0 {
        return Ok(vec![amplitude(i, schedule, f)?]);
    }

    // Segment matrices between consecutive insertion points:
    //   S_0 = steps ..=p_1 applied to f, as a vector;
    //   S_l = steps p_l+1 ..= p_{l+1}, as matrices;
    //   S_m = steps p_m+1 ..= n, folded into the closing bra.
    let first = schedule.evolve_range(f, 0, insertion_points[0])?;
    let head: Array1<Complex64> = first.amps().clone();

    let mut mids = Vec::with_capacity(m.saturating_sub(1));
    for w in insertion_points.windows(2) {
        let mut seg = Operator::identity(schedule.space().clone());
        for (op, _) in &schedule.steps()[w[0]..w[1]] {
            seg = op.compose(&seg).expect("schedule operators share one space");
        }
        mids.push(seg);
    }

    let mut tail_state = i.clone();
    // <i| S_m = (S_m^dag |i>)^dag; build the bra as a conjugated vector.
    for (op, _) in schedule.steps()[insertion_points[m - 1]..].iter().rev() {
        tail_state = op.adjoint().apply(&tail_state)?;
    }
    let tail: Array1<Complex64> = tail_state.amps().mapv(|z| z.conj());

    // Odometer over intermediate labels; earliest insertion varies slowest.
    let mut labels = vec![0usize; m];
    let mut terms = Vec::with_capacity(count as usize);
    loop {
        let mut term = head[labels[0]];
        for (l, seg) in mids.iter().enumerate() {
            term *= seg.entries()[(labels[l + 1], labels[l])];
        }
        term *= tail[labels[m - 1]];
        terms.push(term);

        let mut pos = m;
        loop {
            if pos == 0 {
                return Ok(terms);
            }
            pos -= 1;
            labels[pos] += 1;
            if labels[pos] < dim {
                break;
            }
            labels[pos] = 0;
        }
    }
}

/// Sum of [`path_terms`]; agrees with [`amplitude`] up to float rounding.
pub fn path_sum_amplitude(
    i: &StateVector,
    schedule: &EvolutionSchedule,
    f: &StateVector,
    insertion_points: &[usize],
) -> Result<Complex64> {
    Ok(path_terms(i, schedule, f, insertion_points)?
        .into_iter()
        .sum())
}
