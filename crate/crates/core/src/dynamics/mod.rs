//! Unitary evolution between two boundary states.
//!
//! A [`EvolutionSchedule`] is a finite list of unitary steps with strictly
//! increasing time labels.  The central scalar is the bracket
//! `<i| U_n ... U_1 |f>` computed by [`amplitude`]: `f` is the state posed
//! at the early boundary, `i` the state the bracket is closed with at the
//! late boundary, and the schedule's steps apply to `f` in time order.
//! (Equivalently the adjoint chain applies to `i`; both readings give the
//! same number and the implementation uses the first.)
//!
//! [`path_sum_amplitude`] re-derives the same bracket as an explicit sum
//! over intermediate basis labels inserted at chosen step boundaries, making
//! the product-to-path-sum identity testable term by term.  The
//! [`boundary`] submodule adds the second, independently chosen boundary
//! state and the sandwiched brackets built on it.

mod boundary;
mod schedule;

pub use boundary::{closed_trace, sandwich, sandwich_symmetric, TwoSidedBoundary};
pub use schedule::{amplitude, path_sum_amplitude, path_terms, EvolutionSchedule, PATH_CAP};
