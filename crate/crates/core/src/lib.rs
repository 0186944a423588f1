//! Two-boundary state-vector simulator.
//!
//! The crate models a closed quantum system that carries *two* independent
//! boundary states: the familiar forward-evolving wave function and a second,
//! conjugate state that closes the evolution from the other end.  Measurement
//! is decomposed into four explicit stages, each with its own module:
//!
//! 1. **furcation** — an orthogonal projector family splits the wave function
//!    into branches ([`chain`]),
//! 2. **witness production** — every branch imprints macroscopic witness
//!    modes whose pairwise overlap decays exponentially with the mode count
//!    ([`chain::witness`]),
//! 3. **alignment projection** — cross-branch interference terms are
//!    suppressed by exactly that overlap factor ([`chain::witness`]),
//! 4. **choice decision** — one branch is selected by a pluggable policy
//!    ([`select`]).
//!
//! The [`experiments`] module runs repeated-trial Monte Carlo over the
//! policies and scores the observed outcome frequencies against the squared
//! branch amplitudes, so competing selection rules can be compared on equal
//! footing.
//!
//! Everything is dense linear algebra over `Complex64`; spaces are capped at
//! [`hilbert::MAX_DENSE_DIM`] and large witness registers are always handled
//! analytically rather than as exponentially large vectors.

pub mod chain;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod hilbert;
pub mod rng;
pub mod select;

pub use error::{Error, Result};
pub use hilbert::{CompositeSpace, Operator, OperatorKind, StateVector, MAX_DENSE_DIM};
