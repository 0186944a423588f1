//! Finite-dimensional Hilbert spaces, states and operators.
//!
//! The representation is deliberately dense: a [`CompositeSpace`] is a list
//! of factor dimensions, a [`StateVector`] is a flat amplitude array over
//! the Kronecker-ordered product basis, and an [`Operator`] is a square
//! complex matrix tagged with the structural property it was validated
//! against.  Dense storage keeps every product and inner product exact up to
//! float rounding, at the price of the [`MAX_DENSE_DIM`] cap.

mod eigen;
mod operator;
mod space;
mod state;

pub use eigen::{dominant_eigenpair, EigenPair};
pub use operator::{Operator, OperatorKind};
pub use space::{CompositeSpace, MAX_DENSE_DIM};
pub use state::StateVector;

/// `|norm^2 - 1|` at or below this marks a state as normalized.
pub const NORM_TOL: f64 = 1e-12;
/// Max-abs tolerance for the `U^dag U = I` unitarity check.
pub const UNITARY_TOL: f64 = 1e-10;
/// Max-abs tolerance for the `P^2 = P`, `P = P^dag` projector checks.
pub const PROJECTOR_TOL: f64 = 1e-10;
/// Max-abs tolerance for the `H = H^dag` hermiticity check.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Largest elementwise absolute value of a complex matrix or vector view.
pub(crate) fn max_abs<'a, I>(entries: I) -> f64
where
    I: IntoIterator<Item = &'a num_complex::Complex64>,
{
    entries
        .into_iter()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max)
}
