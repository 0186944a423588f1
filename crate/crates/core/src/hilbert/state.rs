//! State vectors over a composite space.

use ndarray::Array1;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng::{complex_gaussian, Stream};

use super::space::CompositeSpace;
use super::NORM_TOL;

/// A dense ket over a [`CompositeSpace`].
///
/// Amplitudes are stored in Kronecker order of the space's factors.  The
/// `normalized` flag is detected on construction (`|norm^2 - 1| <=`
/// [`NORM_TOL`](super::NORM_TOL)) and recomputed by every operation that
/// returns a new state, so unnormalized branch vectors are tracked honestly
/// instead of being silently rescaled.
#[derive(Debug, Clone)]
pub struct StateVector {
    space: CompositeSpace,
    amps: Array1<Complex64>,
    normalized: bool,
}

impl StateVector {
    /// Wraps an amplitude array over the given space.
    pub fn new(space: CompositeSpace, amps: Array1<Complex64>) -> Result<Self> {
        if amps.len() != space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.total_dim(),
                found: amps.len(),
            });
        }
        let normalized = (amps.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs() <= NORM_TOL;
        Ok(Self {
            space,
            amps,
            normalized,
        })
    }

    /// Convenience constructor from a slice.
    pub fn from_slice(space: CompositeSpace, amps: &[Complex64]) -> Result<Self> {
        Self::new(space, Array1::from(amps.to_vec()))
    }

    /// The computational basis vector `|index>`.
    pub fn basis(space: CompositeSpace, index: usize) -> Result<Self> {
        if index >= space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.total_dim(),
                found: index,
            });
        }
        let mut amps = Array1::from_elem(space.total_dim(), Complex64::ZERO);
        amps[index] = Complex64::ONE;
        Self::new(space, amps)
    }

    /// Haar-random normalized state: i.i.d. complex Gaussian amplitudes,
    /// rescaled to unit norm.  Unitary invariance of the Gaussian makes the
    /// result uniform on the unit sphere of the space.
    pub fn haar_random(space: CompositeSpace, rng: &mut Stream) -> Self {
        let dim = space.total_dim();
        let mut amps = Array1::from_elem(dim, Complex64::ZERO);
        loop {
            for a in amps.iter_mut() {
                *a = complex_gaussian(rng, 1.0);
            }
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            // A numerically zero draw is astronomically unlikely; redraw so
            // the constructor below cannot divide by zero.
            if norm > 1e-150 {
                amps.mapv_inplace(|a| a / norm);
                break;
            }
        }
        Self::new(space, amps).expect("length matches space by construction")
    }

    /// The space this state lives in.
    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    /// Amplitudes in Kronecker basis order.
    pub fn amps(&self) -> &Array1<Complex64> {
        &self.amps
    }

    /// Whether `|norm^2 - 1|` was within tolerance at construction.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Euclidean norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hermitian inner product `<self | other>` (antilinear in `self`).
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amps.len(),
                found: other.amps.len(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Kronecker product `self (x) other`.
    ///
    /// Fails only if the combined space would exceed the dense cap.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let space = self.space.compose(&other.space)?;
        let mut amps = Array1::from_elem(space.total_dim(), Complex64::ZERO);
        let n2 = other.amps.len();
        for (i, &a) in self.amps.iter().enumerate() {
            for (j, &b) in other.amps.iter().enumerate() {
                amps[i * n2 + j] = a * b;
            }
        }
        Self::new(space, amps)
    }

    /// Returns a rescaled copy with unit norm.
    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm < 1e-150 {
            return Err(Error::NotNormalized { norm });
        }
        Self::new(self.space.clone(), self.amps.mapv(|a| a / norm))
    }
}
