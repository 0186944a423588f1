//! Dominant eigenpair of a hermitian operator by power iteration.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng;

use super::operator::{Operator, OperatorKind};
use super::state::StateVector;

/// Fixed seed for the power-iteration start vector.
///
/// A Gaussian start is orthogonal to the dominant eigenspace only on a
/// measure-zero set, and fixing the seed keeps every run of the same matrix
/// bit-for-bit reproducible.
const START_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

/// Result of [`dominant_eigenpair`].
#[derive(Debug, Clone)]
pub struct EigenPair {
    /// Dominant eigenvalue (real, since the input is hermitian).
    pub value: f64,
    /// Corresponding unit eigenvector, phase-fixed so its largest-magnitude
    /// component is real and non-negative.
    pub vector: StateVector,
    /// Final residual `||H v - value v||`.
    pub residual: f64,
    /// Iterations spent on the dominant vector.
    pub iterations: usize,
    /// Best-effort estimate of the spectral gap `value - lambda_2`, from
    /// one deflated power iteration.  The deflated Rayleigh quotient never
    /// exceeds the true second eigenvalue, so this estimate only errs on
    /// the large side.
    pub gap: f64,
    /// True when the estimated gap is below the convergence tolerance, i.e.
    /// the dominant eigenvalue is (numerically) not unique.
    pub degenerate: bool,
}

/// Computes the dominant eigenpair of a positive semi-definite hermitian
/// operator by power iteration with Rayleigh-quotient estimates.
///
/// Convergence is declared when the residual `||H v - lambda v||` drops to
/// `tol` or below; failing that within `max_iter` iterations is an error
/// carrying the last residual.  After convergence one deflated iteration
/// (`H - lambda v v^dag`) estimates the second eigenvalue; the resulting
/// spectral gap, and the `degenerate` flag derived from it, let callers
/// detect ties in the spectrum.  Because the Rayleigh quotient of the
/// deflated matrix never exceeds the true second eigenvalue, the estimated
/// gap only errs upward, so `degenerate = true` is always trustworthy.
pub fn dominant_eigenpair(h: &Operator, tol: f64, max_iter: usize) -> Result<EigenPair> {
    match h.kind() {
        OperatorKind::Hermitian | OperatorKind::Projector => {}
        k => {
            return Err(Error::WrongKind {
                expected: "hermitian",
                found: k.name(),
            })
        }
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            requirement: "must be > 0",
        });
    }
    if max_iter == 0 {
        return Err(Error::InvalidParameter {
            name: "max_iter",
            value: 0.0,
            requirement: "must be >= 1",
        });
    }

    let m = h.entries();
    let start = start_vector(m.nrows());
    let (value, vector, residual, iterations) = power_iterate(m, start, tol, max_iter)?;

    // One deflation step to estimate lambda_2 and flag degeneracy.
    let dim = m.nrows();
    let mut deflated = m.clone();
    for i in 0..dim {
        for j in 0..dim {
            deflated[(i, j)] -= Complex64::new(value, 0.0) * vector[i] * vector[j].conj();
        }
    }
    // Start the deflated iteration orthogonal to the found eigenvector, so
    // it probes the complement where lambda_2 lives instead of the deflated
    // (eigenvalue ~0) direction.  In dimension 1 there is no complement and
    // no second eigenvalue; the gap defaults to the eigenvalue itself.
    let lambda2 = match orthogonalized_start(dim, &vector) {
        None => 0.0,
        Some(start2) => match power_iterate(&deflated, start2.clone(), tol, max_iter) {
            Ok((l2, _, _, _)) => l2,
            // The deflated iteration is best-effort: a slow tail only means
            // the lambda_2 estimate is a lower bound, which still yields an
            // upper bound on the gap below.
            Err(Error::EigenNonConvergence { .. }) => {
                rayleigh_after(&deflated, start2, max_iter)
            }
            Err(e) => return Err(e),
        },
    };
    let gap = value - lambda2;
    let degenerate = gap < tol;

    let vector = phase_fixed(vector);
    let space = h.space().clone();
    Ok(EigenPair {
        value,
        vector: StateVector::new(space, vector)?,
        residual,
        iterations,
        gap,
        degenerate,
    })
}

/// Core power iteration; returns (rayleigh, unit vector, residual, iters).
fn power_iterate(
    m: &Array2<Complex64>,
    start: Array1<Complex64>,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, Array1<Complex64>, f64, usize)> {
    let mut v = start;
    let mut last_residual = f64::INFINITY;
    for it in 1..=max_iter {
        let w = m.dot(&v);
        let lambda: f64 = v
            .iter()
            .zip(w.iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum();
        let residual = w
            .iter()
            .zip(v.iter())
            .map(|(wi, vi)| (wi - Complex64::new(lambda, 0.0) * vi).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual <= tol {
            return Ok((lambda, v, residual, it));
        }
        last_residual = residual;
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-150 {
            // H v = 0: v is exactly an eigenvector of eigenvalue 0.
            return Ok((0.0, v, 0.0, it));
        }
        v = w.mapv(|z| z / norm);
    }
    Err(Error::EigenNonConvergence {
        iterations: max_iter,
        residual: last_residual,
    })
}

/// Rayleigh quotient after running the iteration to its cap, used as a
/// lower-bound estimate for lambda_2 when the deflated iteration stalls.
fn rayleigh_after(m: &Array2<Complex64>, start: Array1<Complex64>, max_iter: usize) -> f64 {
    let mut v = start;
    for _ in 0..max_iter {
        let w = m.dot(&v);
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-150 {
            return 0.0;
        }
        v = w.mapv(|z| z / norm);
    }
    let w = m.dot(&v);
    v.iter()
        .zip(w.iter())
        .map(|(a, b)| (a.conj() * b).re)
        .sum()
}

fn start_vector(dim: usize) -> Array1<Complex64> {
    let mut rng = rng::stream(START_SEED);
    let mut v = Array1::from_elem(dim, Complex64::ZERO);
    for z in v.iter_mut() {
        *z = rng::complex_gaussian(&mut rng, 1.0);
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.mapv(|z| z / norm)
}

/// A fresh deterministic start vector with its component along `against`
/// projected out; `None` when the complement is (numerically) empty.
fn orthogonalized_start(dim: usize, against: &Array1<Complex64>) -> Option<Array1<Complex64>> {
    let mut rng = rng::stream(START_SEED ^ 0x5851_f42d_4c95_7f2d);
    let mut v = Array1::from_elem(dim, Complex64::ZERO);
    for z in v.iter_mut() {
        *z = rng::complex_gaussian(&mut rng, 1.0);
    }
    let overlap: Complex64 = against
        .iter()
        .zip(v.iter())
        .map(|(a, b)| a.conj() * b)
        .sum();
    for (z, a) in v.iter_mut().zip(against.iter()) {
        *z -= overlap * a;
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return None;
    }
    Some(v.mapv(|z| z / norm))
}

/// Multiplies by a global phase so the largest-magnitude component is real
/// and non-negative, removing the U(1) ambiguity of an eigenvector.
fn phase_fixed(v: Array1<Complex64>) -> Array1<Complex64> {
    let mut best = Complex64::ZERO;
    for &z in v.iter() {
        if z.norm_sqr() > best.norm_sqr() {
            best = z;
        }
    }
    if best.norm() < 1e-150 {
        return v;
    }
    let phase = best / best.norm();
    v.mapv(|z| z * phase.conj())
}
