//! Dense operators with validated structural kinds.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::space::CompositeSpace;
use super::state::StateVector;
use super::{max_abs, HERMITIAN_TOL, PROJECTOR_TOL, UNITARY_TOL};

/// Structural property an [`Operator`] was validated against on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// `U^dag U = I` within [`UNITARY_TOL`](super::UNITARY_TOL).
    Unitary,
    /// `P^2 = P` and `P = P^dag` within [`PROJECTOR_TOL`](super::PROJECTOR_TOL).
    Projector,
    /// `H = H^dag` within [`HERMITIAN_TOL`](super::HERMITIAN_TOL).
    Hermitian,
    /// No property checked.
    General,
}

impl OperatorKind {
    /// Lower-case name used in error messages.
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Unitary => "unitary",
            OperatorKind::Projector => "projector",
            OperatorKind::Hermitian => "hermitian",
            OperatorKind::General => "general",
        }
    }
}

/// A dense square matrix over a [`CompositeSpace`], tagged with its kind.
///
/// The kind is established once by the constructor's numeric check and then
/// propagated through products, adjoints and Kronecker products only where
/// the algebra guarantees it survives; everything else demotes to
/// [`OperatorKind::General`].
#[derive(Debug, Clone)]
pub struct Operator {
    space: CompositeSpace,
    entries: Array2<Complex64>,
    kind: OperatorKind,
}

impl Operator {
    fn checked(space: CompositeSpace, entries: Array2<Complex64>, kind: OperatorKind) -> Result<Self> {
        let dim = space.total_dim();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::MatrixShape {
                rows: entries.nrows(),
                cols: entries.ncols(),
                dim,
            });
        }
        Ok(Self {
            space,
            entries,
            kind,
        })
    }

    /// Validates `U^dag U = I` and wraps the matrix as a unitary.
    pub fn unitary(space: CompositeSpace, entries: Array2<Complex64>) -> Result<Self> {
        let op = Self::checked(space, entries, OperatorKind::Unitary)?;
        let gram = op.adjoint_entries().dot(&op.entries);
        let dev = deviation_from_identity(&gram);
        if dev > UNITARY_TOL {
            return Err(Error::KindViolation {
                expected: "unitary",
                deviation: dev,
            });
        }
        Ok(op)
    }

    /// Validates `P^2 = P`, `P = P^dag` and wraps the matrix as a projector.
    pub fn projector(space: CompositeSpace, entries: Array2<Complex64>) -> Result<Self> {
        let op = Self::checked(space, entries, OperatorKind::Projector)?;
        let herm_dev = deviation_from_adjoint(&op.entries);
        let idem = op.entries.dot(&op.entries);
        let idem_dev = max_abs((&idem - &op.entries).iter());
        let dev = herm_dev.max(idem_dev);
        if dev > PROJECTOR_TOL {
            return Err(Error::KindViolation {
                expected: "projector",
                deviation: dev,
            });
        }
        Ok(op)
    }

    /// Validates `H = H^dag` and wraps the matrix as hermitian.
    pub fn hermitian(space: CompositeSpace, entries: Array2<Complex64>) -> Result<Self> {
        let op = Self::checked(space, entries, OperatorKind::Hermitian)?;
        let dev = deviation_from_adjoint(&op.entries);
        if dev > HERMITIAN_TOL {
            return Err(Error::KindViolation {
                expected: "hermitian",
                deviation: dev,
            });
        }
        Ok(op)
    }

    /// Wraps a matrix with no structural check.
    pub fn general(space: CompositeSpace, entries: Array2<Complex64>) -> Result<Self> {
        Self::checked(space, entries, OperatorKind::General)
    }

    /// The identity on a space (kind [`OperatorKind::Unitary`]).
    pub fn identity(space: CompositeSpace) -> Self {
        let dim = space.total_dim();
        Self {
            space,
            entries: Array2::eye(dim).mapv(|x: f64| Complex64::new(x, 0.0)),
            kind: OperatorKind::Unitary,
        }
    }

    /// Projector onto basis value `outcome` of one tensor factor:
    /// `I (x) ... (x) |outcome><outcome| (x) ... (x) I`.
    ///
    /// Built directly as a diagonal 0/1 matrix, so no Kronecker products are
    /// materialized along the way.
    pub fn basis_projector(space: CompositeSpace, factor: usize, outcome: usize) -> Result<Self> {
        let dims = space.factor_dims();
        if factor >= dims.len() {
            return Err(Error::DimensionMismatch {
                expected: dims.len(),
                found: factor,
            });
        }
        if outcome >= dims[factor] {
            return Err(Error::DimensionMismatch {
                expected: dims[factor],
                found: outcome,
            });
        }
        let stride: usize = dims[factor + 1..].iter().product();
        let dim = space.total_dim();
        let mut entries = Array2::from_elem((dim, dim), Complex64::ZERO);
        for i in 0..dim {
            if (i / stride) % dims[factor] == outcome {
                entries[(i, i)] = Complex64::ONE;
            }
        }
        Self::checked(space, entries, OperatorKind::Projector)
    }

    /// The space this operator acts on.
    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    /// Raw matrix entries.
    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    /// The validated kind.
    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    /// Applies the operator to a ket.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.amps().len() != self.space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.total_dim(),
                found: psi.amps().len(),
            });
        }
        StateVector::new(psi.space().clone(), self.entries.dot(psi.amps()))
    }

    /// Matrix product `self * other` (apply `other` first).
    ///
    /// Unitarity survives composition; every other kind pairing demotes to
    /// [`OperatorKind::General`] (e.g. a product of projectors is generally
    /// not a projector).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.space.total_dim() != other.space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.total_dim(),
                found: other.space.total_dim(),
            });
        }
        let kind = match (self.kind, other.kind) {
            (OperatorKind::Unitary, OperatorKind::Unitary) => OperatorKind::Unitary,
            _ => OperatorKind::General,
        };
        Ok(Self {
            space: self.space.clone(),
            entries: self.entries.dot(&other.entries),
            kind,
        })
    }

    /// Conjugate transpose.  Every kind is preserved.
    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space.clone(),
            entries: self.adjoint_entries(),
            kind: self.kind,
        }
    }

    /// Kronecker product `self (x) other`.
    ///
    /// Matching kinds are preserved (the Kronecker product of two unitaries,
    /// projectors or hermitian matrices keeps that property); mixed pairs
    /// demote to [`OperatorKind::General`].
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let space = self.space.compose(&other.space)?;
        let (n1, n2) = (self.entries.nrows(), other.entries.nrows());
        let dim = n1 * n2;
        let mut entries = Array2::from_elem((dim, dim), Complex64::ZERO);
        for i1 in 0..n1 {
            for j1 in 0..n1 {
                let a = self.entries[(i1, j1)];
                if a == Complex64::ZERO {
                    continue;
                }
                for i2 in 0..n2 {
                    for j2 in 0..n2 {
                        entries[(i1 * n2 + i2, j1 * n2 + j2)] = a * other.entries[(i2, j2)];
                    }
                }
            }
        }
        let kind = if self.kind == other.kind {
            self.kind
        } else {
            OperatorKind::General
        };
        Self::checked(space, entries, kind)
    }

    /// Max-abs entry of the commutator `[self, other]`; zero means the two
    /// operators commute exactly.
    pub fn commutator_max_abs(&self, other: &Self) -> Result<f64> {
        if self.space.total_dim() != other.space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.total_dim(),
                found: other.space.total_dim(),
            });
        }
        let ab = self.entries.dot(&other.entries);
        let ba = other.entries.dot(&self.entries);
        Ok(max_abs((&ab - &ba).iter()))
    }

    fn adjoint_entries(&self) -> Array2<Complex64> {
        self.entries.t().mapv(|z| z.conj())
    }
}

fn deviation_from_identity(m: &Array2<Complex64>) -> f64 {
    let mut dev = 0.0_f64;
    for ((i, j), z) in m.indexed_iter() {
        let target = if i == j { Complex64::ONE } else { Complex64::ZERO };
        dev = dev.max((z - target).norm());
    }
    dev
}

fn deviation_from_adjoint(m: &Array2<Complex64>) -> f64 {
    let mut dev = 0.0_f64;
    for ((i, j), z) in m.indexed_iter() {
        dev = dev.max((z - m[(j, i)].conj()).norm());
    }
    dev
}
