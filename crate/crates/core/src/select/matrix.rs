//! Outer-product matrices of path states.

use ndarray::Array2;
use num_complex::Complex64;

use crate::chain::{BranchTree, Path, ZERO_WEIGHT_GUARD};
use crate::error::Result;
use crate::hilbert::Operator;

/// `|phi_k><phi_k|` for one path, with its trace (the path weight).
#[derive(Debug, Clone)]
pub struct PathMatrix {
    /// The outer product, validated hermitian.
    pub operator: Operator,
    /// Trace of the matrix = squared norm of the path state.
    pub trace: f64,
    /// True when the path is numerically dead (trace at the zero guard).
    pub zero_weight: bool,
}

/// Builds the outer-product matrix of one path's (unnormalized) state.
pub fn build_path_matrix(tree: &BranchTree, path: &Path) -> Result<PathMatrix> {
    let phi = tree.path_state(&path.outcomes)?;
    let dim = phi.amps().len();
    let mut entries = Array2::from_elem((dim, dim), Complex64::ZERO);
    for (i, &a) in phi.amps().iter().enumerate() {
        for (j, &b) in phi.amps().iter().enumerate() {
            entries[(i, j)] = a * b.conj();
        }
    }
    let trace = phi.norm().powi(2);
    let operator = Operator::hermitian(phi.space().clone(), entries)?;
    Ok(PathMatrix {
        operator,
        trace,
        zero_weight: trace <= ZERO_WEIGHT_GUARD,
    })
}

/// The mixture `sum_k |phi_k><phi_k|` over a set of paths, as a hermitian
/// operator.  Its trace is the total path weight and, because path states
/// of one tree are mutually orthogonal, its eigenvalues are exactly the
/// path weights.
pub fn mixture_matrix(tree: &BranchTree, paths: &[Path]) -> Result<Operator> {
    let dim = tree.prep().amps().len();
    let mut acc = Array2::from_elem((dim, dim), Complex64::ZERO);
    for path in paths {
        let phi = tree.path_state(&path.outcomes)?;
        for (i, &a) in phi.amps().iter().enumerate() {
            if a == Complex64::ZERO {
                continue;
            }
            for (j, &b) in phi.amps().iter().enumerate() {
                acc[(i, j)] += a * b.conj();
            }
        }
    }
    Operator::hermitian(tree.prep().space().clone(), acc)
}
