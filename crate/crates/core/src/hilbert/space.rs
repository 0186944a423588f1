//! Composite space bookkeeping.

use crate::error::{Error, Result};

/// Hard cap on the total dense dimension.
///
/// Branch trees and witness registers that would exceed this are handled
/// analytically (see `chain::witness`); nothing in the crate ever
/// materializes a larger matrix or vector.
pub const MAX_DENSE_DIM: usize = 4096;

/// A tensor product of finite-dimensional factors.
///
/// The factor list fixes the basis ordering: basis index `i` of the product
/// space decomposes into per-factor indices by mixed-radix digits, most
/// significant factor first (standard Kronecker order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeSpace {
    factor_dims: Vec<usize>,
    total_dim: usize,
}

impl CompositeSpace {
    /// Builds a space from its factor dimensions.
    ///
    /// Every factor must have dimension at least 1 and the product must not
    /// exceed [`MAX_DENSE_DIM`].
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(Error::EmptyInput {
                what: "factor dimension list",
            });
        }
        let mut total: usize = 1;
        for &d in &factor_dims {
            if d == 0 {
                return Err(Error::InvalidFactorDimension);
            }
            total = total
                .checked_mul(d)
                .ok_or(Error::DimensionTooLarge {
                    dim: usize::MAX,
                    cap: MAX_DENSE_DIM,
                })?;
            if total > MAX_DENSE_DIM {
                return Err(Error::DimensionTooLarge {
                    dim: total,
                    cap: MAX_DENSE_DIM,
                });
            }
        }
        Ok(Self {
            factor_dims,
            total_dim: total,
        })
    }

    /// A space with a single factor.
    pub fn single(dim: usize) -> Result<Self> {
        Self::new(vec![dim])
    }

    /// Factor dimensions in Kronecker order.
    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    /// Product of the factor dimensions.
    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    /// The space of `self (x) other`: factor lists concatenated.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let mut dims = self.factor_dims.clone();
        dims.extend_from_slice(&other.factor_dims);
        Self::new(dims)
    }
}
