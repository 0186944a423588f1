//! Inverse-CDF sampling on a normalized weight vector.

use crate::error::{Error, Result};

/// How far the weight sum may stray from 1 before the input is refused.
const WEIGHT_SUM_TOL: f64 = 1e-9;

/// Picks the index whose half-open cumulative interval
/// `[c_{k-1}, c_k)` contains `rand_value`.
///
/// Weights must be non-negative and sum to 1 within `1e-9`;
/// `rand_value` must lie in `[0, 1)`.  Zero-weight entries own empty
/// intervals and can never be selected.  If accumulated rounding pushes the
/// final cumulative sum below `rand_value`, the last positive-weight index
/// is returned, so the function is total on its stated domain.
pub fn select_cumulative(weights: &[f64], rand_value: f64) -> Result<usize> {
    if weights.is_empty() {
        return Err(Error::EmptyInput { what: "weights" });
    }
    if !(0.0..1.0).contains(&rand_value) {
        return Err(Error::RandValueOutOfRange { value: rand_value });
    }
    let mut sum = 0.0;
    for (index, &w) in weights.iter().enumerate() {
        if w < 0.0 {
            return Err(Error::NegativeWeight { index, value: w });
        }
        sum += w;
    }
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::WeightsNotNormalized { sum });
    }

    let mut acc = 0.0;
    let mut last_positive = None;
    for (index, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            acc += w;
            last_positive = Some(index);
            if rand_value < acc {
                return Ok(index);
            }
        }
    }
    // rand_value >= final cumulative sum: only possible through float slop,
    // and some weight was positive because the sum is ~1.
    Ok(last_positive.expect("weights summing to 1 contain a positive entry"))
}
