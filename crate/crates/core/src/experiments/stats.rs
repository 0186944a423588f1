//! Frequency statistics for outcome counts.

use statrs::function::gamma::gamma_ur;

use crate::error::{Error, Result};

/// Result of a Pearson chi-square test of counts against a probability
/// vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquare {
    /// The Pearson statistic `sum (O_i - N p_i)^2 / (N p_i)` over live
    /// cells; infinite when a dead cell was observed.
    pub statistic: f64,
    /// Live cells (expected probability > 0) minus one.
    pub dof: usize,
    /// Upper-tail probability of the statistic under the chi-square
    /// distribution with `dof` degrees of freedom; 1 for zero dof, 0 for an
    /// infinite statistic.
    pub p_value: f64,
    /// True when only one live cell exists, making the test vacuous.
    pub degenerate_dof: bool,
    /// True when a count landed in a zero-probability cell.
    pub infinite: bool,
}

/// Pearson chi-square of observed counts against expected probabilities.
///
/// `expected` must be non-negative and sum to 1 within `1e-9`; `observed`
/// must contain at least one count.  Cells with zero expected probability
/// are excluded from the statistic and the degrees of freedom — unless they
/// were observed, which no finite statistic can express and is reported as
/// `infinite` with a p-value of 0.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> Result<ChiSquare> {
    if observed.len() != expected.len() {
        return Err(Error::LengthMismatch {
            left: observed.len(),
            right: expected.len(),
        });
    }
    if observed.is_empty() {
        return Err(Error::EmptyInput { what: "observed" });
    }
    let mut sum = 0.0;
    for (index, &p) in expected.iter().enumerate() {
        if p < 0.0 {
            return Err(Error::NegativeWeight { index, value: p });
        }
        sum += p;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::WeightsNotNormalized { sum });
    }
    let n: u64 = observed.iter().sum();
    if n == 0 {
        return Err(Error::EmptyInput {
            what: "observed counts (all zero)",
        });
    }

    let n = n as f64;
    let mut statistic = 0.0;
    let mut live_cells = 0usize;
    let mut infinite = false;
    for (&o, &p) in observed.iter().zip(expected.iter()) {
        if p > 0.0 {
            live_cells += 1;
            let e = n * p;
            let d = o as f64 - e;
            statistic += d * d / e;
        } else if o > 0 {
            infinite = true;
        }
    }
    if infinite {
        return Ok(ChiSquare {
            statistic: f64::INFINITY,
            dof: live_cells.saturating_sub(1),
            p_value: 0.0,
            degenerate_dof: live_cells <= 1,
            infinite: true,
        });
    }
    let dof = live_cells - 1;
    if dof == 0 {
        // A single live cell must absorb all counts; nothing is testable.
        return Ok(ChiSquare {
            statistic,
            dof: 0,
            p_value: 1.0,
            degenerate_dof: true,
            infinite: false,
        });
    }
    // gamma_ur requires a strictly positive argument; a zero statistic is
    // a perfect fit with survival probability 1.
    let p_value = if statistic > 0.0 {
        gamma_ur(dof as f64 / 2.0, statistic / 2.0)
    } else {
        1.0
    };
    Ok(ChiSquare {
        statistic,
        dof,
        p_value,
        degenerate_dof: false,
        infinite: false,
    })
}

/// Total variation distance `max_S |P(S) - Q(S)| = 0.5 * sum |p_i - q_i|`.
pub fn total_variation(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(0.5 * p.iter().zip(q.iter()).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// Ordinary least squares of `y` on `x`: returns `(slope, intercept)`.
///
/// Needs at least two points with distinct `x`.
pub fn least_squares_fit(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(Error::EmptyInput {
            what: "regression points (need at least 2)",
        });
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter {
            name: "points",
            value: mean_x,
            requirement: "x values must not all coincide",
        });
    }
    let sxy: f64 = points
        .iter()
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    Ok((slope, mean_y - slope * mean_x))
}

/// Median of a sample (ownership taken: the values are sorted in place).
/// `None` for an empty sample; NaNs order last via total ordering.
pub fn median(mut values: Vec<f64>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    })
}
