//! Observed-order analysis for grid-refinement ladders.
//!
//! A refinement study runs the same computation on a sequence of grids with
//! decreasing mesh width `h` and records an error per rung. The observed
//! order between consecutive rungs is `log(e_i/e_{i+1}) / log(h_i/h_{i+1})`;
//! the fitted order is the least-squares slope of `log e` against `log h`
//! over the whole ladder, which is what acceptance gates compare against.

use crate::error::{Error, Result};
use serde::Serialize;

/// One refinement study: mesh widths, errors, and the orders they imply.
#[derive(Clone, Debug, Serialize)]
pub struct OrderStudy {
    /// Mesh widths, strictly decreasing.
    pub hs: Vec<f64>,
    /// Error magnitudes per rung (not required to be monotone; a roundoff
    /// floor legitimately breaks monotonicity on the finest rungs).
    pub errors: Vec<f64>,
    /// Observed order between each consecutive pair of rungs.
    pub pairwise: Vec<f64>,
    /// Least-squares slope of `log error` vs `log h`.
    pub fitted: f64,
}

fn validate(hs: &[f64], errors: &[f64], min_rungs: usize) -> Result<()> {
    if hs.len() != errors.len() || hs.len() < min_rungs {
        return Err(Error::Invalid(format!(
            "order study needs at least {min_rungs} matched (h, error) rungs, got {} and {}",
            hs.len(),
            errors.len()
        )));
    }
    for w in hs.windows(2) {
        if !(w[1] > 0.0 && w[1] < w[0]) {
            return Err(Error::Invalid(format!(
                "mesh widths must be positive and strictly decreasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    for &e in errors {
        if !(e.is_finite() && e > 0.0) {
            return Err(Error::Invalid(format!(
                "errors must be finite and positive to take logarithms, got {e}"
            )));
        }
    }
    Ok(())
}

/// Observed order between each consecutive rung pair. Fails with
/// [`Error::NonMonotone`] if the error ever rises under refinement, since a
/// pairwise order is then meaningless as a convergence claim.
pub fn pairwise_orders(hs: &[f64], errors: &[f64]) -> Result<Vec<f64>> {
    validate(hs, errors, 2)?;
    let mut out = Vec::with_capacity(hs.len() - 1);
    for i in 0..hs.len() - 1 {
        if errors[i + 1] >= errors[i] {
            return Err(Error::NonMonotone {
                rung: i + 1,
                prev: errors[i],
                next: errors[i + 1],
            });
        }
        out.push((errors[i] / errors[i + 1]).ln() / (hs[i] / hs[i + 1]).ln());
    }
    Ok(out)
}

/// Least-squares slope of `log error` against `log h` over the ladder.
/// Tolerant of non-monotone tails; requires at least three rungs so the
/// slope is not a single difference quotient in disguise.
pub fn fit_order(hs: &[f64], errors: &[f64]) -> Result<f64> {
    validate(hs, errors, 3)?;
    let n = hs.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (&h, &e) in hs.iter().zip(errors) {
        let (x, y) = (h.ln(), e.ln());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return Err(Error::Invalid(
            "mesh widths are too close together to fit a slope".into(),
        ));
    }
    Ok((n * sxy - sx * sy) / denom)
}

/// Full study: pairwise orders (computed without the monotonicity gate, so a
/// roundoff-floored final rung shows up as a small or negative entry rather
/// than an error) plus the fitted slope.
pub fn order_study(hs: Vec<f64>, errors: Vec<f64>) -> Result<OrderStudy> {
    let fitted = fit_order(&hs, &errors)?;
    let mut pairwise = Vec::with_capacity(hs.len() - 1);
    for i in 0..hs.len() - 1 {
        pairwise.push((errors[i] / errors[i + 1]).ln() / (hs[i] / hs[i + 1]).ln());
    }
    Ok(OrderStudy {
        hs,
        errors,
        pairwise,
        fitted,
    })
}
