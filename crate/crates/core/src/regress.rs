//! Closed-form ordinary least squares for the reciprocity relationship.
//!
//! `x` is the tariff a partner charges the USA, `y` the proposed US
//! reciprocal tariff, both in percent. A slope below one is the
//! "discounted reciprocity" pattern.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    /// Zero when every `y` is identical (see `degenerate`).
    pub r_squared: f64,
    pub residuals: Vec<f64>,
    pub n: usize,
    /// Set when the total variance of `y` is zero and `r_squared` is
    /// defined rather than computed.
    pub degenerate: bool,
}

impl RegressionFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    pub fn assess(&self) -> DiscountAssessment {
        assess_reciprocity(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscountAssessment {
    pub slope: f64,
    pub is_discounted: bool,
    pub discount_factor: f64,
}

/// Serialized form of a fit, as written to `fit.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitSummary {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n: usize,
    pub is_discounted: bool,
    pub discount_factor: f64,
}

impl From<&RegressionFit> for FitSummary {
    fn from(fit: &RegressionFit) -> Self {
        let a = assess_reciprocity(fit);
        Self {
            slope: fit.slope,
            intercept: fit.intercept,
            r_squared: fit.r_squared,
            n: fit.n,
            is_discounted: a.is_discounted,
            discount_factor: a.discount_factor,
        }
    }
}

pub fn fit_ols(points: &[(f64, f64)]) -> Result<RegressionFit> {
    let n = points.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "regression needs at least 2 points, got {n}"
        )));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::Domain("regression input contains non-finite values".into()));
    }
    let x0 = points[0].0;
    if points.iter().all(|&(x, _)| x == x0) {
        return Err(Error::DegenerateDesign(
            "all x values are identical; slope is undefined".into(),
        ));
    }

    let nf = n as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let y0 = points[0].1;
    let constant_y = points.iter().all(|&(_, y)| y == y0);
    let mean_y = if constant_y {
        y0
    } else {
        points.iter().map(|p| p.1).sum::<f64>() / nf
    };

    // centered sums keep cancellation small when x is far from zero
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residuals: Vec<f64> = points
        .iter()
        .map(|&(x, y)| y - (intercept + slope * x))
        .collect();

    let (r_squared, degenerate) = if constant_y || syy == 0.0 {
        (0.0, true)
    } else {
        let ssr: f64 = residuals.iter().map(|r| r * r).sum();
        ((1.0 - ssr / syy).clamp(0.0, 1.0), false)
    };

    Ok(RegressionFit {
        slope,
        intercept,
        r_squared,
        residuals,
        n,
        degenerate,
    })
}

pub fn assess_reciprocity(fit: &RegressionFit) -> DiscountAssessment {
    DiscountAssessment {
        slope: fit.slope,
        is_discounted: fit.slope < 1.0,
        discount_factor: 1.0 - fit.slope,
    }
}
