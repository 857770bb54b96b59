//! Numerical check of the order-three growth bound `|Z_Γ(s)| ≤ C1 e^{C2 |s|³}`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::modular::ModularParameter;
use super::policy::TruncationPolicy;
use super::zeros::{zeros_predicted, ZeroBox};
use super::zeta::z_gamma_log_abs;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthSample {
    pub s: Complex64,
    pub log_abs: f64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    /// Intercept of the least-squares line through `(|s|³, log|Z|)`.
    pub ls_intercept: f64,
    /// `C2`: the least-squares slope, clamped at zero.
    pub c2: f64,
    /// `log C1`: the intercept raised until the line lies above every sample.
    pub log_c1: f64,
    pub samples: Vec<GrowthSample>,
    /// Inputs dropped for lying within the margin of a predicted zero.
    pub excluded: Vec<Complex64>,
    /// Samples above `log C1 + C2 |s|³` (beyond their tail bounds).
    pub violations: Vec<Complex64>,
    pub passed: bool,
}

impl GrowthFit {
    pub fn c1(&self) -> f64 {
        self.log_c1.exp()
    }
}

/// A `side × side` grid over `[re_min, re_max] × [im_min, im_max]`, row by row.
pub fn sample_grid(re: (f64, f64), im: (f64, f64), side: usize) -> Vec<Complex64> {
    let at = |(lo, hi): (f64, f64), i: usize| {
        if side <= 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (side - 1) as f64
        }
    };
    (0..side)
        .flat_map(|i| (0..side).map(move |j| Complex64::new(at(re, j), at(im, i))))
        .collect()
}

fn near_zero(s: Complex64, tau: &ModularParameter, margin: f64) -> bool {
    let area = ZeroBox {
        re_min: s.re - margin,
        re_max: s.re + margin,
        im_min: s.im - margin,
        im_max: s.im + margin,
    };
    zeros_predicted(tau, &area)
        .iter()
        .any(|(_, z)| (z - s).norm() < margin)
}

/// Fits `log|Z_Γ(s)| ≤ log C1 + C2 |s|³` over `samples`, skipping any within
/// `margin` of a predicted zero.
pub fn growth_check(
    tau: &ModularParameter,
    samples: &[Complex64],
    margin: f64,
    policy: &TruncationPolicy,
) -> Result<GrowthFit> {
    if !(margin >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "margin {margin} must be nonnegative"
        )));
    }
    let (kept, excluded): (Vec<Complex64>, Vec<Complex64>) =
        samples.iter().partition(|&&s| !near_zero(s, tau, margin));
    let evaluated = kept
        .par_iter()
        .map(|&s| {
            z_gamma_log_abs(s, tau, policy).map(|(log_abs, tail_bound)| GrowthSample {
                s,
                log_abs,
                tail_bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let (ls_intercept, c2) = least_squares(&evaluated);
    let envelope = evaluated
        .iter()
        .map(|p| p.log_abs - ls_intercept - c2 * p.s.norm().powi(3))
        .fold(0.0f64, f64::max);
    let log_c1 = ls_intercept + envelope;
    let violations: Vec<Complex64> = evaluated
        .iter()
        .filter(|p| p.log_abs - p.tail_bound > log_c1 + c2 * p.s.norm().powi(3))
        .map(|p| p.s)
        .collect();
    let passed = log_c1.is_finite() && c2.is_finite() && violations.is_empty();
    Ok(GrowthFit {
        ls_intercept,
        c2,
        log_c1,
        samples: evaluated,
        excluded,
        violations,
        passed,
    })
}

fn least_squares(samples: &[GrowthSample]) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|p| p.log_abs.is_finite())
        .map(|p| (p.s.norm().powi(3), p.log_abs))
        .collect();
    if pts.is_empty() {
        return (0.0, 0.0);
    }
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    if slope > 0.0 {
        (mean_y - slope * mean_x, slope)
    } else {
        (mean_y, 0.0)
    }
}
