//! The Hirschman kernel and the truncated trapezoid rule used to integrate
//! against it.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `β_θ(t) = sin(πθ) / (2θ (cosh(πt) + cos(πθ)))`, a probability density on ℝ.
pub fn hirschman_kernel(theta: f64, t: f64) -> f64 {
    debug_assert!(theta > 0.0 && theta < 1.0);
    let s = (PI * theta).sin();
    s / (2.0 * theta * ((PI * t).cosh() + (PI * theta).cos()))
}

/// Bound on `∫_{|t|>T} β_θ(t) dt`, from `β_θ(t) <= (2 sin(πθ)/θ) e^{-π|t|}`
/// which holds once `e^{πT} >= 4`.
pub fn kernel_tail_mass(theta: f64, half_width: f64) -> f64 {
    debug_assert!((PI * half_width).exp() >= 4.0);
    let c = 2.0 * (PI * theta).sin() / theta;
    2.0 * c / PI * (-PI * half_width).exp()
}

/// Truncated trapezoid rule on `[-T, T]` with step `h`, plus an optional
/// uniform bound on the integrand's log-norms for the tail estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub half_width: f64,
    pub step: f64,
    /// Certified bound on `|log ‖G(k+it)‖|` over all real `t`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_norm_bound: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            half_width: 8.0,
            step: 1.0 / 64.0,
            log_norm_bound: None,
        }
    }
}

impl QuadratureSpec {
    pub fn new(half_width: f64, step: f64) -> Result<Self> {
        let q = QuadratureSpec {
            half_width,
            step,
            log_norm_bound: None,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn with_log_norm_bound(mut self, bound: f64) -> Self {
        self.log_norm_bound = Some(bound);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width >= 1.0 && self.half_width.is_finite()) {
            return Err(Error::config("quadrature.T", "half-width must be a finite value >= 1"));
        }
        if !(self.step > 0.0 && self.step <= self.half_width) {
            return Err(Error::config("quadrature.step", "step must lie in (0, T]"));
        }
        let n = self.half_width / self.step;
        if (n - n.round()).abs() > 1e-9 || (n.round() as u64) % 2 != 0 {
            return Err(Error::config(
                "quadrature.step",
                "T/step must be an even integer so the coarse rule shares nodes",
            ));
        }
        Ok(())
    }

    /// Nodes `-T, -T+h, ..., T`.
    pub fn nodes(&self) -> Vec<f64> {
        let n = (self.half_width / self.step).round() as i64;
        (-n..=n).map(|k| k as f64 * self.step).collect()
    }
}

/// Fixed-order pairwise summation.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// Trapezoid integral at step `h` and at step `2h` from node values.
pub(crate) fn trapezoid_pair(values: &[f64], step: f64) -> (f64, f64) {
    let n = values.len();
    let fine_inner = pairwise_sum(&values[1..n - 1]);
    let fine = step * (fine_inner + 0.5 * (values[0] + values[n - 1]));
    let coarse_vals: Vec<f64> = values.iter().step_by(2).copied().collect();
    let m = coarse_vals.len();
    let coarse_inner = pairwise_sum(&coarse_vals[1..m - 1]);
    let coarse = 2.0 * step * (coarse_inner + 0.5 * (coarse_vals[0] + coarse_vals[m - 1]));
    (fine, coarse)
}

/// Quadrature of `β_θ` itself: returns `(integral, error_estimate)`.
pub fn kernel_mass(theta: f64, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    quad.validate()?;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidExponent(format!("θ must lie in (0, 1), got {theta}")));
    }
    let values: Vec<f64> = quad
        .nodes()
        .par_iter()
        .map(|&t| hirschman_kernel(theta, t))
        .collect();
    let (fine, coarse) = trapezoid_pair(&values, quad.step);
    let tail = kernel_tail_mass(theta, quad.half_width);
    Ok((fine, (fine - coarse).abs() + tail))
}
