//! Numerical certificates for the three-lines bound, its Hirschman
//! log-average refinement, and the product-of-powers inequality.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::AnalyticFamily;
use super::kernel::{hirschman_kernel, kernel_tail_mass, trapezoid_pair, QuadratureSpec};
use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix, HermitianMatrix};
use crate::schatten::{p_theta, schatten_norm, PExponent};
use crate::spectral::{hermitian_eigen, power_from_eigen, SpectralDecomposition};
use crate::tol;
use crate::weighted::WeightedContext;

/// How boundary and interior values are measured.
#[derive(Clone, Copy, Debug)]
pub enum Weighting<'a> {
    /// Plain Schatten norms.
    Trace,
    /// Weighted norms `‖·‖_{p,φ}` of a faithful state.
    State(&'a WeightedContext),
}

impl Weighting<'_> {
    fn norm(&self, x: &ComplexMatrix, p: PExponent) -> Result<f64> {
        match self {
            Weighting::Trace => schatten_norm(x, p),
            Weighting::State(ctx) => ctx.weighted_norm(x, p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySample {
    pub t: f64,
    pub norm0: f64,
    pub norm1: f64,
}

/// Sampled boundary norms `‖G(it)‖_{p0}` and `‖G(1+it)‖_{p1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryNormProfile {
    pub p0: PExponent,
    pub p1: PExponent,
    pub samples: Vec<BoundarySample>,
    pub sup0: f64,
    pub sup1: f64,
    /// Measured: max and min agree within `1e-9` relative on both lines.
    pub t_invariant: bool,
}

impl BoundaryNormProfile {
    fn from_samples(p0: PExponent, p1: PExponent, samples: Vec<BoundarySample>) -> Self {
        let spread = |f: fn(&BoundarySample) -> f64| {
            let max = samples.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
            let min = samples.iter().map(f).fold(f64::INFINITY, f64::min);
            (max, max - min <= 1e-9 * max.abs().max(f64::MIN_POSITIVE))
        };
        let (sup0, flat0) = spread(|s| s.norm0);
        let (sup1, flat1) = spread(|s| s.norm1);
        BoundaryNormProfile {
            p0,
            p1,
            samples,
            sup0,
            sup1,
            t_invariant: flat0 && flat1,
        }
    }
}

/// Outcome of one inequality certificate: `slack = rhs - lhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub theta: f64,
    pub p_theta: PExponent,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    /// True only when the right-hand side is a certified bound (true
    /// boundary supremum, or quadrature with a certified tail).
    pub sound: bool,
    /// Estimated numerical error on `rhs` (quadrature and tail).
    pub error_estimate: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<BoundaryNormProfile>,
}

/// 33 points uniform on `[-4, 4]`.
pub fn default_t_grid() -> Vec<f64> {
    (0..33).map(|k| -4.0 + 0.25 * k as f64).collect()
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidExponent(format!("θ must lie in (0, 1), got {theta}")));
    }
    Ok(())
}

fn commutes(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
    let c = a * b - b * a;
    c.max_abs() <= 1e-12 * a.max_abs().max(1.0) * b.max_abs().max(1.0)
}

/// Three-lines certificate `‖G(θ)‖_{p_θ} <= M_0^{1-θ} M_1^θ`, with `M_k`
/// the maximum of boundary norms over `t_grid`.
pub fn three_lines_check(
    fam: &AnalyticFamily,
    weighting: Weighting<'_>,
    p0: PExponent,
    p1: PExponent,
    theta: f64,
    t_grid: &[f64],
) -> Result<CertificateReport> {
    check_theta(theta)?;
    if t_grid.is_empty() {
        return Err(Error::config("t_grid", "must be nonempty"));
    }
    let symmetric = t_grid
        .iter()
        .all(|&t| t_grid.iter().any(|&s| (s + t).abs() <= 1e-12 * t.abs().max(1.0)));
    if !symmetric {
        return Err(Error::config("t_grid", "must be symmetric about 0"));
    }
    let pt = p_theta(p0, p1, theta);
    let lhs = weighting.norm(&fam.evaluate(c64(theta, 0.0))?, pt)?;

    let samples = t_grid
        .iter()
        .map(|&t| {
            Ok(BoundarySample {
                t,
                norm0: weighting.norm(&fam.evaluate(c64(0.0, t))?, p0)?,
                norm1: weighting.norm(&fam.evaluate(c64(1.0, t))?, p1)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let profile = BoundaryNormProfile::from_samples(p0, p1, samples);
    let rhs = profile.sup0.powf(1.0 - theta) * profile.sup1.powf(theta);

    let structurally_invariant = fam.boundary_t_invariant();
    let sound = structurally_invariant
        && match weighting {
            Weighting::Trace => true,
            Weighting::State(ctx) => {
                fam.is_constant()
                    || fam
                        .varying_power_bases()
                        .iter()
                        .all(|a| commutes(a.as_matrix(), ctx.state().matrix()))
            }
        };

    Ok(CertificateReport {
        theta,
        p_theta: pt,
        lhs,
        rhs,
        slack: rhs - lhs,
        sound,
        error_estimate: 0.0,
        profile: Some(profile),
    })
}

fn checked_log(t: f64, norm: f64) -> Result<f64> {
    if !(norm >= tol::LOG_FLOOR) {
        return Err(Error::LogOfZero { t, norm });
    }
    Ok(norm.ln())
}

/// Hirschman certificate
/// `log‖G(θ)‖_{p_θ} <= ∫ (1-θ) β_{1-θ}(t) log‖G(it)‖_{p0} + θ β_θ(t) log‖G(1+it)‖_{p1} dt`,
/// with the integral evaluated by the truncated trapezoid rule.
pub fn hirschman_check(
    fam: &AnalyticFamily,
    p0: PExponent,
    p1: PExponent,
    theta: f64,
    quad: &QuadratureSpec,
) -> Result<CertificateReport> {
    check_theta(theta)?;
    quad.validate()?;
    let pt = p_theta(p0, p1, theta);
    let lhs = checked_log(f64::NAN, schatten_norm(&fam.evaluate(c64(theta, 0.0))?, pt)?)?;

    let logs = quad
        .nodes()
        .par_iter()
        .map(|&t| {
            let l0 = checked_log(t, schatten_norm(&fam.evaluate(c64(0.0, t))?, p0)?)?;
            let l1 = checked_log(t, schatten_norm(&fam.evaluate(c64(1.0, t))?, p1)?)?;
            Ok((t, l0, l1))
        })
        .collect::<Result<Vec<_>>>()?;

    let values: Vec<f64> = logs
        .iter()
        .map(|&(t, l0, l1)| {
            (1.0 - theta) * hirschman_kernel(1.0 - theta, t) * l0 + theta * hirschman_kernel(theta, t) * l1
        })
        .collect();
    let (fine, coarse) = trapezoid_pair(&values, quad.step);

    let sampled_bound = logs
        .iter()
        .map(|&(_, l0, l1)| l0.abs().max(l1.abs()))
        .fold(0.0, f64::max);
    let bound = quad.log_norm_bound.unwrap_or(sampled_bound);
    let tail = bound
        * ((1.0 - theta) * kernel_tail_mass(1.0 - theta, quad.half_width)
            + theta * kernel_tail_mass(theta, quad.half_width));

    Ok(CertificateReport {
        theta,
        p_theta: pt,
        lhs,
        rhs: fine,
        slack: fine - lhs,
        sound: quad.log_norm_bound.is_some() || fam.boundary_t_invariant(),
        error_estimate: (fine - coarse).abs() + tail,
        profile: None,
    })
}

fn product_of_powers(eigs: &[SpectralDecomposition], z: num_complex::Complex64) -> Result<ComplexMatrix> {
    let mut acc = power_from_eigen(&eigs[0], z)?;
    for e in &eigs[1..] {
        acc = acc * power_from_eigen(e, z)?;
    }
    Ok(acc)
}

/// Certificate for
/// `log ‖ |∏ A_k^r|^{1/r} ‖_p <= ∫ β_r(t) log ‖∏ A_k^{1+it}‖_p dt`
/// over faithful positive factors `A_k`, `r ∈ (0, 1]`.
///
/// At `r = 1` the kernel degenerates to a point mass at `t = 0` and both
/// sides coincide.
pub fn product_power_check(
    factors: &[HermitianMatrix],
    r: f64,
    p: PExponent,
    quad: &QuadratureSpec,
) -> Result<CertificateReport> {
    if factors.is_empty() {
        return Err(Error::InvalidShape("need at least one factor".into()));
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidExponent(format!("r must lie in (0, 1], got {r}")));
    }
    quad.validate()?;
    let d = factors[0].dim();
    let mut eigs = Vec::with_capacity(factors.len());
    for a in factors {
        a.as_matrix().check_dim(d)?;
        let e = hermitian_eigen(a)?;
        if e.min_eigenvalue() < tol::FAITHFUL {
            return Err(Error::SingularPower {
                exponent: "1+it".into(),
                min_eig: e.min_eigenvalue(),
            });
        }
        eigs.push(e);
    }

    let p_over_r = PExponent::from_reciprocal(r * p.reciprocal())?;
    let lhs = checked_log(f64::NAN, schatten_norm(&product_of_powers(&eigs, c64(r, 0.0))?, p_over_r)?)? / r;

    if r == 1.0 {
        return Ok(CertificateReport {
            theta: r,
            p_theta: p_over_r,
            lhs,
            rhs: lhs,
            slack: 0.0,
            sound: true,
            error_estimate: 0.0,
            profile: None,
        });
    }

    let values = quad
        .nodes()
        .par_iter()
        .map(|&t| {
            let x = product_of_powers(&eigs, c64(1.0, t))?;
            Ok(hirschman_kernel(r, t) * checked_log(t, schatten_norm(&x, p)?)?)
        })
        .collect::<Result<Vec<f64>>>()?;
    let (fine, coarse) = trapezoid_pair(&values, quad.step);

    // s_min(∏A_k) >= ∏ λ_min(A_k) and ‖X‖_p <= d^{1/p} ‖X‖_∞ <= d^{1/p} ∏ λ_max(A_k)
    let low: f64 = eigs.iter().map(|e| e.min_eigenvalue().ln()).sum();
    let high: f64 = eigs.iter().map(|e| e.max_eigenvalue().ln()).sum::<f64>() + (d as f64).ln() * p.reciprocal();
    let bound = quad.log_norm_bound.unwrap_or(low.abs().max(high.abs()));
    let tail = bound * kernel_tail_mass(r, quad.half_width);

    Ok(CertificateReport {
        theta: r,
        p_theta: p_over_r,
        lhs,
        rhs: fine,
        slack: fine - lhs,
        sound: true,
        error_estimate: (fine - coarse).abs() + tail,
        profile: None,
    })
}
