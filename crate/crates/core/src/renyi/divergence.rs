use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::spectral::graded_singular_values;
use crate::state::FaithfulState;

/// Two faithful states of the same dimension: `rho` (for ψ) and `sigma`
/// (for the reference φ).
#[derive(Clone, Debug)]
pub struct StatePair {
    pub rho: FaithfulState,
    pub sigma: FaithfulState,
}

impl StatePair {
    pub fn new(rho: FaithfulState, sigma: FaithfulState) -> Result<Self> {
        if rho.dim() != sigma.dim() {
            return Err(Error::DimensionMismatch {
                expected: sigma.dim(),
                found: rho.dim(),
            });
        }
        Ok(StatePair { rho, sigma })
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    /// `(ρ_1 ⊗ ρ_2, σ_1 ⊗ σ_2)`.
    pub fn tensor(&self, other: &StatePair) -> Result<StatePair> {
        StatePair::new(self.rho.tensor(&other.rho)?, self.sigma.tensor(&other.sigma)?)
    }

    /// `(u ρ u^*, u σ u^*)`.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<StatePair> {
        StatePair::new(self.rho.conjugate(u)?, self.sigma.conjugate(u)?)
    }
}

pub(crate) fn check_divergence_exponent(p: f64) -> Result<()> {
    if !p.is_finite() || p <= 0.0 || p == 1.0 {
        return Err(Error::InvalidExponent(format!(
            "the sandwiched divergence needs p in (0,1) ∪ (1,∞), got {p}"
        )));
    }
    Ok(())
}

/// `tr[(σ^{(1-p)/2p} ρ σ^{(1-p)/2p})^p]`, as `Σ s_i^{2p}` over the singular
/// values of `σ^{(1-p)/2p} ρ^{1/2}`. These are computed in the eigenbasis
/// of σ, where the left factor is a diagonal scaling, so that small
/// singular values keep their relative accuracy for extreme `p`.
pub fn sandwiched_trace(pair: &StatePair, p: f64) -> Result<f64> {
    let a = (1.0 - p) / (2.0 * p);
    let eig = pair.sigma.eigen();
    let scale: Vec<f64> = eig.eigenvalues().iter().map(|&l| l.powf(a)).collect();
    let rho_half = pair.rho.real_power(0.5);
    let y = eig.unitary().adjoint() * rho_half;
    let sv = graded_singular_values(&scale, &y)?;
    Ok(sv.iter().map(|&s| s.powf(2.0 * p)).sum())
}

/// Sandwiched Rényi divergence
/// `D_p(ρ‖σ) = log tr[(σ^{(1-p)/2p} ρ σ^{(1-p)/2p})^p] / (p - 1)`
/// for `p ∈ (0,1) ∪ (1,∞)`.
pub fn sandwiched_divergence(pair: &StatePair, p: f64) -> Result<f64> {
    check_divergence_exponent(p)?;
    Ok(sandwiched_trace(pair, p)?.ln() / (p - 1.0))
}
