//! State-weighted norms `‖x‖_{p,φ} = ‖σ^{1/2p} x σ^{1/2p}‖_p`, the modular
//! flow of a faithful state, the extremal analytic family attaining the
//! interpolation bound, and sampled lower estimates of weighted operator
//! norms.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::harness::ensemble::ginibre;
use crate::harness::rng::trial_rng;
use crate::matrix::{c64, ComplexMatrix, HermitianMatrix, C64};
use crate::schatten::{p_theta, schatten_norm, PExponent};
use crate::spectral::polar;
use crate::state::FaithfulState;
use crate::strip::{AnalyticFamily, Affine, ScalarFn};

/// A matrix algebra together with a faithful state `φ = tr(σ ·)`.
#[derive(Clone, Debug)]
pub struct WeightedContext {
    state: FaithfulState,
}

impl WeightedContext {
    pub fn new(state: FaithfulState) -> Self {
        WeightedContext { state }
    }

    pub fn state(&self) -> &FaithfulState {
        &self.state
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }

    /// `σ^{(1-η)/p} x σ^{η/p}`; for `p = ∞` this is `x` itself.
    pub fn embed_asymmetric(&self, x: &ComplexMatrix, p: PExponent, eta: f64) -> ComplexMatrix {
        if p.is_infinite() {
            return x.clone();
        }
        let r = p.reciprocal();
        let left = self.state.real_power((1.0 - eta) * r);
        let right = self.state.real_power(eta * r);
        &left * x * &right
    }

    /// Symmetric embedding `σ^{1/2p} x σ^{1/2p}`.
    pub fn embed(&self, x: &ComplexMatrix, p: PExponent) -> ComplexMatrix {
        self.embed_asymmetric(x, p, 0.5)
    }

    /// `‖x‖_{p,φ}`; at `p = ∞` the operator norm of `x`.
    pub fn weighted_norm(&self, x: &ComplexMatrix, p: PExponent) -> Result<f64> {
        x.check_dim(self.dim())?;
        schatten_norm(&self.embed(x, p), p)
    }

    /// `‖σ^{(1-η)/p} x σ^{η/p}‖_p` for `η ∈ [0, 1]`.
    pub fn asymmetric_weighted_norm(&self, x: &ComplexMatrix, p: PExponent, eta: f64) -> Result<f64> {
        x.check_dim(self.dim())?;
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidExponent(format!("η must lie in [0, 1], got {eta}")));
        }
        schatten_norm(&self.embed_asymmetric(x, p, eta), p)
    }

    /// Analytically continued modular flow `σ_z(x) = σ^{iz} x σ^{-iz}`.
    pub fn modular_flow(&self, x: &ComplexMatrix, z: C64) -> Result<ComplexMatrix> {
        x.check_dim(self.dim())?;
        let iz = C64::i() * z;
        Ok(&self.state.power(iz) * x * self.state.power(-iz))
    }

    /// Extremal family for the interpolation bound at `x`.
    ///
    /// With `y = σ^{1/2p_θ} x σ^{1/2p_θ} = u|y|`, `N = ‖y‖_{p_θ}` and
    /// `α(z) = (1-z)/p_0 + z/p_1`, returns
    /// `W(z) = N^{p_θ α(z)} · u · (|y|/N)^{p_θ α(z)}`, which equals
    /// `u |y|^{p_θ α(z)}`, passes through `y` at `z = θ`, and has
    /// `‖W(k+it)‖_{p_k} = N^{p_θ/p_k}` for every real `t`.
    pub fn extremal_witness(
        &self,
        x: &ComplexMatrix,
        p0: PExponent,
        p1: PExponent,
        theta: f64,
    ) -> Result<AnalyticFamily> {
        x.check_dim(self.dim())?;
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::InvalidExponent(format!("θ must lie in (0, 1), got {theta}")));
        }
        if p0.value() >= p1.value() {
            return Err(Error::InvalidExponent(format!("need p0 < p1, got {p0} and {p1}")));
        }
        let pt = p_theta(p0, p1, theta);
        let y = self.embed(x, pt);
        let norm = schatten_norm(&y, pt)?;
        if norm == 0.0 {
            return Err(Error::ZeroInput);
        }
        let (u, abs) = polar(&y)?;
        let scaled = HermitianMatrix::symmetrize(&abs.as_matrix().scale_real(1.0 / norm));

        // p_θ α(z) = b + a z
        let pv = pt.value();
        let b = pv * p0.reciprocal();
        let a = pv * (p1.reciprocal() - p0.reciprocal());
        let ln_n = norm.ln();
        let exponent = Affine::new(c64(a, 0.0), c64(b, 0.0));
        let family = AnalyticFamily::scalar(
            ScalarFn::Exp {
                a: c64(a * ln_n, 0.0),
                b: c64(b * ln_n, 0.0),
            },
            AnalyticFamily::product(vec![
                AnalyticFamily::constant(u),
                AnalyticFamily::power(scaled, exponent)?,
            ]),
        );
        Ok(family)
    }
}

/// A linear map between matrix algebras, stored as its transfer matrix on
/// column-major vectorizations or as a Kraus family `x ↦ Σ K_j x K_j^*`.
#[derive(Clone, Debug)]
pub enum OperatorMap {
    Transfer {
        dim_in: usize,
        dim_out: usize,
        matrix: DMatrix<C64>,
    },
    Kraus(Vec<ComplexMatrix>),
}

impl OperatorMap {
    pub fn identity(dim: usize) -> Self {
        OperatorMap::Kraus(vec![ComplexMatrix::identity(dim)])
    }

    pub fn zero(dim_in: usize, dim_out: usize) -> Self {
        OperatorMap::Transfer {
            dim_in,
            dim_out,
            matrix: DMatrix::zeros(dim_out * dim_out, dim_in * dim_in),
        }
    }

    /// `x ↦ u x u^*`.
    pub fn conjugation(u: ComplexMatrix) -> Self {
        OperatorMap::Kraus(vec![u])
    }

    /// Builds the transfer matrix of a linear `f` by probing matrix units.
    pub fn from_linear_fn<F>(dim_in: usize, dim_out: usize, f: F) -> Result<Self>
    where
        F: Fn(&ComplexMatrix) -> Result<ComplexMatrix>,
    {
        let n_in = dim_in * dim_in;
        let mut matrix = DMatrix::zeros(dim_out * dim_out, n_in);
        for j in 0..dim_in {
            for i in 0..dim_in {
                let out = f(&ComplexMatrix::unit(dim_in, i, j))?;
                out.check_dim(dim_out)?;
                let col = i + j * dim_in;
                for (k, v) in out.as_dmatrix().iter().enumerate() {
                    matrix[(k, col)] = *v;
                }
            }
        }
        Ok(OperatorMap::Transfer {
            dim_in,
            dim_out,
            matrix,
        })
    }

    pub fn dim_in(&self) -> usize {
        match self {
            OperatorMap::Transfer { dim_in, .. } => *dim_in,
            OperatorMap::Kraus(ks) => ks[0].dim(),
        }
    }

    pub fn dim_out(&self) -> usize {
        match self {
            OperatorMap::Transfer { dim_out, .. } => *dim_out,
            OperatorMap::Kraus(ks) => ks[0].dim(),
        }
    }

    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        x.check_dim(self.dim_in())?;
        match self {
            OperatorMap::Transfer {
                dim_out, matrix, ..
            } => {
                let v = DVector::from_column_slice(x.as_dmatrix().as_slice());
                let out = matrix * v;
                ComplexMatrix::from_dmatrix(DMatrix::from_column_slice(*dim_out, *dim_out, out.as_slice()))
            }
            OperatorMap::Kraus(ks) => {
                let mut acc = ComplexMatrix::zeros(x.dim());
                for k in ks {
                    acc = acc + k * x * k.adjoint();
                }
                Ok(acc)
            }
        }
    }
}

/// Sampled lower estimate of `‖T‖_{(p,φ)→(q,ψ)}`: the largest ratio
/// `‖T(X)‖_{q,ψ} / ‖X‖_{p,φ}` over `trials` Ginibre inputs and a fixed
/// probe set (identity, `σ`, all matrix units).
pub fn operator_interp_norm(
    map: &OperatorMap,
    src: &WeightedContext,
    dst: &WeightedContext,
    p: PExponent,
    q: PExponent,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::config("trials", "must be at least 1"));
    }
    let d = src.dim();
    if map.dim_in() != d || map.dim_out() != dst.dim() {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: map.dim_in(),
        });
    }
    let mut probes = vec![ComplexMatrix::identity(d), src.state().matrix().clone()];
    for i in 0..d {
        for j in 0..d {
            probes.push(ComplexMatrix::unit(d, i, j));
        }
    }
    for t in 0..trials {
        probes.push(ginibre(d, &mut trial_rng(seed, "operator_interp_norm", t as u64)));
    }
    let mut best: f64 = 0.0;
    for x in &probes {
        let den = src.weighted_norm(x, p)?;
        if den == 0.0 {
            continue;
        }
        let num = dst.weighted_norm(&map.apply(x)?, q)?;
        best = best.max(num / den);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::ensemble::{haar_unitary, sample_faithful_state};

    fn p(v: f64) -> PExponent {
        PExponent::of(v)
    }

    #[test]
    fn scalar_weight_scales_schatten_norm() {
        let d = 3;
        let ctx = WeightedContext::new(FaithfulState::maximally_mixed(d));
        let x = ginibre(d, &mut trial_rng(1, "w", 0));
        for pv in [0.3, 1.0, 2.5] {
            let expected = (d as f64).powf(-1.0 / pv) * schatten_norm(&x, p(pv)).unwrap();
            let got = ctx.weighted_norm(&x, p(pv)).unwrap();
            assert!((got - expected).abs() <= 1e-12 * expected);
        }
    }

    #[test]
    fn identity_has_unit_norm() {
        let ctx = WeightedContext::new(sample_faithful_state(4, &mut trial_rng(2, "w", 0)));
        for pv in [0.25, 0.5, 1.0, 3.0, f64::INFINITY] {
            let n = ctx.weighted_norm(&ComplexMatrix::identity(4), PExponent::of(pv)).unwrap();
            assert!((n - 1.0).abs() < 1e-10, "p = {pv}: {n}");
        }
    }

    #[test]
    fn commuting_diagonal_example() {
        let ctx = WeightedContext::new(FaithfulState::from_diagonal(&[1.0 / 3.0, 2.0 / 3.0]).unwrap());
        let x = ComplexMatrix::from_diagonal(&[2.0, 1.0]);
        let n = ctx.weighted_norm(&x, p(2.0)).unwrap();
        assert!((n - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn infinity_is_operator_norm() {
        let ctx = WeightedContext::new(sample_faithful_state(3, &mut trial_rng(3, "w", 0)));
        let x = ginibre(3, &mut trial_rng(3, "w", 1));
        let n = ctx.weighted_norm(&x, PExponent::Infinity).unwrap();
        let op = crate::spectral::operator_norm(&x).unwrap();
        assert_eq!(n, op);
    }

    #[test]
    fn asymmetric_examples() {
        let ctx = WeightedContext::new(sample_faithful_state(3, &mut trial_rng(4, "w", 0)));
        let x = ginibre(3, &mut trial_rng(4, "w", 1));
        let a = ctx.asymmetric_weighted_norm(&x, p(1.5), 0.5).unwrap();
        let b = ctx.weighted_norm(&x, p(1.5)).unwrap();
        assert!((a - b).abs() <= 1e-12 * b);

        let flat = WeightedContext::new(FaithfulState::maximally_mixed(3));
        let base = (3f64).powf(-1.0 / 0.7) * schatten_norm(&x, p(0.7)).unwrap();
        for eta in [0.0, 0.3, 1.0] {
            let v = flat.asymmetric_weighted_norm(&x, p(0.7), eta).unwrap();
            assert!((v - base).abs() <= 1e-12 * base);
        }

        // x commuting with σ: x = f(σ)
        let sigma = ctx.state();
        let xc = sigma.eigen().map(|l| c64(l.sqrt() + 0.5, l));
        let v0 = ctx.asymmetric_weighted_norm(&xc, p(0.8), 0.0).unwrap();
        let v1 = ctx.asymmetric_weighted_norm(&xc, p(0.8), 1.0).unwrap();
        assert!((v0 - v1).abs() <= 1e-10 * v0);

        assert!(ctx.asymmetric_weighted_norm(&x, p(1.0), 1.5).is_err());
    }

    #[test]
    fn modular_flow_fixes_commutant_and_origin() {
        let ctx = WeightedContext::new(sample_faithful_state(3, &mut trial_rng(5, "w", 0)));
        let x = ginibre(3, &mut trial_rng(5, "w", 1));
        assert!(ctx.modular_flow(&x, C64::default()).unwrap().max_abs_diff(&x) < 1e-12);
        let xc = ctx.state().eigen().map(|l| c64(l * l, -l));
        let flowed = ctx.modular_flow(&xc, c64(0.3, -0.7)).unwrap();
        assert!(flowed.max_abs_diff(&xc) < 1e-10);
    }

    #[test]
    fn modular_flow_identity_with_powers() {
        let ctx = WeightedContext::new(sample_faithful_state(4, &mut trial_rng(6, "w", 0)));
        let x = ginibre(4, &mut trial_rng(6, "w", 1));
        let (pv, eta) = (3.0, 0.4);
        let lhs = &x * ctx.state().real_power(1.0 / pv);
        let flowed = ctx.modular_flow(&x, c64(0.0, (1.0 - eta) / pv)).unwrap();
        let rhs = ctx.state().real_power((1.0 - eta) / pv) * flowed * ctx.state().real_power(eta / pv);
        assert!(lhs.max_abs_diff(&rhs) <= 1e-9 * lhs.max_abs());
    }

    #[test]
    fn witness_scalar_case() {
        let ctx = WeightedContext::new(FaithfulState::maximally_mixed(1));
        let w = ctx
            .extremal_witness(&ComplexMatrix::identity(1), p(0.5), p(2.0), 0.4)
            .unwrap();
        for z in [c64(0.0, 0.0), c64(0.4, 0.0), c64(1.0, 3.0), c64(0.0, -2.0)] {
            assert!((w.evaluate(z).unwrap().get(0, 0) - c64(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn witness_rejects_zero_and_bad_order() {
        let ctx = WeightedContext::new(FaithfulState::maximally_mixed(2));
        assert_eq!(
            ctx.extremal_witness(&ComplexMatrix::zeros(2), p(1.0), p(2.0), 0.5).unwrap_err(),
            Error::ZeroInput
        );
        assert!(ctx
            .extremal_witness(&ComplexMatrix::identity(2), p(2.0), p(1.0), 0.5)
            .is_err());
    }

    #[test]
    fn interp_norm_examples() {
        let d = 3;
        let ctx = WeightedContext::new(sample_faithful_state(d, &mut trial_rng(7, "w", 0)));
        let id = OperatorMap::identity(d);
        let n = operator_interp_norm(&id, &ctx, &ctx, p(1.5), p(1.5), 10, 1).unwrap();
        assert!((n - 1.0).abs() < 1e-9);

        let zero = OperatorMap::zero(d, d);
        assert_eq!(operator_interp_norm(&zero, &ctx, &ctx, p(1.0), p(1.0), 5, 1).unwrap(), 0.0);

        let flat = WeightedContext::new(FaithfulState::maximally_mixed(d));
        let u = haar_unitary(d, &mut trial_rng(7, "w", 1));
        let conj = OperatorMap::conjugation(u);
        let n = operator_interp_norm(&conj, &flat, &flat, p(0.6), p(0.6), 10, 2).unwrap();
        assert!((n - 1.0).abs() < 1e-9);
    }

    #[test]
    fn transfer_matrix_matches_closure() {
        let u = haar_unitary(3, &mut trial_rng(8, "w", 0));
        let kraus = OperatorMap::conjugation(u.clone());
        let transfer = OperatorMap::from_linear_fn(3, 3, |x| Ok(&u * x * u.adjoint())).unwrap();
        let x = ginibre(3, &mut trial_rng(8, "w", 1));
        let a = kraus.apply(&x).unwrap();
        let b = transfer.apply(&x).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-13);
    }
}
