//! Modular-invariant subalgebras and their state-preserving conditional
//! expectations: block pinchings in an eigenbasis of σ, and tensor factors
//! `M_A ⊗ 1` of a product reference state.

use super::divergence::StatePair;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::state::FaithfulState;
use crate::weighted::OperatorMap;

/// Which subalgebra `N ⊂ M_d` to restrict to.
#[derive(Clone, Debug)]
pub enum SubalgebraSpec {
    /// Block-diagonal matrices in the orthonormal basis given by the
    /// columns of `basis`, for the partition `blocks` of `0..d`.
    BlockPartition {
        blocks: Vec<Vec<usize>>,
        basis: ComplexMatrix,
    },
    /// `M_A ⊗ 1_B` inside `M_A ⊗ M_B`.
    TensorFactor { dim_a: usize, dim_b: usize },
}

impl SubalgebraSpec {
    /// The scalars `ℂ1`, as the factor `M_1 ⊗ 1_d`.
    pub fn scalars(dim: usize) -> Self {
        SubalgebraSpec::TensorFactor { dim_a: 1, dim_b: dim }
    }

    /// Block partition in the eigenbasis of `sigma`.
    pub fn blocks_in_eigenbasis(sigma: &FaithfulState, blocks: Vec<Vec<usize>>) -> Self {
        SubalgebraSpec::BlockPartition {
            blocks,
            basis: sigma.eigen().unitary().clone(),
        }
    }

    /// One singleton block per basis vector: full dephasing.
    pub fn dephasing(sigma: &FaithfulState) -> Self {
        let d = sigma.dim();
        Self::blocks_in_eigenbasis(sigma, (0..d).map(|i| vec![i]).collect())
    }

    pub fn dim(&self) -> usize {
        match self {
            SubalgebraSpec::BlockPartition { basis, .. } => basis.dim(),
            SubalgebraSpec::TensorFactor { dim_a, dim_b } => dim_a * dim_b,
        }
    }
}

/// Partial trace over the second factor of `M_A ⊗ M_B`.
pub fn partial_trace_b(x: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    let m = x.as_dmatrix();
    let mut entries = vec![C64::default(); dim_a * dim_a];
    for i in 0..dim_a {
        for j in 0..dim_a {
            let mut acc = C64::default();
            for k in 0..dim_b {
                acc += m[(i * dim_b + k, j * dim_b + k)];
            }
            entries[i * dim_a + j] = acc;
        }
    }
    ComplexMatrix::from_row_major(dim_a, &entries).expect("finite partial trace")
}

/// Partial trace over the first factor of `M_A ⊗ M_B`.
pub fn partial_trace_a(x: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    let m = x.as_dmatrix();
    let mut entries = vec![C64::default(); dim_b * dim_b];
    for i in 0..dim_b {
        for j in 0..dim_b {
            let mut acc = C64::default();
            for k in 0..dim_a {
                acc += m[(k * dim_b + i, k * dim_b + j)];
            }
            entries[i * dim_b + j] = acc;
        }
    }
    ComplexMatrix::from_row_major(dim_b, &entries).expect("finite partial trace")
}

#[derive(Clone, Debug)]
enum Kind {
    Pinching {
        /// `block_of[i]` is the block containing basis index `i`.
        block_of: Vec<usize>,
        basis: ComplexMatrix,
    },
    Slice {
        dim_a: usize,
        dim_b: usize,
        sigma_a: FaithfulState,
        sigma_b: FaithfulState,
    },
}

/// The φ-preserving conditional expectation onto a modular-invariant
/// subalgebra.
#[derive(Clone, Debug)]
pub struct ConditionalExpectation {
    spec: SubalgebraSpec,
    sigma: FaithfulState,
    kind: Kind,
}

const OFF_BLOCK_TOL: f64 = 1e-12;
const PRODUCT_TOL: f64 = 1e-10;

/// Builds `E: M_d → N` with `tr(σ E(x)) = tr(σ x)`, after checking that σ
/// leaves `N` invariant under its modular flow.
pub fn conditional_expectation(spec: SubalgebraSpec, sigma: &FaithfulState) -> Result<ConditionalExpectation> {
    let d = sigma.dim();
    if spec.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: spec.dim(),
        });
    }
    let kind = match &spec {
        SubalgebraSpec::BlockPartition { blocks, basis } => {
            let mut block_of = vec![usize::MAX; d];
            for (k, block) in blocks.iter().enumerate() {
                if block.is_empty() {
                    return Err(Error::config("blocks", format!("block {k} is empty")));
                }
                for &i in block {
                    if i >= d {
                        return Err(Error::config("blocks", format!("index {i} out of range 0..{d}")));
                    }
                    if block_of[i] != usize::MAX {
                        return Err(Error::config("blocks", format!("index {i} appears twice")));
                    }
                    block_of[i] = k;
                }
            }
            if let Some(i) = block_of.iter().position(|&b| b == usize::MAX) {
                return Err(Error::config("blocks", format!("index {i} is not covered")));
            }
            let unitarity = (basis.adjoint() * basis).max_abs_diff(&ComplexMatrix::identity(d));
            if unitarity > 1e-10 {
                return Err(Error::IncompatibleState(format!(
                    "declared basis is not orthonormal (defect {unitarity:.2e})"
                )));
            }
            let s = basis.adjoint() * sigma.matrix() * basis;
            let mut off: f64 = 0.0;
            for i in 0..d {
                for j in 0..d {
                    if block_of[i] != block_of[j] {
                        off = off.max(s.get(i, j).norm());
                    }
                }
            }
            if off > OFF_BLOCK_TOL {
                return Err(Error::IncompatibleState(format!(
                    "σ has off-block entries of size {off:.2e} in the declared basis"
                )));
            }
            Kind::Pinching {
                block_of,
                basis: basis.clone(),
            }
        }
        &SubalgebraSpec::TensorFactor { dim_a, dim_b } => {
            let sa = partial_trace_b(sigma.matrix(), dim_a, dim_b);
            let sb = partial_trace_a(sigma.matrix(), dim_a, dim_b);
            let defect = sa.kron(&sb).max_abs_diff(sigma.matrix());
            if defect > PRODUCT_TOL {
                return Err(Error::IncompatibleState(format!(
                    "σ is not a product state (defect {defect:.2e})"
                )));
            }
            Kind::Slice {
                dim_a,
                dim_b,
                sigma_a: FaithfulState::new(HermitianMatrix::symmetrize(&sa))?,
                sigma_b: FaithfulState::new(HermitianMatrix::symmetrize(&sb))?,
            }
        }
    };
    Ok(ConditionalExpectation {
        spec,
        sigma: sigma.clone(),
        kind,
    })
}

fn pinch_in_basis(x: &ComplexMatrix, block_of: &[usize]) -> ComplexMatrix {
    let d = x.dim();
    let mut e = x.to_row_major();
    for i in 0..d {
        for j in 0..d {
            if block_of[i] != block_of[j] {
                e[i * d + j] = C64::default();
            }
        }
    }
    ComplexMatrix::from_row_major(d, &e).expect("finite entries")
}

impl ConditionalExpectation {
    pub fn spec(&self) -> &SubalgebraSpec {
        &self.spec
    }

    pub fn sigma(&self) -> &FaithfulState {
        &self.sigma
    }

    /// Dimension of the matrix representation used for states on `N`.
    pub fn subalgebra_dim(&self) -> usize {
        match &self.kind {
            Kind::Pinching { basis, .. } => basis.dim(),
            Kind::Slice { dim_a, .. } => *dim_a,
        }
    }

    /// `E(x)` as an element of `M_d`.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        x.check_dim(self.sigma.dim())?;
        Ok(match &self.kind {
            Kind::Pinching { block_of, basis } => {
                let inner = pinch_in_basis(&(basis.adjoint() * x * basis), block_of);
                basis * inner * basis.adjoint()
            }
            Kind::Slice {
                dim_a,
                dim_b,
                sigma_b,
                ..
            } => {
                let weighted = ComplexMatrix::identity(*dim_a).kron(sigma_b.matrix()) * x;
                partial_trace_b(&weighted, *dim_a, *dim_b).kron(&ComplexMatrix::identity(*dim_b))
            }
        })
    }

    pub fn as_operator_map(&self) -> Result<OperatorMap> {
        let d = self.sigma.dim();
        OperatorMap::from_linear_fn(d, d, |x| self.apply(x))
    }

    /// Density of `ω|_N` in the subalgebra's own representation, for a
    /// density `ω` on `M_d` (trace-preserving compression).
    pub fn compress(&self, omega: &ComplexMatrix) -> Result<ComplexMatrix> {
        omega.check_dim(self.sigma.dim())?;
        Ok(match &self.kind {
            Kind::Pinching { block_of, basis } => pinch_in_basis(&(basis.adjoint() * omega * basis), block_of),
            Kind::Slice { dim_a, dim_b, .. } => partial_trace_b(omega, *dim_a, *dim_b),
        })
    }

    /// Density on `M_d` of `ψ_N ∘ E` for a density `ρ_N` on `N`.
    pub fn lift(&self, rho_n: &ComplexMatrix) -> Result<ComplexMatrix> {
        rho_n.check_dim(self.subalgebra_dim())?;
        Ok(match &self.kind {
            Kind::Pinching { basis, .. } => basis * rho_n * basis.adjoint(),
            Kind::Slice { sigma_b, .. } => rho_n.kron(sigma_b.matrix()),
        })
    }

    /// The reference state restricted to `N`.
    pub fn restricted_sigma(&self) -> Result<FaithfulState> {
        match &self.kind {
            Kind::Slice { sigma_a, .. } => Ok(sigma_a.clone()),
            Kind::Pinching { .. } => {
                FaithfulState::new(HermitianMatrix::symmetrize(&self.compress(self.sigma.matrix())?))
            }
        }
    }

    /// `S(x) = σ_N^{-1/2} T(σ^{1/2} x σ^{1/2}) σ_N^{-1/2}` with `T` the
    /// density compression; a unital positive map from `M_d` to `N`.
    pub fn dpi_map(&self) -> Result<OperatorMap> {
        let d = self.sigma.dim();
        let sigma_n = self.restricted_sigma()?;
        let half = self.sigma.real_power(0.5);
        let inv_half_n = sigma_n.real_power(-0.5);
        OperatorMap::from_linear_fn(d, self.subalgebra_dim(), |x| {
            let t = self.compress(&(&half * x * &half))?;
            Ok(&inv_half_n * t * &inv_half_n)
        })
    }
}

/// `(ρ_N, σ_N)`: the pair restricted to the subalgebra. Restrictions that
/// are not faithful are rejected.
pub fn restrict_state(pair: &StatePair, e: &ConditionalExpectation) -> Result<StatePair> {
    let defect = pair.sigma.matrix().max_abs_diff(e.sigma().matrix());
    if defect > 1e-12 {
        return Err(Error::IncompatibleState(format!(
            "reference state differs from the one the expectation was built for ({defect:.2e})"
        )));
    }
    let rho_n = HermitianMatrix::symmetrize(&e.compress(pair.rho.matrix())?);
    let rho_n = FaithfulState::new(rho_n).map_err(|err| match err {
        Error::NotFaithful { min_eig } => Error::FaithfulnessLost { min_eig },
        other => other,
    })?;
    StatePair::new(rho_n, e.restricted_sigma()?)
}

/// `(ψ_N ∘ E, φ)` as densities on `M_d`.
pub fn lift_state(pair_n: &StatePair, e: &ConditionalExpectation) -> Result<StatePair> {
    let rho = FaithfulState::new(HermitianMatrix::symmetrize(&e.lift(pair_n.rho.matrix())?))?;
    StatePair::new(rho, e.sigma().clone())
}
