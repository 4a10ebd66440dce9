//! Faithful density matrices.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::spectral::{hermitian_eigen, power_from_eigen, SpectralDecomposition};
use crate::tol;

/// A strictly positive, unit-trace density matrix with its spectral
/// decomposition cached.
#[derive(Clone, Debug)]
pub struct FaithfulState {
    density: HermitianMatrix,
    eigen: SpectralDecomposition,
}

impl FaithfulState {
    pub fn new(density: HermitianMatrix) -> Result<Self> {
        let trace = density.trace();
        if (trace - 1.0).abs() > tol::TRACE {
            return Err(Error::NotNormalized { trace });
        }
        let eigen = hermitian_eigen(&density)?;
        let min_eig = eigen.min_eigenvalue();
        if min_eig < tol::FAITHFUL {
            return Err(Error::NotFaithful { min_eig });
        }
        Ok(FaithfulState { density, eigen })
    }

    /// Divides a positive matrix by its trace before validating.
    pub fn normalized(a: &ComplexMatrix) -> Result<Self> {
        let tr = a.trace().re;
        if !(tr > 0.0) {
            return Err(Error::NotNormalized { trace: tr });
        }
        Self::new(HermitianMatrix::new(a.scale_real(1.0 / tr))?)
    }

    pub fn from_diagonal(p: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_diagonal(p))
    }

    /// The maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_diagonal(&vec![1.0 / dim as f64; dim]).expect("I/d is faithful")
    }

    pub fn density(&self) -> &HermitianMatrix {
        &self.density
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.density.as_matrix()
    }

    pub fn eigen(&self) -> &SpectralDecomposition {
        &self.eigen
    }

    pub fn dim(&self) -> usize {
        self.density.dim()
    }

    /// `σ^z`; never fails since σ is faithful.
    pub fn power(&self, z: C64) -> ComplexMatrix {
        power_from_eigen(&self.eigen, z).expect("faithful state admits every complex power")
    }

    pub fn real_power(&self, a: f64) -> ComplexMatrix {
        self.power(C64::new(a, 0.0))
    }

    /// `σ ⊗ other`.
    pub fn tensor(&self, other: &FaithfulState) -> Result<FaithfulState> {
        FaithfulState::new(HermitianMatrix::symmetrize(&self.matrix().kron(other.matrix())))
    }

    /// `u σ u^*` for a unitary `u`.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<FaithfulState> {
        let m = u * self.matrix() * u.adjoint();
        FaithfulState::new(HermitianMatrix::symmetrize(&m))
    }
}
