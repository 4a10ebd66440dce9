//! Random matrix ensembles used by the verification suites.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::matrix::{c64, ComplexMatrix, HermitianMatrix, C64};
use crate::spectral::polar;
use crate::state::FaithfulState;

/// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    c64(s * re, s * im)
}

/// Ginibre matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let entries: Vec<C64> = (0..dim * dim).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_row_major(dim, &entries).expect("finite square sample")
}

/// Haar-distributed unitary, via the polar part of a Ginibre matrix.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let g = ginibre(dim, rng);
        if let Ok((u, _)) = polar(&g) {
            let defect = (&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(dim));
            if defect < 1e-12 {
                return u;
            }
        }
    }
}

/// Random Hermitian matrix `(G + G^*)/2`.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> HermitianMatrix {
    let g = ginibre(dim, rng);
    HermitianMatrix::new((&g + &g.adjoint()).scale_real(0.5)).expect("Hermitian by construction")
}

/// Random positive definite matrix `G G^* + reg I` (not normalized).
pub fn random_psd<R: Rng + ?Sized>(dim: usize, reg: f64, rng: &mut R) -> HermitianMatrix {
    let g = ginibre(dim, rng);
    let w = &g * &g.adjoint() + ComplexMatrix::identity(dim).scale_real(reg);
    HermitianMatrix::new(w).expect("Hermitian by construction")
}

/// Faithful state `W / tr W` with `W = G G^* + 1e-3·d·I`.
pub fn sample_faithful_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> FaithfulState {
    let w = random_psd(dim, 1e-3 * dim as f64, rng);
    FaithfulState::normalized(w.as_matrix()).expect("regularized Wishart sample is faithful")
}

/// Random probability vector with every entry at least `floor`.
pub fn random_distribution<R: Rng + ?Sized>(dim: usize, floor: f64, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..dim)
        .map(|_| {
            let g = complex_gaussian(rng);
            g.norm_sqr() + floor
        })
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

/// Diagonal faithful state with random spectrum.
pub fn random_diagonal_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> FaithfulState {
    FaithfulState::from_diagonal(&random_distribution(dim, 1e-3 * dim as f64, rng))
        .expect("diagonal sample is faithful")
}
