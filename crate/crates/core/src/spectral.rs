//! Hermitian eigendecomposition, singular values, polar decomposition and
//! complex powers of positive semidefinite matrices.
//!
//! The dense factorizations are delegated to nalgebra; everything in this
//! module post-processes its output into the conventions the rest of the
//! crate relies on (descending order, explicit support thresholds, principal
//! branch powers).

use nalgebra::linalg::SymmetricEigen;
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix, HermitianMatrix, C64};
use crate::tol;

const EIGEN_EPS: f64 = 1e-15;
const MAX_SWEEPS: usize = 10_000;
const JACOBI_SWEEPS: usize = 80;
const NEGLIGIBLE: f64 = 1e-290;

/// Eigenvalues (descending) and an eigenvector basis of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    unitary: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Columns are eigenvectors, in the order of [`Self::eigenvalues`].
    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// `U diag(f(λ_i)) U^*`.
    pub fn map<F>(&self, f: F) -> ComplexMatrix
    where
        F: Fn(f64) -> C64,
    {
        let u = self.unitary.as_dmatrix();
        let mut scaled = u.clone();
        for (j, &lam) in self.eigenvalues.iter().enumerate() {
            let fj = f(lam);
            for i in 0..u.nrows() {
                scaled[(i, j)] *= fj;
            }
        }
        ComplexMatrix::wrap(scaled * u.adjoint())
    }

    /// `U diag(λ) U^*`.
    pub fn reassemble(&self) -> ComplexMatrix {
        self.map(|l| c64(l, 0.0))
    }

    /// Projection onto the span of eigenvectors with eigenvalue above `cutoff`.
    pub fn support_projection(&self, cutoff: f64) -> ComplexMatrix {
        self.map(|l| if l > cutoff { c64(1.0, 0.0) } else { C64::default() })
    }

    /// Threshold below which an eigenvalue of a PSD matrix counts as zero.
    pub fn support_cutoff(&self) -> f64 {
        tol::SV_CUTOFF * self.max_eigenvalue().abs().max(f64::MIN_POSITIVE)
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
pub fn hermitian_eigen(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let m = a.as_matrix().as_dmatrix().clone();
    let d = m.nrows();
    let eig = SymmetricEigen::try_new(m, EIGEN_EPS, MAX_SWEEPS).ok_or(Error::ConvergenceFailure)?;
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    if eigenvalues.iter().any(|l| !l.is_finite()) {
        return Err(Error::ConvergenceFailure);
    }
    let vecs = DMatrix::from_fn(d, d, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        unitary: ComplexMatrix::wrap(vecs),
    })
}

fn is_nonnegative_integer(z: C64) -> bool {
    z.im == 0.0 && z.re >= 0.0 && z.re.fract() == 0.0
}

/// Principal-branch power of a nonnegative scalar, with `0^z = 0` for
/// `Re z > 0` and `0^0 = 1`.
fn scalar_power(lam: f64, z: C64) -> C64 {
    if z == C64::default() {
        return c64(1.0, 0.0);
    }
    if lam <= 0.0 {
        return C64::default();
    }
    if z.im == 0.0 {
        return c64(lam.powf(z.re), 0.0);
    }
    (z * lam.ln()).exp()
}

fn check_psd(eig: &SpectralDecomposition) -> Result<()> {
    let floor = -tol::HERMITIAN * eig.max_eigenvalue().abs().max(1.0);
    let min = eig.min_eigenvalue();
    if min < floor {
        return Err(Error::NotPositive { min_eig: min });
    }
    Ok(())
}

/// `a^z` computed from an existing decomposition of a PSD matrix.
///
/// Negative real parts, and purely imaginary exponents other than zero,
/// require every eigenvalue to be at least [`tol::FAITHFUL`].
pub fn power_from_eigen(eig: &SpectralDecomposition, z: C64) -> Result<ComplexMatrix> {
    check_psd(eig)?;
    let min = eig.min_eigenvalue();
    let needs_faithful = z.re < 0.0 || (z.re == 0.0 && z.im != 0.0);
    if needs_faithful && !is_nonnegative_integer(z) && min < tol::FAITHFUL {
        return Err(Error::SingularPower {
            exponent: format!("{}{:+}i", z.re, z.im),
            min_eig: min,
        });
    }
    Ok(eig.map(|l| scalar_power(l.max(0.0), z)))
}

/// `a^z = U diag(λ^z) U^*` for a positive semidefinite `a`.
pub fn matrix_power(a: &HermitianMatrix, z: C64) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(a)?;
    power_from_eigen(&eig, z)
}

/// Power on the support of a PSD matrix: eigenvalues below the support
/// cutoff map to zero for every exponent, so `a^{it}` is the partial
/// isometry on the support rather than an error.
pub fn support_power_from_eigen(eig: &SpectralDecomposition, z: C64) -> Result<ComplexMatrix> {
    check_psd(eig)?;
    let cut = eig.support_cutoff();
    Ok(eig.map(|l| {
        if l > cut {
            scalar_power(l, z)
        } else {
            C64::default()
        }
    }))
}

pub fn support_power(a: &HermitianMatrix, z: C64) -> Result<ComplexMatrix> {
    support_power_from_eigen(&hermitian_eigen(a)?, z)
}

/// Singular value decomposition `x = W diag(s) V^*` with `s` descending; columns
/// of `W` belonging to zero singular values are left zero.
pub(crate) struct Svd {
    pub w: DMatrix<C64>,
    pub s: Vec<f64>,
    pub v_adj: DMatrix<C64>,
}

pub(crate) fn svd(x: &ComplexMatrix) -> Result<Svd> {
    let d = x.dim();
    let (g, v) = jacobi_orthogonalize(x.as_dmatrix().clone(), true)?;
    let v = v.expect("requested");
    let norms: Vec<f64> = (0..d).map(|j| g.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let s: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let w = DMatrix::from_fn(d, d, |i, j| {
        let k = order[j];
        if norms[k] > 0.0 {
            g[(i, k)] / norms[k]
        } else {
            C64::default()
        }
    });
    let v_adj = DMatrix::from_fn(d, d, |i, j| v[(j, order[i])].conj());
    Ok(Svd { w, s, v_adj })
}

/// One-sided (Hestenes) Jacobi: right-multiplies `g` by plane rotations
/// until its columns are mutually orthogonal, optionally accumulating the
/// rotations.
fn jacobi_orthogonalize(mut g: DMatrix<C64>, with_v: bool) -> Result<(DMatrix<C64>, Option<DMatrix<C64>>)> {
    let n = g.ncols();
    let m = g.nrows();
    let mut v = with_v.then(|| DMatrix::<C64>::identity(n, n));
    let threshold = f64::EPSILON * m.max(1) as f64;
    let big = g.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !big.is_finite() {
        return Err(Error::NonFinite);
    }
    if big == 0.0 {
        return Ok((g, v));
    }
    g /= C64::new(big, 0.0);
    for _ in 0..JACOBI_SWEEPS {
        let mut rotated = false;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                // inner products of the columns rescaled to unit max entry, so
                // widely graded columns neither underflow nor overflow
                let mi = (0..m).map(|k| g[(k, i)].norm()).fold(0.0, f64::max);
                let mj = (0..m).map(|k| g[(k, j)].norm()).fold(0.0, f64::max);
                // after normalization anything this small is zero for our purposes
                // and only invites subnormal arithmetic
                for (col, mx) in [(i, mi), (j, mj)] {
                    if mx > 0.0 && mx < NEGLIGIBLE {
                        g.column_mut(col).fill(C64::default());
                    }
                }
                if mi < NEGLIGIBLE || mj < NEGLIGIBLE {
                    continue;
                }
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, C64::default());
                for k in 0..m {
                    let a = g[(k, i)] / mi;
                    let b = g[(k, j)] / mj;
                    alpha += a.norm_sqr();
                    beta += b.norm_sqr();
                    gamma += a.conj() * b;
                }
                let mag = gamma.norm();
                let scale = alpha.sqrt() * beta.sqrt();
                if mag <= threshold * scale {
                    continue;
                }
                worst = worst.max(mag / scale);
                rotated = true;
                let phase = (gamma / mag).conj();
                let zeta = ((mj / mi) * beta - (mi / mj) * alpha) / (2.0 * mag);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + zeta.hypot(1.0))
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..m {
                    let xi = g[(k, i)];
                    let xj = g[(k, j)] * phase;
                    g[(k, i)] = xi * c - xj * s;
                    g[(k, j)] = xi * s + xj * c;
                }
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let xi = v[(k, i)];
                        let xj = v[(k, j)] * phase;
                        v[(k, i)] = xi * c - xj * s;
                        v[(k, j)] = xi * s + xj * c;
                    }
                }
            }
        }
        // rounding can keep a pair just above the threshold forever
        if !rotated || worst < 1e-13 {
            if g.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite);
            }
            g *= C64::new(big, 0.0);
            return Ok((g, v));
        }
    }
    Err(Error::ConvergenceFailure)
}

/// Singular values of `x`, i.e. eigenvalues of `|x|`, descending.
pub fn singular_values(x: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(svd(x)?.s)
}

/// Operator norm `‖x‖_∞`.
pub fn operator_norm(x: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(x)?[0])
}

/// Polar decomposition `x = u |x|` with `u` a partial isometry whose initial
/// space is the support of `|x|`.
pub fn polar(x: &ComplexMatrix) -> Result<(ComplexMatrix, HermitianMatrix)> {
    let Svd { w, s, v_adj } = svd(x)?;
    let d = s.len();
    let cut = tol::SV_CUTOFF * s[0];
    let rank = s.iter().take_while(|&&v| v > cut && v > 0.0).count();

    let mut u = DMatrix::<C64>::zeros(d, d);
    let mut abs = DMatrix::<C64>::zeros(d, d);
    for k in 0..d {
        let wk = w.column(k);
        let vk_adj = v_adj.row(k);
        if k < rank {
            u += &wk * &vk_adj;
        }
        let vk = vk_adj.adjoint();
        abs += (&vk * &vk_adj) * c64(s[k], 0.0);
    }
    let absx = HermitianMatrix::symmetrize(&ComplexMatrix::wrap(abs));
    Ok((ComplexMatrix::wrap(u), absx))
}

/// `|x| = (x^* x)^{1/2}`.
pub fn modulus(x: &ComplexMatrix) -> Result<HermitianMatrix> {
    Ok(polar(x)?.1)
}

/// Singular values of `d · y` (rows of `y` scaled by `d`) by one-sided
/// Jacobi on `(d y)^*`. Accurate to high relative precision in every
/// singular value when `y` is well conditioned, however graded `d` is.
pub(crate) fn graded_singular_values(d: &[f64], y: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = y.dim();
    let ya = y.as_dmatrix();
    let g = DMatrix::from_fn(n, n, |i, j| ya[(j, i)].conj() * d[j]);
    let (g, _) = jacobi_orthogonalize(g, false)?;
    let mut sv: Vec<f64> = (0..n).map(|j| g.column(j).norm()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}
