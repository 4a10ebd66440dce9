//! Default numerical tolerances shared by the kernels and the suites.

/// Smallest eigenvalue a density may have and still count as faithful.
pub const FAITHFUL: f64 = 1e-10;

/// Relative Hermiticity defect allowed before symmetrization (times `max|a_ij|`).
pub const HERMITIAN: f64 = 1e-12;

/// Allowed deviation of a state's trace from one.
pub const TRACE: f64 = 1e-12;

/// Unitarity defect of an eigenvector basis.
pub const UNITARY: f64 = 1e-10;

/// Reconstruction error, relative to the operator norm of the input.
pub const RECON: f64 = 1e-10;

/// Singular values below `SV_CUTOFF * s_1` are treated as exact zeros.
pub const SV_CUTOFF: f64 = 1e-14;

/// Slack tolerance for inequality checks, relative to the bound.
pub const INEQ: f64 = 1e-9;

/// Slack tolerance for divergence inequalities (absolute).
pub const DIVERGENCE: f64 = 1e-8;

/// Boundary norms below this abort a Hirschman check.
pub const LOG_FLOOR: f64 = 1e-13;
