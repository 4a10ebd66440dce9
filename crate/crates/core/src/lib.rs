//! Numerical toolkit for noncommutative L_p interpolation: Schatten
//! (quasi-)norms, state-weighted L_p spaces, analytic families on the unit
//! strip with three-lines and Hirschman certificates, and sandwiched Rényi
//! divergences under conditional expectations.

pub mod error;
pub mod harness;
pub mod matrix;
pub mod renyi;
pub mod schatten;
pub mod spectral;
pub mod state;
pub mod strip;
pub mod tol;
pub mod weighted;

pub use error::{Error, Result};
pub use harness::{run_suite, Suite, SuiteConfig, VerificationReport};
pub use matrix::{c64, ComplexMatrix, HermitianMatrix, C64};
pub use renyi::{
    conditional_expectation, dpi_check, equality_condition_check, lift_state, monotonicity_check, restrict_state,
    sandwiched_divergence, ConditionalExpectation, DivergenceReport, StatePair, SubalgebraSpec,
};
pub use schatten::{factorize, p_theta, schatten_norm, PExponent};
pub use spectral::{
    hermitian_eigen, matrix_power, modulus, operator_norm, polar, singular_values, support_power,
    SpectralDecomposition,
};
pub use state::FaithfulState;
pub use strip::{
    hirschman_check, hirschman_kernel, product_power_check, three_lines_check, Affine, AnalyticFamily,
    CertificateReport, QuadratureSpec, ScalarFn, Weighting,
};
pub use weighted::{operator_interp_norm, OperatorMap, WeightedContext};
