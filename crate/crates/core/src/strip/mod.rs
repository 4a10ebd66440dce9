//! Analytic families on the strip and the inequality checks evaluated on them.

mod checks;
mod family;
mod kernel;

pub use checks::{
    default_t_grid, hirschman_check, product_power_check, three_lines_check, BoundaryNormProfile,
    BoundarySample, CertificateReport, Weighting,
};
pub use family::{Affine, AnalyticFamily, PowerNode, ScalarFn};
pub use kernel::{hirschman_kernel, kernel_mass, kernel_tail_mass, pairwise_sum, QuadratureSpec};
