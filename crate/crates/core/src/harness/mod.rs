//! Random ensembles, deterministic seeding, suite orchestration, file I/O
//! and verification reports.

pub mod config;
pub mod ensemble;
pub mod io;
pub mod report;
pub mod rng;
pub mod suites;

pub use config::{QuadratureConfig, Suite, SuiteConfig};
pub use ensemble::sample_faithful_state;
pub use io::{load_matrix, load_report, save_matrix, save_report};
pub use report::{TrialRecord, VerificationReport};
pub use suites::run_suite;
