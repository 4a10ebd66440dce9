//! Sandwiched Rényi divergences, conditional expectations onto
//! modular-invariant subalgebras, and the divergence inequalities built on
//! them.

mod checks;
mod divergence;
mod subalgebra;

pub use checks::{
    dpi_check, dpi_check_with_tolerance, dpi_range, equality_condition_check,
    equality_condition_check_with_tolerance, monotonicity_check, monotonicity_check_with_tolerance,
    ClaimRange, DivergenceReport, GridEntry,
};
pub use divergence::{sandwiched_divergence, sandwiched_trace, StatePair};
pub use subalgebra::{
    conditional_expectation, lift_state, partial_trace_a, partial_trace_b, restrict_state,
    ConditionalExpectation, SubalgebraSpec,
};
