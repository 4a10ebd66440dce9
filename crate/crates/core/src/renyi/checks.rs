//! Data processing, monotonicity in `p`, and the equality condition for
//! lifted states.

use serde::{Deserialize, Serialize};

use super::divergence::{check_divergence_exponent, sandwiched_divergence, StatePair};
use super::subalgebra::{lift_state, restrict_state, ConditionalExpectation};
use crate::error::{Error, Result};
use crate::tol;

/// Which claim a grid point is evidence for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimRange {
    /// Data processing for `p ∈ [1/2, 1)`.
    DpiBelowOne,
    /// Data processing for `p ∈ (1, ∞)`.
    DpiAboveOne,
    Monotonicity,
    Equality,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridEntry {
    pub p: f64,
    /// Divergence on the full algebra (or at the larger exponent).
    pub big: f64,
    /// Divergence after restriction (or at the smaller exponent).
    pub small: f64,
    /// `big - small` for inequalities; `|big - small|` for equalities.
    pub slack: f64,
    pub range: ClaimRange,
}

/// Per-grid-point outcome of a divergence check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceReport {
    pub entries: Vec<GridEntry>,
    pub max_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl DivergenceReport {
    fn inequality(entries: Vec<GridEntry>, tolerance: f64) -> Self {
        let max_violation = entries.iter().map(|e| (-e.slack).max(0.0)).fold(0.0, f64::max);
        DivergenceReport {
            entries,
            max_violation,
            tolerance,
            pass: max_violation <= tolerance,
        }
    }

    fn equality(entries: Vec<GridEntry>, tolerance: f64) -> Self {
        let max_violation = entries.iter().map(|e| e.slack).fold(0.0, f64::max);
        DivergenceReport {
            entries,
            max_violation,
            tolerance,
            pass: max_violation <= tolerance,
        }
    }
}

/// Range where data processing is asserted: `[1/2, 1) ∪ (1, ∞)`.
pub fn dpi_range(p: f64) -> Result<ClaimRange> {
    check_divergence_exponent(p)?;
    if p < 0.5 {
        return Err(Error::InvalidExponent(format!(
            "data processing is only asserted for p in [1/2, 1) ∪ (1, ∞), got {p}"
        )));
    }
    Ok(if p < 1.0 {
        ClaimRange::DpiBelowOne
    } else {
        ClaimRange::DpiAboveOne
    })
}

/// `D_p(ψ_N‖φ_N) <= D_p(ψ‖φ)` at every grid point.
pub fn dpi_check(pair: &StatePair, e: &ConditionalExpectation, p_grid: &[f64]) -> Result<DivergenceReport> {
    dpi_check_with_tolerance(pair, e, p_grid, tol::DIVERGENCE)
}

pub fn dpi_check_with_tolerance(
    pair: &StatePair,
    e: &ConditionalExpectation,
    p_grid: &[f64],
    tolerance: f64,
) -> Result<DivergenceReport> {
    let ranges = p_grid.iter().map(|&p| dpi_range(p)).collect::<Result<Vec<_>>>()?;
    let restricted = restrict_state(pair, e)?;
    let entries = p_grid
        .iter()
        .zip(ranges)
        .map(|(&p, range)| {
            let big = sandwiched_divergence(pair, p)?;
            let small = sandwiched_divergence(&restricted, p)?;
            Ok(GridEntry {
                p,
                big,
                small,
                slack: big - small,
                range,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DivergenceReport::inequality(entries, tolerance))
}

/// `D_p(ψ_N ∘ E ‖ φ) = D_p(ψ_N ‖ φ_N)` at every grid point, for any
/// `p ∈ (0,1) ∪ (1,∞)`.
pub fn equality_condition_check(
    pair_n: &StatePair,
    e: &ConditionalExpectation,
    p_grid: &[f64],
) -> Result<DivergenceReport> {
    equality_condition_check_with_tolerance(pair_n, e, p_grid, tol::INEQ)
}

pub fn equality_condition_check_with_tolerance(
    pair_n: &StatePair,
    e: &ConditionalExpectation,
    p_grid: &[f64],
    tolerance: f64,
) -> Result<DivergenceReport> {
    for &p in p_grid {
        check_divergence_exponent(p)?;
    }
    let sigma_n = e.restricted_sigma()?;
    if pair_n.sigma.matrix().max_abs_diff(sigma_n.matrix()) > 1e-10 {
        return Err(Error::IncompatibleState(
            "reference state on the subalgebra is not the restriction of σ".into(),
        ));
    }
    let lifted = lift_state(pair_n, e)?;
    let entries = p_grid
        .iter()
        .map(|&p| {
            let big = sandwiched_divergence(&lifted, p)?;
            let small = sandwiched_divergence(pair_n, p)?;
            Ok(GridEntry {
                p,
                big,
                small,
                slack: (big - small).abs(),
                range: ClaimRange::Equality,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DivergenceReport::equality(entries, tolerance))
}

/// `D_{p_i} <= D_{p_{i+1}}` along an ascending grid that skips `p = 1`.
pub fn monotonicity_check(pair: &StatePair, p_grid: &[f64]) -> Result<DivergenceReport> {
    monotonicity_check_with_tolerance(pair, p_grid, tol::DIVERGENCE)
}

pub fn monotonicity_check_with_tolerance(
    pair: &StatePair,
    p_grid: &[f64],
    tolerance: f64,
) -> Result<DivergenceReport> {
    for &p in p_grid {
        check_divergence_exponent(p)?;
    }
    if p_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidExponent("p grid must be strictly ascending".into()));
    }
    let values = p_grid
        .iter()
        .map(|&p| sandwiched_divergence(pair, p))
        .collect::<Result<Vec<_>>>()?;
    let entries = p_grid
        .windows(2)
        .zip(values.windows(2))
        .map(|(p, v)| GridEntry {
            p: p[1],
            big: v[1],
            small: v[0],
            slack: v[1] - v[0],
            range: ClaimRange::Monotonicity,
        })
        .collect();
    Ok(DivergenceReport::inequality(entries, tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::ensemble::{random_distribution, sample_faithful_state};
    use crate::harness::rng::trial_rng;
    use crate::renyi::subalgebra::{conditional_expectation, SubalgebraSpec};
    use crate::state::FaithfulState;

    const DPI_GRID: [f64; 5] = [0.5, 0.75, 1.5, 2.0, 5.0];

    #[test]
    fn identity_expectation_has_zero_slack() {
        let mut rng = trial_rng(1, "rchk", 0);
        let s = sample_faithful_state(3, &mut rng);
        let pair = StatePair::new(sample_faithful_state(3, &mut rng), s.clone()).unwrap();
        let e = conditional_expectation(SubalgebraSpec::blocks_in_eigenbasis(&s, vec![vec![0, 1, 2]]), &s).unwrap();
        let rep = dpi_check(&pair, &e, &DPI_GRID).unwrap();
        assert!(rep.pass);
        assert!(rep.entries.iter().all(|g| g.slack.abs() < 1e-10));
    }

    #[test]
    fn dephasing_commuting_pair_loses_nothing() {
        let mut rng = trial_rng(2, "rchk", 0);
        let s = FaithfulState::from_diagonal(&random_distribution(4, 1e-2, &mut rng)).unwrap();
        let r = FaithfulState::from_diagonal(&random_distribution(4, 1e-2, &mut rng)).unwrap();
        let pair = StatePair::new(r, s.clone()).unwrap();
        let spec = SubalgebraSpec::BlockPartition {
            blocks: (0..4).map(|i| vec![i]).collect(),
            basis: crate::matrix::ComplexMatrix::identity(4),
        };
        let e = conditional_expectation(spec, &s).unwrap();
        let rep = dpi_check(&pair, &e, &DPI_GRID).unwrap();
        assert!(rep.entries.iter().all(|g| g.slack.abs() < 1e-10));
    }

    #[test]
    fn random_dephasing_satisfies_dpi() {
        for trial in 0..20 {
            let mut rng = trial_rng(3, "rchk", trial);
            let s = sample_faithful_state(4, &mut rng);
            let pair = StatePair::new(sample_faithful_state(4, &mut rng), s.clone()).unwrap();
            let e = conditional_expectation(SubalgebraSpec::dephasing(&s), &s).unwrap();
            let rep = dpi_check(&pair, &e, &DPI_GRID).unwrap();
            assert!(rep.pass, "trial {trial}: {:?}", rep);
            assert_eq!(rep.entries[0].range, ClaimRange::DpiBelowOne);
            assert_eq!(rep.entries[2].range, ClaimRange::DpiAboveOne);
        }
    }

    #[test]
    fn dpi_rejects_small_exponents() {
        let s = FaithfulState::maximally_mixed(2);
        let pair = StatePair::new(s.clone(), s.clone()).unwrap();
        let e = conditional_expectation(SubalgebraSpec::dephasing(&s), &s).unwrap();
        assert!(matches!(dpi_check(&pair, &e, &[0.3, 2.0]), Err(Error::InvalidExponent(_))));
        assert!(matches!(dpi_check(&pair, &e, &[1.0]), Err(Error::InvalidExponent(_))));
    }

    #[test]
    fn tensor_equality_condition() {
        let mut rng = trial_rng(4, "rchk", 0);
        let sa = sample_faithful_state(2, &mut rng);
        let sb = sample_faithful_state(2, &mut rng);
        let ra = sample_faithful_state(2, &mut rng);
        let s = sa.tensor(&sb).unwrap();
        let e = conditional_expectation(SubalgebraSpec::TensorFactor { dim_a: 2, dim_b: 2 }, &s).unwrap();
        let pair_n = StatePair::new(ra, e.restricted_sigma().unwrap()).unwrap();
        let rep = equality_condition_check(&pair_n, &e, &[0.25, 0.5, 2.0, 10.0]).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn whole_algebra_equality_is_tautological() {
        let mut rng = trial_rng(5, "rchk", 0);
        let s = sample_faithful_state(3, &mut rng);
        let e = conditional_expectation(SubalgebraSpec::blocks_in_eigenbasis(&s, vec![vec![0, 1, 2]]), &s).unwrap();
        let sigma_n = e.restricted_sigma().unwrap();
        let rho_n = FaithfulState::normalized(&e.compress(sample_faithful_state(3, &mut rng).matrix()).unwrap()).unwrap();
        let rep = equality_condition_check(&StatePair::new(rho_n, sigma_n).unwrap(), &e, &[0.1, 0.7, 3.0]).unwrap();
        assert!(rep.max_violation < 1e-10);
    }

    #[test]
    fn monotone_examples() {
        let s = sample_faithful_state(3, &mut trial_rng(6, "rchk", 0));
        let same = StatePair::new(s.clone(), s).unwrap();
        let grid = [0.1, 0.3, 0.7, 1.5, 3.0, 10.0];
        let rep = monotonicity_check(&same, &grid).unwrap();
        assert!(rep.pass && rep.entries.iter().all(|g| g.big.abs() < 1e-10));

        let mut rng = trial_rng(6, "rchk", 1);
        let pair = StatePair::new(sample_faithful_state(3, &mut rng), sample_faithful_state(3, &mut rng)).unwrap();
        assert!(monotonicity_check(&pair, &grid).unwrap().pass);
        assert!(monotonicity_check(&pair, &[0.5, 0.3]).is_err());
        assert!(monotonicity_check(&pair, &[0.5, 1.0, 2.0]).is_err());
    }
}
