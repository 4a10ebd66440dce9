use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schatten::PExponent;
use crate::strip::QuadratureSpec;

/// Named verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Schatten,
    Weighted,
    ModularFlow,
    ThreeLines,
    Hirschman,
    ProductPower,
    RenyiMono,
    Dpi,
    DpiEquality,
    Witness,
    RieszThorin,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Schatten,
        Suite::Weighted,
        Suite::ModularFlow,
        Suite::ThreeLines,
        Suite::Hirschman,
        Suite::ProductPower,
        Suite::RenyiMono,
        Suite::Dpi,
        Suite::DpiEquality,
        Suite::Witness,
        Suite::RieszThorin,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Schatten => "schatten",
            Suite::Weighted => "weighted",
            Suite::ModularFlow => "modular_flow",
            Suite::ThreeLines => "three_lines",
            Suite::Hirschman => "hirschman",
            Suite::ProductPower => "product_power",
            Suite::RenyiMono => "renyi_mono",
            Suite::Dpi => "dpi",
            Suite::DpiEquality => "dpi_equality",
            Suite::Witness => "witness",
            Suite::RieszThorin => "riesz_thorin",
        }
    }

    /// Checks run by the suite and their default tolerances.
    pub fn default_tolerances(self) -> BTreeMap<String, f64> {
        let pairs: &[(&str, f64)] = match self {
            Suite::Schatten => &[
                ("holder", 1e-9),
                ("quasi_triangle", 1e-9),
                ("triangle", 1e-9),
                ("two_p_identity", 1e-9),
                ("unitary_invariance", 1e-9),
                ("factorization", 1e-9),
            ],
            Suite::Weighted => &[("embedding_monotonicity", 1e-9), ("interpolation", 1e-9)],
            Suite::ModularFlow => &[("flow_identity", 1e-8), ("flow_invariance", 1e-9)],
            Suite::ThreeLines => &[
                ("constant", 1e-8),
                ("power_product", 1e-8),
                ("witness_bound", 1e-8),
                ("witness_tightness", 1e-6),
            ],
            Suite::Hirschman => &[
                ("kernel_mass", 1e-8),
                ("kernel_center", 1e-12),
                ("constant_collapse", 1e-8),
                ("single_power", 1e-6),
                ("power_product", 1e-6),
            ],
            Suite::ProductPower => &[("inequality", 1e-6), ("single_factor", 1e-6), ("commuting", 1e-6)],
            Suite::RenyiMono => &[
                ("monotonicity", 1e-8),
                ("classical", 1e-9),
                ("tensor_additivity", 1e-9),
                ("unitary_covariance", 1e-9),
            ],
            Suite::Dpi => &[
                ("dpi_pinching", 1e-8),
                ("dpi_tensor", 1e-8),
                ("nonnegativity", 1e-8),
                ("dpi_map_contract", 1e-9),
            ],
            Suite::DpiEquality => &[("equality_pinching", 1e-9), ("equality_tensor", 1e-9)],
            Suite::Witness => &[
                ("reassembly", 1e-10),
                ("boundary_norm", 1e-9),
                ("t_independence", 1e-9),
            ],
            Suite::RieszThorin => &[("endpoint", 1e-9), ("interpolated", 1e-9)],
        };
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    pub fn default_dims(self) -> Vec<usize> {
        match self {
            Suite::Schatten => vec![2, 3, 5, 8],
            Suite::Hirschman | Suite::ProductPower => vec![2, 3],
            Suite::Dpi => vec![3, 4],
            _ => vec![2, 3, 4],
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::Schatten => 1000,
            Suite::Weighted | Suite::Dpi => 500,
            Suite::ThreeLines | Suite::RenyiMono => 300,
            Suite::ModularFlow | Suite::ProductPower | Suite::DpiEquality | Suite::RieszThorin => 200,
            Suite::Witness => 100,
            Suite::Hirschman => 50,
        }
    }

    pub fn default_p_grid(self) -> Vec<PExponent> {
        let inf = f64::INFINITY;
        let v: &[f64] = match self {
            Suite::Schatten => &[0.25, 0.5, 0.9, 1.0, 2.0, inf],
            Suite::Weighted => &[0.3, 0.5, 1.0, 2.0, 4.0, inf],
            Suite::ModularFlow => &[0.5, 2.0, 3.0],
            Suite::ThreeLines | Suite::Witness => &[0.5, 1.0, 2.0, 4.0, inf],
            Suite::Hirschman | Suite::ProductPower => &[0.5, 1.0, 2.0],
            Suite::RenyiMono => &[0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0],
            Suite::Dpi => &[0.5, 0.75, 1.5, 2.0, 5.0],
            Suite::DpiEquality => &[0.1, 0.25, 0.5, 0.75, 2.0, 3.0, 10.0],
            Suite::RieszThorin => &[1.0, 4.0 / 3.0, 2.0, 4.0, inf],
        };
        v.iter().map(|&p| PExponent::of(p)).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.id() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.id()).collect();
                Error::config("suite", format!("unknown suite `{s}`; expected one of {}", names.join(", ")))
            })
    }
}

/// Truncation half-width and step of the trapezoid rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    #[serde(rename = "T")]
    pub half_width: f64,
    pub step: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        let q = QuadratureSpec::default();
        QuadratureConfig {
            half_width: q.half_width,
            step: q.step,
        }
    }
}

impl QuadratureConfig {
    pub fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            half_width: self.half_width,
            step: self.step,
            log_norm_bound: None,
        }
    }
}

/// Full configuration of one suite run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub p_grid: Vec<PExponent>,
    /// Check name to tolerance; only names the suite runs are accepted.
    #[serde(default)]
    pub tolerance_overrides: BTreeMap<String, f64>,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
}

impl SuiteConfig {
    /// Defaults for the given suite and seed.
    pub fn new(suite: Suite, seed: u64) -> Self {
        SuiteConfig {
            suite,
            dims: suite.default_dims(),
            trials: suite.default_trials(),
            seed,
            p_grid: suite.default_p_grid(),
            tolerance_overrides: BTreeMap::new(),
            quadrature: QuadratureConfig::default(),
        }
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        self.dims = dims;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_p_grid(mut self, p_grid: Vec<PExponent>) -> Self {
        self.p_grid = p_grid;
        self
    }

    pub fn with_tolerance(mut self, check: &str, tol: f64) -> Self {
        self.tolerance_overrides.insert(check.to_string(), tol);
        self
    }

    /// Default tolerances merged with overrides.
    pub fn effective_tolerances(&self) -> Result<BTreeMap<String, f64>> {
        let mut tols = self.suite.default_tolerances();
        for (k, &v) in &self.tolerance_overrides {
            if !tols.contains_key(k) {
                let known: Vec<&str> = tols.keys().map(String::as_str).collect();
                return Err(Error::config(
                    format!("tolerance_overrides.{k}"),
                    format!("suite `{}` has no check `{k}`; known checks: {}", self.suite, known.join(", ")),
                ));
            }
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::config(
                    format!("tolerance_overrides.{k}"),
                    format!("tolerance must be a finite nonnegative number, got {v}"),
                ));
            }
            tols.insert(k.clone(), v);
        }
        Ok(tols)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::config("trials", "must be at least 1"));
        }
        if self.dims.is_empty() {
            return Err(Error::config("dims", "must list at least one dimension"));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d == 0 || d > 64) {
            return Err(Error::config("dims", format!("dimension {d} is outside 1..=64")));
        }
        if self.p_grid.is_empty() {
            return Err(Error::config("p_grid", "must be nonempty"));
        }
        self.effective_tolerances()?;
        self.quadrature.spec().validate()?;

        let finite = |what: &str| -> Result<()> {
            if self.p_grid.iter().any(|p| p.is_infinite()) {
                return Err(Error::config("p_grid", format!("{what} needs finite exponents")));
            }
            Ok(())
        };
        let values: Vec<f64> = self.p_grid.iter().map(|p| p.value()).collect();
        match self.suite {
            Suite::Dpi => {
                finite("the dpi suite")?;
                if let Some(&p) = values.iter().find(|&&p| p < 0.5 || p == 1.0) {
                    return Err(Error::config(
                        "p_grid",
                        format!("data processing is only asserted on [1/2, 1) ∪ (1, ∞); {p} is outside"),
                    ));
                }
            }
            Suite::RenyiMono | Suite::DpiEquality => {
                finite("the divergence suites")?;
                if values.contains(&1.0) {
                    return Err(Error::config("p_grid", "p = 1 is not a valid divergence order"));
                }
                if self.suite == Suite::RenyiMono && values.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::config("p_grid", "monotonicity grid must be strictly ascending"));
                }
            }
            Suite::ModularFlow => finite("the modular flow identity")?,
            Suite::Weighted | Suite::ThreeLines | Suite::Witness => {
                let mut distinct = values.clone();
                distinct.sort_by(f64::total_cmp);
                distinct.dedup();
                if distinct.len() < 2 {
                    return Err(Error::config("p_grid", "needs at least two distinct exponents"));
                }
            }
            Suite::RieszThorin => {
                if let Some(&p) = values.iter().find(|&&p| p < 1.0) {
                    return Err(Error::config(
                        "p_grid",
                        format!("interpolated exponents must lie in [1, ∞], got {p}"),
                    ));
                }
            }
            Suite::Schatten | Suite::Hirschman | Suite::ProductPower => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.id().parse::<Suite>().unwrap(), s);
            let json = serde_json::to_string(&s).unwrap();
            assert_eq!(json, format!("\"{}\"", s.id()));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn defaults_validate() {
        for s in Suite::ALL {
            SuiteConfig::new(s, 1).validate().unwrap();
        }
    }

    #[test]
    fn dpi_grid_below_half_is_rejected() {
        let cfg = SuiteConfig::new(Suite::Dpi, 1).with_p_grid(vec![PExponent::of(0.3), PExponent::of(2.0)]);
        match cfg.validate() {
            Err(Error::Config { field, .. }) => assert_eq!(field, "p_grid"),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn field_errors_name_the_field() {
        let bad = SuiteConfig::new(Suite::Schatten, 1).with_trials(0);
        assert!(matches!(bad.validate(), Err(Error::Config { ref field, .. }) if field == "trials"));
        let bad = SuiteConfig::new(Suite::Schatten, 1).with_dims(vec![2, 0]);
        assert!(matches!(bad.validate(), Err(Error::Config { ref field, .. }) if field == "dims"));
        let bad = SuiteConfig::new(Suite::Schatten, 1).with_tolerance("bogus", 1.0);
        assert!(matches!(bad.validate(), Err(Error::Config { ref field, .. }) if field.starts_with("tolerance_overrides")));
        let bad = SuiteConfig::new(Suite::RenyiMono, 1)
            .with_p_grid(vec![PExponent::of(2.0), PExponent::of(0.5)]);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn overrides_merge() {
        let cfg = SuiteConfig::new(Suite::Weighted, 1).with_tolerance("interpolation", 1e-6);
        let t = cfg.effective_tolerances().unwrap();
        assert_eq!(t["interpolation"], 1e-6);
        assert_eq!(t["embedding_monotonicity"], 1e-9);
    }
}
