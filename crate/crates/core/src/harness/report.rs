use std::collections::BTreeMap;
use std::io;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::SuiteConfig;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

pub const REPORT_VERSION: &str = "1";

/// One sampled input, with per-check violations (positive means the
/// inequality or identity was missed by that much, in the check's scale).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub dim: usize,
    pub inputs_digest: String,
    pub values: BTreeMap<String, f64>,
    /// `-max(values)`; nonnegative when every check in the record held exactly.
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub tolerance: f64,
    pub max_violation: f64,
    pub samples: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    #[serde(flatten)]
    pub config: SuiteConfig,
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub suite: String,
    pub config: ReportConfig,
    pub checks: Vec<CheckSummary>,
    pub records: Vec<TrialRecord>,
    pub max_violation: f64,
    pub pass: bool,
    pub wall_time: f64,
}

impl VerificationReport {
    pub(crate) fn assemble(
        config: &SuiteConfig,
        tolerances: BTreeMap<String, f64>,
        records: Vec<TrialRecord>,
        wall_time: f64,
    ) -> Self {
        let mut checks: Vec<CheckSummary> = tolerances
            .iter()
            .map(|(name, &tolerance)| CheckSummary {
                name: name.clone(),
                tolerance,
                max_violation: f64::NEG_INFINITY,
                samples: 0,
                pass: true,
            })
            .collect();
        for r in &records {
            for (k, &v) in &r.values {
                let c = checks
                    .iter_mut()
                    .find(|c| &c.name == k)
                    .expect("record check names come from the tolerance table");
                c.samples += 1;
                // NaN counts as a failure
                c.max_violation = if v.is_nan() || c.max_violation.is_nan() {
                    f64::NAN
                } else {
                    c.max_violation.max(v)
                };
            }
        }
        for c in &mut checks {
            if c.samples == 0 {
                c.max_violation = 0.0;
            }
            c.pass = c.max_violation <= c.tolerance;
        }
        let max_violation = checks.iter().fold(0.0f64, |m, c| {
            if c.max_violation.is_nan() {
                f64::NAN
            } else {
                m.max(c.max_violation)
            }
        });
        let pass = checks.iter().all(|c| c.pass);
        VerificationReport {
            version: REPORT_VERSION.to_string(),
            suite: config.suite.id().to_string(),
            config: ReportConfig {
                config: config.clone(),
                tolerances,
            },
            checks,
            records,
            max_violation,
            pass,
            wall_time,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Serialized report with `wall_time` zeroed, for comparing runs.
    pub fn body(&self) -> Result<String> {
        let mut r = self.clone();
        r.wall_time = 0.0;
        r.to_json()
    }

    pub fn to_json(&self) -> Result<String> {
        to_json_17(self)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }
}

/// Pretty JSON where every float carries 17 significant digits.
pub fn to_json_17<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Float17(serde_json::ser::PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

struct Float17<'a>(serde_json::ser::PrettyFormatter<'a>);

macro_rules! forward {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.0.$name(w $(, $arg)*)
        })*
    };
}

impl serde_json::ser::Formatter for Float17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value == 0.0 {
            w.write_all(if value.is_sign_negative() { b"-0.0" } else { b"0.0" })
        } else {
            write!(w, "{value:.16e}")
        }
    }

    forward! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }
}

/// Short SHA-256 digest of the sampled inputs of a trial.
#[derive(Clone, Default)]
pub struct InputDigest(Sha256);

impl InputDigest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn matrix(&mut self, m: &ComplexMatrix) -> &mut Self {
        self.0.update((m.dim() as u64).to_le_bytes());
        for z in m.as_dmatrix().iter() {
            self.0.update(z.re.to_bits().to_le_bytes());
            self.0.update(z.im.to_bits().to_le_bytes());
        }
        self
    }

    pub fn scalar(&mut self, x: f64) -> &mut Self {
        self.0.update(x.to_bits().to_le_bytes());
        self
    }

    pub fn finish(&self) -> String {
        let out = self.0.clone().finalize();
        out.iter().take(16).map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::Suite;

    #[test]
    fn floats_keep_seventeen_digits_and_round_trip() {
        let x = 0.1f64 + 0.2;
        let s = to_json_17(&vec![x, 1.0, -0.0, 1e-300]).unwrap();
        assert!(s.contains("3.0000000000000004e-1"));
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[0].to_bits(), x.to_bits());
        assert_eq!(back[3], 1e-300);
    }

    #[test]
    fn report_round_trips() {
        let cfg = SuiteConfig::new(Suite::Weighted, 3);
        let tols = cfg.effective_tolerances().unwrap();
        let mut values = BTreeMap::new();
        values.insert("interpolation".to_string(), -1.234567890123e-3);
        let rec = TrialRecord {
            trial: 0,
            dim: 2,
            inputs_digest: "ab".into(),
            values,
            slack: 1.234567890123e-3,
        };
        let r = VerificationReport::assemble(&cfg, tols, vec![rec], 0.5);
        assert!(r.pass);
        assert_eq!(r.check("embedding_monotonicity").unwrap().samples, 0);
        let back = VerificationReport::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn nan_violation_fails() {
        let cfg = SuiteConfig::new(Suite::Weighted, 3);
        let tols = cfg.effective_tolerances().unwrap();
        let mut values = BTreeMap::new();
        values.insert("interpolation".to_string(), f64::NAN);
        let rec = TrialRecord {
            trial: 0,
            dim: 2,
            inputs_digest: String::new(),
            values,
            slack: 0.0,
        };
        assert!(!VerificationReport::assemble(&cfg, tols, vec![rec], 0.0).pass);
    }
}
