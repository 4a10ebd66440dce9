//! Schatten p-norms for `0 < p <= ∞` (quasi-norms below 1), the
//! interpolated exponent, and the exact factorization of a constant family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};
use crate::spectral::{hermitian_eigen, polar, singular_values, support_power_from_eigen};
use crate::tol;

/// An exponent in `(0, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PExponent {
    Finite(f64),
    Infinity,
}

impl PExponent {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value <= 0.0 {
            return Err(Error::InvalidExponent(format!(
                "p must lie in (0, ∞], got {value}"
            )));
        }
        if value.is_infinite() {
            Ok(PExponent::Infinity)
        } else {
            Ok(PExponent::Finite(value))
        }
    }

    /// Panicking constructor for literals.
    pub fn of(value: f64) -> Self {
        Self::new(value).expect("valid exponent")
    }

    /// Builds `p` from `1/p`, with `1/p = 0` meaning `p = ∞`.
    pub fn from_reciprocal(r: f64) -> Result<Self> {
        if r.is_nan() || r < 0.0 || r.is_infinite() {
            return Err(Error::InvalidExponent(format!("1/p must be in [0, ∞), got {r}")));
        }
        if r == 0.0 {
            Ok(PExponent::Infinity)
        } else {
            Ok(PExponent::Finite(1.0 / r))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            PExponent::Finite(p) => p,
            PExponent::Infinity => f64::INFINITY,
        }
    }

    pub fn reciprocal(self) -> f64 {
        match self {
            PExponent::Finite(p) => 1.0 / p,
            PExponent::Infinity => 0.0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, PExponent::Infinity)
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Finite(p) => write!(f, "{p}"),
            PExponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for PExponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => return Ok(PExponent::Infinity),
            _ => {}
        }
        let v = if let Some((num, den)) = t.split_once('/') {
            let n: f64 = num.trim().parse().map_err(|_| bad_exponent(s))?;
            let d: f64 = den.trim().parse().map_err(|_| bad_exponent(s))?;
            n / d
        } else {
            t.parse().map_err(|_| bad_exponent(s))?
        };
        PExponent::new(v)
    }
}

fn bad_exponent(s: &str) -> Error {
    Error::InvalidExponent(format!("cannot parse exponent `{s}`"))
}

impl Serialize for PExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PExponent::Finite(p) => s.serialize_f64(*p),
            PExponent::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PExponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => PExponent::new(v).map_err(serde::de::Error::custom),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// `(Σ s_i^p)^{1/p}` over descending singular values, or `s_1` for `p = ∞`.
///
/// Values below `1e-14 * s_1` are dropped before raising to the power.
pub fn norm_from_singular_values(s: &[f64], p: PExponent) -> f64 {
    let top = s.iter().copied().fold(0.0_f64, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    match p {
        PExponent::Infinity => top,
        PExponent::Finite(p) => {
            let cut = tol::SV_CUTOFF * top;
            let sum: f64 = s
                .iter()
                .filter(|&&v| v > cut)
                .map(|&v| (v / top).powf(p))
                .sum();
            top * sum.powf(1.0 / p)
        }
    }
}

/// Schatten norm `‖x‖_p`; a quasi-norm when `p < 1`.
pub fn schatten_norm(x: &ComplexMatrix, p: PExponent) -> Result<f64> {
    Ok(norm_from_singular_values(&singular_values(x)?, p))
}

/// `p_θ` with `1/p_θ = (1-θ)/p_0 + θ/p_1`.
pub fn p_theta(p0: PExponent, p1: PExponent, theta: f64) -> PExponent {
    let r = (1.0 - theta) * p0.reciprocal() + theta * p1.reciprocal();
    PExponent::from_reciprocal(r).expect("convex combination of reciprocals is finite and nonnegative")
}

/// Splits `f = g h` with `g = u |f|^{1-λ}` and `h = |f|^λ`, where `f = u|f|`.
///
/// For every `r > 0` this gives `‖g‖_{r/(1-λ)} = ‖f‖_r^{1-λ}` and
/// `‖h‖_{r/λ} = ‖f‖_r^λ` exactly.
pub fn factorize(f: &ComplexMatrix, lambda: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::InvalidExponent(format!(
            "factorization weight must lie in (0, 1), got {lambda}"
        )));
    }
    let (u, abs) = polar(f)?;
    let eig = hermitian_eigen(&abs)?;
    let g = &u * support_power_from_eigen(&eig, c64(1.0 - lambda, 0.0))?;
    let h = support_power_from_eigen(&eig, c64(lambda, 0.0))?;
    Ok((g, h))
}
