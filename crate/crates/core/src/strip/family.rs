//! Matrix-valued analytic functions on the strip `0 <= Re z <= 1`, built
//! from constants, complex powers of positive matrices, entire scalar
//! factors, sums and products.

use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix, HermitianMatrix, C64};
use crate::spectral::{
    hermitian_eigen, power_from_eigen, support_power_from_eigen, SpectralDecomposition,
};
use crate::tol;

/// `z ↦ a z + b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Affine {
    pub a: C64,
    pub b: C64,
}

impl Affine {
    pub fn new(a: C64, b: C64) -> Self {
        Affine { a, b }
    }

    /// The identity map `z ↦ z`.
    pub fn identity() -> Self {
        Affine::new(c64(1.0, 0.0), C64::default())
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.a * z + self.b
    }

    fn min_real_part_on_strip(&self) -> f64 {
        if self.a.im != 0.0 {
            return f64::NEG_INFINITY;
        }
        self.b.re.min(self.a.re + self.b.re)
    }
}

/// Entire scalar functions allowed as factors.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarFn {
    /// `Σ c_k z^k`, coefficients in ascending degree.
    Polynomial(Vec<C64>),
    /// `exp(a z + b)`.
    Exp { a: C64, b: C64 },
}

impl ScalarFn {
    pub fn eval(&self, z: C64) -> C64 {
        match self {
            ScalarFn::Polynomial(c) => c.iter().rev().fold(C64::default(), |acc, &ck| acc * z + ck),
            ScalarFn::Exp { a, b } => (a * z + b).exp(),
        }
    }

    fn is_constant(&self) -> bool {
        match self {
            ScalarFn::Polynomial(c) => c.iter().skip(1).all(|v| *v == C64::default()),
            ScalarFn::Exp { a, .. } => *a == C64::default(),
        }
    }

    /// `|f(k + it)|` does not depend on `t` for `k = 0, 1`.
    fn modulus_t_invariant(&self) -> bool {
        match self {
            ScalarFn::Polynomial(_) => self.is_constant(),
            ScalarFn::Exp { a, .. } => a.im == 0.0,
        }
    }
}

/// A power `A^{a z + b}` of a fixed positive semidefinite matrix.
#[derive(Clone, Debug)]
pub struct PowerNode {
    base: HermitianMatrix,
    eigen: SpectralDecomposition,
    faithful: bool,
    exponent: Affine,
}

impl PowerNode {
    pub fn base(&self) -> &HermitianMatrix {
        &self.base
    }

    pub fn exponent(&self) -> Affine {
        self.exponent
    }

    pub fn is_faithful(&self) -> bool {
        self.faithful
    }

    fn eval(&self, z: C64) -> Result<ComplexMatrix> {
        let w = self.exponent.eval(z);
        if self.faithful {
            power_from_eigen(&self.eigen, w)
        } else {
            // Kernel of the base maps to zero for every exponent, which is the
            // continuous extension from Re w > 0.
            support_power_from_eigen(&self.eigen, w)
        }
    }
}

#[derive(Clone, Debug)]
pub enum AnalyticFamily {
    Const(ComplexMatrix),
    Power(Box<PowerNode>),
    Scalar {
        f: ScalarFn,
        inner: Box<AnalyticFamily>,
    },
    Sum(Vec<AnalyticFamily>),
    Product(Vec<AnalyticFamily>),
}

impl AnalyticFamily {
    pub fn constant(x: ComplexMatrix) -> Self {
        AnalyticFamily::Const(x)
    }

    /// `A^{a z + b}`. The base must be PSD, and either faithful or have
    /// `Re(a z + b) >= 0` on the whole closed strip.
    pub fn power(base: HermitianMatrix, exponent: Affine) -> Result<Self> {
        let eigen = hermitian_eigen(&base)?;
        let min = eigen.min_eigenvalue();
        let floor = -tol::HERMITIAN * eigen.max_eigenvalue().abs().max(1.0);
        if min < floor {
            return Err(Error::NotPositive { min_eig: min });
        }
        let faithful = min >= tol::FAITHFUL;
        if !faithful && exponent.min_real_part_on_strip() < 0.0 {
            return Err(Error::UnboundedFamily(format!(
                "power {:?} of a non-faithful base has negative real part on the strip",
                exponent
            )));
        }
        Ok(AnalyticFamily::Power(Box::new(PowerNode {
            base,
            eigen,
            faithful,
            exponent,
        })))
    }

    /// `A^z`.
    pub fn power_z(base: HermitianMatrix) -> Result<Self> {
        Self::power(base, Affine::identity())
    }

    pub fn scalar(f: ScalarFn, inner: AnalyticFamily) -> Self {
        AnalyticFamily::Scalar {
            f,
            inner: Box::new(inner),
        }
    }

    pub fn sum(terms: Vec<AnalyticFamily>) -> Self {
        AnalyticFamily::Sum(terms)
    }

    pub fn product(factors: Vec<AnalyticFamily>) -> Self {
        AnalyticFamily::Product(factors)
    }

    /// Matrix dimension, if the tree contains at least one matrix leaf.
    pub fn dim(&self) -> Option<usize> {
        match self {
            AnalyticFamily::Const(x) => Some(x.dim()),
            AnalyticFamily::Power(p) => Some(p.base.dim()),
            AnalyticFamily::Scalar { inner, .. } => inner.dim(),
            AnalyticFamily::Sum(v) | AnalyticFamily::Product(v) => v.iter().find_map(|f| f.dim()),
        }
    }

    /// Evaluates the family at a point of the closed strip.
    pub fn evaluate(&self, z: C64) -> Result<ComplexMatrix> {
        if !(0.0..=1.0).contains(&z.re) || !z.im.is_finite() {
            return Err(Error::OutsideStrip { re: z.re, im: z.im });
        }
        self.eval_unchecked(z)
    }

    fn eval_unchecked(&self, z: C64) -> Result<ComplexMatrix> {
        match self {
            AnalyticFamily::Const(x) => Ok(x.clone()),
            AnalyticFamily::Power(p) => p.eval(z),
            AnalyticFamily::Scalar { f, inner } => Ok(inner.eval_unchecked(z)?.scale(f.eval(z))),
            AnalyticFamily::Sum(terms) => {
                let (first, rest) = terms
                    .split_first()
                    .ok_or_else(|| Error::InvalidShape("empty sum".into()))?;
                rest.iter().try_fold(first.eval_unchecked(z)?, |acc, t| {
                    let v = t.eval_unchecked(z)?;
                    v.check_dim(acc.dim())?;
                    Ok(acc + v)
                })
            }
            AnalyticFamily::Product(factors) => {
                let (first, rest) = factors
                    .split_first()
                    .ok_or_else(|| Error::InvalidShape("empty product".into()))?;
                rest.iter().try_fold(first.eval_unchecked(z)?, |acc, f| {
                    let v = f.eval_unchecked(z)?;
                    v.check_dim(acc.dim())?;
                    Ok(acc * v)
                })
            }
        }
    }

    /// No dependence on `z` at all.
    pub fn is_constant(&self) -> bool {
        match self {
            AnalyticFamily::Const(_) => true,
            AnalyticFamily::Power(p) => p.exponent.a == C64::default(),
            AnalyticFamily::Scalar { f, inner } => f.is_constant() && inner.is_constant(),
            AnalyticFamily::Sum(v) | AnalyticFamily::Product(v) => v.iter().all(|f| f.is_constant()),
        }
    }

    /// Structural certificate that the singular values of `G(k + it)` do not
    /// depend on `t` for `k = 0, 1`, so that a sampled maximum of boundary
    /// norms is the true supremum.
    ///
    /// Certified shapes: constants; a power with real slope; unimodular-in-`t`
    /// scalar multiples of certified families; and products whose first and
    /// last factors may be real-slope powers (their imaginary parts are
    /// unitaries that can be peeled off to the outside) with constant
    /// factors in between.
    pub fn boundary_t_invariant(&self) -> bool {
        if self.is_constant() {
            return true;
        }
        match self {
            AnalyticFamily::Const(_) => true,
            AnalyticFamily::Power(p) => p.exponent.a.im == 0.0,
            AnalyticFamily::Scalar { f, inner } => {
                f.modulus_t_invariant() && inner.boundary_t_invariant()
            }
            AnalyticFamily::Sum(_) => false,
            AnalyticFamily::Product(factors) => {
                let real_slope_power =
                    |f: &AnalyticFamily| matches!(f, AnalyticFamily::Power(p) if p.exponent.a.im == 0.0);
                match factors.len() {
                    0 => true,
                    1 => factors[0].boundary_t_invariant(),
                    n => {
                        let head_ok = factors[0].is_constant() || real_slope_power(&factors[0]);
                        let tail_ok = factors[n - 1].is_constant() || real_slope_power(&factors[n - 1]);
                        head_ok && tail_ok && factors[1..n - 1].iter().all(|f| f.is_constant())
                    }
                }
            }
        }
    }

    /// Bases of every non-constant power node.
    pub fn varying_power_bases(&self) -> Vec<&HermitianMatrix> {
        let mut out = Vec::new();
        self.collect_bases(&mut out);
        out
    }

    fn collect_bases<'a>(&'a self, out: &mut Vec<&'a HermitianMatrix>) {
        match self {
            AnalyticFamily::Const(_) => {}
            AnalyticFamily::Power(p) => {
                if p.exponent.a != C64::default() {
                    out.push(&p.base);
                }
            }
            AnalyticFamily::Scalar { inner, .. } => inner.collect_bases(out),
            AnalyticFamily::Sum(v) | AnalyticFamily::Product(v) => {
                v.iter().for_each(|f| f.collect_bases(out))
            }
        }
    }
}
