//! Randomized verification suites. Every trial draws from its own seeded
//! stream, so results do not depend on scheduling.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rayon::prelude::*;

use super::config::{Suite, SuiteConfig};
use super::ensemble::{ginibre, haar_unitary, random_distribution, random_psd, sample_faithful_state};
use super::report::{InputDigest, TrialRecord, VerificationReport};
use super::rng::{trial_rng, TrialRng};
use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix, HermitianMatrix};
use crate::renyi::{
    conditional_expectation, dpi_check_with_tolerance, equality_condition_check_with_tolerance,
    monotonicity_check_with_tolerance, sandwiched_divergence, ConditionalExpectation, StatePair, SubalgebraSpec,
};
use crate::schatten::{factorize, norm_from_singular_values, p_theta, schatten_norm, PExponent};
use crate::spectral::{operator_norm, singular_values};
use crate::state::FaithfulState;
use crate::strip::{
    default_t_grid, hirschman_check, hirschman_kernel, kernel_mass, product_power_check, three_lines_check,
    AnalyticFamily, Affine, CertificateReport, Weighting,
};
use crate::weighted::{operator_interp_norm, WeightedContext};

const THETAS: [f64; 3] = [0.25, 0.5, 0.75];
const RESAMPLE_LIMIT: usize = 16;

/// Runs every trial of a suite and aggregates the report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let tolerances = cfg.effective_tolerances()?;
    let start = Instant::now();
    let jobs: Vec<(usize, usize)> = cfg
        .dims
        .iter()
        .flat_map(|&d| (0..cfg.trials).map(move |t| (d, t)))
        .collect();
    let records = jobs
        .par_iter()
        .map(|&(dim, trial)| run_trial(cfg, &tolerances, dim, trial))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::assemble(
        cfg,
        tolerances,
        records,
        start.elapsed().as_secs_f64(),
    ))
}

struct Trial<'a> {
    cfg: &'a SuiteConfig,
    tolerances: &'a BTreeMap<String, f64>,
    dim: usize,
    index: usize,
    rng: TrialRng,
    digest: InputDigest,
    values: BTreeMap<String, f64>,
}

impl Trial<'_> {
    fn record(&mut self, check: &str, violation: f64) {
        debug_assert!(self.tolerances.contains_key(check), "unknown check {check}");
        let slot = self.values.entry(check.to_string()).or_insert(f64::NEG_INFINITY);
        *slot = if violation.is_nan() || slot.is_nan() {
            f64::NAN
        } else {
            slot.max(violation)
        };
    }

    fn tol(&self, check: &str) -> f64 {
        self.tolerances[check]
    }

    fn matrix(&mut self, m: &ComplexMatrix) {
        self.digest.matrix(m);
    }

    fn state(&mut self, s: &FaithfulState) {
        self.digest.matrix(s.matrix());
    }

    fn scalar(&mut self, x: f64) {
        self.digest.scalar(x);
    }

    fn finite_grid(&self) -> Vec<f64> {
        self.cfg
            .p_grid
            .iter()
            .filter(|p| !p.is_infinite())
            .map(|p| p.value())
            .collect()
    }

    /// Two distinct grid exponents, ordered.
    fn exponent_pair(&mut self) -> (PExponent, PExponent) {
        let mut grid = self.cfg.p_grid.clone();
        grid.sort_by(|a, b| a.value().total_cmp(&b.value()));
        grid.dedup();
        let i = self.rng.random_range(0..grid.len() - 1);
        let j = self.rng.random_range(i + 1..grid.len());
        self.scalar(grid[i].value());
        self.scalar(grid[j].value());
        (grid[i], grid[j])
    }
}

fn run_trial(cfg: &SuiteConfig, tolerances: &BTreeMap<String, f64>, dim: usize, index: usize) -> Result<TrialRecord> {
    let mut t = Trial {
        cfg,
        tolerances,
        dim,
        index,
        rng: trial_rng(cfg.seed, &format!("{}/{dim}", cfg.suite.id()), index as u64),
        digest: InputDigest::new(),
        values: BTreeMap::new(),
    };
    match cfg.suite {
        Suite::Schatten => schatten_trial(&mut t)?,
        Suite::Weighted => weighted_trial(&mut t)?,
        Suite::ModularFlow => modular_trial(&mut t)?,
        Suite::ThreeLines => three_lines_trial(&mut t)?,
        Suite::Witness => witness_trial(&mut t)?,
        Suite::Hirschman => hirschman_trial(&mut t)?,
        Suite::ProductPower => product_power_trial(&mut t)?,
        Suite::RenyiMono => renyi_trial(&mut t)?,
        Suite::Dpi => dpi_trial(&mut t)?,
        Suite::DpiEquality => equality_trial(&mut t)?,
        Suite::RieszThorin => riesz_thorin_trial(&mut t)?,
    }
    let slack = -t.values.values().copied().fold(f64::NEG_INFINITY, |m, v| {
        if v.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(v)
        }
    });
    Ok(TrialRecord {
        trial: index,
        dim,
        inputs_digest: t.digest.finish(),
        values: t.values,
        slack,
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Positive when `lhs` exceeds `rhs`, relative to `rhs`.
fn rel_excess(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs) / rhs.abs().max(f64::MIN_POSITIVE)
}

/// Violation of a certificate, relative to its bound; unsound certificates
/// count as failures.
fn certificate_violation(rep: &CertificateReport) -> f64 {
    if !rep.sound {
        return f64::INFINITY;
    }
    -rep.slack / rep.rhs.abs().max(f64::MIN_POSITIVE)
}

fn abs_violation(rep: &CertificateReport) -> f64 {
    if rep.sound {
        -rep.slack
    } else {
        f64::INFINITY
    }
}

/// Ginibre sample, sometimes with a rank defect and a spread-out spectrum.
fn test_matrix(t: &mut Trial<'_>) -> ComplexMatrix {
    let d = t.dim;
    let g = ginibre(d, &mut t.rng);
    let scales: Vec<f64> = (0..d).map(|_| (2.0 * (t.rng.random::<f64>() - 0.5)).exp()).collect();
    let mut x = g * ComplexMatrix::from_diagonal(&scales);
    if d > 1 && t.rng.random_bool(0.25) {
        let mut proj = vec![1.0; d];
        proj[d - 1] = 0.0;
        x = x * ComplexMatrix::from_diagonal(&proj);
    }
    t.matrix(&x);
    x
}

fn faithful_state(t: &mut Trial<'_>, d: usize) -> FaithfulState {
    let s = sample_faithful_state(d, &mut t.rng);
    t.state(&s);
    s
}

fn schatten_trial(t: &mut Trial<'_>) -> Result<()> {
    let d = t.dim;
    let x = test_matrix(t);
    let y = test_matrix(t);
    let u = haar_unitary(d, &mut t.rng);
    let v = haar_unitary(d, &mut t.rng);
    t.matrix(&u);
    t.matrix(&v);
    let sx = singular_values(&x)?;
    let sy = singular_values(&y)?;
    let ssum = singular_values(&(&x + &y))?;
    let sprod = singular_values(&(&x * &y))?;
    let srot = singular_values(&(&u * &x * &v))?;
    let sxx = singular_values(&(x.adjoint() * &x))?;
    let sxx2 = singular_values(&(&x * x.adjoint()))?;
    let grid = t.cfg.p_grid.clone();

    for &p in &grid {
        let nx = norm_from_singular_values(&sx, p);
        let ny = norm_from_singular_values(&sy, p);
        let ns = norm_from_singular_values(&ssum, p);
        if p.value() < 1.0 {
            let q = p.value();
            let (a, b, c) = (nx.powf(q), ny.powf(q), ns.powf(q));
            t.record("quasi_triangle", rel_excess(c, a + b));
        } else {
            t.record("triangle", rel_excess(ns, nx + ny));
        }
        let two_p = PExponent::of(2.0 * p.value());
        let n2p = norm_from_singular_values(&sx, two_p);
        t.record("two_p_identity", rel(n2p * n2p, norm_from_singular_values(&sxx, p)));
        t.record("two_p_identity", rel(n2p * n2p, norm_from_singular_values(&sxx2, p)));
        t.record("unitary_invariance", rel(norm_from_singular_values(&srot, p), nx));

        for &q in &grid {
            let r = PExponent::from_reciprocal(p.reciprocal() + q.reciprocal())?;
            let lhs = norm_from_singular_values(&sprod, r);
            let rhs = nx * norm_from_singular_values(&sy, q);
            t.record("holder", rel_excess(lhs, rhs));
        }
    }

    let lambda = t.rng.random_range(0.1..0.9);
    t.scalar(lambda);
    let (g, h) = factorize(&x, lambda)?;
    t.record("factorization", (&g * &h).max_abs_diff(&x) / x.max_abs());
    for &r in &grid {
        let nr = norm_from_singular_values(&sx, r);
        let ng = schatten_norm(&g, PExponent::of(r.value() / (1.0 - lambda)))?;
        let nh = schatten_norm(&h, PExponent::of(r.value() / lambda))?;
        t.record("factorization", rel(ng, nr.powf(1.0 - lambda)));
        t.record("factorization", rel(nh, nr.powf(lambda)));
    }
    Ok(())
}

fn weighted_trial(t: &mut Trial<'_>) -> Result<()> {
    let sigma = faithful_state(t, t.dim);
    let ctx = WeightedContext::new(sigma);
    let x = test_matrix(t);
    let mut grid = t.cfg.p_grid.clone();
    grid.sort_by(|a, b| a.value().total_cmp(&b.value()));
    grid.dedup();
    let norms = grid
        .iter()
        .map(|&p| ctx.weighted_norm(&x, p))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            t.record("embedding_monotonicity", rel_excess(norms[i], norms[j]));
            for theta in THETAS {
                let pt = p_theta(grid[i], grid[j], theta);
                let lhs = ctx.weighted_norm(&x, pt)?;
                let rhs = norms[i].powf(1.0 - theta) * norms[j].powf(theta);
                t.record("interpolation", rel_excess(lhs, rhs));
            }
        }
    }
    Ok(())
}

fn modular_trial(t: &mut Trial<'_>) -> Result<()> {
    let sigma = faithful_state(t, t.dim);
    let ctx = WeightedContext::new(sigma.clone());
    let x = test_matrix(t);
    let s = t.rng.random_range(-3.0..3.0);
    t.scalar(s);
    for p in t.finite_grid() {
        let lhs = &x * sigma.real_power(1.0 / p);
        let scale = operator_norm(&lhs)?;
        for eta in [0.0, 0.4, 1.0] {
            let flowed = ctx.modular_flow(&x, c64(0.0, (1.0 - eta) / p))?;
            let rhs = sigma.real_power((1.0 - eta) / p) * flowed * sigma.real_power(eta / p);
            t.record("flow_identity", operator_norm(&(&lhs - &rhs))? / scale);
        }

        let pe = PExponent::of(p);
        let before = singular_values(&ctx.embed(&x, pe))?;
        let after = singular_values(&ctx.embed(&ctx.modular_flow(&x, c64(s, 0.0))?, pe))?;
        let spread = before.iter().zip(&after).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        t.record("flow_invariance", spread / before[0]);
    }
    Ok(())
}

fn faithful_psd(t: &mut Trial<'_>) -> HermitianMatrix {
    let a = random_psd(t.dim, 0.1, &mut t.rng);
    t.matrix(a.as_matrix());
    a
}

fn three_lines_trial(t: &mut Trial<'_>) -> Result<()> {
    let sigma = faithful_state(t, t.dim);
    let ctx = WeightedContext::new(sigma);
    let x = test_matrix(t);
    let a = faithful_psd(t);
    let b = test_matrix(t);
    let (p0, p1) = t.exponent_pair();
    let grid = default_t_grid();

    let constant = AnalyticFamily::constant(x.clone());
    let product = AnalyticFamily::product(vec![
        AnalyticFamily::power(a, Affine::identity())?,
        AnalyticFamily::constant(b),
    ]);
    for theta in THETAS {
        let rep = three_lines_check(&constant, Weighting::State(&ctx), p0, p1, theta, &grid)?;
        t.record("constant", certificate_violation(&rep));
        let rep = three_lines_check(&product, Weighting::Trace, p0, p1, theta, &grid)?;
        t.record("power_product", certificate_violation(&rep));

        let witness = ctx.extremal_witness(&x, p0, p1, theta)?;
        let rep = three_lines_check(&witness, Weighting::Trace, p0, p1, theta, &grid)?;
        let v = certificate_violation(&rep);
        t.record("witness_bound", v);
        t.record("witness_tightness", -v);
    }
    Ok(())
}

fn witness_trial(t: &mut Trial<'_>) -> Result<()> {
    let sigma = faithful_state(t, t.dim);
    let ctx = WeightedContext::new(sigma);
    let x = test_matrix(t);
    let (p0, p1) = t.exponent_pair();
    for theta in THETAS {
        let pt = p_theta(p0, p1, theta);
        let y = ctx.embed(&x, pt);
        let n = schatten_norm(&y, pt)?;
        let w = ctx.extremal_witness(&x, p0, p1, theta)?;
        t.record("reassembly", (w.evaluate(c64(theta, 0.0))? - &y).frobenius() / y.frobenius());

        for (k, pk) in [(0.0, p0), (1.0, p1)] {
            let target = n.powf(pt.value() * pk.reciprocal());
            let norms = [-2.0, -0.5, 0.0, 1.0, 3.0]
                .iter()
                .map(|&s| schatten_norm(&w.evaluate(c64(k, s))?, pk))
                .collect::<Result<Vec<_>>>()?;
            for &m in &norms {
                t.record("boundary_norm", rel(m, target));
            }
            let hi = norms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = norms.iter().copied().fold(f64::INFINITY, f64::min);
            t.record("t_independence", (hi - lo) / hi);
        }
    }
    Ok(())
}

fn hirschman_trial(t: &mut Trial<'_>) -> Result<()> {
    let quad = t.cfg.quadrature.spec();
    if t.index == 0 {
        for theta in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let (mass, _) = kernel_mass(theta, &quad)?;
            t.record("kernel_mass", (mass - 1.0).abs());
        }
        t.record("kernel_center", (hirschman_kernel(0.5, 0.0) - 1.0).abs());
    }
    let x = test_matrix(t);
    let a1 = faithful_psd(t);
    let a2 = faithful_psd(t);
    let grid = t.cfg.p_grid.clone();
    let p0 = *grid.choose(&mut t.rng).expect("nonempty grid");
    let p1 = *grid.choose(&mut t.rng).expect("nonempty grid");
    let theta = *THETAS.choose(&mut t.rng).expect("nonempty");
    t.scalar(p0.value());
    t.scalar(p1.value());
    t.scalar(theta);

    let rep = hirschman_check(&AnalyticFamily::constant(x.clone()), p0, p1, theta, &quad)?;
    let expected = (1.0 - theta) * schatten_norm(&x, p0)?.ln() + theta * schatten_norm(&x, p1)?.ln();
    t.record("constant_collapse", (rep.rhs - expected).abs().max(certificate_violation(&rep)));

    let single = AnalyticFamily::power(a1.clone(), Affine::identity())?;
    let rep = hirschman_check(&single, p0, p1, theta, &quad)?;
    t.record("single_power", abs_violation(&rep));

    let product = AnalyticFamily::product(vec![
        AnalyticFamily::power(a1, Affine::identity())?,
        AnalyticFamily::power(a2, Affine::identity())?,
    ]);
    let rep = hirschman_check(&product, p0, p1, theta, &quad)?;
    t.record("power_product", abs_violation(&rep));
    Ok(())
}

fn product_power_trial(t: &mut Trial<'_>) -> Result<()> {
    let quad = t.cfg.quadrature.spec();
    let combos: Vec<(usize, f64)> = [1usize, 2, 3]
        .iter()
        .flat_map(|&n| [0.3, 0.5, 1.0].into_iter().map(move |r| (n, r)))
        .collect();
    let (n, r) = combos[t.index % combos.len()];
    let factors: Vec<HermitianMatrix> = (0..n).map(|_| faithful_psd(t)).collect();
    let diag: Vec<HermitianMatrix> = (0..n)
        .map(|_| {
            let v: Vec<f64> = random_distribution(t.dim, 0.05, &mut t.rng)
                .into_iter()
                .map(|x| x * t.dim as f64)
                .collect();
            t.scalar(v[0]);
            HermitianMatrix::from_diagonal(&v)
        })
        .collect();
    for p in t.cfg.p_grid.clone() {
        let rep = product_power_check(&factors, r, p, &quad)?;
        t.record("inequality", abs_violation(&rep));
        if n == 1 {
            t.record("single_factor", rep.slack.abs());
        }
        let rep = product_power_check(&diag, r, p, &quad)?;
        t.record("commuting", rep.slack.abs());
    }
    Ok(())
}

fn renyi_trial(t: &mut Trial<'_>) -> Result<()> {
    let d = t.dim;
    let tol = t.tol("monotonicity");
    let grid = t.finite_grid();
    let rho = faithful_state(t, d);
    let sigma = faithful_state(t, d);
    let pair = StatePair::new(rho, sigma)?;
    let rep = monotonicity_check_with_tolerance(&pair, &grid, tol)?;
    for e in &rep.entries {
        t.record("monotonicity", -e.slack);
    }

    let r = random_distribution(d, 1e-3, &mut t.rng);
    let s = random_distribution(d, 1e-3, &mut t.rng);
    r.iter().chain(&s).for_each(|&v| t.scalar(v));
    let classical = StatePair::new(FaithfulState::from_diagonal(&r)?, FaithfulState::from_diagonal(&s)?)?;
    for &p in &grid {
        let q: f64 = r.iter().zip(&s).map(|(a, b)| a.powf(p) * b.powf(1.0 - p)).sum();
        let want = q.ln() / (p - 1.0);
        let got = sandwiched_divergence(&classical, p)?;
        t.record("classical", (got - want).abs() / want.abs().max(1e-3));
    }

    let other = StatePair::new(faithful_state(t, 2), faithful_state(t, 2))?;
    let joint = pair.tensor(&other)?;
    let u = haar_unitary(d, &mut t.rng);
    t.matrix(&u);
    let rotated = pair.conjugate(&u)?;
    for &p in &grid {
        let base = sandwiched_divergence(&pair, p)?;
        let sum = base + sandwiched_divergence(&other, p)?;
        let j = sandwiched_divergence(&joint, p)?;
        t.record("tensor_additivity", (j - sum).abs() / sum.abs().max(1.0));
        let c = sandwiched_divergence(&rotated, p)?;
        t.record("unitary_covariance", (c - base).abs() / base.abs().max(1.0));
    }
    Ok(())
}

/// Random partition of `0..d` into nonempty blocks.
fn random_blocks(t: &mut Trial<'_>, d: usize) -> Vec<Vec<usize>> {
    let k = t.rng.random_range(1..=d);
    let mut labels: Vec<usize> = (0..d).map(|_| t.rng.random_range(0..k)).collect();
    // every label in 0..k used at least once
    let mut idx: Vec<usize> = (0..d).collect();
    idx.shuffle(&mut t.rng);
    for (label, &i) in idx.iter().take(k).enumerate() {
        labels[i] = label;
    }
    let blocks: Vec<Vec<usize>> = (0..k)
        .map(|b| (0..d).filter(|&i| labels[i] == b).collect())
        .collect();
    for b in &blocks {
        b.iter().for_each(|&i| t.scalar(i as f64));
        t.scalar(-1.0);
    }
    blocks
}

/// Faithful state that is block diagonal, with dense blocks, in a random
/// orthonormal basis; returns it with the matching pinching.
fn block_pinching(t: &mut Trial<'_>, d: usize) -> Result<(FaithfulState, ConditionalExpectation)> {
    let blocks = random_blocks(t, d);
    let basis = haar_unitary(d, &mut t.rng);
    t.matrix(&basis);
    let mut inner = vec![c64(0.0, 0.0); d * d];
    for b in &blocks {
        let w = random_psd(b.len(), 0.05 * d as f64, &mut t.rng);
        for (i, &bi) in b.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                inner[bi * d + bj] = w.as_matrix().get(i, j);
            }
        }
    }
    let inner = ComplexMatrix::from_row_major(d, &inner)?;
    let sigma = FaithfulState::normalized(&(&basis * inner * basis.adjoint()))?;
    t.state(&sigma);
    let e = conditional_expectation(SubalgebraSpec::BlockPartition { blocks, basis }, &sigma)?;
    Ok((sigma, e))
}

/// `(dim_a, dim_b)` for a tensor-factor case: a nontrivial factorization of
/// `d` when one exists, `(d, 2)` otherwise.
fn tensor_shape(d: usize) -> (usize, usize) {
    (2..d)
        .find(|a| d % a == 0)
        .map(|a| (a, d / a))
        .unwrap_or((d, 2))
}

fn tensor_slice(t: &mut Trial<'_>, d: usize) -> Result<(FaithfulState, ConditionalExpectation)> {
    let (da, db) = tensor_shape(d);
    let sa = faithful_state(t, da);
    let sb = faithful_state(t, db);
    let sigma = sa.tensor(&sb)?;
    let e = conditional_expectation(SubalgebraSpec::TensorFactor { dim_a: da, dim_b: db }, &sigma)?;
    Ok((sigma, e))
}

/// Retries `f` on fresh samples when a restriction loses faithfulness.
fn resampled<T>(t: &mut Trial<'_>, mut f: impl FnMut(&mut Trial<'_>) -> Result<T>) -> Result<T> {
    let mut last = None;
    for _ in 0..RESAMPLE_LIMIT {
        match f(t) {
            Err(e @ Error::FaithfulnessLost { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

fn dpi_violation(t: &mut Trial<'_>, sigma: &FaithfulState, e: &ConditionalExpectation, check: &str) -> Result<()> {
    let tol = t.tol(check);
    let grid = t.finite_grid();
    let rep = resampled(t, |t| {
        let rho = faithful_state(t, sigma.dim());
        dpi_check_with_tolerance(&StatePair::new(rho, sigma.clone())?, e, &grid, tol)
    })?;
    for entry in &rep.entries {
        t.record(check, -entry.slack);
    }
    Ok(())
}

fn dpi_trial(t: &mut Trial<'_>) -> Result<()> {
    let d = t.dim;
    let (sigma, e) = block_pinching(t, d)?;
    dpi_violation(t, &sigma, &e, "dpi_pinching")?;

    let (sigma_t, e_t) = tensor_slice(t, d)?;
    dpi_violation(t, &sigma_t, &e_t, "dpi_tensor")?;

    let rho = faithful_state(t, d);
    let pair = StatePair::new(rho, sigma.clone())?;
    for p in t.finite_grid() {
        t.record("nonnegativity", -sandwiched_divergence(&pair, p)?);
    }

    let s = e.dpi_map()?;
    let dst = WeightedContext::new(e.restricted_sigma()?);
    let unital = s.apply(&ComplexMatrix::identity(d))?.max_abs_diff(&ComplexMatrix::identity(dst.dim()));
    t.record("dpi_map_contract", unital);
    let src = WeightedContext::new(sigma);
    let one = PExponent::of(1.0);
    let seed = t.rng.random::<u64>();
    let ratio = operator_interp_norm(&s, &src, &dst, one, one, 4, seed)?;
    t.record("dpi_map_contract", ratio - 1.0);
    Ok(())
}

fn equality_case(t: &mut Trial<'_>, e: &ConditionalExpectation, check: &str) -> Result<()> {
    let tol = t.tol(check);
    let grid = t.finite_grid();
    let d = e.sigma().dim();
    let rep = resampled(t, |t| {
        let omega = faithful_state(t, d);
        let rho_n = FaithfulState::new(HermitianMatrix::symmetrize(&e.compress(omega.matrix())?)).map_err(
            |err| match err {
                Error::NotFaithful { min_eig } => Error::FaithfulnessLost { min_eig },
                other => other,
            },
        )?;
        let pair_n = StatePair::new(rho_n, e.restricted_sigma()?)?;
        equality_condition_check_with_tolerance(&pair_n, e, &grid, tol)
    })?;
    for entry in &rep.entries {
        t.record(check, entry.slack);
    }
    Ok(())
}

fn equality_trial(t: &mut Trial<'_>) -> Result<()> {
    let d = t.dim;
    let (_, e) = block_pinching(t, d)?;
    equality_case(t, &e, "equality_pinching")?;
    let (_, e) = tensor_slice(t, d)?;
    equality_case(t, &e, "equality_tensor")
}

fn riesz_thorin_trial(t: &mut Trial<'_>) -> Result<()> {
    let d = t.dim;
    let (sigma, e) = block_pinching(t, d)?;
    let src = WeightedContext::new(sigma);
    let maps = [
        (e.as_operator_map()?, WeightedContext::new(src.state().clone())),
        (e.dpi_map()?, WeightedContext::new(e.restricted_sigma()?)),
    ];
    let (one, inf) = (PExponent::of(1.0), PExponent::Infinity);
    for (map, dst) in &maps {
        for p in [one, inf] {
            let seed = t.rng.random::<u64>();
            let ratio = operator_interp_norm(map, &src, dst, p, p, 4, seed)?;
            t.record("endpoint", ratio - 1.0);
        }
        for p in t.cfg.p_grid.clone() {
            for _ in 0..3 {
                let x = test_matrix(t);
                let lhs = dst.weighted_norm(&map.apply(&x)?, p)?;
                let rhs = src.weighted_norm(&x, p)?;
                t.record("interpolated", rel_excess(lhs, rhs));
            }
        }
    }
    Ok(())
}
