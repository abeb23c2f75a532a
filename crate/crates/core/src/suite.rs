//! Seeded property suite over every module.
//!
//! Each property runs once per trial with its own generator, seeded from
//! `(seed, property name, trial index)`, so outcomes do not depend on thread
//! scheduling. Tolerances are stated at the nominal `1e-9` and scale with the
//! configured `tol`; a tolerance that is too tight shows up as failures with
//! magnitudes rather than as an error.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rand::Rng;

use crate::commutation::{
    classify_pair, detect_factor, measurement_map_residual, solve_lambda_commutant,
    spectrum_rotation_check, spectrum_swap_check, FactorStatus,
};
use crate::error::{Error, Result};
use crate::families::{chained_normal, ginibre_pair, hermitian_pair, lambda_pair, norm_condition_pair};
use crate::intertwiner::{construct_intertwiner, gudder_nagy_check};
use crate::linalg::{classify_structure, eigenvalues, hermitian_eig, polar, svd};
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::pair::OperatorPair;
use crate::random::{ginibre, hermitian, psd, rng_from_seed, trial_seed, unitary, SeededRng};
use crate::realizations::{
    builtin_realizations, clock_shift_pair, jordan_pair, q_bracket, uq_sl2_module, verify_uq_relations,
    UqSl2Module,
};
use crate::resolvent::{
    exact_projection, resolvent_norm_check, stone_projection, transported_integrand_bound,
    StoneQuadratureSpec,
};

/// Tolerance at which the property thresholds are stated.
pub const NOMINAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub max_dim: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            tol: NOMINAL_TOL,
            max_dim: 8,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_dim < 2 {
            return Err(Error::InvalidParameter(format!(
                "max_dim must be at least 2, got {}",
                self.max_dim
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub property_name: String,
    pub trial: usize,
    /// The failing sub-check.
    pub check: String,
    pub magnitude: f64,
    pub threshold: f64,
    pub counterexample: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertySummary {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub config: SuiteConfig,
    pub passed: usize,
    pub failed: usize,
    pub properties: Vec<PropertySummary>,
    pub failures: Vec<Failure>,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

struct Ctx {
    rng: SeededRng,
    tol: f64,
    max_dim: usize,
}

impl Ctx {
    /// Threshold for a bound stated at the nominal tolerance.
    fn thr(&self, nominal: f64) -> f64 {
        nominal * (self.tol / NOMINAL_TOL)
    }

    fn dim(&mut self, lo: usize) -> usize {
        self.rng.random_range(lo..=self.max_dim)
    }
}

/// The worst sub-check of one trial, measured as `magnitude / threshold`.
struct Evidence {
    counterexample: Value,
    worst: Option<(String, f64, f64)>,
}

impl Evidence {
    fn new(counterexample: Value) -> Self {
        Self {
            counterexample,
            worst: None,
        }
    }

    fn ratio(magnitude: f64, threshold: f64) -> f64 {
        if magnitude.is_nan() {
            f64::INFINITY
        } else if magnitude <= threshold {
            if threshold > 0.0 {
                magnitude / threshold
            } else {
                0.0
            }
        } else if threshold > 0.0 {
            magnitude / threshold
        } else {
            f64::INFINITY
        }
    }

    fn check(&mut self, name: &str, magnitude: f64, threshold: f64) {
        let r = Self::ratio(magnitude, threshold);
        let replace = match &self.worst {
            None => true,
            Some((_, m, t)) => r > Self::ratio(*m, *t),
        };
        if replace {
            self.worst = Some((name.to_string(), magnitude, threshold));
        }
    }

    fn require(&mut self, name: &str, holds: bool) {
        self.check(name, if holds { 0.0 } else { 1.0 }, 0.0);
    }

    fn failure(self, property: &str, trial: usize) -> Option<Failure> {
        let (check, magnitude, threshold) = self.worst?;
        if magnitude <= threshold {
            return None;
        }
        Some(Failure {
            property_name: property.to_string(),
            trial,
            check,
            magnitude,
            threshold,
            counterexample: self.counterexample,
        })
    }
}

type Verdict = Result<Option<Evidence>>;

struct Property {
    name: &'static str,
    /// Deterministic properties run a single trial.
    once: bool,
    run: fn(&mut Ctx) -> Verdict,
}

const PROPERTIES: &[Property] = &[
    Property { name: "matrix-core/adjoint-involution", once: false, run: adjoint_involution },
    Property { name: "matrix-core/product-spectra", once: false, run: product_spectra },
    Property { name: "matrix-core/polar-parts", once: false, run: polar_parts },
    Property { name: "matrix-core/hermitian-eig-reconstruction", once: false, run: hermitian_reconstruction },
    Property { name: "matrix-core/svd-reconstruction", once: false, run: svd_reconstruction },
    Property { name: "matrix-core/structure-implications", once: false, run: structure_implications },
    Property { name: "commutation/scale-invariance", once: false, run: scale_invariance },
    Property { name: "commutation/swap-inverts-factor", once: false, run: swap_inverts_factor },
    Property { name: "commutation/lambda-spectra", once: false, run: lambda_spectra },
    Property { name: "commutation/non-unimodular-nilpotent", once: false, run: non_unimodular_nilpotent },
    Property { name: "commutation/psd-anticommutant-annihilates", once: false, run: psd_anticommutant },
    Property { name: "commutation/commutant-residual", once: false, run: commutant_residual },
    Property { name: "commutation/measurement-maps", once: false, run: measurement_maps },
    Property { name: "intertwiner/gudder-nagy", once: false, run: gudder_nagy },
    Property { name: "intertwiner/construction", once: false, run: intertwiner_construction },
    Property { name: "intertwiner/commutes-with-product", once: false, run: intertwiner_commutes },
    Property { name: "intertwiner/compression", once: false, run: compression },
    Property { name: "intertwiner/positive-commutes", once: false, run: positive_commutes },
    Property { name: "realizations/declared-factor", once: false, run: declared_factor },
    Property { name: "realizations/builtins", once: true, run: builtins },
    Property { name: "realizations/clock-shift", once: false, run: clock_shift },
    Property { name: "realizations/uq-sl2", once: false, run: uq_sl2 },
    Property { name: "realizations/q-bracket-symmetry", once: false, run: q_bracket_symmetry },
    Property { name: "realizations/jordan-is-jantzen", once: false, run: jordan_is_jantzen },
    Property { name: "resolvent/exact-projection", once: false, run: projection_properties },
    Property { name: "resolvent/stone-first-order", once: true, run: stone_first_order },
    Property { name: "resolvent/resolvent-identity", once: false, run: resolvent_identity },
    Property { name: "resolvent/norm-equals-inverse-distance", once: false, run: resolvent_norm },
    Property { name: "resolvent/transported-bound", once: false, run: transported_bound },
];

/// Names of every property, in run order.
pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|p| p.name).collect()
}

/// Stable 64-bit FNV-1a hash, used to give each property its own stream.
fn salt(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    config.validate()?;
    let jobs: Vec<(usize, usize)> = PROPERTIES
        .iter()
        .enumerate()
        .flat_map(|(p, prop)| {
            let trials = if prop.once { 1 } else { config.trials };
            (0..trials).map(move |t| (p, t))
        })
        .collect();

    let results: Vec<(usize, usize, Option<Failure>)> = jobs
        .par_iter()
        .map(|&(p, t)| {
            let prop = &PROPERTIES[p];
            let mut ctx = Ctx {
                rng: rng_from_seed(trial_seed(config.seed, salt(prop.name), t as u64)),
                tol: config.tol,
                max_dim: config.max_dim,
            };
            let failure = match (prop.run)(&mut ctx) {
                Ok(Some(evidence)) => evidence.failure(prop.name, t),
                Ok(None) => None,
                Err(e) => Some(Failure {
                    property_name: prop.name.to_string(),
                    trial: t,
                    check: format!("error: {e}"),
                    magnitude: f64::INFINITY,
                    threshold: 0.0,
                    counterexample: Value::Null,
                }),
            };
            (p, t, failure)
        })
        .collect();

    let mut properties: Vec<PropertySummary> = PROPERTIES
        .iter()
        .map(|p| PropertySummary {
            name: p.name.to_string(),
            passed: 0,
            failed: 0,
        })
        .collect();
    let mut failures = Vec::new();
    for (p, _, failure) in results {
        match failure {
            Some(f) => {
                properties[p].failed += 1;
                failures.push(f);
            }
            None => properties[p].passed += 1,
        }
    }
    Ok(SuiteOutcome {
        config: *config,
        passed: properties.iter().map(|p| p.passed).sum(),
        failed: properties.iter().map(|p| p.failed).sum(),
        properties,
        failures,
    })
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).unwrap_or(Value::Null)
}

fn relative(m: &ComplexMatrix) -> f64 {
    m.frobenius_norm().max(1.0)
}

// matrix-core

fn adjoint_involution(ctx: &mut Ctx) -> Verdict {
    let (r, c) = (ctx.dim(1), ctx.dim(1));
    let m = ginibre(&mut ctx.rng, r, c);
    let mut ev = Evidence::new(json!({ "M": to_json(&m) }));
    ev.check("‖(M*)* − M‖_F", m.adjoint().adjoint().distance(&m), 0.0);
    Ok(Some(ev))
}

fn product_spectra(ctx: &mut Ctx) -> Verdict {
    let n = ctx.dim(2);
    let p = ginibre_pair(&mut ctx.rng, n);
    let r = spectrum_swap_check(&p, f64::INFINITY)?;
    let mut ev = Evidence::new(to_json(&p));
    ev.check("max |σ(AB) − σ(BA)| matched", r.max_pair_distance, ctx.thr(1e-7));
    Ok(Some(ev))
}

fn polar_parts(ctx: &mut Ctx) -> Verdict {
    let n = ctx.dim(1);
    let rank = ctx.rng.random_range(1..=n);
    let c = ginibre(&mut ctx.rng, n, rank).dot(&ginibre(&mut ctx.rng, rank, n));
    let parts = polar(&c, ctx.tol)?;
    let mut ev = Evidence::new(json!({ "C": to_json(&c) }));
    ev.check("‖V|C| − C‖_F", parts.v.dot(&parts.abs).distance(&c), ctx.thr(1e-9) * relative(&c));
    ev.check("‖P² − P‖_F", parts.p.dot(&parts.p).distance(&parts.p), ctx.thr(1e-9));
    ev.check("‖P − P*‖_F", parts.p.hermitian_deviation(), ctx.thr(1e-9));
    ev.check("rank", (parts.rank as f64 - rank as f64).abs(), 0.0);
    let (values, _) = hermitian_eig(&parts.abs, f64::INFINITY)?;
    ev.check("−λ_min(|C|)", -values[0], ctx.thr(1e-9) * relative(&c));
    Ok(Some(ev))
}

fn hermitian_reconstruction(ctx: &mut Ctx) -> Verdict {
    let n = ctx.dim(1);
    let m = hermitian(&mut ctx.rng, n);
    let (values, u) = hermitian_eig(&m, ctx.tol)?;
    let d = ComplexMatrix::from_real_diag(&values);
    let mut ev = Evidence::new(json!({ "M": to_json(&m) }));
    ev.check("‖UDU* − M‖_F", u.dot(&d).dot(&u.adjoint()).distance(&m), ctx.thr(1e-9) * relative(&m));
    ev.require("ascending", values.windows(2).all(|w| w[0] <= w[1]));
    Ok(Some(ev))
}

fn svd_reconstruction(ctx: &mut Ctx) -> Verdict {
    let (r, c) = (ctx.dim(1), ctx.dim(1));
    let m = ginibre(&mut ctx.rng, r, c);
    let s = svd(&m)?;
    let mut ev = Evidence::new(json!({ "M": to_json(&m) }));
    ev.check("‖WΣX* − M‖_F", s.reconstruct().distance(&m), ctx.thr(1e-9) * relative(&m));
    ev.require(
        "descending non-negative",
        s.singulars.windows(2).all(|w| w[0] >= w[1]) && s.singulars.iter().all(|&x| x >= 0.0),
    );
    Ok(Some(ev))
}

fn structure_implications(ctx: &mut Ctx) -> Verdict {
    let n = ctx.dim(1);
    let m = match ctx.rng.random_range(0..5) {
        0 => psd(&mut ctx.rng, n, n),
        1 => {
            let rank = ctx.rng.random_range(1..=n);
            psd(&mut ctx.rng, n, rank)
        }
        2 => unitary(&mut ctx.rng, n),
        3 => hermitian(&mut ctx.rng, n),
        _ => ginibre(&mut ctx.rng, n, n),
    };
    let f = classify_structure(&m, ctx.tol)?;
    let mut ev = Evidence::new(json!({ "M": to_json(&m), "flags": to_json(&f) }));
    ev.require("PD ⇒ PSD", !f.positive_definite || f.positive_semidefinite);
    ev.require("PSD ⇒ Hermitian", !f.positive_semidefinite || f.hermitian);
    ev.require("unitary ⇒ invertible", !f.unitary || f.invertible);
    Ok(Some(ev))
}

// commutation

fn structured_or_generic(ctx: &mut Ctx) -> OperatorPair {
    if ctx.rng.random_bool(0.7) {
        lambda_pair(&mut ctx.rng, ctx.max_dim)
    } else {
        let n = ctx.dim(2);
        ginibre_pair(&mut ctx.rng, n)
    }
}

fn scale_invariance(ctx: &mut Ctx) -> Verdict {
    let p = structured_or_generic(ctx);
    let scalar = |rng: &mut SeededRng| C64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..6.3));
    let (alpha, beta) = (scalar(&mut ctx.rng), scalar(&mut ctx.rng));
    let q = p.scaled(alpha, beta);
    let r = detect_factor(&p, ctx.tol)?;
    let s = detect_factor(&q, ctx.tol)?;
    let mut ev = Evidence::new(json!({ "pair": to_json(&p), "alpha": alpha, "beta": beta }));
    ev.require("same status", r.status == s.status);
    match (r.lambda_hat, s.lambda_hat) {
        (Some(l), Some(m)) => ev.check("|λ̂ − λ̂'|", (l - m).norm(), ctx.thr(1e-12) * l.norm().max(1.0)),
        (l, m) => ev.require("both absent", l.is_none() && m.is_none()),
    }
    Ok(Some(ev))
}

fn swap_inverts_factor(ctx: &mut Ctx) -> Verdict {
    let p = lambda_pair(&mut ctx.rng, ctx.max_dim);
    let r = detect_factor(&p, ctx.tol)?;
    let (FactorStatus::Unique, Some(l)) = (r.status, r.lambda_hat) else {
        return Ok(None);
    };
    let s = detect_factor(&p.swapped(), ctx.tol)?;
    let mut ev = Evidence::new(to_json(&p));
    ev.require("swapped is UNIQUE", s.status == FactorStatus::Unique);
    if let Some(m) = s.lambda_hat {
        ev.check("|λ̂(B,A) − 1/λ̂(A,B)|", (m - l.inv()).norm(), ctx.thr(1e-10) * l.inv().norm().max(1.0));
    }
    Ok(Some(ev))
}

fn lambda_spectra(ctx: &mut Ctx) -> Verdict {
    let p = lambda_pair(&mut ctx.rng, ctx.max_dim);
    let r = detect_factor(&p, ctx.tol)?;
    let (FactorStatus::Unique, Some(l)) = (r.status, r.lambda_hat) else {
        return Ok(None);
    };
    if r.residual > 1e-10 {
        return Ok(None);
    }
    let ab = p.ab();
    let threshold = ctx.thr(1e-7) * relative(&ab);
    let swap = spectrum_swap_check(&p, threshold)?;
    let rot = spectrum_rotation_check(&eigenvalues(&ab)?, l, threshold);
    let mut ev = Evidence::new(to_json(&p));
    ev.check("σ(AB) vs σ(BA)", swap.max_pair_distance, threshold);
    ev.check("σ(AB) vs λσ(AB)", rot.max_pair_distance, threshold);
    Ok(Some(ev))
}

fn non_unimodular_nilpotent(ctx: &mut Ctx) -> Verdict {
    let p = lambda_pair(&mut ctx.rng, ctx.max_dim);
    let r = detect_factor(&p, ctx.tol)?;
    let (FactorStatus::Unique, Some(l)) = (r.status, r.lambda_hat) else {
        return Ok(None);
    };
    if (l.norm() - 1.0).abs() <= 1e-6 || r.ab_norm <= 1e-6 {
        return Ok(None);
    }
    let radius = eigenvalues(&p.ab())?.spectral_radius();
    let mut ev = Evidence::new(to_json(&p));
    ev.check("ρ(AB)", radius, ctx.thr(1e-7) * r.ab_norm);
    Ok(Some(ev))
}

fn psd_anticommutant(ctx: &mut Ctx) -> Verdict {
    let n = ctx.rng.random_range(1..=ctx.max_dim.min(6));
    let rank = ctx.rng.random_range(1..=n);
    let a = psd(&mut ctx.rng, n, rank);
    let basis = solve_lambda_commutant(&a, -ONE, ctx.tol)?;
    let mut ev = Evidence::new(json!({ "A": to_json(&a) }));
    for b in &basis {
        ev.check("‖AB‖_F", a.dot(b).frobenius_norm(), ctx.thr(1e-9));
    }
    ev.check("basis size ≤ (n − rank)²", basis.len() as f64, ((n - rank) * (n - rank)) as f64);
    Ok(Some(ev))
}

fn commutant_residual(ctx: &mut Ctx) -> Verdict {
    let (a, l) = chained_normal(&mut ctx.rng, ctx.max_dim);
    let basis = solve_lambda_commutant(&a, l, ctx.tol)?;
    let mut ev = Evidence::new(json!({ "A": to_json(&a), "lambda": l }));
    ev.require("non-empty basis", !basis.is_empty());
    for b in &basis {
        let residual = a.dot(b).distance(&b.dot(&a).scale(l));
        ev.check(
            "‖AB − λBA‖_F",
            residual,
            ctx.thr(1e-8) * (a.frobenius_norm() * b.frobenius_norm()).max(1.0),
        );
    }
    Ok(Some(ev))
}

fn measurement_maps(ctx: &mut Ctx) -> Verdict {
    let p = lambda_pair(&mut ctx.rng, ctx.max_dim);
    let r = detect_factor(&p, ctx.tol)?;
    let (FactorStatus::Unique, Some(l)) = (r.status, r.lambda_hat) else {
        return Ok(None);
    };
    if (l.norm() - 1.0).abs() > 1e-9 || r.residual > 1e-10 {
        return Ok(None);
    }
    let seed = ctx.rng.random();
    let mut ev = Evidence::new(json!({ "pair": to_json(&p), "x_seed": seed }));
    ev.check("‖ABXBA − BAXAB‖ relative", measurement_map_residual(&p, 5, seed), ctx.thr(1e-9));
    Ok(Some(ev))
}

// intertwiner

fn gudder_nagy(ctx: &mut Ctx) -> Verdict {
    let p = if ctx.rng.random_bool(0.5) {
        let n = ctx.dim(1);
        hermitian_pair(&mut ctx.rng, n)
    } else {
        norm_condition_pair(&mut ctx.rng, ctx.max_dim)
    };
    let r = gudder_nagy_check(&p, ctx.thr(1e-8))?;
    let mut ev = Evidence::new(json!({ "pair": to_json(&p), "report": to_json(&r) }));
    ev.require("AB²A = BA²B ⇔ (AB² = B²A ∧ BA² = A²B)", r.consistent);
    Ok(Some(ev))
}

fn intertwiner_construction(ctx: &mut Ctx) -> Verdict {
    let p = norm_condition_pair(&mut ctx.rng, ctx.max_dim);
    let w = construct_intertwiner(&p, ctx.tol)?;
    let ab = p.ab();
    let mut ev = Evidence::new(to_json(&p));
    ev.check("‖U*U − I‖_F", w.residual_unitary, ctx.thr(1e-9));
    ev.check(
        "‖AB − UBA‖_F",
        ab.distance(&w.u.dot(&p.ba())),
        ctx.thr(1e-8) * relative(&ab),
    );
    ev.check("‖U − (V² + Q)‖_F", w.u.distance(&(&w.v.dot(&w.v) + &w.q)), ctx.thr(1e-9));
    ev.check("‖P + Q − I‖_F", (&w.p + &w.q).distance(&ComplexMatrix::identity(p.dim())), ctx.thr(1e-9));
    Ok(Some(ev))
}

fn intertwiner_commutes(ctx: &mut Ctx) -> Verdict {
    let p = norm_condition_pair(&mut ctx.rng, ctx.max_dim);
    let w = construct_intertwiner(&p, ctx.tol)?;
    let ab = p.ab();
    let mut ev = Evidence::new(to_json(&p));
    ev.check("‖[AB, U]‖_F", ab.commutator(&w.u).frobenius_norm(), ctx.thr(1e-8) * relative(&ab));
    Ok(Some(ev))
}

fn compression(ctx: &mut Ctx) -> Verdict {
    let p = norm_condition_pair(&mut ctx.rng, ctx.max_dim);
    let w = construct_intertwiner(&p, ctx.tol)?;
    let ab = p.ab();
    let pap = w.p.dot(p.a()).dot(&w.p);
    let pbp = w.p.dot(p.b()).dot(&w.p);
    let mut ev = Evidence::new(to_json(&p));
    ev.check("‖AB − (PAP)(PBP)‖_F", ab.distance(&pap.dot(&pbp)), ctx.thr(1e-8) * relative(&ab));
    Ok(Some(ev))
}

fn positive_commutes(ctx: &mut Ctx) -> Verdict {
    let p = norm_condition_pair(&mut ctx.rng, ctx.max_dim);
    let fa = classify_structure(p.a(), ctx.tol)?;
    let fb = classify_structure(p.b(), ctx.tol)?;
    if !(fa.positive_semidefinite || fb.positive_semidefinite) {
        return Ok(None);
    }
    let ab = p.ab();
    let mut ev = Evidence::new(to_json(&p));
    ev.check("‖AB − BA‖_F", ab.distance(&p.ba()), ctx.thr(1e-8) * relative(&ab));
    Ok(Some(ev))
}

// realizations

fn declared_factor_evidence(ctx: &Ctx, p: &OperatorPair, ev: &mut Evidence, name: &str) -> Result<()> {
    let Some(l) = p.declared_lambda() else {
        return Ok(());
    };
    let r = detect_factor(p, ctx.tol)?;
    match r.lambda_hat {
        Some(m) => ev.check(
            &format!("{name}: |λ̂ − λ|"),
            (m - l).norm(),
            ctx.thr(1e-10) * l.norm().max(1.0),
        ),
        None => ev.require(&format!("{name}: factor detected"), false),
    }
    let c = classify_pair(p, ctx.tol)?;
    ev.require(&format!("{name}: consistent"), c.consistent);
    Ok(())
}

fn declared_factor(ctx: &mut Ctx) -> Verdict {
    let p = lambda_pair(&mut ctx.rng, ctx.max_dim);
    let mut ev = Evidence::new(to_json(&p));
    declared_factor_evidence(ctx, &p, &mut ev, "pair")?;
    Ok(Some(ev))
}

fn builtins(ctx: &mut Ctx) -> Verdict {
    let mut ev = Evidence::new(Value::Null);
    for (name, spec) in builtin_realizations() {
        let p = spec.build()?;
        declared_factor_evidence(ctx, &p, &mut ev, name)?;
        if let Some(l) = p.declared_lambda() {
            let swap = spectrum_swap_check(&p, f64::INFINITY)?;
            let rot = spectrum_rotation_check(&eigenvalues(&p.ab())?, l, f64::INFINITY);
            ev.check(&format!("{name}: σ(AB) vs σ(BA)"), swap.max_pair_distance, ctx.thr(1e-9));
            ev.check(&format!("{name}: σ(AB) vs λσ(AB)"), rot.max_pair_distance, ctx.thr(1e-9));
        }
    }
    Ok(Some(ev))
}

fn clock_shift(ctx: &mut Ctx) -> Verdict {
    let n = ctx.rng.random_range(2..=ctx.max_dim.max(10));
    let p = clock_shift_pair(n)?;
    let l = p.declared_lambda().unwrap_or(ONE);
    let fa = classify_structure(p.a(), ctx.tol)?;
    let fb = classify_structure(p.b(), ctx.tol)?;
    let mut ev = Evidence::new(json!({ "n": n }));
    ev.require("A, B unitary", fa.unitary && fb.unitary);
    ev.check("|λⁿ − 1|", (l.powu(n as u32) - ONE).norm(), ctx.thr(1e-9));
    let rot = spectrum_rotation_check(&eigenvalues(p.b())?, l, f64::INFINITY);
    ev.check("σ(B) vs λσ(B)", rot.max_pair_distance, ctx.thr(1e-9));
    Ok(Some(ev))
}

fn random_q(rng: &mut SeededRng) -> C64 {
    match rng.random_range(0..3) {
        0 => C64::new(rng.random_range(1.1..2.0), 0.0),
        1 => C64::new(rng.random_range(0.5..0.9), 0.0),
        _ => C64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.3..2.8)),
    }
}

fn uq_sl2(ctx: &mut Ctx) -> Verdict {
    let n = ctx.rng.random_range(0..=10);
    let q = random_q(&mut ctx.rng);
    let eps = if ctx.rng.random_bool(0.5) { 1 } else { -1 };
    let m = uq_sl2_module(n, q, eps)?;
    let r = verify_uq_relations(&m, ctx.tol)?;
    let mut ev = Evidence::new(json!({ "n": n, "q": q, "eps": eps }));
    ev.check("KK⁻¹", r.kk_inv, ctx.thr(1e-9));
    ev.check("KEK⁻¹ = q²E", r.ke_rel, ctx.thr(1e-9));
    ev.check("KFK⁻¹ = q⁻²F", r.kf_rel, ctx.thr(1e-9));
    ev.check("EF − FE", r.ef_rel, ctx.thr(1e-9));
    let k = (n + 1) as u32;
    ev.check("‖E^{n+1}‖_F", m.e.pow(k).frobenius_norm(), ctx.thr(1e-10));
    ev.check("‖F^{n+1}‖_F", m.f.pow(k).frobenius_norm(), ctx.thr(1e-10));
    Ok(Some(ev))
}

fn q_bracket_symmetry(ctx: &mut Ctx) -> Verdict {
    let m = ctx.rng.random_range(0..=12u32);
    let q = random_q(&mut ctx.rng);
    let a = q_bracket(m, q)?;
    let b = q_bracket(m, q.inv())?;
    let mut ev = Evidence::new(json!({ "m": m, "q": q }));
    ev.check("|[m]_q − [m]_{1/q}|", (a - b).norm(), ctx.thr(1e-12) * a.norm().max(1.0));
    Ok(Some(ev))
}

fn jordan_is_jantzen(ctx: &mut Ctx) -> Verdict {
    let q = random_q(&mut ctx.rng);
    let q2 = q * q;
    let p = jordan_pair(3, q2, ZERO, ZERO, q2.inv())?;
    let m = UqSl2Module::jantzen(q)?;
    let mut ev = Evidence::new(json!({ "q": q }));
    ev.check("A vs K", p.a().distance(&m.k), ctx.thr(1e-12) * q2.norm().max(1.0));
    ev.check("B vs F", p.b().distance(&m.f), 0.0);
    Ok(Some(ev))
}

// resolvent

fn projection_properties(ctx: &mut Ctx) -> Verdict {
    let n = ctx.dim(1);
    let a = hermitian(&mut ctx.rng, n);
    let lo = ctx.rng.random_range(-3.0..2.0);
    let hi = lo + ctx.rng.random_range(0.1..4.0);
    let p = match exact_projection(&a, (lo, hi), ctx.tol) {
        Err(Error::EndpointOnSpectrum { .. }) => return Ok(None),
        other => other?,
    };
    let (values, _) = hermitian_eig(&a, ctx.tol)?;
    let count = values.iter().filter(|&&v| v > lo && v < hi).count() as f64;
    let mut ev = Evidence::new(json!({ "A": to_json(&a), "interval": [lo, hi] }));
    ev.check("‖E² − E‖_F", p.dot(&p).distance(&p), ctx.thr(1e-10));
    ev.check("‖E − E*‖_F", p.hermitian_deviation(), ctx.thr(1e-10));
    ev.check("|tr E − count|", (p.trace().re.round() - count).abs(), 0.0);
    Ok(Some(ev))
}

fn stone_first_order(_ctx: &mut Ctx) -> Verdict {
    let a = ComplexMatrix::from_real_diag(&[1.0, 2.0, 3.0]);
    let interval = (1.5, 2.5);
    let mut ev = Evidence::new(json!({ "A": to_json(&a), "interval": [interval.0, interval.1] }));
    let mut ratios = Vec::new();
    for eps in [1e-2, 5e-3, 2.5e-3] {
        let nodes = StoneQuadratureSpec::default_nodes(interval, eps);
        let r = stone_projection(&a, &StoneQuadratureSpec::trapezoid(interval, eps, nodes))?;
        ratios.push(r.exact_error.unwrap_or(f64::INFINITY) / eps);
    }
    // Bounded error/ε: the smoothing error of this family is ≈ 1.4ε.
    let spread = ratios.iter().cloned().fold(0.0, f64::max) / ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    ev.check("max error/ε", ratios.iter().cloned().fold(0.0, f64::max), 2.0);
    ev.check("spread of error/ε", spread, 1.5);
    Ok(Some(ev))
}

fn random_w(rng: &mut SeededRng) -> C64 {
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    C64::new(rng.random_range(-4.0..4.0), sign * rng.random_range(0.1..2.0))
}

fn resolvent_identity(ctx: &mut Ctx) -> Verdict {
    let n = ctx.dim(1);
    let a = hermitian(&mut ctx.rng, n);
    let (w1, w2) = (random_w(&mut ctx.rng), random_w(&mut ctx.rng));
    let r1 = crate::resolvent::resolvent(&a, w1, ctx.tol)?;
    let r2 = crate::resolvent::resolvent(&a, w2, ctx.tol)?;
    let lhs = &r1 - &r2;
    let rhs = r1.dot(&r2).scale(w1 - w2);
    let mut ev = Evidence::new(json!({ "A": to_json(&a), "w1": w1, "w2": w2 }));
    ev.check("‖R₁ − R₂ − (w₁ − w₂)R₁R₂‖_F", lhs.distance(&rhs), ctx.thr(1e-9) * relative(&lhs));
    Ok(Some(ev))
}

fn resolvent_norm(ctx: &mut Ctx) -> Verdict {
    let n = ctx.dim(1);
    let a = hermitian(&mut ctx.rng, n);
    let w = random_w(&mut ctx.rng);
    let mut ev = Evidence::new(json!({ "A": to_json(&a), "w": w }));
    ev.require("‖R(w)‖₂ = 1/dist(w, σ(A))", resolvent_norm_check(&a, w, ctx.tol)?);
    Ok(Some(ev))
}

fn transported_bound(ctx: &mut Ctx) -> Verdict {
    let n = ctx.dim(1);
    let rank = ctx.rng.random_range(1..=n);
    let a = psd(&mut ctx.rng, n, rank);
    let lambda = if ctx.rng.random_bool(0.3) {
        -ONE
    } else {
        C64::from_polar(ctx.rng.random_range(0.3..3.0), ctx.rng.random_range(0.3..2.0 * std::f64::consts::PI - 0.3))
    };
    let lo = ctx.rng.random_range(0.1..2.0);
    let hi = lo + ctx.rng.random_range(0.1..3.0);
    let eps = 10f64.powf(ctx.rng.random_range(-4.0..-2.0));
    let mut ev = Evidence::new(json!({ "A": to_json(&a), "lambda": lambda, "interval": [lo, hi], "epsilon": eps }));
    match transported_integrand_bound(&a, lambda, (lo, hi), eps, ctx.tol) {
        Ok(r) => ev.check("measured − bound", r.measured - r.bound, 0.0),
        Err(Error::VerificationFailed(msg)) => {
            ev.counterexample["detail"] = Value::String(msg);
            ev.require("measured ≤ bound", false);
        }
        Err(e) => return Err(e),
    }
    Ok(Some(ev))
}
