//! Commutation up to a factor: detecting `λ` with `AB = λBA`, checking a
//! pair against the constraints such a relation imposes, solving for
//! `λ`-commutants of a normal operator, and the measurement-map test
//! `ABXBA = BAXAB`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assignment::hungarian;
use crate::error::{Error, Result};
use crate::linalg::spectrum::lexicographic;
use crate::linalg::{classify_structure, determinant, eigenvalues, schur, SpectrumSet, StructureFlags};
use crate::matrix::{ComplexMatrix, C64, ONE};
use crate::pair::OperatorPair;
use crate::random::{ginibre, rng_from_seed, trial_seed};

/// Relative residual at or below `UNIQUE_FACTOR · tol` counts as an exact relation.
pub const UNIQUE_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FactorStatus {
    /// A single `λ` fits to tolerance.
    Unique,
    /// `AB = BA = 0`: every nonzero `λ` works.
    Any,
    /// No nonzero `λ` fits.
    None,
}

impl fmt::Display for FactorStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorStatus::Unique => "UNIQUE",
            FactorStatus::Any => "ANY",
            FactorStatus::None => "NONE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    pub status: FactorStatus,
    /// Least-squares `λ`; the best fit (not a solution) when status is NONE.
    pub lambda_hat: Option<C64>,
    /// `‖AB − λ̂BA‖_F / max(1, ‖AB‖_F)`.
    pub residual: f64,
    pub ab_norm: f64,
    pub ba_norm: f64,
}

/// Fit `λ` in `AB = λBA` by Frobenius least squares,
/// `λ̂ = ⟨BA, AB⟩_F / ‖BA‖²_F`.
pub fn detect_factor(pair: &OperatorPair, tol: f64) -> Result<FactorReport> {
    let ab = pair.ab();
    let ba = pair.ba();
    Ok(fit_factor(&ab, &ba, tol))
}

pub(crate) fn fit_factor(ab: &ComplexMatrix, ba: &ComplexMatrix, tol: f64) -> FactorReport {
    let ab_norm = ab.frobenius_norm();
    let ba_norm = ba.frobenius_norm();
    let none = |lambda_hat, residual| FactorReport {
        status: FactorStatus::None,
        lambda_hat,
        residual,
        ab_norm,
        ba_norm,
    };

    if ab_norm <= tol && ba_norm <= tol {
        return FactorReport {
            status: FactorStatus::Any,
            lambda_hat: None,
            residual: 0.0,
            ab_norm,
            ba_norm,
        };
    }
    if ba_norm <= tol {
        // AB ≠ 0 = BA admits no λ at all.
        return none(None, ab_norm / ab_norm.max(1.0));
    }

    let lambda = ba.frobenius_inner(ab) / (ba_norm * ba_norm);
    let residual = ab.distance(&ba.scale(lambda)) / ab_norm.max(1.0);
    // AB = 0 ≠ BA would need λ = 0, which is excluded.
    if ab_norm <= tol || lambda.norm() == 0.0 || residual > UNIQUE_FACTOR * tol {
        return none(Some(lambda), residual);
    }
    FactorReport {
        status: FactorStatus::Unique,
        lambda_hat: Some(lambda),
        residual,
        ab_norm,
        ba_norm,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMatchReport {
    pub matched: bool,
    pub max_pair_distance: f64,
    /// `(i, j)`: element `i` of the first multiset paired with element `j` of the second.
    pub assignment: Vec<(usize, usize)>,
}

/// Optimal pairing of two equal-size multisets under `|x_i − y_j|`.
pub fn match_multisets(xs: &[C64], ys: &[C64], tol: f64) -> SpectrumMatchReport {
    assert_eq!(xs.len(), ys.len(), "multisets must have equal size");
    let cost: Vec<Vec<f64>> = xs
        .iter()
        .map(|x| ys.iter().map(|y| (x - y).norm()).collect())
        .collect();
    let cols = hungarian(&cost);
    let assignment: Vec<(usize, usize)> = cols.into_iter().enumerate().collect();
    let max_pair_distance = assignment
        .iter()
        .map(|&(i, j)| cost[i][j])
        .fold(0.0, f64::max);
    SpectrumMatchReport {
        matched: max_pair_distance <= tol,
        max_pair_distance,
        assignment,
    }
}

/// Does `S = λ·S` hold as multisets? Pairs `s_i` with `λ s_j` optimally.
pub fn spectrum_rotation_check(s: &SpectrumSet, lambda: C64, tol: f64) -> SpectrumMatchReport {
    let rotated: Vec<C64> = s.values.iter().map(|&z| lambda * z).collect();
    match_multisets(&s.values, &rotated, tol)
}

/// Compare `σ(AB)` with `σ(BA)`; for square operators of equal dimension
/// the full multisets coincide.
pub fn spectrum_swap_check(pair: &OperatorPair, tol: f64) -> Result<SpectrumMatchReport> {
    let ab = eigenvalues(&pair.ab())?;
    let ba = eigenvalues(&pair.ba())?;
    Ok(match_multisets(&ab.values, &ba.values, tol))
}

/// What a constraint requires of `λ` (or of the spectra).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Requirement {
    Real,
    PlusMinusOne,
    One,
    UnitModulus,
    RootOfUnity { n: u32 },
    ProductQuasiNilpotent,
    ProductSpectraEqual,
    ProductSpectrumRotationInvariant,
    /// `σ(B) = λσ(B)`.
    SecondSpectrumRotationInvariant,
    /// `σ(A) = λ⁻¹σ(A)`.
    FirstSpectrumRotationInvariant,
}

impl Requirement {
    pub fn describe(&self) -> String {
        match self {
            Requirement::Real => "λ ∈ ℝ".into(),
            Requirement::PlusMinusOne => "λ ∈ {1, −1}".into(),
            Requirement::One => "λ = 1".into(),
            Requirement::UnitModulus => "|λ| = 1".into(),
            Requirement::RootOfUnity { n } => format!("λ^{n} = 1"),
            Requirement::ProductQuasiNilpotent => "σ(AB) = {0}".into(),
            Requirement::ProductSpectraEqual => "σ(AB) = σ(BA)".into(),
            Requirement::ProductSpectrumRotationInvariant => "σ(AB) = λσ(AB)".into(),
            Requirement::SecondSpectrumRotationInvariant => "σ(B) = λσ(B)".into(),
            Requirement::FirstSpectrumRotationInvariant => "σ(A) = λ⁻¹σ(A)".into(),
        }
    }

    /// Distance of `λ` from the required set; `None` for spectral requirements.
    pub fn lambda_discrepancy(&self, lambda: C64) -> Option<f64> {
        Some(match self {
            Requirement::Real => lambda.im.abs(),
            Requirement::PlusMinusOne => (lambda - ONE).norm().min((lambda + ONE).norm()),
            Requirement::One => (lambda - ONE).norm(),
            Requirement::UnitModulus => (lambda.norm() - 1.0).abs(),
            Requirement::RootOfUnity { n } => (lambda.powu(*n) - ONE).norm() / (*n as f64),
            _ => return None,
        })
    }
}

/// The hypothesis that produced a constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstraintSource {
    /// One operator self-adjoint.
    SelfAdjointMember,
    /// Both operators self-adjoint.
    SelfAdjointPair,
    /// Both self-adjoint, one positive.
    PositiveMember,
    /// `AB ≠ 0` with `AB = λBA`: spectra of the two products agree and are `λ`-invariant.
    ProductSpectrum,
    /// `σ(AB) ≠ {0}` forces `|λ| = 1`.
    NonNilpotentProduct,
    /// `|λ| ≠ 1` forces `AB` quasi-nilpotent.
    NonUnimodularFactor,
    /// `A` invertible: `ABA⁻¹ = λB`.
    InvertibleFirst,
    /// `B` invertible: `BAB⁻¹ = λ⁻¹A`.
    InvertibleSecond,
    /// `A` unitary: `‖B‖ = |λ|‖B‖`.
    UnitaryFirst,
    /// `B` unitary.
    UnitarySecond,
    /// `tr[AB^k] ≠ 0` or `tr[A^kB] ≠ 0`.
    NonzeroTrace,
    /// `det(AB) ≠ 0` in dimension `n`.
    NonzeroDeterminant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaConstraint {
    pub constraint: String,
    pub requirement: Requirement,
    pub source: ConstraintSource,
    pub satisfied: bool,
    pub discrepancy: f64,
}

impl LambdaConstraint {
    fn new(requirement: Requirement, source: ConstraintSource) -> Self {
        Self {
            constraint: requirement.describe(),
            requirement,
            source,
            satisfied: true,
            discrepancy: 0.0,
        }
    }

    fn judge(mut self, discrepancy: f64, tol: f64) -> Self {
        self.discrepancy = discrepancy;
        self.satisfied = discrepancy <= tol;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub k: u32,
    pub tr_ab_k: C64,
    pub tr_a_k_b: C64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDetReport {
    pub traces: Vec<TraceEntry>,
    pub det_ab: C64,
    pub constraints: Vec<LambdaConstraint>,
}

/// Trace and determinant consequences in finite dimension `n`: a nonzero
/// `tr[AB^k]` or `tr[A^kB]` forces `λ = 1`; an invertible `AB` forces
/// `λⁿ = 1`. A trace counts as nonzero when it exceeds
/// `tol·max(1, ‖M‖_F)` for the matrix `M` whose trace it is; `AB` counts as
/// invertible when `σ_min(AB) > tol·σ_max(AB)`.
pub fn trace_det_constraints(pair: &OperatorPair, kmax: u32, tol: f64) -> Result<TraceDetReport> {
    let (a, b) = (pair.a(), pair.b());
    let mut traces = Vec::with_capacity(kmax as usize);
    let mut trace_nonzero = false;
    let (mut b_pow, mut a_pow) = (b.clone(), a.clone());
    for k in 1..=kmax {
        if k > 1 {
            b_pow = b_pow.dot(b);
            a_pow = a_pow.dot(a);
        }
        let ab_k = a.dot(&b_pow);
        let a_k_b = a_pow.dot(b);
        let (t1, t2) = (ab_k.trace(), a_k_b.trace());
        if t1.norm() > tol * ab_k.frobenius_norm().max(1.0)
            || t2.norm() > tol * a_k_b.frobenius_norm().max(1.0)
        {
            trace_nonzero = true;
        }
        traces.push(TraceEntry {
            k,
            tr_ab_k: t1,
            tr_a_k_b: t2,
        });
    }

    let ab = pair.ab();
    let det_ab = determinant(&ab)?;
    let mut constraints = Vec::new();
    if trace_nonzero {
        constraints.push(LambdaConstraint::new(Requirement::One, ConstraintSource::NonzeroTrace));
    }
    if classify_structure(&ab, tol)?.invertible {
        constraints.push(LambdaConstraint::new(
            Requirement::RootOfUnity {
                n: pair.dim() as u32,
            },
            ConstraintSource::NonzeroDeterminant,
        ));
    }
    Ok(TraceDetReport {
        traces,
        det_ab,
        constraints,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub label: String,
    #[serde(flatten)]
    pub factor: FactorReport,
    #[serde(rename = "flags_A")]
    pub flags_a: StructureFlags,
    #[serde(rename = "flags_B")]
    pub flags_b: StructureFlags,
    pub constraints: Vec<LambdaConstraint>,
    /// Largest eigenvalue modulus of `AB`.
    pub ab_spectral_radius: f64,
    pub ab_quasi_nilpotent: bool,
    pub consistent: bool,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

/// Tolerances used when judging a fitted `λ̂`.
struct Judging {
    /// For scalar requirements on `λ̂`.
    lambda: f64,
    /// For eigenvalue-based checks, which lose accuracy on defective spectra
    /// (an eigenvalue of multiplicity k is only determined to ε^{1/k}).
    spectral: f64,
}

/// Run factor detection, classify both operators, collect every constraint
/// their structure imposes on `λ`, and check `λ̂` and the spectra against
/// each. `consistent` is false iff some constraint fails.
pub fn classify_pair(pair: &OperatorPair, tol: f64) -> Result<ClassificationReport> {
    let ab = pair.ab();
    let ba = pair.ba();
    let factor = fit_factor(&ab, &ba, tol);
    let flags_a = classify_structure(pair.a(), tol)?;
    let flags_b = classify_structure(pair.b(), tol)?;
    let ab_spectrum = eigenvalues(&ab)?;
    let ab_scale = ab.frobenius_norm().max(1.0);
    let judging = Judging {
        lambda: match factor.lambda_hat {
            Some(l) => (10.0 * UNIQUE_FACTOR * tol * l.norm().max(1.0)).max(
                UNIQUE_FACTOR * factor.residual * factor.ab_norm.max(1.0) / factor.ba_norm.max(f64::MIN_POSITIVE),
            ),
            None => UNIQUE_FACTOR * tol,
        },
        spectral: tol.sqrt() * ab_scale,
    };
    let ab_spectral_radius = ab_spectrum.spectral_radius();
    let ab_quasi_nilpotent = ab_spectral_radius <= judging.spectral;

    let mut report = ClassificationReport {
        label: pair.label().to_string(),
        factor: factor.clone(),
        flags_a,
        flags_b,
        constraints: Vec::new(),
        ab_spectral_radius,
        ab_quasi_nilpotent,
        consistent: true,
        violations: Vec::new(),
        notes: Vec::new(),
    };

    let lambda = match (factor.status, factor.lambda_hat) {
        (FactorStatus::Any, _) => {
            report
                .notes
                .push("AB = BA = 0: any nonzero λ satisfies AB = λBA".into());
            return Ok(report);
        }
        (FactorStatus::None, _) | (_, None) => {
            report.notes.push(format!(
                "no λ-commutation: best-fit relative residual {:.3e}",
                factor.residual
            ));
            return Ok(report);
        }
        (FactorStatus::Unique, Some(l)) => l,
    };

    let mut constraints = Vec::new();
    let scalar = |req: Requirement, src: ConstraintSource| {
        let c = LambdaConstraint::new(req, src);
        let d = req.lambda_discrepancy(lambda).unwrap_or(0.0);
        c.judge(d, judging.lambda)
    };

    // Self-adjointness.
    if flags_a.hermitian || flags_b.hermitian {
        constraints.push(scalar(Requirement::Real, ConstraintSource::SelfAdjointMember));
    }
    if flags_a.hermitian && flags_b.hermitian {
        constraints.push(scalar(Requirement::PlusMinusOne, ConstraintSource::SelfAdjointPair));
        if flags_a.positive_semidefinite || flags_b.positive_semidefinite {
            constraints.push(scalar(Requirement::One, ConstraintSource::PositiveMember));
        }
    }

    // Spectra of the products.
    let ba_spectrum = eigenvalues(&ba)?;
    let swap = match_multisets(&ab_spectrum.values, &ba_spectrum.values, judging.spectral);
    constraints.push(
        LambdaConstraint::new(Requirement::ProductSpectraEqual, ConstraintSource::ProductSpectrum)
            .judge(swap.max_pair_distance, judging.spectral),
    );
    let rotation = spectrum_rotation_check(&ab_spectrum, lambda, judging.spectral);
    constraints.push(
        LambdaConstraint::new(
            Requirement::ProductSpectrumRotationInvariant,
            ConstraintSource::ProductSpectrum,
        )
        .judge(rotation.max_pair_distance, judging.spectral),
    );
    if !ab_quasi_nilpotent {
        constraints.push(scalar(Requirement::UnitModulus, ConstraintSource::NonNilpotentProduct));
    }
    if (lambda.norm() - 1.0).abs() > judging.lambda {
        constraints.push(
            LambdaConstraint::new(
                Requirement::ProductQuasiNilpotent,
                ConstraintSource::NonUnimodularFactor,
            )
            .judge(ab_spectral_radius, judging.spectral),
        );
    }

    // Invertible or unitary members.
    if flags_a.invertible {
        let sb = eigenvalues(pair.b())?;
        let spectral = tol.sqrt() * pair.b().frobenius_norm().max(1.0);
        let rot = spectrum_rotation_check(&sb, lambda, spectral);
        constraints.push(
            LambdaConstraint::new(
                Requirement::SecondSpectrumRotationInvariant,
                ConstraintSource::InvertibleFirst,
            )
            .judge(rot.max_pair_distance, spectral),
        );
        if sb.spectral_radius() > spectral {
            constraints.push(scalar(Requirement::UnitModulus, ConstraintSource::InvertibleFirst));
        }
    }
    if flags_a.unitary {
        constraints.push(scalar(Requirement::UnitModulus, ConstraintSource::UnitaryFirst));
    }
    if flags_b.invertible {
        let sa = eigenvalues(pair.a())?;
        let spectral = tol.sqrt() * pair.a().frobenius_norm().max(1.0);
        let rot = spectrum_rotation_check(&sa, lambda.inv(), spectral);
        constraints.push(
            LambdaConstraint::new(
                Requirement::FirstSpectrumRotationInvariant,
                ConstraintSource::InvertibleSecond,
            )
            .judge(rot.max_pair_distance, spectral),
        );
        if sa.spectral_radius() > spectral {
            constraints.push(scalar(Requirement::UnitModulus, ConstraintSource::InvertibleSecond));
        }
    }
    if flags_b.unitary {
        constraints.push(scalar(Requirement::UnitModulus, ConstraintSource::UnitarySecond));
    }

    // Finite-dimensional trace and determinant conditions.
    let td = trace_det_constraints(pair, pair.dim() as u32, tol)?;
    for c in td.constraints {
        constraints.push(scalar(c.requirement, c.source));
    }

    for c in &constraints {
        if !c.satisfied {
            report.violations.push(format!(
                "{} required ({:?}) but discrepancy is {:.3e}",
                c.constraint, c.source, c.discrepancy
            ));
        }
    }
    if ab_quasi_nilpotent && (lambda.norm() - 1.0).abs() > judging.lambda {
        report
            .notes
            .push("|λ| ≠ 1 realized with quasi-nilpotent AB".into());
    }
    report.consistent = report.violations.is_empty();
    report.constraints = constraints;
    Ok(report)
}

/// Basis of `{B : AB = λBA}` for normal `A`.
///
/// In an orthonormal eigenbasis `A = Σ a_i q_i q_i*`, the relation reads
/// `(a_i − λ a_j) B_ij = 0`, so the solution space is spanned by `q_i q_j*`
/// over pairs with `|a_i − λ a_j| ≤ tol·max(1, ‖A‖_F)`.
pub fn solve_lambda_commutant(a: &ComplexMatrix, lambda: C64, tol: f64) -> Result<Vec<ComplexMatrix>> {
    let n = a.require_square()?;
    if lambda.norm() == 0.0 {
        return Err(Error::InvalidParameter("λ must be nonzero".into()));
    }
    let scale = a.frobenius_norm().max(1.0);
    let deviation = a.dot(&a.adjoint()).distance(&a.adjoint().dot(a)) / (scale * scale);
    if deviation > tol {
        return Err(Error::NotNormal { deviation });
    }

    let s = schur(a)?;
    let diag = s.t.diagonal();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| lexicographic(&diag[i], &diag[j]));
    let values: Vec<C64> = order.iter().map(|&i| diag[i]).collect();
    let vectors: Vec<Vec<C64>> = order
        .iter()
        .map(|&j| {
            let mut v = s.z.column(j);
            // Fix the phase so the leading dominant component is real positive.
            let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if let Some(pivot) = v.iter().position(|z| z.norm() >= max * (1.0 - 1e-12)) {
                let phase = v[pivot] / v[pivot].norm();
                v.iter_mut().for_each(|z| *z /= phase);
            }
            v
        })
        .collect();

    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if (values[i] - lambda * values[j]).norm() <= tol * scale {
                basis.push(ComplexMatrix::outer(&vectors[i], &vectors[j]));
            }
        }
    }
    Ok(basis)
}

/// Largest relative residual `‖ABXBA − BAXAB‖_F / max(1, ‖ABXBA‖_F)` over
/// `trials` Ginibre samples `X` seeded per trial from `seed`.
pub fn measurement_map_residual(pair: &OperatorPair, trials: usize, seed: u64) -> f64 {
    let ab = pair.ab();
    let ba = pair.ba();
    let n = pair.dim();
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_from_seed(trial_seed(seed, 0x6d65_6173, t as u64));
            let x = ginibre(&mut rng, n, n);
            let left = ab.dot(&x).dot(&ba);
            let right = ba.dot(&x).dot(&ab);
            left.distance(&right) / left.frobenius_norm().max(1.0)
        })
        .reduce(|| 0.0, f64::max)
}

/// Do the maps `X ↦ AXA` and `X ↦ BXB` commute on random samples?
pub fn measurement_map_check(pair: &OperatorPair, trials: usize, seed: u64, tol: f64) -> bool {
    measurement_map_residual(pair, trials, seed) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli::*;
    use crate::matrix::{I, ZERO};

    fn pair(a: ComplexMatrix, b: ComplexMatrix) -> OperatorPair {
        OperatorPair::of(a, b).unwrap()
    }

    fn clock_shift4() -> OperatorPair {
        // Shift A e_j = e_{j−1 mod 4}, clock B = diag(1, i, −1, −i).
        let a = ComplexMatrix::from_fn(4, 4, |r, c| if (r + 1) % 4 == c { ONE } else { ZERO });
        let b = ComplexMatrix::from_diag(&[ONE, I, -ONE, -I]);
        pair(a, b)
    }

    #[test]
    fn pauli_factor_is_minus_one() {
        let r = detect_factor(&pair(sigma_x(), sigma_y()), 1e-9).unwrap();
        assert_eq!(r.status, FactorStatus::Unique);
        assert!((r.lambda_hat.unwrap() + ONE).norm() < 1e-15);
        assert!(r.residual <= 1e-15);
    }

    #[test]
    fn self_pair_factor_is_one() {
        let m = ComplexMatrix::from_rows(&[[ONE, I], [C64::new(2.0, 0.0), -ONE]]);
        let r = detect_factor(&pair(m.clone(), m), 1e-9).unwrap();
        assert_eq!(r.status, FactorStatus::Unique);
        assert!((r.lambda_hat.unwrap() - ONE).norm() < 1e-15);
    }

    #[test]
    fn clock_shift_factor_is_i() {
        // Direct multiplication: AB e_j = i^j e_{j−1}, BA e_j = i^{j−1} e_{j−1}.
        let p = clock_shift4();
        assert_eq!(p.ab(), p.ba().scale(I));
        let r = detect_factor(&p, 1e-9).unwrap();
        assert_eq!(r.status, FactorStatus::Unique);
        assert!((r.lambda_hat.unwrap() - I).norm() < 1e-15);
    }

    #[test]
    fn zero_products_give_any() {
        let a = ComplexMatrix::unit(2, 2, 0, 1);
        let r = detect_factor(&pair(a.clone(), a), 1e-9).unwrap();
        assert_eq!(r.status, FactorStatus::Any);
        assert_eq!(r.lambda_hat, None);
    }

    #[test]
    fn one_sided_zero_products_give_none() {
        // A = E11, B = E21: AB = 0, BA = E21.
        let a = ComplexMatrix::unit(2, 2, 0, 0);
        let b = ComplexMatrix::unit(2, 2, 1, 0);
        let p = pair(a, b);
        assert_eq!(p.ab().frobenius_norm(), 0.0);
        assert_eq!(detect_factor(&p, 1e-9).unwrap().status, FactorStatus::None);
        assert_eq!(detect_factor(&p.swapped(), 1e-9).unwrap().status, FactorStatus::None);
    }

    #[test]
    fn rotation_check_examples() {
        let s = SpectrumSet::from_values(vec![ONE, I, -ONE, -I]);
        // Enumeration: i·{1, i, −1, −i} = {i, −1, −i, 1}.
        let r = spectrum_rotation_check(&s, I, 1e-12);
        assert!(r.matched);
        assert_eq!(r.max_pair_distance, 0.0);
        let any = SpectrumSet::from_values(vec![C64::new(0.3, 2.0), C64::new(-1.0, 0.5)]);
        let r = spectrum_rotation_check(&any, ONE, 1e-12);
        assert!(r.matched && r.max_pair_distance == 0.0);
        let two = SpectrumSet::from_values(vec![ONE, C64::new(2.0, 0.0)]);
        assert!(!spectrum_rotation_check(&two, -ONE, 1e-9).matched);
    }

    #[test]
    fn swap_check_examples() {
        let r = spectrum_swap_check(&pair(sigma_x(), sigma_y()), 1e-12).unwrap();
        assert!(r.matched);
        let m = ComplexMatrix::from_rows(&[[ONE, I], [C64::new(2.0, 0.0), -ONE]]);
        assert!(spectrum_swap_check(&pair(m, ComplexMatrix::identity(2)), 1e-12).unwrap().matched);
    }

    #[test]
    fn trace_forces_one_for_equal_paulis() {
        let td = trace_det_constraints(&pair(sigma_x(), sigma_x()), 2, 1e-9).unwrap();
        assert!((td.traces[0].tr_ab_k - C64::new(2.0, 0.0)).norm() < 1e-15);
        assert!(td.constraints.iter().any(|c| c.requirement == Requirement::One));
    }

    #[test]
    fn anticommuting_paulis_only_get_root_of_unity() {
        let td = trace_det_constraints(&pair(sigma_x(), sigma_y()), 4, 1e-9).unwrap();
        assert!(td.traces.iter().all(|t| t.tr_ab_k.norm() < 1e-15 && t.tr_a_k_b.norm() < 1e-15));
        // det(iσ_z) = i·(−i) = 1
        assert!((td.det_ab - ONE).norm() < 1e-15);
        assert_eq!(td.constraints.len(), 1);
        assert_eq!(td.constraints[0].requirement, Requirement::RootOfUnity { n: 2 });
    }

    #[test]
    fn clock_shift_root_of_unity() {
        let p = clock_shift4();
        let td = trace_det_constraints(&p, 4, 1e-9).unwrap();
        assert_eq!(td.constraints.len(), 1);
        assert_eq!(td.constraints[0].requirement, Requirement::RootOfUnity { n: 4 });
        assert!(Requirement::RootOfUnity { n: 4 }.lambda_discrepancy(I).unwrap() < 1e-15);
    }

    #[test]
    fn classify_pauli_pair() {
        let r = classify_pair(&pair(sigma_x(), sigma_y()), 1e-9).unwrap();
        assert!(r.consistent, "{:?}", r.violations);
        assert!(r
            .constraints
            .iter()
            .any(|c| c.requirement == Requirement::PlusMinusOne && c.satisfied));
    }

    #[test]
    fn classify_nilpotent_pair_with_factor_three() {
        let a = ComplexMatrix::unit(2, 2, 0, 1);
        let b = ComplexMatrix::from_real_diag(&[1.0, 3.0]);
        let r = classify_pair(&pair(a, b), 1e-9).unwrap();
        assert_eq!(r.factor.status, FactorStatus::Unique);
        assert!((r.factor.lambda_hat.unwrap() - C64::new(3.0, 0.0)).norm() < 1e-14);
        assert!(r.ab_quasi_nilpotent);
        assert!(r.consistent, "{:?}", r.violations);
        assert!(r
            .constraints
            .iter()
            .any(|c| c.requirement == Requirement::ProductQuasiNilpotent));
    }

    #[test]
    fn classify_generic_pair_reports_no_factor() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        let b = ComplexMatrix::from_rows(&[
            [C64::new(0.3, 0.0), C64::new(1.0, -0.7)],
            [C64::new(1.0, 0.7), C64::new(-1.2, 0.0)],
        ]);
        let r = classify_pair(&pair(a, b), 1e-9).unwrap();
        assert_eq!(r.factor.status, FactorStatus::None);
        assert!(r.consistent);
        assert!(r.notes[0].starts_with("no λ-commutation"));
    }

    #[test]
    fn commutant_of_diag_one_two() {
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        let basis = solve_lambda_commutant(&a, C64::new(2.0, 0.0), 1e-9).unwrap();
        assert_eq!(basis, vec![ComplexMatrix::unit(2, 2, 1, 0)]);
        let b = &basis[0];
        assert_eq!(a.dot(b), b.dot(&a).scale_real(2.0));
    }

    #[test]
    fn commutant_of_identity() {
        let id = ComplexMatrix::identity(3);
        assert_eq!(solve_lambda_commutant(&id, ONE, 1e-9).unwrap().len(), 9);
        assert!(solve_lambda_commutant(&id, C64::new(2.0, 0.0), 1e-9).unwrap().is_empty());
    }

    #[test]
    fn commutant_rejects_jordan_block() {
        let j = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 1.0]]);
        assert!(matches!(
            solve_lambda_commutant(&j, ONE, 1e-9),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn measurement_maps() {
        assert!(measurement_map_check(&pair(sigma_x(), sigma_y()), 20, 1, 1e-9));
        let d1 = ComplexMatrix::from_real_diag(&[1.0, -2.0, 3.0]);
        let d2 = ComplexMatrix::from_diag(&[I, ONE, C64::new(0.5, 0.5)]);
        assert!(measurement_map_check(&pair(d1, d2), 20, 2, 1e-9));
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        assert!(!measurement_map_check(&pair(a, sigma_x()), 20, 3, 1e-9));
    }

    #[test]
    fn measurement_map_single_witness() {
        // X = E11: ABXBA = [[0,1],[2,0]] E11 [[0,2],[1,0]] = [[0,0],[0,4]],
        // BAXAB = [[0,2],[1,0]] E11 [[0,1],[2,0]] = [[0,0],[0,1]].
        let a = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        let p = pair(a, sigma_x());
        let x = ComplexMatrix::unit(2, 2, 0, 0);
        let left = p.ab().dot(&x).dot(&p.ba());
        let right = p.ba().dot(&x).dot(&p.ab());
        assert_eq!(left, ComplexMatrix::from_real_diag(&[0.0, 4.0]));
        assert_eq!(right, ComplexMatrix::from_real_diag(&[0.0, 1.0]));
    }
}
