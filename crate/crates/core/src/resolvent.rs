//! Resolvents `R(w) = (A − wI)⁻¹` and spectral projections of Hermitian
//! matrices, both exactly (eigendecomposition) and through Stone's formula
//!
//! ```text
//! E(J) = lim_{ε→0} (1/2πi) ∫_a^b [R(t + iε) − R(t − iε)] dt.
//! ```
//!
//! In finite dimension the weak limit is a norm limit. The smoothing error is
//! first order in `ε`: an eigenvalue `μ` contributes
//! `(1/π)[arctan((b − μ)/ε) − arctan((a − μ)/ε)]` instead of `1_J(μ)`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, hermitian_eig, lu, spectral_norm};
use crate::matrix::{ComplexMatrix, C64, I};

/// Points per Gauss–Legendre panel.
const GL_POINTS: usize = 4;
const GL_NODES: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GL_WEIGHTS: [f64; 4] = [
    0.347_854_845_137_453_9,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_9,
];

/// Endpoints closer than `ENDPOINT_GUARD · ε` to an eigenvalue are rejected.
pub const ENDPOINT_GUARD: f64 = 10.0;
pub const MIN_NODES: usize = 16;
/// Uniform grid used by [`transported_integrand_bound`].
pub const BOUND_NODES: usize = 257;
/// Relative slack on the transported bound, which holds with equality.
pub const ROUNDING_ALLOWANCE: f64 = 1e-10;

fn spectrum_hit(w: C64, distance: f64) -> Error {
    Error::SpectrumHit {
        point: format!("{w}"),
        distance,
    }
}

fn shifted_inverse(a: &ComplexMatrix, w: C64) -> Result<ComplexMatrix> {
    let f = lu(&a.add_identity(-w))?;
    f.inverse().map_err(|_| spectrum_hit(w, 0.0))
}

/// `(A − wI)⁻¹` by LU with partial pivoting. Fails with
/// [`Error::SpectrumHit`] when `dist(w, σ(A)) ≤ tol·max(1, ‖A‖_F)`.
pub fn resolvent(a: &ComplexMatrix, w: C64, tol: f64) -> Result<ComplexMatrix> {
    a.require_square()?;
    let distance = eigenvalues(a)?.distance_to(w);
    if distance <= tol * a.frobenius_norm().max(1.0) {
        return Err(spectrum_hit(w, distance));
    }
    shifted_inverse(a, w)
}

fn require_hermitian(a: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    Ok(hermitian_eig(a, tol)?.0)
}

fn distance_to_real(values: &[f64], w: C64) -> f64 {
    values
        .iter()
        .map(|&mu| (w - mu).norm())
        .fold(f64::INFINITY, f64::min)
}

/// For Hermitian `A`, `‖R(w)‖₂ = 1/dist(w, σ(A))`. Returns whether the
/// computed norm agrees to `tol` relative.
pub fn resolvent_norm_check(a: &ComplexMatrix, w: C64, tol: f64) -> Result<bool> {
    let values = require_hermitian(a, tol)?;
    let distance = distance_to_real(&values, w);
    if distance <= tol * a.frobenius_norm().max(1.0) {
        return Err(spectrum_hit(w, distance));
    }
    let norm = spectral_norm(&shifted_inverse(a, w)?)?;
    let expected = 1.0 / distance;
    Ok((norm - expected).abs() <= tol * expected.max(1.0))
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidParameter(format!(
            "interval needs finite a < b, got [{a}, {b}]"
        )));
    }
    Ok(())
}

fn guard_endpoints(values: &[f64], (a, b): (f64, f64), delta: f64) -> Result<()> {
    for &endpoint in &[a, b] {
        for &mu in values {
            let distance = (endpoint - mu).abs();
            if distance <= delta {
                return Err(Error::EndpointOnSpectrum {
                    endpoint,
                    eigenvalue: mu,
                    distance,
                });
            }
        }
    }
    Ok(())
}

/// Orthogonal projection onto the eigenvectors of Hermitian `A` with
/// eigenvalue in `(a, b)`. Endpoints within `tol·max(1, ‖A‖_F)` of an
/// eigenvalue are rejected.
pub fn exact_projection(a: &ComplexMatrix, interval: (f64, f64), tol: f64) -> Result<ComplexMatrix> {
    check_interval(interval.0, interval.1)?;
    let (values, u) = hermitian_eig(a, tol)?;
    guard_endpoints(&values, interval, tol * a.frobenius_norm().max(1.0))?;
    let n = values.len();
    let mut p = ComplexMatrix::zeros(n, n);
    for (k, &mu) in values.iter().enumerate() {
        if mu > interval.0 && mu < interval.1 {
            let v = u.column(k);
            p = &p + &ComplexMatrix::outer(&v, &v);
        }
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QuadratureRule {
    Trapezoid,
    /// Composite rule of 4-point panels.
    GaussLegendre,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StoneQuadratureSpec {
    pub interval: (f64, f64),
    pub epsilon: f64,
    /// Number of quadrature points.
    pub nodes: usize,
    pub rule: QuadratureRule,
}

impl StoneQuadratureSpec {
    pub fn trapezoid(interval: (f64, f64), epsilon: f64, nodes: usize) -> Self {
        Self {
            interval,
            epsilon,
            nodes,
            rule: QuadratureRule::Trapezoid,
        }
    }

    /// Node count giving a trapezoid spacing of at most `ε/5`.
    pub fn default_nodes(interval: (f64, f64), epsilon: f64) -> usize {
        let spacing = epsilon / 5.0;
        (((interval.1 - interval.0) / spacing).ceil() as usize + 1).max(MIN_NODES)
    }

    pub fn validate(&self) -> Result<()> {
        check_interval(self.interval.0, self.interval.1)?;
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "ε must be positive, got {}",
                self.epsilon
            )));
        }
        if self.nodes < MIN_NODES {
            return Err(Error::InvalidParameter(format!(
                "need at least {MIN_NODES} nodes, got {}",
                self.nodes
            )));
        }
        Ok(())
    }

    /// `(t_k, w_k)` for the chosen rule with `points` nodes.
    fn rule_points(&self, points: usize) -> Vec<(f64, f64)> {
        let (a, b) = self.interval;
        match self.rule {
            QuadratureRule::Trapezoid => {
                let h = (b - a) / (points - 1) as f64;
                (0..points)
                    .map(|k| {
                        let w = if k == 0 || k == points - 1 { h / 2.0 } else { h };
                        (a + k as f64 * h, w)
                    })
                    .collect()
            }
            QuadratureRule::GaussLegendre => {
                let panels = (points / GL_POINTS).max(1);
                let h = (b - a) / panels as f64;
                (0..panels)
                    .flat_map(|p| {
                        let mid = a + (p as f64 + 0.5) * h;
                        (0..GL_POINTS).map(move |k| (mid + 0.5 * h * GL_NODES[k], 0.5 * h * GL_WEIGHTS[k]))
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionResult {
    pub projection: ComplexMatrix,
    pub epsilon_used: f64,
    pub nodes_used: usize,
    /// `‖E_N − E_{N/2}‖_F` between the full rule and the rule at half the nodes.
    pub quadrature_error_estimate: f64,
    /// `‖E_N − E(J)‖_F` against [`exact_projection`].
    pub exact_error: Option<f64>,
}

/// Fixed-order pairwise sum, independent of how the terms were produced.
fn pairwise_sum(terms: &[ComplexMatrix]) -> ComplexMatrix {
    match terms.len() {
        0 => unreachable!("quadrature has at least one node"),
        1 => terms[0].clone(),
        n => {
            let (l, r) = terms.split_at(n / 2);
            &pairwise_sum(l) + &pairwise_sum(r)
        }
    }
}

fn stone_sum(a: &ComplexMatrix, points: &[(f64, f64)], epsilon: f64) -> Result<ComplexMatrix> {
    let terms: Vec<ComplexMatrix> = points
        .par_iter()
        .map(|&(t, w)| {
            let above = shifted_inverse(a, C64::new(t, epsilon))?;
            let below = shifted_inverse(a, C64::new(t, -epsilon))?;
            Ok((&above - &below).scale_real(w))
        })
        .collect::<Result<_>>()?;
    Ok(pairwise_sum(&terms).scale((2.0 * PI * I).inv()))
}

/// Spectral projection of Hermitian `A` from Stone's formula at fixed `ε`.
pub fn stone_projection(a: &ComplexMatrix, spec: &StoneQuadratureSpec) -> Result<ProjectionResult> {
    stone_projection_with_tol(a, spec, 1e-9)
}

/// As [`stone_projection`], with the Hermitian check at `tol`.
pub fn stone_projection_with_tol(
    a: &ComplexMatrix,
    spec: &StoneQuadratureSpec,
    tol: f64,
) -> Result<ProjectionResult> {
    spec.validate()?;
    let values = require_hermitian(a, tol)?;
    guard_endpoints(&values, spec.interval, ENDPOINT_GUARD * spec.epsilon)?;

    let full = spec.rule_points(spec.nodes);
    let half = spec.rule_points((spec.nodes / 2).max(2));
    let projection = stone_sum(a, &full, spec.epsilon)?;
    let coarse = stone_sum(a, &half, spec.epsilon)?;
    let exact = exact_projection(a, spec.interval, tol)?;
    Ok(ProjectionResult {
        quadrature_error_estimate: projection.distance(&coarse),
        exact_error: Some(projection.distance(&exact)),
        projection,
        epsilon_used: spec.epsilon,
        nodes_used: full.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportedBound {
    /// `max_t ‖(A − (t + iε)/λ)⁻¹ − (A − (t − iε)/λ)⁻¹‖₂` over the node grid.
    pub measured: f64,
    /// `C·ε/|λ|²`.
    pub bound: f64,
    /// `C = 2|λ|/d²`, inflated by [`ROUNDING_ALLOWANCE`].
    pub constant: f64,
    /// `d`: smallest distance from a node `(t ± iε)/λ` to `σ(A)`.
    pub min_distance: f64,
    pub nodes: usize,
}

/// Integrand of the transported resolvent difference for PSD `A` and a
/// factor `λ` that is not real positive, over `t ∈ [a, b] ⊂ (0, ∞)`.
///
/// The nodes `(t ± iε)/λ` stay a distance `d > 0` from `σ(A) ⊂ [0, ∞)`, and
/// for Hermitian `A` the resolvent identity gives
/// `‖R(w₊) − R(w₋)‖ ≤ |w₊ − w₋|/d² = 2ε/(|λ|d²)`. Fails with
/// [`Error::VerificationFailed`] if the measured value exceeds the bound.
pub fn transported_integrand_bound(
    a: &ComplexMatrix,
    lambda: C64,
    interval: (f64, f64),
    epsilon: f64,
    tol: f64,
) -> Result<TransportedBound> {
    check_interval(interval.0, interval.1)?;
    if interval.0 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "interval must lie in (0, ∞), got [{}, {}]",
            interval.0, interval.1
        )));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("ε must be positive, got {epsilon}")));
    }
    if lambda.norm() == 0.0 || (lambda.im == 0.0 && lambda.re > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "λ must be nonzero and not real positive, got {lambda}"
        )));
    }
    let values = require_hermitian(a, tol)?;
    if values[0] < -tol * a.frobenius_norm().max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "A must be positive semidefinite, smallest eigenvalue {}",
            values[0]
        )));
    }

    let h = (interval.1 - interval.0) / (BOUND_NODES - 1) as f64;
    let samples: Vec<(f64, f64)> = (0..BOUND_NODES)
        .into_par_iter()
        .map(|k| {
            let t = interval.0 + k as f64 * h;
            let up = C64::new(t, epsilon) / lambda;
            let down = C64::new(t, -epsilon) / lambda;
            let d = distance_to_real(&values, up).min(distance_to_real(&values, down));
            if d == 0.0 {
                return Err(spectrum_hit(up, d));
            }
            // R(w₊) − R(w₋) = (w₊ − w₋)R(w₊)R(w₋) avoids cancellation at small ε.
            let diff = shifted_inverse(a, up)?
                .dot(&shifted_inverse(a, down)?)
                .scale(up - down);
            Ok((spectral_norm(&diff)?, d))
        })
        .collect::<Result<_>>()?;
    let measured = samples.iter().map(|s| s.0).fold(0.0, f64::max);
    let min_distance = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    let modulus = lambda.norm();
    // The bound is attained when a node is nearest to σ(A); the factor
    // covers rounding in the measured side.
    let constant = 2.0 * modulus / (min_distance * min_distance) * (1.0 + ROUNDING_ALLOWANCE);
    let bound = constant * epsilon / (modulus * modulus);
    if measured > bound {
        return Err(Error::VerificationFailed(format!(
            "transported integrand {measured:.6e} exceeds bound {bound:.6e}"
        )));
    }
    Ok(TransportedBound {
        measured,
        bound,
        constant,
        min_distance,
        nodes: BOUND_NODES,
    })
}

/// Expected diagonal of the smoothed projection for a diagonal `A`:
/// `(1/π)[arctan((b − μ)/ε) − arctan((a − μ)/ε)]` per eigenvalue `μ`.
pub fn poisson_weight(mu: f64, interval: (f64, f64), epsilon: f64) -> f64 {
    (((interval.1 - mu) / epsilon).atan() - ((interval.0 - mu) / epsilon).atan()) / PI
}
