use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::hermitian::hermitian_eig;
use crate::linalg::spectrum::eigenvalues;
use crate::linalg::svd::svd;
use crate::matrix::ComplexMatrix;

/// Structural predicates of a square matrix, each decided at a stated
/// tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructureFlags {
    pub hermitian: bool,
    pub positive_semidefinite: bool,
    pub positive_definite: bool,
    pub unitary: bool,
    pub invertible: bool,
    pub quasi_nilpotent: bool,
    pub tolerance_used: f64,
}

/// Decide the structural predicates of `m`:
///
/// * Hermitian: `‖M − M*‖_F ≤ tol·max(1, ‖M‖_F)`
/// * positive semidefinite: Hermitian and `λ_min ≥ −tol`
/// * positive definite: Hermitian and `λ_min > tol·max(1, ‖M‖_F)`
/// * unitary: `‖M*M − I‖_F ≤ tol`
/// * invertible: `σ_min > tol·σ_max`
/// * quasi-nilpotent: every `|λ| ≤ tol·max(1, ‖M‖_F)`
pub fn classify_structure(m: &ComplexMatrix, tol: f64) -> Result<StructureFlags> {
    let n = m.require_square()?;
    let scale = m.frobenius_norm().max(1.0);

    let hermitian = m.hermitian_deviation() <= tol * scale;
    let (positive_semidefinite, positive_definite) = if hermitian {
        let (values, _) = hermitian_eig(m, f64::INFINITY)?;
        let min = values[0];
        (min >= -tol, min > tol * scale)
    } else {
        (false, false)
    };

    let unitary = m.adjoint().dot(m).distance(&ComplexMatrix::identity(n)) <= tol;
    let dec = svd(m)?;
    let invertible =
        unitary || (dec.max_singular() > 0.0 && dec.min_singular() > tol * dec.max_singular());
    let quasi_nilpotent = eigenvalues(m)?.spectral_radius() <= tol * scale;

    Ok(StructureFlags {
        hermitian,
        positive_semidefinite,
        positive_definite,
        unitary,
        invertible,
        quasi_nilpotent,
        tolerance_used: tol,
    })
}
