//! Unitary intertwiners for self-adjoint pairs.
//!
//! For Hermitian `A`, `B` the relation `AB = UBA` with `U` unitary holds
//! exactly when `AB²A = BA²B`, i.e. `|AB| = |BA|`. The construction takes the
//! polar decomposition `AB = V|AB|` and sets `U = V² + Q`, where `Q` projects
//! onto the kernel of `|AB|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::polar;
use crate::matrix::ComplexMatrix;
use crate::pair::OperatorPair;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryIntertwiner {
    #[serde(rename = "U")]
    pub u: ComplexMatrix,
    #[serde(rename = "V")]
    pub v: ComplexMatrix,
    #[serde(rename = "P")]
    pub p: ComplexMatrix,
    #[serde(rename = "Q")]
    pub q: ComplexMatrix,
    /// `‖AB − UBA‖_F / max(1, ‖AB‖_F)`.
    pub residual_intertwine: f64,
    /// `‖U*U − I‖_F`.
    pub residual_unitary: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GudderNagyMagnitudes {
    /// `‖AB²A − BA²B‖_F / max(1, ‖AB²A‖_F)`.
    pub ab2a_vs_ba2b: f64,
    /// `‖AB² − B²A‖_F / max(1, ‖AB²‖_F)`.
    pub ab2_vs_b2a: f64,
    /// `‖BA² − A²B‖_F / max(1, ‖BA²‖_F)`.
    pub ba2_vs_a2b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GudderNagyReport {
    pub lhs_holds: bool,
    pub rhs_holds: bool,
    pub consistent: bool,
    pub magnitudes: GudderNagyMagnitudes,
}

fn require_hermitian(m: &ComplexMatrix, tol: f64) -> Result<()> {
    let deviation = m.hermitian_deviation() / m.frobenius_norm().max(1.0);
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

fn require_hermitian_pair(pair: &OperatorPair, tol: f64) -> Result<()> {
    require_hermitian(pair.a(), tol)?;
    require_hermitian(pair.b(), tol)
}

/// `‖AB²A − BA²B‖_F / max(1, ‖AB²A‖_F)`.
pub fn norm_condition_residual(pair: &OperatorPair) -> f64 {
    let ab = pair.ab();
    let ba = pair.ba();
    let lhs = ab.dot(&ba);
    lhs.relative_distance(&ba.dot(&ab), &lhs)
}

/// Does `AB²A = BA²B` hold to `tol`?
///
/// The same question is answered a second time through `|AB|` and `|BA|`
/// from polar decompositions; if the two answers are incompatible beyond
/// what square-root perturbation bounds allow, the result is
/// [`Error::InternalInconsistency`].
pub fn check_norm_condition(pair: &OperatorPair, tol: f64) -> Result<bool> {
    require_hermitian_pair(pair, tol)?;
    let ab = pair.ab();
    let ba = pair.ba();
    let lhs = ab.dot(&ba);
    let rhs = ba.dot(&ab);
    let holds = lhs.distance(&rhs) <= tol * lhs.frobenius_norm().max(1.0);

    // |BA|² = AB²A and |AB|² = BA²B.
    let abs_ab = polar::abs(&ab)?;
    let abs_ba = polar::abs(&ba)?;
    let square_gap = lhs.distance(&rhs);
    let root_gap = abs_ab.distance(&abs_ba);
    let n = pair.dim() as f64;
    let root_slack = 1e-10 * abs_ab.frobenius_norm().max(1.0);
    let square_slack = 1e-10 * lhs.frobenius_norm().max(1.0);
    // ‖√X − √Y‖_F² ≤ ‖X − Y‖_1 ≤ √n ‖X − Y‖_F
    let root_too_far = root_gap > (n.sqrt() * square_gap).sqrt() + root_slack;
    // ‖X² − Y²‖_F ≤ (‖X‖ + ‖Y‖) ‖X − Y‖_F
    let squares_too_far = square_gap
        > (abs_ab.frobenius_norm() + abs_ba.frobenius_norm()) * root_gap + square_slack;
    if root_too_far || squares_too_far {
        return Err(Error::InternalInconsistency(format!(
            "‖AB²A − BA²B‖_F = {square_gap:.3e} but ‖|AB| − |BA|‖_F = {root_gap:.3e}"
        )));
    }
    Ok(holds)
}

/// Evaluate `AB²A = BA²B` and the pair `AB² = B²A`, `BA² = A²B`
/// independently. For Hermitian input the two sides are equivalent, so
/// `consistent` is expected to be true.
pub fn gudder_nagy_check(pair: &OperatorPair, tol: f64) -> Result<GudderNagyReport> {
    require_hermitian_pair(pair, tol)?;
    let (a, b) = (pair.a(), pair.b());
    let a2 = a.dot(a);
    let b2 = b.dot(b);
    let ab2 = a.dot(&b2);
    let ba2 = b.dot(&a2);
    let ab2a = ab2.dot(a);
    let ba2b = ba2.dot(b);
    let magnitudes = GudderNagyMagnitudes {
        ab2a_vs_ba2b: ab2a.relative_distance(&ba2b, &ab2a),
        ab2_vs_b2a: ab2.relative_distance(&b2.dot(a), &ab2),
        ba2_vs_a2b: ba2.relative_distance(&a2.dot(b), &ba2),
    };
    let lhs_holds = magnitudes.ab2a_vs_ba2b <= tol;
    let rhs_holds = magnitudes.ab2_vs_b2a <= tol && magnitudes.ba2_vs_a2b <= tol;
    Ok(GudderNagyReport {
        lhs_holds,
        rhs_holds,
        consistent: lhs_holds == rhs_holds,
        magnitudes,
    })
}

/// Build `U = V² + Q` from `AB = V|AB|` and check `AB = UBA`.
pub fn construct_intertwiner(pair: &OperatorPair, tol: f64) -> Result<UnitaryIntertwiner> {
    if !check_norm_condition(pair, tol)? {
        return Err(Error::ConditionFailed {
            residual: norm_condition_residual(pair),
        });
    }
    let ab = pair.ab();
    let ba = pair.ba();
    let parts = polar::polar(&ab, tol)?;
    let u = &parts.v.dot(&parts.v) + &parts.q;
    let n = pair.dim();
    let residual_unitary = u.adjoint().dot(&u).distance(&ComplexMatrix::identity(n));
    let residual_intertwine = ab.relative_distance(&u.dot(&ba), &ab);
    if residual_unitary > tol || residual_intertwine > tol {
        return Err(Error::VerificationFailed(format!(
            "U = V² + Q misses: ‖U*U − I‖_F = {residual_unitary:.3e}, \
             relative ‖AB − UBA‖_F = {residual_intertwine:.3e} (rank {})",
            parts.rank
        )));
    }
    Ok(UnitaryIntertwiner {
        u,
        v: parts.v,
        p: parts.p,
        q: parts.q,
        residual_intertwine,
        residual_unitary,
    })
}

/// Is `U` unitary with `AB = UBA`, both to `tol`? Any such `U` is accepted,
/// not only the one [`construct_intertwiner`] returns.
pub fn verify_intertwiner(pair: &OperatorPair, u: &ComplexMatrix, tol: f64) -> Result<bool> {
    let n = pair.dim();
    if u.rows() != n || u.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "intertwiner is {}×{} but the pair has dimension {n}",
            u.rows(),
            u.cols()
        )));
    }
    let ab = pair.ab();
    let unitary = u.adjoint().dot(u).distance(&ComplexMatrix::identity(n)) <= tol;
    let intertwines = ab.relative_distance(&u.dot(&pair.ba()), &ab) <= tol;
    Ok(unitary && intertwines)
}
