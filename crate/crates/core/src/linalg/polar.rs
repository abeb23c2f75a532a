use serde::Serialize;

use crate::error::Result;
use crate::linalg::svd::svd;
use crate::matrix::{ComplexMatrix, ONE, ZERO};

/// Polar decomposition `C = V |C|` together with the range and kernel
/// projections of `|C|`.
#[derive(Debug, Clone, Serialize)]
pub struct PolarParts {
    /// Partial isometry with initial space `range |C|`.
    #[serde(rename = "V")]
    pub v: ComplexMatrix,
    /// `(C*C)^{1/2}`.
    #[serde(rename = "absC")]
    pub abs: ComplexMatrix,
    /// Projection onto the closure of the range of `|C|` (`= V*V`).
    #[serde(rename = "P")]
    pub p: ComplexMatrix,
    /// Projection onto `ker C`.
    #[serde(rename = "Q")]
    pub q: ComplexMatrix,
    pub rank: usize,
}

/// Singular values above `tol · σ_max` are treated as nonzero.
pub fn polar(c: &ComplexMatrix, tol: f64) -> Result<PolarParts> {
    let n = c.require_square()?;
    let dec = svd(c)?;
    let cutoff = tol * dec.max_singular();
    let rank = dec
        .singulars
        .iter()
        .filter(|&&s| s > cutoff && s > 0.0)
        .count();

    let xs = ComplexMatrix::from_fn(n, n, |i, j| dec.x.get(i, j) * dec.singulars[j]);
    let abs = xs.dot(&dec.x.adjoint());
    let abs = (&abs + &abs.adjoint()).scale_real(0.5);

    let mask = ComplexMatrix::from_fn(n, n, |i, j| if i == j && i < rank { ONE } else { ZERO });
    let v = dec.w.dot(&mask).dot(&dec.x.adjoint());
    let p = v.adjoint().dot(&v);
    let p = (&p + &p.adjoint()).scale_real(0.5);
    let q = &ComplexMatrix::identity(n) - &p;
    Ok(PolarParts { v, abs, p, q, rank })
}

/// `|C| = (C*C)^{1/2}`.
pub fn abs(c: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(polar(c, 0.0)?.abs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli::*;
    use crate::matrix::I;

    fn verify(c: &ComplexMatrix, parts: &PolarParts) {
        let scale = c.frobenius_norm().max(1.0);
        assert!(parts.v.dot(&parts.abs).distance(c) <= 1e-12 * scale);
        assert!(parts.p.dot(&parts.p).distance(&parts.p) < 1e-12);
        assert!(parts.p.hermitian_deviation() < 1e-12);
        let id = ComplexMatrix::identity(c.rows());
        assert!((&parts.p + &parts.q).distance(&id) < 1e-12);
    }

    #[test]
    fn unitary_product_is_its_own_isometry() {
        let a = sigma_x();
        let b = (&sigma_x() + &sigma_y()).scale_real(std::f64::consts::FRAC_1_SQRT_2);
        let c = a.dot(&b);
        let parts = polar(&c, 1e-9).unwrap();
        verify(&c, &parts);
        assert_eq!(parts.rank, 2);
        assert!(parts.abs.distance(&ComplexMatrix::identity(2)) < 1e-14);
        assert!(parts.v.distance(&c) < 1e-14);
        // V² = iσ_z
        assert!(parts.v.dot(&parts.v).distance(&sigma_z().scale(I)) < 1e-14);
    }

    #[test]
    fn identity_polar() {
        let parts = polar(&ComplexMatrix::identity(3), 1e-9).unwrap();
        assert_eq!(parts.v, ComplexMatrix::identity(3));
        assert_eq!(parts.abs, ComplexMatrix::identity(3));
        assert!(parts.q.frobenius_norm() < 1e-15);
    }

    #[test]
    fn nilpotent_polar() {
        let c = ComplexMatrix::from_real_rows(&[[0.0, 0.0], [1.0, 0.0]]);
        let parts = polar(&c, 1e-9).unwrap();
        verify(&c, &parts);
        assert_eq!(parts.rank, 1);
        assert!(parts.abs.distance(&ComplexMatrix::from_real_diag(&[1.0, 0.0])) < 1e-15);
        assert!(parts.v.distance(&c) < 1e-15);
        assert!(parts.q.distance(&ComplexMatrix::from_real_diag(&[0.0, 1.0])) < 1e-15);
    }
}
