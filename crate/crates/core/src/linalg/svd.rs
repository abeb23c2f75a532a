//! One-sided (Hestenes) Jacobi SVD.

use crate::error::{Error, Result};
use crate::linalg::hermitian::{apply_right, jacobi_rotation};
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};

const MAX_SWEEPS: usize = 80;

#[derive(Debug, Clone)]
pub struct Svd {
    /// Left singular vectors, unitary `rows × rows`.
    pub w: ComplexMatrix,
    /// Singular values, descending and non-negative.
    pub singulars: Vec<f64>,
    /// Right singular vectors, unitary `cols × cols`.
    pub x: ComplexMatrix,
}

impl Svd {
    /// `W · diag(singulars) · X*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.w.rows(), self.x.rows());
        let sigma = ComplexMatrix::from_fn(m, n, |i, j| {
            if i == j {
                C64::new(self.singulars[i], 0.0)
            } else {
                ZERO
            }
        });
        self.w.dot(&sigma).dot(&self.x.adjoint())
    }

    pub fn max_singular(&self) -> f64 {
        self.singulars.first().copied().unwrap_or(0.0)
    }

    pub fn min_singular(&self) -> f64 {
        self.singulars.last().copied().unwrap_or(0.0)
    }
}

fn column_dot(m: &ComplexMatrix, p: usize, q: usize) -> C64 {
    (0..m.rows()).map(|i| m.get(i, p).conj() * m.get(i, q)).sum()
}

fn column_norm_sqr(m: &ComplexMatrix, p: usize) -> f64 {
    (0..m.rows()).map(|i| m.get(i, p).norm_sqr()).sum()
}

/// Orthonormalize the leading `keep` columns of `w` (modified Gram–Schmidt,
/// applied twice) and complete them to a unitary basis.
fn complete_unitary(w: &mut ComplexMatrix, keep: usize) {
    let m = w.rows();
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(m);
    let orthogonalize = |v: &mut Vec<C64>, basis: &[Vec<C64>]| {
        for _ in 0..2 {
            for b in basis {
                let proj: C64 = b.iter().zip(v.iter()).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
    };
    for j in 0..keep {
        let mut v = w.column(j);
        orthogonalize(&mut v, &basis);
        let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 {
            v.iter_mut().for_each(|z| *z /= nrm);
            basis.push(v);
        }
    }
    let mut e = 0;
    while basis.len() < m && e < m {
        let mut v = vec![ZERO; m];
        v[e] = ONE;
        e += 1;
        orthogonalize(&mut v, &basis);
        let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.5 {
            v.iter_mut().for_each(|z| *z /= nrm);
            basis.push(v);
        }
    }
    for (j, b) in basis.iter().enumerate() {
        for i in 0..m {
            w.set(i, j, b[i]);
        }
    }
}

pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if m.rows() < m.cols() {
        let t = svd(&m.adjoint())?;
        return Ok(Svd {
            w: t.x,
            singulars: t.singulars,
            x: t.w,
        });
    }
    let (rows, n) = (m.rows(), m.cols());
    let mut u = m.clone();
    let mut v = ComplexMatrix::identity(n);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = column_norm_sqr(&u, p);
                let beta = column_norm_sqr(&u, q);
                let gamma = column_dot(&u, p, q);
                if gamma.norm() <= f64::EPSILON * (alpha * beta).sqrt() || gamma == ZERO {
                    continue;
                }
                rotated = true;
                let rot = jacobi_rotation(alpha, beta, gamma);
                apply_right(&mut u, p, q, &rot);
                apply_right(&mut v, p, q, &rot);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            algorithm: "one-sided Jacobi SVD",
            iterations: MAX_SWEEPS,
        });
    }

    let norms: Vec<f64> = (0..n).map(|j| column_norm_sqr(&u, j).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let singulars: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let sigma_max = singulars.first().copied().unwrap_or(0.0);
    // Columns with negligible norm carry no direction; they are rebuilt by completion.
    let floor = sigma_max * f64::EPSILON * (rows.max(n) as f64);
    let keep = singulars.iter().take_while(|&&s| s > floor && s > 0.0).count();

    let mut w = ComplexMatrix::zeros(rows, rows);
    for (k, &j) in order.iter().enumerate().take(keep) {
        for i in 0..rows {
            w.set(i, k, u.get(i, j) / norms[j]);
        }
    }
    complete_unitary(&mut w, keep);
    let x = ComplexMatrix::from_fn(n, n, |i, k| v.get(i, order[k]));
    Ok(Svd { w, singulars, x })
}

/// Spectral (operator 2-) norm.
pub fn spectral_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(svd(m)?.max_singular())
}
