//! Cyclic Jacobi eigensolver for Hermitian matrices.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};

const MAX_SWEEPS: usize = 100;

/// Unitary 2×2 rotation `G = diag(1, e^{-iφ}) · [[c, s], [−s, c]]` that
/// diagonalizes the Hermitian block `[[a, g], [ḡ, b]]` under `G* · G`.
pub(crate) fn jacobi_rotation(a: f64, b: f64, g: C64) -> [[C64; 2]; 2] {
    let mag = g.norm();
    let phase = g / mag;
    let tau = (b - a) / (2.0 * mag);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e = phase.conj();
    [
        [C64::new(c, 0.0), C64::new(s, 0.0)],
        [-e * s, e * c],
    ]
}

/// Right-multiply columns `p`, `q` of `m` by the 2×2 unitary `g`.
pub(crate) fn apply_right(m: &mut ComplexMatrix, p: usize, q: usize, g: &[[C64; 2]; 2]) {
    for i in 0..m.rows() {
        let (a, b) = (m.get(i, p), m.get(i, q));
        m.set(i, p, a * g[0][0] + b * g[1][0]);
        m.set(i, q, a * g[0][1] + b * g[1][1]);
    }
}

/// Left-multiply rows `p`, `q` of `m` by `g*`.
fn apply_left_adjoint(m: &mut ComplexMatrix, p: usize, q: usize, g: &[[C64; 2]; 2]) {
    for j in 0..m.cols() {
        let (a, b) = (m.get(p, j), m.get(q, j));
        m.set(p, j, g[0][0].conj() * a + g[1][0].conj() * b);
        m.set(q, j, g[0][1].conj() * a + g[1][1].conj() * b);
    }
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigen-decomposition `M = U diag(values) U*` of a Hermitian matrix.
/// Eigenvalues are returned ascending, with matching eigenvector columns.
pub fn hermitian_eig(m: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.require_square()?;
    let scale = m.frobenius_norm();
    let deviation = m.hermitian_deviation() / scale.max(1.0);
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let mut a = (m + &m.adjoint()).scale_real(0.5);
    let mut u = ComplexMatrix::identity(n);
    let target = f64::EPSILON * scale.max(f64::MIN_POSITIVE);

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a.get(p, q);
                if g == ZERO {
                    continue;
                }
                let rot = jacobi_rotation(a.get(p, p).re, a.get(q, q).re, g);
                apply_right(&mut a, p, q, &rot);
                apply_left_adjoint(&mut a, p, q, &rot);
                a.set(p, q, ZERO);
                a.set(q, p, ZERO);
                for k in [p, q] {
                    let d = a.get(k, k).re;
                    a.set(k, k, C64::new(d, 0.0));
                }
                apply_right(&mut u, p, q, &rot);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(Error::ConvergenceFailure {
            algorithm: "Hermitian Jacobi",
            iterations: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
    let values = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| u.get(i, order[j]));
    Ok((values, vectors))
}
