//! Complex Schur decomposition `M = Z T Z*` by Householder reduction to
//! upper Hessenberg form followed by single-shift QR sweeps with Givens
//! rotations and Wilkinson shifts.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

#[derive(Debug, Clone)]
pub struct Schur {
    /// Unitary Schur vectors.
    pub z: ComplexMatrix,
    /// Upper triangular factor; its diagonal holds the eigenvalues.
    pub t: ComplexMatrix,
}

/// Householder vector `v` with `(I − 2vv*/v*v) x = α e₁`. Returns `None`
/// when `x` is already a multiple of `e₁`.
pub(crate) fn householder(x: &[C64]) -> Option<(Vec<C64>, C64)> {
    let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
    if tail == 0.0 {
        return None;
    }
    let norm = (x[0].norm_sqr() + tail).sqrt();
    let phase = if x[0].norm() == 0.0 { ONE } else { x[0] / x[0].norm() };
    let alpha = -phase * norm;
    let mut v = x.to_vec();
    v[0] -= alpha;
    Some((v, alpha))
}

/// `rows × cols` block starting at (r0, c0) ← H · block.
fn reflect_left(m: &mut ComplexMatrix, v: &[C64], r0: usize, c0: usize) {
    let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    for j in c0..m.cols() {
        let mut s = ZERO;
        for (k, vk) in v.iter().enumerate() {
            s += vk.conj() * m.get(r0 + k, j);
        }
        let s = s * (2.0 / vnorm);
        for (k, vk) in v.iter().enumerate() {
            let z = m.get(r0 + k, j) - vk * s;
            m.set(r0 + k, j, z);
        }
    }
}

/// block ← block · H, acting on columns c0.. for rows r0..
fn reflect_right(m: &mut ComplexMatrix, v: &[C64], r0: usize, c0: usize) {
    let vnorm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    for i in r0..m.rows() {
        let mut s = ZERO;
        for (k, vk) in v.iter().enumerate() {
            s += m.get(i, c0 + k) * vk;
        }
        let s = s * (2.0 / vnorm);
        for (k, vk) in v.iter().enumerate() {
            let z = m.get(i, c0 + k) - s * vk.conj();
            m.set(i, c0 + k, z);
        }
    }
}

/// Householder QR, `M = Q R` with `Q` unitary (m×m) and `R` upper
/// trapezoidal. Diagonal of `R` is made real non-negative.
pub fn qr(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = m.clone();
    let mut q = ComplexMatrix::identity(rows);
    for k in 0..cols.min(rows.saturating_sub(1)) {
        let x: Vec<C64> = (k..rows).map(|i| r.get(i, k)).collect();
        if let Some((v, _)) = householder(&x) {
            reflect_left(&mut r, &v, k, k);
            reflect_right(&mut q, &v, 0, k);
            for i in (k + 1)..rows {
                r.set(i, k, ZERO);
            }
        }
    }
    for k in 0..cols.min(rows) {
        let d = r.get(k, k);
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for j in 0..cols {
                let z = r.get(k, j) * phase.conj();
                r.set(k, j, z);
            }
            for i in 0..rows {
                let z = q.get(i, k) * phase;
                q.set(i, k, z);
            }
        }
    }
    (q, r)
}

/// Unitary similarity to upper Hessenberg form: `M = Q H Q*`.
pub fn hessenberg(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = m.require_square()?;
    let mut h = m.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = ((k + 1)..n).map(|i| h.get(i, k)).collect();
        if let Some((v, _)) = householder(&x) {
            reflect_left(&mut h, &v, k + 1, 0);
            reflect_right(&mut h, &v, 0, k + 1);
            reflect_right(&mut q, &v, 0, k + 1);
            for i in (k + 2)..n {
                h.set(i, k, ZERO);
            }
        }
    }
    Ok((q, h))
}

/// Givens pair `(c, s)` with `[c s; −s̄ c] [x; y] = [r; 0]`, `c` real.
fn givens(x: C64, y: C64) -> (f64, C64) {
    if y == ZERO {
        return (1.0, ZERO);
    }
    if x == ZERO {
        return (0.0, ONE);
    }
    let (ax, ay) = (x.norm(), y.norm());
    let nrm = ax.hypot(ay);
    let c = ax / nrm;
    let s = (x / ax) * y.conj() / nrm;
    (c, s)
}

fn rotate_rows(m: &mut ComplexMatrix, k: usize, c: f64, s: C64, from_col: usize) {
    for j in from_col..m.cols() {
        let a = m.get(k, j);
        let b = m.get(k + 1, j);
        m.set(k, j, a * c + s * b);
        m.set(k + 1, j, -s.conj() * a + b * c);
    }
}

fn rotate_cols(m: &mut ComplexMatrix, k: usize, c: f64, s: C64, to_row: usize) {
    for i in 0..to_row {
        let a = m.get(i, k);
        let b = m.get(i, k + 1);
        m.set(i, k, a * c + b * s.conj());
        m.set(i, k + 1, -a * s + b * c);
    }
}

/// Eigenvalue of the 2×2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let (r1, r2) = (mid + disc, mid - disc);
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

pub fn schur(m: &ComplexMatrix) -> Result<Schur> {
    let n = m.require_square()?;
    let (mut z, mut h) = hessenberg(m)?;
    let scale = h.frobenius_norm();
    if n == 1 || scale == 0.0 {
        return Ok(Schur { z, t: h });
    }

    let mut hi = n - 1;
    let mut iterations = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        // Locate the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = h.get(lo, lo - 1).norm();
            let mut local = h.get(lo - 1, lo - 1).norm() + h.get(lo, lo).norm();
            if local == 0.0 {
                local = scale;
            }
            if sub <= f64::EPSILON * local {
                h.set(lo, lo - 1, ZERO);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iterations = 0;
            continue;
        }

        iterations += 1;
        total += 1;
        if iterations > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::ConvergenceFailure {
                algorithm: "complex Schur QR",
                iterations: total,
            });
        }

        let shift = if iterations.is_multiple_of(10) {
            // Exceptional shift to break cycles (e.g. permutation matrices).
            h.get(hi, hi) + h.get(hi, hi - 1).norm() * 0.75
        } else {
            wilkinson_shift(
                h.get(hi - 1, hi - 1),
                h.get(hi - 1, hi),
                h.get(hi, hi - 1),
                h.get(hi, hi),
            )
        };

        // Implicit single-shift sweep over rows lo..=hi.
        let mut x = h.get(lo, lo) - shift;
        let mut y = h.get(lo + 1, lo);
        for k in lo..hi {
            if k > lo {
                x = h.get(k, k - 1);
                y = h.get(k + 1, k - 1);
            }
            let (c, s) = givens(x, y);
            let from_col = if k > lo { k - 1 } else { k };
            rotate_rows(&mut h, k, c, s, from_col);
            let to_row = (k + 3).min(hi + 1);
            rotate_cols(&mut h, k, c, s, to_row);
            rotate_cols(&mut z, k, c, s, n);
            if k > lo {
                h.set(k + 1, k - 1, ZERO);
            }
        }
    }

    for i in 1..n {
        for j in 0..i {
            h.set(i, j, ZERO);
        }
    }
    Ok(Schur { z, t: h })
}
