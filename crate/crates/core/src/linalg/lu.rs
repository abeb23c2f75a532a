use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};

/// LU factorization with partial pivoting, `P M = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    factors: ComplexMatrix,
    perm: Vec<usize>,
    swaps: usize,
    singular: bool,
}

pub fn lu(m: &ComplexMatrix) -> Result<Lu> {
    let n = m.require_square()?;
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = 0;
    let mut singular = false;

    for k in 0..n {
        let (pivot, pivot_abs) = (k..n)
            .map(|i| (i, a.get(i, k).norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot_abs == 0.0 {
            singular = true;
            continue;
        }
        if pivot != k {
            let data = a.data_mut();
            for j in 0..n {
                data.swap(k * n + j, pivot * n + j);
            }
            perm.swap(k, pivot);
            swaps += 1;
        }
        let d = a.get(k, k);
        for i in (k + 1)..n {
            let factor = a.get(i, k) / d;
            a.set(i, k, factor);
            if factor == ZERO {
                continue;
            }
            for j in (k + 1)..n {
                let v = a.get(i, j) - factor * a.get(k, j);
                a.set(i, j, v);
            }
        }
    }

    Ok(Lu {
        factors: a,
        perm,
        swaps,
        singular,
    })
}

impl Lu {
    pub fn dim(&self) -> usize {
        self.factors.rows()
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> C64 {
        if self.singular {
            return ZERO;
        }
        let prod: C64 = self.factors.diagonal().into_iter().product();
        if self.swaps % 2 == 1 {
            -prod
        } else {
            prod
        }
    }

    /// Solve `M X = rhs` column by column.
    pub fn solve(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.dim();
        if rhs.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, expected {n}",
                rhs.rows()
            )));
        }
        if self.singular {
            return Err(Error::Singular);
        }
        let lu = &self.factors;
        let mut out = ComplexMatrix::zeros(n, rhs.cols());
        let mut col = vec![ZERO; n];
        for c in 0..rhs.cols() {
            for i in 0..n {
                col[i] = rhs.get(self.perm[i], c);
            }
            for i in 0..n {
                let mut v = col[i];
                for k in 0..i {
                    v -= lu.get(i, k) * col[k];
                }
                col[i] = v;
            }
            for i in (0..n).rev() {
                let mut v = col[i];
                for k in (i + 1)..n {
                    v -= lu.get(i, k) * col[k];
                }
                col[i] = v / lu.get(i, i);
            }
            for i in 0..n {
                out.set(i, c, col[i]);
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        self.solve(&ComplexMatrix::identity(self.dim()))
    }
}

pub fn determinant(m: &ComplexMatrix) -> Result<C64> {
    Ok(lu(m)?.det())
}

pub fn inverse(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    lu(m)?.inverse()
}
