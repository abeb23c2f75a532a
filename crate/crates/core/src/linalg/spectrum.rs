use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::schur::schur;
use crate::matrix::{ComplexMatrix, C64, ZERO};

/// Eigenvalues with algebraic multiplicity, sorted by real part then
/// imaginary part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSet {
    pub values: Vec<C64>,
    pub source_dim: usize,
}

pub(crate) fn lexicographic(a: &C64, b: &C64) -> Ordering {
    a.re.partial_cmp(&b.re)
        .unwrap_or(Ordering::Equal)
        .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

impl SpectrumSet {
    pub fn from_values(mut values: Vec<C64>) -> Self {
        values.sort_by(lexicographic);
        let source_dim = values.len();
        Self { values, source_dim }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Every element multiplied by `s`, re-sorted.
    pub fn scaled(&self, s: C64) -> Self {
        Self::from_values(self.values.iter().map(|&z| z * s).collect())
    }

    /// Distance from `w` to the nearest element.
    pub fn distance_to(&self, w: C64) -> f64 {
        self.values
            .iter()
            .map(|z| (z - w).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// All eigenvalues of a square matrix via the complex Schur form. Exactly
/// triangular input is read off its diagonal.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<SpectrumSet> {
    let n = m.require_square()?;
    let upper = (0..n).all(|i| (0..i).all(|j| m[(i, j)] == ZERO));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| m[(i, j)] == ZERO));
    if upper || lower {
        return Ok(SpectrumSet::from_values(m.diagonal()));
    }
    let s = schur(m)?;
    Ok(SpectrumSet::from_values(s.t.diagonal()))
}
