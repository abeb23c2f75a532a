use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

/// Two square operators of equal dimension, optionally with the factor
/// they are known to commute up to.
///
/// JSON: `{"A": matrix, "B": matrix, "declared_lambda": [re, im] | null, "label": text}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct OperatorPair {
    #[serde(rename = "A")]
    a: ComplexMatrix,
    #[serde(rename = "B")]
    b: ComplexMatrix,
    declared_lambda: Option<C64>,
    label: String,
}

#[derive(Deserialize)]
struct RawPair {
    #[serde(rename = "A")]
    a: ComplexMatrix,
    #[serde(rename = "B")]
    b: ComplexMatrix,
    #[serde(default)]
    declared_lambda: Option<C64>,
    #[serde(default)]
    label: String,
}

impl TryFrom<RawPair> for OperatorPair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        OperatorPair::new(raw.a, raw.b, raw.declared_lambda, raw.label)
    }
}

impl OperatorPair {
    pub fn new(
        a: ComplexMatrix,
        b: ComplexMatrix,
        declared_lambda: Option<C64>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let n = a.require_square()?;
        let m = b.require_square()?;
        if n != m {
            return Err(Error::DimensionMismatch(format!(
                "pair operators must share a dimension, got {n} and {m}"
            )));
        }
        Ok(Self {
            a,
            b,
            declared_lambda,
            label: label.into(),
        })
    }

    /// Unlabelled pair without a declared factor.
    pub fn of(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        Self::new(a, b, None, "")
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn declared_lambda(&self) -> Option<C64> {
        self.declared_lambda
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ab(&self) -> ComplexMatrix {
        self.a.dot(&self.b)
    }

    pub fn ba(&self) -> ComplexMatrix {
        self.b.dot(&self.a)
    }

    /// `(B, A)`; a declared `λ` becomes `λ⁻¹`.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.b.clone(),
            b: self.a.clone(),
            declared_lambda: self.declared_lambda.map(|l| l.inv()),
            label: format!("{} (swapped)", self.label),
        }
    }

    /// `(αA, βB)`; the factor is unchanged.
    pub fn scaled(&self, alpha: C64, beta: C64) -> Self {
        Self {
            a: self.a.scale(alpha),
            b: self.b.scale(beta),
            declared_lambda: self.declared_lambda,
            label: self.label.clone(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}
