//! Small dense complex vectors.
//!
//! Only what the designs need: the Hermitian inner product `a†b`, the squared
//! norm and a two-term linear combination. Vectors are immutable values.

use std::ops::Index;

use num_complex::Complex64;

use crate::{Error, Result};

/// A complex channel gain or weight.
pub type ComplexScalar = Complex64;

/// An antenna-indexed complex vector with at least one entry.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(Vec<ComplexScalar>);

impl ComplexVector {
    pub fn new(entries: Vec<ComplexScalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite("complex vector"));
        }
        Ok(Self(entries))
    }

    /// Builds a vector from `(re, im)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[ComplexScalar] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ComplexScalar> {
        self.0.iter()
    }

    /// Multiplies every entry by `alpha`.
    pub fn scale(&self, alpha: ComplexScalar) -> Self {
        Self(self.0.iter().map(|z| alpha * z).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

impl Index<usize> for ComplexVector {
    type Output = ComplexScalar;

    fn index(&self, k: usize) -> &ComplexScalar {
        &self.0[k]
    }
}

impl<'a> IntoIterator for &'a ComplexVector {
    type Item = &'a ComplexScalar;
    type IntoIter = std::slice::Iter<'a, ComplexScalar>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

fn check_dims(a: &ComplexVector, b: &ComplexVector) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// `a†b = Σ conj(a_k)·b_k`.
pub fn hermitian_inner(a: &ComplexVector, b: &ComplexVector) -> Result<ComplexScalar> {
    check_dims(a, b)?;
    Ok(a.iter().zip(b).map(|(x, y)| x.conj() * y).sum())
}

/// `‖a‖²`, summed from `|a_k|²` so the result is real by construction.
pub fn norm_sq(a: &ComplexVector) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// Entrywise `alpha·x + beta·y`.
pub fn axpy(
    alpha: ComplexScalar,
    x: &ComplexVector,
    beta: ComplexScalar,
    y: &ComplexVector,
) -> Result<ComplexVector> {
    check_dims(x, y)?;
    Ok(ComplexVector(
        x.iter().zip(y).map(|(a, b)| alpha * a + beta * b).collect(),
    ))
}
