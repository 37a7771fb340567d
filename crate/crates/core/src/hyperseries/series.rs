use crate::error::{Error, Result};

/// Σ_{n≤N} cₙ zⁿ truncated at a fixed order N.
#[derive(Debug, Clone, PartialEq)]
pub struct ZPowerSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Clone> ZPowerSeries<C> {
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least its constant term");
        Self { coeffs }
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn map<D: Clone>(&self, f: impl FnMut(&C) -> D) -> ZPowerSeries<D> {
        ZPowerSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Explicit truncation to a lower order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.truncation_order() {
            return Err(Error::TruncationMismatch { lhs: self.truncation_order(), rhs: order });
        }
        Ok(Self { coeffs: self.coeffs[..=order].to_vec() })
    }

    pub fn check_same(&self, rhs: &Self) -> Result<()> {
        if self.coeffs.len() == rhs.coeffs.len() {
            Ok(())
        } else {
            Err(Error::TruncationMismatch { lhs: self.truncation_order(), rhs: rhs.truncation_order() })
        }
    }
}
