use rug::Float;

use crate::error::{Error, Result};

pub const MIN_WORKING_BITS: u32 = 64;
pub const MIN_GUARD_BITS: u32 = 32;
pub const DEFAULT_WORKING_BITS: u32 = 256;
pub const DEFAULT_GUARD_BITS: u32 = 32;

/// Precision carried by value through every numeric operation.
///
/// Arithmetic runs at `working_bits + guard_bits`; results are trusted to
/// `working_bits`, and recognition accepts candidates whose distance to the
/// input is at most `recognition_tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionContext {
    working_bits: u32,
    guard_bits: u32,
    recognition_tolerance: Float,
}

impl PrecisionContext {
    pub fn new(working_bits: u32) -> Result<Self> {
        Self::with_guard(working_bits, DEFAULT_GUARD_BITS)
    }

    pub fn with_guard(working_bits: u32, guard_bits: u32) -> Result<Self> {
        if working_bits < MIN_WORKING_BITS {
            return Err(Error::Config(format!(
                "working precision {working_bits} bits is below the minimum of {MIN_WORKING_BITS}"
            )));
        }
        if guard_bits < MIN_GUARD_BITS {
            return Err(Error::Config(format!(
                "guard precision {guard_bits} bits is below the minimum of {MIN_GUARD_BITS}"
            )));
        }
        // 2^-(bits/2), kept strictly below 2^-32 at the 64-bit floor.
        let exp = (working_bits / 2).max(33);
        let recognition_tolerance = Float::with_val(working_bits + guard_bits, Float::i_exp(1, -(exp as i32)));
        Ok(Self { working_bits, guard_bits, recognition_tolerance })
    }

    pub fn with_tolerance(mut self, tolerance: Float) -> Result<Self> {
        let ceiling = Float::with_val(64, Float::i_exp(1, -32));
        if tolerance <= 0 || tolerance >= ceiling {
            return Err(Error::Config("recognition tolerance must lie in (0, 2^-32)".into()));
        }
        self.recognition_tolerance = Float::with_val(self.prec(), tolerance);
        Ok(self)
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Precision used for internal arithmetic.
    pub fn prec(&self) -> u32 {
        self.working_bits + self.guard_bits
    }

    pub fn recognition_tolerance(&self) -> &Float {
        &self.recognition_tolerance
    }

    /// `2^-(working_bits + guard_bits)`, the cut-off for truncating sums.
    pub fn tail_cut(&self) -> Float {
        Float::with_val(self.prec(), Float::i_exp(1, -(self.prec() as i32)))
    }

    /// `2^-exp` at working precision.
    pub fn pow2_neg(&self, exp: u32) -> Float {
        Float::with_val(self.prec(), Float::i_exp(1, -(exp as i32)))
    }

    /// Fresh value at this context's precision.
    pub fn real<T>(&self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.prec(), value)
    }

    /// Same context with the working precision doubled.
    pub fn doubled(&self) -> Self {
        Self::with_guard(self.working_bits * 2, self.guard_bits).expect("doubling keeps bounds")
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(DEFAULT_WORKING_BITS).expect("default precision is valid")
    }
}
