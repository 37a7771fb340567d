use std::fmt::Debug;

use rug::{Float, Rational};

/// Scalar field a jet is built over. Real scalars carry their precision, so
/// constructors take a prototype value.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn from_rational_like(&self, r: &Rational) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// None when rhs is zero.
    fn div(&self, rhs: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// None when the exponential leaves the scalar field.
    fn exp(&self) -> Option<Self>;
    /// None outside the domain of ln in this field.
    fn ln(&self) -> Option<Self>;

    fn from_i64_like(&self, v: i64) -> Self {
        self.from_rational_like(&Rational::from(v))
    }
    fn one_like(&self) -> Self {
        self.from_i64_like(1)
    }
    fn mul_i64(&self, v: i64) -> Self {
        self.mul(&self.from_i64_like(v))
    }
    fn div_i64(&self, v: i64) -> Self {
        self.div(&self.from_i64_like(v)).expect("nonzero integer divisor")
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        (*rhs != 0).then(|| Rational::from(self / rhs))
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn exp(&self) -> Option<Self> {
        (*self == 0).then(|| Rational::from(1))
    }
    fn ln(&self) -> Option<Self> {
        (*self == 1).then(Rational::new)
    }
}

impl Scalar for Float {
    fn zero_like(&self) -> Self {
        Float::new(self.prec())
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        Float::with_val(self.prec(), r)
    }
    fn add(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec(), self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec(), self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Float::with_val(self.prec(), self * rhs)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| Float::with_val(self.prec(), self / rhs))
    }
    fn neg(&self) -> Self {
        Float::with_val(self.prec(), -self)
    }
    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }
    fn exp(&self) -> Option<Self> {
        Some(Float::with_val(self.prec(), self.exp_ref()))
    }
    fn ln(&self) -> Option<Self> {
        (*self > 0).then(|| Float::with_val(self.prec(), self.ln_ref()))
    }
}
