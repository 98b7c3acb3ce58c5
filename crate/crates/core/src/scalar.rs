//! Scalar abstraction for the pass operations.
//!
//! The passing-through recurrences are written once, generically, and run on
//! two scalar types: `f64` for the production pipeline (routed through the
//! instrumented [`crate::sf`] arithmetic) and [`num::BigRational`] so the test
//! suites can replay the exact same branch logic in exact arithmetic and
//! compare factor products for strict equality.

use num::{BigRational, One, Signed, Zero};

/// Nonnegative semifield scalar: `+`, `*`, `/` and exact zero tests.
pub trait PassScalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn is_nonneg(&self) -> bool;
    fn add(a: &Self, b: &Self) -> Self;
    fn mul(a: &Self, b: &Self) -> Self;
    fn div(a: &Self, b: &Self) -> Self;
}

impl PassScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_one(&self) -> bool {
        *self == 1.0
    }
    fn is_nonneg(&self) -> bool {
        *self >= 0.0 && self.is_finite()
    }
    fn add(a: &Self, b: &Self) -> Self {
        crate::sf::add(*a, *b)
    }
    fn mul(a: &Self, b: &Self) -> Self {
        crate::sf::mul(*a, *b)
    }
    fn div(a: &Self, b: &Self) -> Self {
        crate::sf::div(*a, *b)
    }
}

impl PassScalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn is_nonneg(&self) -> bool {
        !self.is_negative()
    }
    fn add(a: &Self, b: &Self) -> Self {
        a + b
    }
    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn div(a: &Self, b: &Self) -> Self {
        a / b
    }
}

/// Exact conversion of an `f64` value into a rational. Every finite `f64`
/// is dyadic, so this never rounds.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}
