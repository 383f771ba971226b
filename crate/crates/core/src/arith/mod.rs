//! Exact and interval arithmetic underlying every numeric result.

pub mod decimal;
pub mod elementary;
pub mod interval;
pub mod real;
pub mod surd;

pub use elementary::ComplexInterval;
pub use interval::RationalInterval;
pub use real::Real;
pub use surd::QuadraticSurd;

/// Binary working precision equivalent to `digits` decimal digits, with guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}
