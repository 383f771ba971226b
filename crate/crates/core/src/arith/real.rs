//! Real numbers known either exactly (quadratic surds, which include the
//! rationals) or through a rigorous rational enclosure.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::interval::RationalInterval;
use super::surd::QuadraticSurd;
use crate::error::{Error, Result};

/// Refinement cap for surd enclosures when compared against intervals.
const MAX_SURD_BITS: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Real {
    Exact(QuadraticSurd),
    Enclosed(RationalInterval),
}

impl Real {
    pub fn rational(q: BigRational) -> Self {
        Real::Exact(QuadraticSurd::rational(q))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Real::Exact(QuadraticSurd::from_integer(n))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    /// Rational value if known exactly.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Real::Exact(s) => s.as_rational().cloned(),
            Real::Enclosed(iv) if iv.is_point() => Some(iv.lo().clone()),
            Real::Enclosed(_) => None,
        }
    }

    /// An enclosure; exact surds are widened to `bits` binary places.
    pub fn enclose(&self, bits: u32) -> RationalInterval {
        match self {
            Real::Exact(s) => s.enclose(bits),
            Real::Enclosed(iv) => iv.clone(),
        }
    }

    /// An enclosure of relative width `2^-rel_bits` when the value is a
    /// nonzero surd; intervals are returned as they are.
    pub fn enclose_relative(&self, rel_bits: u32) -> RationalInterval {
        match self {
            Real::Exact(s) if s.is_zero() => RationalInterval::zero(),
            Real::Exact(s) => s.enclose_relative(rel_bits),
            Real::Enclosed(iv) => iv.clone(),
        }
    }

    /// `self * n + m`.
    pub fn affine(&self, n: &BigInt, m: &BigInt) -> Real {
        let mq = BigRational::from_integer(m.clone());
        match self {
            Real::Exact(s) => Real::Exact(s.scale_int(n).add_rational(&mq)),
            Real::Enclosed(iv) => Real::Enclosed(iv.scale_int(n).shift(&mq)),
        }
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Exact(s) => Real::Exact(s.neg()),
            Real::Enclosed(iv) => Real::Enclosed(-iv),
        }
    }

    pub fn abs(&self) -> Real {
        match self {
            Real::Exact(s) => Real::Exact(s.abs()),
            Real::Enclosed(iv) => Real::Enclosed(iv.abs()),
        }
    }

    pub fn sub(&self, other: &Real) -> Real {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) if compatible(a, b) => Real::Exact(a.sub(b)),
            _ => {
                let bits = 256;
                Real::Enclosed(&self.enclose(bits) - &other.enclose(bits))
            }
        }
    }

    /// Rigorous sign, or `PrecisionExhausted`.
    pub fn signum(&self) -> Result<Ordering> {
        match self {
            Real::Exact(s) => Ok(s.signum()),
            Real::Enclosed(iv) => iv.sign().ok_or_else(|| {
                Error::PrecisionExhausted(format!("sign of enclosure {iv} is unresolved"))
            }),
        }
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.signum()? == Ordering::Equal)
    }

    /// Rigorous comparison.
    pub fn compare(&self, other: &Real) -> Result<Ordering> {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) if compatible(a, b) => Ok(a.cmp_exact(b)),
            _ => {
                let mut bits = 64;
                loop {
                    let a = self.enclose(bits);
                    let b = other.enclose(bits);
                    if let Some(o) = a.compare(&b) {
                        return Ok(o);
                    }
                    let refinable = matches!(self, Real::Exact(_)) || matches!(other, Real::Exact(_));
                    if !refinable || bits >= MAX_SURD_BITS {
                        return Err(Error::PrecisionExhausted(format!(
                            "cannot order enclosures {a} and {b}"
                        )));
                    }
                    bits *= 2;
                }
            }
        }
    }

    pub fn compare_rational(&self, q: &BigRational) -> Result<Ordering> {
        self.compare(&Real::rational(q.clone()))
    }
}

fn compatible(a: &QuadraticSurd, b: &QuadraticSurd) -> bool {
    a.is_rational() || b.is_rational() || a.radicand() == b.radicand()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn enclosure_comparisons() {
        let a = Real::Enclosed(RationalInterval::new(q(1, 10), q(2, 10)));
        let b = Real::Enclosed(RationalInterval::new(q(3, 10), q(4, 10)));
        assert_eq!(a.compare(&b).unwrap(), Ordering::Less);
        let c = Real::Enclosed(RationalInterval::new(q(15, 100), q(35, 100)));
        assert!(matches!(a.compare(&c), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn surd_against_interval_refines() {
        let phi = Real::Exact(QuadraticSurd::new(q(1, 2), q(1, 2), 5.into()));
        let iv = Real::Enclosed(RationalInterval::new(q(1618033, 1000000), q(1618033, 1000000)));
        assert_eq!(phi.compare(&iv).unwrap(), Ordering::Greater);
    }

    #[test]
    fn straddling_sign_is_exhausted() {
        let z = Real::Enclosed(RationalInterval::new(q(-1, 10), q(1, 10)));
        assert!(z.signum().is_err());
        assert!(Real::integer(0).is_zero().unwrap());
    }
}
