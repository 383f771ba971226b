//! Closed intervals with exact rational endpoints.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A closed interval `[lo, hi]` of rationals. Always `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    /// Builds `[lo, hi]`, swapping the endpoints if given in the wrong order.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        if lo <= hi {
            Self { lo, hi }
        } else {
            Self { lo: hi, hi: lo }
        }
    }

    pub fn point(q: BigRational) -> Self {
        Self {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::point(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::point(BigRational::one())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn into_bounds(self) -> (BigRational, BigRational) {
        (self.lo, self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn encloses(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Sign of every member, when it is the same for all of them.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Ordering of every pair of members, when it is the same for all pairs.
    pub fn compare(&self, other: &RationalInterval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            Self {
                lo: -self.hi.clone(),
                hi: -self.lo.clone(),
            }
        } else {
            let hi = if -self.lo.clone() > self.hi {
                -self.lo.clone()
            } else {
                self.hi.clone()
            };
            Self {
                lo: BigRational::zero(),
                hi,
            }
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &RationalInterval) -> Self {
        Self {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Interval of pointwise maxima.
    pub fn max(&self, other: &RationalInterval) -> Self {
        Self {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(&self.lo * q, &self.hi * q)
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        let q = BigRational::from_integer(n.clone());
        self.scale(&q)
    }

    pub fn shift(&self, q: &BigRational) -> Self {
        Self {
            lo: &self.lo + q,
            hi: &self.hi + q,
        }
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(Self::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn checked_div(&self, other: &RationalInterval) -> Option<Self> {
        other.recip().map(|r| self * &r)
    }

    pub fn square(&self) -> Self {
        let a = self.abs();
        Self {
            lo: &a.lo * &a.lo,
            hi: &a.hi * &a.hi,
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        if exp.is_multiple_of(2) {
            let a = self.abs();
            Self {
                lo: num_traits::pow(a.lo, exp as usize),
                hi: num_traits::pow(a.hi, exp as usize),
            }
        } else {
            Self {
                lo: num_traits::pow(self.lo.clone(), exp as usize),
                hi: num_traits::pow(self.hi.clone(), exp as usize),
            }
        }
    }

    /// Widens the endpoints outward onto the dyadic grid `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> Self {
        Self {
            lo: floor_dyadic(&self.lo, bits),
            hi: ceil_dyadic(&self.hi, bits),
        }
    }

    /// Widens outward to `bits` significant bits relative to the magnitude,
    /// but never coarser than the absolute grid `2^-max_abs_bits`.
    pub fn round_relative(&self, bits: u32) -> Self {
        let mag = self.lo.abs().max(self.hi.abs());
        if mag.is_zero() {
            return self.clone();
        }
        let e = log2_floor(&mag);
        let grid = i64::from(bits) - e;
        if grid <= 0 {
            return self.clone();
        }
        self.round_outward(grid.min(u32::MAX as i64) as u32)
    }
}

/// `floor(log2(|q|))` for nonzero `q`.
pub fn log2_floor(q: &BigRational) -> i64 {
    debug_assert!(!q.is_zero());
    let n = q.numer().abs();
    let d = q.denom().abs();
    let mut e = n.bits() as i64 - d.bits() as i64;
    // 2^e <= n/d < 2^(e+1) after at most one adjustment.
    let two = BigInt::from(2);
    let (num, den) = if e >= 0 {
        (n.clone(), &d * num_traits::pow(two.clone(), e as usize))
    } else {
        (&n * num_traits::pow(two.clone(), (-e) as usize), d.clone())
    };
    if num < den {
        e -= 1;
    }
    e
}

/// Natural logarithm of a positive rational as an `f64`, valid far outside
/// the `f64` exponent range.
pub fn ln_f64(q: &BigRational) -> f64 {
    assert!(q.is_positive(), "ln of nonpositive rational");
    let e = log2_floor(q);
    let two = BigRational::from_integer(2.into());
    let scaled = if e >= 0 {
        q / num_traits::pow(two, e as usize)
    } else {
        q * num_traits::pow(two, (-e) as usize)
    };
    // scaled in [1, 2)
    let bits = 60u32;
    let num = floor_dyadic(&scaled, bits);
    let mant = num.numer().to_string().parse::<f64>().unwrap_or(f64::NAN)
        / num.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    mant.ln() + e as f64 * std::f64::consts::LN_2
}

pub fn floor_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.floor().to_integer(), scale)
}

pub fn ceil_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.ceil().to_integer(), scale)
}

/// Floor of a rational as an integer.
pub fn floor_int(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        if self.is_point() {
            return rhs.scale(&self.lo);
        }
        if rhs.is_point() {
            return self.scale(&rhs.lo);
        }
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        RationalInterval { lo, hi }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RationalInterval {
            type Output = RationalInterval;
            fn $method(self, rhs: RationalInterval) -> RationalInterval {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn mul_straddling_zero() {
        let a = RationalInterval::new(q(-1, 1), q(2, 1));
        let b = RationalInterval::new(q(-3, 1), q(1, 1));
        let p = &a * &b;
        assert_eq!(p.lo(), &q(-6, 1));
        assert_eq!(p.hi(), &q(3, 1));
    }

    #[test]
    fn abs_and_sign() {
        let a = RationalInterval::new(q(-5, 2), q(1, 3));
        assert_eq!(a.sign(), None);
        assert_eq!(a.abs(), RationalInterval::new(q(0, 1), q(5, 2)));
        assert_eq!(RationalInterval::zero().sign(), Some(Ordering::Equal));
    }

    #[test]
    fn recip_rejects_zero() {
        assert!(RationalInterval::new(q(-1, 1), q(1, 1)).recip().is_none());
        let r = RationalInterval::new(q(2, 1), q(4, 1)).recip().unwrap();
        assert_eq!(r, RationalInterval::new(q(1, 4), q(1, 2)));
    }

    #[test]
    fn outward_rounding_encloses() {
        let a = RationalInterval::new(q(1, 3), q(2, 3));
        let r = a.round_outward(10);
        assert!(r.encloses(&a));
        assert!(r.width() < q(1, 3) + q(1, 500));
    }

    #[test]
    fn log2_floor_exact_powers() {
        assert_eq!(log2_floor(&q(1, 1)), 0);
        assert_eq!(log2_floor(&q(8, 1)), 3);
        assert_eq!(log2_floor(&q(7, 1)), 2);
        assert_eq!(log2_floor(&q(1, 8)), -3);
        assert_eq!(log2_floor(&q(1, 7)), -3);
        assert_eq!(log2_floor(&q(1, 9)), -4);
    }

    #[test]
    fn ln_of_tiny_rational() {
        let tiny = BigRational::new(1.into(), num_traits::pow(BigInt::from(10), 600));
        let v = ln_f64(&tiny);
        assert!((v + 600.0 * std::f64::consts::LN_10).abs() < 1e-9);
    }
}
