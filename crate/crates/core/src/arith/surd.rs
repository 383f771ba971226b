//! Exact arithmetic in a real quadratic field `Q(sqrt d)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{floor_int, RationalInterval};

/// The number `a + b * sqrt(d)` with rational `a`, `b`.
///
/// `d` is either a positive non-square integer, or `b == 0` (the value is
/// rational and `d` is irrelevant; it is normalised to 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

pub fn is_perfect_square(d: &BigInt) -> bool {
    if d.is_negative() {
        return false;
    }
    let r = d.sqrt();
    &r * &r == *d
}

impl QuadraticSurd {
    /// Panics if `b != 0` and `d` is not a positive non-square.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        if b.is_zero() {
            return Self::rational(a);
        }
        assert!(
            d.is_positive() && !is_perfect_square(&d),
            "radicand must be a positive non-square"
        );
        Self { a, b, d }
    }

    pub fn rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
            d: BigInt::one(),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => BigInt::one(),
            (true, false) => other.d.clone(),
            (false, true) => self.d.clone(),
            (false, false) => {
                assert_eq!(self.d, other.d, "mixed quadratic fields");
                self.d.clone()
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.common_radicand(other);
        Self::new(&self.a + &other.a, &self.b + &other.b, d)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.common_radicand(other);
        let dq = BigRational::from_integer(d.clone());
        let a = &self.a * &other.a + &self.b * &other.b * dq;
        let b = &self.a * &other.b + &self.b * &other.a;
        Self::new(a, b, d)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(&self.a * q, &self.b * q, self.d.clone())
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(n.clone()))
    }

    pub fn add_rational(&self, q: &BigRational) -> Self {
        Self {
            a: &self.a + q,
            b: self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::new(&self.a / &n, -&self.b / &n, self.d.clone()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self.mul(&r))
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(self.d.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            // cannot happen for non-square d
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }

    /// Enclosure using `sqrt(d)` to `bits` binary places.
    pub fn enclose(&self, bits: u32) -> RationalInterval {
        if self.is_rational() {
            return RationalInterval::point(self.a.clone());
        }
        let scaled = &self.d << (2 * bits as usize);
        let r = scaled.sqrt();
        let den = BigInt::one() << bits as usize;
        let lo = BigRational::new(r.clone(), den.clone());
        let hi = BigRational::new(r + 1, den);
        let root = RationalInterval::new(lo, hi);
        root.scale(&self.b).shift(&self.a)
    }

    /// Enclosure whose width is at most `2^-rel_bits` times its distance from zero.
    pub fn enclose_relative(&self, rel_bits: u32) -> RationalInterval {
        if self.is_rational() {
            return RationalInterval::point(self.a.clone());
        }
        let mut bits = rel_bits + 16;
        loop {
            let iv = self.enclose(bits);
            if iv.sign().is_some() {
                let lower = iv.abs().lo().clone();
                let rel = BigRational::new(BigInt::one(), BigInt::one() << rel_bits as usize);
                if iv.width() <= lower * rel {
                    return iv;
                }
            }
            bits *= 2;
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return floor_int(&self.a);
        }
        let mut bits = 64;
        loop {
            let iv = self.enclose(bits);
            let lo = floor_int(iv.lo());
            let hi = floor_int(iv.hi());
            if lo == hi {
                return lo;
            }
            if &hi - &lo == BigInt::one() {
                let k = BigRational::from_integer(hi.clone());
                return if self.add_rational(&-k).signum() == Ordering::Less {
                    lo
                } else {
                    hi
                };
            }
            bits *= 2;
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}
