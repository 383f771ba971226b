//! Rigorous enclosures of pi, exp, and the unit-circle map `r -> e^{2 pi i r}`.
//!
//! Every routine returns an interval guaranteed to contain the true value;
//! `bits` controls the width (roughly `2^-bits`, relative for `exp`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{floor_int, log2_floor, RationalInterval};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow2(bits: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << bits as usize)
}

/// `atan(1/x)` for integer `x >= 2` by the alternating Taylor series.
fn atan_recip(x: i64, bits: u32) -> RationalInterval {
    let wbits = bits + 16;
    let eps = pow2(wbits).recip();
    let inv_x2 = q(1, x * x);
    // 1/x^(2k+1), tracked as an enclosure
    let mut power = RationalInterval::point(q(1, x));
    let mut sum = RationalInterval::zero();
    let mut k: i64 = 0;
    loop {
        let term = power.scale(&q(1, 2 * k + 1));
        if term.hi() < &eps {
            // alternating series with decreasing terms: tail bounded by the next term
            let mag = term.hi().clone();
            let tail = RationalInterval::new(-mag.clone(), mag);
            return (&sum + &tail).round_outward(wbits);
        }
        let t = term.round_outward(wbits + 8);
        sum = if k % 2 == 0 { &sum + &t } else { &sum - &t };
        power = power.scale(&inv_x2).round_outward(wbits + 16);
        k += 1;
    }
}

/// Enclosure of pi (Machin's formula).
pub fn pi(bits: u32) -> RationalInterval {
    let a = atan_recip(5, bits + 8).scale(&q(16, 1));
    let b = atan_recip(239, bits + 8).scale(&q(4, 1));
    (&a - &b).round_outward(bits + 4)
}

/// Enclosure of `exp(x)` for a rational `x`, with relative width about `2^-bits`.
pub fn exp(x: &BigRational, bits: u32) -> RationalInterval {
    if x.is_zero() {
        return RationalInterval::one();
    }
    // below this the value is smaller than 2^-(bits+64); return a crude enclosure
    let cutoff = BigRational::from_integer(BigInt::from(bits as i64 + 64));
    if x.is_negative() && -x.clone() > cutoff {
        return RationalInterval::new(BigRational::zero(), pow2(bits + 64).recip());
    }
    let s = (log2_floor(x) + 2).max(0) as u32;
    let y = x / pow2(s);
    let wbits = bits + s + 24;
    let eps = pow2(wbits).recip();
    let mut sum = RationalInterval::one();
    let mut term = RationalInterval::one();
    let yi = RationalInterval::point(y.clone());
    let mut k: i64 = 1;
    loop {
        term = (&term * &yi)
            .scale(&q(1, k))
            .round_outward(wbits + 8);
        sum = &sum + &term;
        let mag = term.abs().hi().clone();
        if mag < eps {
            // |y| <= 1/2, so the remaining tail is at most 2 * |next term| <= |term|
            let tail = RationalInterval::new(-mag.clone(), mag);
            sum = &sum + &tail;
            break;
        }
        k += 1;
    }
    let mut acc = sum.round_relative(wbits);
    for _ in 0..s {
        acc = acc.square().round_relative(wbits);
    }
    acc
}

/// Enclosure of `exp` over a rational interval (exp is increasing).
pub fn exp_interval(x: &RationalInterval, bits: u32) -> RationalInterval {
    let lo = exp(x.lo(), bits);
    if x.is_point() {
        return lo;
    }
    let hi = exp(x.hi(), bits);
    RationalInterval::new(lo.lo().clone(), hi.hi().clone())
}

/// `(cos t, sin t)` for an angle interval `t ⊂ [0, 0.8]`, where both are monotone.
fn cos_sin_small(theta: &RationalInterval, bits: u32) -> (RationalInterval, RationalInterval) {
    let wbits = bits + 16;
    let series = |t: &BigRational, start_sin: bool| -> RationalInterval {
        let eps = pow2(wbits).recip();
        let t2 = RationalInterval::point(t * t);
        let mut term = if start_sin {
            RationalInterval::point(t.clone())
        } else {
            RationalInterval::one()
        };
        let mut sum = term.clone();
        let mut k: i64 = if start_sin { 1 } else { 0 };
        let mut sign = 1;
        loop {
            term = (&term * &t2)
                .scale(&q(1, (k + 1) * (k + 2)))
                .round_outward(wbits + 8);
            k += 2;
            sign = -sign;
            let mag = term.abs().hi().clone();
            if mag < eps {
                let tail = RationalInterval::new(-mag.clone(), mag);
                return (&sum + &tail).round_outward(wbits);
            }
            sum = if sign > 0 { &sum + &term } else { &sum - &term };
        }
    };
    let sin = RationalInterval::new(
        series(theta.lo(), true).lo().clone(),
        series(theta.hi(), true).hi().clone(),
    );
    let cos = RationalInterval::new(
        series(theta.hi(), false).lo().clone(),
        series(theta.lo(), false).hi().clone(),
    );
    (cos, sin)
}

/// `(cos(2 pi r), sin(2 pi r))` for a rational `r`; the reduction to the first
/// octant is exact.
pub fn cos_sin_turns(r: &BigRational, bits: u32) -> (RationalInterval, RationalInterval) {
    let frac = r - BigRational::from_integer(floor_int(r));
    let pi_iv = pi(bits + 8);
    turns_reduced(&frac, &pi_iv, bits)
}

fn turns_reduced(
    r: &BigRational,
    pi_iv: &RationalInterval,
    bits: u32,
) -> (RationalInterval, RationalInterval) {
    if r.is_zero() {
        return (RationalInterval::one(), RationalInterval::zero());
    }
    if *r == q(1, 4) {
        return (RationalInterval::zero(), RationalInterval::one());
    }
    if *r == q(1, 2) {
        return (-&RationalInterval::one(), RationalInterval::zero());
    }
    if *r == q(3, 4) {
        return (RationalInterval::zero(), -&RationalInterval::one());
    }
    if *r >= q(1, 2) {
        let (c, s) = turns_reduced(&(r - q(1, 2)), pi_iv, bits);
        return (-&c, -&s);
    }
    if *r >= q(1, 4) {
        let (c, s) = turns_reduced(&(r - q(1, 4)), pi_iv, bits);
        return (-&s, c);
    }
    if *r > q(1, 8) {
        let (c, s) = turns_reduced(&(q(1, 4) - r), pi_iv, bits);
        return (s, c);
    }
    let theta = pi_iv.scale(&(r * q(2, 1)));
    cos_sin_small(&theta, bits)
}

/// Rectangular complex interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: RationalInterval,
    pub im: RationalInterval,
}

impl ComplexInterval {
    pub fn zero() -> Self {
        Self {
            re: RationalInterval::zero(),
            im: RationalInterval::zero(),
        }
    }

    pub fn real(re: RationalInterval) -> Self {
        Self {
            re,
            im: RationalInterval::zero(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn scale(&self, k: &RationalInterval) -> Self {
        Self {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    /// Multiplication by `i^k`.
    pub fn times_i_pow(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => Self {
                re: -&self.im,
                im: self.re.clone(),
            },
            2 => Self {
                re: -&self.re,
                im: -&self.im,
            },
            _ => Self {
                re: self.im.clone(),
                im: -&self.re,
            },
        }
    }

    /// Enclosure of the modulus.
    pub fn modulus(&self, bits: u32) -> RationalInterval {
        if self.im.is_point() && self.im.lo().is_zero() {
            return self.re.abs();
        }
        if self.re.is_point() && self.re.lo().is_zero() {
            return self.im.abs();
        }
        let sq = &self.re.square() + &self.im.square();
        sqrt_interval(&sq, bits)
    }

    pub fn round_outward(&self, bits: u32) -> Self {
        Self {
            re: self.re.round_outward(bits),
            im: self.im.round_outward(bits),
        }
    }
}

/// Enclosure of the square root of a nonnegative interval.
pub fn sqrt_interval(x: &RationalInterval, bits: u32) -> RationalInterval {
    let lo = sqrt_bound(x.lo(), bits, false);
    let hi = sqrt_bound(x.hi(), bits, true);
    RationalInterval::new(lo, hi)
}

fn sqrt_bound(v: &BigRational, bits: u32, upper: bool) -> BigRational {
    if !v.is_positive() {
        return BigRational::zero();
    }
    // sqrt(n/d) = sqrt(n d) / d
    let scale = BigInt::one() << (2 * bits as usize);
    let nd = v.numer() * v.denom() * &scale;
    let r = nd.sqrt();
    let exact = &r * &r == nd;
    let den = v.denom() * (BigInt::one() << bits as usize);
    if upper && !exact {
        BigRational::new(r + 1, den)
    } else {
        BigRational::new(r, den)
    }
}
