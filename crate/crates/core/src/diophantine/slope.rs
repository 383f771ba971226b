use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use regex::Regex;

use crate::arith::decimal::{parse_rational, render_fixed};
use crate::arith::surd::is_perfect_square;
use crate::arith::{QuadraticSurd, RationalInterval, Real};
use crate::error::{Error, Result};

/// Largest truncation cap accepted for the base-10 Liouville constant.
/// At cap K the tail bound has (K+1)! decimal digits.
pub const MAX_LIOUVILLE_CAP: u32 = 6;

/// An enclosure counts as certified irrational for witness searches only when
/// it contains no rational with denominator at or below this height.
pub const DECIMAL_IRRATIONALITY_HEIGHT: u64 = 1_000_000;

/// Slope `alpha` of the Kronecker foliation: the leaves are the orbits of
/// `X = d/dx + alpha d/dy` on the 2-torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    /// `numerator / denominator`, reduced, denominator positive.
    Rational { numerator: BigInt, denominator: BigInt },
    /// `(a + b sqrt(d)) / c`, `d` a positive non-square, `b, c` nonzero.
    Quadratic { a: BigInt, b: BigInt, c: BigInt, d: BigInt },
    /// Liouville's constant `sum_{k>=1} 10^{-k!}`, truncated after `cap` terms
    /// with a rigorous tail enclosure.
    LiouvilleBase10 { cap: u32 },
    /// Some number in `[center - radius, center + radius]`.
    DecimalEnclosure { center: BigRational, radius: BigRational },
}

fn factorial(k: u32) -> u32 {
    (1..=k).product()
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

impl Slope {
    pub fn rational(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let numerator = numerator.into();
        let denominator = denominator.into();
        if denominator.is_zero() {
            return Err(Error::InvalidSlope("zero denominator".into()));
        }
        let g = numerator.gcd(&denominator);
        let sign = if denominator.is_negative() { -1 } else { 1 };
        Ok(Slope::Rational {
            numerator: &numerator / &g * sign,
            denominator: &denominator / &g * sign,
        })
    }

    pub fn quadratic(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::InvalidSlope("zero denominator".into()));
        }
        if !d.is_positive() || is_perfect_square(&d) {
            return Err(Error::InvalidSlope(format!("radicand {d} must be a positive non-square")));
        }
        if b.is_zero() {
            return Err(Error::InvalidSlope("b = 0 is rational; use rational:".into()));
        }
        Ok(Slope::Quadratic { a, b, c, d })
    }

    pub fn liouville(cap: u32) -> Result<Self> {
        if cap == 0 || cap > MAX_LIOUVILLE_CAP {
            return Err(Error::InvalidSlope(format!(
                "liouville cap must be in 1..={MAX_LIOUVILLE_CAP}, got {cap}"
            )));
        }
        Ok(Slope::LiouvilleBase10 { cap })
    }

    pub fn decimal(center: BigRational, radius: BigRational) -> Result<Self> {
        if radius.is_negative() {
            return Err(Error::InvalidSlope("negative radius".into()));
        }
        Ok(Slope::DecimalEnclosure { center, radius })
    }

    /// The golden ratio `(1 + sqrt 5) / 2`.
    pub fn golden() -> Self {
        Slope::Quadratic {
            a: 1.into(),
            b: 1.into(),
            c: 2.into(),
            d: 5.into(),
        }
    }

    /// `sqrt 2`.
    pub fn sqrt2() -> Self {
        Slope::Quadratic {
            a: 0.into(),
            b: 1.into(),
            c: 1.into(),
            d: 2.into(),
        }
    }

    /// The value of `alpha`, exact when possible.
    pub fn value(&self) -> Real {
        match self {
            Slope::Rational {
                numerator,
                denominator,
            } => Real::rational(BigRational::new(numerator.clone(), denominator.clone())),
            Slope::Quadratic { a, b, c, d } => Real::Exact(QuadraticSurd::new(
                BigRational::new(a.clone(), c.clone()),
                BigRational::new(b.clone(), c.clone()),
                d.clone(),
            )),
            Slope::LiouvilleBase10 { cap } => Real::Enclosed(liouville_enclosure(*cap)),
            Slope::DecimalEnclosure { center, radius } => {
                Real::Enclosed(RationalInterval::new(center - radius, center + radius))
            }
        }
    }

    /// The small divisor `m + alpha n`.
    pub fn divisor(&self, m: &BigInt, n: &BigInt) -> Real {
        self.value().affine(n, m)
    }

    pub fn divisor_i64(&self, m: i64, n: i64) -> Real {
        self.divisor(&m.into(), &n.into())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Slope::Rational { .. })
    }

    /// Irrationality known from the representation itself, or, for a decimal
    /// enclosure, the absence of rationals of height at most
    /// [`DECIMAL_IRRATIONALITY_HEIGHT`].
    pub fn is_certified_irrational(&self) -> bool {
        match self {
            Slope::Rational { .. } => false,
            Slope::Quadratic { .. } | Slope::LiouvilleBase10 { .. } => true,
            Slope::DecimalEnclosure { center, radius } => {
                let iv = RationalInterval::new(center - radius, center + radius);
                let simplest = simplest_rational_in(&iv);
                simplest.denom() > &BigInt::from(DECIMAL_IRRATIONALITY_HEIGHT)
            }
        }
    }
}

/// Partial sum `sum_{k<=cap} 10^{-k!}`.
pub fn liouville_partial_sum(cap: u32) -> BigRational {
    let top = factorial(cap);
    let mut numer = BigInt::zero();
    for k in 1..=cap {
        numer += pow10(top - factorial(k));
    }
    BigRational::new(numer, pow10(top))
}

/// `[S_K + 10^{-(K+1)!}, S_K + 2 * 10^{-(K+1)!}]`, which contains the constant
/// because the tail is at least its first term and at most twice it.
pub fn liouville_enclosure(cap: u32) -> RationalInterval {
    static CACHE: OnceLock<Vec<OnceLock<RationalInterval>>> = OnceLock::new();
    let slots = CACHE.get_or_init(|| (0..=MAX_LIOUVILLE_CAP).map(|_| OnceLock::new()).collect());
    match slots.get(cap as usize) {
        Some(slot) => slot.get_or_init(|| build_liouville_enclosure(cap)).clone(),
        None => build_liouville_enclosure(cap),
    }
}

fn build_liouville_enclosure(cap: u32) -> RationalInterval {
    let s = liouville_partial_sum(cap);
    let first_tail = BigRational::new(BigInt::one(), pow10(factorial(cap + 1)));
    RationalInterval::new(&s + &first_tail, &s + &first_tail * BigRational::from_integer(2.into()))
}

/// The rational of least denominator inside a closed interval (Stern–Brocot
/// descent through the continued fractions of the endpoints).
pub fn simplest_rational_in(iv: &RationalInterval) -> BigRational {
    fn go(lo: &BigRational, hi: &BigRational) -> BigRational {
        let fl = lo.floor();
        if fl == *lo {
            return lo.clone();
        }
        if fl.clone() + BigRational::one() <= *hi {
            return fl + BigRational::one();
        }
        // lo, hi share the integer part and lo is not an integer
        let inner = go(&(hi - &fl).recip(), &(lo - &fl).recip());
        fl + inner.recip()
    }
    let (lo, hi) = (iv.lo(), iv.hi());
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -go(&-hi.clone(), &-lo.clone());
    }
    go(lo, hi)
}

fn quadratic_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"^\(\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\s*(\d+)\s*\)\s*/\s*([+-]?\d+)$")
            .expect("static regex")
    })
}

impl FromStr for Slope {
    type Err = Error;

    /// Accepts `rational:22/7`, `quadratic:(1+1*sqrt5)/2`, `liouville10:cap=5`,
    /// and `decimal:0.1100010000:r=1e-12`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |why: &str| Error::InvalidSlope(format!("{s:?}: {why}"));
        let (kind, body) = s.split_once(':').ok_or_else(|| bad("missing kind prefix"))?;
        match kind {
            "rational" => {
                let (n, d) = body.split_once('/').unwrap_or((body, "1"));
                let n: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
                let d: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
                Slope::rational(n, d)
            }
            "quadratic" => {
                let caps = quadratic_regex()
                    .captures(body)
                    .ok_or_else(|| bad("expected (a+b*sqrtd)/c"))?;
                let a: BigInt = caps[1].parse().map_err(|_| bad("bad a"))?;
                let mut b: BigInt = caps[3].parse().map_err(|_| bad("bad b"))?;
                if &caps[2] == "-" {
                    b = -b;
                }
                let d: BigInt = caps[4].parse().map_err(|_| bad("bad d"))?;
                let c: BigInt = caps[5].parse().map_err(|_| bad("bad c"))?;
                Slope::quadratic(a, b, c, d)
            }
            "liouville10" => {
                let cap = body
                    .strip_prefix("cap=")
                    .ok_or_else(|| bad("expected cap=K"))?
                    .parse::<u32>()
                    .map_err(|_| bad("bad cap"))?;
                Slope::liouville(cap)
            }
            "decimal" => {
                let (c, r) = body.split_once(":r=").ok_or_else(|| bad("expected :r=")) ?;
                let center = parse_rational(c).map_err(|_| bad("bad center"))?;
                let radius = parse_rational(r).map_err(|_| bad("bad radius"))?;
                Slope::decimal(center, radius)
            }
            _ => Err(bad("unknown kind")),
        }
    }
}

/// Decimal string for a rational if it terminates, else `p/q`.
fn exact_decimal(q: &BigRational) -> String {
    let mut d = q.denom().clone();
    let mut places = 0u32;
    for p in [2u32, 5] {
        while (&d % p).is_zero() {
            d /= p;
        }
    }
    if !d.is_one() {
        return format!("{}/{}", q.numer(), q.denom());
    }
    while !(q * BigRational::from_integer(pow10(places))).is_integer() {
        places += 1;
    }
    render_fixed(q, places)
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Rational {
                numerator,
                denominator,
            } => write!(f, "rational:{numerator}/{denominator}"),
            Slope::Quadratic { a, b, c, d } => {
                let sign = if b.is_negative() { '-' } else { '+' };
                write!(f, "quadratic:({a}{sign}{}*sqrt{d})/{c}", b.abs())
            }
            Slope::LiouvilleBase10 { cap } => write!(f, "liouville10:cap={cap}"),
            Slope::DecimalEnclosure { center, radius } => {
                write!(f, "decimal:{}:r={}", exact_decimal(center), exact_decimal(radius))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_print_literals() {
        for lit in [
            "rational:22/7",
            "quadratic:(1+1*sqrt5)/2",
            "quadratic:(0+1*sqrt2)/1",
            "quadratic:(3-2*sqrt7)/-5",
            "liouville10:cap=5",
            "decimal:0.110001:r=0.000000000001",
        ] {
            let s: Slope = lit.parse().unwrap();
            assert_eq!(s.to_string(), lit);
        }
        let s: Slope = "decimal:0.1100010000:r=1e-12".parse().unwrap();
        assert_eq!(
            s,
            Slope::DecimalEnclosure {
                center: q(110001, 1000000),
                radius: BigRational::new(1.into(), pow10(12))
            }
        );
        let r: Slope = "rational:-4/6".parse().unwrap();
        assert_eq!(r.to_string(), "rational:-2/3");
    }

    #[test]
    fn rejects_malformed_literals() {
        for lit in [
            "rational:1/0",
            "quadratic:(1+1*sqrt4)/2",
            "quadratic:(1+0*sqrt5)/2",
            "quadratic:(1+1*sqrt5)/0",
            "liouville10:cap=0",
            "liouville10:cap=99",
            "decimal:0.1:r=-1",
            "golden",
            "nope:1",
        ] {
            assert!(lit.parse::<Slope>().is_err(), "{lit}");
        }
    }

    #[test]
    fn liouville_enclosure_brackets_constant() {
        let iv = liouville_enclosure(3);
        let s3 = q(110001, 1000000);
        let ten24 = BigRational::new(1.into(), pow10(24));
        assert_eq!(iv.lo(), &(&s3 + &ten24));
        assert_eq!(iv.hi(), &(&s3 + &ten24 * q(2, 1)));
        // a deeper truncation lies inside
        assert!(iv.contains(&liouville_partial_sum(5)));
    }

    #[test]
    fn simplest_rationals() {
        let iv = RationalInterval::new(q(3, 10), q(4, 10));
        assert_eq!(simplest_rational_in(&iv), q(1, 3));
        let iv = RationalInterval::new(q(-4, 10), q(-3, 10));
        assert_eq!(simplest_rational_in(&iv), q(-1, 3));
        let iv = RationalInterval::new(q(22, 7), q(22, 7));
        assert_eq!(simplest_rational_in(&iv), q(22, 7));
        let iv = RationalInterval::new(q(31415, 10000), q(31416, 10000));
        assert_eq!(simplest_rational_in(&iv), q(333, 106));
    }

    #[test]
    fn irrationality_certificates() {
        assert!(Slope::golden().is_certified_irrational());
        assert!(Slope::liouville(3).unwrap().is_certified_irrational());
        assert!(!Slope::rational(1, 2).unwrap().is_certified_irrational());
        let d: Slope = "decimal:0.1100010000:r=1e-12".parse().unwrap();
        assert!(!d.is_certified_irrational());
    }
}
