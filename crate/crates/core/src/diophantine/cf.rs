//! Continued fractions and convergents with rigorous error enclosures.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::slope::Slope;
use crate::arith::interval::floor_int;
use crate::arith::{QuadraticSurd, RationalInterval, Real};
use crate::error::{Error, Result};

/// Relative precision of convergent error enclosures for exact slopes.
pub const ERROR_REL_BITS: u32 = 64;

/// A continued-fraction convergent `m / n` of the slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub level: usize,
    pub m: BigInt,
    pub n: BigInt,
    /// Encloses `|alpha - m/n|`.
    pub error: RationalInterval,
}

/// Partial quotients that could be certified, and why the expansion stopped
/// short of the requested depth (`None`: depth reached or expansion terminated).
#[derive(Clone, Debug)]
pub struct CfPrefix {
    pub quotients: Vec<BigInt>,
    pub terminated: bool,
    pub stopped_by: Option<Error>,
}

enum CfState {
    Exact(QuadraticSurd),
    Interval(RationalInterval),
}

/// Expands as far as the representation allows, up to `depth` quotients.
pub fn cf_prefix(slope: &Slope, depth: usize) -> CfPrefix {
    let mut state = match slope.value() {
        Real::Exact(s) => CfState::Exact(s),
        Real::Enclosed(iv) if iv.is_point() => CfState::Exact(QuadraticSurd::rational(iv.lo().clone())),
        Real::Enclosed(iv) => CfState::Interval(iv),
    };
    let mut quotients = Vec::new();
    while quotients.len() < depth {
        match state {
            CfState::Exact(x) => {
                let a = x.floor();
                let r = x.add_rational(&-BigRational::from_integer(a.clone()));
                quotients.push(a);
                match r.recip() {
                    None => {
                        return CfPrefix {
                            quotients,
                            terminated: true,
                            stopped_by: None,
                        }
                    }
                    Some(next) => state = CfState::Exact(next),
                }
            }
            CfState::Interval(iv) => {
                let a = floor_int(iv.lo());
                if floor_int(iv.hi()) != a {
                    let why = format!(
                        "partial quotient {} is not determined by the enclosure",
                        quotients.len()
                    );
                    return CfPrefix {
                        quotients,
                        terminated: false,
                        stopped_by: Some(Error::PrecisionExhausted(why)),
                    };
                }
                let r = iv.shift(&-BigRational::from_integer(a.clone()));
                quotients.push(a);
                if r.lo().is_zero() {
                    let why = format!("remainder after quotient {} may vanish", quotients.len() - 1);
                    return CfPrefix {
                        quotients,
                        terminated: false,
                        stopped_by: Some(Error::PrecisionExhausted(why)),
                    };
                }
                state = CfState::Interval(r.recip().expect("positive remainder"));
            }
        }
    }
    CfPrefix {
        quotients,
        terminated: false,
        stopped_by: None,
    }
}

/// The first `depth` partial quotients; shorter for rationals.
pub fn cf_expand(slope: &Slope, depth: usize) -> Result<Vec<BigInt>> {
    if depth == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    let prefix = cf_prefix(slope, depth);
    match prefix.stopped_by {
        Some(e) => Err(e),
        None => Ok(prefix.quotients),
    }
}

/// Numerators and denominators from the standard recurrences.
pub fn fractions_from_quotients(quotients: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    quotients
        .iter()
        .map(|a| {
            let h_next = a * &h + &h_prev;
            let k_next = a * &k + &k_prev;
            h_prev = std::mem::replace(&mut h, h_next);
            k_prev = std::mem::replace(&mut k, k_next);
            (h.clone(), k.clone())
        })
        .collect()
}

fn convergent_at(alpha: &Real, level: usize, m: BigInt, n: BigInt) -> Convergent {
    let frac = Real::rational(BigRational::new(m.clone(), n.clone()));
    let error = alpha.sub(&frac).abs().enclose_relative(ERROR_REL_BITS);
    Convergent { level, m, n, error }
}

/// Convergents for every certified partial quotient (possibly fewer than
/// `depth` when an enclosure runs out of precision).
pub fn certified_convergents(slope: &Slope, depth: usize) -> (Vec<Convergent>, CfPrefix) {
    let prefix = cf_prefix(slope, depth);
    let alpha = slope.value();
    let convs = fractions_from_quotients(&prefix.quotients)
        .into_iter()
        .enumerate()
        .map(|(level, (m, n))| convergent_at(&alpha, level, m, n))
        .collect();
    (convs, prefix)
}

pub fn convergents(slope: &Slope, depth: usize) -> Result<Vec<Convergent>> {
    if depth == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    let (convs, prefix) = certified_convergents(slope, depth);
    match prefix.stopped_by {
        Some(e) => Err(e),
        None => Ok(convs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn euclid_on_rationals() {
        assert_eq!(cf_expand(&Slope::rational(22, 7).unwrap(), 10).unwrap(), ints(&[3, 7]));
        assert_eq!(cf_expand(&Slope::rational(1, 1).unwrap(), 10).unwrap(), ints(&[1]));
        assert_eq!(cf_expand(&Slope::rational(-7, 3).unwrap(), 10).unwrap(), ints(&[-3, 1, 2]));
    }

    #[test]
    fn golden_and_sqrt2() {
        assert_eq!(cf_expand(&Slope::golden(), 5).unwrap(), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cf_expand(&Slope::sqrt2(), 4).unwrap(), ints(&[1, 2, 2, 2]));
    }

    #[test]
    fn decimal_enclosure_runs_out() {
        let s: Slope = "decimal:0.1100010000:r=1e-12".parse().unwrap();
        let prefix = cf_prefix(&s, 40);
        assert!(prefix.quotients.len() >= 3);
        assert!(matches!(cf_expand(&s, 40), Err(Error::PrecisionExhausted(_))));
        let wide: Slope = "decimal:0.5:r=0.6".parse().unwrap();
        assert!(cf_expand(&wide, 1).is_err());
    }

    #[test]
    fn rational_convergents() {
        let c = convergents(&Slope::rational(3, 2).unwrap(), 5).unwrap();
        let pairs: Vec<_> = c.iter().map(|c| (c.m.clone(), c.n.clone())).collect();
        assert_eq!(pairs, vec![(1.into(), 1.into()), (3.into(), 2.into())]);
        assert!(c[1].error.is_point() && c[1].error.lo().is_zero());
    }

    #[test]
    fn zero_depth_rejected() {
        assert!(cf_expand(&Slope::golden(), 0).is_err());
    }
}
