//! Certified rational approximations: witnesses for the Liouville property
//! and the pairs `(m_p, n_p)` driving the counterexample family.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::cf::{certified_convergents, Convergent};
use super::slope::Slope;
use crate::arith::{RationalInterval, Real};
use crate::error::{Error, Result};

/// Which inequality a witness certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundForm {
    /// `|alpha - m/n| < 1 / n^p` with coprime `m, n` and `n > 1`.
    Definition,
    /// `|m + alpha n| <= (|m| + |n|)^-p` with `n >= p`.
    Family,
}

impl fmt::Display for BoundForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundForm::Definition => "definition",
            BoundForm::Family => "family",
        })
    }
}

/// A certified approximation.
///
/// For [`BoundForm::Definition`] the pair is the fraction `m/n` approximating
/// alpha and `value` encloses `|alpha - m/n|`. For [`BoundForm::Family`] the
/// pair is a small-divisor mode and `value` encloses `|m + alpha n|`.
/// In both cases `value.hi()` is certified against `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationWitness {
    pub p: u32,
    pub m: BigInt,
    pub n: BigInt,
    pub value: RationalInterval,
    pub bound: BigRational,
    pub bound_form: BoundForm,
    /// Convergent level the pair was taken from.
    pub level: usize,
}

impl ApproximationWitness {
    /// Re-checks the certified inequality against the enclosure alone.
    pub fn holds(&self) -> bool {
        match self.bound_form {
            BoundForm::Definition => self.value.hi() < &self.bound && self.n > BigInt::one(),
            BoundForm::Family => {
                self.value.hi() <= &self.bound && self.n >= BigInt::from(self.p)
            }
        }
    }

    /// Re-verifies the inequality from scratch against another slope
    /// representation (typically a deeper Liouville truncation).
    pub fn reverify(&self, slope: &Slope) -> Result<bool> {
        let alpha = slope.value();
        let quantity = match self.bound_form {
            BoundForm::Definition => alpha
                .sub(&Real::rational(BigRational::new(self.m.clone(), self.n.clone())))
                .abs(),
            BoundForm::Family => slope.divisor(&self.m, &self.n).abs(),
        };
        let ord = quantity.compare_rational(&self.bound)?;
        Ok(match self.bound_form {
            BoundForm::Definition => ord == Ordering::Less,
            BoundForm::Family => ord != Ordering::Greater,
        })
    }
}

/// Outcome of a definition-form search. `NotFound` never proves that a slope
/// is not Liouville.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(ApproximationWitness),
    NotFound { depth_searched: usize },
}

/// Certifies `quantity <= bound` (or `<` when `strict`) and returns an
/// enclosure whose upper end already satisfies it. `Ok(None)` when the
/// inequality fails, `Err` when it cannot be decided.
fn certify(quantity: &Real, bound: &BigRational, strict: bool) -> Result<Option<RationalInterval>> {
    let ord = quantity.compare_rational(bound)?;
    let ok = if strict {
        ord == Ordering::Less
    } else {
        ord != Ordering::Greater
    };
    if !ok {
        return Ok(None);
    }
    let mut bits = 64;
    loop {
        let iv = quantity.enclose_relative(bits);
        let fits = if strict { iv.hi() < bound } else { iv.hi() <= bound };
        if fits {
            return Ok(Some(iv));
        }
        if !quantity.is_exact() || bits > 1 << 16 {
            // an enclosure that decided the comparison is itself the witness
            return Err(Error::PrecisionExhausted(format!(
                "cannot enclose below bound {bound}"
            )));
        }
        bits *= 2;
    }
}

fn definition_check(alpha: &Real, c: &Convergent, p: u32) -> Result<Option<ApproximationWitness>> {
    if c.n <= BigInt::one() {
        return Ok(None);
    }
    let bound = BigRational::new(BigInt::one(), num_traits::pow(c.n.clone(), p as usize));
    let quantity = alpha
        .sub(&Real::rational(BigRational::new(c.m.clone(), c.n.clone())))
        .abs();
    Ok(certify(&quantity, &bound, true)?.map(|value| ApproximationWitness {
        p,
        m: c.m.clone(),
        n: c.n.clone(),
        value,
        bound,
        bound_form: BoundForm::Definition,
        level: c.level,
    }))
}

fn family_check(slope: &Slope, c: &Convergent, p: u32) -> Result<Option<ApproximationWitness>> {
    // mode (m, n) = (-numerator, denominator) so that m + alpha n is small
    certify_family_pair(slope, p, &-c.m.clone(), &c.n, c.level)
}

/// Certifies `|m + alpha n| <= (|m| + |n|)^-p` with `n >= p` for a given
/// mode. `Ok(None)` when the inequality fails.
pub fn certify_family_pair(
    slope: &Slope,
    p: u32,
    m: &BigInt,
    n: &BigInt,
    level: usize,
) -> Result<Option<ApproximationWitness>> {
    if n < &BigInt::from(p) {
        return Ok(None);
    }
    let height = m.abs() + n.abs();
    let bound = BigRational::new(BigInt::one(), num_traits::pow(height, p as usize));
    let quantity = slope.divisor(m, n).abs();
    Ok(certify(&quantity, &bound, false)?.map(|value| ApproximationWitness {
        p,
        m: m.clone(),
        n: n.clone(),
        value,
        bound,
        bound_form: BoundForm::Family,
        level,
    }))
}

/// Searches the convergents (up to `depth` of them) for
/// `|alpha - m/n| < 1/n^p` with `n > 1`.
pub fn find_witness_definition(slope: &Slope, p: u32, depth: usize) -> Result<WitnessSearch> {
    if p == 0 {
        return Err(Error::InvalidInput("exponent p must be at least 1".into()));
    }
    if slope.is_rational() {
        return Err(Error::IrrationalRequired);
    }
    let (convs, _) = certified_convergents(slope, depth);
    let alpha = slope.value();
    for c in &convs {
        match definition_check(&alpha, c, p) {
            Ok(Some(w)) => return Ok(WitnessSearch::Found(w)),
            Ok(None) => {}
            // an undecidable level is skipped, never reported as a witness
            Err(Error::PrecisionExhausted(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(WitnessSearch::NotFound {
        depth_searched: convs.len(),
    })
}

/// One certified family pair per `p = 2..=pmax`: pairwise distinct, `n_p >= p`,
/// `|m_p + alpha n_p| <= (|m_p| + |n_p|)^-p`. Each `p` takes the first
/// convergent (in level order) meeting these conditions.
pub fn find_family_pairs(slope: &Slope, pmax: u32, depth: usize) -> Result<Vec<ApproximationWitness>> {
    if !slope.is_certified_irrational() {
        return Err(Error::IrrationalRequired);
    }
    let (convs, _) = certified_convergents(slope, depth);
    let mut pairs: Vec<ApproximationWitness> = Vec::new();
    for p in 2..=pmax {
        let mut found = None;
        for c in &convs {
            let used = pairs.iter().any(|w| w.n == c.n && w.m == -c.m.clone());
            if used {
                continue;
            }
            match family_check(slope, c, p) {
                Ok(Some(w)) => {
                    found = Some(w);
                    break;
                }
                Ok(None) | Err(Error::PrecisionExhausted(_)) => {}
                Err(e) => return Err(e),
            }
        }
        match found {
            Some(w) => pairs.push(w),
            None => {
                return Err(Error::NotFound {
                    p,
                    depth: convs.len(),
                })
            }
        }
    }
    Ok(pairs)
}
