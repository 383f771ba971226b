//! Symbolic Fourier coefficients.
//!
//! A coefficient at mode `(m, n)` is a finite sum
//! `sum c_{k,e} (2 pi i)^k delta^e` with exact complex rationals `c_{k,e}`,
//! where `delta = m + alpha n` is that mode's divisor. Neither pi nor an
//! irrational divisor is ever approximated inside the algebra, so applying
//! `X` and dividing by it are exact inverse operations.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::elementary::pi;
use crate::arith::{ComplexInterval, RationalInterval, Real};
use crate::error::{Error, Result};

pub type ComplexRational = Complex<BigRational>;

pub fn complex(re: BigRational, im: BigRational) -> ComplexRational {
    Complex::new(re, im)
}

pub fn real(re: BigRational) -> ComplexRational {
    Complex::new(re, BigRational::zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Coefficient {
    /// `(k, e) -> c_{k,e}`; zero entries are never stored.
    terms: BTreeMap<(i32, i32), ComplexRational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn plain(c: ComplexRational) -> Self {
        Self::term(0, 0, c)
    }

    pub fn term(k: i32, e: i32, c: ComplexRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((k, e), c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(i32, i32), ComplexRational> {
        &self.terms
    }

    /// The exact value when the coefficient carries no symbolic factor.
    pub fn as_plain(&self) -> Option<ComplexRational> {
        if self.is_zero() {
            return Some(ComplexRational::zero());
        }
        match self.terms.iter().next() {
            Some((&(0, 0), c)) if self.terms.len() == 1 => Some(c.clone()),
            _ => None,
        }
    }

    /// True when some term carries a power of the divisor.
    pub fn uses_divisor(&self) -> bool {
        self.terms.keys().any(|&(_, e)| e != 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (key, c) in &other.terms {
            let sum = match terms.remove(key) {
                Some(prev) => prev + c,
                None => c.clone(),
            };
            if !sum.is_zero() {
                terms.insert(*key, sum);
            }
        }
        Self { terms }
    }

    pub fn scale(&self, s: &ComplexRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    /// Multiplies by `(2 pi i)^dk delta^de`.
    pub fn shift(&self, dk: i32, de: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(k, e), c)| ((k + dk, e + de), c.clone()))
                .collect(),
        }
    }

    /// Substitutes a known rational divisor, removing every power of delta.
    pub fn fold_divisor(&self, delta: &BigRational) -> Result<Self> {
        let mut out = Self::zero();
        for (&(k, e), c) in &self.terms {
            if e != 0 && delta.is_zero() {
                return Err(Error::InvalidInput("cannot fold a zero divisor".into()));
            }
            let factor = rational_pow(delta, e);
            out = out.add(&Self::term(k, 0, c * real(factor)));
        }
        Ok(out)
    }

    /// The coefficient of the conjugate mode `(-m, -n)` required by a real
    /// function: `c_{k,e} -> conj(c_{k,e}) (-1)^{k+e}`, since conjugation
    /// flips `2 pi i` and a real slope flips the divisor.
    pub fn mirrored_conjugate(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(k, e), c)| {
                    let c = c.conj();
                    ((k, e), if (k + e).rem_euclid(2) == 0 { c } else { -c })
                })
                .collect(),
        }
    }

    /// Enclosure of the numeric value. `delta` is needed only when some term
    /// carries the divisor.
    pub fn enclose(&self, delta: Option<&Real>, bits: u32) -> Result<ComplexInterval> {
        let two_pi = pi(bits + 8).scale(&BigRational::from_integer(2.into()));
        let delta_iv = match delta {
            Some(d) if self.uses_divisor() => Some(d.enclose_relative(bits + 8)),
            _ => None,
        };
        let mut acc = ComplexInterval::zero();
        for (&(k, e), c) in &self.terms {
            let mut mag = interval_pow(&two_pi, k).ok_or_else(|| {
                Error::InvalidInput("negative power of 2 pi cannot vanish".into())
            })?;
            if e != 0 {
                let d = delta_iv.as_ref().ok_or_else(|| {
                    Error::InvalidInput("coefficient carries a divisor but no slope is bound".into())
                })?;
                let de = interval_pow(d, e).ok_or_else(|| {
                    Error::PrecisionExhausted(format!("divisor enclosure {d} contains zero"))
                })?;
                mag = &mag * &de;
            }
            let val = ComplexInterval {
                re: RationalInterval::point(c.re.clone()),
                im: RationalInterval::point(c.im.clone()),
            }
            .scale(&mag)
            .times_i_pow(i64::from(k));
            acc = acc.add(&val);
        }
        Ok(acc.round_outward(bits + 4))
    }
}

fn rational_pow(q: &BigRational, e: i32) -> BigRational {
    let p = num_traits::pow(q.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// `x^e` for any integer `e`; `None` when a negative power meets zero.
fn interval_pow(x: &RationalInterval, e: i32) -> Option<RationalInterval> {
    let p = x.pow(e.unsigned_abs());
    if e < 0 {
        p.recip()
    } else {
        Some(p)
    }
}

/// Sign-aware string form used in error payloads: `re+imi`.
pub fn format_complex(c: &ComplexRational) -> String {
    if c.im.is_zero() {
        return c.re.to_string();
    }
    let sign = if c.im.is_negative() { "-" } else { "+" };
    format!("{}{}{}i", c.re, sign, c.im.abs())
}

impl From<ComplexRational> for Coefficient {
    fn from(c: ComplexRational) -> Self {
        Self::plain(c)
    }
}

impl From<BigRational> for Coefficient {
    fn from(q: BigRational) -> Self {
        Self::plain(real(q))
    }
}
