//! The bump `rho(u) = phi(u / h)` built from the canonical profile
//! `phi(v) = exp(1 - 1/(1 - v^2))` on `|v| < 1`, with half-width `h`.
//!
//! Derivatives are exact: `phi^(a)(v) = P_a(v, w) phi(v)` with
//! `w = 1/(1 - v^2)` and `P_a` a polynomial with rational coefficients,
//! generated from `dw/dv = 2 v w^2` and `phi' = -2 v w^2 phi`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::elementary::exp;
use crate::arith::RationalInterval;
use crate::error::{Error, Result};

/// Highest derivative order generated symbolically.
pub const MAX_DERIVATIVE_ORDER: u32 = 8;

/// Polynomial in `(v, w)`: `(i, j) -> coefficient of v^i w^j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ProfilePolynomial {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl ProfilePolynomial {
    fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0), BigRational::one());
        Self { terms }
    }

    fn add_term(&mut self, key: (u32, u32), c: BigRational) {
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `d/dv (P phi) = (P_v + 2 v w^2 P_w - 2 v w^2 P) phi`.
    fn differentiate(&self) -> Self {
        let mut out = Self::default();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term((i - 1, j), c * BigRational::from_integer(i.into()));
            }
            if j > 0 {
                out.add_term((i + 1, j + 1), c * BigRational::from_integer((2 * j).into()));
            }
            out.add_term((i + 1, j + 2), c * BigRational::from_integer((-2).into()));
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigRational> {
        &self.terms
    }

    pub fn eval(&self, v: &BigRational, w: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| {
                c * num_traits::pow(v.clone(), i as usize) * num_traits::pow(w.clone(), j as usize)
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

/// `P_0, ..., P_max` for the canonical profile.
pub fn profile_derivatives(max: u32) -> Vec<ProfilePolynomial> {
    let mut out = vec![ProfilePolynomial::one()];
    for _ in 0..max {
        let next = out.last().expect("nonempty").differentiate();
        out.push(next);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BumpKind {
    Canonical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BumpSpec {
    pub kind: BumpKind,
    /// `rho` is supported in `[-half_width, half_width]`.
    pub half_width: BigRational,
    derivatives: Vec<ProfilePolynomial>,
}

impl BumpSpec {
    pub fn canonical(half_width: BigRational) -> Result<Self> {
        if !half_width.is_positive() || half_width > BigRational::one() {
            return Err(Error::InvalidInput("bump half-width must lie in (0, 1]".into()));
        }
        Ok(Self {
            kind: BumpKind::Canonical,
            half_width,
            derivatives: profile_derivatives(MAX_DERIVATIVE_ORDER),
        })
    }

    /// The bump used by the counterexample family: half-width 1/2, which
    /// makes the supports around consecutive `1/p` disjoint.
    pub fn family_default() -> Self {
        Self::canonical(BigRational::new(1.into(), 2.into())).expect("valid half-width")
    }

    pub fn tag(&self) -> &'static str {
        match self.kind {
            BumpKind::Canonical => "canonical",
        }
    }

    pub fn polynomial(&self, a: u32) -> Result<&ProfilePolynomial> {
        self.derivatives.get(a as usize).ok_or_else(|| {
            Error::InvalidInput(format!(
                "derivative order {a} exceeds the maximum {MAX_DERIVATIVE_ORDER}"
            ))
        })
    }

    /// `1/h`, the chain-rule factor per derivative.
    fn inverse_width(&self) -> BigRational {
        self.half_width.recip()
    }

    /// True when `u` lies in the open support.
    pub fn is_active(&self, u: &BigRational) -> bool {
        u.abs() < self.half_width
    }

    /// Enclosure of `rho^(a)(u)`; exactly zero outside the open support.
    pub fn derivative(&self, a: u32, u: &BigRational, bits: u32) -> Result<RationalInterval> {
        let poly = self.polynomial(a)?;
        if !self.is_active(u) {
            return Ok(RationalInterval::zero());
        }
        let v = u * self.inverse_width();
        let w = (BigRational::one() - &v * &v).recip();
        let p = poly.eval(&v, &w);
        if p.is_zero() {
            return Ok(RationalInterval::zero());
        }
        let e = exp(&(BigRational::one() - &w), bits);
        let chain = num_traits::pow(self.inverse_width(), a as usize);
        Ok(e.scale(&(p * chain)))
    }

    pub fn value(&self, u: &BigRational, bits: u32) -> RationalInterval {
        self.derivative(0, u, bits).expect("order 0 is always available")
    }

    /// Rigorous upper bound for `sup_u |rho^(a)(u)|`, from
    /// `sup_{w >= 1} w^j e^{1-w} = j^j e^{1-j}` (1 for `j = 0`).
    pub fn sup_bound(&self, a: u32) -> Result<BigRational> {
        let poly = self.polynomial(a)?;
        let mut total = BigRational::zero();
        for (&(_, j), c) in poly.terms() {
            let peak = if j == 0 {
                BigRational::one()
            } else {
                let jj = BigRational::from_integer(num_traits::pow(BigInt::from(j), j as usize));
                let e = exp(&BigRational::from_integer(BigInt::from(1 - i64::from(j))), 64);
                jj * e.hi()
            };
            total += c.abs() * peak;
        }
        // absorbs the enclosure width of exp at sampling precision
        let slack = BigRational::one() + BigRational::new(1.into(), BigInt::one() << 32);
        Ok(total * slack * num_traits::pow(self.inverse_width(), a as usize))
    }
}
