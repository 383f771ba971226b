//! Finitely supported Fourier series on the 2-torus and the leafwise
//! vector field `X = d/dx + alpha d/dy`, which acts diagonally:
//! `(Xg)_{m,n} = 2 pi i (m + alpha n) g_{m,n}`.
//!
//! A series stands for a function `f` and, implicitly, the foliated 1-form
//! `f dx`; the form/function identification is not tracked in the types.

mod coefficient;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

pub use coefficient::{complex, format_complex, real, Coefficient, ComplexRational};

use crate::arith::decimal::{parse_rational, render_fixed_rigorous, render_sig};
use crate::arith::elementary::cos_sin_turns;
use crate::arith::interval::floor_int;
use crate::arith::{bits_for_digits, ComplexInterval, RationalInterval, Real};
use crate::diophantine::Slope;
use crate::error::{Error, Result};

/// Working precision for magnitude enclosures that are compared, not printed.
const MAGNITUDE_BITS: u32 = 128;

/// A lattice point; ordered lexicographically by `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub m: BigInt,
    pub n: BigInt,
}

impl Mode {
    pub fn new(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Self {
        Self {
            m: m.into(),
            n: n.into(),
        }
    }

    /// `|m| + |n|`.
    pub fn height(&self) -> BigInt {
        self.m.abs() + self.n.abs()
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero() && self.n.is_zero()
    }

    pub fn opposite(&self) -> Self {
        Self {
            m: -self.m.clone(),
            n: -self.n.clone(),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// A point of the torus, coordinates reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPoint {
    x: BigRational,
    y: BigRational,
}

fn reduce_mod_one(q: BigRational) -> BigRational {
    let fl = BigRational::from_integer(floor_int(&q));
    q - fl
}

impl TorusPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Self {
            x: reduce_mod_one(x),
            y: reduce_mod_one(y),
        }
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }
}

/// `sup |c_{m,n}| (|m| + |n|)^j` over the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecayProfile {
    pub order: u32,
    pub value: RationalInterval,
}

/// A numeric value rendered to a fixed number of decimal places.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderedComplex {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FourierSeries2D {
    coeffs: BTreeMap<Mode, Coefficient>,
    /// Slope whose divisors appear symbolically in some coefficient.
    slope: Option<Slope>,
    real_valued: bool,
}

impl FourierSeries2D {
    pub fn new() -> Self {
        Self::default()
    }

    /// Series with exact (non-symbolic) coefficients; zeros are dropped and
    /// repeated modes are summed.
    pub fn from_plain(items: impl IntoIterator<Item = (Mode, ComplexRational)>) -> Self {
        let mut s = Self::new();
        for (mode, c) in items {
            s.accumulate(mode, Coefficient::plain(c));
        }
        s
    }

    /// Single-mode series.
    pub fn monomial(mode: Mode, c: Coefficient, slope: Option<&Slope>) -> Self {
        let mut s = Self::new();
        if c.uses_divisor() {
            s.slope = slope.cloned();
        }
        s.accumulate(mode, c);
        s
    }

    fn accumulate(&mut self, mode: Mode, c: Coefficient) {
        let sum = match self.coeffs.remove(&mode) {
            Some(prev) => prev.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(mode, sum);
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, mode: &Mode) -> Option<&Coefficient> {
        self.coeffs.get(mode)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mode, &Coefficient)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Mode> {
        self.coeffs.keys()
    }

    pub fn bound_slope(&self) -> Option<&Slope> {
        self.slope.as_ref()
    }

    pub fn uses_divisor(&self) -> bool {
        self.coeffs.values().any(Coefficient::uses_divisor)
    }

    pub fn is_real_tagged(&self) -> bool {
        self.real_valued
    }

    /// `c_{-m,-n} = conj(c_{m,n})` for every mode, exactly.
    pub fn is_conjugate_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(mode, c)| {
            let want = c.mirrored_conjugate();
            match self.coeffs.get(&mode.opposite()) {
                Some(other) => *other == want,
                None => false,
            }
        })
    }

    /// Tags the series as real-valued after checking conjugate symmetry.
    pub fn with_real_tag(mut self) -> Result<Self> {
        if !self.is_conjugate_symmetric() {
            return Err(Error::InvalidInput("series is not conjugate-symmetric".into()));
        }
        self.real_valued = true;
        Ok(self)
    }

    fn merged_binding(&self, other: &Self) -> Result<Option<Slope>> {
        match (self.uses_divisor(), other.uses_divisor()) {
            (true, true) if self.slope != other.slope => Err(Error::InvalidInput(
                "series carry divisors of different slopes".into(),
            )),
            (true, _) => Ok(self.slope.clone()),
            (false, true) => Ok(other.slope.clone()),
            (false, false) => Ok(None),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let slope = self.merged_binding(other)?;
        let mut out = self.clone();
        for (mode, c) in &other.coeffs {
            out.accumulate(mode.clone(), c.clone());
        }
        out.slope = slope;
        out.real_valued = self.real_valued && other.real_valued;
        out.drop_unused_binding();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
            slope: self.slope.clone(),
            real_valued: self.real_valued,
        }
    }

    pub fn scale(&self, s: &ComplexRational) -> Self {
        if s.is_zero() {
            return Self::new();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), c.scale(s))).collect(),
            slope: self.slope.clone(),
            real_valued: self.real_valued && s.im.is_zero(),
        }
    }

    fn drop_unused_binding(&mut self) {
        if !self.uses_divisor() {
            self.slope = None;
        }
    }

    /// Multiplies every coefficient by `(2 pi i delta)^power`; with `power > 0`
    /// resonant modes are dropped, with `power < 0` they are an error.
    pub(crate) fn act(&self, slope: &Slope, power: i32) -> Result<Self> {
        if self.uses_divisor() && self.slope.as_ref() != Some(slope) {
            return Err(Error::InvalidInput(
                "series carries divisors of a different slope".into(),
            ));
        }
        let mut out = Self::new();
        for (mode, c) in &self.coeffs {
            let delta = slope.divisor(&mode.m, &mode.n);
            if delta.is_zero()? {
                if power < 0 {
                    return Err(Error::Resonant {
                        m: mode.m.to_string(),
                        n: mode.n.to_string(),
                    });
                }
                continue;
            }
            let next = match delta.as_rational() {
                Some(d) => c.shift(power, 0).fold_divisor_scaled(&d, power)?,
                None => c.shift(power, power),
            };
            out.coeffs.insert(mode.clone(), next);
        }
        out.slope = Some(slope.clone());
        out.real_valued = self.real_valued;
        out.drop_unused_binding();
        Ok(out)
    }

    /// `X` applied coefficient-wise; modes with `m + alpha n = 0` vanish.
    /// Fails only when a decimal-enclosure slope cannot decide resonance.
    pub fn apply_x(&self, slope: &Slope) -> Result<Self> {
        self.act(slope, 1)
    }

    fn divisor_for(&self, mode: &Mode) -> Option<Real> {
        self.slope.as_ref().map(|s| s.divisor(&mode.m, &mode.n))
    }

    /// Enclosure of the coefficient value at `mode`.
    pub fn coefficient_enclosure(&self, mode: &Mode, bits: u32) -> Result<ComplexInterval> {
        match self.coeffs.get(mode) {
            None => Ok(ComplexInterval::zero()),
            Some(c) => c.enclose(self.divisor_for(mode).as_ref(), bits),
        }
    }

    /// Enclosure of `|c_{m,n}|`.
    pub fn modulus_enclosure(&self, mode: &Mode, bits: u32) -> Result<RationalInterval> {
        Ok(self.coefficient_enclosure(mode, bits)?.modulus(bits))
    }

    /// Enclosure of `sum c_{m,n} e^{2 pi i (m x + n y)}`.
    pub fn evaluate_enclosure(&self, point: &TorusPoint, bits: u32) -> Result<ComplexInterval> {
        let mut acc = ComplexInterval::zero();
        for (mode, c) in &self.coeffs {
            let value = c.enclose(self.divisor_for(mode).as_ref(), bits + 8)?;
            let phase = BigRational::from_integer(mode.m.clone()) * &point.x
                + BigRational::from_integer(mode.n.clone()) * &point.y;
            let (cos, sin) = cos_sin_turns(&phase, bits + 8);
            acc = acc.add(&value.mul(&ComplexInterval { re: cos, im: sin }));
        }
        Ok(acc.round_outward(bits + 4))
    }

    /// The value at `point` rounded (half-even) to `digits` decimal places.
    pub fn evaluate(&self, point: &TorusPoint, digits: u32) -> Result<RenderedComplex> {
        // surface errors once, before the rendering loops
        self.evaluate_enclosure(point, 64)?;
        let at = |bits: u32| {
            self.evaluate_enclosure(point, bits)
                .expect("enclosure succeeded at lower precision")
        };
        Ok(RenderedComplex {
            re: render_fixed_rigorous(|b| at(b).re, digits),
            im: render_fixed_rigorous(|b| at(b).im, digits),
        })
    }

    /// For each order `j`: `sup |c_{m,n}| (|m|+|n|)^j` over the support. The
    /// zero mode counts with weight 1 at `j = 0` and is skipped for `j >= 1`.
    pub fn decay_profile(&self, orders: &[u32]) -> Result<Vec<DecayProfile>> {
        let mut moduli = Vec::with_capacity(self.coeffs.len());
        for mode in self.coeffs.keys() {
            moduli.push((mode, self.modulus_enclosure(mode, MAGNITUDE_BITS)?));
        }
        Ok(orders
            .iter()
            .map(|&j| {
                let mut sup = RationalInterval::zero();
                for (mode, modulus) in &moduli {
                    if j > 0 && mode.is_zero() {
                        continue;
                    }
                    let weight = num_traits::pow(mode.height(), j as usize);
                    sup = sup.max(&modulus.scale_int(&weight));
                }
                DecayProfile { order: j, value: sup }
            })
            .collect())
    }

    /// Enclosure of the largest coefficient modulus (zero for the empty series).
    pub fn max_modulus(&self, bits: u32) -> Result<RationalInterval> {
        let mut sup = RationalInterval::zero();
        for mode in self.coeffs.keys() {
            sup = sup.max(&self.modulus_enclosure(mode, bits)?);
        }
        Ok(sup)
    }

    /// `{"coeffs": [{"m", "n", "re", "im"}]}` in mode order. Exact values
    /// with terminating decimal expansions are written in full; others with
    /// `digits` significant digits.
    pub fn to_json(&self, digits: u32) -> Result<Value> {
        let mut items = Vec::with_capacity(self.coeffs.len());
        for (mode, c) in &self.coeffs {
            let (re, im) = match c.as_plain() {
                Some(v) => (decimal_string(&v.re, digits), decimal_string(&v.im, digits)),
                None => {
                    let bits = bits_for_digits(digits) + 8;
                    let iv = c.enclose(self.divisor_for(mode).as_ref(), bits)?;
                    (
                        render_sig(&iv.re.midpoint(), digits),
                        render_sig(&iv.im.midpoint(), digits),
                    )
                }
            };
            items.push(json!({
                "m": integer_json(&mode.m),
                "n": integer_json(&mode.n),
                "re": re,
                "im": im,
            }));
        }
        Ok(json!({ "coeffs": items }))
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidInput(format!("series file: {msg}"));
        let items = value
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"coeffs\" array"))?;
        let mut out = Vec::with_capacity(items.len());
        for item in items {
            let m = json_integer(item.get("m")).ok_or_else(|| bad("bad \"m\""))?;
            let n = json_integer(item.get("n")).ok_or_else(|| bad("bad \"n\""))?;
            let re = json_decimal(item.get("re"))?;
            let im = json_decimal(item.get("im"))?;
            out.push((Mode { m, n }, complex(re, im)));
        }
        Ok(Self::from_plain(out))
    }
}

impl Coefficient {
    /// After `shift(power, 0)`, multiplies by `delta^power` for a rational `delta`.
    fn fold_divisor_scaled(&self, delta: &BigRational, power: i32) -> Result<Self> {
        self.shift(0, power).fold_divisor(delta)
    }
}

/// Exact decimal when the expansion terminates, else `digits` significant digits.
pub fn decimal_string(q: &BigRational, digits: u32) -> String {
    let mut d = q.denom().clone();
    let mut places = 0u32;
    for p in [2u32, 5] {
        let pb = BigInt::from(p);
        let mut count = 0;
        while (&d % &pb).is_zero() {
            d /= &pb;
            count += 1;
        }
        places = places.max(count);
    }
    if d == BigInt::from(1) {
        crate::arith::decimal::render_fixed(q, places)
    } else {
        render_sig(q, digits)
    }
}

/// JSON number when it fits in `i64`, else a decimal string.
pub fn integer_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

pub fn json_integer(v: Option<&Value>) -> Option<BigInt> {
    match v? {
        Value::Number(num) => num.as_i64().map(BigInt::from),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

fn json_decimal(v: Option<&Value>) -> Result<BigRational> {
    match v {
        None => Ok(BigRational::zero()),
        Some(Value::String(s)) => parse_rational(s),
        Some(Value::Number(num)) => parse_rational(&num.to_string()),
        Some(other) => Err(Error::InvalidInput(format!("not a decimal: {other}"))),
    }
}
