//! The cohomological equation `Xg = f` and foliated cohomology truncated to
//! a ball of modes.
//!
//! On the ball `|m| + |n| <= N` the leafwise differential is diagonal, so
//! `H^0_N` is spanned by the resonant modes and `H^1_N` is the cokernel of
//! multiplication by `2 pi i (m + alpha n)`; both have dimension equal to the
//! number of resonant modes. The dimensions cannot see Hausdorffness; the
//! report carries a gap-decay proxy for that, which is a heuristic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::arith::RationalInterval;
use crate::diophantine::gap::GAP_REL_BITS;
use crate::diophantine::{estimate_exponent, gap, ExponentFit, Slope, SmallDivisorGap};
use crate::error::{Error, Result};
use crate::fourier::{format_complex, Coefficient, FourierSeries2D, Mode};
use crate::report::{exponent_json, gap_json, interval_json};

/// The mean coefficient `f_{0,0}`: the class of `f dx` in the Hausdorff
/// quotient of `H^1`. Zero when the mode is absent.
pub fn obstruction(f: &FourierSeries2D) -> Coefficient {
    f.get(&Mode::new(0, 0)).cloned().unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveSolution {
    pub g: FourierSeries2D,
    /// Smallest `|m + alpha n|` over the support; `None` for `f = 0`.
    pub min_divisor_used: Option<RationalInterval>,
    /// `max |g_{m,n}| / max |f_{m,n}|`; `None` for `f = 0`.
    pub amplification: Option<RationalInterval>,
}

impl PrimitiveSolution {
    pub fn to_json(&self, digits: u32) -> Result<Value> {
        Ok(json!({
            "g": self.g.to_json(digits)?,
            "min_divisor_used": self.min_divisor_used.as_ref().map(|iv| interval_json(iv, digits)),
            "amplification": self.amplification.as_ref().map(|iv| interval_json(iv, digits)),
        }))
    }
}

fn obstruction_value(c: &Coefficient) -> String {
    match c.as_plain() {
        Some(v) => format_complex(&v),
        None => format!("{c:?}"),
    }
}

/// Solves `Xg = f` mode by mode: `g_{m,n} = f_{m,n} / (2 pi i (m + alpha n))`.
/// The result has no mean term; primitives are unique up to leafwise
/// constants.
pub fn solve_primitive(f: &FourierSeries2D, slope: &Slope) -> Result<PrimitiveSolution> {
    let mean = obstruction(f);
    if !mean.is_zero() {
        return Err(Error::Obstructed {
            value: obstruction_value(&mean),
        });
    }
    // resonant modes are reported in (m, n) order by the mode-wise division
    let g = f.act(slope, -1)?;
    if f.is_empty() {
        return Ok(PrimitiveSolution {
            g,
            min_divisor_used: None,
            amplification: None,
        });
    }
    let mut min_div: Option<RationalInterval> = None;
    for mode in f.support() {
        let d = slope.divisor(&mode.m, &mode.n).abs().enclose_relative(GAP_REL_BITS);
        min_div = Some(match min_div {
            None => d,
            Some(cur) => interval_min(&cur, &d),
        });
    }
    let bits = 2 * GAP_REL_BITS;
    let top_g = g.max_modulus(bits)?;
    let top_f = f.max_modulus(bits)?;
    let amplification = top_g.checked_div(&top_f);
    Ok(PrimitiveSolution {
        g,
        min_divisor_used: min_div,
        amplification,
    })
}

fn interval_min(a: &RationalInterval, b: &RationalInterval) -> RationalInterval {
    let lo = a.lo().min(b.lo()).clone();
    let hi = a.hi().min(b.hi()).clone();
    RationalInterval::new(lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HausdorffFlag {
    ProxyHausdorff,
    ProxyNonHausdorff,
    /// Rational slope: resonant modes exist at every scale.
    Resonant,
}

impl fmt::Display for HausdorffFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HausdorffFlag::ProxyHausdorff => "proxy-Hausdorff",
            HausdorffFlag::ProxyNonHausdorff => "proxy-non-Hausdorff",
            HausdorffFlag::Resonant => "resonant",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyReport {
    pub slope: Slope,
    pub radius: u64,
    pub h0: u64,
    pub h1: u64,
    pub gap: SmallDivisorGap,
    pub hausdorff_flag: HausdorffFlag,
    /// Gap-decay fit behind the flag; absent for rational slopes and for
    /// radii too small to give two distinct sub-radii.
    pub fit: Option<ExponentFit>,
}

/// Column order of [`CohomologyReport::csv_record`].
pub const COHOMOLOGY_CSV_HEADER: [&str; 9] = [
    "slope", "radius", "h0", "h1", "gap_lo", "gap_hi", "argmin_m", "argmin_n", "hausdorff_flag",
];

impl CohomologyReport {
    pub fn to_json(&self, digits: u32) -> Value {
        json!({
            "slope": self.slope.to_string(),
            "radius": self.radius,
            "dims": [self.h0, self.h1],
            "gap": gap_json(&self.gap, digits),
            "hausdorff_flag": self.hausdorff_flag.to_string(),
            "fit": self.fit.as_ref().map(|f| exponent_json(f, digits)),
        })
    }

    pub fn csv_record(&self, digits: u32) -> Vec<String> {
        let bounds = interval_json(&self.gap.enclosure(), digits);
        vec![
            self.slope.to_string(),
            self.radius.to_string(),
            self.h0.to_string(),
            self.h1.to_string(),
            bounds["lo"].as_str().unwrap_or_default().to_string(),
            bounds["hi"].as_str().unwrap_or_default().to_string(),
            self.gap.argmin.0.to_string(),
            self.gap.argmin.1.to_string(),
            self.hausdorff_flag.to_string(),
        ]
    }
}

/// Number of modes with `m + alpha n = 0` in the ball `|m| + |n| <= N`.
pub fn resonant_count(slope: &Slope, radius: u64) -> Result<u64> {
    match slope {
        Slope::Rational {
            numerator,
            denominator,
        } => {
            // the resonant modes are t * (-numerator, denominator)
            let step = numerator.abs() + denominator;
            let t: BigInt = BigInt::from(radius).div_floor(&step);
            let t = u64::try_from(t).expect("bounded by radius");
            Ok(2 * t + 1)
        }
        Slope::Quadratic { .. } | Slope::LiouvilleBase10 { .. } => Ok(1),
        Slope::DecimalEnclosure { .. } => {
            let r = i64::try_from(radius).map_err(|_| Error::InvalidInput("radius too large".into()))?;
            let alpha = slope.value().enclose(64);
            let mut count = 1;
            for n in 1..=r {
                let lo = (alpha.lo() * BigInt::from(n)).floor().to_integer();
                let hi = (alpha.hi() * BigInt::from(n)).ceil().to_integer();
                let mut k = lo;
                while k <= hi {
                    if k.abs() + n <= BigInt::from(r) && slope.divisor(&-k.clone(), &n.into()).is_zero()? {
                        // the opposite mode is resonant as well
                        count += 2;
                    }
                    k += 1;
                }
            }
            Ok(count)
        }
    }
}

/// Sub-radii `N/4, N/2, N` used by the Hausdorffness proxy.
pub fn proxy_radii(radius: u64) -> Vec<u64> {
    let mut r: Vec<u64> = [radius / 4, radius / 2, radius]
        .into_iter()
        .filter(|&x| x > 0)
        .collect();
    r.dedup();
    r
}

pub fn truncated_cohomology(slope: &Slope, radius: u64) -> Result<CohomologyReport> {
    if radius == 0 {
        return Err(Error::InvalidInput("radius must be at least 1".into()));
    }
    let dim = resonant_count(slope, radius)?;
    let g = gap(slope, radius)?;
    let (flag, fit) = if slope.is_rational() || g.is_zero()? {
        (HausdorffFlag::Resonant, None)
    } else {
        let radii = proxy_radii(radius);
        if radii.len() < 2 {
            (HausdorffFlag::ProxyHausdorff, None)
        } else {
            let fit = estimate_exponent(slope, &radii)?;
            let flag = if fit.superpolynomial {
                HausdorffFlag::ProxyNonHausdorff
            } else {
                HausdorffFlag::ProxyHausdorff
            };
            (flag, Some(fit))
        }
    };
    Ok(CohomologyReport {
        slope: slope.clone(),
        radius,
        h0: dim,
        h1: dim,
        gap: g,
        hausdorff_flag: flag,
        fit,
    })
}
