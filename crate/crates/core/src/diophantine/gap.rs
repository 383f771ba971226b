//! Smallest divisor `|m + alpha n|` over the lattice ball `0 < |m| + |n| <= N`.
//!
//! Only the half-lattice `n > 0`, or `n = 0` with `m > 0`, is scanned: the
//! opposite mode has the same divisor up to sign. Ties are broken by the
//! smallest `(n, m)` in lexicographic order.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::cf::certified_convergents;
use super::slope::Slope;
use crate::arith::interval::ln_f64;
use crate::arith::{RationalInterval, Real};
use crate::error::{Error, Result};

/// Relative precision of gap enclosures handed to callers.
pub const GAP_REL_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallDivisorGap {
    pub radius: u64,
    /// `|m + alpha n|` at the argmin, exact for rational and quadratic slopes.
    pub gap: Real,
    pub argmin: (i64, i64),
}

impl SmallDivisorGap {
    pub fn enclosure(&self) -> RationalInterval {
        self.gap.enclose_relative(GAP_REL_BITS)
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.gap.is_zero()
    }
}

/// Coarse fixed-point candidate: divisor enclosure numerators over `2^bits`.
struct Candidate {
    m: i64,
    n: i64,
    abs_lo: BigInt,
    abs_hi: BigInt,
}

fn abs_range(lo: BigInt, hi: BigInt) -> (BigInt, BigInt) {
    if !lo.is_negative() {
        (lo, hi)
    } else if !hi.is_positive() {
        (-hi, -lo)
    } else {
        let top = if -lo.clone() > hi { -lo } else { hi };
        (BigInt::zero(), top)
    }
}

fn candidates_for_n(n: i64, radius: i64, alpha_lo: &BigInt, alpha_hi: &BigInt, bits: u32) -> Vec<Candidate> {
    let shift = bits as usize;
    if n == 0 {
        let one = BigInt::one() << shift;
        return vec![Candidate {
            m: 1,
            n: 0,
            abs_lo: one.clone(),
            abs_hi: one,
        }];
    }
    let x_lo = alpha_lo * n;
    let x_hi = alpha_hi * n;
    let k_lo = x_lo.div_floor(&(BigInt::one() << shift));
    let k_hi = x_hi.div_floor(&(BigInt::one() << shift)) + 1;
    let room = radius - n;
    let mut ks: Vec<i64> = Vec::new();
    let mut k = k_lo;
    while k <= k_hi {
        // |m| = |k| must stay within the ball; the divisor is convex in k
        let clamped = match k.to_i64() {
            Some(v) => v.clamp(-room, room),
            None => {
                if k.is_negative() {
                    -room
                } else {
                    room
                }
            }
        };
        if !ks.contains(&clamped) {
            ks.push(clamped);
        }
        k += 1;
    }
    ks.into_iter()
        .map(|k| {
            let kk = BigInt::from(k) << shift;
            let (abs_lo, abs_hi) = abs_range(&x_lo - &kk, &x_hi - &kk);
            Candidate {
                m: -k,
                n,
                abs_lo,
                abs_hi,
            }
        })
        .collect()
}

/// Picks the exact minimum of `|m + alpha n|` over `modes`, ties to smallest `(n, m)`.
fn exact_argmin(slope: &Slope, modes: impl IntoIterator<Item = (i64, i64)>) -> Result<Option<(Real, (i64, i64))>> {
    let mut best: Option<(Real, (i64, i64))> = None;
    for (m, n) in modes {
        let d = slope.divisor_i64(m, n).abs();
        best = match best {
            None => Some((d, (m, n))),
            Some((bd, (bm, bn))) => {
                let ord = d.compare(&bd)?;
                let better = match ord {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => (n, m) < (bn, bm),
                };
                if better {
                    Some((d, (m, n)))
                } else {
                    Some((bd, (bm, bn)))
                }
            }
        };
    }
    Ok(best)
}

/// Exact minimisation over the ball by a per-`n` scan: for each `n` only the
/// integers adjacent to `-alpha n` (clamped to the ball) can minimise.
pub fn gap(slope: &Slope, radius: u64) -> Result<SmallDivisorGap> {
    if radius == 0 {
        return Err(Error::InvalidInput("radius must be at least 1".into()));
    }
    let radius_i = i64::try_from(radius).map_err(|_| Error::InvalidInput("radius too large".into()))?;
    let bits = 64 + 2 * (64 - radius.leading_zeros());
    let coarse = slope.value().enclose(bits + 8).round_outward(bits);
    let scale = BigInt::one() << bits as usize;
    let alpha_lo = (coarse.lo() * num_rational::BigRational::from_integer(scale.clone())).to_integer();
    let alpha_hi = (coarse.hi() * num_rational::BigRational::from_integer(scale)).to_integer();

    let mut cands: Vec<Candidate> = (0..=radius_i)
        .into_par_iter()
        .flat_map_iter(|n| candidates_for_n(n, radius_i, &alpha_lo, &alpha_hi, bits))
        .collect();
    let best_hi = cands
        .iter()
        .map(|c| &c.abs_hi)
        .min()
        .cloned()
        .expect("ball is nonempty");
    cands.retain(|c| c.abs_lo <= best_hi);
    let (gap, argmin) = exact_argmin(slope, cands.iter().map(|c| (c.m, c.n)))?
        .expect("at least one finalist");
    Ok(SmallDivisorGap {
        radius,
        gap,
        argmin,
    })
}

/// The same minimum computed from the convergents `(-p_k, q_k)` inside the
/// ball, plus the mode `(1, 0)`.
pub fn gap_via_convergents(slope: &Slope, radius: u64, depth: usize) -> Result<SmallDivisorGap> {
    if radius == 0 {
        return Err(Error::InvalidInput("radius must be at least 1".into()));
    }
    let (convs, prefix) = certified_convergents(slope, depth);
    let bound = BigInt::from(radius);
    let left_ball = convs.iter().any(|c| c.m.abs() + c.n.abs() > bound);
    if !left_ball && !prefix.terminated {
        return Err(prefix.stopped_by.unwrap_or_else(|| {
            Error::PrecisionExhausted(format!("{depth} convergents do not leave the ball of radius {radius}"))
        }));
    }
    let mut modes = vec![(1i64, 0i64)];
    for c in &convs {
        if c.m.abs() + c.n.abs() <= bound {
            let m = (-c.m.clone()).to_i64().expect("inside ball");
            let n = c.n.to_i64().expect("inside ball");
            modes.push((m, n));
        }
    }
    let (gap, argmin) = exact_argmin(slope, modes)?.expect("nonempty");
    Ok(SmallDivisorGap {
        radius,
        gap,
        argmin,
    })
}

/// Least-squares fit of `-ln gap(N)` against `ln N`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentFit {
    pub radii: Vec<u64>,
    pub gaps: Vec<SmallDivisorGap>,
    pub tau: f64,
    pub intercept: f64,
    pub residuals: Vec<f64>,
    /// Slopes between consecutive radii.
    pub two_point_slopes: Vec<f64>,
    pub superpolynomial: bool,
    pub threshold: f64,
}

/// A two-point slope exceeding its predecessor by at least this much flags
/// superpolynomial decay.
pub const SUPERPOLY_THRESHOLD: f64 = 2.0;

/// Predecessor of the first two-point slope: the exponent 1 that every
/// irrational attains (Dirichlet).
pub const BASELINE_EXPONENT: f64 = 1.0;

fn neg_ln_gap(g: &SmallDivisorGap) -> f64 {
    let iv = g.enclosure();
    let rep = if iv.lo().is_positive() {
        iv.midpoint()
    } else {
        iv.hi().clone()
    };
    -ln_f64(&rep)
}

pub fn estimate_exponent(slope: &Slope, radii: &[u64]) -> Result<ExponentFit> {
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) || radii[0] == 0 {
        return Err(Error::InvalidInput("radii must be positive and strictly increasing".into()));
    }
    let gaps = radii.iter().map(|&r| gap(slope, r)).collect::<Result<Vec<_>>>()?;
    for g in &gaps {
        if g.is_zero()? {
            return Err(Error::ResonantSlope);
        }
    }
    if radii.len() < 2 {
        return Err(Error::InvalidInput("at least two radii are needed for a fit".into()));
    }
    let xs: Vec<f64> = radii.iter().map(|&r| (r as f64).ln()).collect();
    let ys: Vec<f64> = gaps.iter().map(neg_ln_gap).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let tau = sxy / sxx;
    let intercept = my - tau * mx;
    let residuals = xs.iter().zip(&ys).map(|(x, y)| y - (intercept + tau * x)).collect();
    let two_point_slopes: Vec<f64> = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
        .collect();
    let mut prev = BASELINE_EXPONENT;
    let mut superpolynomial = false;
    for &s in &two_point_slopes {
        if s - prev >= SUPERPOLY_THRESHOLD {
            superpolynomial = true;
        }
        prev = s;
    }
    Ok(ExponentFit {
        radii: radii.to_vec(),
        gaps,
        tau,
        intercept,
        residuals,
        two_point_slopes,
        superpolynomial,
        threshold: SUPERPOLY_THRESHOLD,
    })
}
