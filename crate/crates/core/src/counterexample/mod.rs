//! A smooth family of exact foliated 1-forms with no continuous family of
//! primitives, for Liouville-like slopes.
//!
//! For each `p` a certified mode `(m_p, n_p)` with
//! `|m_p + alpha n_p| <= (|m_p| + |n_p|)^-p` carries
//!
//! ```text
//! (f_t)_{m_p,n_p} = (m_p + alpha n_p) (|m_p| + |n_p|) rho(s_p (t - 1/p)),  s_p = p (p + 1)
//! ```
//!
//! so that `f_t` is smooth in `t`, each `f_t` is a single exact mode, and the
//! primitive coefficient `(|m_p| + |n_p|) rho(...)` reaches `|m_p| + |n_p|`
//! at `t = 1/p`, unbounded as `p` grows.

pub mod bump;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

pub use bump::{BumpKind, BumpSpec, ProfilePolynomial, MAX_DERIVATIVE_ORDER};

use crate::arith::decimal::{parse_rational, render_sig};
use crate::arith::RationalInterval;
use crate::diophantine::{certify_family_pair, find_family_pairs, ApproximationWitness, Slope};
use crate::error::{Error, Result};
use crate::fourier::{real, Coefficient, FourierSeries2D, Mode};
use crate::report::{interval_json, witness_json};

/// Binary precision of bump values stored as rationals in family samples.
pub const SAMPLE_BITS: u32 = 128;

/// `s_p = p (p + 1)`.
pub fn time_scale(p: u32) -> BigInt {
    BigInt::from(p) * BigInt::from(p + 1)
}

/// Closed interval with rational endpoints; `lo <= hi`.
pub fn closed_interval(lo: BigRational, hi: BigRational) -> Result<RationalInterval> {
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty interval [{lo}, {hi}]")));
    }
    Ok(RationalInterval::new(lo, hi))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub slope: Slope,
    /// One certified pair per `p = 2..=P`, in order.
    pub pairs: Vec<ApproximationWitness>,
    pub bump: BumpSpec,
}

fn sorted_disjoint(intervals: &[RationalInterval]) -> bool {
    let mut v: Vec<&RationalInterval> = intervals.iter().collect();
    v.sort_by(|a, b| a.lo().cmp(b.lo()));
    v.windows(2).all(|w| w[0].hi() < w[1].lo())
}

/// Builds the family from certified pairs for `p = 2..=pmax`.
pub fn build_family(slope: &Slope, pmax: u32, depth: usize) -> Result<FamilySpec> {
    if pmax < 2 {
        return Err(Error::InvalidInput("pmax must be at least 2".into()));
    }
    let pairs = find_family_pairs(slope, pmax, depth).map_err(|e| match e {
        Error::NotFound { p, .. } => Error::NotLiouvilleEvidence { p },
        other => other,
    })?;
    FamilySpec::new(slope.clone(), pairs, BumpSpec::family_default())
}

impl FamilySpec {
    /// Checks every invariant: family-form witnesses for consecutive `p`
    /// from 2, pairwise distinct modes, disjoint supports.
    pub fn new(slope: Slope, pairs: Vec<ApproximationWitness>, bump: BumpSpec) -> Result<Self> {
        for (i, w) in pairs.iter().enumerate() {
            if w.p as usize != i + 2 {
                return Err(Error::InvalidInput("pairs must cover p = 2, 3, ... in order".into()));
            }
            if !w.holds() || w.n < BigInt::from(w.p) {
                return Err(Error::InvalidInput(format!("pair for p = {} is not certified", w.p)));
            }
            if pairs[..i].iter().any(|o| o.m == w.m && o.n == w.n) {
                return Err(Error::InvalidInput(format!("pair for p = {} repeats a mode", w.p)));
            }
        }
        let spec = Self { slope, pairs, bump };
        let supports: Vec<RationalInterval> = spec.pairs.iter().map(|w| spec.support(w.p)).collect();
        if !sorted_disjoint(&supports) {
            return Err(Error::InvalidInput("support intervals overlap".into()));
        }
        Ok(spec)
    }

    pub fn pmax(&self) -> u32 {
        self.pairs.last().map_or(1, |w| w.p)
    }

    pub fn pair(&self, p: u32) -> Result<&ApproximationWitness> {
        self.pairs
            .iter()
            .find(|w| w.p == p)
            .ok_or_else(|| Error::InvalidInput(format!("p = {p} is not in the family")))
    }

    /// `[1/p - h/s_p, 1/p + h/s_p]` for bump half-width `h`.
    pub fn support(&self, p: u32) -> RationalInterval {
        let center = BigRational::new(BigInt::one(), BigInt::from(p));
        let r = &self.bump.half_width / BigRational::from_integer(time_scale(p));
        RationalInterval::new(&center - &r, &center + &r)
    }

    /// `|m_p| + |n_p|`.
    pub fn height(&self, p: u32) -> Result<BigInt> {
        let w = self.pair(p)?;
        Ok(w.m.abs() + w.n.abs())
    }

    /// Bump argument `s_p (t - 1/p)`.
    fn argument(p: u32, t: &BigRational) -> BigRational {
        BigRational::from_integer(time_scale(p)) * (t - BigRational::new(BigInt::one(), BigInt::from(p)))
    }

    /// The unique `p` whose open support contains `t`.
    pub fn active_pair(&self, t: &BigRational) -> Option<&ApproximationWitness> {
        let mut active = self
            .pairs
            .iter()
            .filter(|w| self.bump.is_active(&Self::argument(w.p, t)));
        let first = active.next();
        assert!(active.next().is_none(), "family supports overlap at t = {t}");
        first
    }

    pub fn to_json(&self, digits: u32) -> Value {
        let pairs: Vec<Value> = self
            .pairs
            .iter()
            .map(|w| {
                let mut v = witness_json(w, digits);
                v["m"] = json!(w.m.to_string());
                v["n"] = json!(w.n.to_string());
                v
            })
            .collect();
        let scales: Vec<String> = self.pairs.iter().map(|w| time_scale(w.p).to_string()).collect();
        let supports: Vec<Value> = self
            .pairs
            .iter()
            .map(|w| {
                let s = self.support(w.p);
                json!({"p": w.p, "lo": s.lo().to_string(), "hi": s.hi().to_string()})
            })
            .collect();
        json!({
            "slope": self.slope.to_string(),
            "bump": self.bump.tag(),
            "bump_half_width": self.bump.half_width.to_string(),
            "pairs": pairs,
            "time_scales": scales,
            "supports": supports,
        })
    }

    /// Reads a spec written by [`FamilySpec::to_json`]; every pair is
    /// re-certified against the slope.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidInput(format!("family spec: {msg}"));
        let slope: Slope = v
            .get("slope")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing slope"))?
            .parse()?;
        match v.get("bump").and_then(Value::as_str) {
            Some("canonical") => {}
            _ => return Err(bad("unknown bump")),
        }
        let half_width = match v.get("bump_half_width").and_then(Value::as_str) {
            Some(s) => parse_rational(s)?,
            None => return Err(bad("missing bump_half_width")),
        };
        let items = v.get("pairs").and_then(Value::as_array).ok_or_else(|| bad("missing pairs"))?;
        let mut pairs = Vec::with_capacity(items.len());
        for item in items {
            let p = item
                .get("p")
                .and_then(Value::as_u64)
                .and_then(|p| u32::try_from(p).ok())
                .ok_or_else(|| bad("bad p"))?;
            let m = crate::fourier::json_integer(item.get("m")).ok_or_else(|| bad("bad m"))?;
            let n = crate::fourier::json_integer(item.get("n")).ok_or_else(|| bad("bad n"))?;
            let level = item.get("level").and_then(Value::as_u64).unwrap_or(0) as usize;
            let w = certify_family_pair(&slope, p, &m, &n, level)?
                .ok_or(Error::NotLiouvilleEvidence { p })?;
            pairs.push(w);
        }
        Self::new(slope, pairs, BumpSpec::canonical(half_width)?)
    }
}

/// `d^a/dt^a (f_t)_{m_p,n_p}`, a real number; exactly zero outside the support.
pub fn family_coefficient(spec: &FamilySpec, p: u32, t: &BigRational, a: u32, bits: u32) -> Result<RationalInterval> {
    let w = spec.pair(p)?;
    let u = FamilySpec::argument(p, t);
    let bump = spec.bump.derivative(a, &u, bits)?;
    if bump.is_point() && bump.lo().is_zero() {
        return Ok(RationalInterval::zero());
    }
    let height = w.m.abs() + w.n.abs();
    let scale = num_traits::pow(time_scale(p), a as usize) * height;
    let delta = spec.slope.divisor(&w.m, &w.n).enclose_relative(bits);
    Ok((&bump * &delta).scale_int(&scale))
}

/// `c(I, a, j)` together with its ingredients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessBound {
    pub a: u32,
    pub j: u32,
    /// Certified constant: max of `instantiated` and `tail`.
    pub constant: BigRational,
    /// Sup over samples and pairs of `|d^a_t f| (|m|+|n|)^j`.
    pub sampled_sup: BigRational,
    /// Max over pairs whose support meets `I` of `|delta_p| h_p^{1+j} s_p^a M_a`.
    pub instantiated: BigRational,
    /// Bound for every `p > P` from `|delta_p| <= h_p^-p`, `h_p >= p`,
    /// `s_p <= 2 p^2`: `M_a 2^a sup_{p > P} p^{2a+1+j-p}`. Zero when `I`
    /// misses every such support; `None` when `P < j`.
    pub tail: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessCertificate {
    pub interval: RationalInterval,
    pub samples: usize,
    pub bounds: Vec<SmoothnessBound>,
    /// True when every tail bound is available.
    pub covers_all_p: bool,
}

impl SmoothnessCertificate {
    pub fn to_json(&self, digits: u32) -> Value {
        json!({
            "interval": [self.interval.lo().to_string(), self.interval.hi().to_string()],
            "samples": self.samples,
            "covers_all_p": self.covers_all_p,
            "bounds": self.bounds.iter().map(|b| json!({
                "a": b.a,
                "j": b.j,
                "constant": render_sig(&b.constant, digits),
                "sampled_sup": render_sig(&b.sampled_sup, digits),
                "instantiated": render_sig(&b.instantiated, digits),
                "tail": b.tail.as_ref().map(|t| render_sig(t, digits)),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Evenly spaced sample times in `I`, endpoints included.
pub fn sample_times(interval: &RationalInterval, samples: usize) -> Vec<BigRational> {
    if samples <= 1 || interval.is_point() {
        return vec![interval.lo().clone()];
    }
    let step = interval.width() / BigRational::from_integer(BigInt::from(samples - 1));
    (0..samples)
        .map(|i| interval.lo() + &step * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// `sup_{p > P} p^{c - p}`: the map is decreasing once `p >= max(c, 2)`.
fn tail_power_sup(pmax: u32, c: u32) -> BigRational {
    let last = (pmax + 1).max(c).max(2);
    (pmax + 1..=last)
        .map(|p| {
            let e = i64::from(c) - i64::from(p);
            let base = BigRational::from_integer(BigInt::from(p));
            if e >= 0 {
                num_traits::pow(base, e as usize)
            } else {
                num_traits::pow(base, (-e) as usize).recip()
            }
        })
        .max()
        .expect("nonempty range")
}

/// Certifies `sup_{t in I} |d^a_t (f_t)_{m,n}| (|m|+|n|)^j <= c(I, a, j)` for
/// every mode of the infinite family, for all `a <= a_max`, `j <= j_max`.
/// Sampling only cross-checks the analytic constants; a sample above its
/// analytic bound raises `BoundViolated`.
pub fn verify_smoothness(
    spec: &FamilySpec,
    a_max: u32,
    j_max: u32,
    interval: &RationalInterval,
    samples: usize,
) -> Result<SmoothnessCertificate> {
    if a_max > MAX_DERIVATIVE_ORDER {
        return Err(Error::InvalidInput(format!(
            "derivative order {a_max} exceeds the maximum {MAX_DERIVATIVE_ORDER}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidInput("at least one sample is required".into()));
    }
    let times = sample_times(interval, samples);
    let pmax = spec.pmax();
    let bits = 64;
    // tail supports all lie in (0, 1/P)
    let tail_window = RationalInterval::new(BigRational::zero(), BigRational::new(1.into(), pmax.into()));
    let tail_relevant = interval.hi() > tail_window.lo() && interval.lo() < tail_window.hi();

    let mut bounds = Vec::new();
    for a in 0..=a_max {
        let m_a = spec.bump.sup_bound(a)?;
        // per pair: |delta| upper bound, height, analytic factor without h^j
        let mut per_pair = Vec::new();
        for w in &spec.pairs {
            let h = w.m.abs() + w.n.abs();
            let delta_hi = spec.slope.divisor(&w.m, &w.n).abs().enclose_relative(bits).hi().clone();
            let meets = spec.support(w.p).intersects(interval);
            let base = &delta_hi
                * BigRational::from_integer(&h * num_traits::pow(time_scale(w.p), a as usize))
                * &m_a;
            per_pair.push((w, h, meets, base));
        }
        // sampled |d^a f| per (pair, t), independent of j
        let sampled: Vec<Vec<(BigRational, BigRational)>> = per_pair
            .par_iter()
            .map(|(w, _, meets, _)| {
                if !meets {
                    return Ok(Vec::new());
                }
                let mut vals = Vec::new();
                for t in &times {
                    let v = family_coefficient(spec, w.p, t, a, bits)?;
                    let mag = v.abs().hi().clone();
                    if !mag.is_zero() {
                        vals.push((t.clone(), mag));
                    }
                }
                Ok(vals)
            })
            .collect::<Result<_>>()?;

        for j in 0..=j_max {
            let mut sampled_sup = BigRational::zero();
            let mut instantiated = BigRational::zero();
            for ((w, h, meets, base), vals) in per_pair.iter().zip(&sampled) {
                if !meets {
                    continue;
                }
                let hj = BigRational::from_integer(num_traits::pow(h.clone(), j as usize));
                let bound = base * &hj;
                for (t, mag) in vals {
                    let s = mag * &hj;
                    if s > bound {
                        return Err(Error::BoundViolated {
                            p: w.p,
                            t: t.to_string(),
                            a,
                            j,
                        });
                    }
                    if s > sampled_sup {
                        sampled_sup = s;
                    }
                }
                if bound > instantiated {
                    instantiated = bound;
                }
            }
            let tail = if !tail_relevant {
                Some(BigRational::zero())
            } else if pmax >= j {
                let two_a = BigRational::from_integer(BigInt::one() << a as usize);
                Some(&m_a * two_a * tail_power_sup(pmax, 2 * a + 1 + j))
            } else {
                None
            };
            let constant = match &tail {
                Some(t) if t > &instantiated => t.clone(),
                _ => instantiated.clone(),
            };
            bounds.push(SmoothnessBound {
                a,
                j,
                constant,
                sampled_sup,
                instantiated,
                tail,
            });
        }
    }
    let covers_all_p = bounds.iter().all(|b| b.tail.is_some());
    Ok(SmoothnessCertificate {
        interval: interval.clone(),
        samples: times.len(),
        bounds,
        covers_all_p,
    })
}

/// `f_t` and its primitive at one time.
///
/// Two normalisations of the primitive are kept: `g_paper` divides by
/// `m + alpha n` alone, `(g_t) = (|m|+|n|) rho(...)`; `g_normalized` also
/// divides by `2 pi i`, so that `X g_normalized = f_t` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySample {
    pub t: BigRational,
    pub p: Option<u32>,
    /// The bump value used, as a rational (exact at the support centre and
    /// outside the support).
    pub bump_value: BigRational,
    pub f: FourierSeries2D,
    pub g_paper: FourierSeries2D,
    pub g_normalized: FourierSeries2D,
}

impl FamilySample {
    pub fn to_json(&self, digits: u32) -> Result<Value> {
        Ok(json!({
            "t": self.t.to_string(),
            "p": self.p,
            "bump_value": render_sig(&self.bump_value, digits),
            "f": self.f.to_json(digits)?,
            "g_paper": self.g_paper.to_json(digits)?,
            "g_normalized": self.g_normalized.to_json(digits)?,
        }))
    }
}

pub fn solve_family(spec: &FamilySpec, t: &BigRational) -> Result<FamilySample> {
    let Some(w) = spec.active_pair(t) else {
        return Ok(FamilySample {
            t: t.clone(),
            p: None,
            bump_value: BigRational::zero(),
            f: FourierSeries2D::new(),
            g_paper: FourierSeries2D::new(),
            g_normalized: FourierSeries2D::new(),
        });
    };
    let u = FamilySpec::argument(w.p, t);
    let rho = if u.is_zero() {
        BigRational::one()
    } else {
        spec.bump.value(&u, SAMPLE_BITS).midpoint()
    };
    let amp = BigRational::from_integer(w.m.abs() + w.n.abs()) * &rho;
    let mode = Mode::new(w.m.clone(), w.n.clone());
    let slope = Some(&spec.slope);
    let f = FourierSeries2D::monomial(mode.clone(), Coefficient::term(0, 1, real(amp.clone())), slope);
    let g_paper = FourierSeries2D::monomial(mode.clone(), Coefficient::plain(real(amp.clone())), slope);
    let g_normalized = FourierSeries2D::monomial(mode, Coefficient::term(-1, 0, real(amp)), slope);
    debug_assert!(g_paper.len() <= 1);
    Ok(FamilySample {
        t: t.clone(),
        p: Some(w.p),
        bump_value: rho,
        f,
        g_paper,
        g_normalized,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupEntry {
    pub p: u32,
    pub height: BigInt,
    /// `sup_{t in I} |(g_t)_{m_p,n_p}|`; a point interval when `1/p` lies in `I`.
    pub sup: RationalInterval,
    /// Where the sup is attained, if `I` meets the support.
    pub attained_at: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupProfile {
    pub interval: RationalInterval,
    pub entries: Vec<BlowupEntry>,
    /// The sups over the `p` with `1/p` in `I` strictly increase with `p`.
    pub strictly_increasing: bool,
    /// `I` contains 0, where the sups `|m_p| + |n_p|` grow without bound.
    pub unbounded_near_zero: bool,
}

impl BlowupProfile {
    pub fn to_json(&self, digits: u32) -> Value {
        json!({
            "interval": [self.interval.lo().to_string(), self.interval.hi().to_string()],
            "strictly_increasing": self.strictly_increasing,
            "unbounded_near_zero": self.unbounded_near_zero,
            "entries": self.entries.iter().map(|e| json!({
                "p": e.p,
                "height": e.height.to_string(),
                "sup": if e.sup.is_point() {
                    json!(e.sup.lo().to_string())
                } else {
                    interval_json(&e.sup, digits)
                },
                "attained_at": e.attained_at.as_ref().map(|t| t.to_string()),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Per-`p` sup of the primitive coefficient over `I`. `rho` decreases in
/// `|u|`, so the sup sits at the point of `I` nearest to `1/p`; `samples`
/// evenly spaced times cross-check that no sample exceeds it.
pub fn blowup_profile(spec: &FamilySpec, interval: &RationalInterval, samples: usize) -> Result<BlowupProfile> {
    let times = sample_times(interval, samples.max(1));
    let mut entries = Vec::new();
    for w in &spec.pairs {
        let height = w.m.abs() + w.n.abs();
        let center = BigRational::new(BigInt::one(), BigInt::from(w.p));
        let support = spec.support(w.p);
        let (sup, at) = if !support.intersects(interval) {
            (RationalInterval::zero(), None)
        } else if interval.contains(&center) {
            (RationalInterval::from_integer(height.clone()), Some(center))
        } else {
            let nearest = if &center < interval.lo() {
                interval.lo().clone()
            } else {
                interval.hi().clone()
            };
            let u = FamilySpec::argument(w.p, &nearest);
            let v = spec.bump.value(&u, SAMPLE_BITS).scale_int(&height);
            (v, Some(nearest))
        };
        for t in &times {
            let u = FamilySpec::argument(w.p, t);
            let v = spec.bump.value(&u, SAMPLE_BITS).scale_int(&height);
            assert!(v.lo() <= sup.hi(), "sampled primitive exceeds its supremum");
        }
        entries.push(BlowupEntry {
            p: w.p,
            height,
            sup,
            attained_at: at,
        });
    }
    let centred: Vec<&BlowupEntry> = entries
        .iter()
        .filter(|e| interval.contains(&BigRational::new(BigInt::one(), BigInt::from(e.p))))
        .collect();
    let strictly_increasing = centred.windows(2).all(|w| w[0].sup.hi() < w[1].sup.lo());
    let unbounded_near_zero = interval.contains(&BigRational::zero()) && strictly_increasing && centred.len() >= 2;
    Ok(BlowupProfile {
        interval: interval.clone(),
        entries,
        strictly_increasing,
        unbounded_near_zero,
    })
}

/// Column order of [`trajectory_rows`].
pub const TRAJECTORY_CSV_HEADER: [&str; 4] = ["t", "p", "re", "im"];

/// `(t, p, re, im)` of the primitive coefficient `(g_t)_{m_p,n_p}` (division
/// by `m + alpha n` only) for every pair and sample time.
pub fn trajectory_rows(spec: &FamilySpec, interval: &RationalInterval, samples: usize, digits: u32) -> Vec<[String; 4]> {
    let times = sample_times(interval, samples.max(1));
    let mut rows = Vec::new();
    for t in &times {
        for w in &spec.pairs {
            let u = FamilySpec::argument(w.p, t);
            let v = spec.bump.value(&u, SAMPLE_BITS).scale_int(&(w.m.abs() + w.n.abs()));
            rows.push([render_sig(t, digits), w.p.to_string(), render_sig(&v.midpoint(), digits), "0".to_string()]);
        }
    }
    rows
}
