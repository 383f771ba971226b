//! Decimal strings: exact parsing into rationals and deterministic
//! round-half-even rendering.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::RationalInterval;
use crate::error::{Error, Result};

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

/// Parses `-12.5`, `1e-12`, `0.110001E+3`, or a fraction `p/q` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a decimal number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut n: BigInt = if all.is_empty() {
        BigInt::zero()
    } else {
        all.parse().map_err(|_| bad())?
    };
    if negative {
        n = -n;
    }
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 1_000_000 {
        return Err(bad());
    }
    Ok(if scale >= 0 {
        BigRational::from_integer(n * pow10(scale as u32))
    } else {
        BigRational::new(n, pow10((-scale) as u32))
    })
}

/// Rounding rule for the last rendered digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    HalfEven,
    /// Towards minus infinity.
    Down,
    /// Towards plus infinity.
    Up,
}

fn round_with(q: &BigRational, mode: Rounding) -> BigInt {
    match mode {
        Rounding::HalfEven => round_half_even(q),
        Rounding::Down => q.floor().to_integer(),
        Rounding::Up => q.ceil().to_integer(),
    }
}

/// Integer nearest to `q`, ties to even.
fn round_half_even(q: &BigRational) -> BigInt {
    let (fl, rem) = q.numer().div_mod_floor(q.denom());
    let twice: BigInt = &rem * 2;
    match twice.cmp(q.denom()) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1,
        Ordering::Equal => {
            if fl.is_even() {
                fl
            } else {
                fl + 1
            }
        }
    }
}

fn place_point(mut digits: String, frac_len: usize, negative: bool) -> String {
    while digits.len() <= frac_len {
        digits.insert(0, '0');
    }
    let split = digits.len() - frac_len;
    let (i, f) = digits.split_at(split);
    let f = f.trim_end_matches('0');
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(i);
    if !f.is_empty() {
        out.push('.');
        out.push_str(f);
    }
    out
}

/// Fixed-point rendering with `digits` places after the point (round-half-even),
/// trailing zeros trimmed. Negative zero renders as `0`.
pub fn render_fixed(q: &BigRational, digits: u32) -> String {
    let scaled = q * BigRational::from_integer(pow10(digits));
    let n = round_half_even(&scaled);
    let negative = n.is_negative();
    place_point(n.abs().to_string(), digits as usize, negative)
}

/// Rendering with `sig` significant digits (round-half-even). Plain notation
/// for magnitudes in `[1e-6, 1e21)`, scientific otherwise.
pub fn render_sig(q: &BigRational, sig: u32) -> String {
    render_sig_rounded(q, sig, Rounding::HalfEven)
}

/// As [`render_sig`] with an explicit rounding rule; directed rules give
/// rigorous decimal bounds.
pub fn render_sig_rounded(q: &BigRational, sig: u32, mode: Rounding) -> String {
    let sig = sig.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    let negative = q.is_negative();
    let a = q.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e = estimate_log10(&a);
    loop {
        let lo = pow10_rational(e);
        let hi = pow10_rational(e + 1);
        if a < lo {
            e -= 1;
        } else if a >= hi {
            e += 1;
        } else {
            break;
        }
    }
    let shift = sig as i64 - 1 - e;
    // round the magnitude; directed rules flip for negative values
    let mag_mode = match (mode, negative) {
        (Rounding::Down, true) => Rounding::Up,
        (Rounding::Up, true) => Rounding::Down,
        (m, _) => m,
    };
    let mut n = round_with(&(&a * pow10_rational(shift)), mag_mode);
    if n.is_zero() {
        return "0".to_string();
    }
    if n == pow10(sig) {
        // rounding carried into a new digit
        n = pow10(sig - 1);
        e += 1;
    }
    let digits = n.to_string();
    if (-6..21).contains(&e) {
        let frac_len = (sig as i64 - 1 - e).max(0) as usize;
        let mut digits = digits;
        if sig as i64 - 1 - e < 0 {
            digits.push_str(&"0".repeat((e - (sig as i64 - 1)) as usize));
        }
        place_point(digits, frac_len, negative)
    } else {
        let mantissa = place_point(digits, sig as usize - 1, false);
        format!("{}{}e{}", if negative { "-" } else { "" }, mantissa, e)
    }
}

fn pow10_rational(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow10(e as u32))
    } else {
        BigRational::new(BigInt::one(), pow10((-e) as u32))
    }
}

fn estimate_log10(a: &BigRational) -> i64 {
    let e2 = super::interval::log2_floor(a);
    (e2 as f64 * std::f64::consts::LOG10_2).floor() as i64
}

/// Correctly rounded fixed-point rendering of a value known through
/// enclosures of increasing precision. `enclose(bits)` must contain the value.
/// Falls back to the midpoint rounding when the value sits on a rounding tie.
pub fn render_fixed_rigorous(
    enclose: impl Fn(u32) -> RationalInterval,
    digits: u32,
) -> String {
    let mut bits = digits * 4 + 32;
    let mut last = None;
    for _ in 0..6 {
        let iv = enclose(bits);
        let lo = render_fixed(iv.lo(), digits);
        let hi = render_fixed(iv.hi(), digits);
        if lo == hi {
            return lo;
        }
        last = Some(iv);
        bits *= 2;
    }
    let iv = last.expect("loop ran");
    render_fixed(&iv.midpoint(), digits)
}
