//! JSON fragments shared by the module reports. Numbers are decimal strings;
//! interval bounds are rounded outward so the printed bounds stay rigorous.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::decimal::{render_sig, render_sig_rounded, Rounding};
use crate::arith::{RationalInterval, Real};
use crate::diophantine::gap::GAP_REL_BITS;
use crate::diophantine::{ApproximationWitness, ExponentFit, SmallDivisorGap};
use crate::fourier::integer_json;

/// `{"lo", "hi"}` rounded outward to `digits` significant digits.
pub fn interval_json(iv: &RationalInterval, digits: u32) -> Value {
    json!({
        "lo": render_sig_rounded(iv.lo(), digits, Rounding::Down),
        "hi": render_sig_rounded(iv.hi(), digits, Rounding::Up),
    })
}

/// Midpoint estimate plus rigorous bounds.
pub fn real_json(r: &Real, digits: u32) -> Value {
    let iv = r.enclose_relative(GAP_REL_BITS.max(digits * 4));
    json!({
        "value": render_sig(&iv.midpoint(), digits),
        "lo": render_sig_rounded(iv.lo(), digits, Rounding::Down),
        "hi": render_sig_rounded(iv.hi(), digits, Rounding::Up),
        "exact": r.is_exact(),
    })
}

pub fn mode_json(m: &BigInt, n: &BigInt) -> Value {
    json!([integer_json(m), integer_json(n)])
}

pub fn gap_json(g: &SmallDivisorGap, digits: u32) -> Value {
    json!({
        "radius": g.radius,
        "gap": real_json(&g.gap, digits),
        "argmin": [g.argmin.0, g.argmin.1],
    })
}

pub fn witness_json(w: &ApproximationWitness, digits: u32) -> Value {
    json!({
        "p": w.p,
        "m": integer_json(&w.m),
        "n": integer_json(&w.n),
        "bound_form": w.bound_form.to_string(),
        "value": interval_json(&w.value, digits),
        "bound": render_sig(&w.bound, digits),
        "level": w.level,
        "holds": w.holds(),
    })
}

/// Floats of the fit are printed through their shortest round-trip form.
pub fn exponent_json(fit: &ExponentFit, digits: u32) -> Value {
    let f = |x: f64| Value::String(format!("{x}"));
    json!({
        "radii": fit.radii,
        "gaps": fit.gaps.iter().map(|g| gap_json(g, digits)).collect::<Vec<_>>(),
        "tau": f(fit.tau),
        "intercept": f(fit.intercept),
        "residuals": fit.residuals.iter().map(|&r| f(r)).collect::<Vec<_>>(),
        "two_point_slopes": fit.two_point_slopes.iter().map(|&r| f(r)).collect::<Vec<_>>(),
        "superpolynomial": fit.superpolynomial,
        "threshold": f(fit.threshold),
    })
}
