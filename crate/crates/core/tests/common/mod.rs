//! Independent oracles shared by integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use sdl_core::arith::{QuadraticSurd, Real};
use sdl_core::diophantine::Slope;

// Full truncated complex for k = 2: basis (mode, subset), the differential
// assembled directly from the sign rule. Scalars are the divisors delta_i
// themselves; the common factor 2 pi i rescales degree j by (2 pi i)^j and
// does not change ranks.

pub type Sparse = Vec<BTreeMap<usize, QuadraticSurd>>;

pub fn ball(radius: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for m in -radius..=radius {
        let rest = radius - m.abs();
        for n in -rest..=rest {
            out.push((m, n));
        }
    }
    out
}

pub fn surd_divisor(s: &Slope, m: i64, n: i64) -> QuadraticSurd {
    match s.divisor_i64(m, n) {
        Real::Exact(x) => x,
        Real::Enclosed(_) => panic!("oracle needs exact slopes"),
    }
}

/// `(d0, d1)` as sparse row lists: `d0: C^0 -> C^1`, `d1: C^1 -> C^2`.
/// Degree-1 basis: `2 * mode + i` for generator `e_i`.
pub fn assemble(a: &Slope, b: &Slope, radius: i64) -> (Sparse, Sparse, usize) {
    let modes: Vec<((i64, i64), (i64, i64))> = ball(radius)
        .into_iter()
        .flat_map(|x| ball(radius).into_iter().map(move |y| (x, y)))
        .collect();
    let count = modes.len();
    let mut d0: Sparse = vec![BTreeMap::new(); 2 * count];
    let mut d1: Sparse = vec![BTreeMap::new(); count];
    for (idx, (x, y)) in modes.iter().enumerate() {
        let c = [surd_divisor(a, x.0, x.1), surd_divisor(b, y.0, y.1)];
        // d(1) = c_0 e_0 + c_1 e_1
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                d0[2 * idx + i].insert(idx, ci.clone());
            }
        }
        // d(e_0) = -c_1 e_0 e_1 (one element of S below 1); d(e_1) = c_0 e_0 e_1
        if !c[1].is_zero() {
            d1[idx].insert(2 * idx, c[1].neg());
        }
        if !c[0].is_zero() {
            d1[idx].insert(2 * idx + 1, c[0].clone());
        }
    }
    (d0, d1, count)
}

pub fn compose_is_zero(d1: &Sparse, d0: &Sparse) -> bool {
    d1.iter().all(|row| {
        let mut acc: BTreeMap<usize, QuadraticSurd> = BTreeMap::new();
        for (&k, v) in row {
            for (&col, w) in &d0[k] {
                let e = acc.entry(col).or_insert_with(|| QuadraticSurd::from_integer(0));
                *e = e.add(&v.mul(w));
            }
        }
        acc.values().all(QuadraticSurd::is_zero)
    })
}

pub fn sparse_rank(mut rows: Sparse) -> usize {
    let mut rank = 0;
    let mut used = vec![false; rows.len()];
    let cols: usize = rows.iter().filter_map(|r| r.keys().next_back()).max().map_or(0, |c| c + 1);
    for col in 0..cols {
        let Some(piv) = (0..rows.len()).find(|&r| !used[r] && rows[r].contains_key(&col)) else {
            continue;
        };
        used[piv] = true;
        rank += 1;
        let prow = rows[piv].clone();
        let inv = prow[&col].recip().unwrap();
        for r in 0..rows.len() {
            if used[r] || !rows[r].contains_key(&col) {
                continue;
            }
            let f = rows[r][&col].mul(&inv);
            for (&c, v) in &prow {
                let cur = rows[r].remove(&c).unwrap_or_else(|| QuadraticSurd::from_integer(0));
                let next = cur.sub(&f.mul(v));
                if !next.is_zero() {
                    rows[r].insert(c, next);
                }
            }
        }
    }
    rank
}

pub fn oracle_dims(a: &Slope, b: &Slope, radius: i64) -> Vec<BigInt> {
    let (d0, d1, count) = assemble(a, b, radius);
    assert!(compose_is_zero(&d1, &d0), "d o d != 0");
    let r0 = sparse_rank(d0);
    let r1 = sparse_rank(d1);
    let dims = [count - r0, 2 * count - r0 - r1, count - r1];
    dims.iter().map(|&d| BigInt::from(d)).collect()
}


/// Exact `min |m + alpha n|` over `0 < |m| + |n| <= N`. Each mode is
/// represented by the member of `{(m, n), (-m, -n)}` with `n > 0`, or `n = 0`
/// and `m > 0`; ties broken on `(n, m)`.
pub fn brute_gap(s: &Slope, radius: i64) -> (QuadraticSurd, (i64, i64)) {
    let mut best: Option<(QuadraticSurd, (i64, i64))> = None;
    for (m, n) in ball(radius) {
        if n < 0 || (n == 0 && m <= 0) {
            continue;
        }
        let d = surd_divisor(s, m, n).abs();
        let better = match &best {
            None => true,
            Some((b, (bm, bn))) => match d.cmp_exact(b) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => (n, m) < (*bn, *bm),
                std::cmp::Ordering::Greater => false,
            },
        };
        if better {
            best = Some((d, (m, n)));
        }
    }
    best.expect("the ball has nonzero modes")
}

/// Distance from `alpha` to the nearest fraction with denominator `den`.
pub fn nearest_with_denominator(alpha: &QuadraticSurd, den: i64) -> QuadraticSurd {
    let scaled = alpha.scale_int(&BigInt::from(den));
    let fl = scaled.floor();
    let lo = scaled.add_rational(&-BigRational::from_integer(fl.clone())).abs();
    let hi = scaled.add_rational(&-BigRational::from_integer(fl + 1)).abs();
    let best = if lo.cmp_exact(&hi) == std::cmp::Ordering::Greater { hi } else { lo };
    best.scale(&BigRational::new(1.into(), den.into()))
}
