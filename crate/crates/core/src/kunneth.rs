//! Dimension checks of the Künneth formula for products of Kronecker
//! foliations, truncated to a product of per-factor mode balls.
//!
//! For `k` factors a mode `(m_1, n_1, ..., m_k, n_k)` contributes the Koszul
//! complex of the scalars `2 pi i delta_i`, `delta_i = m_i + alpha_i n_i`,
//! with differential `d(e_S) = sum_{i not in S} (-1)^{|{s in S : s < i}|} c_i e_{S+i}`
//! (the sign rule `eps(w) = (-1)^deg w` of the product differential). Its
//! cohomology is `(C(k,0), ..., C(k,k))` when all `delta_i` vanish and zero
//! otherwise; it is computed here by exact rank, not assumed.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::Real;
use crate::cohomology::{resonant_count, truncated_cohomology, CohomologyReport, HausdorffFlag};
use crate::diophantine::Slope;
use crate::error::{Error, Result};
use crate::report::gap_json;

/// Largest supported number of factors.
pub const MAX_FACTORS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFoliation {
    factors: Vec<Slope>,
}

impl ProductFoliation {
    pub fn new(factors: Vec<Slope>) -> Result<Self> {
        if factors.is_empty() || factors.len() > MAX_FACTORS {
            return Err(Error::InvalidInput(format!(
                "a product needs 1 to {MAX_FACTORS} factors, got {}",
                factors.len()
            )));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[Slope] {
        &self.factors
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }
}

/// Subsets of `0..k` of size `j`, as bitmasks in increasing order.
fn subsets(k: usize, j: usize) -> Vec<u32> {
    (0u32..1 << k).filter(|s| s.count_ones() as usize == j).collect()
}

/// Matrix of `d: Lambda^j -> Lambda^{j+1}` for scalars `c`.
pub fn koszul_matrix(c: &[BigRational], j: usize) -> Vec<Vec<BigRational>> {
    let k = c.len();
    let rows = subsets(k, j + 1);
    let cols = subsets(k, j);
    let mut mat = vec![vec![BigRational::zero(); cols.len()]; rows.len()];
    for (ci, &s) in cols.iter().enumerate() {
        for (i, ci_val) in c.iter().enumerate() {
            if s & (1 << i) != 0 {
                continue;
            }
            let below = (s & ((1 << i) - 1)).count_ones();
            let sign = if below % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            let target = s | (1 << i);
            let ri = rows.iter().position(|&r| r == target).expect("subset exists");
            mat[ri][ci] = sign * ci_val;
        }
    }
    mat
}

/// Rank over Q by Gaussian elimination.
pub fn rank(mut mat: Vec<Vec<BigRational>>) -> usize {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, piv);
        let p = mat[r][c].clone();
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = &mat[i][c] / &p;
                for cc in c..cols {
                    let sub = &f * &mat[r][cc];
                    mat[i][cc] -= sub;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn binomial(k: usize, j: usize) -> u64 {
    (0..j).fold(1u64, |acc, i| acc * (k - i) as u64 / (i + 1) as u64)
}

/// Koszul cohomology dims `(H^0, ..., H^k)` for scalars given by their zero
/// pattern. A nonzero divisor enters as 1: rescaling a basis vector makes
/// every nonzero choice isomorphic, so the ranks are exact.
fn koszul_dims(zero: &[bool]) -> Vec<u64> {
    let k = zero.len();
    let c: Vec<BigRational> = zero
        .iter()
        .map(|&z| if z { BigRational::zero() } else { BigRational::one() })
        .collect();
    let ranks: Vec<usize> = (0..k).map(|j| rank(koszul_matrix(&c, j))).collect();
    (0..=k)
        .map(|j| {
            let into = if j == 0 { 0 } else { ranks[j - 1] };
            let out = if j == k { 0 } else { ranks[j] };
            binomial(k, j) - (into + out) as u64
        })
        .collect()
}

/// Cohomology of one mode's Koszul complex.
pub fn mode_cohomology(divisors: &[Real]) -> Result<Vec<u64>> {
    if divisors.is_empty() || divisors.len() > MAX_FACTORS {
        return Err(Error::InvalidInput(format!(
            "mode cohomology needs 1 to {MAX_FACTORS} divisors"
        )));
    }
    let zero = divisors.iter().map(Real::is_zero).collect::<Result<Vec<_>>>()?;
    Ok(koszul_dims(&zero))
}

/// Modes in the ball `|m| + |n| <= N`.
pub fn ball_size(radius: u64) -> BigInt {
    let n = BigInt::from(radius);
    BigInt::from(2) * &n * &n + BigInt::from(2) * n + 1
}

/// Sum of mode cohomology over the product of balls `|m_i| + |n_i| <= N`.
/// Modes are grouped by zero pattern: the count of product modes with a
/// given pattern is the product of per-factor resonant / non-resonant counts.
pub fn truncated_betti(product: &ProductFoliation, radius: u64) -> Result<Vec<BigInt>> {
    if radius == 0 {
        return Err(Error::InvalidInput("radius must be at least 1".into()));
    }
    let k = product.k();
    let total = ball_size(radius);
    let resonant: Vec<BigInt> = product
        .factors
        .iter()
        .map(|s| resonant_count(s, radius).map(BigInt::from))
        .collect::<Result<_>>()?;
    let mut memo: HashMap<u32, Vec<u64>> = HashMap::new();
    let mut dims = vec![BigInt::zero(); k + 1];
    for pattern in 0u32..1 << k {
        let zero: Vec<bool> = (0..k).map(|i| pattern & (1 << i) != 0).collect();
        let count = zero.iter().enumerate().fold(BigInt::one(), |acc, (i, &z)| {
            acc * if z { resonant[i].clone() } else { &total - &resonant[i] }
        });
        if count.is_zero() {
            continue;
        }
        let h = memo.entry(pattern).or_insert_with(|| koszul_dims(&zero));
        for (d, hj) in dims.iter_mut().zip(h.iter()) {
            *d += &count * BigInt::from(*hj);
        }
    }
    Ok(dims)
}

/// Graded tensor product of per-factor dimension lists.
pub fn tensor_dims(factors: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for f in factors {
        let mut next = vec![BigInt::zero(); acc.len() + f.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedComplexReport {
    pub radius: u64,
    pub dims: Vec<BigInt>,
    pub tensor_prediction: Vec<BigInt>,
    pub matches: bool,
    pub factors: Vec<CohomologyReport>,
    pub warnings: Vec<String>,
}

impl TruncatedComplexReport {
    pub fn to_json(&self, digits: u32) -> Value {
        let ints = |v: &[BigInt]| v.iter().map(crate::fourier::integer_json).collect::<Vec<_>>();
        json!({
            "radius": self.radius,
            "dims": ints(&self.dims),
            "tensor": ints(&self.tensor_prediction),
            "match": self.matches,
            "warnings": self.warnings,
            "factors": self.factors.iter().map(|f| json!({
                "slope": f.slope.to_string(),
                "dims": [f.h0, f.h1],
                "gap": gap_json(&f.gap, digits),
                "hausdorff_flag": f.hausdorff_flag.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Compares the truncated product dims with the tensor product of the
/// factors' truncated dims. The match is a dimension count only; factors
/// whose gap proxy decays superpolynomially are flagged because there the
/// topological hypotheses of the Künneth theorem are in doubt.
pub fn kunneth_check(product: &ProductFoliation, radius: u64) -> Result<TruncatedComplexReport> {
    if product.k() < 2 {
        return Err(Error::InvalidInput("a Künneth check needs at least two factors".into()));
    }
    let dims = truncated_betti(product, radius)?;
    let factors = product
        .factors
        .iter()
        .map(|s| truncated_cohomology(s, radius))
        .collect::<Result<Vec<_>>>()?;
    let per_factor: Vec<Vec<BigInt>> = factors
        .iter()
        .map(|r| vec![BigInt::from(r.h0), BigInt::from(r.h1)])
        .collect();
    let tensor_prediction = tensor_dims(&per_factor);
    let warnings = factors
        .iter()
        .enumerate()
        .filter(|(_, r)| r.hausdorff_flag == HausdorffFlag::ProxyNonHausdorff)
        .map(|(i, r)| {
            format!(
                "factor {} ({}): superpolynomial gap decay; its cohomology is likely non-Hausdorff and the dimension match does not certify the isomorphism",
                i + 1,
                r.slope
            )
        })
        .collect();
    Ok(TruncatedComplexReport {
        radius,
        matches: dims == tensor_prediction,
        dims,
        tensor_prediction,
        factors,
        warnings,
    })
}
