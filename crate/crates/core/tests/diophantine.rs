use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use sdl_core::arith::{QuadraticSurd, RationalInterval, Real};
use sdl_core::diophantine::{
    certify_family_pair, cf_expand, convergents, estimate_exponent, find_family_pairs,
    find_witness_definition, gap, gap_via_convergents, Slope, WitnessSearch,
};
use sdl_core::Error;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow10(e: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), e)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}

fn gap_f64(s: &Slope, n: u64) -> (f64, (i64, i64)) {
    let g = gap(s, n).unwrap();
    (to_f64(&g.enclosure().midpoint()), g.argmin)
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs()
}

#[test]
fn continued_fractions() {
    assert_eq!(cf_expand(&Slope::rational(22, 7).unwrap(), 10).unwrap(), ints(&[3, 7]));
    assert_eq!(cf_expand(&Slope::golden(), 5).unwrap(), ints(&[1, 1, 1, 1, 1]));
    assert_eq!(cf_expand(&Slope::rational(1, 1).unwrap(), 10).unwrap(), ints(&[1]));
    assert_eq!(cf_expand(&Slope::sqrt2(), 4).unwrap(), ints(&[1, 2, 2, 2]));
    assert!(matches!(cf_expand(&Slope::golden(), 0), Err(Error::InvalidInput(_))));
}

#[test]
fn decimal_enclosure_runs_out_of_precision() {
    let s: Slope = "decimal:0.1100010000:r=1e-12".parse().unwrap();
    assert!(matches!(cf_expand(&s, 40), Err(Error::PrecisionExhausted(_))));
    // the first quotients are still certified
    assert_eq!(cf_expand(&s, 3).unwrap(), ints(&[0, 9, 11]));
}

#[test]
fn convergent_examples() {
    let c = convergents(&Slope::golden(), 5).unwrap();
    let got: Vec<(i64, i64)> = c.iter().map(|c| (c.m.to_i64().unwrap(), c.n.to_i64().unwrap())).collect();
    assert_eq!(got, vec![(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]);

    let c = convergents(&Slope::rational(3, 2).unwrap(), 5).unwrap();
    let got: Vec<(i64, i64)> = c.iter().map(|c| (c.m.to_i64().unwrap(), c.n.to_i64().unwrap())).collect();
    assert_eq!(got, vec![(1, 1), (3, 2)]);
    assert_eq!(c[1].error, RationalInterval::zero());

    let c = convergents(&Slope::liouville(4).unwrap(), 1).unwrap();
    assert_eq!((c[0].m.clone(), c[0].n.clone()), (BigInt::zero(), BigInt::one()));
    assert!(c[0].error.contains(&q(110001, 1000000)) || to_f64(c[0].error.lo()) > 0.110000);
    assert!(close(to_f64(&c[0].error.midpoint()), 0.110001, 1e-9));
}

#[test]
fn liouville_cf_reaches_deep_levels() {
    // quotient digit counts from an exact-fraction oracle at truncation cap 6
    let want_lengths = [1, 1, 2, 2, 1, 2, 1, 12, 1, 1, 2, 1, 2, 2, 1, 72];
    let cf = cf_expand(&Slope::liouville(6).unwrap(), 16).unwrap();
    let got: Vec<usize> = cf.iter().map(|a| a.to_string().len()).collect();
    assert_eq!(got, want_lengths);
}

#[test]
fn definition_witnesses() {
    // |alpha - 1/9| = 0.00111... < 1/81 already at the first convergent
    let w = find_witness_definition(&Slope::liouville(5).unwrap(), 2, 40).unwrap();
    let WitnessSearch::Found(w) = w else { panic!("expected a witness") };
    assert_eq!((w.m.clone(), w.n.clone(), w.level), (BigInt::from(1), BigInt::from(9), 1));
    assert!(w.holds());

    // p = 4 first succeeds at the truncation 0.110001000000000000000001
    let w = find_witness_definition(&Slope::liouville(5).unwrap(), 4, 40).unwrap();
    let WitnessSearch::Found(w) = w else { panic!("expected a witness") };
    assert_eq!(w.n, pow10(24));
    assert_eq!(w.level, 14);

    // 3/2 is within 1/8 of the golden ratio, but no convergent beats 1/n^4
    let w = find_witness_definition(&Slope::golden(), 3, 40).unwrap();
    assert!(matches!(w, WitnessSearch::Found(ref w) if w.n == BigInt::from(2)));
    assert_eq!(
        find_witness_definition(&Slope::golden(), 4, 40).unwrap(),
        WitnessSearch::NotFound { depth_searched: 40 }
    );
    assert_eq!(
        find_witness_definition(&Slope::rational(5, 3).unwrap(), 1, 40),
        Err(Error::IrrationalRequired)
    );
}

#[test]
fn family_pairs_for_liouville() {
    let s = Slope::liouville(5).unwrap();
    let pairs = find_family_pairs(&s, 4, 40).unwrap();
    assert_eq!(pairs.len(), 3);
    assert_eq!((pairs[0].m.clone(), pairs[0].n.clone()), (BigInt::from(-1), BigInt::from(9)));
    // the partial sums through 10^-24 and 10^-120
    let l4 = BigRational::from_integer(pow10(24)) * q(110001, 1000000) + BigRational::one();
    assert_eq!(pairs[1].n, pow10(24));
    assert_eq!(BigRational::from_integer(-pairs[1].m.clone()), l4);
    assert_eq!(pairs[1].level, 14);
    assert_eq!(pairs[2].n, pow10(120));
    assert_eq!(pairs[2].level, 30);
    for w in &pairs {
        assert!(w.holds());
        assert!(w.n >= BigInt::from(w.p));
    }
    // 11/100 is a convergent but misses the family bound at p = 2
    assert_eq!(certify_family_pair(&s, 2, &(-11).into(), &100.into(), 2).unwrap(), None);
    // the same pairs need depth beyond level 30 for p = 4
    assert_eq!(find_family_pairs(&s, 4, 20), Err(Error::NotFound { p: 4, depth: 20 }));
}

#[test]
fn family_pairs_fail_for_badly_approximable() {
    assert_eq!(find_family_pairs(&Slope::golden(), 2, 40), Err(Error::NotFound { p: 2, depth: 40 }));
    assert_eq!(find_family_pairs(&Slope::rational(1, 2).unwrap(), 2, 40), Err(Error::IrrationalRequired));
}

#[test]
fn divisor_examples() {
    assert!(Slope::rational(1, 2).unwrap().divisor_i64(-1, 2).is_zero().unwrap());
    let d = Slope::golden().divisor_i64(-8, 5).enclose_relative(64);
    assert!(close(to_f64(&d.midpoint()), 0.0901699437, 1e-9));
    let d = Slope::liouville(4).unwrap().divisor_i64(-11, 100).enclose(0);
    let lo = q(1, 10000);
    let hi = &lo + BigRational::new(2.into(), pow10(20));
    assert!(RationalInterval::new(lo, hi).encloses(&d));
}

#[test]
fn golden_gaps_match_brute_force_oracle() {
    let g = Slope::golden();
    for (n, value, argmin) in [
        (10, 0.14589803375, (-5, 3)),
        (12, 0.14589803375, (-5, 3)),
        (25, 0.0557280900008, (-13, 8)),
        (50, 0.0344418537486, (-21, 13)),
        (100, 0.0131556174964, (-55, 34)),
        (1000, 0.00118624128964, (-610, 377)),
        (10000, 0.000173070271712, (-4181, 2584)),
    ] {
        let (v, a) = gap_f64(&g, n);
        assert!(close(v, value, 1e-10), "N={n}: {v}");
        assert_eq!(a, argmin, "N={n}");
    }
    let (v, a) = gap_f64(&Slope::sqrt2(), 10);
    assert!(close(v, 0.171572875254, 1e-10));
    assert_eq!(a, (-3, 2));
}

#[test]
fn gap_examples_and_errors() {
    let g = gap(&Slope::rational(0, 1).unwrap(), 1).unwrap();
    assert!(g.is_zero().unwrap());
    assert_eq!(g.argmin, (0, 1));
    assert!(matches!(gap(&Slope::golden(), 0), Err(Error::InvalidInput(_))));
    let l = Slope::liouville(6).unwrap();
    for (n, value, argmin) in [
        (27, 0.009991, (-1, 9)),
        (55, 0.009991, (-1, 9)),
        (100, 0.009991, (-1, 9)),
        (111, 1e-4, (-11, 100)),
    ] {
        let (v, a) = gap_f64(&l, n);
        assert!(close(v, value, 1e-9), "N={n}: {v}");
        assert_eq!(a, argmin);
    }
}

#[test]
fn scan_agrees_with_convergents() {
    for s in [Slope::golden(), Slope::sqrt2(), Slope::liouville(5).unwrap()] {
        for n in [100, 1000, 10000] {
            let a = gap(&s, n).unwrap();
            let b = gap_via_convergents(&s, n, 60).unwrap();
            assert_eq!(a.argmin, b.argmin, "{s} N={n}");
            assert_eq!(a.gap, b.gap);
        }
    }
}

#[test]
fn exponent_fits() {
    let fit = estimate_exponent(&Slope::golden(), &[10, 100, 1000]).unwrap();
    assert!((fit.tau - 1.0).abs() <= 0.1, "tau = {}", fit.tau);
    assert!(!fit.superpolynomial);
    assert_eq!(fit.residuals.len(), 3);

    let fit = estimate_exponent(&Slope::liouville(5).unwrap(), &[100, 1_110_001]).unwrap();
    assert!(fit.superpolynomial);

    assert_eq!(estimate_exponent(&Slope::rational(1, 3).unwrap(), &[10]), Err(Error::ResonantSlope));
    assert!(matches!(estimate_exponent(&Slope::golden(), &[100, 10]), Err(Error::InvalidInput(_))));
    assert!(matches!(estimate_exponent(&Slope::golden(), &[100]), Err(Error::InvalidInput(_))));
}

#[test]
fn slope_literals_round_trip() {
    for lit in [
        "rational:22/7",
        "quadratic:(1+1*sqrt5)/2",
        "quadratic:(0-3*sqrt7)/4",
        "liouville10:cap=5",
    ] {
        let s: Slope = lit.parse().unwrap();
        assert_eq!(s.to_string(), lit);
    }
    let d: Slope = "decimal:0.110001:r=1e-12".parse().unwrap();
    assert_eq!(d.to_string().parse::<Slope>().unwrap(), d);
    assert!(matches!("quadratic:(1+1*sqrt4)/2".parse::<Slope>(), Err(Error::InvalidSlope(_))));
    assert!(matches!("rational:1/0".parse::<Slope>(), Err(Error::InvalidSlope(_))));
    assert!(matches!("liouville10:cap=0".parse::<Slope>(), Err(Error::InvalidSlope(_))));
}

// Independent oracles: every fraction / lattice mode is enumerated.

fn surd(s: &Slope) -> QuadraticSurd {
    match s.value() {
        Real::Exact(x) => x,
        Real::Enclosed(_) => panic!("exact slope expected"),
    }
}

/// Closest fraction with denominator exactly `den`, by exact comparison of
/// the two nearest numerators.
fn best_numerator(alpha: &QuadraticSurd, den: i64) -> (BigInt, QuadraticSurd) {
    let fl = alpha.scale_int(&den.into()).floor();
    let err = |num: &BigInt| alpha.add_rational(&-BigRational::new(num.clone(), den.into())).abs();
    let (a, b) = (fl.clone(), fl + 1);
    let (ea, eb) = (err(&a), err(&b));
    if eb.cmp_exact(&ea) == Ordering::Less {
        (b, eb)
    } else {
        (a, ea)
    }
}

fn brute_gap(s: &Slope, radius: i64) -> (Real, (i64, i64)) {
    let mut best: Option<(Real, (i64, i64))> = None;
    for n in 0..=radius {
        for m in -radius..=radius {
            if m.abs() + n > radius || (n == 0 && m <= 0) {
                continue;
            }
            let d = s.divisor_i64(m, n).abs();
            let better = match &best {
                None => true,
                Some((bd, (bm, bn))) => match d.compare(bd).unwrap() {
                    Ordering::Less => true,
                    Ordering::Equal => (n, m) < (*bn, *bm),
                    Ordering::Greater => false,
                },
            };
            if better {
                best = Some((d, (m, n)));
            }
        }
    }
    best.unwrap()
}

fn quadratic_slope() -> impl Strategy<Value = Slope> {
    (-20i64..20, 1i64..6, 1i64..8, prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 11, 13]))
        .prop_map(|(a, b, c, d)| Slope::quadratic(a, b, c, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_cf_reconstructs_value(num in -500i64..500, den in 1i64..500) {
        let s = Slope::rational(num, den).unwrap();
        let c = convergents(&s, 64).unwrap();
        let last = c.last().unwrap();
        prop_assert_eq!(BigRational::new(last.m.clone(), last.n.clone()), q(num, den));
    }

    #[test]
    fn convergents_follow_recurrence_and_error_bound(s in quadratic_slope()) {
        let cf = cf_expand(&s, 12).unwrap();
        let c = convergents(&s, 12).unwrap();
        let alpha = surd(&s);
        for k in 0..c.len() {
            let (pm, pn) = if k >= 1 { (c[k - 1].m.clone(), c[k - 1].n.clone()) } else { (BigInt::one(), BigInt::zero()) };
            let (ppm, ppn) = if k >= 2 { (c[k - 2].m.clone(), c[k - 2].n.clone()) } else if k == 1 { (BigInt::one(), BigInt::zero()) } else { (BigInt::zero(), BigInt::one()) };
            prop_assert_eq!(&c[k].m, &(&cf[k] * &pm + &ppm));
            prop_assert_eq!(&c[k].n, &(&cf[k] * &pn + &ppn));
            if k + 1 < c.len() {
                // |alpha - m_k/n_k| < 1/(n_k n_{k+1}), exactly
                let err = alpha.add_rational(&-BigRational::new(c[k].m.clone(), c[k].n.clone())).abs();
                let bound = BigRational::new(BigInt::one(), &c[k].n * &c[k + 1].n);
                prop_assert_eq!(err.add_rational(&-bound).signum(), Ordering::Less);
            }
            prop_assert!(c[k].error.lo() >= &BigRational::zero());
        }
        // alternation about alpha
        for k in 1..c.len() {
            let side = |i: usize| alpha.add_rational(&-BigRational::new(c[i].m.clone(), c[i].n.clone())).signum();
            prop_assert_ne!(side(k), side(k - 1));
        }
    }

    #[test]
    fn convergents_are_best_approximations(s in quadratic_slope()) {
        let alpha = surd(&s);
        // the zeroth convergent floor(alpha) loses to its neighbour when frac(alpha) > 1/2
        for c in convergents(&s, 20).unwrap().into_iter().skip(1) {
            if c.n > BigInt::from(100) {
                break;
            }
            let err = alpha.add_rational(&-BigRational::new(c.m.clone(), c.n.clone())).abs();
            let n = c.n.to_i64().unwrap();
            for den in 1..=n {
                let (_, e) = best_numerator(&alpha, den);
                prop_assert_ne!(e.cmp_exact(&err), Ordering::Less, "den {} beats {}/{}", den, c.m, c.n);
            }
        }
    }

    #[test]
    fn gap_matches_full_lattice_scan(s in quadratic_slope(), radius in 1i64..30) {
        let g = gap(&s, radius as u64).unwrap();
        let (d, argmin) = brute_gap(&s, radius);
        prop_assert_eq!(g.argmin, argmin);
        prop_assert_eq!(g.gap, d);
    }

    #[test]
    fn gap_is_monotone(s in quadratic_slope(), a in 1u64..200, b in 1u64..200) {
        let (n1, n2) = (a.min(b), a.max(b));
        let g1 = gap(&s, n1).unwrap().enclosure();
        let g2 = gap(&s, n2).unwrap().enclosure();
        prop_assert!(g1.hi() >= g2.lo());
        prop_assert!(gap(&s, n1).unwrap().gap.compare(&gap(&s, n2).unwrap().gap).unwrap() != Ordering::Less);
    }

    #[test]
    fn rational_gap_vanishes_exactly_past_resonance(num in -20i64..20, den in 1i64..20) {
        let s = Slope::rational(num, den).unwrap();
        let Slope::Rational { numerator, denominator } = &s else { unreachable!() };
        let first = (numerator.abs() + denominator).to_u64().unwrap();
        prop_assert!(gap(&s, first).unwrap().is_zero().unwrap());
        if first > 1 {
            prop_assert!(!gap(&s, first - 1).unwrap().is_zero().unwrap());
        }
    }

    #[test]
    fn witnesses_survive_deeper_truncation(cap in 3u32..5, p in 2u32..4) {
        let s = Slope::liouville(cap).unwrap();
        let deeper = Slope::liouville(cap + 2).unwrap();
        if let WitnessSearch::Found(w) = find_witness_definition(&s, p, 40).unwrap() {
            prop_assert!(w.reverify(&deeper).unwrap());
        }
        if let Ok(pairs) = find_family_pairs(&s, p, 40) {
            for w in pairs {
                prop_assert!(w.reverify(&deeper).unwrap());
            }
        }
    }
}
