use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use sdl_core::arith::elementary::pi;
use sdl_core::arith::RationalInterval;
use sdl_core::cohomology::{obstruction, solve_primitive, truncated_cohomology, HausdorffFlag};
use sdl_core::diophantine::{gap, Slope};
use sdl_core::fourier::{complex, real, Coefficient, ComplexRational, FourierSeries2D, Mode};
use sdl_core::Error;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn f64_of(q: &BigRational) -> f64 {
    q.to_f64().unwrap()
}

#[test]
fn obstruction_examples() {
    let one = FourierSeries2D::from_plain([(Mode::new(0, 0), real(q(1, 1)))]);
    assert_eq!(obstruction(&one), Coefficient::plain(real(q(1, 1))));
    let e10 = FourierSeries2D::from_plain([(Mode::new(1, 0), real(q(1, 1)))]);
    assert!(obstruction(&e10).is_zero());
    let mixed = FourierSeries2D::from_plain([
        (Mode::new(0, 0), complex(q(2, 1), q(3, 1))),
        (Mode::new(5, 7), real(q(9, 1))),
    ]);
    assert_eq!(obstruction(&mixed), Coefficient::plain(complex(q(2, 1), q(3, 1))));
    assert_eq!(
        solve_primitive(&one, &Slope::golden()),
        Err(Error::Obstructed { value: "1".into() })
    );
}

#[test]
fn unit_and_liouville_primitives() {
    let e10 = FourierSeries2D::from_plain([(Mode::new(1, 0), real(q(1, 1)))]);
    let sol = solve_primitive(&e10, &Slope::golden()).unwrap();
    assert_eq!(sol.g.get(&Mode::new(1, 0)), Some(&Coefficient::term(-1, 0, real(q(1, 1)))));
    let m = f64_of(&sol.g.modulus_enclosure(&Mode::new(1, 0), 100).unwrap().midpoint());
    assert!((m - 0.159_154_943_091_895_35).abs() < 1e-12, "{m}");

    let mode = Mode::new(-11, 100);
    let f = FourierSeries2D::from_plain([(mode.clone(), real(q(1, 1)))]);
    let sol = solve_primitive(&f, &Slope::liouville(4).unwrap()).unwrap();
    let m = f64_of(&sol.g.modulus_enclosure(&mode, 100).unwrap().midpoint());
    assert!((m - 1591.549_430_919).abs() < 1e-8, "{m}");
    let d = sol.min_divisor_used.unwrap();
    assert!(d.lo() > &q(1, 10_000) && d.hi() < &q(10_001, 100_000_000));
}

#[test]
fn truncated_examples() {
    let r = truncated_cohomology(&Slope::golden(), 50).unwrap();
    assert_eq!((r.h0, r.h1, r.hausdorff_flag), (1, 1, HausdorffFlag::ProxyHausdorff));

    let r = truncated_cohomology(&Slope::rational(0, 1).unwrap(), 10).unwrap();
    assert_eq!((r.h0, r.h1, r.hausdorff_flag), (21, 21, HausdorffFlag::Resonant));

    let r = truncated_cohomology(&Slope::liouville(4).unwrap(), 111).unwrap();
    assert_eq!((r.h0, r.h1, r.hausdorff_flag), (1, 1, HausdorffFlag::ProxyNonHausdorff));
    assert!(r.gap.enclosure().hi() <= &q(1001, 10_000_000));
    assert_eq!(r.gap.argmin, (-11, 100));
    assert_eq!(r.to_json(12)["hausdorff_flag"], "proxy-non-Hausdorff");
    assert_eq!(truncated_cohomology(&Slope::golden(), 0).unwrap_err().name(), "InvalidInput");
}

// Independent count of resonant modes: every lattice point of the ball.
fn brute_resonant(num: i64, den: i64, radius: i64) -> u64 {
    let mut count = 0;
    for m in -radius..=radius {
        let rest = radius - m.abs();
        for n in -rest..=rest {
            if m * den + num * n == 0 {
                count += 1;
            }
        }
    }
    count
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

fn coefficient() -> impl Strategy<Value = ComplexRational> {
    (small_rational(), small_rational()).prop_map(|(a, b)| complex(a, b))
}

fn mean_free_series(h: i64) -> impl Strategy<Value = FourierSeries2D> {
    prop::collection::vec((-h..=h, -h..=h, coefficient()), 0..7).prop_map(|items| {
        FourierSeries2D::from_plain(
            items
                .into_iter()
                .filter(|(m, n, _)| (*m, *n) != (0, 0))
                .map(|(m, n, c)| (Mode::new(m, n), c)),
        )
    })
}

fn irrational_slope() -> impl Strategy<Value = Slope> {
    prop_oneof![
        Just(Slope::golden()),
        Just(Slope::sqrt2()),
        (3u32..=6).prop_map(|c| Slope::liouville(c).unwrap()),
        (-3i64..=3, 1i64..=3, 1i64..=4, prop_oneof![Just(2i64), Just(3), Just(5), Just(7)])
            .prop_map(|(a, b, c, d)| Slope::quadratic(a, b, c, d).unwrap()),
    ]
}

fn resonant_on(f: &FourierSeries2D, s: &Slope) -> bool {
    f.support().any(|m| s.divisor(&m.m, &m.n).is_zero().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_is_exact_rational(
        f in mean_free_series(8),
        (a, b) in (-7i64..=7, 1i64..=7),
    ) {
        let s = Slope::rational(a, b).unwrap();
        prop_assume!(!resonant_on(&f, &s));
        let sol = solve_primitive(&f, &s).unwrap();
        prop_assert_eq!(sol.g.support().collect::<Vec<_>>(), f.support().collect::<Vec<_>>());
        prop_assert_eq!(sol.g.apply_x(&s).unwrap(), f);
    }

    #[test]
    fn round_trip_is_exact_irrational(f in mean_free_series(8), s in irrational_slope()) {
        let sol = solve_primitive(&f, &s).unwrap();
        prop_assert_eq!(sol.g.apply_x(&s).unwrap(), f);
    }

    #[test]
    fn resonance_is_refused(
        (num, den) in (-5i64..=5, 1i64..=5),
        k in 1i64..=3,
        extra in mean_free_series(4),
    ) {
        let s = Slope::rational(num, den).unwrap();
        let bad = Mode::new(-num * k, den * k);
        let f = extra.add(&FourierSeries2D::from_plain([(bad, real(q(1, 1)))])).unwrap();
        prop_assume!(obstruction(&f).is_zero());
        let first = f.support().find(|m| s.divisor(&m.m, &m.n).is_zero().unwrap()).unwrap().clone();
        prop_assert_eq!(
            solve_primitive(&f, &s),
            Err(Error::Resonant { m: first.m.to_string(), n: first.n.to_string() })
        );
    }

    #[test]
    fn amplification_is_bounded_by_the_gap(f in mean_free_series(6), s in irrational_slope()) {
        prop_assume!(!f.is_empty());
        let radius = f.support().map(|m| m.height().to_u64().unwrap()).max().unwrap();
        let g = gap(&s, radius).unwrap();
        let amp = solve_primitive(&f, &s).unwrap().amplification.unwrap();
        // 1 / (2 pi gap), enclosed from above
        let two_pi_gap_lo = pi(128).lo() * BigRational::from_integer(2.into()) * g.enclosure().lo();
        let bound_hi = two_pi_gap_lo.recip();
        prop_assert!(amp.lo() <= &bound_hi, "amplification {} exceeds {}", amp, bound_hi);
    }

    #[test]
    fn argmin_indicator_attains_the_bound(radius in 1u64..60, s in irrational_slope()) {
        let g = gap(&s, radius).unwrap();
        let mode = Mode::new(g.argmin.0, g.argmin.1);
        let f = FourierSeries2D::from_plain([(mode, real(q(1, 1)))]);
        let amp = solve_primitive(&f, &s).unwrap().amplification.unwrap();
        let two = BigRational::from_integer(2.into());
        let pi_iv = pi(128);
        let gap_iv = g.enclosure();
        let bound = RationalInterval::new(
            (pi_iv.hi() * &two * gap_iv.hi()).recip(),
            (pi_iv.lo() * &two * gap_iv.lo()).recip(),
        );
        prop_assert!(amp.intersects(&bound), "{} vs {}", amp, bound);
        // and the enclosures are tight
        let rel = f64_of(&(amp.width() / amp.midpoint()));
        prop_assert!(rel < 1e-15);
    }

    #[test]
    fn dims_dichotomy(radius in 1u64..80, s in irrational_slope(), (num, den) in (-6i64..=6, 1i64..=6)) {
        let r = truncated_cohomology(&s, radius).unwrap();
        prop_assert_eq!((r.h0, r.h1), (1, 1));
        prop_assert_ne!(r.hausdorff_flag, HausdorffFlag::Resonant);
        let rat = Slope::rational(num, den).unwrap();
        let r = truncated_cohomology(&rat, radius).unwrap();
        let want = brute_resonant(num, den, radius as i64);
        prop_assert_eq!((r.h0, r.h1), (want, want));
        prop_assert_eq!(r.hausdorff_flag, HausdorffFlag::Resonant);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn amplification_grows_with_the_cap(f in mean_free_series(120)) {
        prop_assume!(!f.is_empty());
        let mut prev: Option<BigRational> = None;
        for cap in 2..=5 {
            let amp = solve_primitive(&f, &Slope::liouville(cap).unwrap()).unwrap().amplification.unwrap();
            if let Some(p) = &prev {
                prop_assert!(amp.lo() >= p, "cap {}: {} < {}", cap, amp.lo(), p);
            }
            prev = Some(amp.lo().clone());
        }
    }
}

#[test]
fn amplification_grows_with_the_cap_on_witness_modes() {
    // modes whose divisors shrink sharply once the cap resolves them
    let f = FourierSeries2D::from_plain([
        (Mode::new(-11, 100), real(q(1, 1))),
        (Mode::new(-110_001, 1_000_000), real(q(1, 1))),
        (Mode::new(3, 4), complex(q(0, 1), q(-2, 1))),
    ]);
    let mut prev = BigRational::zero();
    // below cap 3 the enclosure of -110001 + 10^6 alpha still touches zero
    for cap in 3..=6 {
        let amp = solve_primitive(&f, &Slope::liouville(cap).unwrap()).unwrap().amplification.unwrap();
        assert!(amp.lo() >= &prev, "cap {cap}");
        prev = amp.lo().clone();
    }
    // max |g| = 1/(2 pi 1e-18) over max |f| = 2
    let expected = 1.0 / (4.0 * std::f64::consts::PI * 1e-18);
    assert!((f64_of(&prev) / expected - 1.0).abs() < 1e-9);
    assert!(prev > BigRational::from_integer(BigInt::from(10).pow(16)));
}
