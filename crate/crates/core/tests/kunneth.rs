mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use sdl_core::arith::Real;
use sdl_core::cohomology::truncated_cohomology;
use sdl_core::diophantine::Slope;
use common::{assemble, compose_is_zero, oracle_dims};
use sdl_core::kunneth::{kunneth_check, mode_cohomology, truncated_betti, ProductFoliation};

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn product(factors: &[Slope]) -> ProductFoliation {
    ProductFoliation::new(factors.to_vec()).unwrap()
}

#[test]
fn mode_cohomology_examples() {
    let z = Real::integer(0);
    let one = Real::integer(1);
    assert_eq!(mode_cohomology(&[z.clone(), z.clone()]).unwrap(), vec![1, 2, 1]);
    assert_eq!(mode_cohomology(&[z.clone(), one.clone()]).unwrap(), vec![0, 0, 0]);
    assert_eq!(mode_cohomology(std::slice::from_ref(&z)).unwrap(), vec![1, 1]);
    assert_eq!(mode_cohomology(&[one]).unwrap(), vec![0, 0]);
    assert_eq!(mode_cohomology(&[z.clone(), z.clone(), z.clone()]).unwrap(), vec![1, 3, 3, 1]);
    assert!(mode_cohomology(&[]).is_err());
    let straddles = Slope::decimal(BigRational::new(1.into(), 3.into()), BigRational::new(1.into(), 10.into()))
        .unwrap()
        .divisor_i64(-1, 3);
    assert_eq!(mode_cohomology(&[z, straddles]).unwrap_err().name(), "PrecisionExhausted");
}

#[test]
fn betti_and_check_examples() {
    let gs = product(&[Slope::golden(), Slope::sqrt2()]);
    assert_eq!(truncated_betti(&gs, 20).unwrap(), ints(&[1, 2, 1]));
    let r = kunneth_check(&gs, 20).unwrap();
    assert!(r.matches);
    assert_eq!(r.tensor_prediction, ints(&[1, 2, 1]));
    assert!(r.warnings.is_empty());

    let zg = product(&[Slope::rational(0, 1).unwrap(), Slope::golden()]);
    let r = kunneth_check(&zg, 5).unwrap();
    assert!(r.matches);
    assert_eq!(r.dims, ints(&[11, 22, 11]));
    assert_eq!(r.tensor_prediction, ints(&[11, 22, 11]));

    assert_eq!(truncated_betti(&product(&[Slope::golden()]), 50).unwrap(), ints(&[1, 1]));
    assert!(kunneth_check(&product(&[Slope::golden()]), 50).is_err());

    let lg = product(&[Slope::liouville(4).unwrap(), Slope::golden()]);
    let r = kunneth_check(&lg, 111).unwrap();
    assert!(r.matches);
    assert_eq!(r.dims, ints(&[1, 2, 1]));
    assert_eq!(r.warnings.len(), 1);
    assert!(r.warnings[0].starts_with("factor 1"));
    let v = r.to_json(10);
    assert_eq!(v["match"], true);
    assert_eq!(v["dims"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["tensor"], serde_json::json!([1, 2, 1]));

    let three = product(&[Slope::rational(0, 1).unwrap(), Slope::rational(1, 2).unwrap(), Slope::sqrt2()]);
    let r = kunneth_check(&three, 6).unwrap();
    assert!(r.matches);
    // 13 * 5 doubly resonant pairs, times (1, 3, 3, 1) restricted to the sqrt2 zero mode
    assert_eq!(r.dims, ints(&[13 * 5, 3 * 13 * 5, 3 * 13 * 5, 13 * 5]));
    assert!(ProductFoliation::new(vec![Slope::golden(); 4]).is_err());
}

#[test]
fn full_complex_agrees_with_mode_sum() {
    let half = Slope::rational(1, 2).unwrap();
    let zero = Slope::rational(0, 1).unwrap();
    let conj = Slope::quadratic(1, -1, 2, 5).unwrap();
    let cases = [
        (Slope::golden(), Slope::golden()),
        (zero.clone(), Slope::golden()),
        (Slope::golden(), half.clone()),
        (Slope::golden(), conj),
        (zero.clone(), half.clone()),
        (half.clone(), Slope::rational(-2, 3).unwrap()),
        (Slope::sqrt2(), zero),
    ];
    for (a, b) in &cases {
        for radius in 1..=3 {
            let want = oracle_dims(a, b, radius);
            let got = truncated_betti(&product(&[a.clone(), b.clone()]), radius as u64).unwrap();
            assert_eq!(got, want, "{a} x {b} at N = {radius}");
        }
    }
}

#[test]
fn sign_rule_squares_to_zero_for_generic_scalars() {
    // all divisors nonzero and distinct: no accidental cancellation
    let (d0, d1, _) = assemble(&Slope::golden(), &Slope::quadratic(2, 3, 7, 5).unwrap(), 3);
    assert!(compose_is_zero(&d1, &d0));
}

fn any_slope() -> impl Strategy<Value = Slope> {
    prop_oneof![
        (-4i64..=4, 1i64..=4).prop_map(|(a, b)| Slope::rational(a, b).unwrap()),
        Just(Slope::golden()),
        Just(Slope::sqrt2()),
        (-2i64..=2, 1i64..=2, 1i64..=3, prop_oneof![Just(2i64), Just(3), Just(5)])
            .prop_map(|(a, b, c, d)| Slope::quadratic(a, b, c, d).unwrap()),
        (3u32..=5).prop_map(|c| Slope::liouville(c).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dims_match_the_tensor_prediction(factors in prop::collection::vec(any_slope(), 2..=3), radius in 1u64..30) {
        let p = ProductFoliation::new(factors.clone()).unwrap();
        let r = kunneth_check(&p, radius).unwrap();
        prop_assert!(r.matches, "{:?} vs {:?}", r.dims, r.tensor_prediction);
        // Euler characteristic vanishes for k >= 1
        let chi: BigInt = r.dims.iter().enumerate().map(|(j, d)| if j % 2 == 0 { d.clone() } else { -d.clone() }).sum();
        prop_assert!(chi.is_zero());
        // each fully resonant mode contributes binomial(k, j)
        let resonant: u64 = factors.iter().map(|s| truncated_cohomology(s, radius).unwrap().h0).product();
        prop_assert_eq!(r.dims[0].to_u64().unwrap(), resonant);
    }
}
