use jfourier::gamma::{p_recurrence_shift, regularized_p};
use jfourier::{decompose_order, principal_power, C64};
use proptest::prelude::*;

fn complex(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = C64> {
    (re, im).prop_map(|(a, b)| C64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn decomposition_reassembles(nu in complex(-10.0..10.0, -5.0..5.0)) {
        let o = decompose_order(nu).unwrap();
        prop_assert!((C64::new(o.int_part as f64, 0.0) + o.frac_part - o.nu).norm() <= 1e-15 * nu.norm().max(1.0));
        prop_assert!(o.frac_part.re > -1.0 && o.frac_part.re < 1.0);
        prop_assert_eq!(decompose_order(o.nu).unwrap(), o);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn principal_power_laws(
        r in 0.1f64..10.0,
        phi in -1.5f64..1.5,
        s in complex(-1.0..1.0, -1.0..1.0),
        t in complex(-1.0..1.0, -1.0..1.0),
    ) {
        let z = C64::from_polar(r, phi);
        prop_assert_eq!(principal_power(z, C64::new(1.0, 0.0)).unwrap(), z);
        prop_assert_eq!(principal_power(z, C64::new(0.0, 0.0)).unwrap(), C64::new(1.0, 0.0));
        let lhs = principal_power(z, s).unwrap() * principal_power(z, t).unwrap();
        let rhs = principal_power(z, s + t).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-13 * rhs.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn incomplete_gamma_recurrence(
        nu in complex(1.0..5.0, -2.0..2.0),
        r in 0.0f64..10.0,
        phi in -3.1f64..3.1,
    ) {
        let w = C64::from_polar(r, phi);
        let k = decompose_order(nu).unwrap().int_part as u32;
        let p = regularized_p(nu, w).unwrap();
        let shifted = p_recurrence_shift(nu, w, k).unwrap();
        prop_assert!((shifted - p).norm() <= 1e-10 * p.norm().max(1.0), "P = {}, shifted = {}", p, shifted);
    }
}
