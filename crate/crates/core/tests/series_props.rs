use proptest::prelude::*;
use umbral_core::rational::factorial;
use umbral_core::sequences::stirling1;
use umbral_core::{Rational, Series};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::frac(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

/// A series of the given order with small rational coefficients, constant term fixed.
fn series_with_constant(order: usize, c0: Rational) -> impl Strategy<Value = Series> {
    prop::collection::vec(small_rational(), order).prop_map(move |tail| {
        let mut coeffs = vec![c0.clone()];
        coeffs.extend(tail);
        Series::new(coeffs)
    })
}

fn delta_series() -> impl Strategy<Value = Series> {
    (2usize..=12, nonzero_rational()).prop_flat_map(|(order, f1)| {
        prop::collection::vec(small_rational(), order - 1).prop_map(move |rest| {
            let mut coeffs = vec![Rational::zero(), f1.clone()];
            coeffs.extend(rest);
            Series::new(coeffs)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn comp_inverse_is_two_sided(f in delta_series()) {
        let g = f.comp_inverse().unwrap();
        prop_assert_eq!(f.compose(&g).unwrap(), Series::t(f.order()));
        prop_assert_eq!(g.compose(&f).unwrap(), Series::t(f.order()));
    }

    #[test]
    fn exp_and_log_are_inverse(order in 1usize..=12, seed in 0i64..1000) {
        let f = Series::from_fn(order, |i| if i == 0 { Rational::one() } else { Rational::frac((i as i64 * 7 + seed % 5) % 9 - 4, 3) });
        prop_assert_eq!(f.log().unwrap().exp().unwrap(), f.clone());
        let g = Series::from_fn(order, |i| if i == 0 { Rational::zero() } else { Rational::frac((i as i64 * 5 + seed % 7) % 11 - 5, 2) });
        prop_assert_eq!(g.exp().unwrap().log().unwrap(), g);
    }

    #[test]
    fn log_exp_round_trip_random(f in (1usize..=10).prop_flat_map(|n| series_with_constant(n, Rational::one()))) {
        prop_assert_eq!(f.log().unwrap().exp().unwrap(), f);
    }

    #[test]
    fn rational_powers_add(
        f in (1usize..=10).prop_flat_map(|n| series_with_constant(n, Rational::one())),
        a in small_rational(),
        b in small_rational(),
    ) {
        let lhs = f.pow(&(&a + &b)).unwrap();
        let rhs = f.pow(&a).unwrap().mul(&f.pow(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integer_powers_of_any_unit(
        f in (1usize..=10, nonzero_rational()).prop_flat_map(|(n, c)| series_with_constant(n, c)),
        a in -4i64..=4,
        b in -4i64..=4,
    ) {
        let lhs = f.pow(&Rational::from(a + b)).unwrap();
        let rhs = f.pow(&Rational::from(a)).unwrap().mul(&f.pow(&Rational::from(b)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reciprocal_is_inverse(f in (0usize..=12, nonzero_rational()).prop_flat_map(|(n, c)| series_with_constant(n, c))) {
        prop_assert_eq!(f.mul(&f.reciprocal().unwrap()).unwrap(), Series::one(f.order()));
    }

    #[test]
    fn binomial_series_matches_exp_log(lambda in small_rational(), order in 0usize..=12) {
        let via_exp = Series::log_one_plus_t(order).scale(&lambda).exp().unwrap();
        prop_assert_eq!(Series::one_plus_t_pow(&lambda, order), via_exp);
    }

    #[test]
    fn composition_is_associative(f in delta_series(), seed in 0i64..50) {
        let order = f.order();
        let g = Series::from_fn(order, |i| if i == 0 { Rational::zero() } else { Rational::frac((seed + i as i64) % 5 - 2, 1 + i as i64 % 3) });
        let h = Series::from_fn(order, |i| Rational::frac((seed * 3 + i as i64) % 7 - 3, 2));
        let left = h.compose(&g.compose(&f).unwrap()).unwrap();
        let right = h.compose(&g).unwrap().compose(&f).unwrap();
        prop_assert_eq!(left, right);
    }
}

/// `log(1+t)^m / m!` has coefficients `s(n, m) / n!`.
#[test]
fn log_powers_give_stirling_numbers() {
    let order = 12;
    let log = Series::log_one_plus_t(order);
    for m in 0..=6usize {
        let power = log.pow_u(m as u64).scale(&factorial(m).recip().unwrap());
        for n in 0..=order {
            assert_eq!(power.coeff(n), stirling1(n as i64, m as i64) / factorial(n), "n={n} m={m}");
        }
    }
}

#[test]
fn mismatched_orders_are_rejected() {
    assert!(Series::t(3).add(&Series::t(4)).is_err());
    assert!(Series::t(3).mul(&Series::one(2)).is_err());
    assert!(Series::one(3).comp_inverse().is_err());
    assert!(Series::t(3).reciprocal().is_err());
    assert!(Series::t(3).log().is_err());
    assert!(Series::one(3).exp().is_err());
}

#[test]
fn derivative_and_div_t() {
    let e = Series::exp_of_scaled_t(6, &Rational::from(2));
    let d = e.derivative();
    for i in 0..6 {
        assert_eq!(d.coeff(i), e.coeff(i) * Rational::from(2));
    }
    let em1 = e.sub(&Series::one(6)).unwrap().div_t().unwrap();
    assert_eq!(em1.order(), 5);
    assert_eq!(em1.coeff(0), Rational::from(2));
    assert_eq!(em1.coeff(1), Rational::from(2));
}
