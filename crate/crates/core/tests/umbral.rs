mod common;

use common::{exp_minus_one, q, test_pairs};
use umbral_core::rational::factorial;
use umbral_core::sequences::{bernoulli_polys, falling_poly, rising_poly};
use umbral_core::umbral::*;
use umbral_core::{Polynomial, Rational, Series};

const ORDER: usize = 10;

#[test]
fn classical_sequences() {
    let pairs = test_pairs(ORDER);
    let s = |i: usize| sheffer_polys(&pairs[i].1, 8).unwrap();
    for (n, p) in s(0).iter().enumerate() {
        assert_eq!(p, &Polynomial::monomial(n, Rational::one()));
    }
    for (n, p) in s(1).iter().enumerate() {
        assert_eq!(p, &falling_poly(n));
    }
    // 1 - e^{-t} inverts to -log(1 - t), giving rising factorials
    for (n, p) in s(2).iter().enumerate() {
        assert_eq!(p, &rising_poly(n));
    }
    assert_eq!(s(3), bernoulli_polys(1, 8).unwrap());
}

/// `<g(t) f(t)^k | s_n(x)> = n! delta_{n,k}`.
#[test]
fn duality_and_orthogonality() {
    for (name, pair) in test_pairs(ORDER) {
        let s = sheffer_polys(&pair, 8).unwrap();
        let mut fk = pair.g().clone();
        for k in 0..=8 {
            for (n, s_n) in s.iter().enumerate() {
                let expected = if n == k { factorial(n) } else { Rational::zero() };
                assert_eq!(pair_eval(&fk, s_n), expected, "{name} n={n} k={k}");
            }
            fk = fk.mul(pair.f()).unwrap();
        }
    }
}

fn pair_eval(f: &Series, p: &Polynomial) -> Rational {
    umbral_core::umbral::pair(f, p).unwrap()
}

#[test]
fn coefficient_formula_matches_generating_function() {
    for (name, pair) in test_pairs(ORDER) {
        let s = sheffer_polys(&pair, 8).unwrap();
        for (n, s_n) in s.iter().enumerate() {
            assert_eq!(&sheffer_coeff_formula(&pair, n).unwrap(), s_n, "{name} n={n}");
        }
    }
}

#[test]
fn lowering_raising_and_derivative() {
    for (name, pair) in test_pairs(ORDER) {
        let s = sheffer_polys(&pair, 9).unwrap();
        for n in 1..=8 {
            assert_eq!(sheffer_lowering(&pair, n).unwrap(), s[n - 1].scale(&Rational::from(n)), "{name} n={n}");
        }
        for n in 0..=8 {
            assert_eq!(sheffer_raising(&pair, n).unwrap(), s[n + 1], "{name} n={n}");
            assert_eq!(sheffer_derivative(&pair, n).unwrap(), s[n].derivative(), "{name} n={n}");
        }
        assert!(sheffer_lowering(&pair, 0).is_err());
    }
}

#[test]
fn binomial_expansion_is_a_shift() {
    for (name, pair) in test_pairs(ORDER) {
        let s = sheffer_polys(&pair, 8).unwrap();
        for y in ["0", "1", "-1", "1/2", "7"].map(q) {
            for (n, s_n) in s.iter().enumerate() {
                assert_eq!(binomial_expand(&pair, n, &y).unwrap(), s_n.shift(&y), "{name} n={n} y={y}");
            }
        }
    }
}

#[test]
fn transfer_formula() {
    let t = Series::t(ORDER);
    for n in 1..=8 {
        assert_eq!(transfer(&t, &exp_minus_one(ORDER, 1), n).unwrap(), falling_poly(n));
        let expected = rising_poly(n).scale(&Rational::sign_pow(n as i64));
        assert_eq!(transfer(&t, &exp_minus_one(ORDER, -1), n).unwrap(), expected, "n={n}");
        // starting from a non-trivial f gives the same result
        let f = exp_minus_one(ORDER, 1);
        assert_eq!(transfer(&f, &exp_minus_one(ORDER, -1), n).unwrap(), expected, "n={n}");
    }
    assert!(transfer(&t, &t, 0).is_err());
    assert!(transfer(&t, &Series::one(ORDER), 2).is_err());
}

/// Solves `s_n = sum_m c_m r_m` by back substitution on the triangular basis `r`.
fn triangular_solve(target: &Polynomial, basis: &[Polynomial]) -> Vec<Rational> {
    let n = basis.len() - 1;
    let mut rest = target.clone();
    let mut c = vec![Rational::zero(); n + 1];
    for m in (0..=n).rev() {
        let coeff = rest.coeff(m) / basis[m].coeff(m);
        rest = &rest - &basis[m].scale(&coeff);
        c[m] = coeff;
    }
    assert!(rest.is_zero());
    c
}

#[test]
fn connection_constants_match_triangular_solve() {
    let pairs = test_pairs(ORDER);
    for (sname, source) in &pairs {
        let s = sheffer_polys(source, 8).unwrap();
        for (tname, target) in &pairs {
            let r = sheffer_polys(target, 8).unwrap();
            let matrix = connection_matrix(source, target, 6).unwrap();
            for (n, row) in matrix.iter().enumerate() {
                assert_eq!(row, &triangular_solve(&s[n], &r[..=n]), "{sname} -> {tname} n={n}");
            }
            let row8 = connection_constants(source, target, 8).unwrap();
            assert_eq!(row8, triangular_solve(&s[8], &r), "{sname} -> {tname} n=8");
        }
    }
}

#[test]
fn connection_to_itself_is_identity() {
    for (_, pair) in test_pairs(ORDER) {
        for (n, row) in connection_matrix(&pair, &pair, 7).unwrap().iter().enumerate() {
            for (m, c) in row.iter().enumerate() {
                assert_eq!(*c, if m == n { Rational::one() } else { Rational::zero() });
            }
        }
    }
}

#[test]
fn functional_derivative_rule() {
    for (_, pair) in test_pairs(ORDER) {
        for p in sheffer_polys(&pair, 7).unwrap() {
            for f in [pair.g(), pair.f()] {
                let (lhs, rhs) = functional_xp_check(f, &p).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn operators_act_on_monomials() {
    // e^{a t} x^n = (x + a)^n
    let a = q("3/2");
    let e = Series::exp_of_scaled_t(ORDER, &a);
    for n in 0..=8 {
        let xn = Polynomial::monomial(n, Rational::one());
        assert_eq!(apply_series(&e, &xn), xn.shift(&a));
        assert_eq!(LinearFunctional(e.clone()).pair(&xn).unwrap(), a.pow(n as u32));
    }
}

#[test]
fn invalid_pairs_are_rejected() {
    assert!(ShefferPair::new(Series::t(4), Series::t(4)).is_err());
    assert!(ShefferPair::new(Series::one(4), Series::one(4)).is_err());
    assert!(ShefferPair::new(Series::one(4), Series::t(5)).is_err());
    let pair = ShefferPair::associated(Series::t(4)).unwrap();
    assert!(sheffer_polys(&pair, 4).is_err());
    assert!(sheffer_polys(&pair, 3).is_ok());
}
