//! Exact rational scalars and the combinatorial helpers built on them.
//!
//! `Rational` wraps `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. Equality is therefore structural.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An arbitrary-precision rational number in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// `numer / denom` for small literals. Panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("nonzero denominator")
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Integer power with a possibly negative exponent.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        let mag = u32::try_from(exp.unsigned_abs())
            .map_err(|_| Error::Domain(format!("exponent {exp} out of range")))?;
        let p = self.pow(mag);
        if exp < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    /// `2^e` for any integer `e`.
    pub fn two_pow(exp: i64) -> Self {
        Rational::integer(2).powi(exp).expect("2 is nonzero")
    }

    /// `(-1)^e`.
    pub fn sign_pow(exp: i64) -> Self {
        if exp.rem_euclid(2) == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Rational::new(p, q)
            }
            None => {
                let p: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational::integer(p))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\" text or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
                Ok(Rational::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
                Ok(Rational::integer(v))
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational::integer(v)
    }
}

impl From<usize> for Rational {
    fn from(v: usize) -> Self {
        Rational::integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::integer(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division panics on a zero divisor, like the integer types; use `recip` for a checked path.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign<Rational> for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    (1..=n).map(Rational::from).product()
}

/// Falling factorial `x (x-1) ... (x-n+1)`; the empty product is 1.
pub fn falling_factorial_scalar(x: &Rational, n: usize) -> Rational {
    (0..n).map(|i| x - Rational::from(i)).product()
}

/// Generalized binomial coefficient `alpha (alpha-1) ... (alpha-n+1) / n!`.
pub fn rat_binomial(alpha: &Rational, n: usize) -> Rational {
    falling_factorial_scalar(alpha, n) / factorial(n)
}

/// Ordinary binomial coefficient for integer arguments, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        return Rational::zero();
    }
    rat_binomial(&Rational::from(n), k as usize)
}

/// Multinomial coefficient `total! / prod(part!)`.
pub fn multinomial(total: usize, parts: &[usize]) -> Result<Rational> {
    let actual: usize = parts.iter().sum();
    if actual != total {
        return Err(Error::CompositionMismatch { expected: total, actual });
    }
    let denom: Rational = parts.iter().map(|&p| factorial(p)).product();
    Ok(factorial(total) / denom)
}

/// Calls `visit` with every weak composition of `total` into `parts`
/// nonnegative summands. There is exactly one composition of 0 into 0 parts
/// and none of a positive total into 0 parts.
pub fn for_each_weak_composition(total: usize, parts: usize, mut visit: impl FnMut(&[usize])) {
    fn go(rest: usize, slots: usize, buf: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if slots == 0 {
            if rest == 0 {
                visit(buf);
            }
            return;
        }
        if slots == 1 {
            buf.push(rest);
            visit(buf);
            buf.pop();
            return;
        }
        for first in 0..=rest {
            buf.push(first);
            go(rest - first, slots - 1, buf, visit);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(parts);
    go(total, parts, &mut buf, &mut visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_and_text() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(Rational::new(4, 2).unwrap().to_string(), "2");
        assert_eq!(q("10/-4"), q("-5/2"));
        assert!(Rational::new(1, 0).is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
    }

    #[test]
    fn json_text_form() {
        let r = q("-7/3");
        let js = serde_json::to_string(&r).unwrap();
        assert_eq!(js, "\"-7/3\"");
        let back: Rational = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
        let from_int: Rational = serde_json::from_str("5").unwrap();
        assert_eq!(from_int, Rational::from(5));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(rat_binomial(&q("1/2"), 2), q("-1/8"));
        assert_eq!(rat_binomial(&q("7/3"), 0), Rational::one());
        assert_eq!(rat_binomial(&Rational::from(3), 2), Rational::from(3));
        assert_eq!(rat_binomial(&Rational::from(-1), 3), Rational::from(-1));
        assert_eq!(binomial(5, 6), Rational::zero());
        assert_eq!(binomial(5, -1), Rational::zero());
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), Rational::from(6));
        assert_eq!(multinomial(0, &[]).unwrap(), Rational::one());
        assert_eq!(multinomial(3, &[1, 2]).unwrap(), Rational::from(3));
        assert_eq!(
            multinomial(4, &[1, 2]),
            Err(Error::CompositionMismatch { expected: 4, actual: 3 })
        );
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial_scalar(&Rational::from(5), 2), Rational::from(20));
        assert_eq!(falling_factorial_scalar(&q("3/7"), 0), Rational::one());
        assert_eq!(falling_factorial_scalar(&q("1/2"), 2), q("-1/4"));
    }

    #[test]
    fn weak_compositions_are_counted() {
        let mut count = 0;
        for_each_weak_composition(4, 3, |c| {
            assert_eq!(c.iter().sum::<usize>(), 4);
            count += 1;
        });
        // C(4 + 2, 2)
        assert_eq!(count, 15);
        let mut empty = 0;
        for_each_weak_composition(0, 0, |_| empty += 1);
        assert_eq!(empty, 1);
        for_each_weak_composition(2, 0, |_| panic!("no compositions"));
    }

    #[test]
    fn signed_powers() {
        assert_eq!(Rational::two_pow(-3), q("1/8"));
        assert_eq!(Rational::sign_pow(-3), Rational::from(-1));
        assert_eq!(q("2/3").powi(-2).unwrap(), q("9/4"));
        assert!(Rational::zero().powi(-1).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rational() -> impl Strategy<Value = Rational> {
            (-40i64..40, 1i64..12).prop_map(|(p, q)| Rational::frac(p, q))
        }

        proptest! {
            #[test]
            fn binomial_times_factorial_is_falling(a in small_rational(), n in 0usize..=20) {
                prop_assert_eq!(rat_binomial(&a, n) * factorial(n), falling_factorial_scalar(&a, n));
            }

            #[test]
            fn pascal_recurrence(a in small_rational(), n in 1usize..=20) {
                let am1 = &a - Rational::one();
                prop_assert_eq!(
                    rat_binomial(&a, n),
                    rat_binomial(&am1, n) + rat_binomial(&am1, n - 1)
                );
            }

            #[test]
            fn field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
                prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
                prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
                let text = a.to_string();
                prop_assert_eq!(text.parse::<Rational>().unwrap(), a);
            }
        }
    }
}
