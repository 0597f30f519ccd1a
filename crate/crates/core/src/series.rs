//! Truncated formal power series over the rationals.
//!
//! A `Series` of order `N` stores the ordinary coefficients `c_0 ..= c_N` of
//! `t^0 ..= t^N`. Binary operations demand equal orders; callers truncate
//! explicitly so that precision loss is never silent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{factorial, rat_binomial, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct Series {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<Rational>,
}

impl TryFrom<SeriesRepr> for Series {
    type Error = Error;

    fn try_from(repr: SeriesRepr) -> Result<Self> {
        if repr.coeffs.len() != repr.order + 1 {
            return Err(Error::Domain(format!(
                "series of order {} needs {} coefficients, got {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        Ok(Series { coeffs: repr.coeffs })
    }
}

impl From<Series> for SeriesRepr {
    fn from(s: Series) -> Self {
        SeriesRepr { order: s.order(), coeffs: s.coeffs }
    }
}

impl Series {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant coefficient");
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Series { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rational::zero())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    /// `c t^k`, truncated away when `k > order`.
    pub fn monomial(order: usize, k: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::monomial(order, 1, Rational::one())
    }

    /// `e^{a t}`.
    pub fn exp_of_scaled_t(order: usize, a: &Rational) -> Self {
        Self::from_fn(order, |n| a.pow(n as u32) / factorial(n))
    }

    /// `log(1 + t)`.
    pub fn log_one_plus_t(order: usize) -> Self {
        Self::from_fn(order, |n| {
            if n == 0 {
                Rational::zero()
            } else {
                Rational::sign_pow(n as i64 + 1) / Rational::from(n)
            }
        })
    }

    /// `(1 + t)^lambda`, coefficients are generalized binomials.
    pub fn one_plus_t_pow(lambda: &Rational, order: usize) -> Self {
        Self::from_fn(order, |n| rat_binomial(lambda, n))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the truncation order.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_delta(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs.get(1).is_some_and(|c| !c.is_zero())
    }

    pub fn is_invertible(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    /// Truncates (or zero-pads) to a new order.
    pub fn truncate(&self, order: usize) -> Series {
        Series::from_fn(order, |i| self.coeff(i))
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series::from_fn(self.order(), |i| &self.coeffs[i] + &other.coeffs[i]))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series::from_fn(self.order(), |i| &self.coeffs[i] - &other.coeffs[i]))
    }

    pub fn neg(&self) -> Series {
        Series::from_fn(self.order(), |i| -&self.coeffs[i])
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series::from_fn(self.order(), |i| c * &self.coeffs[i])
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Series { coeffs: out })
    }

    /// Multiplicative inverse of an invertible series.
    pub fn reciprocal(&self) -> Result<Series> {
        let a0 = self.coeffs[0].recip().map_err(|_| Error::NotInvertible)?;
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(a0.clone());
        for m in 1..=n {
            let s: Rational = (1..=m).map(|k| &self.coeffs[k] * &out[m - k]).sum();
            out.push(-(&a0 * s));
        }
        Ok(Series { coeffs: out })
    }

    /// `self / t` for a series with zero constant term. The result has order
    /// one lower, since the top coefficient is unknown.
    pub fn div_t(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm { op: "division by t", expected: "0" });
        }
        if self.order() == 0 {
            return Err(Error::InsufficientOrder { degree: 1, order: 0 });
        }
        Ok(Series { coeffs: self.coeffs[1..].to_vec() })
    }

    /// Formal derivative in `t`, zero-padded to the same order. The top
    /// coefficient of the result is not meaningful.
    pub fn derivative(&self) -> Series {
        let n = self.order();
        Series::from_fn(n, |i| {
            if i < n {
                Rational::from(i + 1) * &self.coeffs[i + 1]
            } else {
                Rational::zero()
            }
        })
    }

    /// `self(inner(t))`, evaluated by Horner's rule in the truncated ring.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroInnerConstant);
        }
        let n = self.order();
        let mut acc = Series::constant(n, self.coeffs[n].clone());
        for c in self.coeffs[..n].iter().rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Compositional inverse of a delta series, solved order by order: the
    /// coefficient of `t^m` in `f(g(t))` is `f_1 g_m` plus terms in `g_1..g_{m-1}`.
    pub fn comp_inverse(&self) -> Result<Series> {
        if !self.is_delta() {
            return Err(Error::NotDelta);
        }
        let n = self.order();
        let f1_inv = self.coeffs[1].recip()?;
        let mut g = Series::zero(n);
        if n >= 1 {
            g.coeffs[1] = f1_inv.clone();
        }
        for m in 2..=n {
            let residual = self.compose(&g)?.coeffs[m].clone();
            g.coeffs[m] = -(&f1_inv * residual);
        }
        Ok(g)
    }

    /// Formal logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm { op: "log", expected: "1" });
        }
        let n = self.order();
        // log f = integral of f'/f; f'/f is exact through index n-1
        let q = self.derivative().mul(&self.reciprocal()?)?;
        Ok(Series::from_fn(n, |i| {
            if i == 0 {
                Rational::zero()
            } else {
                &q.coeffs[i - 1] / Rational::from(i)
            }
        }))
    }

    /// Formal exponential of a series with zero constant term, from `E' = f' E`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm { op: "exp", expected: "0" });
        }
        let n = self.order();
        let mut e: Vec<Rational> = Vec::with_capacity(n + 1);
        e.push(Rational::one());
        for m in 1..=n {
            let s: Rational = (1..=m)
                .map(|k| Rational::from(k) * &self.coeffs[k] * &e[m - k])
                .sum();
            e.push(s / Rational::from(m));
        }
        Ok(Series { coeffs: e })
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn pow_u(&self, mut exp: u64) -> Series {
        let mut base = self.clone();
        let mut acc = Series::one(self.order());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    /// `self^alpha`. Integer exponents use multiplication (and the reciprocal
    /// for negative ones); other exponents use `exp(alpha log f)` and need a
    /// unit constant term.
    pub fn pow(&self, alpha: &Rational) -> Result<Series> {
        if let Some(e) = alpha.to_i64() {
            return if e >= 0 {
                Ok(self.pow_u(e as u64))
            } else {
                Ok(self.reciprocal()?.pow_u(e.unsigned_abs()))
            };
        }
        if !self.coeffs[0].is_one() {
            return Err(Error::IrrationalPower(alpha.to_string()));
        }
        self.log()?.scale(alpha).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn s(cs: &[&str]) -> Series {
        Series::new(cs.iter().map(|c| q(c)).collect())
    }

    #[test]
    fn ring_examples() {
        let a = s(&["1", "1", "0"]);
        let b = s(&["1", "-1", "0"]);
        assert_eq!(a.mul(&b).unwrap(), s(&["1", "0", "-1"]));
        let c = s(&["1", "1", "1"]);
        assert_eq!(c.mul(&c).unwrap(), s(&["1", "2", "3"]));
        assert_eq!(c.mul(&Series::one(2)).unwrap(), c);
        assert_eq!(a.mul(&Series::one(3)), Err(Error::OrderMismatch(2, 3)));
        assert_eq!(a.add(&Series::one(1)), Err(Error::OrderMismatch(2, 1)));
    }

    #[test]
    fn compose_examples() {
        let f = s(&["2", "-3", "5", "7"]);
        assert_eq!(f.compose(&Series::t(3)).unwrap(), f);
        let geo = Series::from_fn(4, |_| Rational::one());
        let t2 = Series::monomial(4, 2, Rational::one());
        assert_eq!(geo.compose(&t2).unwrap(), s(&["1", "0", "1", "0", "1"]));
        let e = Series::exp_of_scaled_t(5, &Rational::one());
        let l = Series::log_one_plus_t(5);
        assert_eq!(e.compose(&l).unwrap(), s(&["1", "1", "0", "0", "0", "0"]));
        assert_eq!(f.compose(&Series::one(3)), Err(Error::NonZeroInnerConstant));
    }

    #[test]
    fn comp_inverse_examples() {
        assert_eq!(Series::t(4).comp_inverse().unwrap(), Series::t(4));
        let em1 = Series::exp_of_scaled_t(4, &Rational::one()).sub(&Series::one(4)).unwrap();
        assert_eq!(em1.comp_inverse().unwrap(), s(&["0", "1", "-1/2", "1/3", "-1/4"]));
        let emm1 = Series::exp_of_scaled_t(4, &Rational::from(-1)).sub(&Series::one(4)).unwrap();
        assert_eq!(emm1.comp_inverse().unwrap(), s(&["0", "-1", "1/2", "-1/3", "1/4"]));
        assert_eq!(Series::one(3).comp_inverse(), Err(Error::NotDelta));
        assert_eq!(s(&["0", "0", "1"]).comp_inverse(), Err(Error::NotDelta));
    }

    #[test]
    fn log_exp_examples() {
        let one_plus_t = s(&["1", "1", "0", "0"]);
        assert_eq!(one_plus_t.log().unwrap(), s(&["0", "1", "-1/2", "1/3"]));
        assert_eq!(Series::zero(3).exp().unwrap(), Series::one(3));
        assert_eq!(Series::t(3).exp().unwrap(), s(&["1", "1", "1/2", "1/6"]));
        assert!(s(&["2", "1"]).log().is_err());
        assert!(s(&["1", "1"]).exp().is_err());
    }

    #[test]
    fn pow_examples() {
        let one_plus_t = s(&["1", "1", "0", "0"]);
        assert_eq!(one_plus_t.pow(&q("1/2")).unwrap(), s(&["1", "1/2", "-1/8", "1/16"]));
        let f = s(&["3", "1", "4", "1"]);
        assert_eq!(f.pow(&Rational::zero()).unwrap(), Series::one(3));
        assert_eq!(f.pow(&Rational::one()).unwrap(), f);
        assert_eq!(f.pow(&Rational::from(-1)).unwrap(), f.reciprocal().unwrap());
        assert!(f.pow(&q("1/2")).is_err());
        assert!(s(&["0", "1"]).pow(&q("1/3")).is_err());
        // zero constant term is fine for a positive integer power
        assert_eq!(Series::t(3).pow(&Rational::from(2)).unwrap(), s(&["0", "0", "1", "0"]));
        assert_eq!(Series::t(3).pow(&Rational::from(-1)), Err(Error::NotInvertible));
    }

    #[test]
    fn derivative_examples() {
        let t2 = Series::monomial(3, 2, Rational::one());
        assert_eq!(t2.derivative(), s(&["0", "2", "0", "0"]));
        let e = Series::exp_of_scaled_t(4, &Rational::one());
        assert_eq!(e.derivative().truncate(3), e.truncate(3));
        assert_eq!(
            Series::log_one_plus_t(5).derivative(),
            s(&["1", "-1", "1", "-1", "1", "0"])
        );
    }

    #[test]
    fn one_plus_t_pow_examples() {
        assert_eq!(Series::one_plus_t_pow(&Rational::one(), 3), s(&["1", "1", "0", "0"]));
        assert_eq!(Series::one_plus_t_pow(&Rational::from(-1), 3), s(&["1", "-1", "1", "-1"]));
        assert_eq!(Series::one_plus_t_pow(&q("1/2"), 2), s(&["1", "1/2", "-1/8"]));
    }

    #[test]
    fn json_shape() {
        let js = serde_json::to_string(&s(&["1", "-1/2"])).unwrap();
        assert_eq!(js, r#"{"order":1,"coeffs":["1","-1/2"]}"#);
        let back: Series = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s(&["1", "-1/2"]));
        assert!(serde_json::from_str::<Series>(r#"{"order":2,"coeffs":["1"]}"#).is_err());
    }
}
