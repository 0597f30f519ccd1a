//! Dense univariate polynomials in `x` over the rationals, plus a thin
//! bivariate wrapper used by the addition formulas.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};

/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are always
/// stripped, so derived equality ignores them and the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl From<Vec<Rational>> for Polynomial {
    fn from(coeffs: Vec<Rational>) -> Self {
        Polynomial::new(coeffs)
    }
}

impl From<Polynomial> for Vec<Rational> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `c x^k`.
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                *slot += a * binomial(i as i64, j as i64) * c.pow((i - j) as u32);
            }
        }
        Polynomial::new(out)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(i) * c)
                .collect(),
        )
    }

    pub fn mul_x(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Exact division by `x`; fails unless the constant term vanishes.
    pub fn div_x(&self) -> Result<Polynomial> {
        let c0 = self.coeff(0);
        if !c0.is_zero() {
            return Err(Error::NotDivisibleByX(c0.to_string()));
        }
        Ok(Polynomial::new(self.coeffs.iter().skip(1).cloned().collect()))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs)
    }
}

/// Comma-separated coefficients from `x^0` upward; the zero polynomial prints as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| &acc + &p)
    }
}

/// Polynomial in `x` and `y`, stored as coefficients of `y^j` that are
/// polynomials in `x`. Trailing zero slots are stripped.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    by_y: Vec<Polynomial>,
}

impl BiPoly {
    pub fn new(mut by_y: Vec<Polynomial>) -> Self {
        while by_y.last().is_some_and(Polynomial::is_zero) {
            by_y.pop();
        }
        BiPoly { by_y }
    }

    pub fn y_coeffs(&self) -> &[Polynomial] {
        &self.by_y
    }

    pub fn y_coeff(&self, j: usize) -> Polynomial {
        self.by_y.get(j).cloned().unwrap_or_default()
    }

    /// Adds `c * y^j * p(x)`.
    pub fn add_term(&mut self, j: usize, c: &Rational, p: &Polynomial) {
        if self.by_y.len() <= j {
            self.by_y.resize(j + 1, Polynomial::zero());
        }
        self.by_y[j] = &self.by_y[j] + &p.scale(c);
        *self = BiPoly::new(std::mem::take(&mut self.by_y));
    }

    /// `p(x + y)` expanded in powers of `y`.
    pub fn shifted(p: &Polynomial) -> BiPoly {
        let mut by_y = Vec::new();
        let mut d = p.clone();
        let mut fact = Rational::one();
        let mut j = 0usize;
        while !d.is_zero() {
            by_y.push(d.scale(&fact.recip().expect("nonzero")));
            j += 1;
            fact = fact * Rational::from(j);
            d = d.derivative();
        }
        BiPoly::new(by_y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| Rational::from(c)).collect())
    }

    #[test]
    fn trailing_zeros_ignored() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[0, 0]), Polynomial::zero());
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(p(&[3, 0, 5]).degree(), Some(2));
    }

    #[test]
    fn shift_and_reflect() {
        // (x+1)^2 = x^2 + 2x + 1
        assert_eq!(p(&[0, 0, 1]).shift(&Rational::one()), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 2, 3]).reflect(), p(&[1, -2, 3]));
        let f = p(&[2, -1, 0, 4]);
        let c = Rational::frac(-3, 2);
        assert_eq!(f.shift(&c).shift(&-&c), f);
        assert_eq!(f.shift(&c).eval(&Rational::from(5)), f.eval(&(Rational::from(5) + &c)));
    }

    #[test]
    fn division_by_x() {
        assert_eq!(p(&[0, 3, 1]).div_x().unwrap(), p(&[3, 1]));
        assert!(p(&[1, 3]).div_x().is_err());
        assert_eq!(p(&[3, 1]).mul_x(), p(&[0, 3, 1]));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(&p(&[1, 1]) - &p(&[1, 1]), Polynomial::zero());
        assert_eq!(p(&[5, 3, 1]).derivative(), p(&[3, 2]));
        assert_eq!(p(&[1, 2, 3]).to_string(), "1, 2, 3");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn bivariate_shift() {
        // (x + y)^2 = x^2 + 2x y + y^2
        let b = BiPoly::shifted(&p(&[0, 0, 1]));
        assert_eq!(b.y_coeffs(), &[p(&[0, 0, 1]), p(&[0, 2]), p(&[1])]);
    }
}
