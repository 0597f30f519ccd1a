//! Classical polynomial families, each defined by its generating function
//! and expanded through the series kernel.
//!
//! Every family here has a generating function of the form
//! `A(t) * exp(x K(t))`, where `(1+t)^{±x}` is the case `K = ±log(1+t)`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{factorial, for_each_weak_composition, rat_binomial, Rational};
use crate::series::Series;

/// A bivariate generating function `prefactor(t) * exp(x * kernel(t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct GfRecipe {
    prefactor: Series,
    kernel: Series,
}

impl GfRecipe {
    /// `prefactor(t) * exp(x * kernel(t))`; the kernel must have zero constant term.
    pub fn with_kernel(prefactor: Series, kernel: Series) -> Result<Self> {
        if prefactor.order() != kernel.order() {
            return Err(Error::OrderMismatch(prefactor.order(), kernel.order()));
        }
        if !kernel.constant_term().is_zero() {
            return Err(Error::ConstantTerm { op: "generating-function kernel", expected: "0" });
        }
        Ok(GfRecipe { prefactor, kernel })
    }

    /// `prefactor(t) * (1+t)^{sign * x}`.
    pub fn binomial(prefactor: Series, sign: i32) -> Self {
        let n = prefactor.order();
        let kernel = Series::log_one_plus_t(n).scale(&Rational::from(sign.signum()));
        GfRecipe { prefactor, kernel }
    }

    /// `prefactor(t) * e^{x t}`.
    pub fn exponential(prefactor: Series) -> Self {
        let n = prefactor.order();
        GfRecipe { prefactor, kernel: Series::t(n) }
    }

    pub fn order(&self) -> usize {
        self.prefactor.order()
    }
}

/// Extracts `p_0 ..= p_N` with `sum p_n(x) t^n / n!` equal to the recipe's
/// series modulo `t^{N+1}`, for `N <= recipe.order()`.
///
/// The x-dependent factor `E(t) = exp(x K(t))` is built from `E' = x K' E`,
/// so each `E_m` is a polynomial in `x`; the prefactor is then convolved in.
pub fn gf_expand(recipe: &GfRecipe, n_max: usize) -> Result<Vec<Polynomial>> {
    if n_max > recipe.order() {
        return Err(Error::InsufficientOrder { degree: n_max, order: recipe.order() });
    }
    let k = recipe.kernel.coeffs();
    let mut e: Vec<Polynomial> = Vec::with_capacity(n_max + 1);
    e.push(Polynomial::one());
    for m in 1..=n_max {
        let inner: Polynomial = (1..=m)
            .filter(|&j| !k[j].is_zero())
            .map(|j| e[m - j].scale(&(Rational::from(j) * &k[j])))
            .sum();
        e.push(inner.mul_x().scale(&Rational::frac(1, m as i64)));
    }
    let a = recipe.prefactor.coeffs();
    Ok((0..=n_max)
        .map(|n| {
            let conv: Polynomial = (0..=n)
                .filter(|&i| !a[i].is_zero())
                .map(|i| e[n - i].scale(&a[i]))
                .sum();
            conv.scale(&factorial(n))
        })
        .collect())
}

fn stirling_table() -> &'static RwLock<Vec<Vec<BigInt>>> {
    static TABLE: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![vec![BigInt::from(1)]]))
}

/// Signed Stirling number of the first kind `S1(n, m)`, the coefficient of
/// `x^m` in `(x)_n`. Zero when `m > n` or either index is negative.
pub fn stirling1(n: i64, m: i64) -> Rational {
    if n < 0 || m < 0 || m > n {
        return Rational::zero();
    }
    let (n, m) = (n as usize, m as usize);
    {
        let table = stirling_table().read().expect("stirling table poisoned");
        if let Some(row) = table.get(n) {
            return Rational::integer(row[m].clone());
        }
    }
    let mut table = stirling_table().write().expect("stirling table poisoned");
    // S1(r+1, j) = S1(r, j-1) - r S1(r, j)
    while table.len() <= n {
        let r = table.len() - 1;
        let prev = &table[r];
        let next: Vec<BigInt> = (0..=r + 1)
            .map(|j| {
                let left = if j >= 1 { prev[j - 1].clone() } else { BigInt::from(0) };
                let right = if j <= r { &prev[j] * BigInt::from(r) } else { BigInt::from(0) };
                left - right
            })
            .collect();
        table.push(next);
    }
    Rational::integer(table[n][m].clone())
}

/// `(x)_n = sum_l S1(n, l) x^l`.
pub fn falling_poly(n: usize) -> Polynomial {
    Polynomial::new((0..=n).map(|l| stirling1(n as i64, l as i64)).collect())
}

/// `x^{(n)} = sum_l S1(n, l) (-1)^{n-l} x^l`.
pub fn rising_poly(n: usize) -> Polynomial {
    Polynomial::new(
        (0..=n)
            .map(|l| stirling1(n as i64, l as i64) * Rational::sign_pow((n - l) as i64))
            .collect(),
    )
}

/// `Lif_k(t) = sum t^n / (n! (n+1)^k)` for any integer `k`.
pub fn lif_series(k: i64, order: usize) -> Series {
    Series::from_fn(order, |n| {
        let base = Rational::from(n + 1);
        base.powi(-k).expect("n + 1 > 0") / factorial(n)
    })
}

/// `(e^t - 1) / t` at full order.
fn exp_minus_one_over_t(order: usize) -> Series {
    Series::from_fn(order, |n| factorial(n + 1).recip().expect("nonzero"))
}

/// `log(1+t) / t` at full order.
fn log_one_plus_t_over_t(order: usize) -> Series {
    Series::from_fn(order, |n| Rational::sign_pow(n as i64) / Rational::from(n + 1))
}

fn last(mut polys: Vec<Polynomial>) -> Polynomial {
    polys.pop().expect("at least one polynomial")
}

/// Bernoulli polynomials of order `alpha`, from `(t/(e^t-1))^alpha e^{xt}`.
pub fn bernoulli_polys(alpha: u32, n_max: usize) -> Result<Vec<Polynomial>> {
    let pre = exp_minus_one_over_t(n_max).pow_u(alpha as u64).reciprocal()?;
    gf_expand(&GfRecipe::exponential(pre), n_max)
}

pub fn bernoulli_poly(alpha: u32, n: usize) -> Result<Polynomial> {
    bernoulli_polys(alpha, n).map(last)
}

/// Bernoulli numbers of order `alpha`, the `x = 0` values.
pub fn bernoulli_numbers(alpha: u32, n_max: usize) -> Result<Vec<Rational>> {
    Ok(bernoulli_polys(alpha, n_max)?.iter().map(|p| p.coeff(0)).collect())
}

/// Frobenius-Euler polynomials `H_n^{(alpha)}(x | lambda)` from
/// `((1-lambda)/(e^t-lambda))^alpha e^{xt}`.
pub fn frobenius_euler_polys(alpha: u32, lambda: &Rational, n_max: usize) -> Result<Vec<Polynomial>> {
    if lambda.is_one() {
        return Err(Error::FrobeniusPole);
    }
    let denom = (Rational::one() - lambda).recip()?;
    // (e^t - lambda) / (1 - lambda), constant term 1
    let base = Series::from_fn(n_max, |n| {
        if n == 0 {
            Rational::one()
        } else {
            &denom / factorial(n)
        }
    });
    let pre = base.pow_u(alpha as u64).reciprocal()?;
    gf_expand(&GfRecipe::exponential(pre), n_max)
}

pub fn frobenius_euler_poly(alpha: u32, lambda: &Rational, n: usize) -> Result<Polynomial> {
    frobenius_euler_polys(alpha, lambda, n).map(last)
}

/// Higher-order Cauchy polynomials of the first kind, from
/// `(t/log(1+t))^alpha (1+t)^{-x}`.
pub fn cauchy1_polys(alpha: u32, n_max: usize) -> Result<Vec<Polynomial>> {
    let pre = log_one_plus_t_over_t(n_max).pow_u(alpha as u64).reciprocal()?;
    gf_expand(&GfRecipe::binomial(pre, -1), n_max)
}

pub fn cauchy1_poly(alpha: u32, n: usize) -> Result<Polynomial> {
    cauchy1_polys(alpha, n).map(last)
}

/// Higher-order Cauchy polynomials of the second kind, from
/// `(t/((1+t) log(1+t)))^alpha (1+t)^x`.
pub fn cauchy2_polys(alpha: u32, n_max: usize) -> Result<Vec<Polynomial>> {
    let base = Series::one_plus_t_pow(&Rational::one(), n_max).mul(&log_one_plus_t_over_t(n_max))?;
    let pre = base.pow_u(alpha as u64).reciprocal()?;
    gf_expand(&GfRecipe::binomial(pre, 1), n_max)
}

pub fn cauchy2_poly(alpha: u32, n: usize) -> Result<Polynomial> {
    cauchy2_polys(alpha, n).map(last)
}

/// `(1 + (1+t)^lambda)^{-mu}` via an integer power of a series with constant term 2.
pub fn peters_base_series(lambda: &Rational, mu: i64, order: usize) -> Result<Series> {
    let base = Series::one(order).add(&Series::one_plus_t_pow(lambda, order))?;
    base.pow(&Rational::from(-mu))
}

/// `sum over r_1 + ... + r_parts = total` of `prod binom(lambda, r_j + 1)`.
pub fn binomial_composition_sum(lambda: &Rational, total: usize, parts: usize) -> Rational {
    let mut acc = Rational::zero();
    for_each_weak_composition(total, parts, |comp| {
        acc += comp.iter().map(|&r| rat_binomial(lambda, r + 1)).product::<Rational>();
    });
    acc
}

/// `(1 + (1+t)^lambda)^{-mu}` from the explicit triple sum
/// `sum_i sum_j sum_{j_1+..+j_i=j} 2^{-(mu+i)} binom(-mu, i) prod binom(lambda, j_r+1) t^{j+i}`.
/// Independent of the series power used by [`peters_base_series`].
pub fn peters_base_series_expanded(lambda: &Rational, mu: i64, order: usize) -> Series {
    let neg_mu = Rational::from(-mu);
    Series::from_fn(order, |n| {
        (0..=n)
            .map(|i| {
                Rational::two_pow(-(mu + i as i64))
                    * rat_binomial(&neg_mu, i)
                    * binomial_composition_sum(lambda, n - i, i)
            })
            .sum()
    })
}

/// Peters polynomials `S_n(x; lambda, mu)` from `(1+(1+t)^lambda)^{-mu} (1+t)^x`.
pub fn peters_polys(lambda: &Rational, mu: i64, n_max: usize) -> Result<Vec<Polynomial>> {
    let pre = peters_base_series(lambda, mu, n_max)?;
    gf_expand(&GfRecipe::binomial(pre, 1), n_max)
}

pub fn peters_poly(lambda: &Rational, mu: i64, n: usize) -> Result<Polynomial> {
    peters_polys(lambda, mu, n).map(last)
}

/// Boole polynomials: Peters with `mu = 1`.
pub fn boole_polys(lambda: &Rational, n_max: usize) -> Result<Vec<Polynomial>> {
    peters_polys(lambda, 1, n_max)
}

/// Changhee polynomials: Peters with `lambda = mu = 1`.
pub fn changhee_polys(n_max: usize) -> Result<Vec<Polynomial>> {
    peters_polys(&Rational::one(), 1, n_max)
}

/// `Lif_k(sign * log(1+t))`.
pub fn lif_of_log(k: i64, sign: i32, order: usize) -> Result<Series> {
    let inner = Series::log_one_plus_t(order).scale(&Rational::from(sign.signum()));
    lif_series(k, order).compose(&inner)
}

/// Poly-Cauchy polynomials of the first kind, `Lif_k(log(1+t)) (1+t)^{-x}`.
pub fn poly_cauchy1_polys(k: i64, n_max: usize) -> Result<Vec<Polynomial>> {
    gf_expand(&GfRecipe::binomial(lif_of_log(k, 1, n_max)?, -1), n_max)
}

pub fn poly_cauchy1(k: i64, n: usize) -> Result<Polynomial> {
    poly_cauchy1_polys(k, n).map(last)
}

/// Poly-Cauchy polynomials of the second kind, `Lif_k(-log(1+t)) (1+t)^x`.
pub fn poly_cauchy2_polys(k: i64, n_max: usize) -> Result<Vec<Polynomial>> {
    gf_expand(&GfRecipe::binomial(lif_of_log(k, -1, n_max)?, 1), n_max)
}

pub fn poly_cauchy2(k: i64, n: usize) -> Result<Polynomial> {
    poly_cauchy2_polys(k, n).map(last)
}
