//! Umbral calculus over truncated series: series as linear functionals and
//! as operators on polynomials, Sheffer sequences and their structure
//! formulas, the transfer formula and connection constants.
//!
//! Pairing convention: a series with ordinary coefficients `c_k` acts as the
//! functional `<f(t) | x^n> = n! c_n`.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{binomial, factorial, Rational};
use crate::sequences::{gf_expand, GfRecipe};
use crate::series::Series;

/// A series viewed as a linear functional on polynomials of degree at most its order.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional(pub Series);

impl LinearFunctional {
    pub fn pair(&self, p: &Polynomial) -> Result<Rational> {
        pair(&self.0, p)
    }
}

/// `<f(t) | p(x)> = sum_n p_n n! c_n`.
pub fn pair(f: &Series, p: &Polynomial) -> Result<Rational> {
    if let Some(d) = p.degree() {
        if d > f.order() {
            return Err(Error::InsufficientOrder { degree: d, order: f.order() });
        }
    }
    Ok(p.coeffs()
        .iter()
        .enumerate()
        .map(|(n, a)| a * factorial(n) * &f.coeffs()[n])
        .sum())
}

/// `f(t) p(x) = sum_k c_k p^{(k)}(x)`: `t` acts as `d/dx`.
pub fn apply_series(f: &Series, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    let mut d = p.clone();
    for c in f.coeffs() {
        if d.is_zero() {
            break;
        }
        if !c.is_zero() {
            out = &out + &d.scale(c);
        }
        d = d.derivative();
    }
    out
}

/// `g` invertible, `f` delta, same truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct ShefferPair {
    g: Series,
    f: Series,
}

impl ShefferPair {
    pub fn new(g: Series, f: Series) -> Result<Self> {
        if g.order() != f.order() {
            return Err(Error::OrderMismatch(g.order(), f.order()));
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible);
        }
        if !f.is_delta() {
            return Err(Error::NotDelta);
        }
        Ok(ShefferPair { g, f })
    }

    /// The associated pair `(1, f)`.
    pub fn associated(f: Series) -> Result<Self> {
        let g = Series::one(f.order());
        Self::new(g, f)
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.f.order()
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n + 1 > self.order() {
            return Err(Error::InsufficientOrder { degree: n + 1, order: self.order() });
        }
        Ok(())
    }

    /// `(fbar, 1 / g(fbar))`.
    fn inverse_parts(&self) -> Result<(Series, Series)> {
        let fbar = self.f.comp_inverse()?;
        let g_fbar = self.g.compose(&fbar)?;
        Ok((fbar, g_fbar.reciprocal()?))
    }
}

/// `s_0 ..= s_N` from the generating function `e^{x fbar(t)} / g(fbar(t))`.
pub fn sheffer_polys(pair: &ShefferPair, n_max: usize) -> Result<Vec<Polynomial>> {
    pair.check_index(n_max)?;
    let (fbar, prefactor) = pair.inverse_parts()?;
    gf_expand(&GfRecipe::with_kernel(prefactor, fbar)?, n_max)
}

/// `s_n(x) = sum_j (1/j!) <fbar^j / g(fbar) | x^n> x^j`, built from
/// functional evaluations rather than the generating function.
pub fn sheffer_coeff_formula(pair: &ShefferPair, n: usize) -> Result<Polynomial> {
    pair.check_index(n)?;
    let (fbar, prefactor) = pair.inverse_parts()?;
    let xn = Polynomial::monomial(n, Rational::one());
    let mut power = prefactor;
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        coeffs.push(self::pair(&power, &xn)? / factorial(j));
        power = power.mul(&fbar)?;
    }
    Ok(Polynomial::new(coeffs))
}

/// `f(t) s_n(x)`, which equals `n s_{n-1}(x)`.
pub fn sheffer_lowering(pair: &ShefferPair, n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::Domain("lowering needs n >= 1".into()));
    }
    let s = sheffer_polys(pair, n)?;
    Ok(apply_series(pair.f(), &s[n]))
}

/// `s_{n+1} = (x - g'(t)/g(t)) (1/f'(t)) s_n`, applied to a given `s_n`.
pub fn raise(pair: &ShefferPair, s_n: &Polynomial) -> Result<Polynomial> {
    let degree = s_n.degree().unwrap_or(0);
    // f' and g' are exact through index order-1
    if degree + 2 > pair.order() {
        return Err(Error::InsufficientOrder { degree: degree + 2, order: pair.order() });
    }
    let g = pair.g();
    let c = g.constant_term().clone();
    // 1/g after factoring out the constant term
    let g_inv = g.scale(&c.recip()?).pow(&Rational::from(-1))?.scale(&c.recip()?);
    let log_deriv = g.derivative().mul(&g_inv)?;
    let inv_fprime = pair.f().derivative().reciprocal()?;
    let u = apply_series(&inv_fprime, s_n);
    Ok(&u.mul_x() - &apply_series(&log_deriv, &u))
}

/// `s_{n+1}` computed from `s_n` through the raising recurrence.
pub fn sheffer_raising(pair: &ShefferPair, n: usize) -> Result<Polynomial> {
    let s = sheffer_polys(pair, n)?;
    raise(pair, &s[n])
}

/// `sum_{l<n} binom(n, l) <fbar(t) | x^{n-l}> s_l(x)`, the x-derivative of `s_n`.
pub fn sheffer_derivative(pair: &ShefferPair, n: usize) -> Result<Polynomial> {
    let s = sheffer_polys(pair, n)?;
    let fbar = pair.f().comp_inverse()?;
    let mut out = Polynomial::zero();
    for (l, s_l) in s.iter().enumerate().take(n) {
        let w = self::pair(&fbar, &Polynomial::monomial(n - l, Rational::one()))?;
        out = &out + &s_l.scale(&(binomial(n as i64, l as i64) * w));
    }
    Ok(out)
}

/// `sum_j binom(n, j) s_j(x) P_{n-j}(y)` with `P_m = g(t) s_m`; equals `s_n(x + y)`.
pub fn binomial_expand(pair: &ShefferPair, n: usize, y: &Rational) -> Result<Polynomial> {
    let s = sheffer_polys(pair, n)?;
    let mut out = Polynomial::zero();
    for j in 0..=n {
        let p_y = apply_series(pair.g(), &s[n - j]).eval(y);
        out = &out + &s[j].scale(&(binomial(n as i64, j as i64) * p_y));
    }
    Ok(out)
}

/// Transfer formula: the sequence associated to `g` from the one associated to `f`,
/// `q_n = x (f/g)^n x^{-1} p_n`.
pub fn transfer(f: &Series, g: &Series, n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::Domain("transfer formula needs n >= 1".into()));
    }
    if !f.is_delta() || !g.is_delta() {
        return Err(Error::NotDelta);
    }
    let p = sheffer_polys(&ShefferPair::associated(f.clone())?, n)?.pop().expect("n+1 entries");
    let reduced = p.div_x()?;
    let ratio = f.div_t()?.mul(&g.div_t()?.reciprocal()?)?;
    Ok(apply_series(&ratio.pow_u(n as u64), &reduced).mul_x())
}

/// Row `n` of the connection matrix: `C_{n,m}` with `s_n = sum_{m<=n} C_{n,m} r_m`,
/// where `s ~ source` and `r ~ target`, via
/// `C_{n,m} = (1/m!) <h(fbar)/g(fbar) l(fbar)^m | x^n>`.
pub fn connection_constants(source: &ShefferPair, target: &ShefferPair, n: usize) -> Result<Vec<Rational>> {
    source.check_index(n)?;
    if source.order() != target.order() {
        return Err(Error::OrderMismatch(source.order(), target.order()));
    }
    let (fbar, inv_g_fbar) = source.inverse_parts()?;
    let h_fbar = target.g().compose(&fbar)?;
    let l_fbar = target.f().compose(&fbar)?;
    let xn = Polynomial::monomial(n, Rational::one());
    let mut acc = h_fbar.mul(&inv_g_fbar)?;
    let mut row = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(pair(&acc, &xn)? / factorial(m));
        acc = acc.mul(&l_fbar)?;
    }
    Ok(row)
}

/// Connection rows `0 ..= n_max`.
pub fn connection_matrix(source: &ShefferPair, target: &ShefferPair, n_max: usize) -> Result<Vec<Vec<Rational>>> {
    (0..=n_max).map(|n| connection_constants(source, target, n)).collect()
}

/// Both sides of `<f(t) | x p(x)> = <f'(t) | p(x)>`.
pub fn functional_xp_check(f: &Series, p: &Polynomial) -> Result<(Rational, Rational)> {
    let xp = p.mul_x();
    let lhs = pair(f, &xp)?;
    let rhs = pair(&f.derivative(), p)?;
    Ok((lhs, rhs))
}
