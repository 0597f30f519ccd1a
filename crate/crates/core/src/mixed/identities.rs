//! The identity registry. Each entry pairs a left-hand side drawn from the
//! generating-function oracle with a right-hand side transcribed from its
//! closed form, plus any single-token corrections worth testing when the
//! printed form disagrees with the oracle.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{BiPoly, Polynomial};
use crate::rational::{binomial, factorial, falling_factorial_scalar, rat_binomial, Rational};
use crate::sequences::{falling_poly, rising_poly, stirling1};

use super::report::{Aux, YValue};
use super::workbench::{Family, Workbench};
use super::MixedParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Suite {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    PolynomialInX,
    PolynomialInXY,
    Scalar,
}

/// Auxiliary parameter an identity needs besides `(k, lambda, mu)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuxDomain {
    None,
    /// Nonnegative order `s`.
    S,
    /// Shift `y`, either a point or symbolic.
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaRule {
    Any,
    MustBeOne,
    NotOne,
}

impl LambdaRule {
    pub fn admits(self, lambda: &Rational) -> bool {
        match self {
            LambdaRule::Any => true,
            LambdaRule::MustBeOne => lambda.is_one(),
            LambdaRule::NotOne => !lambda.is_one(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantKind {
    /// A single-token change to the printed right-hand side.
    Correction,
    /// The same sum laid out as in the intermediate derivation.
    AlternateReading,
}

/// Everything a side needs to evaluate.
pub struct Ctx<'a> {
    pub wb: &'a Workbench,
    pub params: &'a MixedParams,
    pub aux: &'a Aux,
}

/// One evaluated side of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Poly(Polynomial),
    Bi(BiPoly),
    /// Scalars indexed by an auxiliary integer, `(index, value)`.
    Scalars(Vec<(usize, Rational)>),
}

pub type SideFn = fn(&Ctx<'_>, usize) -> Result<Value>;

pub struct Variant {
    pub kind: VariantKind,
    pub printed: &'static str,
    pub replacement: &'static str,
    pub rhs: SideFn,
}

impl Variant {
    pub fn label(&self) -> String {
        match self.kind {
            VariantKind::Correction => format!("corrected: {} -> {}", self.printed, self.replacement),
            VariantKind::AlternateReading => format!("alternate reading: {} -> {}", self.printed, self.replacement),
        }
    }
}

pub struct IdentityDescriptor {
    pub id: &'static str,
    pub suite: Suite,
    pub kind: IdentityKind,
    pub statement: &'static str,
    pub min_n: usize,
    pub aux: AuxDomain,
    pub lambda: LambdaRule,
    /// Largest polynomial index touched at formula index `n` is `n + extra_order`.
    pub extra_order: usize,
    pub lhs: SideFn,
    pub rhs: SideFn,
    pub variants: &'static [Variant],
}

impl IdentityDescriptor {
    pub fn corrections(&self) -> impl Iterator<Item = (usize, &Variant)> {
        self.variants.iter().enumerate().filter(|(_, v)| v.kind == VariantKind::Correction)
    }
}

pub fn registry() -> &'static [IdentityDescriptor] {
    &REGISTRY
}

pub fn find(id: &str) -> Result<&'static IdentityDescriptor> {
    REGISTRY
        .iter()
        .find(|d| d.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

// ---------------------------------------------------------------------------
// Shared helpers

impl Ctx<'_> {
    fn k(&self) -> i64 {
        self.params.k
    }

    fn lambda(&self) -> &Rational {
        &self.params.lambda
    }

    fn mu(&self) -> i64 {
        self.params.mu
    }

    fn with(&self, k: i64, mu: i64) -> MixedParams {
        MixedParams::new(k, self.params.lambda.clone(), mu)
    }

    fn cp_at(&self, k: i64, mu: i64, n: usize) -> Result<Polynomial> {
        self.wb.poly(&Family::Cp(self.with(k, mu)), n)
    }

    fn cphat_at(&self, k: i64, mu: i64, n: usize) -> Result<Polynomial> {
        self.wb.poly(&Family::CpHat(self.with(k, mu)), n)
    }

    fn cp(&self, n: usize) -> Result<Polynomial> {
        self.cp_at(self.k(), self.mu(), n)
    }

    fn cphat(&self, n: usize) -> Result<Polynomial> {
        self.cphat_at(self.k(), self.mu(), n)
    }

    fn family(&self, hat: bool) -> Family {
        if hat {
            Family::CpHat(self.params.clone())
        } else {
            Family::Cp(self.params.clone())
        }
    }

    fn mixed(&self, hat: bool, n: usize) -> Result<Polynomial> {
        if hat {
            self.cphat(n)
        } else {
            self.cp(n)
        }
    }

    fn mixed_value(&self, hat: bool, n: usize, x: &Rational) -> Result<Rational> {
        self.wb.value(&self.family(hat), n, x)
    }

    fn s(&self) -> Result<u32> {
        self.aux.s.ok_or_else(|| Error::Domain("auxiliary order s is required".into()))
    }

    fn y(&self) -> Result<&YValue> {
        self.aux.y.as_ref().ok_or_else(|| Error::Domain("auxiliary shift y is required".into()))
    }
}

fn r(v: i64) -> Rational {
    Rational::from(v)
}

fn u(v: usize) -> Rational {
    Rational::from(v)
}

fn sign(e: usize) -> Rational {
    Rational::sign_pow(e as i64)
}

fn stir(n: usize, m: usize) -> Rational {
    stirling1(n as i64, m as i64)
}

fn binom(n: usize, k: usize) -> Rational {
    binomial(n as i64, k as i64)
}

/// `1 / base^k` for any integer `k`.
fn inv_pow(base: usize, k: i64) -> Rational {
    u(base).powi(-k).expect("base is positive")
}

fn from_coeffs(coeffs: Vec<Rational>) -> Value {
    Value::Poly(Polynomial::new(coeffs))
}

fn oracle_cp(c: &Ctx<'_>, n: usize) -> Result<Value> {
    c.cp(n).map(Value::Poly)
}

fn oracle_cphat(c: &Ctx<'_>, n: usize) -> Result<Value> {
    c.cphat(n).map(Value::Poly)
}

// ---------------------------------------------------------------------------
// Convolutions with Peters and poly-Cauchy

fn peters(c: &Ctx<'_>) -> Family {
    Family::Peters { lambda: c.lambda().clone(), mu: c.mu() }
}

fn t1_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let mut acc = Polynomial::zero();
    for l in 0..=n {
        let s0 = c.wb.value(&peters(c), n - l, &Rational::zero())?;
        acc = &acc + &c.wb.poly(&Family::PolyCauchy1(c.k()), l)?.scale(&(binom(n, l) * s0));
    }
    Ok(Value::Poly(acc))
}

fn t2_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let mut acc = Polynomial::zero();
    for l in 0..=n {
        let cn = c.wb.value(&Family::PolyCauchy1(c.k()), n - l, &Rational::zero())?;
        acc = &acc + &c.wb.poly(&peters(c), l)?.reflect().scale(&(binom(n, l) * cn));
    }
    Ok(Value::Poly(acc))
}

fn r34_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let mut acc = Polynomial::zero();
    for l in 0..=n {
        let s0 = c.wb.value(&peters(c), n - l, &Rational::zero())?;
        acc = &acc + &c.wb.poly(&Family::PolyCauchy2(c.k()), l)?.scale(&(binom(n, l) * s0));
    }
    Ok(Value::Poly(acc))
}

fn r35_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let mut acc = Polynomial::zero();
    for l in 0..=n {
        let cn = c.wb.value(&Family::PolyCauchy2(c.k()), n - l, &Rational::zero())?;
        acc = &acc + &c.wb.poly(&peters(c), l)?.scale(&(binom(n, l) * cn));
    }
    Ok(Value::Poly(acc))
}

// ---------------------------------------------------------------------------
// Explicit multi-index sums

fn t3_core(c: &Ctx<'_>, n: usize, hat: bool) -> Result<Value> {
    let k = c.k();
    let neg_mu = r(-c.mu());
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = Rational::zero();
        for m in 0..=n - j {
            let m_weight = inv_pow(m + 1, k) / factorial(m) * if hat { sign(m) } else { Rational::one() };
            for l in 0..=n - j - m {
                let lw = &m_weight * factorial(m + j) / factorial(l + m + j) * stir(l + m + j, m + j);
                if lw.is_zero() {
                    continue;
                }
                for i in 0..=n - j - m - l {
                    let bc = c.wb.binom_sum(c.lambda(), n - j - m - l - i, i);
                    if bc.is_zero() {
                        continue;
                    }
                    acc += &lw * Rational::two_pow(-(i as i64)) * rat_binomial(&neg_mu, i) * bc;
                }
            }
        }
        let outer = Rational::two_pow(-c.mu()) * factorial(n) / factorial(j) * if hat { Rational::one() } else { sign(j) };
        coeffs.push(outer * acc);
    }
    Ok(from_coeffs(coeffs))
}

fn t3_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t3_core(c, n, false)
}

fn r38_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t3_core(c, n, true)
}

#[derive(Clone, Copy)]
enum BernoulliOrder {
    N,
    M,
}

/// Shared body of the transfer-formula expansions. The powers of lambda are
/// combined into `lambda^{n-r-l-m}`, which is never negative.
fn t4_core(c: &Ctx<'_>, n: usize, hat: bool, bern: BernoulliOrder) -> Result<Value> {
    let k = c.k();
    let neg_mu = r(-c.mu());
    let n_minus_one = r(n as i64 - 1);
    let mut coeffs = Vec::with_capacity(n + 1);
    for rr in 0..=n {
        let mut acc = Rational::zero();
        for l in 0..=n - rr {
            let bl = rat_binomial(&n_minus_one, l);
            for m in 0..=n - rr - l {
                let order = match bern {
                    BernoulliOrder::N => n,
                    BernoulliOrder::M => m,
                };
                let b = c.wb.value(&Family::Bernoulli(order as u32), l, &Rational::zero())?;
                let q = n - rr - l - m;
                let lm = &bl * binom(n - l, m) * binom(n - l - m, rr) * b * inv_pow(m + 1, k)
                    * c.lambda().pow(q as u32)
                    * if hat { sign(m) } else { Rational::one() };
                if lm.is_zero() {
                    continue;
                }
                for i in 0..=q {
                    let mc = c.wb.multinom_sum(q, i);
                    if mc.is_zero() {
                        continue;
                    }
                    acc += &lm * Rational::two_pow(-(i as i64)) * rat_binomial(&neg_mu, i) * mc;
                }
            }
        }
        let outer = Rational::two_pow(-c.mu()) * if hat { Rational::one() } else { sign(rr) };
        coeffs.push(outer * acc);
    }
    Ok(from_coeffs(coeffs))
}

fn t4_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t4_core(c, n, false, BernoulliOrder::N)
}

/// The intermediate layout: `l` up to `n`, the innermost visible index
/// `j <= n-l-m-i` read as the power of `x`, and the sign `(-1)^n (-1)^{n-j}`.
fn t4_alternate(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let k = c.k();
    let neg_mu = r(-c.mu());
    let n_minus_one = r(n as i64 - 1);
    let mut coeffs = vec![Rational::zero(); n + 1];
    for l in 0..=n {
        let b = c.wb.value(&Family::Bernoulli(n as u32), l, &Rational::zero())?;
        let bl = rat_binomial(&n_minus_one, l) * b;
        for m in 0..=n - l {
            let lm = &bl * binom(n - l, m) * inv_pow(m + 1, k);
            for i in 0..=n - l - m {
                let iw = &lm * Rational::two_pow(-c.mu() - i as i64) * rat_binomial(&neg_mu, i);
                for (j, slot) in coeffs.iter_mut().enumerate().take(n - l - m - i + 1) {
                    let q = n - l - m - j;
                    let term = &iw
                        * sign(n)
                        * sign(n - j)
                        * c.lambda().pow(q as u32)
                        * c.wb.multinom_sum(q, i)
                        * binom(n - l - m, j);
                    *slot += term;
                }
            }
        }
    }
    Ok(from_coeffs(coeffs))
}

fn r43_printed(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t4_core(c, n, true, BernoulliOrder::M)
}

fn r43_corrected(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t4_core(c, n, true, BernoulliOrder::N)
}

fn t5_core(c: &Ctx<'_>, n: usize, hat: bool) -> Result<Value> {
    let k = c.k();
    let neg_mu = r(-c.mu());
    let mut coeffs = Vec::with_capacity(n + 1);
    for rr in 0..=n {
        let mut acc = Rational::zero();
        for l in rr..=n {
            let s = stir(n, l);
            if s.is_zero() {
                continue;
            }
            for m in 0..=l - rr {
                let q = l - m - rr;
                let lm = &s * binom(l, m) * binom(l - m, rr) * inv_pow(m + 1, k)
                    * c.lambda().pow(q as u32)
                    * if hat { sign(m) } else { Rational::one() };
                if lm.is_zero() {
                    continue;
                }
                for i in 0..=q {
                    let mc = c.wb.multinom_sum(q, i);
                    if mc.is_zero() {
                        continue;
                    }
                    acc += &lm * Rational::two_pow(-(i as i64)) * rat_binomial(&neg_mu, i) * mc;
                }
            }
        }
        let outer = Rational::two_pow(-c.mu()) * if hat { Rational::one() } else { sign(rr) };
        coeffs.push(outer * acc);
    }
    Ok(from_coeffs(coeffs))
}

fn t5_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t5_core(c, n, false)
}

fn r51_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t5_core(c, n, true)
}

// ---------------------------------------------------------------------------
// Coefficients from the mixed numbers

fn t6_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let zero = Rational::zero();
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = Rational::zero();
        for m in 0..=n {
            acc += binom(n, m) * stir(n - m, j) * c.mixed_value(false, m, &zero)?;
        }
        coeffs.push(sign(j) * acc);
    }
    Ok(from_coeffs(coeffs))
}

/// `inner_index(n, m)` picks the subscript of the hat number inside the sum.
fn r54_core(c: &Ctx<'_>, n: usize, inner_index: fn(usize, usize) -> usize) -> Result<Value> {
    let zero = Rational::zero();
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = Rational::zero();
        for m in 0..=n {
            acc += binom(n, m) * stir(n - m, j) * c.mixed_value(true, inner_index(n, m), &zero)?;
        }
        coeffs.push(acc);
    }
    Ok(from_coeffs(coeffs))
}

fn r54_printed(c: &Ctx<'_>, n: usize) -> Result<Value> {
    r54_core(c, n, |n, _| n)
}

fn r54_corrected(c: &Ctx<'_>, n: usize) -> Result<Value> {
    r54_core(c, n, |_, m| m)
}

// ---------------------------------------------------------------------------
// Addition formulas

fn add_lhs(c: &Ctx<'_>, n: usize, hat: bool) -> Result<Value> {
    let p = c.mixed(hat, n)?;
    Ok(match c.y()? {
        YValue::Point(y) => Value::Poly(p.shift(y)),
        YValue::Symbolic => Value::Bi(BiPoly::shifted(&p)),
    })
}

fn add_rhs(c: &Ctx<'_>, n: usize, hat: bool) -> Result<Value> {
    let y = c.y()?.clone();
    let mut point = Polynomial::zero();
    let mut bi = BiPoly::default();
    for j in 0..=n {
        let (weight, factor) = if hat {
            (binom(n, j), falling_poly(j))
        } else {
            (sign(j) * binom(n, j), rising_poly(j))
        };
        let p = c.mixed(hat, n - j)?;
        match &y {
            YValue::Point(y) => point = &point + &p.scale(&(&weight * factor.eval(y))),
            YValue::Symbolic => {
                for (e, fc) in factor.coeffs().iter().enumerate() {
                    bi.add_term(e, &(&weight * fc), &p);
                }
            }
        }
    }
    Ok(match y {
        YValue::Point(_) => Value::Poly(point),
        YValue::Symbolic => Value::Bi(bi),
    })
}

fn add55_lhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    add_lhs(c, n, false)
}

fn add55_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    add_rhs(c, n, false)
}

fn add56_lhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    add_lhs(c, n, true)
}

fn add56_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    add_rhs(c, n, true)
}

// ---------------------------------------------------------------------------
// Difference equations and recurrences

fn lowered(c: &Ctx<'_>, n: usize, hat: bool) -> Result<Value> {
    if n == 0 {
        return Ok(Value::Poly(Polynomial::zero()));
    }
    Ok(Value::Poly(c.mixed(hat, n - 1)?.scale(&u(n))))
}

fn t7_lhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let p = c.cp(n)?;
    Ok(Value::Poly(&p.shift(&r(-1)) - &p))
}

fn t7_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    lowered(c, n, false)
}

fn r59_lhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let p = c.cphat(n)?;
    Ok(Value::Poly(&p.shift(&Rational::one()) - &p))
}

fn r59_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    lowered(c, n, true)
}

fn rec60_lhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    oracle_cp(c, n + 1)
}

fn rec61_lhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    oracle_cphat(c, n + 1)
}

/// The middle sum `mu Σ_m (-1/2)^{m+1} (n)_m P_{n-m}(x)` shared by both recurrences.
fn rec_middle(c: &Ctx<'_>, n: usize, hat: bool) -> Result<Polynomial> {
    let minus_half = Rational::frac(-1, 2);
    let nq = u(n);
    let mut acc = Polynomial::zero();
    for m in 0..=n {
        let w = r(c.mu()) * minus_half.pow(m as u32 + 1) * falling_factorial_scalar(&nq, m);
        acc = &acc + &c.mixed(hat, n - m)?.scale(&w);
    }
    Ok(acc)
}

/// The final sum of the recurrences, expanded in powers of `(x + shift)`.
fn rec_tail(c: &Ctx<'_>, n: usize, hat: bool) -> Polynomial {
    let k = c.k();
    let neg_mu = r(-c.mu());
    let shift = if hat { r(-1) } else { Rational::one() };
    let mut acc = Polynomial::zero();
    for rr in 0..=n {
        let mut coeff = Rational::zero();
        for m in rr..=n {
            let s = stir(n, m);
            if s.is_zero() {
                continue;
            }
            for l in rr..=m {
                let lw = &s * binom(m, l) * binom(l, rr) * inv_pow(m - l + 2, k)
                    * if hat { sign(m - l) } else { Rational::one() };
                for i in 0..=l - rr {
                    let mc = c.wb.multinom_sum(l - rr, i);
                    if mc.is_zero() {
                        continue;
                    }
                    coeff += &lw * Rational::two_pow(-(i as i64)) * rat_binomial(&neg_mu, i) * mc;
                }
            }
        }
        let outer = Rational::two_pow(-c.mu()) * if hat { r(-1) } else { sign(rr) };
        acc = &acc + &Polynomial::monomial(rr, outer * coeff).shift(&shift);
    }
    acc
}

fn rec60_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let first = -&c.cp(n)?.shift(&Rational::one()).mul_x();
    Ok(Value::Poly(&(&first + &rec_middle(c, n, false)?) + &rec_tail(c, n, false)))
}

fn rec61_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let first = c.cphat(n)?.shift(&r(-1)).mul_x();
    Ok(Value::Poly(&(&first + &rec_middle(c, n, true)?) + &rec_tail(c, n, true)))
}

fn t8_core(c: &Ctx<'_>, n: usize, hat: bool) -> Result<Value> {
    let lam = c.lambda();
    let mu_lambda = r(c.mu()) * lam;
    let (first, second) = if hat {
        let a = c.cphat_at(c.k(), c.mu() + 1, n - 1)?.shift(&(lam - Rational::one()));
        let b = c.cphat(n - 1)?.shift(&r(-1)).mul_x();
        (a, b)
    } else {
        let a = c.cp_at(c.k(), c.mu() + 1, n - 1)?.shift(&(Rational::one() - lam));
        let b = -&c.cp(n - 1)?.shift(&Rational::one()).mul_x();
        (a, b)
    };
    let mut acc = &first.scale(&-&mu_lambda) + &second;
    let mut tail = Polynomial::zero();
    for l in 0..n {
        let ch = c.wb.value(&Family::Cauchy2(1), n - 1 - l, &Rational::zero())?;
        let diff = if hat {
            &c.cphat_at(c.k() - 1, c.mu(), l + 1)? - &c.cphat(l + 1)?
        } else {
            &c.cp_at(c.k() - 1, c.mu(), l + 1)? - &c.cp(l + 1)?
        };
        tail = &tail + &diff.scale(&(binom(n, l + 1) * ch));
    }
    acc = &acc + &tail.scale(&u(n).recip()?);
    Ok(Value::Poly(acc))
}

fn t8_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t8_core(c, n, false)
}

fn r64_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t8_core(c, n, true)
}

// ---------------------------------------------------------------------------
// Derivatives

fn d65_lhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    Ok(Value::Poly(c.cp(n)?.derivative()))
}

fn d66_lhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    Ok(Value::Poly(c.cphat(n)?.derivative()))
}

fn derivative_rhs(c: &Ctx<'_>, n: usize, hat: bool) -> Result<Value> {
    let mut acc = Polynomial::zero();
    for l in 0..n {
        let s = if hat { sign(n - l - 1) } else { sign(n - l) };
        let w = factorial(n) * s / (u(n - l) * factorial(l));
        acc = &acc + &c.mixed(hat, l)?.scale(&w);
    }
    Ok(Value::Poly(acc))
}

fn d65_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    derivative_rhs(c, n, false)
}

fn d66_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    derivative_rhs(c, n, true)
}

// ---------------------------------------------------------------------------
// Scalar identities in (n, m), 1 <= m <= n-1

fn t9_lhs_core(c: &Ctx<'_>, n: usize, hat: bool) -> Result<Value> {
    let zero = Rational::zero();
    let mut out = Vec::new();
    for m in 1..n {
        let mut acc = Rational::zero();
        for l in 0..=n - m {
            acc += binom(n, l) * stir(n - l, m) * c.mixed_value(hat, l, &zero)?;
        }
        out.push((m, u(m) * acc));
    }
    Ok(Value::Scalars(out))
}

fn t9_lhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t9_lhs_core(c, n, true)
}

fn r9_lhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t9_lhs_core(c, n, false)
}

/// Arguments at which the three right-hand sums evaluate the mixed numbers.
struct T9Points {
    shifted: Rational,
    lowered_k: Rational,
    same_k: Rational,
}

fn t9_rhs_core(c: &Ctx<'_>, n: usize, hat: bool, pts: T9Points) -> Result<Value> {
    let next_mu = Family::from_hat(hat, c.with(c.k(), c.mu() + 1));
    let prev_k = Family::from_hat(hat, c.with(c.k() - 1, c.mu()));
    let same = c.family(hat);
    let mu_lambda = r(c.mu()) * c.lambda();
    let mut out = Vec::new();
    for m in 1..n {
        let mut first = Rational::zero();
        for l in 0..=n - 1 - m {
            first += binom(n - 1, l) * stir(n - 1 - l, m) * c.wb.value(&next_mu, l, &pts.shifted)?;
        }
        let mut second = Rational::zero();
        let mut third = Rational::zero();
        for l in 0..=n - m {
            let w = binom(n - 1, l) * stir(n - 1 - l, m - 1);
            if w.is_zero() {
                continue;
            }
            second += &w * c.wb.value(&prev_k, l, &pts.lowered_k)?;
            third += &w * c.wb.value(&same, l, &pts.same_k)?;
        }
        let total = -(&mu_lambda * u(m) * first) + second + u(m - 1) * third;
        out.push((m, total));
    }
    Ok(Value::Scalars(out))
}

fn t9_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let pts = T9Points { shifted: c.lambda() - Rational::one(), lowered_k: r(-1), same_k: r(-1) };
    t9_rhs_core(c, n, true, pts)
}

fn r9_printed(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let pts = T9Points { shifted: Rational::one() - c.lambda(), lowered_k: Rational::one(), same_k: r(-1) };
    t9_rhs_core(c, n, false, pts)
}

fn r9_corrected(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let pts = T9Points { shifted: Rational::one() - c.lambda(), lowered_k: Rational::one(), same_k: Rational::one() };
    t9_rhs_core(c, n, false, pts)
}

impl Family {
    fn from_hat(hat: bool, p: MixedParams) -> Family {
        if hat {
            Family::CpHat(p)
        } else {
            Family::Cp(p)
        }
    }
}

// ---------------------------------------------------------------------------
// Expansions over other Sheffer bases

/// `Σ_m coeff(m) * basis(m)`, where `basis_index(n, m)` picks the basis subscript.
fn expand_over(
    c: &Ctx<'_>,
    n: usize,
    basis: &Family,
    basis_index: fn(usize, usize) -> usize,
    coeff: impl Fn(usize) -> Result<Rational>,
) -> Result<Value> {
    let mut acc = Polynomial::zero();
    for m in 0..=n {
        let w = coeff(m)?;
        if w.is_zero() {
            continue;
        }
        acc = &acc + &c.wb.poly(basis, basis_index(n, m))?.scale(&w);
    }
    Ok(Value::Poly(acc))
}

fn t10_core(c: &Ctx<'_>, n: usize, hat: bool, basis_index: fn(usize, usize) -> usize) -> Result<Value> {
    let s = c.s()?;
    let sq = u(s as usize);
    let cauchy = if hat { Family::Cauchy2(s) } else { Family::Cauchy1(s) };
    let zero = Rational::zero();
    expand_over(c, n, &Family::Bernoulli(s), basis_index, |m| {
        let mut acc = Rational::zero();
        for l in 0..=n - m {
            let w = binom(n, l) * stir(n - l, m);
            if w.is_zero() {
                continue;
            }
            for i in 0..=l {
                acc += &w * binom(l, i) * c.wb.value(&cauchy, i, &zero)? * c.mixed_value(hat, l - i, &sq)?;
            }
        }
        Ok(if hat { acc } else { sign(m) * acc })
    })
}

fn t10_printed(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t10_core(c, n, false, |n, _| n)
}

fn t10_corrected(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t10_core(c, n, false, |_, m| m)
}

fn r73_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t10_core(c, n, true, |_, m| m)
}

fn t11_core(c: &Ctx<'_>, n: usize, hat: bool) -> Result<Value> {
    let s = c.s()?;
    let lam = c.lambda();
    let one = Rational::one();
    let (ratio, at) = if hat {
        ((&one - lam).recip()?, Rational::zero())
    } else {
        (lam * (lam - &one).recip()?, u(s as usize))
    };
    let basis = Family::FrobeniusEuler { order: s, lambda: lam.clone() };
    expand_over(c, n, &basis, |_, m| m, |m| {
        let mut acc = Rational::zero();
        for l in 0..=n - m {
            let w = binom(n, l) * stir(n - l, m);
            if w.is_zero() {
                continue;
            }
            for i in 0..=(s as usize).min(l) {
                acc += &w
                    * binom(s as usize, i)
                    * falling_factorial_scalar(&u(l), i)
                    * ratio.pow(i as u32)
                    * c.mixed_value(hat, l - i, &at)?;
            }
        }
        Ok(if hat { acc } else { sign(m) * acc })
    })
}

fn t11_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t11_core(c, n, false)
}

fn r11_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    t11_core(c, n, true)
}

fn t12_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let zero = Rational::zero();
    let mut acc = Polynomial::zero();
    for m in 0..=n {
        let w = sign(m) * binom(n, m) * c.mixed_value(false, n - m, &zero)?;
        acc = &acc + &rising_poly(m).scale(&w);
    }
    Ok(Value::Poly(acc))
}

fn r78_rhs(c: &Ctx<'_>, n: usize) -> Result<Value> {
    let zero = Rational::zero();
    let mut acc = Polynomial::zero();
    for m in 0..=n {
        let w = binom(n, m) * c.mixed_value(true, n - m, &zero)?;
        acc = &acc + &falling_poly(m).scale(&w);
    }
    Ok(Value::Poly(acc))
}

// ---------------------------------------------------------------------------

const NONE: &[Variant] = &[];

macro_rules! identity {
    ($id:literal, $suite:ident, $kind:ident, $stmt:literal, $lhs:expr, $rhs:expr) => {
        identity!($id, $suite, $kind, $stmt, $lhs, $rhs, min_n = 0, aux = None, lambda = Any, extra = 0, variants = NONE)
    };
    ($id:literal, $suite:ident, $kind:ident, $stmt:literal, $lhs:expr, $rhs:expr,
     min_n = $min:expr, aux = $aux:ident, lambda = $lam:ident, extra = $extra:expr, variants = $v:expr) => {
        IdentityDescriptor {
            id: $id,
            suite: Suite::$suite,
            kind: IdentityKind::$kind,
            statement: $stmt,
            min_n: $min,
            aux: AuxDomain::$aux,
            lambda: LambdaRule::$lam,
            extra_order: $extra,
            lhs: $lhs,
            rhs: $rhs,
            variants: $v,
        }
    };
}

static REGISTRY: [IdentityDescriptor; 30] = [
    identity!("T1", A, PolynomialInX,
        "CP_n(x) = sum_l binom(n,l) S_{n-l}(0) C_l^(k)(x)", oracle_cp, t1_rhs),
    identity!("T2", A, PolynomialInX,
        "CP_n(x) = sum_l binom(n,l) C_{n-l}^(k) S_l(-x)", oracle_cp, t2_rhs),
    identity!("R34", A, PolynomialInX,
        "CPhat_n(x) = sum_l binom(n,l) S_{n-l}(0) Chat_l^(k)(x)", oracle_cphat, r34_rhs),
    identity!("R35", A, PolynomialInX,
        "CPhat_n(x) = sum_l binom(n,l) Chat_{n-l}^(k) S_l(x)", oracle_cphat, r35_rhs),
    identity!("T3", B, PolynomialInX,
        "CP_n(x) = 2^-mu n! sum_j (-1)^j/j! { sum_{m,l,i} sum_{r_1+..+r_i=n-j-m-l-i} 2^-i/(m!(m+1)^k) \
         (m+j)!/(l+m+j)! binom(-mu,i) prod binom(lambda,r_q+1) S1(l+m+j,m+j) } x^j",
        oracle_cp, t3_rhs),
    identity!("R38", B, PolynomialInX,
        "CPhat_n(x) = 2^-mu n! sum_j 1/j! { sum_{m,l,i} sum_{r_1+..+r_i=n-j-m-l-i} 2^-i (-1)^m/(m!(m+1)^k) \
         (m+j)!/(l+m+j)! binom(-mu,i) prod binom(lambda,r_q+1) S1(l+m+j,m+j) } x^j",
        oracle_cphat, r38_rhs),
    identity!("T4", B, PolynomialInX,
        "CP_n(x) = lambda^n/2^mu sum_r (-1/lambda)^r { sum_{l,m,i} sum_{j_1+..+j_i=n-r-l-m-i} 2^-i lambda^(-l-m)/(m+1)^k \
         binom(n-1,l) binom(n-l,m) binom(-mu,i) multinom(n-r-l-m; j_q+1) binom(n-l-m,r) B_l^(n) } x^r",
        oracle_cp, t4_rhs, min_n = 0, aux = None, lambda = Any, extra = 0, variants = &[Variant {
            kind: VariantKind::AlternateReading,
            printed: "sum_{r=0}^{n} (-1/lambda)^r ... x^r",
            replacement: "(-1)^n sum_{l=0}^{n} ... sum_{j=0}^{n-l-m-i} (-1)^{n-j} ... x^j",
            rhs: t4_alternate,
        }]),
    identity!("R43", B, PolynomialInX,
        "CPhat_n(x) = lambda^n/2^mu sum_r lambda^-r { sum_{l,m,i} sum_{j_1+..+j_i=n-r-l-m-i} (-1)^m 2^-i lambda^(-l-m)/(m+1)^k \
         binom(n-1,l) binom(n-l,m) binom(-mu,i) multinom(n-r-l-m; j_q+1) binom(n-l-m,r) B_l^(m) } x^r",
        oracle_cphat, r43_printed, min_n = 0, aux = None, lambda = Any, extra = 0, variants = &[Variant {
            kind: VariantKind::Correction,
            printed: "B_l^(m)",
            replacement: "B_l^(n)",
            rhs: r43_corrected,
        }]),
    identity!("T5", B, PolynomialInX,
        "CP_n(x) = 2^-mu sum_r (-1/lambda)^r { sum_{l=r}^n sum_m sum_i sum_{j_1+..+j_i=l-r-m-i} 2^-i lambda^(l-m)/(m+1)^k \
         binom(l,m) binom(-mu,i) multinom(l-m-r; j_q+1) binom(l-m,r) S1(n,l) } x^r",
        oracle_cp, t5_rhs),
    identity!("R51", B, PolynomialInX,
        "CPhat_n(x) = 2^-mu sum_r lambda^-r { sum_{l=r}^n sum_m sum_i sum_{j_1+..+j_i=l-r-m-i} (-1)^m 2^-i lambda^(l-m)/(m+1)^k \
         binom(l,m) binom(-mu,i) multinom(l-m-r; j_q+1) binom(l-m,r) S1(n,l) } x^r",
        oracle_cphat, r51_rhs),
    identity!("T6", A, PolynomialInX,
        "CP_n(x) = sum_j (-1)^j { sum_m binom(n,m) S1(n-m,j) CP_m(0) } x^j", oracle_cp, t6_rhs),
    identity!("R54", B, PolynomialInX,
        "CPhat_n(x) = sum_j { sum_m binom(n,m) S1(n-m,j) CPhat_n(0) } x^j",
        oracle_cphat, r54_printed, min_n = 0, aux = None, lambda = Any, extra = 0, variants = &[Variant {
            kind: VariantKind::Correction,
            printed: "CPhat_n(0)",
            replacement: "CPhat_m(0)",
            rhs: r54_corrected,
        }]),
    identity!("ADD55", A, PolynomialInXY,
        "CP_n(x+y) = sum_j (-1)^j binom(n,j) CP_{n-j}(x) y^(j)",
        add55_lhs, add55_rhs, min_n = 0, aux = Y, lambda = Any, extra = 0, variants = NONE),
    identity!("ADD56", A, PolynomialInXY,
        "CPhat_n(x+y) = sum_j binom(n,j) CPhat_{n-j}(x) (y)_j",
        add56_lhs, add56_rhs, min_n = 0, aux = Y, lambda = Any, extra = 0, variants = NONE),
    identity!("T7", A, PolynomialInX,
        "CP_n(x-1) - CP_n(x) = n CP_{n-1}(x)", t7_lhs, t7_rhs),
    identity!("R59", A, PolynomialInX,
        "CPhat_n(x+1) - CPhat_n(x) = n CPhat_{n-1}(x)", r59_lhs, r59_rhs),
    identity!("REC60", B, PolynomialInX,
        "CP_{n+1}(x;1,mu) = -x CP_n(x+1) + mu sum_m (-1/2)^(m+1) (n)_m CP_{n-m}(x) + 2^-mu sum_r (-1)^r \
         { sum_{m=r}^n sum_{l=r}^m sum_i sum_{j_1+..+j_i=l-i-r} 2^-i/(m-l+2)^k binom(m,l) binom(-mu,i) \
         multinom(l-r; j_q+1) binom(l,r) S1(n,m) } (x+1)^r",
        rec60_lhs, rec60_rhs, min_n = 0, aux = None, lambda = MustBeOne, extra = 1, variants = NONE),
    identity!("REC61", B, PolynomialInX,
        "CPhat_{n+1}(x;1,mu) = x CPhat_n(x-1) + mu sum_m (-1/2)^(m+1) (n)_m CPhat_{n-m}(x) - 2^-mu sum_r \
         { sum_{m=r}^n sum_{l=r}^m sum_i sum_{j_1+..+j_i=l-i-r} (-1)^(m-l) 2^-i/(m-l+2)^k binom(m,l) binom(-mu,i) \
         multinom(l-r; j_q+1) binom(l,r) S1(n,m) } (x-1)^r",
        rec61_lhs, rec61_rhs, min_n = 0, aux = None, lambda = MustBeOne, extra = 1, variants = NONE),
    identity!("T8", B, PolynomialInX,
        "CP_n(x) = -mu lambda CP_{n-1}(x-lambda+1; lambda, mu+1) - x CP_{n-1}(x+1) \
         + 1/n sum_{l<n} binom(n,l+1) Chat_{n-1-l} (CP_{l+1}^(k-1)(x) - CP_{l+1}^(k)(x)), Chat_i = Chat_i^(1)(0)",
        oracle_cp, t8_rhs, min_n = 1, aux = None, lambda = Any, extra = 0, variants = NONE),
    identity!("R64", B, PolynomialInX,
        "CPhat_n(x) = -mu lambda CPhat_{n-1}(x+lambda-1; lambda, mu+1) + x CPhat_{n-1}(x-1) \
         + 1/n sum_{l<n} binom(n,l+1) Chat_{n-1-l} (CPhat_{l+1}^(k-1)(x) - CPhat_{l+1}^(k)(x))",
        oracle_cphat, r64_rhs, min_n = 1, aux = None, lambda = Any, extra = 0, variants = NONE),
    identity!("D65", A, PolynomialInX,
        "d/dx CP_n(x) = n! sum_{l<n} (-1)^(n-l)/((n-l) l!) CP_l(x)", d65_lhs, d65_rhs),
    identity!("D66", A, PolynomialInX,
        "d/dx CPhat_n(x) = n! sum_{l<n} (-1)^(n-l-1)/((n-l) l!) CPhat_l(x)", d66_lhs, d66_rhs),
    identity!("T9", B, Scalar,
        "m sum_{l<=n-m} binom(n,l) S1(n-l,m) CPhat_l(0) = -mu lambda m sum_{l<=n-1-m} binom(n-1,l) S1(n-1-l,m) \
         CPhat_l(lambda-1; lambda, mu+1) + sum_{l<=n-m} binom(n-1,l) S1(n-1-l,m-1) CPhat_l^(k-1)(-1) \
         + (m-1) sum_{l<=n-m} binom(n-1,l) S1(n-1-l,m-1) CPhat_l^(k)(-1), 1 <= m <= n-1",
        t9_lhs, t9_rhs, min_n = 2, aux = None, lambda = Any, extra = 0, variants = NONE),
    identity!("R9", B, Scalar,
        "m sum_{l<=n-m} binom(n,l) S1(n-l,m) CP_l(0) = -mu lambda m sum_{l<=n-1-m} binom(n-1,l) S1(n-1-l,m) \
         CP_l(1-lambda; lambda, mu+1) + sum_{l<=n-m} binom(n-1,l) S1(n-1-l,m-1) CP_l^(k-1)(1) \
         + (m-1) sum_{l<=n-m} binom(n-1,l) S1(n-1-l,m-1) CP_l^(k)(-1), 1 <= m <= n-1",
        r9_lhs, r9_printed, min_n = 2, aux = None, lambda = Any, extra = 0, variants = &[Variant {
            kind: VariantKind::Correction,
            printed: "CP_l^(k)(-1)",
            replacement: "CP_l^(k)(1)",
            rhs: r9_corrected,
        }]),
    identity!("T10", B, PolynomialInX,
        "CP_n(x) = sum_m (-1)^m { sum_{l<=n-m} sum_{i<=l} binom(n,l) binom(l,i) S1(n-l,m) C_i^(s) CP_{l-i}(s) } B_n^(s)(x)",
        oracle_cp, t10_printed, min_n = 0, aux = S, lambda = Any, extra = 0, variants = &[Variant {
            kind: VariantKind::Correction,
            printed: "B_n^(s)(x)",
            replacement: "B_m^(s)(x)",
            rhs: t10_corrected,
        }]),
    identity!("R73", B, PolynomialInX,
        "CPhat_n(x) = sum_m { sum_{l<=n-m} sum_{i<=l} binom(n,l) binom(l,i) S1(n-l,m) Chat_i^(s) CPhat_{l-i}(s) } B_m^(s)(x)",
        oracle_cphat, r73_rhs, min_n = 0, aux = S, lambda = Any, extra = 0, variants = NONE),
    identity!("T11", B, PolynomialInX,
        "CP_n(x) = sum_m (-1)^m { sum_{l<=n-m} sum_{i<=min(s,l)} binom(n,l) binom(s,i) (l)_i (lambda/(lambda-1))^i \
         S1(n-l,m) CP_{l-i}(s) } H_m^(s)(x; lambda)",
        oracle_cp, t11_rhs, min_n = 0, aux = S, lambda = NotOne, extra = 0, variants = NONE),
    identity!("R11", B, PolynomialInX,
        "CPhat_n(x) = sum_m { sum_{l<=n-m} sum_{i<=min(s,l)} binom(n,l) binom(s,i) (l)_i (1/(1-lambda))^i \
         S1(n-l,m) CPhat_{l-i}(0) } H_m^(s)(x; lambda)",
        oracle_cphat, r11_rhs, min_n = 0, aux = S, lambda = NotOne, extra = 0, variants = NONE),
    identity!("T12", A, PolynomialInX,
        "CP_n(x) = sum_m (-1)^m binom(n,m) CP_{n-m}(0) x^(m)", oracle_cp, t12_rhs),
    identity!("R78", A, PolynomialInX,
        "CPhat_n(x) = sum_m binom(n,m) CPhat_{n-m}(0) (x)_m", oracle_cphat, r78_rhs),
];
