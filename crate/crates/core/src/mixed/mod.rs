//! The mixed-type polynomials `CP_n^{(k)}(x; lambda, mu)` and
//! `ĈP_n^{(k)}(x; lambda, mu)`.
//!
//! Two independent constructions are provided: the generating functions
//!
//! ```text
//! (1+(1+t)^λ)^{-μ} Lif_k( log(1+t)) (1+t)^{-x} = Σ CP_n(x) t^n/n!
//! (1+(1+t)^λ)^{-μ} Lif_k(-log(1+t)) (1+t)^{ x} = Σ ĈP_n(x) t^n/n!
//! ```
//!
//! which are the ground truth, and the Sheffer pairs
//! `((1+e^{-λt})^μ / Lif_k(-t), e^{-t}-1)` and `((1+e^{λt})^μ / Lif_k(-t), e^t-1)`
//! fed through [`crate::umbral`].

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::poly::Polynomial;
use crate::rational::{for_each_weak_composition, multinomial, rat_binomial, Rational};
use crate::sequences::{gf_expand, lif_of_log, lif_series, peters_base_series, GfRecipe};
use crate::series::Series;
use crate::umbral::ShefferPair;

pub mod identities;
pub mod report;
mod workbench;

pub use identities::{find, registry, AuxDomain, IdentityDescriptor, IdentityKind, LambdaRule, Suite, Value, Variant, VariantKind};
pub use report::{
    identity_eval, identity_eval_range, mu_certification, mu_degree_bound, required_order, Aux, Certificate, Discrepancy, Form, IdentityReport, Point,
    Status, YValue,
};
pub use workbench::{Family, Workbench};

/// The parameter triple `(k, lambda, mu)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MixedParams {
    pub k: i64,
    pub lambda: Rational,
    pub mu: i64,
}

impl MixedParams {
    pub fn new(k: i64, lambda: Rational, mu: i64) -> Self {
        MixedParams { k, lambda, mu }
    }
}

/// `CP_0 ..= CP_N` from the generating function.
pub fn cp_oracle(params: &MixedParams, n_max: usize) -> Result<Vec<Polynomial>> {
    let pre = peters_base_series(&params.lambda, params.mu, n_max)?.mul(&lif_of_log(params.k, 1, n_max)?)?;
    gf_expand(&GfRecipe::binomial(pre, -1), n_max)
}

/// `ĈP_0 ..= ĈP_N` from the generating function.
pub fn cphat_oracle(params: &MixedParams, n_max: usize) -> Result<Vec<Polynomial>> {
    let pre = peters_base_series(&params.lambda, params.mu, n_max)?.mul(&lif_of_log(params.k, -1, n_max)?)?;
    gf_expand(&GfRecipe::binomial(pre, 1), n_max)
}

/// `(1 + e^{sign λ t})^μ` as an integer power of a series with constant term 2.
pub fn peters_exp_series(lambda: &Rational, mu: i64, sign: i32, order: usize) -> Result<Series> {
    let a = lambda * Rational::from(sign.signum());
    let base = Series::one(order).add(&Series::exp_of_scaled_t(order, &a))?;
    base.pow(&Rational::from(mu))
}

/// `Σ_{j_1+..+j_i = q-i} (q; j_1+1, .., j_i+1)`, the multinomial weight of
/// `i` nonempty blocks covering `q` items.
pub fn multinomial_composition_sum(q: usize, parts: usize) -> Rational {
    if parts > q {
        return Rational::zero();
    }
    let mut acc = Rational::zero();
    let mut shifted = Vec::with_capacity(parts);
    for_each_weak_composition(q - parts, parts, |comp| {
        shifted.clear();
        shifted.extend(comp.iter().map(|j| j + 1));
        acc += multinomial(q, &shifted).expect("parts sum to q");
    });
    acc
}

/// `(1 + e^{-λt})^μ` from the explicit expansion
/// `Σ_i Σ_j Σ_{j_1+..+j_i=j} 2^{μ-i} binom(μ,i) (j+i; j_1+1,..,j_i+1) (-λt)^{j+i}/(j+i)!`.
pub fn peters_exp_series_expanded(lambda: &Rational, mu: i64, order: usize) -> Series {
    let mu_q = Rational::from(mu);
    let neg_lambda = -lambda;
    Series::from_fn(order, |q| {
        let weight: Rational = (0..=q)
            .map(|i| Rational::two_pow(mu - i as i64) * rat_binomial(&mu_q, i) * multinomial_composition_sum(q, i))
            .sum();
        weight * neg_lambda.pow(q as u32) / crate::rational::factorial(q)
    })
}

/// `Lif_k(-t)`.
fn lif_of_neg_t(k: i64, order: usize) -> Result<Series> {
    lif_series(k, order).compose(&Series::t(order).neg())
}

/// `((1+e^{-λt})^μ / Lif_k(-t), e^{-t} - 1)`.
pub fn cp_sheffer_pair(params: &MixedParams, order: usize) -> Result<ShefferPair> {
    let g = peters_exp_series(&params.lambda, params.mu, -1, order)?.mul(&lif_of_neg_t(params.k, order)?.reciprocal()?)?;
    let f = Series::exp_of_scaled_t(order, &Rational::from(-1)).sub(&Series::one(order))?;
    ShefferPair::new(g, f)
}

/// `((1+e^{λt})^μ / Lif_k(-t), e^t - 1)`.
pub fn cphat_sheffer_pair(params: &MixedParams, order: usize) -> Result<ShefferPair> {
    let g = peters_exp_series(&params.lambda, params.mu, 1, order)?.mul(&lif_of_neg_t(params.k, order)?.reciprocal()?)?;
    let f = Series::exp_of_scaled_t(order, &Rational::one()).sub(&Series::one(order))?;
    ShefferPair::new(g, f)
}
