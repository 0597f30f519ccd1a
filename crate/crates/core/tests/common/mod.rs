#![allow(dead_code)]

use umbral_core::mixed::{cp_sheffer_pair, cphat_sheffer_pair, MixedParams};
use umbral_core::umbral::ShefferPair;
use umbral_core::{Rational, Series};

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn exp_scaled(order: usize, a: i64) -> Series {
    Series::exp_of_scaled_t(order, &Rational::from(a))
}

/// `e^{a t} - 1`.
pub fn exp_minus_one(order: usize, a: i64) -> Series {
    exp_scaled(order, a).sub(&Series::one(order)).unwrap()
}

/// `(1, t)`, `(1, e^t - 1)`, `(1, 1 - e^{-t})`.
pub fn classical_pairs(order: usize) -> Vec<(&'static str, ShefferPair)> {
    vec![
        ("(1,t)", ShefferPair::associated(Series::t(order)).unwrap()),
        ("(1,e^t-1)", ShefferPair::associated(exp_minus_one(order, 1)).unwrap()),
        ("(1,1-e^-t)", ShefferPair::associated(exp_minus_one(order, -1).neg()).unwrap()),
    ]
}

/// The classical pairs, an Appell pair and two mixed pairs.
pub fn test_pairs(order: usize) -> Vec<(&'static str, ShefferPair)> {
    let mut pairs = classical_pairs(order);
    // Bernoulli: ((e^t - 1)/t, t), with the quotient taken at one order higher
    let bern_g = exp_minus_one(order + 1, 1).div_t().unwrap();
    pairs.push(("bernoulli", ShefferPair::new(bern_g, Series::t(order)).unwrap()));
    pairs.push(("cp(2,1/2,3)", cp_sheffer_pair(&MixedParams::new(2, q("1/2"), 3), order).unwrap()));
    pairs.push(("cphat(-1,2,-1)", cphat_sheffer_pair(&MixedParams::new(-1, q("2"), -1), order).unwrap()));
    pairs
}

pub fn default_ks() -> Vec<i64> {
    vec![-2, -1, 0, 1, 2, 3]
}

pub fn default_lambdas() -> Vec<Rational> {
    ["1", "-1", "1/2", "2", "3"].iter().map(|s| q(s)).collect()
}

pub fn default_mus() -> Vec<i64> {
    vec![0, 1, 2, 3, -1]
}

pub fn default_triples() -> Vec<MixedParams> {
    let mut out = Vec::new();
    for k in default_ks() {
        for lambda in default_lambdas() {
            for mu in default_mus() {
                out.push(MixedParams::new(k, lambda.clone(), mu));
            }
        }
    }
    out
}
