use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::sequences::{
    bernoulli_polys, binomial_composition_sum, cauchy1_polys, cauchy2_polys, frobenius_euler_polys, peters_polys,
    poly_cauchy1_polys, poly_cauchy2_polys,
};

use super::{cp_oracle, cphat_oracle, multinomial_composition_sum, MixedParams};

/// A polynomial family that identity right-hand sides draw from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cp(MixedParams),
    CpHat(MixedParams),
    Peters { lambda: Rational, mu: i64 },
    PolyCauchy1(i64),
    PolyCauchy2(i64),
    Bernoulli(u32),
    Cauchy1(u32),
    Cauchy2(u32),
    FrobeniusEuler { order: u32, lambda: Rational },
}

/// Memoises family tables and composition sums for one evaluation context.
/// Every table holds indices `0..=order`.
pub struct Workbench {
    order: usize,
    tables: RefCell<HashMap<Family, Rc<Vec<Polynomial>>>>,
    binom_sums: RefCell<HashMap<(Rational, usize, usize), Rational>>,
    multinom_sums: RefCell<HashMap<(usize, usize), Rational>>,
}

impl Workbench {
    pub fn new(order: usize) -> Self {
        Workbench {
            order,
            tables: RefCell::default(),
            binom_sums: RefCell::default(),
            multinom_sums: RefCell::default(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self, family: &Family) -> Result<Rc<Vec<Polynomial>>> {
        if let Some(t) = self.tables.borrow().get(family) {
            return Ok(Rc::clone(t));
        }
        let n = self.order;
        let table = match family {
            Family::Cp(p) => cp_oracle(p, n)?,
            Family::CpHat(p) => cphat_oracle(p, n)?,
            Family::Peters { lambda, mu } => peters_polys(lambda, *mu, n)?,
            Family::PolyCauchy1(k) => poly_cauchy1_polys(*k, n)?,
            Family::PolyCauchy2(k) => poly_cauchy2_polys(*k, n)?,
            Family::Bernoulli(a) => bernoulli_polys(*a, n)?,
            Family::Cauchy1(a) => cauchy1_polys(*a, n)?,
            Family::Cauchy2(a) => cauchy2_polys(*a, n)?,
            Family::FrobeniusEuler { order, lambda } => frobenius_euler_polys(*order, lambda, n)?,
        };
        let table = Rc::new(table);
        self.tables.borrow_mut().insert(family.clone(), Rc::clone(&table));
        Ok(table)
    }

    pub fn poly(&self, family: &Family, n: usize) -> Result<Polynomial> {
        if n > self.order {
            return Err(Error::InsufficientOrder { degree: n, order: self.order });
        }
        Ok(self.table(family)?[n].clone())
    }

    pub fn value(&self, family: &Family, n: usize, x: &Rational) -> Result<Rational> {
        if n > self.order {
            return Err(Error::InsufficientOrder { degree: n, order: self.order });
        }
        Ok(self.table(family)?[n].eval(x))
    }

    /// Cached [`binomial_composition_sum`].
    pub fn binom_sum(&self, lambda: &Rational, total: usize, parts: usize) -> Rational {
        let key = (lambda.clone(), total, parts);
        if let Some(v) = self.binom_sums.borrow().get(&key) {
            return v.clone();
        }
        let v = binomial_composition_sum(lambda, total, parts);
        self.binom_sums.borrow_mut().insert(key, v.clone());
        v
    }

    /// Cached [`multinomial_composition_sum`].
    pub fn multinom_sum(&self, q: usize, parts: usize) -> Rational {
        if let Some(v) = self.multinom_sums.borrow().get(&(q, parts)) {
            return v.clone();
        }
        let v = multinomial_composition_sum(q, parts);
        self.multinom_sums.borrow_mut().insert((q, parts), v.clone());
        v
    }
}
