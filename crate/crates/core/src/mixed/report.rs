//! Evaluating registry identities and packaging the outcome.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::identities::{AuxDomain, Ctx, IdentityDescriptor, Value};
use super::workbench::Workbench;
use super::MixedParams;

/// The shift in the addition formulas: a concrete value, or kept as an
/// indeterminate so the full bivariate polynomial is compared.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YValue {
    Point(Rational),
    Symbolic,
}

impl Serialize for YValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            YValue::Point(y) => y.serialize(s),
            YValue::Symbolic => s.serialize_str("symbolic"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Aux {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<YValue>,
}

impl Aux {
    pub fn none() -> Self {
        Aux::default()
    }

    pub fn with_s(s: u32) -> Self {
        Aux { s: Some(s), y: None }
    }

    pub fn with_y(y: YValue) -> Self {
        Aux { s: None, y: Some(y) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub params: MixedParams,
    pub aux: Aux,
}

/// Which right-hand side to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Printed,
    Variant(usize),
}

impl Form {
    pub fn label(self, desc: &IdentityDescriptor) -> String {
        match self {
            Form::Printed => "printed".to_string(),
            Form::Variant(i) => desc.variants[i].label(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    ErrataResolved,
    Failed,
}

/// The first place the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub n: usize,
    /// Power of `x`; for scalar identities, always 0.
    pub coeff_index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_power: Option<usize>,
    /// The auxiliary index `m` of scalar identities.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub form: String,
    pub params: MixedParams,
    #[serde(skip_serializing_if = "aux_is_empty")]
    pub aux: Aux,
    pub n_min: usize,
    pub n_max: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_fail: Option<Discrepancy>,
}

fn aux_is_empty(aux: &Aux) -> bool {
    aux.s.is_none() && aux.y.is_none()
}

fn first_difference(lhs: &Value, rhs: &Value, n: usize) -> Result<Option<Discrepancy>> {
    let at = |coeff_index, y_power, m, l: Rational, r: Rational| Discrepancy { n, coeff_index, y_power, m, lhs: l, rhs: r };
    Ok(match (lhs, rhs) {
        (Value::Poly(a), Value::Poly(b)) => {
            let len = a.coeffs().len().max(b.coeffs().len());
            (0..len)
                .find(|&i| a.coeff(i) != b.coeff(i))
                .map(|i| at(i, None, None, a.coeff(i), b.coeff(i)))
        }
        (Value::Bi(a), Value::Bi(b)) => {
            let ylen = a.y_coeffs().len().max(b.y_coeffs().len());
            let mut found = None;
            'outer: for j in 0..ylen {
                let (pa, pb) = (a.y_coeff(j), b.y_coeff(j));
                let len = pa.coeffs().len().max(pb.coeffs().len());
                for i in 0..len {
                    if pa.coeff(i) != pb.coeff(i) {
                        found = Some(at(i, Some(j), None, pa.coeff(i), pb.coeff(i)));
                        break 'outer;
                    }
                }
            }
            found
        }
        (Value::Scalars(a), Value::Scalars(b)) => {
            if a.len() != b.len() {
                return Err(Error::Domain("scalar sides cover different index sets".into()));
            }
            a.iter()
                .zip(b)
                .find(|((_, x), (_, y))| x != y)
                .map(|((m, x), (_, y))| at(0, None, Some(*m), x.clone(), y.clone()))
        }
        _ => return Err(Error::Domain("identity sides have different shapes".into())),
    })
}

fn check_point(desc: &IdentityDescriptor, point: &Point) -> Result<()> {
    if !desc.lambda.admits(&point.params.lambda) {
        return Err(Error::Domain(format!("{} is not defined at lambda = {}", desc.id, point.params.lambda)));
    }
    let ok = match desc.aux {
        AuxDomain::None => point.aux.s.is_none() && point.aux.y.is_none(),
        AuxDomain::S => point.aux.s.is_some() && point.aux.y.is_none(),
        AuxDomain::Y => point.aux.y.is_some() && point.aux.s.is_none(),
    };
    if !ok {
        return Err(Error::Domain(format!("{} expects auxiliary domain {:?}, got {:?}", desc.id, desc.aux, point.aux)));
    }
    Ok(())
}

/// Compares both sides at a single `n`. `Ok(None)` means exact agreement.
pub fn identity_eval(
    desc: &IdentityDescriptor,
    form: Form,
    wb: &Workbench,
    point: &Point,
    n: usize,
) -> Result<Option<Discrepancy>> {
    check_point(desc, point)?;
    if n < desc.min_n {
        return Err(Error::Domain(format!("{} requires n >= {}, got {}", desc.id, desc.min_n, n)));
    }
    if n + desc.extra_order > wb.order() {
        return Err(Error::InsufficientOrder { degree: n + desc.extra_order, order: wb.order() });
    }
    let ctx = Ctx { wb, params: &point.params, aux: &point.aux };
    let rhs_fn = match form {
        Form::Printed => desc.rhs,
        Form::Variant(i) => {
            desc.variants.get(i).ok_or_else(|| Error::Domain(format!("{} has no variant {i}", desc.id)))?.rhs
        }
    };
    let lhs = (desc.lhs)(&ctx, n)?;
    let rhs = rhs_fn(&ctx, n)?;
    first_difference(&lhs, &rhs, n)
}

/// Working order needed to evaluate `desc` up to `n_max`.
pub fn required_order(desc: &IdentityDescriptor, n_max: usize) -> usize {
    n_max + desc.extra_order + 2
}

/// Runs [`identity_eval`] for every `n` from the identity's minimum to `n_max`
/// and stops at the first disagreement.
pub fn identity_eval_range(
    desc: &IdentityDescriptor,
    form: Form,
    wb: &Workbench,
    point: &Point,
    n_max: usize,
) -> Result<IdentityReport> {
    if n_max < desc.min_n {
        return Err(Error::Domain(format!("{} requires n_max >= {}, got {}", desc.id, desc.min_n, n_max)));
    }
    let mut first_fail = None;
    for n in desc.min_n..=n_max {
        if let Some(d) = identity_eval(desc, form, wb, point, n)? {
            first_fail = Some(d);
            break;
        }
    }
    Ok(IdentityReport {
        id: desc.id.to_string(),
        form: form.label(desc),
        params: point.params.clone(),
        aux: point.aux.clone(),
        n_min: desc.min_n,
        n_max,
        status: if first_fail.is_none() { Status::Verified } else { Status::Failed },
        first_fail,
    })
}

/// Outcome of checking one identity at a fixed `(k, lambda, n)` across enough
/// integer values of `mu` to pin down its dependence on `mu`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub id: String,
    pub form: String,
    pub k: i64,
    pub lambda: Rational,
    pub n: usize,
    #[serde(skip_serializing_if = "aux_is_empty")]
    pub aux: Aux,
    pub degree_bound: usize,
    pub mu_values: Vec<i64>,
    pub argument: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_mu: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Discrepancy>,
}

/// Bound on the degree in `mu` of either side once the shared `2^{-mu}` is
/// cleared. Every coefficient of `(1 + (1+t)^lambda)^{-mu}` up to `t^n` is
/// `2^{-mu}` times a polynomial of degree at most `n` in `mu`, and the
/// right-hand sides add at most one explicit factor of `mu`; `2n + 2` leaves
/// room for products of two such factors. At `n = 0` both sides are `2^{-mu}`
/// times a constant.
pub fn mu_degree_bound(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        2 * n + 2
    }
}

/// Evaluates `desc` at `n` for `mu = 1, ..., D(n) + 1`.
pub fn mu_certification(
    desc: &IdentityDescriptor,
    form: Form,
    k: i64,
    lambda: &Rational,
    n: usize,
    aux: &Aux,
    order: usize,
) -> Result<Certificate> {
    let degree_bound = mu_degree_bound(n);
    let mu_values: Vec<i64> = (1..=degree_bound as i64 + 1).collect();
    let mut witness = None;
    for &mu in &mu_values {
        let point = Point { params: MixedParams::new(k, lambda.clone(), mu), aux: aux.clone() };
        let wb = Workbench::new(order.max(required_order(desc, n)));
        if let Some(d) = identity_eval(desc, form, &wb, &point, n)? {
            witness = Some((mu, d));
            break;
        }
    }
    let argument = format!(
        "after clearing 2^-mu both sides are polynomials in mu of degree <= {degree_bound}; \
         agreement at {} distinct integers forces equality for every mu",
        degree_bound + 1
    );
    Ok(Certificate {
        id: desc.id.to_string(),
        form: form.label(desc),
        k,
        lambda: lambda.clone(),
        n,
        aux: aux.clone(),
        degree_bound,
        mu_values,
        argument,
        status: if witness.is_none() { Status::Verified } else { Status::Failed },
        witness_mu: witness.as_ref().map(|w| w.0),
        witness: witness.map(|w| w.1),
    })
}
