//! Coefficient tables for every supported family.

use std::fmt;
use std::str::FromStr;

use anyhow::{anyhow, bail};
use serde::{Deserialize, Serialize};
use umbral_core::mixed::{cp_oracle, cphat_oracle, MixedParams};
use umbral_core::sequences::{
    bernoulli_polys, boole_polys, cauchy1_polys, cauchy2_polys, changhee_polys, falling_poly, frobenius_euler_polys,
    peters_polys, poly_cauchy1_polys, poly_cauchy2_polys, rising_poly,
};
use umbral_core::{Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    Peters,
    Boole,
    Changhee,
    PolyCauchy1,
    PolyCauchy2,
    Bernoulli,
    FrobeniusEuler,
    Cauchy1,
    Cauchy2,
    Cp,
    Cphat,
    Falling,
    Rising,
}

impl FamilyName {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::Peters => "peters",
            FamilyName::Boole => "boole",
            FamilyName::Changhee => "changhee",
            FamilyName::PolyCauchy1 => "poly-cauchy1",
            FamilyName::PolyCauchy2 => "poly-cauchy2",
            FamilyName::Bernoulli => "bernoulli",
            FamilyName::FrobeniusEuler => "frobenius-euler",
            FamilyName::Cauchy1 => "cauchy1",
            FamilyName::Cauchy2 => "cauchy2",
            FamilyName::Cp => "cp",
            FamilyName::Cphat => "cphat",
            FamilyName::Falling => "falling",
            FamilyName::Rising => "rising",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

/// The parameters a family may use; unused ones stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub family: FamilyName,
    pub params: TableParams,
    pub n_max: usize,
    pub polynomials: Vec<Polynomial>,
}

fn need<T: Clone>(v: &Option<T>, name: &str, family: FamilyName) -> anyhow::Result<T> {
    v.clone().ok_or_else(|| anyhow!("family `{family}` requires --{name}"))
}

/// Builds the table, keeping only the parameters the family reads.
pub fn build_table(family: FamilyName, given: &TableParams, n_max: usize) -> anyhow::Result<Table> {
    use FamilyName as F;
    let mut used = TableParams::default();
    let polynomials = match family {
        F::Peters => {
            let (lambda, mu) = (need(&given.lambda, "lambda", family)?, need(&given.mu, "mu", family)?);
            let p = peters_polys(&lambda, mu, n_max)?;
            used.lambda = Some(lambda);
            used.mu = Some(mu);
            p
        }
        F::Boole => {
            let lambda = need(&given.lambda, "lambda", family)?;
            let p = boole_polys(&lambda, n_max)?;
            used.lambda = Some(lambda);
            p
        }
        F::Changhee => changhee_polys(n_max)?,
        F::PolyCauchy1 | F::PolyCauchy2 => {
            let k = need(&given.k, "k", family)?;
            used.k = Some(k);
            if family == F::PolyCauchy1 {
                poly_cauchy1_polys(k, n_max)?
            } else {
                poly_cauchy2_polys(k, n_max)?
            }
        }
        F::Bernoulli | F::Cauchy1 | F::Cauchy2 => {
            let s = need(&given.s, "s", family)?;
            used.s = Some(s);
            match family {
                F::Bernoulli => bernoulli_polys(s, n_max)?,
                F::Cauchy1 => cauchy1_polys(s, n_max)?,
                _ => cauchy2_polys(s, n_max)?,
            }
        }
        F::FrobeniusEuler => {
            let (s, lambda) = (need(&given.s, "s", family)?, need(&given.lambda, "lambda", family)?);
            if lambda.is_one() {
                bail!("family `frobenius-euler` is undefined at lambda = 1");
            }
            let p = frobenius_euler_polys(s, &lambda, n_max)?;
            used.s = Some(s);
            used.lambda = Some(lambda);
            p
        }
        F::Cp | F::Cphat => {
            let params = MixedParams::new(
                need(&given.k, "k", family)?,
                need(&given.lambda, "lambda", family)?,
                need(&given.mu, "mu", family)?,
            );
            let p = if family == F::Cp { cp_oracle(&params, n_max)? } else { cphat_oracle(&params, n_max)? };
            used = TableParams { k: Some(params.k), lambda: Some(params.lambda), mu: Some(params.mu), s: None };
            p
        }
        F::Falling => (0..=n_max).map(falling_poly).collect(),
        F::Rising => (0..=n_max).map(rising_poly).collect(),
    };
    Ok(Table { family, params: used, n_max, polynomials })
}

impl Table {
    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Text => self.polynomials.iter().map(|p| format!("{p}\n")).collect(),
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Csv => {
                let width = self.n_max + 1;
                let mut w = csv::Writer::from_writer(Vec::new());
                let mut header = vec!["n".to_string()];
                header.extend((0..width).map(|i| format!("x^{i}")));
                w.write_record(&header)?;
                for (n, p) in self.polynomials.iter().enumerate() {
                    let mut row = vec![n.to_string()];
                    row.extend((0..width).map(|i| p.coeff(i).to_string()));
                    w.write_record(&row)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
        })
    }
}

impl FromStr for Table {
    type Err = serde_json::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_str(s)
    }
}
