//! `export`: coefficient tables for every family over a whole grid.

use std::path::Path;

use anyhow::Context;
use rayon::prelude::*;
use serde::Serialize;
use umbral_core::Rational;

use crate::grid::GridConfig;
use crate::table::{build_table, FamilyName, Format, TableParams};

#[derive(Debug, Serialize)]
pub struct IndexEntry {
    pub file: String,
    pub family: FamilyName,
    pub params: TableParams,
}

fn jobs(grid: &GridConfig) -> Vec<(FamilyName, TableParams)> {
    let mut out = Vec::new();
    let p = |k: Option<i64>, lambda: Option<&Rational>, mu: Option<i64>, s: Option<u32>| TableParams {
        k,
        lambda: lambda.cloned(),
        mu,
        s,
    };
    for &k in &grid.k {
        for lambda in &grid.lambda {
            for &mu in &grid.mu {
                out.push((FamilyName::Cp, p(Some(k), Some(lambda), Some(mu), None)));
                out.push((FamilyName::Cphat, p(Some(k), Some(lambda), Some(mu), None)));
            }
        }
    }
    for lambda in &grid.lambda {
        for &mu in &grid.mu {
            out.push((FamilyName::Peters, p(None, Some(lambda), Some(mu), None)));
        }
        out.push((FamilyName::Boole, p(None, Some(lambda), None, None)));
    }
    for &k in &grid.k {
        out.push((FamilyName::PolyCauchy1, p(Some(k), None, None, None)));
        out.push((FamilyName::PolyCauchy2, p(Some(k), None, None, None)));
    }
    for &s in &grid.s {
        for family in [FamilyName::Bernoulli, FamilyName::Cauchy1, FamilyName::Cauchy2] {
            out.push((family, p(None, None, None, Some(s))));
        }
        for lambda in grid.lambda.iter().filter(|l| !l.is_one()) {
            out.push((FamilyName::FrobeniusEuler, p(None, Some(lambda), None, Some(s))));
        }
    }
    for family in [FamilyName::Changhee, FamilyName::Falling, FamilyName::Rising] {
        out.push((family, TableParams::default()));
    }
    out
}

/// Rationals in file names: `-` becomes `m` and `/` becomes `_`.
fn name_part(r: &Rational) -> String {
    r.to_string().replace('-', "m").replace('/', "_")
}

pub fn file_name(family: FamilyName, params: &TableParams, format: Format) -> String {
    let mut name = family.as_str().to_string();
    if let Some(k) = params.k {
        name += &format!("_k{}", name_part(&Rational::from(k)));
    }
    if let Some(l) = &params.lambda {
        name += &format!("_lambda{}", name_part(l));
    }
    if let Some(mu) = params.mu {
        name += &format!("_mu{}", name_part(&Rational::from(mu)));
    }
    if let Some(s) = params.s {
        name += &format!("_s{s}");
    }
    format!("{name}.{}", format.extension())
}

/// Writes one file per table plus `index.json`; returns the number of tables.
pub fn export(grid: &GridConfig, dir: &Path, format: Format) -> anyhow::Result<usize> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let jobs = jobs(grid);
    let index: Vec<IndexEntry> = jobs
        .into_par_iter()
        .map(|(family, params)| -> anyhow::Result<IndexEntry> {
            let table = build_table(family, &params, grid.n_max)?;
            let file = file_name(family, &table.params, format);
            std::fs::write(dir.join(&file), table.render(format)?).with_context(|| format!("writing {file}"))?;
            Ok(IndexEntry { file, family, params: table.params })
        })
        .collect::<anyhow::Result<_>>()?;
    let count = index.len();
    std::fs::write(dir.join("index.json"), serde_json::to_string_pretty(&index)? + "\n")?;
    Ok(count)
}
