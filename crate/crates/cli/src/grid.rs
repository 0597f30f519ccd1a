//! Parameter grids for `verify`, `errata` and `export`.

use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use umbral_core::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridConfig {
    pub k: Vec<i64>,
    pub lambda: Vec<Rational>,
    pub mu: Vec<i64>,
    pub s: Vec<u32>,
    pub y: Vec<Rational>,
    pub n_max: usize,
}

/// A grid file may set any subset of the fields.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialGrid {
    k: Option<Vec<i64>>,
    lambda: Option<Vec<Rational>>,
    mu: Option<Vec<i64>>,
    s: Option<Vec<u32>>,
    y: Option<Vec<Rational>>,
    n_max: Option<usize>,
}

fn q(s: &str) -> Rational {
    s.parse().expect("literal rational")
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            k: vec![-2, -1, 0, 1, 2, 3],
            lambda: vec![q("1"), q("-1"), q("1/2"), q("2"), q("3")],
            mu: vec![0, 1, 2, 3, -1],
            s: vec![0, 1, 2, 3],
            y: vec![q("0"), q("1"), q("-1"), q("1/2"), q("7"), q("-3")],
            n_max: 8,
        }
    }
}

/// Command-line overrides; `None` keeps the file or default value.
#[derive(Debug, Default, Clone)]
pub struct GridOverrides {
    pub k: Option<Vec<i64>>,
    pub lambda: Option<Vec<Rational>>,
    pub mu: Option<Vec<i64>>,
    pub s: Option<Vec<u32>>,
    pub y: Option<Vec<Rational>>,
    pub n_max: Option<usize>,
}

impl GridConfig {
    /// Loads `path` (or the defaults when `path` is `None` or `"default"`),
    /// then applies `overrides`.
    pub fn load(path: Option<&Path>, overrides: &GridOverrides) -> anyhow::Result<GridConfig> {
        let mut grid = GridConfig::default();
        if let Some(path) = path.filter(|p| p.as_os_str() != "default") {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading grid file {}", path.display()))?;
            let file: PartialGrid =
                serde_json::from_str(&text).with_context(|| format!("parsing grid file {}", path.display()))?;
            grid.apply(file);
        }
        grid.apply(PartialGrid {
            k: overrides.k.clone(),
            lambda: overrides.lambda.clone(),
            mu: overrides.mu.clone(),
            s: overrides.s.clone(),
            y: overrides.y.clone(),
            n_max: overrides.n_max,
        });
        grid.validate()?;
        Ok(grid)
    }

    fn apply(&mut self, p: PartialGrid) {
        if let Some(v) = p.k {
            self.k = v;
        }
        if let Some(v) = p.lambda {
            self.lambda = v;
        }
        if let Some(v) = p.mu {
            self.mu = v;
        }
        if let Some(v) = p.s {
            self.s = v;
        }
        if let Some(v) = p.y {
            self.y = v;
        }
        if let Some(v) = p.n_max {
            self.n_max = v;
        }
    }

    fn validate(&self) -> anyhow::Result<()> {
        for (name, empty) in [
            ("k", self.k.is_empty()),
            ("lambda", self.lambda.is_empty()),
            ("mu", self.mu.is_empty()),
            ("s", self.s.is_empty()),
            ("y", self.y.is_empty()),
        ] {
            if empty {
                bail!("grid list `{name}` must not be empty");
            }
        }
        Ok(())
    }

    /// Number of `(k, lambda, mu)` triples.
    pub fn triples(&self) -> usize {
        self.k.len() * self.lambda.len() * self.mu.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_has_150_triples() {
        assert_eq!(GridConfig::default().triples(), 150);
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("grid.json");
        std::fs::write(&path, r#"{"k": [5], "lambda": ["2/3", 4], "n_max": 3}"#).unwrap();
        let overrides = GridOverrides { n_max: Some(2), ..Default::default() };
        let grid = GridConfig::load(Some(&path), &overrides).unwrap();
        assert_eq!(grid.k, vec![5]);
        assert_eq!(grid.lambda, vec![q("2/3"), q("4")]);
        assert_eq!(grid.n_max, 2);
        assert_eq!(grid.mu, GridConfig::default().mu);
    }

    #[test]
    fn rejects_empty_lists_and_unknown_keys() {
        let overrides = GridOverrides { mu: Some(vec![]), ..Default::default() };
        assert!(GridConfig::load(None, &overrides).is_err());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("grid.json");
        std::fs::write(&path, r#"{"kappa": [1]}"#).unwrap();
        assert!(GridConfig::load(Some(&path), &GridOverrides::default()).is_err());
    }
}
