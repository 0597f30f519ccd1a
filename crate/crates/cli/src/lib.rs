//! Library half of the `umbral` command: grids, tables, verification runs
//! and report rendering. The binary is a thin argument parser over this.

pub mod export;
pub mod grid;
pub mod table;
pub mod verify;

use std::fmt;

/// Bad flags, unknown ids, out-of-range parameters. Maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Environment variable that raises the working truncation order.
pub const ORDER_ENV: &str = "UMBRAL_KERNEL_ORDER";

/// Reads [`ORDER_ENV`]; unset means no floor.
pub fn order_floor_from_env() -> Result<Option<usize>, UsageError> {
    match std::env::var(ORDER_ENV) {
        Err(_) => Ok(None),
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| UsageError(format!("{ORDER_ENV} must be a nonnegative integer, got `{v}`"))),
    }
}
