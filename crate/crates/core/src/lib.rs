//! Exact umbral-calculus kernel for the poly-Cauchy/Peters mixed-type
//! polynomials `CP_n^{(k)}(x; lambda, mu)` and `ĈP_n^{(k)}(x; lambda, mu)`.
//!
//! Everything is computed over the rationals with truncated formal power
//! series; there is no floating-point path.

pub mod error;
pub mod rational;
pub mod series;
pub mod poly;
pub mod sequences;
pub mod umbral;
pub mod mixed;

pub use error::{Error, Result};
pub use poly::{BiPoly, Polynomial};
pub use rational::Rational;
pub use series::Series;
