//! Extrapolating the prime-counting function π(10^n) from its known values.
//!
//! The crate fits exact interpolating polynomials through (n, π(10^n)),
//! corrects their one-step extrapolations with Thiele continued fractions,
//! and compares the outcome with the classical analytic approximations
//! (x/log x, Li and Riemann's R) evaluated at high precision.
//!
//! ```
//! use pi26::{pipeline, PrimeCountTable};
//!
//! let table = PrimeCountTable::builtin();
//! let center = pipeline::extrapolate_corrected(&table, 25).unwrap();
//! assert_eq!(center.to_string(), "1699246738822618041025224");
//! ```

pub mod analytic;
pub mod decimal;
pub mod error;
pub mod golden;
pub mod pipeline;
pub mod poly;
pub mod table;
pub mod thiele;
pub mod verify;

pub use analytic::{AnalyticConfig, Estimator, HighPrecisionReal};
pub use error::{Error, Result};
pub use poly::{fit_polynomial, RationalPolynomial};
pub use table::PrimeCountTable;
pub use thiele::{FoldedCoefficients, ThieleInterpolant};

/// Re-exported so callers can build inputs without naming `rug` themselves.
pub use rug;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/table.md")]
    mod table {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/thiele.md")]
    mod thiele {}
    #[doc = include_str!("../../../book/src/extrapolation.md")]
    mod extrapolation {}
    #[doc = include_str!("../../../book/src/analytic.md")]
    mod analytic {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
