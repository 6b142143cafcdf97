//! Radii of convexity for the integral operators
//!
//! ```text
//! F(z) = ∫_0^z ∏ (f_i'(t))^{gamma_i} dt
//! J(z) = ∫_0^z ∏ (f_i'(t))^{gamma_i} ∏ (g_j(t)/t)^{lambda_j} dt
//! ```
//!
//! over classes of normalized analytic functions, with a numerical verifier
//! for the closed forms.
//!
//! * [`analytic`]: truncated power series, the function catalog, Möbius
//!   renormalization.
//! * [`operators`]: scenarios, the series and quadrature forms of `J`, the
//!   convexity functional `Q = 1 + z J''/J'`.
//! * [`radii`]: the closed-form radii and their lower-bound profiles.
//! * [`verifier`]: minimization of `Re Q` on circles, empirical radii, class
//!   checks.
//! * [`cli`]: the `gftkit` binary.
//!
//! ```
//! use gftkit::radii::{radius, FormulaId, RadiusParams};
//!
//! let r = radius(FormulaId::LinearInvariant, &RadiusParams::new(1.0).alpha(1.0)).unwrap();
//! assert_eq!(r.radius, 1.0 / 3.0);
//! ```

// Range checks are written `!(x > 0.0)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod cli;
pub mod error;
pub mod operators;
pub mod radii;
pub mod verifier;

pub use error::{Error, Result};

// Book chapters and the README are compiled as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/power-series.md")]
    mod power_series {}
    #[doc = include_str!("../../../book/src/functions.md")]
    mod functions {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/radii.md")]
    mod radii {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
