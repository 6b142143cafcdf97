//! Power series, the closed-form function catalog, and disk automorphisms.

pub mod catalog;
pub mod cmath;
pub mod mobius;
pub mod series;

pub use catalog::{catalog, CatalogFunction, CatalogName, FunctionHandle, Jet, SeriesFunction};
pub use mobius::{invariance_a2, invariance_a2_finite_difference, MobiusParams};
pub use series::{PowerSeries, SeriesValue, DEFAULT_ORDER};
