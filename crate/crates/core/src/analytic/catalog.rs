//! Normalized analytic functions on the unit disk.
//!
//! A [`FunctionHandle`] is either a closed-form catalog entry, with exact
//! first and second derivatives, or a function given by its truncated
//! Taylor series. Every function here is normalized: `f(0) = 0`,
//! `f'(0) = 1`.
//!
//! | entry | `f(z)` | notes |
//! |-------|--------|-------|
//! | `identity` | `z` | |
//! | `half_plane` | `z/(1-z)` | convex, maps onto `Re w > -1/2` |
//! | `koebe` | `z/(1-z)^2` | extremal univalent function |
//! | `starlike_extremal(xi)` | `z/(1-z)^{2(1-xi)}` | extremal for starlike of order `xi` |
//! | `lif_extremal(alpha)` | `[((1+z)/(1-z))^alpha - 1]/(2 alpha)` | order `alpha` |
//! | `ozaki_example(beta)` | `[1-(1-z)^{beta+1}]/(beta+1)` | `f' = (1-z)^beta` |
//!
//! Complex powers are taken on the branch continuous from `f'(0) = 1`; since
//! every factor `1 ± z` stays in the right half-plane, this is the principal
//! branch of each factor.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cmath::{exp_m1, ln_1p};
use super::series::{PowerSeries, NON_UNIT_TOL};
use crate::error::{Error, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerance on `f(0) = 0`, `f'(0) = 1` for series-backed functions.
pub const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogName {
    Identity,
    HalfPlane,
    Koebe,
    StarlikeExtremal,
    LifExtremal,
    OzakiExample,
}

impl CatalogName {
    pub fn as_str(self) -> &'static str {
        match self {
            CatalogName::Identity => "identity",
            CatalogName::HalfPlane => "half_plane",
            CatalogName::Koebe => "koebe",
            CatalogName::StarlikeExtremal => "starlike_extremal",
            CatalogName::LifExtremal => "lif_extremal",
            CatalogName::OzakiExample => "ozaki_example",
        }
    }
}

impl std::str::FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "identity" => CatalogName::Identity,
            "half_plane" => CatalogName::HalfPlane,
            "koebe" => CatalogName::Koebe,
            "starlike_extremal" => CatalogName::StarlikeExtremal,
            "lif_extremal" => CatalogName::LifExtremal,
            "ozaki_example" => CatalogName::OzakiExample,
            other => return Err(Error::BadParameter(format!("unknown catalog function `{other}`"))),
        })
    }
}

/// A closed-form catalog function with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogFunction {
    Identity,
    HalfPlane,
    Koebe,
    /// `z/(1-z)^{2(1-xi)}`, `0 <= xi < 1`.
    StarlikeExtremal {
        xi: f64,
    },
    /// `[((1+z)/(1-z))^alpha - 1]/(2 alpha)`, `alpha >= 1`.
    LifExtremal {
        alpha: f64,
    },
    /// `f' = (1-z)^beta`, `0 < beta <= 1`.
    OzakiExample {
        beta: f64,
    },
}

/// `f`, `f'` and `f''` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub f: Complex64,
    pub df: Complex64,
    pub d2f: Complex64,
}

fn check_disk(z: Complex64) -> Result<()> {
    let r = z.norm();
    if r < 1.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::OutsideDisk(z))
    }
}

impl CatalogFunction {
    /// Validates parameters and builds the entry.
    pub fn new(name: CatalogName, param: Option<f64>) -> Result<Self> {
        let need = |what: &str| {
            param.ok_or_else(|| Error::BadParameter(format!("{} requires parameter {what}", name.as_str())))
        };
        let f = match name {
            CatalogName::Identity => CatalogFunction::Identity,
            CatalogName::HalfPlane => CatalogFunction::HalfPlane,
            CatalogName::Koebe => CatalogFunction::Koebe,
            CatalogName::StarlikeExtremal => CatalogFunction::StarlikeExtremal { xi: need("xi")? },
            CatalogName::LifExtremal => CatalogFunction::LifExtremal { alpha: need("alpha")? },
            CatalogName::OzakiExample => CatalogFunction::OzakiExample { beta: need("beta")? },
        };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        match *self {
            CatalogFunction::StarlikeExtremal { xi } if !(0.0..1.0).contains(&xi) => {
                Err(Error::BadParameter(format!("xi = {xi} outside [0, 1)")))
            }
            CatalogFunction::LifExtremal { alpha } if !(alpha >= 1.0 && alpha.is_finite()) => {
                Err(Error::BadParameter(format!("alpha = {alpha} must be >= 1")))
            }
            CatalogFunction::OzakiExample { beta } if !(beta > 0.0 && beta <= 1.0) => {
                Err(Error::BadParameter(format!("beta = {beta} outside (0, 1]")))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> CatalogName {
        match self {
            CatalogFunction::Identity => CatalogName::Identity,
            CatalogFunction::HalfPlane => CatalogName::HalfPlane,
            CatalogFunction::Koebe => CatalogName::Koebe,
            CatalogFunction::StarlikeExtremal { .. } => CatalogName::StarlikeExtremal,
            CatalogFunction::LifExtremal { .. } => CatalogName::LifExtremal,
            CatalogFunction::OzakiExample { .. } => CatalogName::OzakiExample,
        }
    }

    pub fn param(&self) -> Option<f64> {
        match *self {
            CatalogFunction::StarlikeExtremal { xi } => Some(xi),
            CatalogFunction::LifExtremal { alpha } => Some(alpha),
            CatalogFunction::OzakiExample { beta } => Some(beta),
            _ => None,
        }
    }

    fn jet(&self, z: Complex64) -> Jet {
        let l_minus = ln_1p(-z);
        match *self {
            CatalogFunction::Identity => Jet { f: z, df: ONE, d2f: Complex64::new(0.0, 0.0) },
            CatalogFunction::HalfPlane => {
                let w = (ONE - z).inv();
                Jet { f: z * w, df: w * w, d2f: 2.0 * w * w * w }
            }
            CatalogFunction::Koebe => {
                let w = (ONE - z).inv();
                let w2 = w * w;
                Jet { f: z * w2, df: (ONE + z) * w2 * w, d2f: (4.0 + 2.0 * z) * w2 * w2 }
            }
            CatalogFunction::StarlikeExtremal { xi } => {
                let p = 2.0 * (1.0 - xi);
                let base = (-p * l_minus).exp(); // (1-z)^{-p}
                let w = (ONE - z).inv();
                Jet { f: z * base, df: (ONE + (p - 1.0) * z) * base * w, d2f: p * (2.0 + (p - 1.0) * z) * base * w * w }
            }
            CatalogFunction::LifExtremal { alpha } => {
                let l_plus = ln_1p(z);
                let f = exp_m1(alpha * (l_plus - l_minus)) / (2.0 * alpha);
                let df = ((alpha - 1.0) * l_plus - (alpha + 1.0) * l_minus).exp();
                let d2f = df * ((alpha - 1.0) / (ONE + z) + (alpha + 1.0) / (ONE - z));
                Jet { f, df, d2f }
            }
            CatalogFunction::OzakiExample { beta } => {
                let f = -exp_m1((beta + 1.0) * l_minus) / (beta + 1.0);
                let df = (beta * l_minus).exp();
                let d2f = -beta * ((beta - 1.0) * l_minus).exp();
                Jet { f, df, d2f }
            }
        }
    }

    /// Closed form of `z f''(z) / f'(z)`.
    fn z_f2_over_f1(&self, z: Complex64) -> Complex64 {
        match *self {
            CatalogFunction::Identity => Complex64::new(0.0, 0.0),
            CatalogFunction::HalfPlane => 2.0 * z / (ONE - z),
            CatalogFunction::Koebe => 2.0 * z * (2.0 + z) / ((ONE - z) * (ONE + z)),
            CatalogFunction::StarlikeExtremal { xi } => {
                let p = 2.0 * (1.0 - xi);
                p * z * (2.0 + (p - 1.0) * z) / ((ONE - z) * (ONE + (p - 1.0) * z))
            }
            CatalogFunction::LifExtremal { alpha } => 2.0 * z * (alpha + z) / ((ONE - z) * (ONE + z)),
            CatalogFunction::OzakiExample { beta } => -beta * z / (ONE - z),
        }
    }

    /// Closed form of `z f'(z)/f(z) - 1` where one exists.
    fn z_f1_over_f_minus_one(&self, z: Complex64) -> Option<Complex64> {
        match *self {
            CatalogFunction::Identity => Some(Complex64::new(0.0, 0.0)),
            CatalogFunction::HalfPlane => Some(z / (ONE - z)),
            CatalogFunction::Koebe => Some(2.0 * z / (ONE - z)),
            CatalogFunction::StarlikeExtremal { xi } => Some(2.0 * (1.0 - xi) * z / (ONE - z)),
            _ => None,
        }
    }

    /// `log f'(z)` on the branch through `log f'(0) = 0`.
    fn ln_derivative(&self, z: Complex64) -> Complex64 {
        let l_minus = ln_1p(-z);
        match *self {
            CatalogFunction::Identity => Complex64::new(0.0, 0.0),
            CatalogFunction::HalfPlane => -2.0 * l_minus,
            CatalogFunction::Koebe => ln_1p(z) - 3.0 * l_minus,
            CatalogFunction::StarlikeExtremal { xi } => {
                let p = 2.0 * (1.0 - xi);
                ln_1p((p - 1.0) * z) - (p + 1.0) * l_minus
            }
            CatalogFunction::LifExtremal { alpha } => (alpha - 1.0) * ln_1p(z) - (alpha + 1.0) * l_minus,
            CatalogFunction::OzakiExample { beta } => beta * l_minus,
        }
    }

    /// `log(f(z)/z)` through `0` at the origin, where a closed form exists.
    fn ln_quotient(&self, z: Complex64) -> Option<Complex64> {
        let l_minus = ln_1p(-z);
        match *self {
            CatalogFunction::Identity => Some(Complex64::new(0.0, 0.0)),
            CatalogFunction::HalfPlane => Some(-l_minus),
            CatalogFunction::Koebe => Some(-2.0 * l_minus),
            CatalogFunction::StarlikeExtremal { xi } => Some(-2.0 * (1.0 - xi) * l_minus),
            _ => None,
        }
    }

    /// Taylor coefficients `f_0..=f_T`.
    pub fn series(&self, order: usize) -> PowerSeries {
        let t = order.max(1);
        match *self {
            CatalogFunction::Identity => PowerSeries::identity(t),
            CatalogFunction::HalfPlane => {
                let mut c = PowerSeries::geometric(t).into_coeffs();
                c[0] = Complex64::new(0.0, 0.0);
                PowerSeries::from_vec(c)
            }
            CatalogFunction::Koebe => PowerSeries::from_vec((0..=t).map(|k| Complex64::new(k as f64, 0.0)).collect()),
            CatalogFunction::StarlikeExtremal { xi } => {
                let b = PowerSeries::binomial(t - 1, -1.0, -2.0 * (1.0 - xi));
                let mut c = vec![Complex64::new(0.0, 0.0)];
                c.extend_from_slice(&b.coeffs()[..t]);
                PowerSeries::from_vec(c)
            }
            CatalogFunction::LifExtremal { alpha } => PowerSeries::binomial(t, 1.0, alpha - 1.0)
                .multiply(&PowerSeries::binomial(t, -1.0, -alpha - 1.0))
                .integrate_from_zero(),
            CatalogFunction::OzakiExample { beta } => PowerSeries::binomial(t, -1.0, beta).integrate_from_zero(),
        }
    }
}

impl fmt::Display for CatalogFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(p) => write!(f, "{}({p})", self.name().as_str()),
            None => f.write_str(self.name().as_str()),
        }
    }
}

/// A function known only through its Taylor series, with the derived series
/// needed for pointwise derivatives cached at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFunction {
    f: PowerSeries,
    df: PowerSeries,
    d2f: PowerSeries,
    /// `f(z)/z`
    quotient: PowerSeries,
    dquotient: PowerSeries,
}

impl SeriesFunction {
    /// Requires a normalized series (`c_0 = 0`, `c_1 = 1`).
    pub fn new(f: PowerSeries) -> Result<Self> {
        if !f.is_normalized(NORMALIZATION_TOL) {
            return Err(Error::BadParameter(format!(
                "series is not normalized: c0 = {}, c1 = {}",
                f.coeff(0),
                f.coeff(1)
            )));
        }
        let df = f.differentiate();
        let d2f = df.differentiate();
        let quotient = f.shift_down();
        let dquotient = quotient.differentiate();
        Ok(Self { f, df, d2f, quotient, dquotient })
    }

    pub fn series(&self) -> &PowerSeries {
        &self.f
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionHandle {
    Catalog(CatalogFunction),
    Series(SeriesFunction),
}

impl From<CatalogFunction> for FunctionHandle {
    fn from(f: CatalogFunction) -> Self {
        FunctionHandle::Catalog(f)
    }
}

/// Shorthand constructor for catalog handles; `param` is `xi`, `alpha` or
/// `beta` depending on the entry.
pub fn catalog(name: CatalogName, param: Option<f64>) -> Result<FunctionHandle> {
    CatalogFunction::new(name, param).map(FunctionHandle::Catalog)
}

impl FunctionHandle {
    pub fn identity() -> Self {
        FunctionHandle::Catalog(CatalogFunction::Identity)
    }

    pub fn half_plane() -> Self {
        FunctionHandle::Catalog(CatalogFunction::HalfPlane)
    }

    pub fn koebe() -> Self {
        FunctionHandle::Catalog(CatalogFunction::Koebe)
    }

    pub fn starlike_extremal(xi: f64) -> Result<Self> {
        catalog(CatalogName::StarlikeExtremal, Some(xi))
    }

    pub fn lif_extremal(alpha: f64) -> Result<Self> {
        catalog(CatalogName::LifExtremal, Some(alpha))
    }

    pub fn ozaki_example(beta: f64) -> Result<Self> {
        catalog(CatalogName::OzakiExample, Some(beta))
    }

    pub fn from_series(f: PowerSeries) -> Result<Self> {
        SeriesFunction::new(f).map(FunctionHandle::Series)
    }

    pub fn jet(&self, z: Complex64) -> Result<Jet> {
        check_disk(z)?;
        Ok(match self {
            FunctionHandle::Catalog(c) => c.jet(z),
            FunctionHandle::Series(s) => Jet { f: s.f.horner(z), df: s.df.horner(z), d2f: s.d2f.horner(z) },
        })
    }

    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        self.jet(z).map(|j| j.f)
    }

    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        self.jet(z).map(|j| j.df)
    }

    /// `z f''(z) / f'(z)`.
    pub fn z_f2_over_f1(&self, z: Complex64) -> Result<Complex64> {
        let jet = self.jet(z)?;
        if jet.df.norm() <= NON_UNIT_TOL {
            return Err(Error::CriticalPoint(z));
        }
        Ok(match self {
            FunctionHandle::Catalog(c) => c.z_f2_over_f1(z),
            FunctionHandle::Series(_) => z * jet.d2f / jet.df,
        })
    }

    /// `z f'(z)/f(z) - 1`, taken as `0` at the origin.
    pub fn z_f1_over_f_minus_one(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        if z == Complex64::new(0.0, 0.0) {
            return Ok(z);
        }
        match self {
            FunctionHandle::Catalog(c) => {
                if let Some(v) = c.z_f1_over_f_minus_one(z) {
                    return Ok(v);
                }
                let jet = c.jet(z);
                if jet.f.norm() <= NON_UNIT_TOL {
                    return Err(Error::ZeroOfG(z));
                }
                Ok(z * jet.df / jet.f - 1.0)
            }
            FunctionHandle::Series(s) => {
                // z f'/f - 1 = z q'/q with q = f/z
                let q = s.quotient.horner(z);
                if (q * z).norm() <= NON_UNIT_TOL {
                    return Err(Error::ZeroOfG(z));
                }
                Ok(z * s.dquotient.horner(z) / q)
            }
        }
    }

    /// `log f'(z)` on the branch with `log f'(0) = 0`. Series-backed
    /// functions use the principal logarithm.
    pub fn ln_derivative(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        match self {
            FunctionHandle::Catalog(c) => Ok(c.ln_derivative(z)),
            FunctionHandle::Series(s) => {
                let d = s.df.horner(z);
                if d.norm() <= NON_UNIT_TOL {
                    return Err(Error::CriticalPoint(z));
                }
                Ok(d.ln())
            }
        }
    }

    /// `log(f(z)/z)`, zero at the origin. Principal logarithm where no
    /// closed form exists.
    pub fn ln_quotient(&self, z: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        if z == Complex64::new(0.0, 0.0) {
            return Ok(z);
        }
        let q = match self {
            FunctionHandle::Catalog(c) => {
                if let Some(v) = c.ln_quotient(z) {
                    return Ok(v);
                }
                c.jet(z).f / z
            }
            FunctionHandle::Series(s) => s.quotient.horner(z),
        };
        if (q * z).norm() <= NON_UNIT_TOL {
            return Err(Error::ZeroOfG(z));
        }
        Ok(q.ln())
    }

    /// Taylor series of `f` at order `T`.
    pub fn series(&self, order: usize) -> PowerSeries {
        match self {
            FunctionHandle::Catalog(c) => c.series(order),
            FunctionHandle::Series(s) => s.f.with_order(order),
        }
    }

    /// Taylor series of `f'` at order `T`.
    pub fn derivative_series(&self, order: usize) -> PowerSeries {
        match self {
            FunctionHandle::Catalog(c) => c.series(order + 1).differentiate().with_order(order),
            FunctionHandle::Series(s) => s.df.with_order(order),
        }
    }

    /// Taylor series of `f(z)/z` at order `T`; a unit series.
    pub fn quotient_series(&self, order: usize) -> PowerSeries {
        match self {
            FunctionHandle::Catalog(c) => c.series(order + 1).shift_down().with_order(order),
            FunctionHandle::Series(s) => s.quotient.with_order(order),
        }
    }
}

impl fmt::Display for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionHandle::Catalog(c) => c.fmt(f),
            FunctionHandle::Series(s) => write!(f, "series(T = {})", s.f.order()),
        }
    }
}
