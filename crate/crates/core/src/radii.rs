//! Closed-form radii of convexity and their lower-bound profiles.
//!
//! Each formula bounds `min_{|z|=r} Re Q(z)`, where `Q = 1 + z J''/J'`, from
//! below by a rational profile `P(r) = (a r^2 + b r + 1) / D(r)` with a
//! positive denominator `D`. The radius is the unique root of the numerator
//! in `(0, 1]`. With `alpha` the largest order of the `f_i`, `beta` the
//! largest Ozaki parameter, `xi` the smallest starlikeness order of the
//! `g_j`, and `M >= sum |gamma_i|`, `N >= sum |lambda_j|`:
//!
//! | id | classes | numerator `a r^2 + b r + 1` | `D(r)` |
//! |----|---------|-----------------------------|--------|
//! | `thm21` | `f_i` of order `alpha` | `-(2M+1) r^2 - 2 alpha M r + 1` | `1 - r^2` |
//! | `cor_convex` | convex `f_i` | `-(2M+1) r^2 - 2M r + 1` | `1 - r^2` |
//! | `thm22` | univalent `f_i` | `-(2M+1) r^2 - 4M r + 1` | `1 - r^2` |
//! | `thm23` | `f_i` in `G(beta)` | `-(beta M + 1) r + 1` | `1 - r` |
//! | `thm24_rederived` | order `alpha`, starlike `g_j` | `-(2M+1+2(1-xi)N) r^2 - 2(alpha M+(1-xi)N) r + 1` | `1 - r^2` |
//! | `thm24_paper` | same | `-2((1-xi)N+M+1) r^2 - 2(alpha M+(1-xi)N) r + 1` | `1 - r^2` |
//! | `cor25` | convex `f_i`, starlike `g_j` | `thm24` with `alpha = 1` | `1 - r^2` |
//! | `thm26` | `f_i` in `G(beta)`, starlike `g_j` | `-(2(1-xi)N+beta M+1) r^2 - (2(1-xi)N+beta M) r + 1` | `1 - r^2` |
//!
//! The `thm24_paper` numerator carries a leading coefficient one unit more
//! negative than the sum of its two ingredient bounds; it is still a valid
//! (weaker) bound and is kept for comparison. `thm24_rederived` is the
//! default.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which closed-form radius a [`RadiusResult`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaId {
    #[serde(rename = "thm21")]
    LinearInvariant,
    #[serde(rename = "cor_convex")]
    Convex,
    #[serde(rename = "thm22")]
    Univalent,
    #[serde(rename = "thm23")]
    Ozaki,
    #[serde(rename = "thm24_paper")]
    MixedPrinted,
    #[serde(rename = "thm24_rederived")]
    MixedRederived,
    #[serde(rename = "cor25")]
    MixedConvex,
    #[serde(rename = "thm26")]
    MixedLocallyConvex,
}

impl FormulaId {
    pub const ALL: [FormulaId; 8] = [
        FormulaId::LinearInvariant,
        FormulaId::Convex,
        FormulaId::Univalent,
        FormulaId::Ozaki,
        FormulaId::MixedPrinted,
        FormulaId::MixedRederived,
        FormulaId::MixedConvex,
        FormulaId::MixedLocallyConvex,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::LinearInvariant => "thm21",
            FormulaId::Convex => "cor_convex",
            FormulaId::Univalent => "thm22",
            FormulaId::Ozaki => "thm23",
            FormulaId::MixedPrinted => "thm24_paper",
            FormulaId::MixedRederived => "thm24_rederived",
            FormulaId::MixedConvex => "cor25",
            FormulaId::MixedLocallyConvex => "thm26",
        }
    }

    /// Whether the formula involves the starlike factors `g_j`.
    pub fn uses_starlike_factors(self) -> bool {
        matches!(
            self,
            FormulaId::MixedPrinted
                | FormulaId::MixedRederived
                | FormulaId::MixedConvex
                | FormulaId::MixedLocallyConvex
        )
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown formula `{s}`")))
    }
}

/// Leading coefficient of the mixed-operator quadratic: as displayed
/// (`paper`), or re-summed from the two ingredient bounds (`rederived`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "paper")]
    Printed,
    #[default]
    #[serde(rename = "rederived")]
    Rederived,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Variant::Printed),
            "rederived" => Ok(Variant::Rederived),
            other => Err(Error::BadParameter(format!("unknown variant `{other}`"))),
        }
    }
}

/// A class membership claim for one function.
///
/// JSON form: `"convex"`, `"univalent"`, `{"lif": 1.5}`, `{"ozaki": 0.5}`,
/// `{"starlike": 0.25}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassSpec {
    /// Universal linear invariant family of order `alpha >= 1`.
    Lif(f64),
    Convex,
    Univalent,
    /// `Re(1 + z f''/f') < 1 + beta/2`, `0 < beta <= 1`.
    Ozaki(f64),
    /// Starlike of order `0 <= xi < 1`.
    Starlike(f64),
}

impl ClassSpec {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassSpec::Lif(_) => "lif",
            ClassSpec::Convex => "convex",
            ClassSpec::Univalent => "univalent",
            ClassSpec::Ozaki(_) => "ozaki",
            ClassSpec::Starlike(_) => "starlike",
        }
    }

    pub fn parameter(&self) -> Option<f64> {
        match *self {
            ClassSpec::Lif(p) | ClassSpec::Ozaki(p) | ClassSpec::Starlike(p) => Some(p),
            ClassSpec::Convex | ClassSpec::Univalent => None,
        }
    }

    /// Checks the parameter range. `allow_large_beta` accepts any `beta > 0`
    /// for the Ozaki class and logs a warning.
    pub fn validate(&self, allow_large_beta: bool) -> Result<()> {
        match *self {
            ClassSpec::Lif(alpha) => check_alpha(alpha),
            ClassSpec::Ozaki(beta) => check_beta(beta, allow_large_beta),
            ClassSpec::Starlike(xi) => check_xi(xi),
            ClassSpec::Convex | ClassSpec::Univalent => Ok(()),
        }
    }

    /// The order `alpha` with `class ⊂ U_alpha`, where one is known.
    pub fn lif_order(&self) -> Option<f64> {
        match *self {
            ClassSpec::Lif(alpha) => Some(alpha),
            ClassSpec::Convex => Some(1.0),
            ClassSpec::Univalent | ClassSpec::Starlike(_) => Some(2.0),
            ClassSpec::Ozaki(_) => None,
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(p) => write!(f, "{}({p})", self.tag()),
            None => f.write_str(self.tag()),
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha >= 1.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::BadParameter(format!("alpha = {alpha} must be >= 1")))
    }
}

fn check_beta(beta: f64, allow_large: bool) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::BadParameter(format!("beta = {beta} must be > 0")));
    }
    if beta > 1.0 {
        if !allow_large {
            return Err(Error::BadParameter(format!("beta = {beta} outside (0, 1]")));
        }
        log::warn!("beta = {beta} > 1 accepted by override; the bound is outside its proven range");
    }
    Ok(())
}

fn check_xi(xi: f64) -> Result<()> {
    if (0.0..1.0).contains(&xi) {
        Ok(())
    } else {
        Err(Error::BadParameter(format!("xi = {xi} outside [0, 1)")))
    }
}

fn check_bound(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::BadParameter(format!("{name} = {v} must be a finite nonnegative number")))
    }
}

/// Smallest positive root of `a r^2 + b r + c`, computed without
/// cancellation: `q = -(b + sign(b) sqrt(disc)) / 2`, roots `q/a` and `c/q`.
pub fn solve_quadratic_positive_root(a: f64, b: f64, c: f64) -> Result<f64> {
    let none = || Error::NoPositiveRoot { a, b, c };
    let positive = |r: f64| r > 0.0 && r.is_finite();
    if a == 0.0 {
        let r = -c / b;
        return if positive(r) { Ok(r) } else { Err(none()) };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 || !disc.is_finite() {
        return Err(none());
    }
    let sign = if b < 0.0 { -1.0 } else { 1.0 };
    let q = -0.5 * (b + sign * disc.sqrt());
    let r1 = q / a;
    let r2 = if q != 0.0 { c / q } else { r1 };
    match (positive(r1), positive(r2)) {
        (true, true) => Ok(r1.min(r2)),
        (true, false) => Ok(r1),
        (false, true) => Ok(r2),
        (false, false) => Err(none()),
    }
}

/// Parameters of a radius formula. Unused fields are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RadiusParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    #[serde(skip)]
    pub allow_large_beta: bool,
}

impl RadiusParams {
    pub fn new(m: f64) -> Self {
        Self { m, ..Self::default() }
    }

    pub fn alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn xi(mut self, xi: f64) -> Self {
        self.xi = Some(xi);
        self
    }

    pub fn n(mut self, n: f64) -> Self {
        self.n = Some(n);
        self
    }

    pub fn variant(mut self, v: Variant) -> Self {
        self.variant = Some(v);
        self
    }
}

/// A closed-form radius together with the quadratic that defines it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub radius: f64,
    #[serde(rename = "formula")]
    pub formula_id: FormulaId,
    /// `(a, b, c)` of the profile numerator `a r^2 + b r + c`.
    pub quadratic: [f64; 3],
    pub discriminant: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    pub params: RadiusParams,
    /// The commonly quoted closed-form expression for the mixed radius, evaluated
    /// as written (it is negative for typical inputs).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_closed_form: Option<f64>,
}

impl RadiusResult {
    fn from_quadratic(
        formula_id: FormulaId,
        params: RadiusParams,
        a: f64,
        b: f64,
        radius: Option<f64>,
    ) -> Result<Self> {
        let c = 1.0;
        let degenerate = params.m == 0.0 && params.n.unwrap_or(0.0) == 0.0;
        let radius = if degenerate {
            1.0
        } else {
            match radius {
                Some(r) => r,
                None => solve_quadratic_positive_root(a, b, c)?,
            }
        };
        Ok(Self {
            radius,
            formula_id,
            quadratic: [a, b, c],
            discriminant: b * b - 4.0 * a * c,
            variant: params.variant,
            params,
            printed_closed_form: None,
        })
    }

    /// `a r^2 + b r + c` at `r`.
    pub fn numerator(&self, r: f64) -> f64 {
        let [a, b, c] = self.quadratic;
        (a * r + b) * r + c
    }

    /// Guaranteed lower bound for `min_{|z|=r} Re Q`; `1` at `r = 0` and
    /// zero at the radius.
    pub fn profile(&self, r: f64) -> f64 {
        let denom = match self.formula_id {
            FormulaId::Ozaki => 1.0 - r,
            _ => 1.0 - r * r,
        };
        self.numerator(r) / denom
    }

    /// `|a r^2 + b r + c|` at the stored radius, or `None` when the radius
    /// is the degenerate value `1`.
    pub fn residual(&self) -> Option<f64> {
        (self.radius < 1.0).then(|| self.numerator(self.radius).abs())
    }
}

/// Order-`alpha` functions `f_i` in `F`.
pub fn radius_lif(alpha: f64, m: f64) -> Result<RadiusResult> {
    check_alpha(alpha)?;
    check_bound("M", m)?;
    let params = RadiusParams::new(m).alpha(alpha);
    RadiusResult::from_quadratic(FormulaId::LinearInvariant, params, -(2.0 * m + 1.0), -2.0 * alpha * m, None)
}

/// Convex `f_i` in `F`: `1/(2M+1)`.
pub fn radius_convex(m: f64) -> Result<RadiusResult> {
    check_bound("M", m)?;
    let params = RadiusParams::new(m);
    let r = 1.0 / (2.0 * m + 1.0);
    RadiusResult::from_quadratic(FormulaId::Convex, params, -(2.0 * m + 1.0), -2.0 * m, Some(r))
}

/// Univalent `f_i` in `F`: `1/(sqrt(4M^2+2M+1) + 2M)`.
pub fn radius_univalent(m: f64) -> Result<RadiusResult> {
    check_bound("M", m)?;
    let params = RadiusParams::new(m);
    let r = 1.0 / ((4.0 * m * m + 2.0 * m + 1.0).sqrt() + 2.0 * m);
    RadiusResult::from_quadratic(FormulaId::Univalent, params, -(2.0 * m + 1.0), -4.0 * m, Some(r))
}

/// `f_i` in `G(beta_i)`, `beta = max beta_i`: `1/(beta M + 1)`.
pub fn radius_ozaki(beta: f64, m: f64) -> Result<RadiusResult> {
    radius_ozaki_with(RadiusParams::new(m).beta(beta))
}

fn radius_ozaki_with(params: RadiusParams) -> Result<RadiusResult> {
    let beta = params.beta.ok_or_else(|| Error::BadParameter("thm23 requires beta".into()))?;
    check_beta(beta, params.allow_large_beta)?;
    check_bound("M", params.m)?;
    let m = params.m;
    let r = 1.0 / (beta * m + 1.0);
    let params = RadiusParams { alpha: None, xi: None, n: None, variant: None, ..params };
    RadiusResult::from_quadratic(FormulaId::Ozaki, params, 0.0, -(beta * m + 1.0), Some(r))
}

/// The displayed closed form of the mixed radius, evaluated literally.
pub fn printed_mixed_closed_form(alpha: f64, xi: f64, m: f64, n: f64) -> f64 {
    let u = (xi - 1.0) * n;
    let d = u - m - 1.0;
    (((u - alpha * m).powi(2) - 2.0 * d).sqrt() - u + alpha * m) / (2.0 * d)
}

/// Order-`alpha` `f_i` and starlike-of-order-`xi` `g_j` in `J`.
pub fn radius_mixed(alpha: f64, xi: f64, m: f64, n: f64, variant: Variant) -> Result<RadiusResult> {
    check_alpha(alpha)?;
    mixed(FormulaId::for_mixed(variant), alpha, xi, m, n, variant)
}

/// [`radius_mixed`] with `alpha = 1`.
pub fn radius_mixed_convex(xi: f64, m: f64, n: f64, variant: Variant) -> Result<RadiusResult> {
    mixed(FormulaId::MixedConvex, 1.0, xi, m, n, variant)
}

impl FormulaId {
    fn for_mixed(variant: Variant) -> Self {
        match variant {
            Variant::Printed => FormulaId::MixedPrinted,
            Variant::Rederived => FormulaId::MixedRederived,
        }
    }
}

fn mixed(id: FormulaId, alpha: f64, xi: f64, m: f64, n: f64, variant: Variant) -> Result<RadiusResult> {
    check_xi(xi)?;
    check_bound("M", m)?;
    check_bound("N", n)?;
    let s = (1.0 - xi) * n;
    let a = match variant {
        Variant::Printed => -2.0 * (s + m + 1.0),
        Variant::Rederived => -(2.0 * s + 2.0 * m + 1.0),
    };
    let b = -2.0 * (alpha * m + s);
    let mut params = RadiusParams::new(m).xi(xi).n(n).variant(variant);
    if id != FormulaId::MixedConvex {
        params = params.alpha(alpha);
    }
    let mut result = RadiusResult::from_quadratic(id, params, a, b, None)?;
    if variant == Variant::Printed {
        result.printed_closed_form = Some(printed_mixed_closed_form(alpha, xi, m, n));
    }
    Ok(result)
}

/// `f_i` in `G(beta_i)` and starlike `g_j` in `J`:
/// `1/(2(1-xi)N + beta M + 1)`.
pub fn radius_mixed_locally_convex(beta: f64, xi: f64, m: f64, n: f64) -> Result<RadiusResult> {
    mixed_locally_convex(RadiusParams::new(m).beta(beta).xi(xi).n(n))
}

fn mixed_locally_convex(params: RadiusParams) -> Result<RadiusResult> {
    let beta = params.beta.ok_or_else(|| Error::BadParameter("thm26 requires beta".into()))?;
    let xi = params.xi.ok_or_else(|| Error::BadParameter("thm26 requires xi".into()))?;
    let n = params.n.unwrap_or(0.0);
    check_beta(beta, params.allow_large_beta)?;
    check_xi(xi)?;
    check_bound("M", params.m)?;
    check_bound("N", n)?;
    let k = 2.0 * (1.0 - xi) * n + beta * params.m;
    // -(k+1) r^2 - k r + 1 = -((k+1) r - 1)(r + 1)
    let factored = 1.0 / (k + 1.0);
    let params = RadiusParams { alpha: None, variant: None, n: Some(n), ..params };
    let result = RadiusResult::from_quadratic(FormulaId::MixedLocallyConvex, params, -(k + 1.0), -k, Some(factored))?;
    debug_assert!(
        result.radius == 1.0 || (solve_quadratic_positive_root(-(k + 1.0), -k, 1.0).unwrap() - factored).abs() <= 1e-12
    );
    Ok(result)
}

/// Dispatches on `formula`, pulling what it needs from `params`.
pub fn radius(formula: FormulaId, params: &RadiusParams) -> Result<RadiusResult> {
    let need = |v: Option<f64>, what: &str| v.ok_or_else(|| Error::BadParameter(format!("{formula} requires {what}")));
    let n = params.n.unwrap_or(0.0);
    let variant = params.variant.unwrap_or_default();
    match formula {
        FormulaId::LinearInvariant => radius_lif(need(params.alpha, "alpha")?, params.m),
        FormulaId::Convex => radius_convex(params.m),
        FormulaId::Univalent => radius_univalent(params.m),
        FormulaId::Ozaki => radius_ozaki_with(*params),
        FormulaId::MixedPrinted => {
            mixed_variant_guard(params, Variant::Printed)?;
            radius_mixed(need(params.alpha, "alpha")?, need(params.xi, "xi")?, params.m, n, Variant::Printed)
        }
        FormulaId::MixedRederived => {
            mixed_variant_guard(params, Variant::Rederived)?;
            radius_mixed(need(params.alpha, "alpha")?, need(params.xi, "xi")?, params.m, n, Variant::Rederived)
        }
        FormulaId::MixedConvex => radius_mixed_convex(need(params.xi, "xi")?, params.m, n, variant),
        FormulaId::MixedLocallyConvex => mixed_locally_convex(*params),
    }
}

fn mixed_variant_guard(params: &RadiusParams, implied: Variant) -> Result<()> {
    match params.variant {
        Some(v) if v != implied => {
            Err(Error::BadParameter(format!("variant conflicts with formula {}", FormulaId::for_mixed(implied))))
        }
        _ => Ok(()),
    }
}

/// The guaranteed lower bound for `min_{|z|=r} Re Q` under `formula`.
pub fn lower_bound_profile(formula: FormulaId, params: &RadiusParams, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::BadParameter(format!("r = {r} outside [0, 1)")));
    }
    Ok(radius(formula, params)?.profile(r))
}
