//! Numerical checks of the closed-form radii.
//!
//! The central quantity is `min_{|z|=r} Re Q(z)` for the convexity
//! functional `Q` of a scenario. Since `Re Q` is harmonic, this minimum is
//! nonincreasing in `r`, and the empirical radius of convexity is the first
//! `r` where it reaches zero.

mod circle;
mod membership;
mod order;

pub use circle::{
    circle_profile, empirical_convexity_radius, min_re_on_circle, sample_circle, CircleMin, EmpiricalRadius,
    RADIUS_CAP, RADIUS_STEP,
};
pub use membership::{
    check_class_membership, check_class_membership_strict, check_lemma_lif, lemma_sides, Basis, GridSpec, LemmaReport,
    LemmaViolation, MembershipReport, GRID_RADIUS_CAP, LEMMA_REL_TOL,
};
pub use order::estimate_order;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::operators::{Scenario, Term, BOUND_SLACK};
use crate::radii::{ClassSpec, FormulaId, RadiusResult};

/// Fractions of the claimed radius at which the profile bound is checked.
pub const PROFILE_FRACTIONS: [f64; 4] = [0.25, 0.5, 0.75, 0.9];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifySettings {
    /// Uniform samples per circle.
    pub n_samples: usize,
    /// Angular tolerance of the golden-section refinement.
    pub refine_tol: f64,
    /// Bisection tolerance of the empirical radius.
    pub bisection_tol: f64,
    /// Allowed shortfall of the empirical radius below the closed form.
    pub radius_tol: f64,
    /// Allowed shortfall of `min Re Q` below the profile bound.
    pub value_tol: f64,
    /// Grid for the class membership checks of the inputs.
    pub class_grid: GridSpec,
}

impl Default for VerifySettings {
    fn default() -> Self {
        Self {
            n_samples: 4096,
            refine_tol: 1e-9,
            bisection_tol: 1e-6,
            radius_tol: 1e-4,
            value_tol: 1e-6,
            class_grid: GridSpec::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub r: f64,
    pub min_re_q: f64,
    pub profile: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scenario_id: String,
    pub formula: FormulaId,
    pub closed_form_radius: f64,
    pub empirical_radius: Option<f64>,
    pub cap_reached: bool,
    pub profile_check: Vec<ProfileRow>,
    pub class_checks: Vec<MembershipReport>,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
    pub samples_used: usize,
    /// Seconds.
    pub wall_time: f64,
}

/// The class claim of `term` if it meets the hypotheses of `formula`,
/// otherwise a diagnostic.
fn term_fits(formula: FormulaId, claim: &RadiusResult, term: &Term, is_g: bool) -> Result<ClassSpec, String> {
    let class = term.class.ok_or_else(|| format!("{}: no class given", term.function))?;
    let tol = 1e-12;
    let p = &claim.params;
    let ok = if is_g {
        match (formula.uses_starlike_factors(), class) {
            (false, _) => return Err(format!("{}: quotient factors are outside {formula}", term.function)),
            (true, ClassSpec::Starlike(xi_j)) => xi_j >= p.xi.unwrap_or(0.0) - tol,
            (true, ClassSpec::Convex) => 0.5 >= p.xi.unwrap_or(0.0) - tol,
            (true, _) => false,
        }
    } else {
        match formula {
            FormulaId::LinearInvariant | FormulaId::MixedPrinted | FormulaId::MixedRederived => {
                let alpha = p.alpha.unwrap_or(1.0);
                class.lif_order().is_some_and(|a| a <= alpha + tol)
            }
            FormulaId::Convex | FormulaId::MixedConvex => class.lif_order().is_some_and(|a| a <= 1.0 + tol),
            FormulaId::Univalent => {
                matches!(class, ClassSpec::Univalent | ClassSpec::Convex | ClassSpec::Starlike(_))
                    || matches!(class, ClassSpec::Lif(a) if a <= 1.0 + tol)
            }
            FormulaId::Ozaki | FormulaId::MixedLocallyConvex => {
                matches!(class, ClassSpec::Ozaki(b) if b <= p.beta.unwrap_or(0.0) + tol)
            }
        }
    };
    if ok {
        Ok(class)
    } else {
        Err(format!("{}: class {class} does not meet the hypotheses of {formula}", term.function))
    }
}

/// Checks a closed-form claim against a scenario: hypothesis consistency
/// (classes and weight bounds), class membership of every input on a grid,
/// the empirical radius, and the profile bound at fractions of the radius.
///
/// The verdict is `fail` only when the hypotheses hold and the numbers
/// contradict the claim; unmet or unknown hypotheses give `inconclusive`.
pub fn verify_scenario(s: &Scenario, claim: &RadiusResult, settings: &VerifySettings) -> VerificationReport {
    let start = Instant::now();
    let formula = claim.formula_id;
    let mut diagnostics = Vec::new();
    let mut consistent = true;

    let sum_gamma: f64 = s.fs().iter().map(|t| t.weight.norm()).sum();
    let sum_lambda: f64 = s.gs().iter().map(|t| t.weight.norm()).sum();
    let claim_n = claim.params.n.unwrap_or(0.0);
    if sum_gamma > claim.params.m + BOUND_SLACK {
        consistent = false;
        diagnostics.push(format!("sum |gamma_i| = {sum_gamma} exceeds claimed M = {}", claim.params.m));
    }
    if sum_lambda > claim_n + BOUND_SLACK {
        consistent = false;
        diagnostics.push(format!("sum |lambda_j| = {sum_lambda} exceeds claimed N = {claim_n}"));
    }

    let mut class_checks = Vec::new();
    let terms = s.fs().iter().map(|t| (t, false)).chain(s.gs().iter().map(|t| (t, true)));
    for (term, is_g) in terms {
        match term_fits(formula, claim, term, is_g) {
            Ok(class) => match check_class_membership(&term.function, class, &settings.class_grid) {
                Ok(rep) => {
                    if !rep.pass {
                        consistent = false;
                        diagnostics.push(format!("{}: membership in {class} not confirmed", term.function));
                    }
                    class_checks.push(rep);
                }
                Err(e) => {
                    consistent = false;
                    diagnostics.push(format!("{}: class check failed: {e}", term.function));
                }
            },
            Err(msg) => {
                consistent = false;
                diagnostics.push(msg);
            }
        }
    }

    let mut samples_used = 0;
    let mut numeric_ok = true;
    let mut numeric_error = false;

    let empirical = empirical_convexity_radius(s, settings.n_samples, settings.refine_tol, settings.bisection_tol);
    let (empirical_radius, cap_reached) = match empirical {
        Ok(e) => {
            samples_used += e.evaluations;
            // at the cap only `radius >= cap` is known
            let shortfall =
                if e.cap_reached { claim.radius.min(RADIUS_CAP) - e.radius } else { claim.radius - e.radius };
            if shortfall > settings.radius_tol {
                numeric_ok = false;
                diagnostics.push(format!(
                    "empirical radius {} is below the closed form {} by {shortfall}",
                    e.radius, claim.radius
                ));
            }
            (Some(e.radius), e.cap_reached)
        }
        Err(e) => {
            numeric_error = true;
            diagnostics.push(format!("empirical radius: {e}"));
            (None, false)
        }
    };

    let mut profile_check = Vec::new();
    for frac in PROFILE_FRACTIONS {
        let r = frac * claim.radius;
        match min_re_on_circle(s, r, settings.n_samples, settings.refine_tol) {
            Ok(m) => {
                samples_used += m.evaluations;
                let profile = claim.profile(r);
                let pass = m.value >= profile - settings.value_tol;
                if !pass {
                    numeric_ok = false;
                    diagnostics.push(format!("min Re Q = {} below profile {profile} at r = {r}", m.value));
                }
                profile_check.push(ProfileRow { r, min_re_q: m.value, profile, pass });
            }
            Err(e) => {
                numeric_error = true;
                diagnostics.push(format!("profile at r = {r}: {e}"));
            }
        }
    }

    let verdict = if !consistent || numeric_error {
        Verdict::Inconclusive
    } else if numeric_ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    VerificationReport {
        scenario_id: s.id().to_string(),
        formula,
        closed_form_radius: claim.radius,
        empirical_radius,
        cap_reached,
        profile_check,
        class_checks,
        verdict,
        diagnostics,
        samples_used,
        wall_time: start.elapsed().as_secs_f64(),
    }
}
