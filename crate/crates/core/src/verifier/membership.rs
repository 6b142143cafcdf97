//! Pointwise checks of class-defining inequalities on polar grids.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analytic::FunctionHandle;
use crate::error::{Error, Result};
use crate::radii::ClassSpec;

/// Relative slack for treating equality cases of the distortion bound as
/// satisfied.
pub const LEMMA_REL_TOL: f64 = 1e-10;

/// Radii must stay below this; open-disk conditions are checked on the
/// compact disk `|z| <= 0.99`.
pub const GRID_RADIUS_CAP: f64 = 0.99;

/// Polar grid for membership checks, optionally with extra random points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub radii: Vec<f64>,
    pub n_angles: usize,
    #[serde(default)]
    pub random_points: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        radii.extend([0.95, GRID_RADIUS_CAP]);
        Self { radii, n_angles: 512, random_points: 0, seed: 0 }
    }
}

impl GridSpec {
    pub fn new(radii: Vec<f64>, n_angles: usize) -> Self {
        Self { radii, n_angles, random_points: 0, seed: 0 }
    }

    fn points(&self) -> Result<Vec<Complex64>> {
        if let Some(&r) = self.radii.iter().find(|&&r| !(r > 0.0 && r <= GRID_RADIUS_CAP)) {
            return Err(Error::BadParameter(format!("grid radius {r} outside (0, {GRID_RADIUS_CAP}]")));
        }
        if self.n_angles == 0 {
            return Err(Error::BadParameter("grid needs at least one angle".into()));
        }
        let mut pts: Vec<Complex64> = self
            .radii
            .iter()
            .flat_map(|&r| {
                (0..self.n_angles).map(move |j| Complex64::from_polar(r, TAU * j as f64 / self.n_angles as f64))
            })
            .collect();
        if self.random_points > 0 {
            let outer = self.radii.iter().copied().fold(0.0, f64::max);
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            for _ in 0..self.random_points {
                let r = outer * rng.gen::<f64>().sqrt();
                pts.push(Complex64::from_polar(r.max(1e-3), rng.gen_range(0.0..TAU)));
            }
        }
        Ok(pts)
    }
}

/// Both sides of the distortion bound for functions of order `alpha`:
/// `|z f''/f' - 2|z|^2/(1-|z|^2)|` and `2 alpha |z| / (1 - |z|^2)`.
pub fn lemma_sides(f: &FunctionHandle, alpha: f64, z: Complex64) -> Result<(f64, f64)> {
    let r2 = z.norm_sqr();
    let w = f.z_f2_over_f1(z)?;
    let lhs = (w - 2.0 * r2 / (1.0 - r2)).norm();
    let rhs = 2.0 * alpha * z.norm() / (1.0 - r2);
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaViolation {
    pub z: [f64; 2],
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub alpha: f64,
    pub points_checked: usize,
    /// Smallest `rhs - lhs` seen (negative on violation).
    pub min_slack: f64,
    pub min_slack_at: [f64; 2],
    /// Largest `rhs - lhs` seen.
    pub max_slack: f64,
    pub violations: Vec<LemmaViolation>,
    pub pass: bool,
}

/// Checks the distortion bound at 512 angles on every radius of `r_grid`.
pub fn check_lemma_lif(f: &FunctionHandle, alpha: f64, r_grid: &[f64]) -> Result<LemmaReport> {
    if !(alpha >= 1.0) {
        return Err(Error::BadParameter(format!("alpha = {alpha} must be >= 1")));
    }
    if let Some(&r) = r_grid.iter().find(|&&r| !(r > 0.0 && r < 1.0)) {
        return Err(Error::BadParameter(format!("grid radius {r} outside (0, 1)")));
    }
    let grid = GridSpec { radii: r_grid.to_vec(), n_angles: 512, random_points: 0, seed: 0 };
    let pts: Vec<Complex64> = r_grid
        .iter()
        .flat_map(|&r| (0..grid.n_angles).map(move |j| Complex64::from_polar(r, TAU * j as f64 / 512.0)))
        .collect();
    lemma_on_points(f, alpha, &pts)
}

fn lemma_on_points(f: &FunctionHandle, alpha: f64, pts: &[Complex64]) -> Result<LemmaReport> {
    let mut report = LemmaReport {
        alpha,
        points_checked: pts.len(),
        min_slack: f64::INFINITY,
        min_slack_at: [0.0, 0.0],
        max_slack: f64::NEG_INFINITY,
        violations: Vec::new(),
        pass: true,
    };
    for &z in pts {
        let (lhs, rhs) = lemma_sides(f, alpha, z)?;
        let slack = rhs - lhs;
        if slack < report.min_slack {
            report.min_slack = slack;
            report.min_slack_at = [z.re, z.im];
        }
        report.max_slack = report.max_slack.max(slack);
        if slack < -LEMMA_REL_TOL * rhs.max(1.0) {
            report.violations.push(LemmaViolation { z: [z.re, z.im], lhs, rhs });
        }
    }
    report.pass = report.violations.is_empty();
    Ok(report)
}

/// How strong a membership verdict is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// The class-defining inequality itself was checked.
    Defining,
    /// Only a necessary condition (the distortion bound) is available.
    NecessaryOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub function: String,
    pub class: ClassSpec,
    pub basis: Basis,
    /// Smallest margin of the checked inequality (positive means satisfied).
    pub worst_margin: f64,
    pub worst_point: [f64; 2],
    pub points_checked: usize,
    pub pass: bool,
    pub label: String,
}

/// Evaluates the defining inequality of `class` on the grid:
///
/// * `starlike(xi)`: `Re(z f'/f) > xi`
/// * `convex`: `Re(1 + z f''/f') > 0`
/// * `ozaki(beta)`: `Re(1 + z f''/f') < 1 + beta/2`
///
/// `lif(alpha)` and `univalent` have no pointwise characterization; for them
/// the distortion bound (with `alpha = 2` for univalent functions) is
/// checked instead and the report is labeled necessary-only.
pub fn check_class_membership(f: &FunctionHandle, class: ClassSpec, grid: &GridSpec) -> Result<MembershipReport> {
    class.validate(true)?;
    let pts = grid.points()?;
    let outer = grid.radii.iter().copied().fold(0.0, f64::max);
    let label = |pass: bool, basis: Basis| match (pass, basis) {
        (true, Basis::Defining) => format!("verified on compact exhaustion (|z| <= {outer})"),
        (true, Basis::NecessaryOnly) => format!("necessary-only: distortion bound holds for |z| <= {outer}"),
        (false, _) => "violated".to_string(),
    };

    let lemma_alpha = match class {
        ClassSpec::Lif(alpha) => Some(alpha),
        ClassSpec::Univalent => Some(2.0),
        _ => None,
    };
    if let Some(alpha) = lemma_alpha {
        let lemma = lemma_on_points(f, alpha, &pts)?;
        return Ok(MembershipReport {
            function: f.to_string(),
            class,
            basis: Basis::NecessaryOnly,
            worst_margin: lemma.min_slack,
            worst_point: lemma.min_slack_at,
            points_checked: lemma.points_checked,
            pass: lemma.pass,
            label: label(lemma.pass, Basis::NecessaryOnly),
        });
    }

    let margin = |z: Complex64| -> Result<f64> {
        Ok(match class {
            ClassSpec::Starlike(xi) => f.z_f1_over_f_minus_one(z)?.re + 1.0 - xi,
            ClassSpec::Convex => 1.0 + f.z_f2_over_f1(z)?.re,
            ClassSpec::Ozaki(beta) => beta / 2.0 - f.z_f2_over_f1(z)?.re,
            ClassSpec::Lif(_) | ClassSpec::Univalent => unreachable!("handled above"),
        })
    };
    let mut worst = (f64::INFINITY, [0.0, 0.0]);
    for &z in &pts {
        let m = margin(z)?;
        if m < worst.0 {
            worst = (m, [z.re, z.im]);
        }
    }
    let pass = worst.0 > 0.0;
    Ok(MembershipReport {
        function: f.to_string(),
        class,
        basis: Basis::Defining,
        worst_margin: worst.0,
        worst_point: worst.1,
        points_checked: pts.len(),
        pass,
        label: label(pass, Basis::Defining),
    })
}

/// Strict variant for callers that need a defining check: fails with
/// `UncheckableClass` where only necessary conditions exist.
pub fn check_class_membership_strict(
    f: &FunctionHandle,
    class: ClassSpec,
    grid: &GridSpec,
) -> Result<MembershipReport> {
    match class {
        ClassSpec::Lif(_) | ClassSpec::Univalent => Err(Error::UncheckableClass(class.to_string())),
        _ => check_class_membership(f, class, grid),
    }
}
