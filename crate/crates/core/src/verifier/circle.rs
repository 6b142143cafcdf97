//! Global minimization of `theta -> Re Q(r e^{i theta})` and the empirical
//! radius of convexity.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{convexity_functional, Scenario};

/// Minimum of `Re Q` over one circle `|z| = r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleMin {
    pub value: f64,
    pub arg_theta: f64,
    pub r: f64,
    /// Number of evaluations of `Q` spent.
    pub evaluations: usize,
}

/// Number of best sampled local minima refined by golden-section search.
const BRACKETS: usize = 3;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

fn re_q(s: &Scenario, r: f64, theta: f64) -> Result<f64> {
    convexity_functional(s, Complex64::from_polar(r, theta))
        .map(|q| q.re)
        .map_err(|e| Error::EvaluationFailure { theta, source: Box::new(e) })
}

/// `Re Q` at `n` equally spaced angles `2 pi k / n`. Evaluation runs in
/// parallel; errors are reported for the lowest failing index.
pub fn sample_circle(s: &Scenario, r: f64, n: usize) -> Result<Vec<f64>> {
    let values: Vec<Result<f64>> =
        (0..n).into_par_iter().with_min_len(256).map(|k| re_q(s, r, TAU * k as f64 / n as f64)).collect();
    values.into_iter().collect()
}

/// `(theta, Re Q)` pairs on `|z| = r`, for plotting.
pub fn circle_profile(s: &Scenario, r: f64, n: usize) -> Result<Vec<(f64, f64)>> {
    let values = sample_circle(s, r, n)?;
    Ok(values.into_iter().enumerate().map(|(k, v)| (TAU * k as f64 / n as f64, v)).collect())
}

/// Golden-section search for a minimum of `f` in `[lo, hi]`; returns the
/// best point seen and the number of evaluations.
fn golden_section<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<((f64, f64), usize)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evals = 2;
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
        evals += 1;
    }
    let best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    Ok((best, evals))
}

fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Global minimum of `Re Q` on `|z| = r`: uniform sampling at `n_samples`
/// angles, then golden-section refinement to `refine_tol` (in `theta`)
/// inside the brackets of the three lowest sampled local minima. Ties go to
/// the smallest angle.
pub fn min_re_on_circle(s: &Scenario, r: f64, n_samples: usize, refine_tol: f64) -> Result<CircleMin> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::BadParameter(format!("circle radius {r} outside (0, 1)")));
    }
    if n_samples < 256 {
        return Err(Error::BadParameter(format!("n_samples = {n_samples} < 256")));
    }
    if !(refine_tol > 0.0) {
        return Err(Error::BadParameter(format!("refine_tol = {refine_tol} must be positive")));
    }
    let n = n_samples;
    let step = TAU / n as f64;
    let values = sample_circle(s, r, n)?;
    let mut evaluations = n;

    let mut local_minima: Vec<usize> = (0..n)
        .filter(|&k| {
            let v = values[k];
            v <= values[(k + n - 1) % n] && v <= values[(k + 1) % n]
        })
        .collect();
    local_minima.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));

    let sample_best = local_minima.first().copied().unwrap_or(0);
    let mut best = (step * sample_best as f64, values[sample_best]);
    let mut consider = |theta: f64, value: f64| {
        let theta = wrap_angle(theta);
        if value < best.1 || (value == best.1 && theta < best.0) {
            best = (theta, value);
        }
    };
    for &k in local_minima.iter().take(BRACKETS) {
        let center = step * k as f64;
        let ((theta, value), evals) = golden_section(|t| re_q(s, r, t), center - step, center + step, refine_tol)?;
        evaluations += evals;
        consider(theta, value);
    }
    Ok(CircleMin { value: best.1, arg_theta: best.0, r, evaluations })
}

/// Outcome of [`empirical_convexity_radius`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalRadius {
    pub radius: f64,
    /// No sign change of `min Re Q` was found up to the cap.
    pub cap_reached: bool,
    pub evaluations: usize,
}

/// Coarse grid step of the radius scan.
pub const RADIUS_STEP: f64 = 0.01;
/// Largest radius examined.
pub const RADIUS_CAP: f64 = 0.995;

/// Largest `r` with `min_{|z|=r} Re Q >= 0`: scans `r = 0.01, 0.02, ...,
/// 0.99` and the cap `0.995` for the first circle where the minimum goes
/// negative, then bisects inside that cell down to `tol`. Returns the
/// verified lower end of the final cell.
pub fn empirical_convexity_radius(
    s: &Scenario,
    n_samples: usize,
    refine_tol: f64,
    tol: f64,
) -> Result<EmpiricalRadius> {
    if !(tol > 0.0) {
        return Err(Error::BadParameter(format!("tolerance {tol} must be positive")));
    }
    let mut evaluations = 0;
    let mut probe = |r: f64| -> Result<bool> {
        let m = min_re_on_circle(s, r, n_samples, refine_tol)?;
        evaluations += m.evaluations;
        Ok(m.value >= 0.0)
    };

    let steps = (RADIUS_CAP / RADIUS_STEP).floor() as usize;
    let grid = (1..=steps).map(|k| k as f64 * RADIUS_STEP).chain(std::iter::once(RADIUS_CAP));
    let mut lo = 0.0;
    let mut hi = None;
    for r in grid {
        if probe(r)? {
            lo = r;
        } else {
            hi = Some(r);
            break;
        }
    }
    let Some(mut hi) = hi else {
        return Ok(EmpiricalRadius { radius: RADIUS_CAP, cap_reached: true, evaluations });
    };
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if probe(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(EmpiricalRadius { radius: lo, cap_reached: false, evaluations })
}
