use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::analytic::{invariance_a2, FunctionHandle, MobiusParams};
use crate::error::{Error, Result};

/// Lower bound on `ord f = sup |a_2(F_phi(f))|` from a polar grid of
/// automorphism parameters `a = a_max (i/grid) e^{2 pi i j/grid}`,
/// `1 <= i <= grid`, `0 <= j < grid`.
///
/// `|a_2|` depends on `phi` only through `phi(0) = e^{i theta} a`, so the
/// rotation is fixed at `theta = 0` and the grid covers `phi(0)` directly.
pub fn estimate_order(f: &FunctionHandle, a_max: f64, grid: usize) -> Result<f64> {
    if !(a_max > 0.0 && a_max < 1.0) {
        return Err(Error::BadParameter(format!("a_max = {a_max} outside (0, 1)")));
    }
    if grid == 0 {
        return Err(Error::BadParameter("grid must be positive".into()));
    }
    let mut best: f64 = 0.0;
    for i in 1..=grid {
        let rho = a_max * i as f64 / grid as f64;
        for j in 0..grid {
            let a = Complex64::from_polar(rho, TAU * j as f64 / grid as f64);
            let m = MobiusParams::new(a, 0.0)?;
            best = best.max(invariance_a2(f, &m)?.norm());
        }
    }
    Ok(best)
}
