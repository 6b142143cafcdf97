//! Complex elementary functions that stay accurate near the origin.

use num_complex::Complex64;

/// `ln(1 + z)` on the principal branch, without cancellation for small `z`.
pub fn ln_1p(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    // |1 + z|^2 - 1 = 2x + x^2 + y^2
    let re = 0.5 * (2.0 * x + x * x + y * y).ln_1p();
    let im = y.atan2(1.0 + x);
    Complex64::new(re, im)
}

/// `exp(w) - 1`, accurate for small `w`.
pub fn exp_m1(w: Complex64) -> Complex64 {
    let (x, y) = (w.re, w.im);
    let half = (0.5 * y).sin();
    let re = x.exp_m1() * y.cos() - 2.0 * half * half;
    let im = x.exp() * y.sin();
    Complex64::new(re, im)
}
