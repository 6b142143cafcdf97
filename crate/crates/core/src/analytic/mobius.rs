//! Disk automorphisms `phi(z) = e^{i theta} (z + a)/(1 + conj(a) z)` and the
//! renormalized composition used to define linear invariance.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::catalog::FunctionHandle;
use super::series::NON_UNIT_TOL;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusParams {
    a: Complex64,
    theta: f64,
}

impl MobiusParams {
    pub fn new(a: Complex64, theta: f64) -> Result<Self> {
        if !(a.norm() < 1.0) || !theta.is_finite() {
            return Err(Error::BadParameter(format!("automorphism needs |a| < 1, got a = {a}")));
        }
        Ok(Self { a, theta })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    fn rotation(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.rotation() * (z + self.a) / (1.0 + self.a.conj() * z)
    }

    /// `phi(0) = e^{i theta} a`.
    pub fn at_zero(&self) -> Complex64 {
        self.rotation() * self.a
    }

    /// `phi'(0) = e^{i theta} (1 - |a|^2)`.
    pub fn derivative_at_zero(&self) -> Complex64 {
        self.rotation() * (1.0 - self.a.norm_sqr())
    }

    /// `phi''(0) = -2 conj(a) e^{i theta} (1 - |a|^2)`.
    pub fn second_derivative_at_zero(&self) -> Complex64 {
        -2.0 * self.a.conj() * self.derivative_at_zero()
    }
}

/// The renormalized composition
/// `F_phi(f)(z) = [f(phi(z)) - f(phi(0))] / [f'(phi(0)) phi'(0)]`.
pub fn renormalized(f: &FunctionHandle, m: &MobiusParams, z: Complex64) -> Result<Complex64> {
    let w0 = m.at_zero();
    let jet0 = f.jet(w0)?;
    if jet0.df.norm() <= NON_UNIT_TOL {
        return Err(Error::CriticalPoint(w0));
    }
    Ok((f.value(m.apply(z))? - jet0.f) / (jet0.df * m.derivative_at_zero()))
}

/// Second Taylor coefficient of `F_phi(f)`, from the chain rule:
/// `a_2 = f''(w) phi'(0) / (2 f'(w)) + phi''(0) / (2 phi'(0))`, `w = phi(0)`.
pub fn invariance_a2(f: &FunctionHandle, m: &MobiusParams) -> Result<Complex64> {
    let w0 = m.at_zero();
    let jet = f.jet(w0)?;
    if jet.df.norm() <= NON_UNIT_TOL {
        return Err(Error::CriticalPoint(w0));
    }
    let d1 = m.derivative_at_zero();
    Ok(jet.d2f * d1 / (2.0 * jet.df) + m.second_derivative_at_zero() / (2.0 * d1))
}

/// Finite-difference estimate of `a_2(F_phi)` from values of `F_phi` alone.
///
/// Uses the four-point central stencil
/// `[F(h) + F(-h) - F(ih) - F(-ih)] / (4 h^2)`, whose error is `O(h^4)`.
pub fn invariance_a2_finite_difference(f: &FunctionHandle, m: &MobiusParams, h: f64) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let hr = Complex64::new(h, 0.0);
    let sum =
        renormalized(f, m, hr)? + renormalized(f, m, -hr)? - renormalized(f, m, i * hr)? - renormalized(f, m, -i * hr)?;
    Ok(sum / (4.0 * h * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_rotation_has_zero_a2() {
        let m = MobiusParams::new(Complex64::new(0.0, 0.0), 1.3).unwrap();
        assert_eq!(invariance_a2(&FunctionHandle::identity(), &m).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn identity_translation_gives_minus_conj_a() {
        let m = MobiusParams::new(Complex64::new(0.5, 0.0), 0.0).unwrap();
        let a2 = invariance_a2(&FunctionHandle::identity(), &m).unwrap();
        assert!((a2 - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        let fd = invariance_a2_finite_difference(&FunctionHandle::identity(), &m, 1e-3).unwrap();
        assert!((fd - a2).norm() < 1e-8);
    }

    #[test]
    fn renormalized_function_is_normalized() {
        let m = MobiusParams::new(Complex64::new(0.3, -0.4), 0.7).unwrap();
        let f = FunctionHandle::koebe();
        assert!(renormalized(&f, &m, Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-15);
        let h = 1e-6;
        let d = renormalized(&f, &m, Complex64::new(h, 0.0)).unwrap() / h;
        assert!((d - 1.0).norm() < 1e-5);
    }

    #[test]
    fn rejects_boundary_parameter() {
        assert!(MobiusParams::new(Complex64::new(1.0, 0.0), 0.0).is_err());
        assert!(MobiusParams::new(Complex64::new(0.6, 0.8), 0.0).is_err());
    }

    #[test]
    fn analytic_matches_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let fs = [
            FunctionHandle::half_plane(),
            FunctionHandle::koebe(),
            FunctionHandle::starlike_extremal(0.2).unwrap(),
            FunctionHandle::lif_extremal(1.5).unwrap(),
            FunctionHandle::ozaki_example(0.7).unwrap(),
        ];
        for _ in 0..50 {
            let f = &fs[rng.gen_range(0..fs.len())];
            let a = Complex64::from_polar(0.9 * rng.gen::<f64>(), rng.gen_range(0.0..std::f64::consts::TAU));
            let m = MobiusParams::new(a, rng.gen_range(0.0..std::f64::consts::TAU)).unwrap();
            let exact = invariance_a2(f, &m).unwrap();
            let fd = invariance_a2_finite_difference(f, &m, 1e-3).unwrap();
            assert!((exact - fd).norm() / exact.norm().max(1.0) < 1e-6, "{f} a = {a}");
        }
    }
}
