//! The integral operators
//!
//! ```text
//! F(z) = ∫_0^z ∏ (f_i'(t))^{gamma_i} dt
//! J(z) = ∫_0^z ∏ (f_i'(t))^{gamma_i} ∏ (g_j(t)/t)^{lambda_j} dt
//! ```
//!
//! and their convexity functional
//!
//! ```text
//! Q(z) = 1 + z J''(z)/J'(z)
//!      = 1 + Σ gamma_i z f_i''/f_i' + Σ lambda_j (z g_j'/g_j - 1).
//! ```
//!
//! `J` is built as a truncated series (complex powers, products, one
//! integration) and can be cross-checked pointwise by quadrature along the
//! segment `[0, z]`. The quotient factor uses `g_j(t)/t`, the integration
//! variable, so that `J` is analytic and `Q` has the form above.

mod quadrature;
mod scenario;

pub use quadrature::{integrate, Estimate, MAX_DEPTH};
pub use scenario::{FunctionSpec, Scenario, ScenarioFile, Term, BOUND_SLACK};

use num_complex::Complex64;

use crate::analytic::{FunctionHandle, PowerSeries};
use crate::error::{Error, Result};

/// Absolute tolerance of [`eval_operator_quadrature`].
pub const QUADRATURE_TOL: f64 = 1e-10;

/// `z f''(z) / f'(z)`.
pub fn logderiv_f(f: &FunctionHandle, z: Complex64) -> Result<Complex64> {
    f.z_f2_over_f1(z)
}

/// `z g'(z) / g(z) - 1`, with value `0` at the origin.
pub fn starlike_term(g: &FunctionHandle, z: Complex64) -> Result<Complex64> {
    g.z_f1_over_f_minus_one(z)
}

/// `Q(z) = 1 + z J''(z)/J'(z)` from the log-derivative decomposition.
pub fn convexity_functional(s: &Scenario, z: Complex64) -> Result<Complex64> {
    let mut q = Complex64::new(1.0, 0.0);
    for t in s.fs() {
        q += t.weight * logderiv_f(&t.function, z)?;
    }
    for t in s.gs() {
        q += t.weight * starlike_term(&t.function, z)?;
    }
    Ok(q)
}

/// A truncated series of `F` or `J`, with the scenario it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSeries {
    pub series: PowerSeries,
    pub scenario: Scenario,
}

impl OperatorSeries {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.series.eval(z).map(|v| v.value)
    }

    /// `1 + z B''(z)/B'(z)` evaluated from the series itself.
    pub fn convexity_functional(&self, z: Complex64) -> Result<Complex64> {
        let d1 = self.series.differentiate();
        let d2 = d1.differentiate();
        let b1 = d1.eval(z)?.value;
        if b1.norm() <= crate::analytic::series::NON_UNIT_TOL {
            return Err(Error::CriticalPoint(z));
        }
        Ok(1.0 + z * d2.eval(z)?.value / b1)
    }
}

/// The series of `F` at order `T`. The scenario must have no quotient
/// factors.
pub fn build_f(s: &Scenario, order: usize) -> Result<OperatorSeries> {
    if !s.gs().is_empty() {
        return Err(Error::InvalidScenario(format!("F takes no quotient factors, scenario has {}", s.gs().len())));
    }
    build_j(s, order)
}

/// The series of `J` at order `T`. Factors with zero exponent are skipped,
/// so `J` with all `lambda_j = 0` is bit-identical to `F`.
pub fn build_j(s: &Scenario, order: usize) -> Result<OperatorSeries> {
    let mut integrand = PowerSeries::one(order);
    for t in s.fs().iter().filter(|t| t.weight != Complex64::new(0.0, 0.0)) {
        let factor = t.function.derivative_series(order).cpow(t.weight)?;
        integrand = integrand.multiply(&factor);
    }
    for t in s.gs().iter().filter(|t| t.weight != Complex64::new(0.0, 0.0)) {
        let factor = t.function.quotient_series(order).cpow(t.weight)?;
        integrand = integrand.multiply(&factor);
    }
    Ok(OperatorSeries { series: integrand.integrate_from_zero(), scenario: s.clone() })
}

/// The operator's integrand `∏ f_i'(t)^{gamma_i} ∏ (g_j(t)/t)^{lambda_j}`
/// at a point, through the logarithms of each factor.
pub fn integrand(s: &Scenario, t: Complex64) -> Result<Complex64> {
    let mut log = Complex64::new(0.0, 0.0);
    for term in s.fs() {
        log += term.weight * term.function.ln_derivative(t)?;
    }
    for term in s.gs() {
        log += term.weight * term.function.ln_quotient(t)?;
    }
    Ok(log.exp())
}

/// `J(z)` by adaptive quadrature along the segment `[0, z]`:
/// `J(z) = z ∫_0^1 I(s z) ds`.
pub fn eval_operator_quadrature(s: &Scenario, z: Complex64) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(Error::OutsideDisk(z));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    let est = integrate(|u| integrand(s, z * u), 0.0, 1.0, QUADRATURE_TOL, MAX_DEPTH)?;
    Ok(z * est.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::catalog::FunctionHandle;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn one_minus_over_one_plus(z: Complex64) -> Complex64 {
        (1.0 + z) / (1.0 - z)
    }

    #[test]
    fn logderiv_examples() {
        let z = c(0.3, -0.2);
        assert_eq!(logderiv_f(&FunctionHandle::identity(), z).unwrap(), c(0.0, 0.0));
        let r = 0.4;
        let v = logderiv_f(&FunctionHandle::half_plane(), c(r, 0.0)).unwrap();
        assert!((v.re - 2.0 * r / (1.0 - r)).abs() < 1e-15);
        let v = logderiv_f(&FunctionHandle::koebe(), c(r, 0.0)).unwrap();
        assert!((v.re - 2.0 * r * (2.0 + r) / ((1.0 - r) * (1.0 + r))).abs() < 1e-15);
        assert!(matches!(logderiv_f(&FunctionHandle::koebe(), c(1.0, 0.0)), Err(Error::OutsideDisk(_))));
    }

    #[test]
    fn starlike_term_examples() {
        let z = c(0.3, -0.2);
        assert_eq!(starlike_term(&FunctionHandle::identity(), z).unwrap(), c(0.0, 0.0));
        let v = starlike_term(&FunctionHandle::koebe(), z).unwrap();
        assert!((v - 2.0 * z / (1.0 - z)).norm() < 1e-15);
        assert_eq!(starlike_term(&FunctionHandle::koebe(), c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn zero_of_g_is_reported() {
        // g(z) = z - 2z^2 vanishes at z = 1/2
        let g = FunctionHandle::from_series(PowerSeries::from_real(&[0.0, 1.0, -2.0]).unwrap()).unwrap();
        assert!(matches!(starlike_term(&g, c(0.5, 0.0)), Err(Error::ZeroOfG(_))));
    }

    #[test]
    fn convexity_functional_examples() {
        let z = c(0.2, 0.5);
        assert_eq!(convexity_functional(&Scenario::empty(), z).unwrap(), c(1.0, 0.0));
        let s = Scenario::single_f(FunctionHandle::half_plane(), c(1.0, 0.0));
        assert!((convexity_functional(&s, z).unwrap() - one_minus_over_one_plus(z)).norm() < 1e-15);
        let s = Scenario::single_g(FunctionHandle::koebe(), c(1.0, 0.0));
        assert!((convexity_functional(&s, z).unwrap() - one_minus_over_one_plus(z)).norm() < 1e-15);
        assert_eq!(convexity_functional(&s, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn build_f_examples() {
        let s = Scenario::single_f(FunctionHandle::identity(), c(5.0, 0.0));
        assert_eq!(build_f(&s, 32).unwrap().series, PowerSeries::identity(32));

        let s = Scenario::single_f(FunctionHandle::half_plane(), c(1.0, 0.0));
        let f = build_f(&s, 64).unwrap().series;
        let expect = FunctionHandle::half_plane().series(64);
        for k in 0..=64 {
            assert!((f.coeff(k) - expect.coeff(k)).norm() < 1e-13, "k = {k}");
        }

        let zeros = Scenario::from_terms(
            vec![Term::new(FunctionHandle::koebe(), c(0.0, 0.0)), Term::new(FunctionHandle::half_plane(), c(0.0, 0.0))],
            vec![],
        )
        .unwrap();
        assert_eq!(build_f(&zeros, 16).unwrap().series, PowerSeries::identity(16));

        let with_g = Scenario::single_g(FunctionHandle::koebe(), c(1.0, 0.0));
        assert!(build_f(&with_g, 8).is_err());
    }

    #[test]
    fn build_j_examples() {
        let s = Scenario::single_g(FunctionHandle::koebe(), c(1.0, 0.0));
        let j = build_j(&s, 64).unwrap().series;
        let expect = FunctionHandle::half_plane().series(64);
        for k in 0..=64 {
            assert!((j.coeff(k) - expect.coeff(k)).norm() < 1e-13, "k = {k}");
        }
        let s = Scenario::single_g(FunctionHandle::identity(), c(0.7, -2.0));
        assert_eq!(build_j(&s, 16).unwrap().series, PowerSeries::identity(16));
    }

    #[test]
    fn j_with_zero_lambdas_is_f_bit_for_bit() {
        let fs = vec![
            Term::new(FunctionHandle::koebe(), c(0.3, 0.2)),
            Term::new(FunctionHandle::ozaki_example(0.5).unwrap(), c(-0.4, 0.0)),
        ];
        let gs = vec![Term::new(FunctionHandle::half_plane(), c(0.0, 0.0))];
        let f_only = Scenario::from_terms(fs.clone(), vec![]).unwrap();
        let mixed = Scenario::from_terms(fs, gs).unwrap();
        assert_eq!(build_j(&mixed, 128).unwrap().series, build_f(&f_only, 128).unwrap().series);
    }

    #[test]
    fn operator_series_is_normalized() {
        let s = Scenario::from_terms(
            vec![Term::new(FunctionHandle::lif_extremal(1.5).unwrap(), c(0.2, 0.9))],
            vec![Term::new(FunctionHandle::starlike_extremal(0.3).unwrap(), c(-0.5, 0.1))],
        )
        .unwrap();
        assert!(build_j(&s, 64).unwrap().series.is_normalized(1e-15));
    }

    #[test]
    fn quadrature_examples() {
        let z = c(0.4, 0.1);
        assert!((eval_operator_quadrature(&Scenario::empty(), z).unwrap() - z).norm() < 1e-15);
        let s = Scenario::single_f(FunctionHandle::half_plane(), c(1.0, 0.0));
        assert!((eval_operator_quadrature(&s, c(0.5, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-9);
        assert!(eval_operator_quadrature(&s, c(0.0, 1.0)).is_err());
    }

    #[test]
    fn functional_matches_series_log_derivative() {
        let s = Scenario::from_terms(
            vec![
                Term::new(FunctionHandle::koebe(), c(0.4, -0.3)),
                Term::new(FunctionHandle::ozaki_example(0.8).unwrap(), c(0.0, 0.6)),
            ],
            vec![Term::new(FunctionHandle::starlike_extremal(0.1).unwrap(), c(0.5, 0.5))],
        )
        .unwrap();
        let j = build_j(&s, 256).unwrap();
        for &z in &[c(0.1, 0.2), c(-0.45, 0.1), c(0.0, -0.5)] {
            let direct = convexity_functional(&s, z).unwrap();
            let from_series = j.convexity_functional(z).unwrap();
            assert!((direct - from_series).norm() < 1e-6, "{z}: {direct} vs {from_series}");
        }
    }

    #[test]
    fn linearity_under_concatenation() {
        let a = Scenario::single_f(FunctionHandle::koebe(), c(0.3, 0.7));
        let b = Scenario::single_g(FunctionHandle::starlike_extremal(0.4).unwrap(), c(-1.0, 0.2));
        let ab = a.concat(&b);
        let z = c(-0.3, 0.35);
        let lhs = convexity_functional(&ab, z).unwrap();
        let rhs = convexity_functional(&a, z).unwrap() + convexity_functional(&b, z).unwrap() - 1.0;
        assert!((lhs - rhs).norm() < 1e-14);
    }
}
