use std::f64::consts::TAU;

use gftkit::analytic::FunctionHandle;
use gftkit::operators::{convexity_functional, Scenario, Term};
use gftkit::radii::{radius, radius_lif, radius_mixed, ClassSpec, FormulaId, RadiusParams, Variant};
use gftkit::verifier::{estimate_order, min_re_on_circle, verify_scenario, Verdict, VerifySettings};
use num_complex::Complex64;
use proptest::prelude::*;

fn params_for(formula: FormulaId, alpha: f64, beta: f64, xi: f64, m: f64, n: f64) -> RadiusParams {
    let p = RadiusParams::new(m).n(n);
    match formula {
        FormulaId::LinearInvariant => p.alpha(alpha),
        FormulaId::Convex | FormulaId::Univalent => p,
        FormulaId::Ozaki => p.beta(beta),
        FormulaId::MixedPrinted | FormulaId::MixedRederived => p.alpha(alpha).xi(xi),
        FormulaId::MixedConvex => p.xi(xi),
        FormulaId::MixedLocallyConvex => p.beta(beta).xi(xi),
    }
}

fn formula() -> impl Strategy<Value = FormulaId> {
    prop::sample::select(FormulaId::ALL.to_vec())
}

proptest! {
    #[test]
    fn profile_is_one_at_origin_and_zero_at_radius(
        f in formula(), alpha in 1.0..5.0f64, beta in 0.01..=1.0f64, xi in 0.0..0.99f64,
        m in 0.001..50.0f64, n in 0.0..50.0f64,
    ) {
        let r = radius(f, &params_for(f, alpha, beta, xi, m, n)).unwrap();
        prop_assert!(r.radius > 0.0 && r.radius < 1.0);
        prop_assert!((r.profile(0.0) - 1.0).abs() < 1e-15);
        prop_assert!(r.residual().unwrap() < 1e-10);
        // the profile is positive strictly inside the radius
        prop_assert!(r.profile(0.5 * r.radius) > 0.0);
    }

    #[test]
    fn radius_decreases_in_every_bound(
        alpha in 1.0..5.0f64, xi in 0.0..0.99f64, m in 0.01..20.0f64, n in 0.0..20.0f64, dm in 0.01..5.0f64,
    ) {
        for v in [Variant::Printed, Variant::Rederived] {
            let base = radius_mixed(alpha, xi, m, n, v).unwrap().radius;
            prop_assert!(radius_mixed(alpha, xi, m + dm, n, v).unwrap().radius < base);
            prop_assert!(radius_mixed(alpha, xi, m, n + dm, v).unwrap().radius < base);
            prop_assert!(radius_mixed(alpha + dm, xi, m, n, v).unwrap().radius <= base);
        }
        prop_assert!(radius_lif(alpha + dm, m).unwrap().radius < radius_lif(alpha, m).unwrap().radius);
    }

    #[test]
    fn convex_bound_holds_for_random_weights(
        gammas in prop::collection::vec((0.05..1.5f64, 0.0..TAU), 1..4),
        frac in 0.05..0.999f64,
        phase in 0.0..TAU,
    ) {
        let terms: Vec<Term> = gammas
            .iter()
            .map(|&(mag, arg)| Term::new(FunctionHandle::half_plane(), Complex64::from_polar(mag, arg)).with_class(ClassSpec::Convex))
            .collect();
        let s = Scenario::from_terms(terms, vec![]).unwrap();
        let claim = radius(FormulaId::Convex, &RadiusParams::new(s.m_bound())).unwrap();
        let r = frac * claim.radius;
        let q = convexity_functional(&s, Complex64::from_polar(r, phase)).unwrap();
        prop_assert!(q.re >= claim.profile(r) - 1e-12, "Re Q = {} < profile {}", q.re, claim.profile(r));
    }
}

#[test]
fn randomized_phase_weights_pass() {
    let settings = VerifySettings { n_samples: 1024, ..VerifySettings::default() };
    let m = 1.7;
    for k in 0..16 {
        let tau = TAU * k as f64 / 16.0;
        let t = Term::new(FunctionHandle::half_plane(), Complex64::from_polar(m, tau)).with_class(ClassSpec::Convex);
        let s = Scenario::from_terms(vec![t], vec![]).unwrap();
        let claim = radius(FormulaId::LinearInvariant, &RadiusParams::new(m).alpha(1.0)).unwrap();
        let rep = verify_scenario(&s, &claim, &settings);
        assert_eq!(rep.verdict, Verdict::Pass, "tau = {tau}: {:?}", rep.diagnostics);
    }
}

#[test]
fn identity_passes_any_claim() {
    let settings = VerifySettings { n_samples: 512, ..VerifySettings::default() };
    for m in [0.5, 2.0, 7.0] {
        let t = Term::new(FunctionHandle::identity(), Complex64::new(m, 0.0)).with_class(ClassSpec::Convex);
        let s = Scenario::from_terms(vec![t], vec![]).unwrap();
        for f in [FormulaId::LinearInvariant, FormulaId::Convex, FormulaId::Univalent] {
            let claim = radius(f, &RadiusParams::new(m).alpha(1.0)).unwrap();
            let rep = verify_scenario(&s, &claim, &settings);
            assert_eq!(rep.verdict, Verdict::Pass, "{f}, M = {m}");
            assert!(rep.cap_reached);
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let fs = vec![
        Term::new(FunctionHandle::koebe(), Complex64::from_polar(0.7, 1.0)).with_class(ClassSpec::Univalent),
        Term::new(FunctionHandle::half_plane(), Complex64::from_polar(0.4, -2.0)).with_class(ClassSpec::Convex),
    ];
    let gs = vec![Term::new(FunctionHandle::starlike_extremal(0.3).unwrap(), Complex64::from_polar(0.9, 0.5))
        .with_class(ClassSpec::Starlike(0.3))];
    let s = Scenario::from_terms(fs, gs).unwrap();
    let claim =
        radius(FormulaId::MixedRederived, &RadiusParams::new(s.m_bound()).n(s.n_bound()).alpha(2.0).xi(0.3)).unwrap();
    let settings = VerifySettings::default();
    let mut a = verify_scenario(&s, &claim, &settings);
    let mut b = verify_scenario(&s, &claim, &settings);
    assert_eq!(a.verdict, Verdict::Pass, "{:?}", a.diagnostics);
    a.wall_time = 0.0;
    b.wall_time = 0.0;
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn doubling_samples_changes_minimum_below_refine_tol() {
    let settings = VerifySettings::default();
    let scenarios = [
        Scenario::single_f(FunctionHandle::koebe(), Complex64::from_polar(1.3, 0.4)),
        Scenario::single_f(FunctionHandle::ozaki_example(0.8).unwrap(), Complex64::from_polar(2.0, 2.5)),
        Scenario::single_g(FunctionHandle::starlike_extremal(0.1).unwrap(), Complex64::from_polar(1.1, -1.0)),
    ];
    for s in &scenarios {
        for r in [0.2, 0.5, 0.8, 0.95] {
            let a = min_re_on_circle(s, r, settings.n_samples, settings.refine_tol).unwrap();
            let b = min_re_on_circle(s, r, 2 * settings.n_samples, settings.refine_tol).unwrap();
            assert!((a.value - b.value).abs() < settings.refine_tol, "r = {r}: {} vs {}", a.value, b.value);
        }
    }
}

#[test]
fn minimum_on_circle_is_nonincreasing_in_radius() {
    let s = Scenario::single_f(FunctionHandle::lif_extremal(1.5).unwrap(), Complex64::from_polar(0.9, 2.2))
        .concat(&Scenario::single_g(FunctionHandle::koebe(), Complex64::from_polar(0.6, -0.3)));
    let mut last = 1.0;
    for k in 1..=19 {
        let m = min_re_on_circle(&s, k as f64 * 0.05, 1024, 1e-10).unwrap();
        assert!(m.value <= last + 1e-12, "r = {}", m.r);
        last = m.value;
    }
}

#[test]
fn order_estimate_bounds_lif_extremal() {
    for alpha in [1.0, 1.5, 2.5] {
        let f = FunctionHandle::lif_extremal(alpha).unwrap();
        let est = estimate_order(&f, 0.99, 64).unwrap();
        assert!(est <= alpha + 1e-3 && est >= 0.95 * alpha, "alpha = {alpha}: {est}");
    }
}
