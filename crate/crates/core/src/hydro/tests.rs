use super::*;
use crate::symcore::rational::ratio;

fn reference() -> HydroModel {
    HydroModel::reference_instance()
}

fn model(nu: (i64, i64), beta: (i64, i64), sigma: i64, d: (i64, i64), r1: i64) -> Result<HydroModel, HydroError> {
    HydroModel::new(ratio(nu.0, nu.1), ratio(beta.0, beta.1), ratio(sigma, 1), ratio(d.0, d.1), ratio(r1, 1))
}

#[test]
fn reference_constants_are_exact() {
    let m = reference();
    assert_eq!(m.e(), Value::ratio(5, 4));
    assert_eq!(m.h1(), Value::ratio(7, 8));
    assert_eq!(m.c1(), ratio(1, 1));
    assert!(m.theorem_holds());
    assert_eq!(m.p(1.0), 0.0);
    let g = m.g_poly().unwrap();
    let at = |r: Rational| -> Value {
        let pt = [("R".to_string(), Value::Exact(r))].into_iter().collect();
        g.evaluate(&pt).unwrap()
    };
    assert_eq!(at(ratio(3, 2)), Value::ratio(7, 128));
    assert_eq!(at(ratio(1, 1)), Value::int(0));
    // -8 G = (R - 1)^2 (R^2 + 2R - 7)
    let r = ParamPoly::var("R");
    let one = ParamPoly::one();
    let q = &(&(&r * &r) + &(&r * &ParamPoly::int(2))) - &ParamPoly::int(7);
    let rm1 = &r - &one;
    assert_eq!(g.scale(&ratio(-8, 1)), &(&rm1 * &rm1) * &q);
}

#[test]
fn g_prime_identity_exact() {
    for m in [reference(), model((2, 1), (1, 3), 2, (3, 1), 1).unwrap()] {
        let n = m.nu().to_integer().to_u32().unwrap();
        let lhs = m.g_poly().unwrap().derivative("R");
        let rhs = m.p_poly().unwrap().times_var_pow("R", n).scale(&ratio(-2, 1));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn g_prime_identity_fractional_nu() {
    let m = model((1, 2), (1, 2), 1, (2, 1), 1).unwrap();
    assert!(!m.e().is_exact());
    for r in [0.5, 1.3, 2.2] {
        let h = 1e-5;
        let num = (m.g(r + h) - m.g(r - h)) / (2.0 * h);
        let exact = -2.0 * r.powf(0.5) * m.p(r);
        assert!((num - exact).abs() < 1e-8, "{num} {exact}");
    }
    let r3 = m.turning_point().unwrap();
    assert!(r3 > m.r2().unwrap());
    assert!(m.g(r3).abs() < 1e-12);
}

#[test]
fn rejects_invalid_models() {
    assert!(model((-2, 1), (1, 2), 1, (1, 1), 1).is_err());
    assert!(model((-1, 1), (1, 2), 1, (1, 1), 1).is_err());
    assert!(model((0, 1), (0, 1), 1, (1, 1), 1).is_err());
    assert!(model((0, 1), (1, 2), 0, (1, 1), 1).is_err());
    assert!(model((0, 1), (1, 2), 1, (1, 1), 0).is_err());
    let weak = model((0, 1), (1, 2), 1, (1, 2), 1).unwrap();
    assert!(!weak.theorem_holds());
    assert_eq!(weak.critical_points(), Err(HydroError::NoSecondRoot));
}

#[test]
fn critical_points_and_angle() {
    let m = reference();
    let rep = m.critical_points().unwrap();
    let r2 = (-1.0 + 17f64.sqrt()) / 2.0;
    assert!((rep.r2 - r2).abs() < 1e-12);
    assert_eq!(rep.points[0].kind, PointKind::Saddle);
    assert_eq!(rep.points[1].kind, PointKind::Center);
    assert!(rep.psi_positive);
    let angle = m.saddle_angle().unwrap();
    assert!((angle - (1.0 / 2f64.sqrt()).atan()).abs() < 1e-12);
    let r3 = m.turning_point().unwrap();
    assert!((r3 - (2.0 * 2f64.sqrt() - 1.0)).abs() < 1e-12);
    assert!(m.g(r3 - 1e-8) > 0.0 && m.g(r3 + 1e-8) < 0.0);
}

#[test]
fn separatrix_values() {
    let m = reference();
    let r2 = m.r2().unwrap();
    let r3 = m.turning_point().unwrap();
    assert_eq!(m.separatrix(1.0).unwrap(), (0.0, -0.0));
    assert!(m.separatrix(r3).unwrap().0 < 1e-7);
    let (yp, ym) = m.separatrix(r2).unwrap();
    assert!((yp - 0.152489).abs() < 1e-6);
    assert_eq!(ym, -yp);
    assert!((m.hamiltonian(PhaseState { r: r2, y: 0.0 }) - 0.818300).abs() < 1e-6);
    assert!(matches!(m.separatrix(2.5), Err(HydroError::OutOfDomain(_))));
    let s = PhaseState { r: 1.4, y: 0.3 };
    assert_eq!(m.hamiltonian(s), m.hamiltonian(PhaseState { r: 1.4, y: -0.3 }));
}

#[test]
fn flow_equilibrium_and_conservation() {
    let m = reference();
    let r2 = m.r2().unwrap();
    let t = m.flow(PhaseState { r: r2, y: 0.0 }, (0.0, 100.0), 1e-10).unwrap();
    assert!(t.samples.iter().all(|s| (s.r - r2).abs() < 1e-12 && s.y.abs() < 1e-12));
    let t = m.flow(PhaseState { r: 1.7, y: 0.0 }, (0.0, 100.0), 1e-10).unwrap();
    assert_eq!(t.end().omega, 100.0);
    assert!(t.energy_drift() < 1e-8, "{}", t.energy_drift());
    assert!(m.flow(PhaseState { r: 1.7, y: 0.0 }, (0.0, 1.0), 1e-14).is_err());
}

#[test]
fn boundary_hit_left_of_saddle() {
    let m = reference();
    let r = m.flow(PhaseState { r: 0.9, y: -0.5 }, (0.0, 100.0), 1e-10);
    assert!(matches!(r, Err(HydroError::BoundaryHit(_)) | Err(HydroError::StiffnessFailure(_))), "{r:?}");
}

#[test]
fn periodic_orbits_close() {
    let m = reference();
    for r0 in [1.6, 1.7, 1.8] {
        let (period, back) = m.return_map(r0, 1e-11).unwrap();
        assert!(period > 0.0);
        assert!((back - r0).abs() < 1e-6, "{r0}: {back}");
    }
}

#[test]
fn separatrix_is_tracked() {
    let m = reference();
    let r3 = m.turning_point().unwrap();
    let eps = 1e-6;
    let tan = m.saddle_angle().unwrap().tan();
    let t = m.flow(PhaseState { r: 1.0 + eps, y: eps * tan }, (0.0, 60.0), 1e-11).unwrap();
    let mut checked = 0;
    for s in t.samples.iter().take_while(|s| s.y > 0.0) {
        if s.r < r3 - 1e-3 {
            let (yp, _) = m.separatrix(s.r).unwrap();
            assert!((s.y - yp).abs() < 1e-5);
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn quadrature_profile() {
    let m = reference();
    assert!((m.quadrature_integrand(1.5) - 1.5 / (7.0f64 / 128.0).sqrt()).abs() < 1e-12);
    assert!((m.quadrature_integrand(1.5) - 6.414270).abs() < 1e-6);
    let r3 = m.turning_point().unwrap();
    assert_eq!(m.homoclinic_omega(r3).unwrap(), 0.0);
    let prof = m.homoclinic_profile(200).unwrap();
    assert_eq!(prof.len(), 399);
    assert!(prof.windows(2).all(|w| w[0].0 < w[1].0));
    let (w_end, r_end) = *prof.last().unwrap();
    assert!(w_end > 20.0 && (r_end - 1.0 - TAIL_DELTA).abs() < 1e-15);
    // the tail is monotone and ends at R1 + 1e-6 before omega = 30, so R(30) - 1 < 1e-3
    assert!(w_end < 30.0);
    assert!(prof[199..].windows(2).all(|w| w[1].1 < w[0].1));
    assert!(prof.iter().filter(|p| p.0 >= 15.0).all(|p| p.1 - 1.0 < 1e-3));
    // closed form oracle
    for r in [1.05, 1.3, 1.5, 1.8] {
        let w = m.homoclinic_omega(r).unwrap();
        let c = explicit_homoclinic(&m, r).unwrap().corrected;
        assert!((w + c).abs() < 1e-9, "{r}: {w} vs {c}");
    }
}

#[test]
fn quadrature_matches_flow() {
    let m = reference();
    let hf = m.homoclinic_flow(1e-6, 1e-12).unwrap();
    let r3 = m.turning_point().unwrap();
    assert!((hf.peak_r - r3).abs() < 1e-6);
    let prof = m.homoclinic_profile(300).unwrap();
    let mut worst = 0.0f64;
    for &(w, r) in &prof {
        if let Some(s) = hf.trajectory.at(hf.peak_omega + w) {
            worst = worst.max((s.r - r).abs());
        }
    }
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn explicit_forms() {
    let m = reference();
    let r3 = 2.0 * 2f64.sqrt() - 1.0;
    let asin_at_r3 = 8f64.sqrt() * ((r3 + 1.0) / 8f64.sqrt()).min(1.0).asin();
    assert!((asin_at_r3 - 2f64.sqrt() * core::f64::consts::PI).abs() < 1e-12);
    let f3 = corrected_antiderivative(r3);
    assert!((f3 - (2f64.sqrt() * core::f64::consts::PI - 2f64.sqrt() / 2.0 * 2f64.ln())).abs() < 1e-12);
    let d = |f: fn(f64) -> f64, r: f64| {
        let h = 1e-3 * (r - 1.0);
        (8.0 * (f(r + h) - f(r - h)) - (f(r + 2.0 * h) - f(r - 2.0 * h))) / (12.0 * h)
    };
    let integrand = m.quadrature_integrand(1.5);
    assert!((d(corrected_antiderivative, 1.5) - integrand).abs() / integrand < 1e-9);
    let rel = (d(printed_antiderivative, 1.5) - integrand).abs() / integrand;
    assert!((0.010..=0.020).contains(&rel), "{rel}");
    assert!(explicit_homoclinic(&m, 0.5).is_err());
    let other = model((0, 1), (1, 2), 1, (2, 1), 1).unwrap();
    assert!(explicit_homoclinic(&other, 1.5).is_err());
}
