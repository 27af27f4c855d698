use std::collections::BTreeMap;

use proptest::prelude::*;
use twkit_core::symcore::rational::{ratio, to_f64};
use twkit_core::{Assignment, EPoly, ExpRational, ParamPoly, Value};

const VARS: [&str; 3] = ["x", "y", "z"];

fn poly() -> impl Strategy<Value = ParamPoly> {
    let term = (-9i64..=9, 1i64..=4, 0u32..3, 0u32..3, 0u32..2);
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        ts.into_iter().fold(ParamPoly::zero(), |acc, (n, d, ex, ey, ez)| {
            let m = ParamPoly::monomial(ratio(n, d), &[("x", ex), ("y", ey), ("z", ez)]);
            &acc + &m
        })
    })
}

fn point() -> impl Strategy<Value = Assignment> {
    prop::array::uniform3((-20i64..=20, 1i64..=7)).prop_map(|vals| {
        VARS.iter()
            .zip(vals)
            .map(|(k, (n, d))| (k.to_string(), Value::ratio(n, d)))
            .collect()
    })
}

fn epoly(max_deg: usize) -> impl Strategy<Value = EPoly> {
    prop::collection::vec(poly(), 1..=max_deg + 1).prop_map(EPoly::from_coeffs)
}

fn exprat() -> impl Strategy<Value = ExpRational> {
    (epoly(3), epoly(2)).prop_filter_map("zero denominator", |(n, d)| ExpRational::new(n, d).ok())
}

/// Numeric exp-rational with a denominator positive for real `E > 0`.
fn positive_exprat() -> impl Strategy<Value = ExpRational> {
    let c = (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ParamPoly::constant(ratio(n, d)));
    let pc = (1i64..=9, 1i64..=4).prop_map(|(n, d)| ParamPoly::constant(ratio(n, d)));
    (prop::collection::vec(c, 1..=4), prop::collection::vec(pc, 1..=3)).prop_map(|(n, d)| {
        ExpRational::new(EPoly::from_coeffs(n), EPoly::from_coeffs(d)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p + &ParamPoly::zero(), p.clone());
        prop_assert_eq!(&p * &ParamPoly::one(), p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert!((&p * &ParamPoly::zero()).is_zero());
    }

    #[test]
    fn leibniz_rule(f in exprat(), g in exprat()) {
        let lhs = f.mul(&g).differentiate_xi("alpha");
        let rhs = f.mul(&g.differentiate_xi("alpha")).add(&g.mul(&f.differentiate_xi("alpha")));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_homomorphism(p in poly(), q in poly(), pt in point()) {
        let ev = |x: &ParamPoly| x.evaluate(&pt).unwrap();
        prop_assert_eq!(ev(&(&p * &q)), ev(&p).mul(&ev(&q)));
        prop_assert_eq!(ev(&(&p + &q)), ev(&p).add(&ev(&q)));
        prop_assert_eq!(ev(&(&p - &q)), ev(&p).sub(&ev(&q)));
    }

    #[test]
    fn exp_rational_evaluation_homomorphism(f in exprat(), g in exprat(), pt in point(), e in (1i64..=9, 1i64..=5)) {
        let ev = Value::ratio(e.0, e.1);
        let (Ok(fv), Ok(gv)) = (f.evaluate(&pt, &ev), g.evaluate(&pt, &ev)) else {
            return Ok(());
        };
        prop_assert_eq!(f.mul(&g).evaluate(&pt, &ev).unwrap(), fv.mul(&gv));
        prop_assert_eq!(f.add(&g).evaluate(&pt, &ev).unwrap(), fv.add(&gv));
    }

    #[test]
    fn derivative_matches_central_difference(f in positive_exprat(), alpha in (1i64..=8, 2i64..=4), xi in -20i64..=20) {
        let alpha = to_f64(&ratio(alpha.0, alpha.1));
        let xi = xi as f64 / 20.0;
        let empty = BTreeMap::new();
        let at = |x: f64| f.evaluate(&empty, &Value::Approx((alpha * x).exp())).unwrap().to_f64();
        let h = 1e-5;
        let numeric = (at(xi + h) - at(xi - h)) / (2.0 * h);
        let mut pt = BTreeMap::new();
        pt.insert("alpha".to_string(), Value::Approx(alpha));
        let exact = f
            .differentiate_xi("alpha")
            .evaluate(&pt, &Value::Approx((alpha * xi).exp()))
            .unwrap()
            .to_f64();
        prop_assert!((numeric - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{} vs {}", numeric, exact);
    }

    #[test]
    fn canonical_form_idempotent(p in poly(), q in poly()) {
        let r = &p * &q;
        prop_assert_eq!(r.normalize().normalize(), r.normalize());
        prop_assert_eq!(r.normalize(), r.clone());
        prop_assert_eq!(r.to_string(), r.normalize().to_string());
        prop_assert_eq!(twkit_core::symcore::parse_poly(&r.to_string()).unwrap(), r);
    }
}

#[test]
fn spec_examples() {
    let x = ParamPoly::var("x");
    let one = ParamPoly::one();
    assert_eq!((&(&x + &one) * &(&x - &one)).to_string(), "x^2 - 1");
    let e = ExpRational::from_epoly(EPoly::e());
    assert_eq!(e.differentiate_xi("alpha").to_string(), "E*alpha");
    let f = twkit_core::symcore::parse_exp_rational("1/(1 + E)").unwrap();
    let expected = twkit_core::symcore::parse_exp_rational("-alpha*E/(1 + E)^2").unwrap();
    assert_eq!(f.differentiate_xi("alpha"), expected);
    let g = twkit_core::symcore::parse_exp_rational("(a0 + a1*E)/(b0 + b1*E)").unwrap();
    let dg = twkit_core::symcore::parse_exp_rational("alpha*E*(a1*b0 - a0*b1)/(b0 + b1*E)^2").unwrap();
    assert_eq!(g.differentiate_xi("alpha"), dg);
    let pt: Assignment = [("a0", 0), ("a1", 1), ("b0", 1), ("b1", 1)]
        .iter()
        .map(|(k, v)| (k.to_string(), Value::int(*v)))
        .collect();
    assert_eq!(g.evaluate(&pt, &Value::int(1)).unwrap(), Value::ratio(1, 2));
    let p = &(&x * &x) - &one;
    let at3: Assignment = [("x".to_string(), Value::int(3))].into_iter().collect();
    assert_eq!(p.evaluate(&at3).unwrap(), Value::int(8));
}
