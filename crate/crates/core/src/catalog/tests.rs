use super::*;
use crate::reducer::exact_assignment;

fn free(pairs: &[(&str, i64, i64)]) -> Assignment {
    exact_assignment(pairs)
}

#[test]
fn fourteen_entries_with_labels() {
    let all = list_families();
    assert_eq!(all.len(), 14);
    let ii = entry("II").unwrap();
    assert_eq!(ii.shape_label, "solitary wave");
    assert!(ii.admissibility.contains(&"b0*b1 > 0"));
    assert!(ii.admissibility.contains(&"|a0|/|b0| = |a1|/|b1|"));
    assert_eq!(entry("III").unwrap().shape, Shape::Singular);
    assert_eq!(entry("IVe-b").unwrap().shape, Shape::Kink);
    assert!(matches!(entry("V"), Err(CatalogError::UnknownFamily(_))));
}

#[test]
fn ive_a_instance_is_sech() {
    let f = free(&[("l1", 1, 1), ("l3", -2, 1), ("tau", 1, 1), ("kappa", 1, 1), ("v", 2, 1)]);
    let inst = instantiate("IVe-a", &f, None).unwrap();
    assert_eq!(inst.verdict.status, Status::Pass);
    let k = 1.0 / 3f64.sqrt();
    let prof = inst.solution.bind().unwrap();
    for xi in [-3.0, -0.5, 0.0, 1.25, 4.0] {
        let sech = 1.0 / (k * xi).cosh();
        assert!((prof.u(xi) - sech).abs() < 1e-12);
    }
}

#[test]
fn ive_a_rejects_nonpositive_l1() {
    let f = free(&[("l1", -1, 1), ("l3", -2, 1), ("tau", 1, 1), ("kappa", 1, 1), ("v", 2, 1)]);
    assert!(matches!(instantiate("IVe-a", &f, None), Err(CatalogError::Inadmissible(_))));
}

#[test]
fn i_tanh_instance_flips_k() {
    let f = free(&[("l0", -1, 1), ("l2", 1, 1), ("l3", -2, 1), ("A", 0, 1), ("kappa", 1, 1), ("tau", 0, 1)]);
    let inst = instantiate("I-tanh", &f, None).unwrap();
    assert_eq!(inst.branch, "v: +sqrt, k: flipped");
    assert_eq!(inst.assignment["v"], Value::int(-1));
    assert_eq!(inst.assignment["l1"], Value::int(2));
    let printed = inst.branches.iter().find(|b| b.label == "v: +sqrt, k: printed").unwrap();
    assert_eq!(printed.verdict.status, Status::Fail);
    let prof = inst.solution.bind().unwrap();
    for xi in [-2.0, 0.3, 1.7] {
        assert!((prof.u(xi) - xi.tanh()).abs() < 1e-12);
    }
}

#[test]
fn burgers_instance() {
    let f = free(&[
        ("a0", 0, 1),
        ("a1", 1, 1),
        ("b0", 1, 1),
        ("b1", 1, 1),
        ("A", 2, 1),
        ("B", 1, 1),
        ("kappa", 1, 1),
    ]);
    let inst = instantiate("Burgers-shock", &f, None).unwrap();
    assert_eq!(inst.assignment["v"], Value::int(-1));
    assert_eq!(inst.assignment["alpha"], Value::int(-1));
    assert_eq!(inst.verdict.mode, Mode::Exact);
}

#[test]
fn iva_special_values() {
    let f = free(&[("l1", 1, 1), ("l2", 3, 1), ("l3", -2, 1), ("kappa", 1, 1), ("tau", 1, 1), ("alpha", 1, 1)]);
    let fam = find("IVa-special").unwrap();
    let bs = fam.branches("printed", &f).unwrap();
    let a = &bs[0].assignment;
    assert_eq!(a["a0"], Value::ratio(1, 2));
    assert!((a["a1"].to_f64() - 22f64.sqrt() / 2.0).abs() < 1e-14);
    let a0 = 0.5;
    let l0 = a["l0"].to_f64();
    assert!((l0 + a0 + 3.0 * a0 * a0 - 2.0 * a0 * a0 * a0).abs() < 1e-15);
}

#[test]
fn ivd_passes_five_trials() {
    let rep = verify_entry("IVd", 5, 1).unwrap();
    assert_eq!(rep.status, Expected::Pass);
    let r = &rep.readings[0];
    assert_eq!(r.trials.len(), 5);
    for t in &r.trials {
        assert!(t.pass, "{t:?}");
        assert_eq!(t.verdict().unwrap().mode, Mode::Exact);
        assert!(t.scan.unwrap().relative < SCAN_TOL);
    }
}

#[test]
fn draws_are_reproducible() {
    assert_eq!(draw_free("II", 3, 9).unwrap(), draw_free("II", 3, 9).unwrap());
    assert_ne!(draw_free("II", 3, 9).unwrap(), draw_free("II", 3, 10).unwrap());
}

#[test]
fn adjudicated_statuses() {
    for e in list_families() {
        let rep = verify_entry(e.id, 3, 1).unwrap();
        assert_eq!(rep.status, e.expected, "{}: {:?}", e.id, rep.readings.iter().map(|r| (r.name, r.pass)).collect::<Vec<_>>());
        for r in &rep.readings {
            for t in r.trials.iter().filter(|t| !t.pass) {
                let evidence = t.error.is_some()
                    || t.verdict().is_some_and(|v| !v.failing.is_empty())
                    || t.scan_error.is_some()
                    || t.shape.as_ref().is_some_and(|s| !s.ok);
                assert!(evidence, "{} {}: failing trial without evidence", e.id, r.name);
            }
        }
    }
}

#[test]
fn iii_literal_and_reinterpreted() {
    let rep = verify_entry("III", 2, 3).unwrap();
    assert!(!rep.reading("literal").unwrap().pass);
    assert!(rep.reading("a3->a2, cubic reaction").unwrap().pass);
    for t in &rep.reading("a3->a2, cubic reaction").unwrap().trials {
        assert!(!t.poles.is_empty() || t.scan.is_some());
    }
}

#[test]
fn gauge_scaling_keeps_profile() {
    let f = free(&[("a0", 1, 1), ("a1", 2, 1), ("b0", 1, 1), ("b1", 3, 1), ("A", 2, 1), ("B", 1, 1), ("kappa", 1, 1)]);
    let g = free(&[("a0", 3, 1), ("a1", 6, 1), ("b0", 3, 1), ("b1", 9, 1), ("A", 2, 1), ("B", 1, 1), ("kappa", 1, 1)]);
    let (p, q) = (
        instantiate("Burgers-shock", &f, None).unwrap().solution.bind().unwrap(),
        instantiate("Burgers-shock", &g, None).unwrap().solution.bind().unwrap(),
    );
    for xi in [-4.0, 0.0, 2.5] {
        assert!((p.u(xi) - q.u(xi)).abs() < 1e-14);
    }
}
