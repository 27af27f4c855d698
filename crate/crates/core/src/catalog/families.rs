//! The fourteen solution families.
//!
//! Every family lists its readings (the printed formulas plus any
//! reinterpretation or correction), draws root-friendly rational
//! parameters and enumerates the radical branches of its formulas.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::draw::Draw;
use super::{Branch, CatalogEntry, CatalogError, Expected, ReadingInfo, ReadingKind, Shape};
use crate::model::{Coef, HalfInt, HyperbolicPDE};
use crate::reducer::ExpAnsatz;
use crate::symcore::{parse_poly, rational, Assignment, Value};

pub struct Reading {
    pub info: ReadingInfo,
    pub pde: HyperbolicPDE,
    pub ansatz: ExpAnsatz,
}

pub trait Family {
    /// Metadata; `readings` is filled in from [`Family::readings`].
    fn meta(&self) -> CatalogEntry;
    fn readings(&self) -> Vec<Reading>;
    fn draw(&self, d: &mut Draw) -> Assignment;
    fn admissible(&self, f: &Assignment) -> Result<(), String>;
    fn branches(&self, reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError>;
}

pub fn all() -> Vec<Box<dyn Family>> {
    vec![
        Box::new(FamI),
        Box::new(FamITanh),
        Box::new(FamIKink2),
        Box::new(FamII),
        Box::new(FamIII),
        Box::new(FamIVa),
        Box::new(FamIVaSpecial),
        Box::new(FamIVb),
        Box::new(FamIVc),
        Box::new(FamIVd),
        Box::new(FamIVeA),
        Box::new(FamIVeB),
        Box::new(FamIVeC),
        Box::new(FamBurgers),
    ]
}

// ---------------------------------------------------------------- helpers

fn coef(s: &str) -> Coef {
    match rational::parse(s) {
        Some(q) => Coef::Num(q),
        None => Coef::sym(s),
    }
}

fn pde(tau: &str, a: &str, b: &str, kappa: &str, reaction: &[(&str, &str)]) -> HyperbolicPDE {
    let r = reaction
        .iter()
        .map(|(e, c)| (HalfInt::parse(e).expect("catalog exponent"), coef(c)))
        .collect();
    HyperbolicPDE::new(coef(tau), coef(a), coef(b), coef(kappa), r).expect("catalog equation")
}

fn ansatz(a: &[&str], b: &[&str], power: u32) -> ExpAnsatz {
    let p = |s: &&str| parse_poly(s).expect("catalog ansatz");
    ExpAnsatz::new(a.iter().map(p).collect(), b.iter().map(p).collect(), power)
        .expect("catalog ansatz")
}

fn reading(name: &'static str, kind: ReadingKind, note: &'static str, pde: HyperbolicPDE, ansatz: ExpAnsatz) -> Reading {
    Reading {
        info: ReadingInfo { name, kind, note },
        pde,
        ansatz,
    }
}

fn get(f: &Assignment, k: &str) -> Value {
    f.get(k).cloned().unwrap_or(Value::Approx(f64::NAN))
}

fn int(n: i64) -> Value {
    Value::int(n)
}

fn bad(msg: &str) -> CatalogError {
    CatalogError::Inadmissible(msg.to_string())
}

fn div(a: Value, b: Value) -> Result<Value, CatalogError> {
    a.div(&b).ok_or_else(|| bad("a derived quantity divides by zero"))
}

fn sqrt(a: Value, what: &str) -> Result<Value, CatalogError> {
    a.sqrt().ok_or_else(|| bad(&format!("{what} is negative")))
}

fn check(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn pos(v: &Value) -> bool {
    v.signum() > 0
}

fn nonneg(v: &Value) -> bool {
    v.signum() >= 0
}

fn with(f: &Assignment, pairs: Vec<(&str, Value)>) -> Assignment {
    let mut out = f.clone();
    for (k, v) in pairs {
        out.insert(k.to_string(), v);
    }
    out
}

fn put(f: &mut Assignment, k: &str, v: Value) {
    f.insert(k.to_string(), v);
}

fn branch(label: String, assignment: Assignment) -> Branch {
    Branch { label, assignment }
}

/// `h = alpha (v^2 tau - kappa)`
fn small_h(f: &Assignment) -> Value {
    let v = get(f, "v");
    get(f, "alpha") * (&v * &v * get(f, "tau") - get(f, "kappa"))
}

/// `H = tau v^2 - kappa`
fn big_h(f: &Assignment) -> Value {
    let v = get(f, "v");
    &v * &v * get(f, "tau") - get(f, "kappa")
}

fn delta(f: &Assignment) -> Value {
    get(f, "a1") * get(f, "b0") - get(f, "a0") * get(f, "b1")
}

fn theta(f: &Assignment) -> Value {
    get(f, "a1") * get(f, "b0") + get(f, "a0") * get(f, "b1")
}

/// Both signs of the square root of `u = w^2`: `w` and `-w`.
fn sqrt_branches(base: Assignment, coeffs: &[&str]) -> Vec<Branch> {
    let flipped = with(&base, coeffs.iter().map(|k| (*k, -get(&base, k))).collect());
    vec![branch("sqrt(u) = +w".into(), base), branch("sqrt(u) = -w".into(), flipped)]
}

fn sign_label(s: i64) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

/// Draws `tau >= 0`, `kappa >= 0`, `v != 0` with `H = tau v^2 - kappa > 0`.
fn draw_positive_h(d: &mut Draw, f: &mut Assignment) {
    let v = d.nonzero();
    let kappa = d.small_nonneg();
    let h = d.moderate();
    let tau = (h + &kappa).div(&(&v * &v)).expect("v nonzero");
    put(f, "v", v);
    put(f, "kappa", kappa);
    put(f, "tau", tau);
}

fn check_model_signs(f: &Assignment, names: &[&str]) -> Result<(), String> {
    for n in names {
        check(nonneg(&get(f, n)), &format!("{n} >= 0"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- I

struct FamI;

impl FamI {
    fn derived(f: &Assignment) -> Result<Assignment, CatalogError> {
        let (a0, a1, b0, b1) = (get(f, "a0"), get(f, "a1"), get(f, "b0"), get(f, "b1"));
        let (al, v, b, l3) = (get(f, "alpha"), get(f, "v"), get(f, "B"), get(f, "l3"));
        let (h, dl, th) = (small_h(f), delta(f), theta(f));
        let d2 = &dl * &dl;
        let bb = &b0 * &b1;
        let bvd = &b * &v * &dl;
        let l0 = div(-(&a0 * &a1 * &al) * (&bvd + &h * &th), d2.clone())?;
        let l1 = div(
            &al * &bb * (&b * &v * &th * &dl + &h * &th * &th) + &l3 * &a0 * &a1 * &d2,
            &bb * &d2,
        )?;
        let l2 = div(
            -(&al * &bb * &bb * (&bvd + &h * &th) + &l3 * &d2 * &th),
            &bb * &d2,
        )?;
        let a = div(
            -(&l3 * &d2 - int(2) * &h * &al * &bb * &bb),
            &al * &bb * &dl,
        )?;
        Ok(with(f, vec![("l0", l0), ("l1", l1), ("l2", l2), ("A", a)]))
    }
}

impl Family for FamI {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "I",
            shape: Shape::Kink,
            shape_label: "kink-like",
            free: vec!["a0", "a1", "b0", "b1", "alpha", "v", "tau", "kappa", "B", "l3"],
            derived: vec![
                ("l0", "-a0*a1*alpha*(B*v*Delta + h*Theta)/Delta^2"),
                ("l1", "(alpha*b0*b1*(B*v*Theta*Delta + h*Theta^2) + l3*a0*a1*Delta^2)/(b0*b1*Delta^2)"),
                ("l2", "-(alpha*b0^2*b1^2*(B*v*Delta + h*Theta) + l3*Delta^2*Theta)/(b0*b1*Delta^2)"),
                ("A", "-(l3*Delta^2 - 2*h*alpha*b0^2*b1^2)/(alpha*b0*b1*Delta)"),
            ],
            admissibility: vec!["b0*b1 > 0", "a0/b0 != a1/b1", "alpha != 0", "tau, kappa, B >= 0", "A >= 0"],
            expected: Expected::Pass,
            headline: "printed",
            readings: vec![],
            notes: vec!["u = (a0 + a1 E)/(b0 + b1 E) with cubic reaction"],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        vec![reading(
            "printed",
            ReadingKind::Printed,
            "condition table as printed",
            pde("tau", "A", "B", "kappa", &[("0", "l0"), ("1", "l1"), ("2", "l2"), ("3", "l3")]),
            ExpAnsatz::generic(1, 1, 1).expect("ansatz"),
        )]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        put(&mut f, "a0", d.any());
        put(&mut f, "a1", d.any());
        let b0 = d.nonzero();
        let b1 = int(b0.signum() as i64) * d.positive();
        put(&mut f, "b0", b0);
        put(&mut f, "b1", b1);
        put(&mut f, "alpha", d.rate());
        put(&mut f, "v", d.nonzero());
        put(&mut f, "tau", d.small_nonneg());
        put(&mut f, "kappa", d.small_nonneg());
        put(&mut f, "B", d.small_nonneg());
        put(&mut f, "l3", d.nonzero());
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        check(pos(&(get(f, "b0") * get(f, "b1"))), "b0*b1 > 0")?;
        check(!delta(f).is_zero(), "a0/b0 != a1/b1")?;
        check(!get(f, "alpha").is_zero(), "alpha != 0")?;
        check_model_signs(f, &["tau", "kappa", "B"])?;
        let d = Self::derived(f).map_err(|e| e.to_string())?;
        check(nonneg(&get(&d, "A")), "A >= 0")
    }

    fn branches(&self, _reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        Ok(vec![branch("printed".into(), Self::derived(f)?)])
    }
}

// ---------------------------------------------------------------- I-tanh

struct FamITanh;

impl Family for FamITanh {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "I-tanh",
            shape: Shape::Kink,
            shape_label: "kink-like",
            free: vec!["l0", "l2", "l3", "A", "kappa", "tau"],
            derived: vec![
                ("l1", "l0*l3/l2"),
                ("v", "l2*(A*B +- sqrt(A^2*B^2 - 8*kappa*l3 + 16*kappa*l2^2*tau))/(2*l3 - 4*l2^2*tau)"),
                ("u", "sqrt(-l0/l2)*tanh(k*xi), k = +-sqrt(-l0*l2)/v"),
            ],
            admissibility: vec!["B = 1", "l0*l2 < 0", "A^2 - 8*kappa*l3 + 16*kappa*l2^2*tau >= 0", "v != 0"],
            expected: Expected::Pass,
            headline: "printed",
            readings: vec![],
            notes: vec![
                "the printed rate omits a factor 1/B, so the entry is restricted to B = 1",
                "the printed sign of k does not verify; the opposite branch does",
                "the table form a0 = -a1 = sqrt(-l0/l2), alpha = 2 sqrt(-l0*l2)/v equals the verifying branch",
            ],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        vec![reading(
            "printed",
            ReadingKind::Printed,
            "tanh profile with the printed v and k, both radical branches",
            pde("tau", "A", "1", "kappa", &[("0", "l0"), ("1", "l1"), ("2", "l2"), ("3", "l3")]),
            ExpAnsatz::generic(1, 1, 1).expect("ansatz"),
        )]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        let l2 = d.nonzero();
        let c = d.moderate();
        let a = d.small_nonneg();
        let kappa = d.moderate();
        let tau = d.small_nonneg();
        let s = d.moderate();
        let num = &a * &a + int(16) * &kappa * &l2 * &l2 * &tau - &s * &s;
        let l3 = num.div(&(int(8) * &kappa)).expect("kappa > 0");
        put(&mut f, "l0", -(&c * &c) * &l2);
        put(&mut f, "l2", l2);
        put(&mut f, "l3", l3);
        put(&mut f, "A", a);
        put(&mut f, "kappa", kappa);
        put(&mut f, "tau", tau);
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        let (l0, l2) = (get(f, "l0"), get(f, "l2"));
        check(!l2.is_zero(), "l2 != 0")?;
        check((&l0 * &l2).signum() < 0, "l0*l2 < 0")?;
        check_model_signs(f, &["A", "kappa", "tau"])?;
        let bs = self.branches("printed", f).map_err(|e| e.to_string())?;
        check(!bs.is_empty(), "v != 0")
    }

    fn branches(&self, _reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (l0, l2, l3) = (get(f, "l0"), get(f, "l2"), get(f, "l3"));
        let (a, kappa, tau) = (get(f, "A"), get(f, "kappa"), get(f, "tau"));
        let disc = &a * &a - int(8) * &kappa * &l3 + int(16) * &kappa * &l2 * &l2 * &tau;
        let root = sqrt(disc, "the discriminant of v")?;
        let c = sqrt(div(-l0.clone(), l2.clone())?, "-l0/l2")?;
        let r = sqrt(-(&l0 * &l2), "-l0*l2")?;
        let l1 = div(&l0 * &l3, l2.clone())?;
        let mut out = Vec::new();
        for sv in [1, -1] {
            let v = div(&l2 * (&a + int(sv) * &root), int(2) * &l3 - int(4) * &l2 * &l2 * &tau)?;
            if v.is_zero() {
                continue;
            }
            for (sk, kl) in [(1, "printed"), (-1, "flipped")] {
                let k = div(int(sk) * &r, v.clone())?;
                // c tanh(k xi) = (-c + c E)/(1 + E), alpha = 2k
                let asg = with(
                    f,
                    vec![
                        ("l1", l1.clone()),
                        ("v", v.clone()),
                        ("alpha", int(2) * &k),
                        ("a0", -c.clone()),
                        ("a1", c.clone()),
                        ("b0", int(1)),
                        ("b1", int(1)),
                    ],
                );
                out.push(branch(format!("v: {}sqrt, k: {kl}", sign_label(sv)), asg));
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------- I-kink2

struct FamIKink2;

impl FamIKink2 {
    fn q(f: &Assignment, b0: &Value) -> Value {
        let (l1, l2, b, tau) = (get(f, "l1"), get(f, "l2"), get(f, "B"), get(f, "tau"));
        let bb = &b * &b;
        int(4) * &l2 * &l2 * &tau
            + int(4) * b0 * &l2 * (&bb + int(3) * &l1 * &tau)
            + b0 * b0 * &l1 * (int(2) * &bb + int(9) * &l1 * &tau)
    }
}

impl Family for FamIKink2 {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "I-kink2",
            shape: Shape::Kink,
            shape_label: "kink-like",
            free: vec!["l1", "l2", "l3", "B", "kappa", "tau"],
            derived: vec![
                ("b0", "(-l2 +- sqrt(l2^2 - 4*l1*l3))/l1"),
                ("v", "+-sqrt(kappa)*(2*l2 + 3*b0*l1)/sqrt(Q), Q = 4*l2^2*tau + 4*b0*l2*(B^2 + 3*l1*tau) + b0^2*l1*(2*B^2 + 9*l1*tau)"),
                ("alpha", "-(2*l2 + 3*b0*l1)/(4*B*v*b0)"),
                ("u", "2/(b0*(1 + exp(2*alpha*xi)))"),
            ],
            admissibility: vec!["A = l0 = 0", "l1 != 0", "l2^2 - 4*l1*l3 >= 0", "B > 0", "kappa > 0", "Q > 0"],
            expected: Expected::Pass,
            headline: "printed",
            readings: vec![],
            notes: vec!["exp(2*alpha*xi) is read literally: E^2 with E = exp(alpha*xi)"],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        vec![reading(
            "printed",
            ReadingKind::Printed,
            "printed b0, v, alpha with both radical branches",
            pde("tau", "0", "B", "kappa", &[("1", "l1"), ("2", "l2"), ("3", "l3")]),
            ansatz(&["2"], &["b0", "0", "b0"], 1),
        )]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        loop {
            let mut f = Assignment::new();
            let l1 = d.nonzero();
            let l2 = d.any();
            let r = d.positive();
            let l3 = (&l2 * &l2 - &r * &r).div(&(int(4) * &l1)).expect("l1 != 0");
            let b = d.moderate();
            let m = d.moderate();
            let b0 = (-l2.clone() + int(d.sign()) * &r).div(&l1).expect("l1 != 0");
            let g = int(2) * &l2 + int(3) * &b0 * &l1;
            let s = d.moderate();
            let Some(tau) = (&s * &s - &b * &b * &b0 * (int(4) * &l2 + int(2) * &b0 * &l1)).div(&(&g * &g)) else {
                continue;
            };
            if b0.is_zero() || !nonneg(&tau) {
                continue;
            }
            put(&mut f, "l1", l1);
            put(&mut f, "l2", l2);
            put(&mut f, "l3", l3);
            put(&mut f, "B", b);
            put(&mut f, "kappa", &m * &m);
            put(&mut f, "tau", tau);
            return f;
        }
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        let (l1, l2, l3) = (get(f, "l1"), get(f, "l2"), get(f, "l3"));
        check(!l1.is_zero(), "l1 != 0")?;
        check(nonneg(&(&l2 * &l2 - int(4) * &l1 * &l3)), "l2^2 - 4*l1*l3 >= 0")?;
        check(pos(&get(f, "B")), "B > 0")?;
        check(pos(&get(f, "kappa")), "kappa > 0")?;
        check_model_signs(f, &["tau"])?;
        let bs = self.branches("printed", f).map_err(|e| e.to_string())?;
        check(!bs.is_empty(), "Q > 0 on some branch")
    }

    fn branches(&self, _reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (l1, l2, l3) = (get(f, "l1"), get(f, "l2"), get(f, "l3"));
        let (b, kappa) = (get(f, "B"), get(f, "kappa"));
        let root = sqrt(&l2 * &l2 - int(4) * &l1 * &l3, "l2^2 - 4*l1*l3")?;
        let sk = sqrt(kappa, "kappa")?;
        let mut out = Vec::new();
        for sb in [1, -1] {
            let b0 = div(-l2.clone() + int(sb) * &root, l1.clone())?;
            let q = Self::q(f, &b0);
            if b0.is_zero() || !pos(&q) {
                continue;
            }
            let g = int(2) * &l2 + int(3) * &b0 * &l1;
            let sq = q.sqrt().expect("q > 0");
            for sv in [1, -1] {
                let v = div(int(sv) * &sk * &g, sq.clone())?;
                if v.is_zero() {
                    continue;
                }
                let alpha = div(-g.clone(), int(4) * &b * &v * &b0)?;
                let asg = with(f, vec![("b0", b0.clone()), ("v", v), ("alpha", alpha)]);
                out.push(branch(format!("b0: {}sqrt, v: {}", sign_label(sb), sign_label(sv)), asg));
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------- II

struct FamII;

impl Family for FamII {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "II",
            shape: Shape::Soliton,
            shape_label: "solitary wave",
            free: vec!["a0", "a1", "b0", "b1", "alpha", "v", "tau", "kappa", "B"],
            derived: vec![
                ("l0", "2*a0^2*a1^2*alpha*h/Delta^2"),
                ("l1/2", "-2*a0*a1*alpha*(3*h*Theta + B*v*Delta)/Delta^2"),
                ("l1", "2*alpha*(h*(3*Theta^2 - Delta^2) + B*v*Delta*Theta)/Delta^2"),
                ("l3/2", "-2*b0*b1*alpha*(5*h*Theta + B*v*Delta)/Delta^2"),
                ("l2", "6*b0^2*b1^2*h*alpha/Delta^2"),
            ],
            admissibility: vec!["A = 0", "b0*b1 > 0", "|a0|/|b0| = |a1|/|b1|", "a0/b0 != a1/b1", "tau, kappa, B >= 0"],
            expected: Expected::Pass,
            headline: "printed",
            readings: vec![],
            notes: vec![
                "u = [(a0 + a1 E)/(b0 + b1 E)]^2",
                "the solitary-wave condition is printed with subscripts a2, b2; read as a1, b1",
            ],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        vec![reading(
            "printed",
            ReadingKind::Printed,
            "condition table as printed, u^(1/2) = +-w",
            pde("tau", "0", "B", "kappa", &[("0", "l0"), ("1/2", "lh"), ("1", "l1"), ("3/2", "l32"), ("2", "l2")]),
            ExpAnsatz::generic(1, 1, 2).expect("ansatz"),
        )]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        let a0 = d.nonzero();
        let b0 = d.nonzero();
        let b1 = int(b0.signum() as i64) * d.positive();
        let a1 = -(&a0 * &b1).div(&b0).expect("b0 != 0");
        put(&mut f, "a0", a0);
        put(&mut f, "a1", a1);
        put(&mut f, "b0", b0);
        put(&mut f, "b1", b1);
        put(&mut f, "alpha", d.rate());
        put(&mut f, "v", d.nonzero());
        put(&mut f, "tau", d.small_nonneg());
        put(&mut f, "kappa", d.small_nonneg());
        put(&mut f, "B", d.small_nonneg());
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        let (a0, a1, b0, b1) = (get(f, "a0"), get(f, "a1"), get(f, "b0"), get(f, "b1"));
        check(pos(&(&b0 * &b1)), "b0*b1 > 0")?;
        let (p, q) = (&a0 * &b1, &a1 * &b0);
        check((&p * &p - &q * &q).is_zero(), "|a0|/|b0| = |a1|/|b1|")?;
        check(!delta(f).is_zero(), "a0/b0 != a1/b1")?;
        check_model_signs(f, &["tau", "kappa", "B"])
    }

    fn branches(&self, _reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (a0, a1, b0, b1) = (get(f, "a0"), get(f, "a1"), get(f, "b0"), get(f, "b1"));
        let (al, v, b) = (get(f, "alpha"), get(f, "v"), get(f, "B"));
        let (h, dl, th) = (small_h(f), delta(f), theta(f));
        let d2 = &dl * &dl;
        let bvd = &b * &v * &dl;
        let base = with(
            f,
            vec![
                ("l0", div(int(2) * &a0 * &a0 * &a1 * &a1 * &al * &h, d2.clone())?),
                ("lh", div(int(-2) * &a0 * &a1 * &al * (int(3) * &h * &th + &bvd), d2.clone())?),
                ("l1", div(int(2) * &al * (&h * (int(3) * &th * &th - &d2) + &bvd * &th), d2.clone())?),
                ("l32", div(int(-2) * &b0 * &b1 * &al * (int(5) * &h * &th + &bvd), d2.clone())?),
                ("l2", div(int(6) * &b0 * &b0 * &b1 * &b1 * &h * &al, d2.clone())?),
            ],
        );
        Ok(sqrt_branches(base, &["a0", "a1"]))
    }
}

// ---------------------------------------------------------------- III

struct FamIII;

const III_LITERAL_DEN: [&str; 4] = ["-a1^3", "-3*a1^2*a2", "3*a1*a2^2", "a3^3"];
const III_A2_DEN: [&str; 4] = ["-a1^3", "-3*a1^2*a2", "3*a1*a2^2", "a2^3"];

impl Family for FamIII {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "III",
            shape: Shape::Singular,
            shape_label: "singular",
            free: vec!["l1", "l3", "A", "kappa", "tau", "a1", "a3"],
            derived: vec![
                ("a2", "6*a1*a2 = -sqrt(l3/l1)"),
                ("alpha", "sqrt(l1*l3)/A"),
                ("v", "+-sqrt((A^2/l3 + kappa)/tau)"),
            ],
            admissibility: vec!["B = 0", "l1 > 0", "l3 > 0", "A > 0", "tau > 0", "a1 != 0"],
            expected: Expected::PassAfterReinterpretation,
            headline: "a3->a2, cubic reaction",
            readings: vec![],
            notes: vec![
                "the denominator vanishes for some real xi; poles are located by bisection and excluded from the scan",
                "the printed denominator uses an undefined a3; a3 -> a2 is tested",
                "the printed reaction l1*u + l3*u is linear; l3*u^3 is tested",
            ],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        let linear = || pde("tau", "A", "0", "kappa", &[("1", "l1p")]);
        let cubic = || pde("tau", "A", "0", "kappa", &[("1", "l1"), ("3", "l3")]);
        let num = ["0", "a1", "a2"];
        vec![
            reading("literal", ReadingKind::Printed, "a3 free, reaction (l1 + l3) u", linear(), ansatz(&num, &III_LITERAL_DEN, 1)),
            reading("literal, cubic reaction", ReadingKind::Reinterpretation, "a3 free, reaction l1 u + l3 u^3", cubic(), ansatz(&num, &III_LITERAL_DEN, 1)),
            reading("a3->a2", ReadingKind::Reinterpretation, "a3 replaced by a2, reaction (l1 + l3) u", linear(), ansatz(&num, &III_A2_DEN, 1)),
            reading("a3->a2, cubic reaction", ReadingKind::Reinterpretation, "a3 replaced by a2, reaction l1 u + l3 u^3", cubic(), ansatz(&num, &III_A2_DEN, 1)),
        ]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        let l1 = d.moderate();
        let q = d.moderate();
        let l3 = &l1 * &q * &q;
        let alpha = d.moderate();
        let a = (&l1 * &q).div(&alpha).expect("alpha > 0");
        let kappa = d.small_nonneg();
        let v = d.moderate();
        let tau = ((&a * &a).div(&l3).expect("l3 > 0") + &kappa).div(&(&v * &v)).expect("v > 0");
        put(&mut f, "l1", l1);
        put(&mut f, "l3", l3);
        put(&mut f, "A", a);
        put(&mut f, "kappa", kappa);
        put(&mut f, "tau", tau);
        put(&mut f, "a1", d.nonzero());
        put(&mut f, "a3", d.nonzero());
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        check(pos(&get(f, "l1")), "l1 > 0")?;
        check(pos(&get(f, "l3")), "l3 > 0")?;
        check(pos(&get(f, "A")), "A > 0")?;
        check(pos(&get(f, "tau")), "tau > 0")?;
        check(nonneg(&get(f, "kappa")), "kappa >= 0")?;
        check(!get(f, "a1").is_zero(), "a1 != 0")
    }

    fn branches(&self, _reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (l1, l3, a, kappa, tau, a1) =
            (get(f, "l1"), get(f, "l3"), get(f, "A"), get(f, "kappa"), get(f, "tau"), get(f, "a1"));
        let ratio = sqrt(div(l3.clone(), l1.clone())?, "l3/l1")?;
        let prod = sqrt(&l1 * &l3, "l1*l3")?;
        let vv = sqrt(div(div(&a * &a, l3.clone())? + &kappa, tau)?, "(A^2/l3 + kappa)/tau")?;
        let mut out = Vec::new();
        for (s2, n2) in [(-1, "printed"), (1, "flipped")] {
            let a2 = div(int(s2) * &ratio, int(6) * &a1)?;
            for (sa, na) in [(1, "printed"), (-1, "flipped")] {
                let alpha = div(int(sa) * &prod, a.clone())?;
                for sv in [1, -1] {
                    let asg = with(
                        f,
                        vec![("a2", a2.clone()), ("alpha", alpha.clone()), ("v", int(sv) * &vv), ("l1p", &l1 + &l3)],
                    );
                    out.push(branch(format!("a2: {n2}, alpha: {na}, v: {}", sign_label(sv)), asg));
                }
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------- IV a

struct FamIVa;

fn iva_pde() -> HyperbolicPDE {
    pde("tau", "0", "0", "kappa", &[("0", "l0"), ("1", "l1"), ("2", "l2"), ("3", "l3")])
}

fn check_h(f: &Assignment) -> Result<(), String> {
    check_model_signs(f, &["tau", "kappa"])?;
    check(!small_h(f).is_zero(), "h != 0")
}

impl Family for FamIVa {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "IVa",
            shape: Shape::Soliton,
            shape_label: "soliton-like",
            free: vec!["a0", "a1", "b0", "b1", "alpha", "v", "tau", "kappa"],
            derived: vec![
                ("l0", "a0*(2*a0^2*b0 - a1^2*b0 - a0*a1*b1)*alpha*h/Delta^2"),
                ("l1", "(a1^2*b0^2 + 4*a0*a1*b0*b1 + a0^2*(b1^2 - 6*b0^2))*alpha*h/Delta^2"),
                ("l2", "3*b0*(2*a0*b0^2 - a1*b0*b1 - a0*b1^2)*alpha*h/Delta^2"),
                ("l3", "-2*b0*(b0^2 - b1^2)*alpha*h/Delta^2"),
            ],
            admissibility: vec!["A = B = 0", "a0 != 0", "b0 != 0", "|a1| + |b1| != 0", "Delta != 0", "h != 0"],
            expected: Expected::FailDocumented,
            headline: "printed",
            readings: vec![],
            notes: vec![
                "u = (a0 + 2 a1 E + a0 E^2)/(b0 + 2 b1 E + b0 E^2)",
                "the printed l3 has b0 where b0^2 is required; it verifies only when b0^2 = 1",
            ],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        let ans = || ansatz(&["a0", "2*a1", "a0"], &["b0", "2*b1", "b0"], 1);
        vec![
            reading("printed", ReadingKind::Printed, "condition table as printed", iva_pde(), ans()),
            reading("corrected", ReadingKind::Correction, "l3 = -2*b0^2*(b0^2 - b1^2)*alpha*h/Delta^2", iva_pde(), ans()),
        ]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        put(&mut f, "a0", d.nonzero());
        put(&mut f, "a1", d.any());
        put(&mut f, "b0", d.nonzero());
        put(&mut f, "b1", d.any());
        put(&mut f, "alpha", d.rate());
        put(&mut f, "v", d.nonzero());
        put(&mut f, "tau", d.small_nonneg());
        put(&mut f, "kappa", d.small_nonneg());
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        check(!get(f, "a0").is_zero(), "a0 != 0")?;
        check(!get(f, "b0").is_zero(), "b0 != 0")?;
        check(!(get(f, "a1").is_zero() && get(f, "b1").is_zero()), "|a1| + |b1| != 0")?;
        check(!delta(f).is_zero(), "Delta != 0")?;
        check_h(f)
    }

    fn branches(&self, reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (a0, a1, b0, b1) = (get(f, "a0"), get(f, "a1"), get(f, "b0"), get(f, "b1"));
        let ah = get(f, "alpha") * small_h(f);
        let dl = delta(f);
        let d2 = &dl * &dl;
        let s = |x: Value| div(x * &ah, d2.clone());
        let l3_lead = if reading == "corrected" { &b0 * &b0 } else { b0.clone() };
        let asg = with(
            f,
            vec![
                ("l0", s(&a0 * (int(2) * &a0 * &a0 * &b0 - &a1 * &a1 * &b0 - &a0 * &a1 * &b1))?),
                (
                    "l1",
                    s(&a1 * &a1 * &b0 * &b0 + int(4) * &a0 * &a1 * &b0 * &b1 + &a0 * &a0 * (&b1 * &b1 - int(6) * &b0 * &b0))?,
                ),
                ("l2", s(int(3) * &b0 * (int(2) * &a0 * &b0 * &b0 - &a1 * &b0 * &b1 - &a0 * &b1 * &b1))?),
                ("l3", s(int(-2) * l3_lead * (&b0 * &b0 - &b1 * &b1))?),
            ],
        );
        Ok(vec![branch(reading.into(), asg)])
    }
}

// ---------------------------------------------------------------- IV a, special case

struct FamIVaSpecial;

impl Family for FamIVaSpecial {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "IVa-special",
            shape: Shape::Soliton,
            shape_label: "soliton-like",
            free: vec!["l1", "l2", "l3", "kappa", "tau", "alpha"],
            derived: vec![
                ("a0", "-l2/(3*l3)"),
                ("a1", "sqrt(2*(l2^2 - l1*l3)/l3^2)"),
                ("v", "+-sqrt((l1 - l2^2/(3*l3) + kappa*alpha^2)/(tau*alpha^2))"),
                ("l0", "-(l1*a0 + l2*a0^2 + l3*a0^3)"),
            ],
            admissibility: vec!["A = B = 0", "b0 = 1, b1 = 0", "l3 != 0", "tau > 0", "alpha != 0", "radicands >= 0"],
            expected: Expected::FailDocumented,
            headline: "printed",
            readings: vec![],
            notes: vec![
                "u = (a0 + 2 a1 E + a0 E^2)/(1 + E^2)",
                "the printed a1 uses l2^2 where l2^2/3 is required",
            ],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        let ans = || ansatz(&["a0", "2*a1", "a0"], &["1", "0", "1"], 1);
        vec![
            reading("printed", ReadingKind::Printed, "a1 as printed, both radical branches", iva_pde(), ans()),
            reading("corrected", ReadingKind::Correction, "a1 = +-sqrt(2*(l2^2/3 - l1*l3)/l3^2)", iva_pde(), ans()),
        ]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        loop {
            let mut f = Assignment::new();
            let l3 = d.nonzero();
            let a0 = d.any();
            let a1 = d.nonzero();
            let l2 = int(-3) * &l3 * &a0;
            let l1 = (&l2 * &l2 * Value::ratio(1, 3) - &a1 * &a1 * &l3 * &l3 * Value::ratio(1, 2))
                .div(&l3)
                .expect("l3 != 0");
            let alpha = d.rate();
            let kappa = d.small_nonneg();
            let v = d.nonzero();
            let a2 = &alpha * &alpha;
            let num = &l1 - (&l2 * &l2).div(&(int(3) * &l3)).expect("l3 != 0") + &kappa * &a2;
            let tau = num.div(&(&v * &v * &a2)).expect("nonzero");
            if !pos(&tau) {
                continue;
            }
            put(&mut f, "l1", l1);
            put(&mut f, "l2", l2);
            put(&mut f, "l3", l3);
            put(&mut f, "kappa", kappa);
            put(&mut f, "tau", tau);
            put(&mut f, "alpha", alpha);
            return f;
        }
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        check(!get(f, "l3").is_zero(), "l3 != 0")?;
        check(pos(&get(f, "tau")), "tau > 0")?;
        check(nonneg(&get(f, "kappa")), "kappa >= 0")?;
        check(!get(f, "alpha").is_zero(), "alpha != 0")?;
        for r in ["printed", "corrected"] {
            self.branches(r, f).map_err(|e| e.to_string())?;
        }
        Ok(())
    }

    fn branches(&self, reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (l1, l2, l3) = (get(f, "l1"), get(f, "l2"), get(f, "l3"));
        let (kappa, tau, alpha) = (get(f, "kappa"), get(f, "tau"), get(f, "alpha"));
        let a0 = div(-l2.clone(), int(3) * &l3)?;
        let l2sq = if reading == "corrected" {
            div(&l2 * &l2, int(3))?
        } else {
            &l2 * &l2
        };
        let a1 = sqrt(div(int(2) * (l2sq - &l1 * &l3), &l3 * &l3)?, "the radicand of a1")?;
        let a2 = &alpha * &alpha;
        let vv = sqrt(
            div(&l1 - div(&l2 * &l2, int(3) * &l3)? + &kappa * &a2, &tau * &a2)?,
            "the radicand of v",
        )?;
        let l0 = -(&l1 * &a0 + &l2 * &a0 * &a0 + &l3 * &a0 * &a0 * &a0);
        let mut out = Vec::new();
        for s1 in [1, -1] {
            for sv in [1, -1] {
                let asg = with(
                    f,
                    vec![("a0", a0.clone()), ("a1", int(s1) * &a1), ("v", int(sv) * &vv), ("l0", l0.clone())],
                );
                out.push(branch(format!("a1: {}sqrt, v: {}", sign_label(s1), sign_label(sv)), asg));
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------- IV b

struct FamIVb;

impl Family for FamIVb {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "IVb",
            shape: Shape::Soliton,
            shape_label: "soliton-like",
            free: vec!["b0", "b1", "alpha", "v", "tau", "kappa"],
            derived: vec![
                ("l1/2", "-3*alpha*h/b1"),
                ("l1", "(12*b0 + 4*b1)*alpha*h/b1"),
                ("l3/2", "-(15*b0^2 + 10*b0*b1)*alpha*h/b1"),
                ("l2", "(6*b0^2*b1 + 6*b0^3)*alpha*h/b1"),
            ],
            admissibility: vec!["A = B = 0", "b0 != 0", "b1 != 0", "h != 0", "no pole on the sampling window"],
            expected: Expected::Pass,
            headline: "printed",
            readings: vec![],
            notes: vec!["u = (E + 1)^4/(b0 E^2 + (2 b0 + 4 b1) E + b0)^2"],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        vec![reading(
            "printed",
            ReadingKind::Printed,
            "condition table as printed, u^(1/2) = +-w",
            pde("tau", "0", "0", "kappa", &[("1/2", "lh"), ("1", "l1"), ("3/2", "l32"), ("2", "l2")]),
            ansatz(&["1", "2", "1"], &["b0", "2*b0 + 4*b1", "b0"], 2),
        )]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        put(&mut f, "b0", d.nonzero());
        put(&mut f, "b1", d.nonzero());
        put(&mut f, "alpha", d.rate());
        put(&mut f, "v", d.nonzero());
        put(&mut f, "tau", d.small_nonneg());
        put(&mut f, "kappa", d.small_nonneg());
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        check(!get(f, "b0").is_zero(), "b0 != 0")?;
        check(!get(f, "b1").is_zero(), "b1 != 0")?;
        check_h(f)
    }

    fn branches(&self, _reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (b0, b1) = (get(f, "b0"), get(f, "b1"));
        let ah = get(f, "alpha") * small_h(f);
        let s = |x: Value| div(x * &ah, b1.clone());
        let base = with(
            f,
            vec![
                ("lh", s(int(-3))?),
                ("l1", s(int(12) * &b0 + int(4) * &b1)?),
                ("l32", s(-(int(15) * &b0 * &b0 + int(10) * &b0 * &b1))?),
                ("l2", s(int(6) * &b0 * &b0 * &b1 + int(6) * &b0 * &b0 * &b0)?),
            ],
        );
        // the ansatz numerator has no free symbol: flip through the denominator
        let flipped = with(&base, vec![("b0", -b0.clone()), ("b1", -b1.clone())]);
        Ok(vec![branch("sqrt(u) = +w".into(), base), branch("sqrt(u) = -w".into(), flipped)])
    }
}

// ---------------------------------------------------------------- IV c

struct FamIVc;

impl Family for FamIVc {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "IVc",
            shape: Shape::Soliton,
            shape_label: "localized wave pack",
            free: vec!["a0", "a1", "alpha", "v", "tau", "kappa"],
            derived: vec![
                ("l0", "2*a0^2*(a0 + a1)*alpha*h/a1"),
                ("l1/2", "(9*a0^2 + 6*a0*a1)*alpha*h/a1"),
                ("l1", "(12*a0 + 4*a1)*alpha*h/a1"),
                ("l3/2", "-5*alpha*h/a1"),
            ],
            admissibility: vec!["A = B = 0", "a1 != 0", "h != 0"],
            expected: Expected::FailDocumented,
            headline: "printed",
            readings: vec![],
            notes: vec![
                "u = (a0 E^2 + (2 a0 + 4 a1) E + a0)^2/(E + 1)^4",
                "the printed l1/2 has the wrong sign; neither square-root branch repairs it",
            ],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        let p = || pde("tau", "0", "0", "kappa", &[("0", "l0"), ("1/2", "lh"), ("1", "l1"), ("3/2", "l32")]);
        let ans = || ansatz(&["a0", "2*a0 + 4*a1", "a0"], &["1", "2", "1"], 2);
        vec![
            reading("printed", ReadingKind::Printed, "condition table as printed, u^(1/2) = +-w", p(), ans()),
            reading("corrected", ReadingKind::Correction, "l1/2 = -(9*a0^2 + 6*a0*a1)*alpha*h/a1", p(), ans()),
        ]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        put(&mut f, "a0", d.nonzero());
        put(&mut f, "a1", d.nonzero());
        put(&mut f, "alpha", d.rate());
        put(&mut f, "v", d.nonzero());
        put(&mut f, "tau", d.small_nonneg());
        put(&mut f, "kappa", d.small_nonneg());
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        check(!get(f, "a1").is_zero(), "a1 != 0")?;
        check_h(f)
    }

    fn branches(&self, reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (a0, a1) = (get(f, "a0"), get(f, "a1"));
        let ah = get(f, "alpha") * small_h(f);
        let s = |x: Value| div(x * &ah, a1.clone());
        let half = int(9) * &a0 * &a0 + int(6) * &a0 * &a1;
        let half = if reading == "corrected" { -half } else { half };
        let base = with(
            f,
            vec![
                ("l0", s(int(2) * &a0 * &a0 * (&a0 + &a1))?),
                ("lh", s(half)?),
                ("l1", s(int(12) * &a0 + int(4) * &a1)?),
                ("l32", s(int(-5))?),
            ],
        );
        Ok(sqrt_branches(base, &["a0", "a1"]))
    }
}

// ---------------------------------------------------------------- IV d

struct FamIVd;

impl Family for FamIVd {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "IVd",
            shape: Shape::Soliton,
            shape_label: "soliton-like",
            free: vec!["a0", "a1", "alpha", "v", "tau", "kappa"],
            derived: vec![
                ("l1", "4*alpha*h"),
                ("l3/2", "-10*a1*alpha*h"),
                ("l2", "(6*a1^2 - 6*a0^2)*alpha*h"),
            ],
            admissibility: vec!["A = B = 0", "a0 != 0", "h != 0", "no pole on the sampling window"],
            expected: Expected::Pass,
            headline: "printed",
            readings: vec![],
            notes: vec!["u = 4 E^2/(a0 E^2 + 2 a1 E + a0)^2 = 1/(a0 cosh(alpha xi) + a1)^2"],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        vec![reading(
            "printed",
            ReadingKind::Printed,
            "condition table as printed, u^(1/2) = +-w",
            pde("tau", "0", "0", "kappa", &[("1", "l1"), ("3/2", "l32"), ("2", "l2")]),
            ansatz(&["0", "2"], &["a0", "2*a1", "a0"], 2),
        )]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        put(&mut f, "a0", d.nonzero());
        put(&mut f, "a1", d.any());
        put(&mut f, "alpha", d.rate());
        put(&mut f, "v", d.nonzero());
        put(&mut f, "tau", d.small_nonneg());
        put(&mut f, "kappa", d.small_nonneg());
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        check(!get(f, "a0").is_zero(), "a0 != 0")?;
        check_h(f)
    }

    fn branches(&self, _reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (a0, a1) = (get(f, "a0"), get(f, "a1"));
        let ah = get(f, "alpha") * small_h(f);
        let base = with(
            f,
            vec![
                ("l1", int(4) * &ah),
                ("l32", int(-10) * &a1 * &ah),
                ("l2", int(6) * (&a1 * &a1 - &a0 * &a0) * &ah),
            ],
        );
        let flipped = with(&base, vec![("a0", -a0.clone()), ("a1", -a1.clone())]);
        Ok(vec![branch("sqrt(u) = +w".into(), base), branch("sqrt(u) = -w".into(), flipped)])
    }
}

// ---------------------------------------------------------------- IV e

fn ive_check(f: &Assignment) -> Result<(), String> {
    check_model_signs(f, &["tau", "kappa"])?;
    check(pos(&big_h(f)), "H = tau*v^2 - kappa > 0")
}

struct FamIVeA;

impl Family for FamIVeA {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "IVe-a",
            shape: Shape::Soliton,
            shape_label: "soliton-like",
            free: vec!["l1", "l3", "tau", "kappa", "v"],
            derived: vec![("u", "sqrt(-2*l1/l3)*sech(sqrt(l1/H)*xi)")],
            admissibility: vec!["A = B = 0", "l0 = l2 = 0", "l1 > 0", "l3 < 0", "H > 0"],
            expected: Expected::Pass,
            headline: "printed",
            readings: vec![],
            notes: vec!["sech(k xi) = 2E/(1 + E^2) with alpha = k"],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        vec![reading(
            "printed",
            ReadingKind::Printed,
            "amplitude and rate as printed, both radical branches",
            pde("tau", "0", "0", "kappa", &[("1", "l1"), ("3", "l3")]),
            ansatz(&["0", "2*c"], &["1", "0", "1"], 1),
        )]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        draw_positive_h(d, &mut f);
        let k = d.rate();
        let c = d.moderate();
        let l1 = big_h(&f) * &k * &k;
        let l3 = (int(-2) * &l1).div(&(&c * &c)).expect("c > 0");
        put(&mut f, "l1", l1);
        put(&mut f, "l3", l3);
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        check(pos(&get(f, "l1")), "l1 > 0")?;
        check(get(f, "l3").signum() < 0, "l3 < 0")?;
        ive_check(f)
    }

    fn branches(&self, _reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (l1, l3) = (get(f, "l1"), get(f, "l3"));
        let c = sqrt(div(int(-2) * &l1, l3)?, "-2*l1/l3")?;
        let k = sqrt(div(l1, big_h(f))?, "l1/H")?;
        let mut out = Vec::new();
        for sc in [1, -1] {
            for sk in [1, -1] {
                let asg = with(f, vec![("c", int(sc) * &c), ("alpha", int(sk) * &k)]);
                out.push(branch(format!("amplitude: {}sqrt, k: {}sqrt", sign_label(sc), sign_label(sk)), asg));
            }
        }
        Ok(out)
    }
}

struct FamIVeB;

impl Family for FamIVeB {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "IVe-b",
            shape: Shape::Kink,
            shape_label: "kink-like",
            free: vec!["l1", "l3", "tau", "kappa", "v"],
            derived: vec![("u", "sqrt(-l1/l3)*tanh(k*xi), k = sqrt(-l1)/(2*H) as printed")],
            admissibility: vec!["A = B = 0", "l0 = l2 = 0", "l1 < 0", "l3 > 0", "H > 0"],
            expected: Expected::PassAfterReinterpretation,
            headline: "corrected argument",
            readings: vec![],
            notes: vec![
                "tanh(k xi) = (E - 1)/(E + 1) with alpha = 2k",
                "the printed argument sqrt(-l1)/(2H) does not verify; sqrt(-l1/(2H)) does",
            ],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        let p = || pde("tau", "0", "0", "kappa", &[("1", "l1"), ("3", "l3")]);
        let ans = || ansatz(&["-c", "c"], &["1", "1"], 1);
        vec![
            reading("printed", ReadingKind::Printed, "k = sqrt(-l1)/(2*H)", p(), ans()),
            reading("corrected argument", ReadingKind::Reinterpretation, "k = sqrt(-l1/(2*H))", p(), ans()),
        ]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        draw_positive_h(d, &mut f);
        let k = d.rate();
        let c = d.moderate();
        let l1 = int(-2) * big_h(&f) * &k * &k;
        let l3 = (-l1.clone()).div(&(&c * &c)).expect("c > 0");
        put(&mut f, "l1", l1);
        put(&mut f, "l3", l3);
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        check(get(f, "l1").signum() < 0, "l1 < 0")?;
        check(pos(&get(f, "l3")), "l3 > 0")?;
        ive_check(f)
    }

    fn branches(&self, reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (l1, l3) = (get(f, "l1"), get(f, "l3"));
        let h = big_h(f);
        let c = sqrt(div(-l1.clone(), l3)?, "-l1/l3")?;
        let k = if reading == "printed" {
            div(sqrt(-l1.clone(), "-l1")?, int(2) * &h)?
        } else {
            sqrt(div(-l1, int(2) * &h)?, "-l1/(2H)")?
        };
        let mut out = Vec::new();
        for sc in [1, -1] {
            for sk in [1, -1] {
                let asg = with(f, vec![("c", int(sc) * &c), ("alpha", int(2 * sk) * &k)]);
                out.push(branch(format!("amplitude: {}sqrt, k: {}sqrt", sign_label(sc), sign_label(sk)), asg));
            }
        }
        Ok(out)
    }
}

struct FamIVeC;

impl Family for FamIVeC {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "IVe-c",
            shape: Shape::Soliton,
            shape_label: "soliton-like",
            free: vec!["l1", "l2", "tau", "kappa", "v"],
            derived: vec![("u", "-(3*l1/(2*l2))*sech(sqrt(l1/H)*xi/2)^2")],
            admissibility: vec!["A = B = 0", "l0 = l3 = 0", "l1 > 0", "l2 != 0", "H > 0"],
            expected: Expected::Pass,
            headline: "printed",
            readings: vec![],
            notes: vec!["sech(k xi/2)^2 = 4E/(1 + E)^2 with alpha = k"],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        vec![reading(
            "printed",
            ReadingKind::Printed,
            "amplitude and rate as printed, both radical branches",
            pde("tau", "0", "0", "kappa", &[("1", "l1"), ("2", "l2")]),
            ansatz(&["0", "4*c"], &["1", "2", "1"], 1),
        )]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        draw_positive_h(d, &mut f);
        let k = d.rate();
        let c = d.nonzero();
        let l1 = big_h(&f) * &k * &k;
        let l2 = (int(-3) * &l1).div(&(int(2) * &c)).expect("c != 0");
        put(&mut f, "l1", l1);
        put(&mut f, "l2", l2);
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        check(pos(&get(f, "l1")), "l1 > 0")?;
        check(!get(f, "l2").is_zero(), "l2 != 0")?;
        ive_check(f)
    }

    fn branches(&self, _reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (l1, l2) = (get(f, "l1"), get(f, "l2"));
        let c = div(int(-3) * &l1, int(2) * &l2)?;
        let k = sqrt(div(l1, big_h(f))?, "l1/H")?;
        Ok([1, -1]
            .into_iter()
            .map(|sk| {
                let asg = with(f, vec![("c", c.clone()), ("alpha", int(sk) * &k)]);
                branch(format!("k: {}sqrt", sign_label(sk)), asg)
            })
            .collect())
    }
}

// ---------------------------------------------------------------- Burgers shock

struct FamBurgers;

impl Family for FamBurgers {
    fn meta(&self) -> CatalogEntry {
        CatalogEntry {
            id: "Burgers-shock",
            shape: Shape::Kink,
            shape_label: "kink-like",
            free: vec!["a0", "a1", "b0", "b1", "A", "B", "kappa"],
            derived: vec![
                ("alpha", "A*(a0/b0 - a1/b1)/(2*kappa)"),
                ("v", "-A*(a0/b0 + a1/b1)/(2*B)"),
            ],
            admissibility: vec!["tau = 0", "no reaction", "b0*b1 > 0", "a0/b0 != a1/b1", "A, B, kappa > 0"],
            expected: Expected::Pass,
            headline: "closed form",
            readings: vec![],
            notes: vec!["travelling shock of B u_t + A u u_x = kappa u_xx from one integration of the profile equation"],
        }
    }

    fn readings(&self) -> Vec<Reading> {
        vec![reading(
            "closed form",
            ReadingKind::Printed,
            "hand-integrated shock speed and rate",
            pde("0", "A", "B", "kappa", &[]),
            ExpAnsatz::generic(1, 1, 1).expect("ansatz"),
        )]
    }

    fn draw(&self, d: &mut Draw) -> Assignment {
        let mut f = Assignment::new();
        put(&mut f, "a0", d.any());
        put(&mut f, "a1", d.any());
        let b0 = d.nonzero();
        let b1 = int(b0.signum() as i64) * d.positive();
        put(&mut f, "b0", b0);
        put(&mut f, "b1", b1);
        put(&mut f, "A", d.moderate());
        put(&mut f, "B", d.moderate());
        put(&mut f, "kappa", d.moderate());
        f
    }

    fn admissible(&self, f: &Assignment) -> Result<(), String> {
        check(pos(&(get(f, "b0") * get(f, "b1"))), "b0*b1 > 0")?;
        check(!delta(f).is_zero(), "a0/b0 != a1/b1")?;
        for k in ["A", "B", "kappa"] {
            check(pos(&get(f, k)), &format!("{k} > 0"))?;
        }
        Ok(())
    }

    fn branches(&self, _reading: &str, f: &Assignment) -> Result<Vec<Branch>, CatalogError> {
        let (a0, a1, b0, b1) = (get(f, "a0"), get(f, "a1"), get(f, "b0"), get(f, "b1"));
        let (a, b, kappa) = (get(f, "A"), get(f, "B"), get(f, "kappa"));
        let (l, r) = (div(a0, b0)?, div(a1, b1)?);
        let alpha = div(&a * (&l - &r), int(2) * &kappa)?;
        let v = div(-(&a * (&l + &r)), int(2) * &b)?;
        Ok(vec![branch("closed form".into(), with(f, vec![("alpha", alpha), ("v", v)]))])
    }
}
