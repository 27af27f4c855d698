//! Substitution of the exp-rational ansatz
//! `u = w^p`, `w = (a_0 + ... + a_m E^m) / (b_0 + ... + b_n E^n)`,
//! `E = exp(alpha * xi)`, `xi = x + v t`, into the transport equation.
//!
//! The residual is assembled over a common power of the denominator and
//! the coefficients of the powers of `E` in its numerator form the
//! algebraic system. Half-integer reaction exponents require `p = 2`, with
//! `u^(1/2) = w` and `u^(3/2) = w^3`.

mod scan;
mod solve;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::model::HyperbolicPDE;
use crate::symcore::{rational, Assignment, EPoly, EvalError, ExpRational, ParamPoly, Value};

pub use scan::{locate_poles, residual_scan, ClosedFormSolution, ScanReport};
pub use solve::{solve_numeric, SolveOptions};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReduceError {
    #[error("half-integer reaction exponents need the squared ansatz (p = 2)")]
    PowerMismatch,
    #[error("ansatz denominator is identically zero")]
    EmptyAnsatz,
    #[error("ansatz power must be 1 or 2, got {0}")]
    InvalidPower(u32),
    #[error("no value for `{0}`")]
    MissingUnknown(String),
    #[error("undeclared pole near xi = {0}")]
    PoleInWindow(f64),
    #[error("no start converged ({starts} starts, {degenerate} degenerate solutions discarded)")]
    NoConvergence { starts: usize, degenerate: usize },
    #[error("invalid scan request: {0}")]
    InvalidScan(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// `u = w^power`, `w = sum a_mu E^mu / sum b_nu E^nu`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpAnsatz {
    pub alpha: String,
    pub velocity: String,
    pub a: Vec<ParamPoly>,
    pub b: Vec<ParamPoly>,
    pub power: u32,
}

impl ExpAnsatz {
    pub fn new(a: Vec<ParamPoly>, b: Vec<ParamPoly>, power: u32) -> Result<Self, ReduceError> {
        if !(1..=2).contains(&power) {
            return Err(ReduceError::InvalidPower(power));
        }
        if b.iter().all(ParamPoly::is_zero) {
            return Err(ReduceError::EmptyAnsatz);
        }
        Ok(ExpAnsatz {
            alpha: "alpha".to_string(),
            velocity: "v".to_string(),
            a,
            b,
            power,
        })
    }

    /// Fully symbolic ansatz with unknowns `a0..am`, `b0..bn`, `alpha`, `v`.
    pub fn generic(m: usize, n: usize, power: u32) -> Result<Self, ReduceError> {
        let a = (0..=m).map(|i| ParamPoly::var(&format!("a{i}"))).collect();
        let b = (0..=n).map(|i| ParamPoly::var(&format!("b{i}"))).collect();
        Self::new(a, b, power)
    }

    pub fn numerator(&self) -> EPoly {
        EPoly::from_coeffs(self.a.clone())
    }

    pub fn denominator(&self) -> EPoly {
        EPoly::from_coeffs(self.b.clone())
    }

    pub fn w(&self) -> ExpRational {
        ExpRational::new(self.numerator(), self.denominator())
            .expect("denominator checked at construction")
    }

    pub fn u(&self) -> ExpRational {
        self.w().pow(self.power)
    }

    /// Names occurring in the ansatz, together with `alpha` and `v`.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .a
            .iter()
            .chain(&self.b)
            .flat_map(|c| c.vars().iter().cloned())
            .collect();
        out.push(self.alpha.clone());
        out.push(self.velocity.clone());
        out.sort();
        out.dedup();
        out
    }
}

/// Polynomial equations in the ansatz unknowns and the equation parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicSystem {
    pub unknowns: Vec<String>,
    pub parameters: Vec<String>,
    pub equations: Vec<ParamPoly>,
    /// Power of `E` each equation was collected from.
    pub provenance: Vec<u32>,
    pub alpha: Option<String>,
}

impl AlgebraicSystem {
    /// All names used by the system, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .unknowns
            .iter()
            .chain(&self.parameters)
            .cloned()
            .chain(self.equations.iter().flat_map(|e| e.vars().iter().cloned()))
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Builds the algebraic system for `pde` under `ansatz`.
pub fn reduce(pde: &HyperbolicPDE, ansatz: &ExpAnsatz) -> Result<AlgebraicSystem, ReduceError> {
    if pde.has_half_integer() && ansatz.power != 2 {
        return Err(ReduceError::PowerMismatch);
    }
    let cleared = cleared_residual(pde, ansatz);
    let mut equations = Vec::new();
    let mut provenance = Vec::new();
    for (k, c) in cleared.coeffs().iter().enumerate() {
        if !c.is_zero() {
            equations.push(c.clone());
            provenance.push(k as u32);
        }
    }
    let parameters = pde.symbols();
    let unknowns = ansatz
        .symbols()
        .into_iter()
        .filter(|s| !parameters.contains(s))
        .collect();
    Ok(AlgebraicSystem {
        unknowns,
        parameters,
        equations,
        provenance,
        alpha: Some(ansatz.alpha.clone()),
    })
}

/// Numerator of the residual `tau v^2 u'' + A u u' + B v u' - kappa u'' -
/// sum lambda u^nu` after multiplication by `D^K`.
fn cleared_residual(pde: &HyperbolicPDE, ansatz: &ExpAnsatz) -> EPoly {
    let al = ansatz.alpha.as_str();
    let n = ansatz.numerator();
    let d = ansatz.denominator();
    let two = ParamPoly::int(2);
    let dd = d.d_xi(al);
    // w' = w1 / D^2, w'' = w2 / D^3
    let w1 = n.d_xi(al).mul(&d).sub(&n.mul(&dd));
    let w2 = w1.d_xi(al).mul(&d).sub(&w1.mul(&dd).scale(&two));
    let p = ansatz.power;
    let (u0, k0, u1, k1, u2, k2) = if p == 1 {
        (n.clone(), 1, w1, 2, w2, 3)
    } else {
        let u1 = n.mul(&w1).scale(&two);
        let u2 = w1.mul(&w1).add(&n.mul(&w2)).scale(&two);
        (n.pow(2), 2, u1, 3, u2, 4)
    };
    let v = ParamPoly::var(&ansatz.velocity);
    let h = &(&pde.tau.to_poly() * &(&v * &v)) - &pde.kappa.to_poly();
    let mut terms: Vec<(EPoly, u32)> = Vec::new();
    terms.push((u2.scale(&h), k2));
    if !pde.a.is_zero() {
        terms.push((u0.mul(&u1).scale(&pde.a.to_poly()), k0 + k1));
    }
    if !pde.b.is_zero() {
        terms.push((u1.scale(&(&pde.b.to_poly() * &v)), k1));
    }
    for (nu, lam) in &pde.reaction {
        // exponent of w
        let e = if p == 2 { nu.twice() } else { nu.twice() / 2 };
        terms.push((n.pow(e).scale(&-lam.to_poly()), e));
    }
    let top = terms.iter().map(|(_, k)| *k).max().unwrap_or(0);
    terms
        .iter()
        .fold(EPoly::zero(), |acc, (t, k)| acc.add(&t.mul(&d.pow(top - k))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub mode: Mode,
    pub residuals: Vec<Value>,
    /// Indices of the equations that do not vanish.
    pub failing: Vec<usize>,
    pub report: String,
}

/// Relative tolerance for float assignments.
pub const NUMERIC_TOL: f64 = 1e-10;

/// Evaluates every equation at `assignment`. Exact when every value is
/// exact; otherwise each residual is judged relative to the sum of the
/// absolute values of its terms.
pub fn verify_assignment(
    system: &AlgebraicSystem,
    assignment: &Assignment,
) -> Result<Verdict, ReduceError> {
    for name in system.variables() {
        if !assignment.contains_key(&name) {
            return Err(ReduceError::MissingUnknown(name));
        }
    }
    let exact = assignment.values().all(Value::is_exact);
    let mut residuals = Vec::with_capacity(system.equations.len());
    let mut failing = Vec::new();
    for (i, eq) in system.equations.iter().enumerate() {
        let r = eq.evaluate(assignment)?;
        let bad = match &r {
            Value::Exact(q) => !num_traits::Zero::is_zero(q),
            Value::Approx(x) => {
                let scale = eq.abs_term_sum(assignment)?.max(1.0);
                !(x.abs() <= NUMERIC_TOL * scale)
            }
        };
        if bad {
            failing.push(i);
        }
        residuals.push(r);
    }
    let status = if failing.is_empty() { Status::Pass } else { Status::Fail };
    let report = if failing.is_empty() {
        format!("all {} equations vanish", system.equations.len())
    } else {
        let parts: Vec<String> = failing
            .iter()
            .take(8)
            .map(|&i| format!("E^{}: {}", system.provenance[i], residuals[i]))
            .collect();
        let more = if failing.len() > 8 {
            format!(" and {} more", failing.len() - 8)
        } else {
            String::new()
        };
        format!(
            "{} of {} equations nonzero ({}{})",
            failing.len(),
            system.equations.len(),
            parts.join(", "),
            more
        )
    };
    Ok(Verdict {
        status,
        mode: if exact { Mode::Exact } else { Mode::Numeric },
        residuals,
        failing,
        report,
    })
}

/// Convenience: exact assignment from integer/rational pairs.
pub fn exact_assignment(pairs: &[(&str, i64, i64)]) -> Assignment {
    pairs
        .iter()
        .map(|(k, n, d)| (k.to_string(), Value::Exact(rational::ratio(*n, *d))))
        .collect()
}

#[cfg(test)]
mod tests;
