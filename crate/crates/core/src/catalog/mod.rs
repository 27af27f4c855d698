//! Published solution families and their adjudication.
//!
//! Each family maps free parameters to a full parameter set through its
//! printed formulas. [`verify_entry`] draws admissible rational parameter
//! sets, reduces the equation once per reading and checks every draw
//! exactly with [`reducer::verify_assignment`] and numerically with
//! [`reducer::residual_scan`].

mod draw;
mod families;

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

pub use draw::Draw;

use crate::reducer::{
    self, AlgebraicSystem, ClosedFormSolution, ExpAnsatz, Mode, ReduceError, ScanReport, Status, Verdict,
};
use crate::model::HyperbolicPDE;
use crate::symcore::{Assignment, Value};
use families::{Family, Reading};

/// Sampling window and resolution of the numeric check.
pub const SCAN_WINDOW: (f64, f64) = (-10.0, 10.0);
pub const SCAN_SAMPLES: usize = 1001;
pub const SCAN_TOL: f64 = 1e-9;
/// Points where the asymptotic limits are read, and their tolerance.
pub const SHAPE_POINTS: (f64, f64) = (50.0, 60.0);
pub const SHAPE_TOL: f64 = 1e-8;
/// Smallest `|alpha|` accepted from a random draw.
pub const MIN_RATE: f64 = 0.5;
const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Kink,
    Soliton,
    Singular,
}

impl Shape {
    pub fn as_str(self) -> &'static str {
        match self {
            Shape::Kink => "kink-like",
            Shape::Soliton => "soliton-like",
            Shape::Singular => "singular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Pass,
    FailDocumented,
    PassAfterReinterpretation,
}

impl Expected {
    pub fn as_str(self) -> &'static str {
        match self {
            Expected::Pass => "PASS",
            Expected::FailDocumented => "FAIL-DOCUMENTED",
            Expected::PassAfterReinterpretation => "PASS-AFTER-REINTERPRETATION",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Expected::Pass, Expected::FailDocumented, Expected::PassAfterReinterpretation]
            .into_iter()
            .find(|e| e.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadingKind {
    /// The formulas as printed.
    Printed,
    /// A typographic reinterpretation; passing it adjudicates the entry as
    /// passing after reinterpretation.
    Reinterpretation,
    /// A re-derived replacement, reported as evidence only.
    Correction,
}

impl ReadingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReadingKind::Printed => "printed",
            ReadingKind::Reinterpretation => "reinterpretation",
            ReadingKind::Correction => "correction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadingInfo {
    pub name: &'static str,
    pub kind: ReadingKind,
    pub note: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub shape: Shape,
    /// Label used in the source for the regime.
    pub shape_label: &'static str,
    pub free: Vec<&'static str>,
    /// Parameter to formula text; `h = alpha*(v^2*tau - kappa)`,
    /// `H = tau*v^2 - kappa`, `Delta = a1*b0 - a0*b1`, `Theta = a1*b0 + a0*b1`.
    pub derived: Vec<(&'static str, &'static str)>,
    pub admissibility: Vec<&'static str>,
    pub expected: Expected,
    /// Reading whose branches are used for draws, shape checks and
    /// [`instantiate`] by default.
    pub headline: &'static str,
    pub readings: Vec<ReadingInfo>,
    pub notes: Vec<&'static str>,
}

/// One radical branch of a family's formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub label: String,
    pub assignment: Assignment,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("unknown reading {0}")]
    UnknownReading(String),
    #[error("missing free parameter {0}")]
    MissingParameter(String),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("no radical branch verifies: {0}")]
    BranchFailure(String),
    #[error("no admissible draw found in {0} attempts")]
    DrawExhausted(usize),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

fn find(id: &str) -> Result<Box<dyn Family>, CatalogError> {
    families::all()
        .into_iter()
        .find(|f| f.meta().id == id)
        .ok_or_else(|| CatalogError::UnknownFamily(id.to_string()))
}

fn entry_of(f: &dyn Family) -> CatalogEntry {
    let mut e = f.meta();
    e.readings = f.readings().into_iter().map(|r| r.info).collect();
    e
}

/// All fourteen families.
pub fn list_families() -> Vec<CatalogEntry> {
    families::all().iter().map(|f| entry_of(f.as_ref())).collect()
}

pub fn entry(id: &str) -> Result<CatalogEntry, CatalogError> {
    Ok(entry_of(find(id)?.as_ref()))
}

/// Outcome of one branch under one reading.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchOutcome {
    pub label: String,
    pub verdict: Verdict,
}

/// A verified family member.
#[derive(Debug, Clone)]
pub struct Instance {
    pub family: &'static str,
    pub reading: &'static str,
    pub branch: String,
    pub assignment: Assignment,
    pub solution: ClosedFormSolution,
    pub verdict: Verdict,
    pub system: AlgebraicSystem,
    pub pde: HyperbolicPDE,
    pub ansatz: ExpAnsatz,
    /// Every branch tried, in order.
    pub branches: Vec<BranchOutcome>,
}

fn alpha_v(asg: &Assignment) -> (f64, f64) {
    let g = |k: &str| asg.get(k).map(Value::to_f64).unwrap_or(0.0);
    (g("alpha"), g("v"))
}

fn solution(reading: &Reading, asg: &Assignment) -> ClosedFormSolution {
    let (alpha, v) = alpha_v(asg);
    ClosedFormSolution::new(reading.ansatz.w(), asg.clone(), alpha, v, reading.ansatz.power)
}

/// Index of the branch to keep: first exact pass, else first pass, else 0.
fn select(outcomes: &[BranchOutcome]) -> Option<usize> {
    let pass = |o: &&BranchOutcome| o.verdict.status == Status::Pass;
    outcomes
        .iter()
        .position(|o| pass(&o) && o.verdict.mode == Mode::Exact)
        .or_else(|| outcomes.iter().position(|o| pass(&o)))
}

fn run_branches(
    sys: &AlgebraicSystem,
    branches: Vec<Branch>,
) -> Result<(Vec<BranchOutcome>, Vec<Assignment>), CatalogError> {
    let mut outcomes = Vec::new();
    let mut asgs = Vec::new();
    for b in branches {
        let verdict = reducer::verify_assignment(sys, &b.assignment)?;
        outcomes.push(BranchOutcome { label: b.label, verdict });
        asgs.push(b.assignment);
    }
    Ok((outcomes, asgs))
}

fn check_free(e: &CatalogEntry, free: &Assignment) -> Result<(), CatalogError> {
    for p in &e.free {
        if !free.contains_key(*p) {
            return Err(CatalogError::MissingParameter(p.to_string()));
        }
    }
    Ok(())
}

/// Builds the full parameter set of `family` from `free` under `reading`
/// (the headline reading when `None`), trying every radical branch and
/// returning the one that verifies.
pub fn instantiate(family: &str, free: &Assignment, reading: Option<&str>) -> Result<Instance, CatalogError> {
    let fam = find(family)?;
    let meta = fam.meta();
    check_free(&meta, free)?;
    fam.admissible(free).map_err(CatalogError::Inadmissible)?;
    let name = reading.unwrap_or(meta.headline);
    let rd = fam
        .readings()
        .into_iter()
        .find(|r| r.info.name == name)
        .ok_or_else(|| CatalogError::UnknownReading(name.to_string()))?;
    let sys = reducer::reduce(&rd.pde, &rd.ansatz)?;
    let (outcomes, asgs) = run_branches(&sys, fam.branches(name, free)?)?;
    let Some(k) = select(&outcomes) else {
        let evidence = outcomes
            .iter()
            .map(|o| alloc::format!("{}: {}", o.label, o.verdict.report))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(CatalogError::BranchFailure(evidence));
    };
    let mut sol = solution(&rd, &asgs[k]);
    if meta.shape == Shape::Singular {
        sol.poles = reducer::locate_poles(&sol, SCAN_WINDOW.0, SCAN_WINDOW.1, SCAN_SAMPLES)?;
    }
    Ok(Instance {
        family: meta.id,
        reading: rd.info.name,
        branch: outcomes[k].label.clone(),
        assignment: asgs[k].clone(),
        solution: sol,
        verdict: outcomes[k].verdict.clone(),
        system: sys,
        pde: rd.pde.clone(),
        ansatz: rd.ansatz.clone(),
        branches: outcomes,
    })
}

/// Result of the asymptotic shape check.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeCheck {
    pub ok: bool,
    pub left: f64,
    pub right: f64,
}

/// Reads the limits at `-50`, `+50` (compared with `-60`, `+60`). Kinks
/// need distinct finite limits, solitons equal ones. Singular profiles
/// are not checked.
pub fn shape_check(shape: Shape, sol: &ClosedFormSolution) -> Result<ShapeCheck, CatalogError> {
    let prof = sol.bind()?;
    let (a, b) = SHAPE_POINTS;
    let (l, l2, r, r2) = (prof.u(-a), prof.u(-b), prof.u(a), prof.u(b));
    let close = |x: f64, y: f64| (x - y).abs() <= SHAPE_TOL * (1.0 + x.abs().max(y.abs()));
    let settled = [l, l2, r, r2].iter().all(|x| x.is_finite()) && close(l, l2) && close(r, r2);
    let ok = match shape {
        Shape::Kink => settled && !close(l, r),
        Shape::Soliton => settled && close(l, r),
        Shape::Singular => true,
    };
    Ok(ShapeCheck { ok, left: l, right: r })
}

/// One random draw checked under one reading.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub free: Assignment,
    /// Selected branch, `None` when the branch formulas could not be
    /// evaluated.
    pub branch: Option<String>,
    pub branches: Vec<BranchOutcome>,
    /// Error raised while evaluating the branch formulas.
    pub error: Option<String>,
    pub poles: Vec<f64>,
    pub scan: Option<ScanReport>,
    pub scan_error: Option<String>,
    pub shape: Option<ShapeCheck>,
    pub pass: bool,
}

impl TrialReport {
    /// Verdict of the selected branch.
    pub fn verdict(&self) -> Option<&Verdict> {
        let label = self.branch.as_ref()?;
        self.branches.iter().find(|b| &b.label == label).map(|b| &b.verdict)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReadingReport {
    pub name: &'static str,
    pub kind: ReadingKind,
    pub note: &'static str,
    pub system_size: usize,
    /// Power of `E` behind each equation.
    pub provenance: Vec<u32>,
    pub trials: Vec<TrialReport>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntryReport {
    pub entry: CatalogEntry,
    pub seed: u64,
    pub status: Expected,
    pub readings: Vec<ReadingReport>,
}

impl EntryReport {
    pub fn reading(&self, name: &str) -> Option<&ReadingReport> {
        self.readings.iter().find(|r| r.name == name)
    }
}

/// Status rule: printed reading passes every trial, else some
/// reinterpretation does, else the entry fails with evidence.
fn adjudicate(readings: &[ReadingReport]) -> Expected {
    let passes = |k: ReadingKind| readings.iter().any(|r| r.kind == k && r.pass);
    if passes(ReadingKind::Printed) {
        Expected::Pass
    } else if passes(ReadingKind::Reinterpretation) {
        Expected::PassAfterReinterpretation
    } else {
        Expected::FailDocumented
    }
}

fn acceptable_draw(fam: &dyn Family, meta: &CatalogEntry, headline: &Reading, free: &Assignment) -> bool {
    if fam.admissible(free).is_err() {
        return false;
    }
    let Ok(bs) = fam.branches(meta.headline, free) else {
        return false;
    };
    !bs.is_empty()
        && bs.iter().all(|b| {
            let sol = solution(headline, &b.assignment);
            if !(sol.alpha.abs() >= MIN_RATE) {
                return false;
            }
            meta.shape == Shape::Singular
                || reducer::locate_poles(&sol, SCAN_WINDOW.0, SCAN_WINDOW.1, SCAN_SAMPLES)
                    .map(|p| p.is_empty())
                    .unwrap_or(false)
        })
}

/// Admissible random free-parameter sets for `family`, reproducible from
/// `(seed, family)`.
pub fn draw_free(family: &str, trials: usize, seed: u64) -> Result<Vec<Assignment>, CatalogError> {
    let fam = find(family)?;
    let meta = fam.meta();
    let readings = fam.readings();
    let headline = readings
        .iter()
        .find(|r| r.info.name == meta.headline)
        .expect("headline reading exists");
    let mut d = Draw::new(seed, meta.id);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut found = None;
        for _ in 0..MAX_ATTEMPTS {
            let f = fam.draw(&mut d);
            if acceptable_draw(fam.as_ref(), &meta, headline, &f) {
                found = Some(f);
                break;
            }
        }
        out.push(found.ok_or(CatalogError::DrawExhausted(MAX_ATTEMPTS))?);
    }
    Ok(out)
}

fn trial(
    fam: &dyn Family,
    meta: &CatalogEntry,
    rd: &Reading,
    sys: &AlgebraicSystem,
    free: &Assignment,
) -> Result<TrialReport, CatalogError> {
    let mut rep = TrialReport {
        free: free.clone(),
        branch: None,
        branches: Vec::new(),
        error: None,
        poles: Vec::new(),
        scan: None,
        scan_error: None,
        shape: None,
        pass: false,
    };
    let branches = match fam.branches(rd.info.name, free) {
        Ok(b) => b,
        Err(CatalogError::Inadmissible(msg)) => {
            rep.error = Some(msg);
            return Ok(rep);
        }
        Err(e) => return Err(e),
    };
    let (outcomes, asgs) = run_branches(sys, branches)?;
    rep.branches = outcomes;
    let k = select(&rep.branches).unwrap_or(0);
    let Some(asg) = asgs.get(k) else {
        rep.error = Some("no branch is defined".to_string());
        return Ok(rep);
    };
    rep.branch = Some(rep.branches[k].label.clone());
    let mut sol = solution(rd, asg);
    if meta.shape == Shape::Singular {
        sol.poles = reducer::locate_poles(&sol, SCAN_WINDOW.0, SCAN_WINDOW.1, SCAN_SAMPLES)?;
        rep.poles = sol.poles.clone();
    }
    match reducer::residual_scan(&rd.pde, &sol, SCAN_WINDOW.0, SCAN_WINDOW.1, SCAN_SAMPLES) {
        Ok(s) => rep.scan = Some(s),
        Err(e) => rep.scan_error = Some(e.to_string()),
    }
    let shape = shape_check(meta.shape, &sol)?;
    let exact_pass = rep.branches[k].verdict.status == Status::Pass;
    let scan_pass = rep.scan.is_some_and(|s| s.relative < SCAN_TOL);
    rep.pass = exact_pass && scan_pass && shape.ok;
    rep.shape = Some(shape);
    Ok(rep)
}

/// Draws `trials` admissible parameter sets and checks them under every
/// reading of `family`.
pub fn verify_entry(family: &str, trials: usize, seed: u64) -> Result<EntryReport, CatalogError> {
    let fam = find(family)?;
    let meta = fam.meta();
    let draws = draw_free(family, trials.max(1), seed)?;
    let mut readings = Vec::new();
    for rd in fam.readings() {
        let sys = reducer::reduce(&rd.pde, &rd.ansatz)?;
        let trials = draws
            .iter()
            .map(|f| trial(fam.as_ref(), &meta, &rd, &sys, f))
            .collect::<Result<Vec<_>, _>>()?;
        let pass = trials.iter().all(|t| t.pass);
        readings.push(ReadingReport {
            name: rd.info.name,
            kind: rd.info.kind,
            note: rd.info.note,
            system_size: sys.equations.len(),
            provenance: sys.provenance.clone(),
            trials,
            pass,
        });
    }
    Ok(EntryReport {
        entry: entry_of(fam.as_ref()),
        seed,
        status: adjudicate(&readings),
        readings,
    })
}

#[cfg(test)]
mod tests;
