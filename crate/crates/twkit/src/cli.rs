//! The `twkit` command line.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
//! 3 numeric non-convergence.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;
use twkit_core::catalog::{self, CatalogError};
use twkit_core::hydro::{self, explicit_homoclinic, HydroError, HydroModel, PhaseState};
use twkit_core::reducer::{self, ExpAnsatz, ReduceError, SolveOptions, Status};
use twkit_core::Assignment;

use crate::formats::{
    model_to_json, parse_hydro, parse_model, parse_pairs, parse_range, parse_system, write_csv, AnsatzDoc,
    FormatError, SystemDoc,
};
use crate::json::{pretty, Real};
use crate::reports::{
    scalars, AnalysisDoc, CatalogListDoc, CatalogReportDoc, EntryDetailDoc, EntryDoc, ExpectationsDoc, ExplicitDoc,
    FamilyRecord, HomoclinicCheckDoc, InstanceDoc, MismatchDoc, SolveDoc, VerdictDoc,
};

#[derive(Debug, Parser)]
#[command(name = "twkit", version, about = "Exact travelling-wave reduction and phase-plane analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce a model under a generic exp-rational ansatz to an algebraic system.
    Reduce(ReduceArgs),
    /// Check an exact assignment against a reduced system.
    Verify(VerifyArgs),
    /// Solve a reduced system numerically from seeded random starts.
    Solve(SolveArgs),
    /// List, verify or instantiate the solution catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Sample a catalog profile to CSV.
    Eval(EvalArgs),
    /// Critical points, energy levels, saddle angle and turning point.
    HydroAnalyze(HydroArgs),
    /// Integrate the phase-plane flow from one start.
    HydroOrbit(OrbitArgs),
    /// Tabulate the separatrix through the saddle.
    HydroSeparatrix(SeparatrixArgs),
    /// Homoclinic profile by quadrature or by direct integration.
    HydroHomoclinic(HomoclinicArgs),
}

#[derive(Debug, Args)]
struct ReduceArgs {
    #[arg(long)]
    model: PathBuf,
    /// Numerator and denominator degrees in E, as `m/n`.
    #[arg(long)]
    ansatz: String,
    /// Ansatz power (default 2 for half-integer reactions, else 1).
    #[arg(long)]
    power: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    system: PathBuf,
    /// JSON object of values; strings are exact, numbers are floats.
    #[arg(long)]
    assignment: Option<PathBuf>,
    /// Exact values `name=p/q,...`, applied after `--assignment`.
    #[arg(long, allow_hyphen_values = true)]
    set: Option<String>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    system: PathBuf,
    /// Values held fixed, `name=p/q,...`.
    #[arg(long, allow_hyphen_values = true)]
    fix: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    starts: usize,
    /// Keep solutions with alpha = 0.
    #[arg(long)]
    keep_degenerate: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// All families with their parameters and conditions.
    List,
    /// Adjudicate families on random admissible draws.
    Verify(CatalogVerifyArgs),
    /// Build one verified family member.
    Instantiate(InstantiateArgs),
}

#[derive(Debug, Args)]
struct CatalogVerifyArgs {
    /// Family id, or `all`.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "expectations.json")]
    expectations: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InstantiateArgs {
    #[arg(long)]
    family: String,
    /// Free parameters `name=p/q,...`; drawn at random when absent.
    #[arg(long, allow_hyphen_values = true)]
    set: Option<String>,
    #[arg(long)]
    reading: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    family: String,
    #[arg(long, allow_hyphen_values = true)]
    set: Option<String>,
    #[arg(long)]
    reading: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Sampling window and count, `lo:hi:n`.
    #[arg(long, allow_hyphen_values = true)]
    range: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct HydroArgs {
    #[arg(long)]
    model: PathBuf,
}

#[derive(Debug, Args)]
struct OrbitArgs {
    #[arg(long)]
    model: PathBuf,
    /// Initial state `R,Y`.
    #[arg(long, allow_hyphen_values = true)]
    start: String,
    /// Integration interval `lo:hi` in omega.
    #[arg(long, allow_hyphen_values = true, default_value = "0:100")]
    span: String,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SeparatrixArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = 101)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Quadrature,
    Flow,
}

#[derive(Debug, Args)]
struct HomoclinicArgs {
    #[arg(long)]
    model: PathBuf,
    /// Quadrature samples per half of the profile.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Method::Quadrature)]
    method: Method,
    /// Print the quadrature/flow/closed-form cross-checks as JSON instead.
    #[arg(long)]
    check: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) | Failure::Io(_) => 2,
            Failure::Numeric(_) => 3,
            Failure::Mismatch(_) => 1,
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ReduceError> for Failure {
    fn from(e: ReduceError) -> Self {
        match e {
            ReduceError::NoConvergence { .. } | ReduceError::PoleInWindow(_) => Failure::Numeric(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<HydroError> for Failure {
    fn from(e: HydroError) -> Self {
        match e {
            HydroError::StiffnessFailure(_) | HydroError::BoundaryHit(_) | HydroError::QuadratureFailure(_) => {
                Failure::Numeric(e.to_string())
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::DrawExhausted(_) => Failure::Numeric(e.to_string()),
            CatalogError::BranchFailure(_) => Failure::Mismatch(e.to_string()),
            CatalogError::Reduce(r) => r.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing
/// reports to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
        None => Ok(out.write_all(text)?),
    }
}

fn csv(out: &mut dyn Write, path: Option<&Path>, header: &[&str], rows: &[Vec<f64>]) -> Result<(), Failure> {
    let mut buf = Vec::new();
    write_csv(&mut buf, header, rows)?;
    emit(out, path, &buf)
}

fn pairs(text: Option<&str>) -> Result<Assignment, Failure> {
    Ok(text.map(parse_pairs).transpose()?.unwrap_or_default())
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Reduce(a) => reduce(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Solve(a) => solve(a, out),
        Command::Catalog(CatalogCommand::List) => {
            let doc = CatalogListDoc {
                families: catalog::list_families().iter().map(EntryDoc::of).collect(),
            };
            emit(out, None, pretty(&doc).as_bytes())?;
            Ok(0)
        }
        Command::Catalog(CatalogCommand::Verify(a)) => catalog_verify(a, out, err),
        Command::Catalog(CatalogCommand::Instantiate(a)) => {
            let inst = instance(&a.family, a.set.as_deref(), a.reading.as_deref(), a.seed)?;
            emit(out, None, pretty(&InstanceDoc::of(&inst)).as_bytes())?;
            Ok(0)
        }
        Command::Eval(a) => eval(a, out),
        Command::HydroAnalyze(a) => analyze(&parse_hydro(&read(&a.model)?)?, out),
        Command::HydroOrbit(a) => orbit(a, out),
        Command::HydroSeparatrix(a) => separatrix(a, out),
        Command::HydroHomoclinic(a) => homoclinic(a, out),
    }
}

fn reduce(a: ReduceArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let pde = parse_model(&read(&a.model)?)?;
    let (m, n) = a
        .ansatz
        .split_once('/')
        .and_then(|(m, n)| Some((m.trim().parse::<usize>().ok()?, n.trim().parse::<usize>().ok()?)))
        .ok_or_else(|| Failure::Input(format!("--ansatz `{}` is not of the form m/n", a.ansatz)))?;
    let power = a.power.unwrap_or(if pde.has_half_integer() { 2 } else { 1 });
    let ansatz = ExpAnsatz::generic(m, n, power)?;
    let sys = reducer::reduce(&pde, &ansatz)?;
    let mut doc = SystemDoc::of(&sys);
    doc.model = Some(model_to_json(&pde));
    doc.ansatz = Some(AnsatzDoc { m, n, power });
    emit(out, a.out.as_deref(), pretty(&doc).as_bytes())?;
    Ok(0)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let sys = parse_system(&read(&a.system)?)?;
    let mut asg = Assignment::new();
    if let Some(p) = &a.assignment {
        let doc: BTreeMap<String, crate::json::Scalar> = serde_json::from_str(&read(p)?)
            .map_err(|e| Failure::Input(format!("assignment: {e}")))?;
        asg.extend(doc.into_iter().map(|(k, v)| (k, v.0)));
    }
    asg.extend(pairs(a.set.as_deref())?);
    let verdict = reducer::verify_assignment(&sys, &asg)?;
    emit(out, None, pretty(&VerdictDoc::of(&verdict, &sys.provenance)).as_bytes())?;
    Ok(if verdict.status == Status::Pass { 0 } else { 1 })
}

fn solve(a: SolveArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.starts == 0 {
        return Err(Failure::Input("--starts must be at least 1".into()));
    }
    let sys = parse_system(&read(&a.system)?)?;
    let fixed = pairs(a.fix.as_deref())?;
    let names = sys.variables();
    if let Some(k) = fixed.keys().find(|k| !names.contains(k)) {
        return Err(Failure::Input(format!("--fix names `{k}`, which the system does not use")));
    }
    let opts = SolveOptions {
        keep_degenerate: a.keep_degenerate,
        ..SolveOptions::default()
    };
    let result = reducer::solve_numeric(&sys, &fixed, a.seed, a.starts, &opts);
    let (solutions, error, code) = match result {
        Ok(s) => (s, None, 0),
        Err(e @ ReduceError::NoConvergence { .. }) => (Vec::new(), Some(e.to_string()), 3),
        Err(e) => return Err(e.into()),
    };
    let doc = SolveDoc {
        seed: a.seed,
        starts: a.starts,
        keep_degenerate: a.keep_degenerate,
        fixed: scalars(&fixed),
        solutions: solutions
            .iter()
            .map(|s| s.iter().map(|(k, v)| (k.clone(), Real(*v))).collect())
            .collect(),
        error,
    };
    emit(out, a.out.as_deref(), pretty(&doc).as_bytes())?;
    Ok(code)
}

fn instance(family: &str, set: Option<&str>, reading: Option<&str>, seed: u64) -> Result<catalog::Instance, Failure> {
    let free = match set {
        Some(s) => parse_pairs(s)?,
        None => catalog::draw_free(family, 1, seed)?.remove(0),
    };
    Ok(catalog::instantiate(family, &free, reading)?)
}

fn catalog_verify(a: CatalogVerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if a.trials == 0 {
        return Err(Failure::Input("--trials must be at least 1".into()));
    }
    let expectations: ExpectationsDoc = serde_json::from_str(&read(&a.expectations)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", a.expectations.display())))?;
    let ids: Vec<String> = if a.family == "all" {
        catalog::list_families().iter().map(|e| e.id.to_string()).collect()
    } else {
        vec![catalog::entry(&a.family)?.id.to_string()]
    };
    let mut doc = CatalogReportDoc {
        seed: a.seed,
        trials: a.trials,
        families: BTreeMap::new(),
        mismatches: Vec::new(),
        details: BTreeMap::new(),
    };
    for id in ids {
        let rep = catalog::verify_entry(&id, a.trials, a.seed)?;
        let record = FamilyRecord::of(&rep);
        let expected = expectations.families.get(&id).map(|r| r.expected.clone());
        if expected.as_deref() != Some(record.expected.as_str()) {
            doc.mismatches.push(MismatchDoc {
                family: id.clone(),
                expected,
                observed: record.expected.clone(),
            });
        }
        doc.details.insert(id.clone(), EntryDetailDoc::of(&rep));
        doc.families.insert(id, record);
    }
    emit(out, a.out.as_deref(), pretty(&doc).as_bytes())?;
    for m in &doc.mismatches {
        let _ = writeln!(
            err,
            "mismatch: {} expected {} but observed {}",
            m.family,
            m.expected.as_deref().unwrap_or("(no entry)"),
            m.observed
        );
    }
    Ok(if doc.mismatches.is_empty() { 0 } else { 1 })
}

fn eval(a: EvalArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (lo, hi, n) = parse_range(&a.range, true)?;
    if n < 2 || lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(Failure::Input("--range needs lo < hi and n >= 2".into()));
    }
    let inst = instance(&a.family, a.set.as_deref(), a.reading.as_deref(), a.seed)?;
    let prof = inst.solution.bind()?;
    let step = (hi - lo) / (n - 1) as f64;
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let xi = if i == n - 1 { hi } else { lo + step * i as f64 };
            vec![xi, prof.u(xi)]
        })
        .collect();
    csv(out, a.out.as_deref(), &["xi", "u"], &rows)?;
    Ok(0)
}

fn analyze(m: &HydroModel, out: &mut dyn Write) -> Result<i32, Failure> {
    let cp = m.critical_points()?;
    let r3 = m.turning_point()?;
    let angle = m.saddle_angle()?;
    emit(out, None, pretty(&AnalysisDoc::of(m, &cp, r3, angle)).as_bytes())?;
    Ok(0)
}

fn orbit(a: OrbitArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let m = parse_hydro(&read(&a.model)?)?;
    let (r, y) = a
        .start
        .split_once(',')
        .and_then(|(r, y)| Some((r.trim().parse::<f64>().ok()?, y.trim().parse::<f64>().ok()?)))
        .ok_or_else(|| Failure::Input(format!("--start `{}` is not of the form R,Y", a.start)))?;
    let (lo, hi, _) = parse_range(&a.span, false)?;
    let t = m.flow(PhaseState { r, y }, (lo, hi), a.rel_tol)?;
    let rows: Vec<Vec<f64>> = t.samples.iter().map(|s| vec![s.omega, s.r, s.y, s.h]).collect();
    csv(out, a.out.as_deref(), &["omega", "R", "Y", "H"], &rows)?;
    Ok(0)
}

fn separatrix(a: SeparatrixArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.samples < 2 {
        return Err(Failure::Input("--samples must be at least 2".into()));
    }
    let m = parse_hydro(&read(&a.model)?)?;
    let r3 = m.turning_point()?;
    let r1 = twkit_core::symcore::rational::to_f64(m.r1());
    let mut rows = Vec::with_capacity(a.samples);
    for i in 0..a.samples {
        let r = if i == a.samples - 1 {
            r3
        } else {
            r1 + (r3 - r1) * i as f64 / (a.samples - 1) as f64
        };
        let (yp, ym) = m.separatrix(r)?;
        rows.push(vec![r, yp, ym]);
    }
    csv(out, a.out.as_deref(), &["R", "Y_plus", "Y_minus"], &rows)?;
    Ok(0)
}

/// Largest relative gap between a five-point derivative of `f` and `g` on
/// `n` equally spaced points of `[lo, hi]`. Steps shrink towards the
/// singular ends `edges` of `f`'s domain.
pub fn derivative_gap(
    f: impl Fn(f64) -> f64,
    g: impl Fn(f64) -> f64,
    (lo, hi): (f64, f64),
    n: usize,
    edges: (f64, f64),
) -> f64 {
    (0..n)
        .map(|i| {
            let r = lo + (hi - lo) * i as f64 / (n - 1).max(1) as f64;
            let h = 1e-3 * (r - edges.0).min(edges.1 - r).min(1.0);
            let d = (8.0 * (f(r + h) - f(r - h)) - (f(r + 2.0 * h) - f(r - 2.0 * h))) / (12.0 * h);
            ((d - g(r)) / g(r)).abs()
        })
        .fold(0.0, f64::max)
}

/// Quadrature against flow, evenness of the profile and, for the special
/// instance, the closed forms.
pub fn homoclinic_check(m: &HydroModel, samples: usize) -> Result<HomoclinicCheckDoc, HydroError> {
    let r3 = m.turning_point()?;
    let prof = m.homoclinic_profile(samples)?;
    let hf = m.homoclinic_flow(1e-6, 1e-12)?;
    let mut worst = 0.0f64;
    let mut overlap = 0;
    for &(w, r) in &prof {
        if let Some(s) = hf.trajectory.at(hf.peak_omega + w) {
            worst = worst.max((s.r - r).abs());
            overlap += 1;
        }
    }
    let k = prof.len() / 2;
    let evenness = (1..=k)
        .map(|j| {
            let (a, b) = (prof[k - j], prof[k + j]);
            (a.0 + b.0).abs().max((a.1 - b.1).abs())
        })
        .fold(0.0, f64::max);
    let explicit = if m.is_reference_instance() {
        let integrand = |r: f64| m.quadrature_integrand(r);
        let printed_gap = derivative_gap(hydro::printed_antiderivative, integrand, (1.5, 1.5), 1, (1.0, r3));
        Some(ExplicitDoc {
            integrand_at_1_5: Real(integrand(1.5)),
            corrected_max_rel_error: Real(derivative_gap(
                hydro::corrected_antiderivative,
                integrand,
                (1.01, r3 - 0.01),
                201,
                (1.0, r3),
            )),
            printed_rel_error_at_1_5: Real(printed_gap),
            printed_omega0: Real(hydro::PRINTED_OMEGA0),
            printed_value_at_r3: Real(explicit_homoclinic(m, r3)?.printed),
        })
    } else {
        None
    };
    Ok(HomoclinicCheckDoc {
        r3: Real(r3),
        flow_peak_r: Real(hf.peak_r),
        max_delta_r: Real(worst),
        overlap_samples: overlap,
        evenness: Real(evenness),
        explicit,
    })
}

fn homoclinic(a: HomoclinicArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if a.samples < 2 {
        return Err(Failure::Input("--samples must be at least 2".into()));
    }
    let m = parse_hydro(&read(&a.model)?)?;
    if a.check {
        let doc = homoclinic_check(&m, a.samples)?;
        emit(out, a.out.as_deref(), pretty(&doc).as_bytes())?;
        return Ok(0);
    }
    match a.method {
        Method::Quadrature => {
            let rows: Vec<Vec<f64>> = m.homoclinic_profile(a.samples)?.iter().map(|(w, r)| vec![*w, *r]).collect();
            csv(out, a.out.as_deref(), &["omega", "R"], &rows)?;
        }
        Method::Flow => {
            let hf = m.homoclinic_flow(1e-6, 1e-12)?;
            let rows: Vec<Vec<f64>> = hf
                .trajectory
                .samples
                .iter()
                .map(|s| vec![s.omega - hf.peak_omega, s.r, s.y, s.h])
                .collect();
            csv(out, a.out.as_deref(), &["omega", "R", "Y", "H"], &rows)?;
        }
    }
    Ok(0)
}
