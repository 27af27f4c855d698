//! Report documents written by the command line. Every document derives
//! `Deserialize` with unknown fields denied, which makes the parser its
//! schema validator.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use twkit_core::catalog::{
    BranchOutcome, CatalogEntry, EntryReport, Instance, ReadingKind, ReadingReport, TrialReport,
};
use twkit_core::hydro::{CriticalPointReport, HydroModel};
use twkit_core::reducer::{Mode, ScanReport, Verdict};
use twkit_core::Assignment;

use crate::formats::HydroDoc;
use crate::json::{Exact, Real, Scalar};

pub fn scalars(a: &Assignment) -> BTreeMap<String, Scalar> {
    a.iter().map(|(k, v)| (k.clone(), Scalar(v.clone()))).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailingDoc {
    pub index: usize,
    /// Power of `E` the equation was collected from.
    pub power: Option<u32>,
    pub residual: Scalar,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    pub status: String,
    pub mode: String,
    pub equations: usize,
    pub failing: Vec<FailingDoc>,
    pub report: String,
}

impl VerdictDoc {
    pub fn of(v: &Verdict, provenance: &[u32]) -> Self {
        VerdictDoc {
            status: v.status.as_str().to_string(),
            mode: match v.mode {
                Mode::Exact => "exact",
                Mode::Numeric => "numeric",
            }
            .to_string(),
            equations: v.residuals.len(),
            failing: v
                .failing
                .iter()
                .map(|&i| FailingDoc {
                    index: i,
                    power: provenance.get(i).copied(),
                    residual: Scalar(v.residuals[i].clone()),
                })
                .collect(),
            report: v.report.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDoc {
    pub label: String,
    pub verdict: VerdictDoc,
}

impl BranchDoc {
    fn of(b: &BranchOutcome, provenance: &[u32]) -> Self {
        BranchDoc {
            label: b.label.clone(),
            verdict: VerdictDoc::of(&b.verdict, provenance),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveDoc {
    pub seed: u64,
    pub starts: usize,
    pub keep_degenerate: bool,
    pub fixed: BTreeMap<String, Scalar>,
    pub solutions: Vec<BTreeMap<String, Real>>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormulaDoc {
    pub name: String,
    pub formula: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReadingInfoDoc {
    pub name: String,
    pub kind: String,
    pub note: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub id: String,
    pub shape: String,
    pub shape_label: String,
    pub free: Vec<String>,
    pub derived: Vec<FormulaDoc>,
    pub admissibility: Vec<String>,
    pub expected: String,
    pub headline: String,
    pub readings: Vec<ReadingInfoDoc>,
    pub notes: Vec<String>,
}

impl EntryDoc {
    pub fn of(e: &CatalogEntry) -> Self {
        let s = |x: &&str| x.to_string();
        EntryDoc {
            id: e.id.to_string(),
            shape: e.shape.as_str().to_string(),
            shape_label: e.shape_label.to_string(),
            free: e.free.iter().map(s).collect(),
            derived: e
                .derived
                .iter()
                .map(|(n, f)| FormulaDoc {
                    name: n.to_string(),
                    formula: f.to_string(),
                })
                .collect(),
            admissibility: e.admissibility.iter().map(s).collect(),
            expected: e.expected.as_str().to_string(),
            headline: e.headline.to_string(),
            readings: e
                .readings
                .iter()
                .map(|r| ReadingInfoDoc {
                    name: r.name.to_string(),
                    kind: r.kind.as_str().to_string(),
                    note: r.note.to_string(),
                })
                .collect(),
            notes: e.notes.iter().map(s).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogListDoc {
    pub families: Vec<EntryDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub family: String,
    pub reading: String,
    pub branch: String,
    pub assignment: BTreeMap<String, Scalar>,
    pub alpha: Real,
    pub velocity: Real,
    pub power: u32,
    /// `w` with `u = w^power`.
    pub profile: String,
    pub poles: Vec<Real>,
    pub verdict: VerdictDoc,
    pub branches: Vec<BranchDoc>,
}

impl InstanceDoc {
    pub fn of(i: &Instance) -> Self {
        let prov = &i.system.provenance;
        InstanceDoc {
            family: i.family.to_string(),
            reading: i.reading.to_string(),
            branch: i.branch.clone(),
            assignment: scalars(&i.assignment),
            alpha: Real(i.solution.alpha),
            velocity: Real(i.solution.velocity),
            power: i.solution.power,
            profile: i.solution.w.to_string(),
            poles: i.solution.poles.iter().map(|p| Real(*p)).collect(),
            verdict: VerdictDoc::of(&i.verdict, prov),
            branches: i.branches.iter().map(|b| BranchDoc::of(b, prov)).collect(),
        }
    }
}

/// Adjudicated status of one family, shared by the expectations file and
/// the verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRecord {
    pub expected: String,
    pub branch_notes: Vec<String>,
    pub known_typos: Vec<String>,
}

impl FamilyRecord {
    pub fn of(r: &EntryReport) -> Self {
        let branch_notes = r
            .readings
            .iter()
            .map(|rd| {
                let passed: Vec<&TrialReport> = rd.trials.iter().filter(|t| t.pass).collect();
                let mut labels: Vec<&str> = Vec::new();
                for t in &passed {
                    if let Some(b) = t.branch.as_deref() {
                        if !labels.contains(&b) {
                            labels.push(b);
                        }
                    }
                }
                let mut note = format!("{}: {}/{} trials pass", rd.name, passed.len(), rd.trials.len());
                if !labels.is_empty() {
                    note.push_str(&format!(" on branch {}", labels.join(" | ")));
                }
                note
            })
            .collect();
        let known_typos = r
            .readings
            .iter()
            .filter(|rd| rd.kind != ReadingKind::Printed)
            .map(|rd| format!("{} ({}): {}", rd.name, rd.kind.as_str(), rd.note))
            .collect();
        FamilyRecord {
            expected: r.status.as_str().to_string(),
            branch_notes,
            known_typos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationsDoc {
    pub families: BTreeMap<String, FamilyRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanDoc {
    pub relative: Real,
    pub max_residual: Real,
    pub max_u: Real,
    pub samples_used: usize,
}

impl ScanDoc {
    fn of(s: &ScanReport) -> Self {
        ScanDoc {
            relative: Real(s.relative),
            max_residual: Real(s.max_residual),
            max_u: Real(s.max_u),
            samples_used: s.samples_used,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeDoc {
    pub ok: bool,
    pub left: Real,
    pub right: Real,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialDoc {
    pub free: BTreeMap<String, Scalar>,
    pub pass: bool,
    pub branch: Option<String>,
    pub error: Option<String>,
    pub poles: Vec<Real>,
    pub scan: Option<ScanDoc>,
    pub scan_error: Option<String>,
    pub shape: Option<ShapeDoc>,
    pub branches: Vec<BranchDoc>,
}

impl TrialDoc {
    fn of(t: &TrialReport, provenance: &[u32]) -> Self {
        TrialDoc {
            free: scalars(&t.free),
            pass: t.pass,
            branch: t.branch.clone(),
            error: t.error.clone(),
            poles: t.poles.iter().map(|p| Real(*p)).collect(),
            scan: t.scan.as_ref().map(ScanDoc::of),
            scan_error: t.scan_error.clone(),
            shape: t.shape.as_ref().map(|s| ShapeDoc {
                ok: s.ok,
                left: Real(s.left),
                right: Real(s.right),
            }),
            branches: t.branches.iter().map(|b| BranchDoc::of(b, provenance)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReadingDoc {
    pub name: String,
    pub kind: String,
    pub note: String,
    pub system_size: usize,
    pub pass: bool,
    pub trials: Vec<TrialDoc>,
}

impl ReadingDoc {
    fn of(r: &ReadingReport) -> Self {
        ReadingDoc {
            name: r.name.to_string(),
            kind: r.kind.as_str().to_string(),
            note: r.note.to_string(),
            system_size: r.system_size,
            pass: r.pass,
            trials: r.trials.iter().map(|t| TrialDoc::of(t, &r.provenance)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDetailDoc {
    pub status: String,
    pub shape: String,
    pub readings: Vec<ReadingDoc>,
}

impl EntryDetailDoc {
    pub fn of(r: &EntryReport) -> Self {
        EntryDetailDoc {
            status: r.status.as_str().to_string(),
            shape: r.entry.shape.as_str().to_string(),
            readings: r.readings.iter().map(ReadingDoc::of).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MismatchDoc {
    pub family: String,
    pub expected: Option<String>,
    pub observed: String,
}

/// `catalog verify` output. `families` has the shape of the
/// expectations file so the two can be diffed directly.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogReportDoc {
    pub seed: u64,
    pub trials: usize,
    pub families: BTreeMap<String, FamilyRecord>,
    pub mismatches: Vec<MismatchDoc>,
    pub details: BTreeMap<String, EntryDetailDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    #[serde(rename = "R")]
    pub r: Real,
    pub kind: String,
    /// Squared eigenvalue of the linearization.
    pub lambda_sq: Real,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisDoc {
    pub model: HydroDoc,
    #[serde(rename = "E")]
    pub e: Scalar,
    #[serde(rename = "C1")]
    pub c1: Exact,
    #[serde(rename = "H1")]
    pub h1: Scalar,
    pub theorem_holds: bool,
    pub critical_points: Vec<PointDoc>,
    #[serde(rename = "R2")]
    pub r2: Real,
    #[serde(rename = "R3")]
    pub r3: Real,
    pub psi_positive: bool,
    pub saddle_angle: Real,
}

impl AnalysisDoc {
    pub fn of(m: &HydroModel, cp: &CriticalPointReport, r3: f64, angle: f64) -> Self {
        AnalysisDoc {
            model: HydroDoc::of(m),
            e: Scalar(m.e()),
            c1: Exact(m.c1()),
            h1: Scalar(m.h1()),
            theorem_holds: m.theorem_holds(),
            critical_points: cp
                .points
                .iter()
                .map(|p| PointDoc {
                    r: Real(p.r),
                    kind: p.kind.as_str().to_string(),
                    lambda_sq: Real(p.lambda_sq),
                })
                .collect(),
            r2: Real(cp.r2),
            r3: Real(r3),
            psi_positive: cp.psi_positive,
            saddle_angle: Real(angle),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitDoc {
    pub integrand_at_1_5: Real,
    /// Largest `|dF/dR - integrand| / integrand` of the corrected form.
    pub corrected_max_rel_error: Real,
    pub printed_rel_error_at_1_5: Real,
    pub printed_omega0: Real,
    pub printed_value_at_r3: Real,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomoclinicCheckDoc {
    #[serde(rename = "R3")]
    pub r3: Real,
    pub flow_peak_r: Real,
    pub max_delta_r: Real,
    pub overlap_samples: usize,
    pub evenness: Real,
    pub explicit: Option<ExplicitDoc>,
}
