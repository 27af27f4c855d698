//! Input documents: equation models, hydrodynamic models, algebraic
//! systems and `name=value` lists; CSV output.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value as Json};
use thiserror::Error;
use twkit_core::hydro::{HydroError, HydroModel};
use twkit_core::model::{Coef, HalfInt, HyperbolicPDE, ModelError};
use twkit_core::reducer::AlgebraicSystem;
use twkit_core::symcore::{parse_poly, rational};
use twkit_core::{Assignment, Value};

use crate::json::{float_text, number_to_rational, rational_to_json, Exact};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<ModelError> for FormatError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Schema(s) => FormatError::Schema(s),
            ModelError::Domain(s) => FormatError::Domain(s),
            other => FormatError::Domain(other.to_string()),
        }
    }
}

impl From<HydroError> for FormatError {
    fn from(e: HydroError) -> Self {
        FormatError::Domain(e.to_string())
    }
}

fn schema(msg: impl Into<String>) -> FormatError {
    FormatError::Schema(msg.into())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn coef_from_json(key: &str, v: &Json) -> Result<Coef, FormatError> {
    match v {
        Json::Number(n) => number_to_rational(n)
            .map(Coef::Num)
            .ok_or_else(|| schema(format!("`{key}`: {n} is not a finite number"))),
        Json::String(s) => {
            if let Some(q) = rational::parse(s) {
                Ok(Coef::Num(q))
            } else if is_identifier(s) {
                Ok(Coef::Sym(s.clone()))
            } else {
                Err(schema(format!("`{key}`: `{s}` is neither a rational nor a parameter name")))
            }
        }
        other => Err(schema(format!("`{key}`: expected a number or a name, got {other}"))),
    }
}

fn coef_to_json(c: &Coef) -> Json {
    match c {
        Coef::Num(q) => rational_to_json(q),
        Coef::Sym(s) => Json::String(s.clone()),
    }
}

fn object<'a>(v: &'a Json, what: &str) -> Result<&'a Map<String, Json>, FormatError> {
    v.as_object().ok_or_else(|| schema(format!("{what} must be a JSON object")))
}

fn exact_keys(obj: &Map<String, Json>, keys: &[&str], what: &str) -> Result<(), FormatError> {
    for k in obj.keys() {
        if !keys.contains(&k.as_str()) {
            return Err(schema(format!("{what}: unknown key `{k}`")));
        }
    }
    for k in keys {
        if !obj.contains_key(*k) {
            return Err(schema(format!("{what}: missing key `{k}`")));
        }
    }
    Ok(())
}

const MODEL_KEYS: [&str; 5] = ["tau", "A", "B", "kappa", "reaction"];

/// Parses a model document
/// `{"tau", "A", "B", "kappa", "reaction": {exponent: coefficient}}`.
pub fn parse_model(text: &str) -> Result<HyperbolicPDE, FormatError> {
    let doc: Json = serde_json::from_str(text)?;
    model_from_json(&doc)
}

pub fn model_from_json(doc: &Json) -> Result<HyperbolicPDE, FormatError> {
    let obj = object(doc, "model")?;
    exact_keys(obj, &MODEL_KEYS, "model")?;
    let c = |k: &str| coef_from_json(k, &obj[k]);
    let mut reaction = BTreeMap::new();
    for (k, v) in object(&obj["reaction"], "`reaction`")? {
        let nu = HalfInt::parse(k).ok_or_else(|| {
            FormatError::Domain(format!("reaction exponent `{k}` is not one of 0, 1/2, 1, 3/2, 2, 3"))
        })?;
        if reaction.insert(nu, coef_from_json(&format!("reaction.{k}"), v)?).is_some() {
            return Err(schema(format!("reaction exponent {nu} given twice")));
        }
    }
    Ok(HyperbolicPDE::new(c("tau")?, c("A")?, c("B")?, c("kappa")?, reaction)?)
}

pub fn model_to_json(pde: &HyperbolicPDE) -> Json {
    let reaction: Map<String, Json> = pde
        .reaction
        .iter()
        .map(|(k, c)| (k.to_string(), coef_to_json(c)))
        .collect();
    let mut m = Map::new();
    m.insert("tau".into(), coef_to_json(&pde.tau));
    m.insert("A".into(), coef_to_json(&pde.a));
    m.insert("B".into(), coef_to_json(&pde.b));
    m.insert("kappa".into(), coef_to_json(&pde.kappa));
    m.insert("reaction".into(), Json::Object(reaction));
    Json::Object(m)
}

/// Hydrodynamic model document; `E` and `C1` are always derived.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HydroDoc {
    pub nu: Exact,
    pub beta: Exact,
    pub sigma: Exact,
    #[serde(rename = "D")]
    pub d: Exact,
    #[serde(rename = "R1")]
    pub r1: Exact,
}

impl HydroDoc {
    pub fn of(m: &HydroModel) -> Self {
        HydroDoc {
            nu: Exact(m.nu().clone()),
            beta: Exact(m.beta().clone()),
            sigma: Exact(m.sigma().clone()),
            d: Exact(m.d().clone()),
            r1: Exact(m.r1().clone()),
        }
    }

    pub fn model(&self) -> Result<HydroModel, FormatError> {
        Ok(HydroModel::new(
            self.nu.0.clone(),
            self.beta.0.clone(),
            self.sigma.0.clone(),
            self.d.0.clone(),
            self.r1.0.clone(),
        )?)
    }
}

pub fn parse_hydro(text: &str) -> Result<HydroModel, FormatError> {
    serde_json::from_str::<HydroDoc>(text)
        .map_err(|e| schema(format!("hydro model: {e}")))?
        .model()
}

/// Ansatz shape recorded with a reduced system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnsatzDoc {
    pub m: usize,
    pub n: usize,
    pub power: u32,
}

/// An algebraic system: equations in canonical text form with the power
/// of `E` each was collected from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub unknowns: Vec<String>,
    pub parameters: Vec<String>,
    pub alpha: Option<String>,
    pub equations: Vec<String>,
    pub provenance: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<Json>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ansatz: Option<AnsatzDoc>,
}

impl SystemDoc {
    pub fn of(sys: &AlgebraicSystem) -> Self {
        SystemDoc {
            unknowns: sys.unknowns.clone(),
            parameters: sys.parameters.clone(),
            alpha: sys.alpha.clone(),
            equations: sys.equations.iter().map(|e| e.to_string()).collect(),
            provenance: sys.provenance.clone(),
            model: None,
            ansatz: None,
        }
    }

    pub fn system(&self) -> Result<AlgebraicSystem, FormatError> {
        if self.equations.len() != self.provenance.len() {
            return Err(schema("`equations` and `provenance` differ in length"));
        }
        let equations = self
            .equations
            .iter()
            .enumerate()
            .map(|(i, e)| parse_poly(e).map_err(|err| schema(format!("equation {i}: {err}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgebraicSystem {
            unknowns: self.unknowns.clone(),
            parameters: self.parameters.clone(),
            equations,
            provenance: self.provenance.clone(),
            alpha: self.alpha.clone(),
        })
    }
}

pub fn parse_system(text: &str) -> Result<AlgebraicSystem, FormatError> {
    serde_json::from_str::<SystemDoc>(text)
        .map_err(|e| schema(format!("system: {e}")))?
        .system()
}

/// `name=value,...` with exact rational values.
pub fn parse_pairs(text: &str) -> Result<Assignment, FormatError> {
    let mut out = Assignment::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| schema(format!("`{part}` is not of the form name=value")))?;
        let (k, v) = (k.trim(), v.trim());
        if !is_identifier(k) {
            return Err(schema(format!("`{k}` is not a parameter name")));
        }
        let q = rational::parse(v).ok_or_else(|| schema(format!("`{v}` is not a rational")))?;
        if out.insert(k.to_string(), Value::Exact(q)).is_some() {
            return Err(schema(format!("`{k}` given twice")));
        }
    }
    Ok(out)
}

/// `lo:hi:n` or `lo:hi` when `n` is not wanted.
pub fn parse_range(text: &str, with_count: bool) -> Result<(f64, f64, usize), FormatError> {
    let parts: Vec<&str> = text.split(':').collect();
    let want = if with_count { 3 } else { 2 };
    if parts.len() != want {
        let form = if with_count { "lo:hi:n" } else { "lo:hi" };
        return Err(schema(format!("`{text}` is not of the form {form}")));
    }
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| schema(format!("`{s}` is not a number")))
    };
    let (lo, hi) = (num(parts[0])?, num(parts[1])?);
    let n = if with_count {
        parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| schema(format!("`{}` is not a sample count", parts[2])))?
    } else {
        0
    };
    Ok((lo, hi, n))
}

/// Comma separated values with a header; floats at 17 significant digits.
pub fn write_csv<W: Write + ?Sized>(out: &mut W, header: &[&str], rows: &[Vec<f64>]) -> io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| float_text(*x)).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}
