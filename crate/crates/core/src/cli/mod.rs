//! Scene, model and word files; verification suites; reports.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{relative_winding, ConeKind, ConePath, GeometryError, ReferenceFrame};
use crate::field::{FieldSymbol, FieldWord, Localization, ObservableWord};
use crate::minkowski::MVec3;
use crate::sector::{validate_model, AnyonModel};

pub mod sample;
pub mod suites;

pub use suites::{run_suite, verify, Suite};

pub const SCHEMA: &str = "plektonlab/1";
pub const SWEEP_ENV: &str = "PLEKTONLAB_SWEEP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub const EXIT_CODE: i32 = 2;
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &str, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_model(path: &str, text: &str) -> Result<AnyonModel, CliError> {
    parse_json(path, text)
}

pub fn load_model(path: &Path) -> Result<AnyonModel, CliError> {
    parse_model(&path.display().to_string(), &read(path)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneCone {
    pub id: String,
    pub apex: [f64; 3],
    pub center_angle: f64,
    pub half_opening: f64,
    #[serde(default)]
    pub sheet: i64,
    #[serde(default = "default_kind")]
    pub kind: ConeKind,
}

fn default_kind() -> ConeKind {
    ConeKind::Cone
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub cones: Vec<SceneCone>,
    #[serde(default)]
    pub reference_frame: Option<ReferenceFrame>,
}

/// Named path classes over a reference frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub paths: Vec<(String, ConePath)>,
    pub frame: ReferenceFrame,
}

impl Scene {
    pub fn get(&self, id: &str) -> Option<&ConePath> {
        self.paths.iter().find(|(k, _)| k == id).map(|(_, p)| p)
    }

    /// The scene with `N(C̃2, C̃1) = -1`: two narrow cones at the origin,
    /// the second centred half a turn below the first.
    pub fn opposed_pair() -> Scene {
        let c1 = ConePath::cone(MVec3::ZERO, 0.0, 0.1).expect("valid cone");
        let c2 = ConePath::cone(MVec3::ZERO, -std::f64::consts::PI, 0.1).expect("valid cone");
        Scene { paths: vec![("C1".into(), c1), ("C2".into(), c2)], frame: ReferenceFrame::j_invariant(true) }
    }
}

pub fn parse_scene(path: &str, text: &str) -> Result<Scene, CliError> {
    let file: SceneFile = parse_json(path, text)?;
    let invalid = |message: String| CliError::Invalid { path: path.to_string(), message };
    let mut paths: Vec<(String, ConePath)> = Vec::new();
    for c in &file.cones {
        if paths.iter().any(|(k, _)| *k == c.id) {
            return Err(invalid(format!("duplicate cone id {:?}", c.id)));
        }
        let apex = MVec3::new(c.apex[0], c.apex[1], c.apex[2]);
        let p = ConePath::from_parts(apex, c.center_angle, c.half_opening, c.sheet, c.kind)
            .map_err(|e| invalid(format!("cone {:?}: {e}", c.id)))?;
        paths.push((c.id.clone(), p));
    }
    Ok(Scene { paths, frame: file.reference_frame.unwrap_or_else(|| ReferenceFrame::j_invariant(true)) })
}

pub fn load_scene(path: &Path) -> Result<Scene, CliError> {
    parse_scene(&path.display().to_string(), &read(path)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordFactor {
    pub charge: i64,
    pub obs: String,
    pub path: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordFile {
    Factors { factors: Vec<WordFactor> },
    List(Vec<WordFactor>),
}

pub fn parse_word(path: &str, text: &str, scene: &Scene) -> Result<FieldWord, CliError> {
    let file: WordFile = parse_json(path, text)?;
    let factors = match file {
        WordFile::Factors { factors } | WordFile::List(factors) => factors,
    };
    let invalid = |message: String| CliError::Invalid { path: path.to_string(), message };
    let mut out = Vec::new();
    for f in factors {
        let obs = ObservableWord::parse(&f.obs).map_err(invalid)?;
        let cone = scene.get(&f.path).ok_or_else(|| invalid(format!("unknown path {:?}", f.path)))?;
        out.push(FieldSymbol::new(f.charge, obs, Localization::path(f.path.clone(), cone.clone())));
    }
    Ok(FieldWord::new(out))
}

pub fn load_word(path: &Path, scene: &Scene) -> Result<FieldWord, CliError> {
    parse_word(&path.display().to_string(), &read(path)?, scene)
}

/// Multiplier for sweep sizes from `PLEKTONLAB_SWEEP`, default `1`.
pub fn sweep_factor(value: Option<&str>) -> Result<f64, CliError> {
    match value {
        None => Ok(1.0),
        Some(v) => match v.trim().parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
            _ => Err(CliError::Usage(format!("{SWEEP_ENV} must be a positive number, got {v:?}"))),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

/// Residual with 12 significant digits.
pub fn format_residual(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub note: String,
}

impl Check {
    pub fn residual(name: impl Into<String>, residual: f64, tol: f64, note: impl Into<String>) -> Check {
        let status = if residual.is_finite() && residual < tol { Status::Pass } else { Status::Fail };
        Check { name: name.into(), status, residual: Some(format_residual(residual)), exact: None, note: note.into() }
    }

    /// An exact comparison; `exact` describes the observed value or the
    /// number of mismatches.
    pub fn exact(name: impl Into<String>, ok: bool, exact: impl Into<String>, note: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: None,
            exact: Some(exact.into()),
            note: note.into(),
        }
    }

    pub fn error(name: impl Into<String>, message: impl fmt::Display) -> Check {
        Check { name: name.into(), status: Status::Error, residual: None, exact: None, note: message.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub conventions: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: Option<u64>, checks: Vec<Check>) -> Report {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary { pass: count(Status::Pass), fail: count(Status::Fail), error: count(Status::Error) };
        Report { schema: SCHEMA, command: command.into(), seed, conventions: conventions(), checks, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}", self.schema, self.command);
        if let Some(seed) = self.seed {
            out.push_str(&format!(" seed={seed}"));
        }
        out.push('\n');
        for (k, v) in &self.conventions {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("{:<5} {}", c.status, c.name));
            if let Some(r) = &c.residual {
                out.push_str(&format!("  residual={r}"));
            }
            if let Some(e) = &c.exact {
                out.push_str(&format!("  value={e}"));
            }
            if !c.note.is_empty() {
                out.push_str(&format!("  ({})", c.note));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} error\n",
            self.summary.pass, self.summary.fail, self.summary.error
        ));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json() + "\n",
            Format::Text => self.to_text(),
        }
    }
}

fn conventions() -> BTreeMap<String, String> {
    [
        ("metric", "(+,-,-)"),
        ("standard boost", "pure boost B_p with B_p(m,0,0) = p"),
        ("wigner argument", "U(a,g)psi(p) = exp(i s Omega(g, L^-1 p)) exp(i a.p) psi(L^-1 p)"),
        ("measure", "d^2p / 2 omega(p)"),
        ("phases", "k/M of 2π"),
        ("charge conjugation phase", "1"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn cmd_model_validate(model: &AnyonModel) -> Report {
    let report = validate_model(model);
    let checks = report
        .checks
        .iter()
        .map(|c| Check::exact(format!("model: {}", c.name), c.passed, c.detail.clone(), ""))
        .collect();
    Report::new("model-validate", None, checks)
}

/// Winding numbers for the requested ordered pairs, or for all ordered
/// pairs of distinct scene paths.
pub fn cmd_winding(scene: &Scene, pairs: Option<&[(String, String)]>) -> Result<Report, CliError> {
    let all: Vec<(String, String)> = match pairs {
        Some(p) => p.to_vec(),
        None => {
            let ids: Vec<&String> = scene.paths.iter().map(|(k, _)| k).collect();
            let mut v = Vec::new();
            for a in &ids {
                for b in &ids {
                    if a != b {
                        v.push(((*a).clone(), (*b).clone()));
                    }
                }
            }
            v
        }
    };
    let mut checks = Vec::new();
    for (id2, id1) in &all {
        let lookup = |id: &String| scene.get(id).ok_or_else(|| CliError::Usage(format!("unknown path {id:?}")));
        let (c2, c1) = (lookup(id2)?, lookup(id1)?);
        let name = format!("N({id2}, {id1})");
        match (relative_winding(c2, c1), relative_winding(c1, c2)) {
            (Ok(n21), Ok(n12)) => checks.push(Check::exact(
                name,
                n21 + n12 == -1,
                n21.to_string(),
                format!("N({id1}, {id2}) = {n12}, sum {}", n12 + n21),
            )),
            (Err(e), _) | (_, Err(e)) => checks.push(Check::error(name, describe_geometry(&e))),
        }
    }
    Ok(Report::new("winding", None, checks))
}

/// Angular normal form of a word, cross-checked against the lattice model
/// when the charge group is small enough.
pub fn cmd_normal_form(model: &AnyonModel, word: &FieldWord) -> Report {
    let mut checks = Vec::new();
    match crate::field::angular_order(word).and_then(|o| crate::field::normal_form(word, &o, model)) {
        Ok(nf) => checks.push(Check::exact("normal form", true, nf.to_string(), word.to_string())),
        Err(e) => checks.push(Check::error("normal form", e)),
    }
    if let crate::sector::ChargeGroup::ZN(n) = model.group {
        if n <= crate::field::lattice::MAX_N && word.len() <= crate::field::lattice::MAX_SITES {
            match crate::field::lattice_oracle(model, word) {
                Ok(r) => checks.extend(r.checks.iter().map(|c| {
                    Check::residual(format!("lattice: {}", c.name), c.residual, crate::field::lattice::ORACLE_TOL, "")
                })),
                Err(e) => checks.push(Check::error("lattice oracle", e)),
            }
        }
    }
    Report::new("normal-form", None, checks)
}

pub(crate) fn describe_geometry(e: &GeometryError) -> String {
    e.to_string()
}
