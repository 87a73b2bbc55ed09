//! Batch front end: load a JSON run configuration, validate the model,
//! integrate, and write the trajectory and conservation report.

use std::fmt::Write as _;
use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use unimech::algebra::presets::so3;
use unimech::io::{AlgebraDoc, UnifiedDoc};
use unimech::presets::{kepler_algebra, tokamak_algebra, KeplerParams, TokamakParams};
use unimech::tangent::{ep3_field, t2g_unified};
use unimech::{
    conservation_report, ep_field, lp_field, preset, rk4, AxiomReport, Drift, EnergySpec, Functional, LieAlgebra,
    Tensor3, UnifiedProductData,
};

/// Failure classes, each with its own exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("validation failed:\n{0}")]
    Validation(String),
    #[error("integration blew up: {0}")]
    BlowUp(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => 1,
            Self::Validation(_) => 2,
            Self::BlowUp(_) => 3,
        }
    }
}

impl From<unimech::Error> for CliError {
    fn from(e: unimech::Error) -> Self {
        match e {
            unimech::Error::NonFiniteState { .. } => Self::BlowUp(e.to_string()),
            other => Self::Config(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "preset", rename_all = "lowercase", deny_unknown_fields)]
pub enum PresetDoc {
    Kepler {
        e: f64,
        m: f64,
        k: f64,
    },
    Tokamak {
        base: String,
        #[serde(rename = "B_i")]
        b_i: f64,
    },
}

/// A preset name, a parameterised preset, or an inline structure document.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ModelSpec {
    Name(String),
    Preset(PresetDoc),
    Unified(UnifiedDoc),
    Algebra(AlgebraDoc),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dynamics {
    Ep,
    Lp,
    Ep3,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Inertia {
    /// `"identity"`.
    Tag(String),
    Diag { diag: Vec<f64> },
    Matrix(Vec<Vec<f64>>),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyConfig {
    #[serde(default = "quadratic")]
    pub kind: String,
    #[serde(default = "identity")]
    pub inertia: Inertia,
}

fn quadratic() -> String {
    "quadratic".into()
}

fn identity() -> Inertia {
    Inertia::Tag("identity".into())
}

impl Default for EnergyConfig {
    fn default() -> Self {
        Self { kind: quadratic(), inertia: identity() }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Integrator {
    pub h: f64,
    pub steps: usize,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub trajectory_path: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Conserve {
    /// `"hamiltonian"` or `"energy"`.
    Tag(String),
    Block { norm_sq_block: [usize; 2] },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub dynamics: Dynamics,
    #[serde(default)]
    pub energy: EnergyConfig,
    pub initial: Vec<f64>,
    pub integrator: Integrator,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default = "default_conserve")]
    pub conserve: Vec<Conserve>,
}

fn default_conserve() -> Vec<Conserve> {
    vec![Conserve::Tag("hamiltonian".into())]
}

/// Written to `report_path`.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub dynamics: Dynamics,
    pub dim: usize,
    pub h: f64,
    pub steps: usize,
    pub final_time: f64,
    pub conservation: Vec<Drift>,
}

/// A resolved model: a unified product, or for third-order dynamics the
/// base algebra together with its second-order tangent algebra.
pub struct Model {
    pub name: String,
    pub data: UnifiedProductData,
    pub base: Option<LieAlgebra>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("{what}: {e}")))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    parse_json(&read(path)?, &path.display().to_string())
}

fn base_algebra(spec: &ModelSpec) -> Result<Option<LieAlgebra>> {
    Ok(match spec {
        ModelSpec::Name(n) if n != "kepler" && n != "tokamak" => Some(preset(n)?),
        ModelSpec::Algebra(a) => Some(a.build()?),
        _ => None,
    })
}

/// Resolves a model. With `third_order` the model must be a plain algebra
/// `𝔤`, which is replaced by its second-order tangent algebra.
pub fn resolve(spec: &ModelSpec, third_order: bool, tol: Option<f64>) -> Result<Model> {
    let with_tol = |d: UnifiedProductData| match tol {
        Some(t) => d.with_tol(t),
        None => d,
    };
    if third_order {
        let mut g = base_algebra(spec)?
            .ok_or_else(|| CliError::Config("ep3 dynamics need a plain algebra model".into()))?;
        if let Some(t) = tol {
            g = g.with_tol(t);
        }
        let data = with_tol(t2g_unified(&g)?);
        return Ok(Model { name: format!("t2g({})", describe_name(spec)), data, base: Some(g) });
    }
    let data = match spec {
        ModelSpec::Name(n) if n == "kepler" => kepler_algebra(&KeplerParams::new(-0.5, 1.0, 1.0)?)?,
        ModelSpec::Name(n) if n == "tokamak" => tokamak_algebra(&TokamakParams::new(so3(), 0.5)?)?,
        ModelSpec::Preset(PresetDoc::Kepler { e, m, k }) => kepler_algebra(&KeplerParams::new(*e, *m, *k)?)?,
        ModelSpec::Preset(PresetDoc::Tokamak { base, b_i }) => {
            tokamak_algebra(&TokamakParams::new(preset(base)?, *b_i)?)?
        }
        ModelSpec::Unified(doc) => doc.build()?,
        ModelSpec::Name(_) | ModelSpec::Algebra(_) => {
            let mut g = base_algebra(spec)?.expect("plain algebra");
            if let Some(t) = tol {
                g = g.with_tol(t);
            }
            UnifiedProductData::from_algebra(g)
        }
    };
    Ok(Model { name: describe_name(spec), data: with_tol(data), base: None })
}

fn describe_name(spec: &ModelSpec) -> String {
    match spec {
        ModelSpec::Name(n) => n.clone(),
        ModelSpec::Preset(PresetDoc::Kepler { .. }) => "kepler".into(),
        ModelSpec::Preset(PresetDoc::Tokamak { base, .. }) => format!("tokamak({base})"),
        ModelSpec::Unified(_) => "inline unified product".into(),
        ModelSpec::Algebra(_) => "inline algebra".into(),
    }
}

/// Human-readable axiom report.
pub fn format_report(r: &AxiomReport) -> String {
    let mut s = String::new();
    for a in &r.residuals {
        let tag = if a.value <= r.tol { "ok  " } else { "FAIL" };
        let _ = writeln!(s, "{tag} {:<9} {:.3e}  at {:?}  {}", a.name, a.value, a.witness, a.description);
    }
    let _ = writeln!(s, "tolerance {:e}: {}", r.tol, if r.passed { "passed" } else { "failed" });
    s
}

/// Algebra and axiom checks. Returns the printable report on success.
pub fn validate(model: &Model) -> Result<String> {
    let mut out = String::new();
    if let Some(g) = &model.base {
        let r = g.validate();
        let _ = writeln!(out, "base algebra: antisymmetry {:.3e}, jacobi {:.3e}", r.antisymmetry, r.jacobi);
        if !r.passed {
            return Err(CliError::Validation(out));
        }
    }
    let rep = model.data.validate_axioms();
    out.push_str(&format_report(&rep));
    if !rep.passed {
        return Err(CliError::Validation(out));
    }
    Ok(out)
}

fn inertia_matrix(cfg: &EnergyConfig, n: usize) -> Result<DMatrix<f64>> {
    if cfg.kind != "quadratic" {
        return Err(CliError::Config(format!("energy kind `{}` is not supported; use `quadratic`", cfg.kind)));
    }
    match &cfg.inertia {
        Inertia::Tag(t) if t == "identity" => Ok(DMatrix::identity(n, n)),
        Inertia::Tag(t) => Err(CliError::Config(format!("unknown inertia tag `{t}`"))),
        Inertia::Diag { diag } => {
            if diag.len() != n {
                return Err(CliError::Config(format!("inertia diag has {} entries, model has {n}", diag.len())));
            }
            Ok(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
        }
        Inertia::Matrix(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::Config(format!("inertia must be {n}x{n}")));
            }
            Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
        }
    }
}

fn functionals(tags: &[Conserve], spec: &EnergySpec, n: usize) -> Result<Vec<Functional>> {
    tags.iter()
        .map(|t| match t {
            Conserve::Tag(name) if name == "hamiltonian" || name == "energy" => {
                let s = spec.clone();
                let name = name.clone();
                Ok(Functional::new(name, move |x| s.hamiltonian(x).unwrap_or(f64::NAN)))
            }
            Conserve::Tag(other) => Err(CliError::Config(format!("unknown functional `{other}`"))),
            Conserve::Block { norm_sq_block: [a, b] } => {
                if a >= b || *b > n {
                    return Err(CliError::Config(format!("norm_sq_block [{a},{b}] out of range for dim {n}")));
                }
                Ok(Functional::norm_sq_block(*a, *b))
            }
        })
        .collect()
}

fn labels(model: &Model) -> Vec<String> {
    match &model.base {
        Some(g) => (0..3)
            .flat_map(|k| g.labels().iter().map(move |l| format!("pi{k}.{l}")))
            .collect(),
        None => model.data.labels(),
    }
}

/// Validates, integrates and writes outputs. Returns the report.
pub fn run(cfg: &RunConfig, tol: Option<f64>) -> Result<RunReport> {
    let model = resolve(&cfg.model, cfg.dynamics == Dynamics::Ep3, tol)?;
    validate(&model)?;
    let n = model.data.dim();
    if cfg.initial.len() != n {
        return Err(CliError::Config(format!("initial has {} entries, model has dimension {n}", cfg.initial.len())));
    }
    if !(cfg.integrator.h > 0.0 && cfg.integrator.h.is_finite()) || cfg.integrator.steps == 0 {
        return Err(CliError::Config("integrator needs h > 0 and steps ≥ 1".into()));
    }
    let spec = EnergySpec::quadratic(inertia_matrix(&cfg.energy, n)?)?;
    let funcs = functionals(&cfg.conserve, &spec, n)?;
    let x0 = DVector::from_column_slice(&cfg.initial);
    let (h, steps) = (cfg.integrator.h, cfg.integrator.steps);
    let traj = match (cfg.dynamics, &model.base) {
        (Dynamics::Ep, _) => rk4(|x: &DVector<f64>| ep_field(&model.data, &spec, x), &x0, h, steps)?,
        (Dynamics::Lp, _) => rk4(|x: &DVector<f64>| lp_field(&model.data, &spec, x), &x0, h, steps)?,
        (Dynamics::Ep3, Some(g)) => rk4(|x: &DVector<f64>| ep3_field(g, &spec, x), &x0, h, steps)?,
        (Dynamics::Ep3, None) => unreachable!("resolved with third_order"),
    };
    if let Some(p) = &cfg.outputs.trajectory_path {
        let f = fs::File::create(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
        traj.write_csv(BufWriter::new(f), &labels(&model))?;
    }
    let report = RunReport {
        dynamics: cfg.dynamics,
        dim: n,
        h,
        steps,
        final_time: *traj.times.last().expect("nonempty"),
        conservation: conservation_report(&traj, &funcs)?,
    };
    if let Some(p) = &cfg.outputs.report_path {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        fs::write(p, json + "\n").map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
    }
    Ok(report)
}

/// Validates the `model` of a run configuration, or a file holding only a
/// model.
pub fn validate_file(path: &Path, tol: Option<f64>) -> Result<String> {
    let text = read(path)?;
    let value: serde_json::Value = parse_json(&text, &path.display().to_string())?;
    let (spec, third) = match value.get("model") {
        Some(m) => {
            let third = value.get("dynamics").and_then(|d| d.as_str()) == Some("ep3");
            (parse_json::<ModelSpec>(&m.to_string(), "model")?, third)
        }
        None => (parse_json::<ModelSpec>(&text, "model")?, false),
    };
    validate(&resolve(&spec, third, tol)?)
}

fn tensor_lines(out: &mut String, name: &str, t: &Tensor3) {
    let nz = t.nonzeros();
    let _ = writeln!(out, "{name} nonzeros ({}):", nz.len());
    for (k, i, j, v) in nz {
        let _ = writeln!(out, "  [{k}][{i}][{j}] = {v:?}");
    }
}

/// Dimensions, labels and nonzero entries of a model given by preset name,
/// inline JSON, or a path to a JSON model file.
pub fn describe(arg: &str, tol: Option<f64>) -> Result<String> {
    let spec: ModelSpec = if arg.trim_start().starts_with('{') {
        parse_json(arg, "model")?
    } else if Path::new(arg).is_file() {
        parse_json(&read(Path::new(arg))?, arg)?
    } else {
        ModelSpec::Name(arg.to_string())
    };
    let model = resolve(&spec, false, tol)?;
    let d = &model.data;
    let mut out = String::new();
    let _ = writeln!(out, "model: {}", model.name);
    let _ = writeln!(out, "dim_m: {}", d.dim_m());
    let _ = writeln!(out, "dim_h: {}", d.dim_h());
    let _ = writeln!(out, "m labels: {}", d.m_labels().join(" "));
    let _ = writeln!(out, "h labels: {}", d.h().labels().join(" "));
    match &spec {
        ModelSpec::Name(n) if n == "kepler" => {
            let _ = writeln!(out, "coupling 2e/(m^3 k^2): {:?}", KeplerParams::new(-0.5, 1.0, 1.0)?.coupling());
        }
        ModelSpec::Preset(PresetDoc::Kepler { e, m, k }) => {
            let _ = writeln!(out, "coupling 2e/(m^3 k^2): {:?}", KeplerParams::new(*e, *m, *k)?.coupling());
        }
        _ => {}
    }
    tensor_lines(&mut out, "h bracket", d.h().structure());
    tensor_lines(&mut out, "act", d.act_tensor());
    tensor_lines(&mut out, "phi", d.phi_tensor());
    tensor_lines(&mut out, "theta", d.theta_tensor());
    tensor_lines(&mut out, "psi", d.psi_tensor());
    Ok(out)
}

/// Tolerance override from the `UM_TOL` environment variable.
pub fn env_tol() -> Result<Option<f64>> {
    match std::env::var("UM_TOL") {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0 && t.is_finite())
            .map(Some)
            .ok_or_else(|| CliError::Config(format!("UM_TOL must be a positive number, got `{s}`"))),
        Err(_) => Ok(None),
    }
}
