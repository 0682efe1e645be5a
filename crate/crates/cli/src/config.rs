//! Study configuration: TOML files with strict keys, merged with flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use prcr_core::analysis::{custom, example1_with_nu, example2_with_nu, ErrorQuadrature, ExactProblem};
use prcr_core::linalg::GmresOptions;
use prcr_core::mesh::Grading;
use prcr_core::solver::{Initialization, LinearSolverKind, PicardConfig};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExampleId {
    Example1,
    Example2,
    Custom,
}

impl ExampleId {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "example1" | "ex1" => Ok(Self::Example1),
            "2" | "example2" | "ex2" => Ok(Self::Example2),
            "custom" => Ok(Self::Custom),
            other => bail!("unknown example '{other}' (expected 1, 2 or custom)"),
        }
    }

    pub fn default_nu(self) -> f64 {
        match self {
            Self::Example1 => 0.1,
            Self::Example2 | Self::Custom => 1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Example1 => "example1",
            Self::Example2 => "example2",
            Self::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshFamily {
    /// Power-law grading `x2 = (i/N)^eps`.
    Mesh1 { eps: f64 },
    /// Cosine grading on both axes.
    Mesh2,
}

impl MeshFamily {
    pub fn parse(name: &str, eps: f64) -> Result<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "mesh1" | "1" | "i" => {
                if !(eps >= 1.0 && eps.is_finite()) {
                    bail!("eps must be a finite number >= 1, got {eps}");
                }
                Ok(Self::Mesh1 { eps })
            }
            "mesh2" | "2" | "ii" => Ok(Self::Mesh2),
            other => bail!("unknown mesh family '{other}' (expected mesh1 or mesh2)"),
        }
    }

    pub fn grading(self) -> Grading {
        match self {
            Self::Mesh1 { eps } => Grading::PowerLaw(eps),
            Self::Mesh2 => Grading::Cosine,
        }
    }

    pub fn label(self) -> String {
        match self {
            Self::Mesh1 { eps } => format!("mesh1(eps={eps})"),
            Self::Mesh2 => "mesh2".into(),
        }
    }
}

pub fn parse_error_quadrature(s: &str) -> Result<ErrorQuadrature> {
    match s.trim().to_ascii_lowercase().as_str() {
        "nodal" => Ok(ErrorQuadrature::Nodal),
        "high-order" | "high_order" | "exact" => Ok(ErrorQuadrature::HighOrder),
        other => bail!("unknown error quadrature '{other}' (expected nodal or high-order)"),
    }
}

pub fn parse_init(s: &str) -> Result<Initialization> {
    match s.trim().to_ascii_lowercase().as_str() {
        "exact" | "exact-interpolant" | "exactinterpolant" => Ok(Initialization::ExactInterpolant),
        "stokes" => Ok(Initialization::Stokes),
        "zero" => Ok(Initialization::Zero),
        other => bail!("unknown init '{other}' (expected exact-interpolant, stokes or zero)"),
    }
}

pub fn parse_linear_solver(s: &str) -> Result<LinearSolverKind> {
    match s.trim().to_ascii_lowercase().as_str() {
        "gmres-ilu0" | "gmres" => Ok(LinearSolverKind::GmresIlu0),
        "sparse-lu" | "lu" => Ok(LinearSolverKind::SparseLu),
        other => bail!("unknown linear solver '{other}' (expected gmres-ilu0 or sparse-lu)"),
    }
}

/// Parses `"4,8,16"`.
pub fn parse_n_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad division number '{t}'")))
        .collect()
}

#[derive(Debug, Clone)]
pub struct OutputConfig {
    pub csv: Option<PathBuf>,
    pub table: Option<PathBuf>,
    pub vtk: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct StudyConfig {
    pub example: ExampleId,
    pub mesh: MeshFamily,
    pub n_list: Vec<usize>,
    pub nu_override: Option<f64>,
    /// Constant body force of the custom example.
    pub force: [f64; 2],
    pub solver: PicardConfig,
    pub error_quadrature: ErrorQuadrature,
    pub output: OutputConfig,
}

impl StudyConfig {
    pub fn nu(&self) -> f64 {
        self.nu_override.unwrap_or_else(|| self.example.default_nu())
    }

    pub fn problem(&self) -> ExactProblem {
        let nu = self.nu();
        match self.example {
            ExampleId::Example1 => example1_with_nu(nu),
            ExampleId::Example2 => example2_with_nu(nu),
            ExampleId::Custom => custom(nu, self.force),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() {
            bail!("n list is empty");
        }
        if self.n_list.iter().any(|&n| n == 0) {
            bail!("division numbers must be positive");
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            bail!("n list must be strictly ascending: {:?}", self.n_list);
        }
        if let Some(nu) = self.nu_override {
            if !(nu > 0.0 && nu.is_finite()) {
                bail!("nu must be positive, got {nu}");
            }
        }
        self.solver.validate()?;
        if self.solver.linear.restart == 0 || !(self.solver.linear.rtol > 0.0) {
            bail!("gmres restart must be >= 1 and rtol positive");
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum IntOrString {
    Int(i64),
    Str(String),
}

impl IntOrString {
    fn text(&self) -> String {
        match self {
            Self::Int(i) => i.to_string(),
            Self::Str(s) => s.clone(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum NList {
    One(usize),
    Many(Vec<usize>),
    Text(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    end_tol: Option<f64>,
    max_iters: Option<usize>,
    init: Option<String>,
    quad_degree_load: Option<usize>,
    linear_solver: Option<String>,
    gmres_restart: Option<usize>,
    gmres_rtol: Option<f64>,
    gmres_max_iters: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    csv: Option<PathBuf>,
    table: Option<PathBuf>,
    vtk: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    example: IntOrString,
    mesh: String,
    eps: Option<f64>,
    n: NList,
    nu: Option<f64>,
    force: Option<[f64; 2]>,
    error_quadrature: Option<String>,
    #[serde(default)]
    solver: RawSolver,
    #[serde(default)]
    output: RawOutput,
}

/// Parses and validates a config document.
pub fn parse_config(text: &str) -> Result<StudyConfig> {
    let raw: RawConfig = toml::from_str(text).context("invalid config")?;
    let example = ExampleId::parse(&raw.example.text())?;
    let mesh = MeshFamily::parse(&raw.mesh, raw.eps.unwrap_or(1.0))?;
    let n_list = match raw.n {
        NList::One(n) => vec![n],
        NList::Many(v) => v,
        NList::Text(s) => parse_n_list(&s)?,
    };
    let mut solver = PicardConfig::default();
    let s = raw.solver;
    if let Some(v) = s.end_tol {
        solver.end_tol = v;
    }
    if let Some(v) = s.max_iters {
        solver.max_iters = v;
    }
    if let Some(v) = s.init {
        solver.init = Some(parse_init(&v)?);
    }
    if let Some(v) = s.quad_degree_load {
        solver.quad_degree_load = v;
    }
    if let Some(v) = s.linear_solver {
        solver.linear_solver = parse_linear_solver(&v)?;
    }
    let mut linear = GmresOptions::default();
    if let Some(v) = s.gmres_restart {
        linear.restart = v;
    }
    if let Some(v) = s.gmres_rtol {
        linear.rtol = v;
    }
    if let Some(v) = s.gmres_max_iters {
        linear.max_iters = v;
    }
    solver.linear = linear;
    let error_quadrature = match raw.error_quadrature {
        Some(q) => parse_error_quadrature(&q)?,
        None => ErrorQuadrature::Nodal,
    };
    let cfg = StudyConfig {
        example,
        mesh,
        n_list,
        nu_override: raw.nu,
        force: raw.force.unwrap_or([1.0, 0.0]),
        solver,
        error_quadrature,
        output: OutputConfig { csv: raw.output.csv, table: raw.output.table, vtk: raw.output.vtk },
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Reads and validates a config file.
pub fn load_config(path: impl AsRef<Path>) -> Result<StudyConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_config(&text).with_context(|| format!("in {}", path.display()))
}
