//! Batch front-end for convergence studies, mesh-condition tables, single
//! solves and discrete Sobolev probes.

pub mod config;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use prcr_core::analysis::{
    discrete_sobolev_probe, error_pressure_with, error_velocity_h1_with, error_velocity_l2_with, run_study_with,
    ErrorQuadrature,
};
use prcr_core::mesh::{export_vtk, generate_graded_mesh, quality_report, VtkField};
use prcr_core::solver::picard_solve;

use config::{parse_config, MeshFamily, StudyConfig};

pub const THREADS_ENV: &str = "PRCR_THREADS";

#[derive(Debug, Parser)]
#[command(name = "prcr", version, about = "Pressure-robust Crouzeix-Raviart Navier-Stokes studies")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convergence study over a list of division numbers.
    Study(StudyArgs),
    /// Mesh-condition table (MinAngle, MaxAngle, DisSov, #Np).
    MeshReport(MeshArgs),
    /// One Picard solve with optional VTK output.
    SolveOnce(SolveArgs),
    /// Empirical discrete Sobolev constant per mesh.
    SobolevProbe(ProbeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// TOML config; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// 1, 2 or custom.
    #[arg(long)]
    pub example: Option<String>,
    /// mesh1 (power-law grading, see --eps) or mesh2 (cosine grading).
    #[arg(long)]
    pub mesh: Option<String>,
    #[arg(long)]
    pub eps: Option<f64>,
    /// Comma-separated division numbers.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub end_tol: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
    /// exact-interpolant, stokes or zero.
    #[arg(long)]
    pub init: Option<String>,
    #[arg(long)]
    pub quad_degree_load: Option<usize>,
    /// gmres-ilu0 or sparse-lu.
    #[arg(long)]
    pub linear_solver: Option<String>,
    #[arg(long)]
    pub gmres_restart: Option<usize>,
    #[arg(long)]
    pub gmres_rtol: Option<f64>,
    /// nodal or high-order.
    #[arg(long)]
    pub error_quadrature: Option<String>,
}

#[derive(Debug, Args)]
pub struct StudyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Also write the text table here.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[arg(long, default_value = "mesh1")]
    pub mesh: String,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [4, 8, 16, 32, 64, 128])]
    pub n: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub vtk: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long, default_value = "mesh1")]
    pub mesh: String,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [4, 8, 16, 32, 64])]
    pub n: Vec<usize>,
    /// Exponent of the L^p norm.
    #[arg(long, default_value_t = 4.0)]
    pub p: f64,
    #[arg(long, default_value_t = 32)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Builds a config from an optional file plus flag overrides.
pub fn resolve_config(args: &ProblemArgs) -> Result<StudyConfig> {
    let mut doc: toml::Table = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            text.parse().with_context(|| format!("invalid TOML in {}", path.display()))?
        }
        None => toml::Table::new(),
    };
    let mut set = |key: &str, v: toml::Value| {
        doc.insert(key.to_string(), v);
    };
    if let Some(e) = &args.example {
        set("example", e.clone().into());
    }
    if let Some(m) = &args.mesh {
        set("mesh", m.clone().into());
    }
    if let Some(e) = args.eps {
        set("eps", e.into());
    }
    if !args.n.is_empty() {
        set("n", toml::Value::Array(args.n.iter().map(|&n| (n as i64).into()).collect()));
    }
    if let Some(v) = args.nu {
        set("nu", v.into());
    }
    if let Some(q) = &args.error_quadrature {
        set("error_quadrature", q.clone().into());
    }
    let mut solver_keys: Vec<(&str, toml::Value)> = Vec::new();
    if let Some(v) = args.end_tol {
        solver_keys.push(("end_tol", v.into()));
    }
    if let Some(v) = args.max_iters {
        solver_keys.push(("max_iters", (v as i64).into()));
    }
    if let Some(v) = &args.init {
        solver_keys.push(("init", v.clone().into()));
    }
    if let Some(v) = args.quad_degree_load {
        solver_keys.push(("quad_degree_load", (v as i64).into()));
    }
    if let Some(v) = &args.linear_solver {
        solver_keys.push(("linear_solver", v.clone().into()));
    }
    if let Some(v) = args.gmres_restart {
        solver_keys.push(("gmres_restart", (v as i64).into()));
    }
    if let Some(v) = args.gmres_rtol {
        solver_keys.push(("gmres_rtol", v.into()));
    }
    if !solver_keys.is_empty() {
        let solver = doc.entry("solver").or_insert_with(|| toml::Value::Table(toml::Table::new()));
        let Some(table) = solver.as_table_mut() else { bail!("'solver' must be a table") };
        for (k, v) in solver_keys {
            table.insert(k.to_string(), v);
        }
    }
    for key in ["example", "mesh", "n"] {
        if !doc.contains_key(key) {
            bail!("missing '{key}': pass --{key} or set it in --config");
        }
    }
    parse_config(&toml::to_string(&doc)?)
}

fn quadrature_label(q: ErrorQuadrature) -> &'static str {
    match q {
        ErrorQuadrature::HighOrder => "high-order",
        ErrorQuadrature::Nodal => "nodal",
    }
}

fn write_file(path: &PathBuf, contents: &[u8]) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn study(args: &StudyArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = resolve_config(&args.problem)?;
    let problem = cfg.problem();
    let report = run_study_with(&problem, cfg.mesh.grading(), &cfg.n_list, &cfg.solver, cfg.error_quadrature)?;
    let meta = table::describe(&report, &cfg.mesh.label(), quadrature_label(cfg.error_quadrature));
    let mut csv = Vec::new();
    table::write_study_csv(&report, &meta, &mut csv)?;
    let text = table::study_text(&report, &meta);
    if let Some(p) = args.csv.as_ref().or(cfg.output.csv.as_ref()) {
        write_file(p, &csv)?;
    }
    if let Some(p) = args.table.as_ref().or(cfg.output.table.as_ref()) {
        write_file(p, text.as_bytes())?;
    }
    match args.format {
        Format::Text => out.write_all(text.as_bytes())?,
        Format::Csv => out.write_all(&csv)?,
    }
    Ok(())
}

fn mesh_report(args: &MeshArgs, out: &mut dyn Write) -> Result<()> {
    let family = MeshFamily::parse(&args.mesh, args.eps)?;
    let mut rows = Vec::with_capacity(args.n.len());
    for &n in &args.n {
        let tri = generate_graded_mesh(n, family.grading())?;
        rows.push((n, quality_report(&tri)));
    }
    out.write_all(table::mesh_text(&family.label(), &rows).as_bytes())?;
    Ok(())
}

fn solve_once(args: &SolveArgs, out: &mut dyn Write) -> Result<()> {
    let cfg = resolve_config(&args.problem)?;
    let &[n] = cfg.n_list.as_slice() else {
        bail!("solve-once takes exactly one division number, got {:?}", cfg.n_list);
    };
    let problem = cfg.problem();
    let tri = generate_graded_mesh(n, cfg.mesh.grading())?;
    let sol = picard_solve(&problem, &tri, &cfg.solver)?;
    writeln!(out, "example={} mesh={} N={} nu={}", cfg.example.label(), cfg.mesh.label(), n, cfg.nu())?;
    writeln!(out, "dofs={} cells={} facets={}", tri.num_dofs(), tri.num_cells(), tri.num_facets())?;
    writeln!(out, "picard_iterations={} converged={}", sol.iterations, sol.converged)?;
    writeln!(out, "gmres_iterations={:?}", sol.linear_iterations)?;
    if problem.exact.is_some() {
        let q = cfg.error_quadrature;
        writeln!(out, "Err(V_h)={}", table::sci(error_velocity_h1_with(&sol.u_h, &problem, &tri, q)?, 6))?;
        writeln!(out, "Err(L2)={}", table::sci(error_velocity_l2_with(&sol.u_h, &problem, &tri, q)?, 6))?;
        writeln!(out, "Err(Q_h)={}", table::sci(error_pressure_with(&sol.p_h, &problem, &tri, q)?, 6))?;
    }
    let div = sol.u_h.broken_divergence(&tri);
    let max_div = div.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    writeln!(out, "max|div u_h|={}", table::sci(max_div, 6))?;
    if let Some(path) = args.vtk.as_ref().or(cfg.output.vtk.as_ref()) {
        let fields = [
            VtkField::CellVector { name: "velocity".into(), values: sol.u_h.cell_means(&tri) },
            VtkField::CellScalar { name: "pressure".into(), values: sol.p_h.values.clone() },
            VtkField::CellScalar { name: "divergence".into(), values: div.values },
        ];
        export_vtk(&tri, &fields, path)?;
        writeln!(out, "vtk={}", path.display())?;
    }
    Ok(())
}

fn sobolev_probe(args: &ProbeArgs, out: &mut dyn Write) -> Result<()> {
    let family = MeshFamily::parse(&args.mesh, args.eps)?;
    if args.samples == 0 {
        bail!("samples must be at least 1");
    }
    if !(args.p >= 1.0) {
        bail!("p must be >= 1, got {}", args.p);
    }
    writeln!(out, "# {} p={} samples={} seed={}", family.label(), args.p, args.samples, args.seed)?;
    writeln!(out, "{:>5}  {:>12}  {:>12}", "N", "DisSov", "probe")?;
    for &n in &args.n {
        let tri = generate_graded_mesh(n, family.grading())?;
        let q = quality_report(&tri);
        let c = discrete_sobolev_probe(&tri, args.p, args.samples, args.seed);
        writeln!(out, "{:>5}  {:>12}  {:>12}", n, table::sci(q.dis_sov, 6), table::sci(c, 6))?;
    }
    Ok(())
}

fn init_threads(threads: Option<usize>) -> Result<()> {
    if let Some(t) = threads {
        if t == 0 {
            bail!("thread count must be at least 1");
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    Ok(())
}

/// Runs a parsed command line, writing the report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    init_threads(cli.threads)?;
    match &cli.command {
        Command::Study(a) => study(a, out),
        Command::MeshReport(a) => mesh_report(a, out),
        Command::SolveOnce(a) => solve_once(a, out),
        Command::SobolevProbe(a) => sobolev_probe(a, out),
    }
}
