//! CSV and aligned-text renderings of study and mesh reports.

use std::io::Write;

use anyhow::Result;
use prcr_core::analysis::{ConvergenceRow, StudyReport};
use prcr_core::mesh::MeshQualityReport;
use prcr_core::solver::LinearSolverKind;

pub const CSV_VERSION: &str = "prcr-study-csv v1";
pub const CSV_HEADER: [&str; 10] = ["N", "h", "Err_Vh", "rate", "Err_L2", "rate", "Err_Qh", "rate", "iters", "dofs"];

/// Scientific notation with `digits` significant digits and a signed
/// two-digit exponent, e.g. `9.30891e-01`.
pub fn sci(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn rate_text(r: Option<f64>) -> String {
    r.map(|r| format!("{r:.2}")).unwrap_or_default()
}

/// Metadata line shared by both formats.
pub fn describe(report: &StudyReport, mesh_label: &str, quad_label: &str) -> String {
    let s = &report.solver;
    format!(
        "example={}, mesh={}, nu={}, error_quadrature={}, load_degree={}, end_tol={:e}, linear={}",
        report.example,
        mesh_label,
        report.nu,
        quad_label,
        s.quad_degree_load,
        s.end_tol,
        match s.linear_solver {
            LinearSolverKind::GmresIlu0 => format!("gmres-ilu0(restart={}, rtol={:e})", s.linear.restart, s.linear.rtol),
            LinearSolverKind::SparseLu => "sparse-lu".to_string(),
        }
    )
}

fn csv_record(r: &ConvergenceRow) -> [String; 10] {
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    [
        r.n.to_string(),
        r.h.to_string(),
        r.err_vh.to_string(),
        opt(r.rate_vh),
        r.err_l2.to_string(),
        opt(r.rate_l2),
        r.err_qh.to_string(),
        opt(r.rate_qh),
        r.picard_iters.to_string(),
        r.dofs.to_string(),
    ]
}

/// Versioned CSV at full precision.
pub fn write_study_csv<W: Write>(report: &StudyReport, meta: &str, mut out: W) -> Result<()> {
    writeln!(out, "# {CSV_VERSION}")?;
    writeln!(out, "# {meta}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &report.rows {
        w.write_record(csv_record(r))?;
    }
    w.flush()?;
    Ok(())
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
        let parts: Vec<String> = cells.zip(&width).map(|(c, w)| format!("{c:>w$}")).collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut s = line(&mut header.iter().copied());
    s.push('\n');
    s.push_str(&"-".repeat(width.iter().sum::<usize>() + 2 * (width.len() - 1)));
    s.push('\n');
    for row in rows {
        s.push_str(&line(&mut row.iter().map(String::as_str)));
        s.push('\n');
    }
    s
}

/// Aligned text table with 6 significant digits.
pub fn study_text(report: &StudyReport, meta: &str) -> String {
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                sci(r.h, 3),
                sci(r.err_vh, 6),
                rate_text(r.rate_vh),
                sci(r.err_l2, 6),
                rate_text(r.rate_l2),
                sci(r.err_qh, 6),
                rate_text(r.rate_qh),
                if r.converged { r.picard_iters.to_string() } else { format!("{}*", r.picard_iters) },
                r.dofs.to_string(),
            ]
        })
        .collect();
    let mut s = format!("# {meta}\n");
    s.push_str(&aligned(&["N", "h", "Err(V_h)", "r", "Err(L2)", "r", "Err(Q_h)", "r", "iters", "#Np"], &rows));
    if report.rows.iter().any(|r| !r.converged) {
        s.push_str("* Picard iteration hit max_iters\n");
    }
    s
}

/// Mesh-condition table: `N, #Np, MinAngle, MaxAngle, DisSov`.
pub fn mesh_text(label: &str, rows: &[(usize, MeshQualityReport)]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|(n, q)| {
            vec![
                n.to_string(),
                q.num_dofs.to_string(),
                sci(q.min_angle_metric, 6),
                format!("{:.2}", q.max_angle_metric),
                sci(q.dis_sov, 6),
                sci(q.h, 3),
            ]
        })
        .collect();
    let mut s = format!("# {label}\n");
    s.push_str(&aligned(&["N", "#Np", "MinAngle", "MaxAngle", "DisSov", "h"], &body));
    s
}
