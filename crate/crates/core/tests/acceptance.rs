//! Acceptance suite: every criterion runs at its stated tolerance and prints
//! one PASS/FAIL line. The process exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::time::Instant;

use prcr_core::analysis::{
    example1, example2, run_study_with, ErrorQuadrature, ExactProblem, StudyReport,
};
use prcr_core::assembly::{assemble_convection, DofMap};
use prcr_core::elements::{
    edge_midpoint_rule, gauss_legendre_unit, quadrature_rule, vertex_midpoint_centroid_rule, EdgeRule,
    QuadratureRule, EDGE_QUADRATURE_DEGREE, MAX_QUADRATURE_DEGREE,
};
use prcr_core::interpolation::{interpolate_cr, lift_cr_to_rt0, CrFunction, Rt0Function};
use prcr_core::mesh::{generate_graded_mesh, quality_report, Grading, Point2, Triangulation};
use prcr_core::solver::{picard_solve, LinearSolverKind, PicardConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NS: [usize; 6] = [4, 8, 16, 32, 64, 128];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// `(MinAngle, MaxAngle, DisSov)` exactly as printed.
type MeshRow = (usize, usize, &'static str, &'static str, &'static str);

const MESH1_EPS2: [MeshRow; 6] = [
    (4, 144, "8.50", "2.00", "1.04199"),
    (8, 544, "1.63e+01", "2.00", "7.63521e-01"),
    (16, 2112, "3.21e+01", "2.00", "5.95764e-01"),
    (32, 8320, "6.41e+01", "2.00", "5.00244e-01"),
    (64, 33024, "1.28e+02", "2.00", "4.20500e-01"),
    (128, 131584, "2.56e+02", "2.00", "3.53564e-01"),
];

const MESH1_EPS4: [MeshRow; 6] = [
    (4, 144, "1.28031e+02", "2.00", "1.68200"),
    (8, 544, "1.02400e+03", "2.00", "2.00000"),
    (16, 2112, "8.19200e+03", "2.00", "2.37841"),
    (32, 8320, "6.55360e+04", "2.00", "2.82843"),
    (64, 33024, "5.24288e+05", "2.00", "3.36359"),
    (128, 131584, "4.19430e+06", "2.00", "4.00000"),
];

const MESH2: [MeshRow; 6] = [
    (4, 144, "5.65685", "2.00", "1.00000"),
    (8, 544, "1.04525e+01", "2.00", "7.94187e-01"),
    (16, 2112, "2.05033e+01", "2.00", "6.66204e-01"),
    (32, 8320, "4.08092e+01", "2.00", "5.59870e-01"),
    (64, 33024, "8.15201e+01", "2.00", "4.70722e-01"),
    (128, 131584, "1.62991e+02", "2.00", "3.95813e-01"),
];

/// `(N, Err(V_h), r, Err(L2), r, Err(Q_h), r)`.
type ErrRow = (usize, f64, Option<f64>, f64, Option<f64>, f64, Option<f64>);

const EX1_EPS1: [ErrRow; 6] = [
    (4, 9.30891e-01, None, 5.57356e-01, None, 2.77363e-01, None),
    (8, 5.06405e-01, Some(0.88), 1.63541e-01, Some(1.77), 1.39270e-01, Some(0.99)),
    (16, 2.59214e-01, Some(0.97), 4.33267e-02, Some(1.92), 6.97005e-02, Some(1.00)),
    (32, 1.30439e-01, Some(0.99), 1.10344e-02, Some(1.97), 3.48582e-02, Some(1.00)),
    (64, 6.53276e-02, Some(1.00), 2.77257e-03, Some(1.99), 1.74301e-02, Some(1.00)),
    (128, 3.26775e-02, Some(1.00), 6.93973e-04, Some(2.00), 8.71516e-03, Some(1.00)),
];

const EX1_EPS2: [ErrRow; 6] = [
    (4, 1.04386, None, 7.54616e-01, None, 2.28331e-01, None),
    (8, 6.00986e-01, Some(0.80), 2.50020e-01, Some(1.59), 1.13984e-01, Some(1.00)),
    (16, 3.14178e-01, Some(0.94), 7.08474e-02, Some(1.82), 5.69444e-02, Some(1.00)),
    (32, 1.59284e-01, Some(0.98), 1.85985e-02, Some(1.93), 2.84658e-02, Some(1.00)),
    (64, 7.99483e-02, Some(0.99), 4.71970e-03, Some(1.98), 1.42321e-02, Some(1.00)),
    (128, 4.00138e-02, Some(1.00), 1.18479e-03, Some(1.99), 7.11597e-03, Some(1.00)),
];

const EX1_EPS4: [ErrRow; 6] = [
    (4, 1.13521, None, 9.15578e-01, None, 3.45283e-01, None),
    (8, 8.34160e-01, Some(0.44), 5.29158e-01, Some(0.79), 1.65246e-01, Some(1.06)),
    (16, 4.72051e-01, Some(0.82), 1.80204e-01, Some(1.55), 8.17474e-02, Some(1.02)),
    (32, 2.47274e-01, Some(0.93), 5.25128e-02, Some(1.78), 4.07539e-02, Some(1.00)),
    (64, 1.25537e-01, Some(0.98), 1.39353e-02, Some(1.91), 2.03619e-02, Some(1.00)),
    (128, 6.30344e-02, Some(0.99), 3.54646e-03, Some(1.97), 1.01790e-02, Some(1.00)),
];

/// Example 2 pressure column `(N, Err(Q_h), r)`; velocity errors are checked
/// against the noise bound only.
const EX2_MESH1_QH: [(usize, f64, Option<f64>); 6] = [
    (4, 2.77362e-01, None),
    (8, 1.39270e-01, Some(0.99)),
    (16, 6.97007e-02, Some(1.00)),
    (32, 3.48583e-02, Some(1.00)),
    (64, 1.74301e-02, Some(1.00)),
    (128, 8.71518e-03, Some(1.00)),
];

const EX2_MESH2_QH: [(usize, f64, Option<f64>); 6] = [
    (4, 2.87956e-01, None),
    (8, 1.49758e-01, Some(0.94)),
    (16, 7.54093e-02, Some(0.99)),
    (32, 3.77670e-02, Some(1.00)),
    (64, 1.88912e-02, Some(1.00)),
    (128, 9.44656e-03, Some(1.00)),
];

/// Agreement with a printed value to `min(4, printed digits)` significant
/// digits: half a unit in the last compared place.
fn agrees_to_digits(computed: f64, printed: &str) -> bool {
    let value: f64 = printed.parse().expect("numeric literal");
    let mantissa = printed.split(['e', 'E']).next().unwrap();
    let digits = mantissa.chars().filter(|c| c.is_ascii_digit()).skip_while(|&c| c == '0').count();
    let sig = digits.min(4) as i32;
    let exp = value.abs().log10().floor() as i32;
    let tol = 0.5 * 10f64.powi(exp - sig + 1);
    (computed - value).abs() <= tol * (1.0 + 1e-9)
}

fn criterion_mesh_metrics() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let families = [
        ("Mesh I eps=2", Grading::PowerLaw(2.0), &MESH1_EPS2),
        ("Mesh I eps=4", Grading::PowerLaw(4.0), &MESH1_EPS4),
        ("Mesh II", Grading::Cosine, &MESH2),
    ];
    for (label, grading, table) in families {
        for &(n, np, min_angle, max_angle, dis_sov) in table.iter() {
            let q = quality_report(&generate_graded_mesh(n, grading).expect("mesh"));
            if q.num_dofs != np {
                failures.push(format!("{label} N={n}: #Np {} vs {np}", q.num_dofs));
            }
            if !agrees_to_digits(q.min_angle_metric, min_angle) {
                failures.push(format!("{label} N={n}: MinAngle {} vs {min_angle}", q.min_angle_metric));
            }
            if format!("{:.2}", q.max_angle_metric) != max_angle {
                failures.push(format!("{label} N={n}: MaxAngle {} vs {max_angle}", q.max_angle_metric));
            }
            if !agrees_to_digits(q.dis_sov, dis_sov) {
                failures.push(format!("{label} N={n}: DisSov {} vs {dis_sov}", q.dis_sov));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 1.0 {
        failures.push(format!("runtime {secs:.3} s >= 1 s"));
    }
    if failures.is_empty() {
        outcome(true, format!("54 metrics and 18 #Np values agree, {secs:.3} s"))
    } else {
        outcome(false, failures.join("; "))
    }
}

/// Reference settings with the direct linear solver; GMRES(500)+ILU(0) needs
/// well over the runtime budget at N=128 on a single core.
fn config() -> PicardConfig {
    PicardConfig { linear_solver: LinearSolverKind::SparseLu, ..Default::default() }
}

fn study(problem: &ExactProblem, grading: Grading) -> (StudyReport, f64) {
    let start = Instant::now();
    let report = run_study_with(problem, grading, &NS, &config(), ErrorQuadrature::Nodal)
        .expect("study runs");
    (report, start.elapsed().as_secs_f64())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Errors within 1% (2% at N=128) and rates within 0.03 of a golden table.
fn compare_table(report: &StudyReport, table: &[ErrRow; 6]) -> (Vec<String>, f64, f64) {
    let mut failures = Vec::new();
    let mut worst_err: f64 = 0.0;
    let mut worst_rate: f64 = 0.0;
    for (row, golden) in report.rows.iter().zip(table) {
        let (n, vh, rvh, l2, rl2, qh, rqh) = *golden;
        assert_eq!(row.n, n);
        let tol = if n == 128 { 0.02 } else { 0.01 };
        for (name, got, want) in [("Err(V_h)", row.err_vh, vh), ("Err(L2)", row.err_l2, l2), ("Err(Q_h)", row.err_qh, qh)] {
            let d = rel(got, want);
            worst_err = worst_err.max(d);
            if d > tol {
                failures.push(format!("N={n} {name} {got:.6e} vs {want:.6e} ({:.2}%)", 100.0 * d));
            }
        }
        for (name, got, want) in [("r_Vh", row.rate_vh, rvh), ("r_L2", row.rate_l2, rl2), ("r_Qh", row.rate_qh, rqh)] {
            if let (Some(g), Some(w)) = (got, want) {
                worst_rate = worst_rate.max((g - w).abs());
                if (g - w).abs() > 0.03 {
                    failures.push(format!("N={n} {name} {g:.3} vs {w:.2}"));
                }
            } else if got.is_some() != want.is_some() {
                failures.push(format!("N={n} {name} presence mismatch"));
            }
        }
    }
    (failures, worst_err, worst_rate)
}

fn criterion_example1_table(report: &StudyReport, secs: f64, table: &[ErrRow; 6], extra: Option<(f64, f64)>) -> Outcome {
    let (mut failures, worst_err, worst_rate) = compare_table(report, table);
    if let Some((rvh, rl2)) = extra {
        let last = report.rows.last().expect("rows");
        let (gv, gl) = (last.rate_vh.unwrap_or(f64::NAN), last.rate_l2.unwrap_or(f64::NAN));
        if !((gv - rvh).abs() <= 0.03 && (gl - rl2).abs() <= 0.03) {
            failures.push(format!("finest rates {gv:.3}/{gl:.3} vs {rvh}/{rl2}"));
        }
    }
    if secs > 600.0 {
        failures.push(format!("runtime {secs:.0} s exceeds 10 min"));
    }
    let detail = format!(
        "max rel error dev {:.3}%, max rate dev {:.3}, {secs:.0} s",
        100.0 * worst_err,
        worst_rate
    );
    if failures.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; {}", failures.join("; ")))
    }
}

fn criterion_pressure_robustness(reports: &[(&str, &StudyReport, &[(usize, f64, Option<f64>); 6])]) -> Outcome {
    let mut failures = Vec::new();
    let mut worst_v: f64 = 0.0;
    let mut worst_q: f64 = 0.0;
    for (label, report, table) in reports {
        for (row, &(n, qh, _)) in report.rows.iter().zip(table.iter()) {
            assert_eq!(row.n, n);
            worst_v = worst_v.max(row.err_vh).max(row.err_l2);
            if row.err_vh > 1e-4 || row.err_l2 > 1e-4 {
                failures.push(format!("{label} N={n} velocity errors {:.3e}/{:.3e}", row.err_vh, row.err_l2));
            }
            let d = rel(row.err_qh, qh);
            worst_q = worst_q.max(d);
            if d > 0.01 {
                failures.push(format!("{label} N={n} Err(Q_h) {:.6e} vs {qh:.6e}", row.err_qh));
            }
        }
        let r = report.rows.last().and_then(|r| r.rate_qh).unwrap_or(f64::NAN);
        if !((r - 1.0).abs() <= 0.02) {
            failures.push(format!("{label} final pressure rate {r:.3}"));
        }
    }
    let detail = format!("max velocity error {worst_v:.3e}, max Err(Q_h) dev {:.3}%", 100.0 * worst_q);
    if failures.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; {}", failures.join("; ")))
    }
}

fn test_meshes() -> Vec<(String, Triangulation)> {
    let mut v = Vec::new();
    for (label, g) in [
        ("Mesh I eps=1", Grading::PowerLaw(1.0)),
        ("Mesh I eps=2", Grading::PowerLaw(2.0)),
        ("Mesh I eps=4", Grading::PowerLaw(4.0)),
        ("Mesh II", Grading::Cosine),
    ] {
        for n in [4, 8] {
            v.push((format!("{label} N={n}"), generate_graded_mesh(n, g).expect("mesh")));
        }
    }
    v
}

fn random_cr(tri: &Triangulation, ncomp: usize, rng: &mut ChaCha8Rng) -> CrFunction {
    let values = (0..ncomp * tri.num_facets()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    CrFunction::from_values(ncomp, values)
}

fn criterion_commuting_diagram(rng: &mut ChaCha8Rng) -> Outcome {
    // Deviations are measured in units of the sample's largest cell
    // divergence (floored at one): on the eps=4 meshes random DOFs produce
    // divergences of order 1e3, where double rounding alone exceeds 1e-12.
    let mut worst: f64 = 0.0;
    let mut worst_abs: f64 = 0.0;
    for (_, tri) in test_meshes() {
        for _ in 0..200 {
            let v = random_cr(&tri, 2, rng);
            let lifted = lift_cr_to_rt0(&tri, &v).divergence(&tri);
            let broken = v.broken_divergence(&tri);
            let scale = broken.values.iter().fold(1.0f64, |m, d| m.max(d.abs()));
            for (a, b) in lifted.values.iter().zip(&broken.values) {
                worst = worst.max((a - b).abs() / scale);
                worst_abs = worst_abs.max((a - b).abs());
            }
        }
    }
    outcome(
        worst <= 1e-12,
        format!(
            "max |div L v - Pi0 div_h v| / max(1, max|div_h v|) = {worst:.3e} (absolute {worst_abs:.3e}) over 8 meshes x 200 samples"
        ),
    )
}

fn criterion_duality(rng: &mut ChaCha8Rng) -> Outcome {
    let rule = quadrature_rule::<f64>(2).expect("rule");
    let mut worst: f64 = 0.0;
    for (_, tri) in test_meshes() {
        for _ in 0..200 {
            let v = Rt0Function { fluxes: (0..tri.num_facets()).map(|_| rng.gen_range(-1.0..1.0)).collect() };
            let mut psi = random_cr(&tri, 1, rng);
            for &f in tri.boundary_facets() {
                psi.values_mut()[f] = 0.0;
            }
            let (mut convective, mut divergence) = (0.0, 0.0);
            for c in 0..tri.num_cells() {
                let grad = psi.cell_gradient(&tri, c, 0);
                let div = v.cell_divergence(&tri, c);
                let area = tri.area(c);
                for (x, w) in rule.physical_points(&tri.shape(c).vertices) {
                    convective += w * area * v.eval(&tri, c, x).dot(grad);
                    divergence += w * area * div * psi.cell_value(&tri, c, 0, x);
                }
            }
            let scale = convective.abs() + divergence.abs();
            if scale > 0.0 {
                worst = worst.max((convective + divergence).abs() / scale);
            }
        }
    }
    outcome(worst <= 1e-11, format!("max relative duality defect {worst:.3e} over 8 meshes x 200 pairs"))
}

fn criterion_skew(rng: &mut ChaCha8Rng) -> Outcome {
    let tri = generate_graded_mesh(8, Grading::PowerLaw(2.0)).expect("mesh");
    let dofs = DofMap::new(&tri);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let u = random_cr(&tri, 2, rng);
        let n = assemble_convection(&tri, &dofs, &u);
        let mut sym: HashMap<(usize, usize), f64> = HashMap::new();
        for (i, j, v) in n.triplets() {
            *sym.entry((i.min(j), i.max(j))).or_default() += v;
        }
        let defect = sym.values().fold(0.0f64, |m, v| m.max(v.abs()));
        worst = worst.max(defect / n.max_abs());
    }
    outcome(worst <= 1e-12, format!("max |N + N^T| / max |N| = {worst:.3e} over 20 states"))
}

fn criterion_rotational_identity(rng: &mut ChaCha8Rng) -> Outcome {
    let rule = quadrature_rule::<f64>(4).expect("rule");
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        // random, possibly very flat, counterclockwise triangle
        let p0 = Point2::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
        let (a, b) = loop {
            let a = Point2::new(rng.gen_range(0.1..1.0), rng.gen_range(-0.2..0.2));
            let b = Point2::new(rng.gen_range(-0.5..0.5), 10f64.powf(rng.gen_range(-3.0..0.0)));
            if a.cross(b) > 1e-4 * a.norm() * b.norm() {
                break (a, b);
            }
        };
        let tri = Triangulation::new(vec![p0, p0 + a, p0 + b], vec![[0, 1, 2]]).expect("cell");
        let k: Vec<f64> = (0..6).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let u_h = interpolate_cr(&tri, |x| [(k[0] * x.x1 + k[1] * x.x2).sin(), (k[2] * x.x2).cos() + x.x1 * x.x1]);
        let v_h = interpolate_cr(&tri, |x| [x.x2 * x.x2 + k[3], (k[4] * x.x1).exp()]);
        let w_h = interpolate_cr(&tri, |x| [(k[5] * x.x1 * x.x2).cos(), x.x1 - x.x2 * x.x2]);
        let n = assemble_convection(&tri, &DofMap::new(&tri), &u_h);
        let nv = n.spmv(v_h.values()).expect("dims");
        let assembled: f64 = w_h.values().iter().zip(&nv).map(|(a, b)| a * b).sum();

        let (lv, lw) = (lift_cr_to_rt0(&tri, &v_h), lift_cr_to_rt0(&tri, &w_h));
        let g = [u_h.cell_gradient(&tri, 0, 0), u_h.cell_gradient(&tri, 0, 1)];
        let area = tri.area(0);
        let (mut identity, mut scale) = (0.0, 0.0);
        for (x, wq) in rule.physical_points(&tri.shape(0).vertices) {
            let (v, w) = (lv.eval(&tri, 0, x), lw.eval(&tri, 0, x));
            // (a . grad) u . b with grad u constant on the cell
            let dir = |a: Point2<f64>, b: Point2<f64>| a.dot(g[0]) * b.x1 + a.dot(g[1]) * b.x2;
            let (t1, t2) = (dir(v, w), dir(w, v));
            identity += wq * area * (t1 - t2);
            scale += wq * area * (t1.abs() + t2.abs());
        }
        worst = worst.max((assembled - identity).abs() / scale);
    }
    outcome(worst <= 1e-11, format!("max relative deviation {worst:.3e} on 50 random single cells"))
}

fn criterion_mass_conservation() -> Outcome {
    let mut worst: f64 = 0.0;
    for (n, g) in [(16, Grading::PowerLaw(1.0)), (16, Grading::PowerLaw(4.0)), (16, Grading::Cosine)] {
        let tri = generate_graded_mesh(n, g).expect("mesh");
        let sol = picard_solve(&example1(), &tri, &config()).expect("solve");
        let div = sol.u_h.broken_divergence(&tri);
        let max_div = div.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        worst = worst.max(max_div / sol.u_h.broken_h1_seminorm(&tri));
    }
    outcome(worst <= 1e-9, format!("max_T |div u_h| / |u_h|_Vh = {worst:.3e} on 3 meshes"))
}

fn criterion_self_check(rng: &mut ChaCha8Rng) -> Outcome {
    let p1 = example1();
    let ex = p1.exact.as_ref().expect("exact");
    // fourth-order central stencils; the closures are polynomials of low
    // enough degree that truncation is negligible next to rounding
    let h = 1e-3;
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let x = Point2::new(rng.gen_range(2.0 * h..1.0 - 2.0 * h), rng.gen_range(2.0 * h..1.0 - 2.0 * h));
        let at = |dx: f64, dy: f64| Point2::new(x.x1 + dx, x.x2 + dy);
        let d = |g: &dyn Fn(Point2<f64>) -> f64, e: Point2<f64>| {
            (-g(at(2.0 * h * e.x1, 2.0 * h * e.x2)) + 8.0 * g(at(h * e.x1, h * e.x2))
                - 8.0 * g(at(-h * e.x1, -h * e.x2))
                + g(at(-2.0 * h * e.x1, -2.0 * h * e.x2)))
                / (12.0 * h)
        };
        let dd = |g: &dyn Fn(Point2<f64>) -> f64, e: Point2<f64>| {
            (-g(at(2.0 * h * e.x1, 2.0 * h * e.x2)) + 16.0 * g(at(h * e.x1, h * e.x2)) - 30.0 * g(x)
                + 16.0 * g(at(-h * e.x1, -h * e.x2))
                - g(at(-2.0 * h * e.x1, -2.0 * h * e.x2)))
                / (12.0 * h * h)
        };
        let (e1, e2) = (Point2::new(1.0, 0.0), Point2::new(0.0, 1.0));
        let u0 = |y: Point2<f64>| (ex.u)(y)[0];
        let u1 = |y: Point2<f64>| (ex.u)(y)[1];
        let p = |y: Point2<f64>| (ex.p)(y);
        let ux = (ex.u)(x);
        let omega = d(&u1, e1) - d(&u0, e2);
        let rot = [-omega * ux[1], omega * ux[0]];
        let grad_p = [d(&p, e1), d(&p, e2)];
        let lap = [dd(&u0, e1) + dd(&u0, e2), dd(&u1, e1) + dd(&u1, e2)];
        let f = (p1.f)(x);
        let mut res: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for i in 0..2 {
            let visc = -p1.nu * lap[i];
            res += (f[i] - (visc + rot[i] + grad_p[i])).powi(2);
            scale += visc.abs() + rot[i].abs() + grad_p[i].abs();
        }
        worst = worst.max(res.sqrt() / scale);
    }
    let p2 = example2();
    let mut mismatches = 0;
    for _ in 0..1000 {
        let x = Point2::new(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
        // the printed load, written out literally
        let want = [0.0, -3.0e5 * (1.0f64 - x.x2).powi(2)];
        let got = (p2.f)(x);
        if got != want {
            mismatches += 1;
        }
    }
    outcome(
        worst <= 1e-6 && mismatches == 0,
        format!("Example 1 max relative residual {worst:.3e}; Example 2 load mismatches {mismatches}/1000"),
    )
}

fn criterion_picard(studies: &[(&str, &StudyReport)]) -> Outcome {
    let mut failures = Vec::new();
    let mut columns = Vec::new();
    for (label, report) in studies {
        let its: Vec<String> = report.rows.iter().map(|r| r.picard_iters.to_string()).collect();
        columns.push(format!("{label}: [{}]", its.join(",")));
        for r in &report.rows {
            if !r.converged || r.picard_iters > 30 {
                failures.push(format!("{label} N={} iters {} converged {}", r.n, r.picard_iters, r.converged));
            }
        }
    }
    let detail = columns.join("; ");
    if failures.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; {}", failures.join("; ")))
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn sweep_triangle(rule: &QuadratureRule<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for m in 0..=rule.degree as u32 {
        for n in 0..=(rule.degree as u32 - m) {
            let exact = factorial(m) * factorial(n) / factorial(m + n + 2);
            let got = rule.integrate_reference(|x, y| x.powi(m as i32) * y.powi(n as i32));
            worst = worst.max(rel(got, exact));
        }
    }
    worst
}

fn criterion_quadrature() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for d in 1..=MAX_QUADRATURE_DEGREE {
        worst = worst.max(sweep_triangle(&quadrature_rule(d).expect("rule")));
        count += 1;
    }
    for rule in [edge_midpoint_rule(), vertex_midpoint_centroid_rule()] {
        worst = worst.max(sweep_triangle(&rule));
        count += 1;
    }
    let edge = EdgeRule::<f64>::new(EDGE_QUADRATURE_DEGREE);
    for k in 0..=edge.degree as i32 {
        let got: f64 = edge.mean(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), |p| p.x1.powi(k));
        worst = worst.max(rel(got, 1.0 / (k as f64 + 1.0)));
    }
    count += 1;
    for nodes in 1..=12 {
        let (x, w) = gauss_legendre_unit(nodes);
        for k in 0..(2 * nodes) as i32 {
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            worst = worst.max(rel(got, 1.0 / (k as f64 + 1.0)));
        }
        count += 1;
    }
    outcome(worst <= 1e-14, format!("{count} rules, max relative monomial error {worst:.3e}"))
}

fn main() {
    // `cargo test -- --list` and name filters, as with the libtest harness
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let filters: Vec<&str> = args.iter().filter(|a| !a.starts_with('-')).map(String::as_str).collect();
    let selected = |id: &str| filters.is_empty() || filters.iter().any(|f| id.contains(f));

    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut check = |id: &'static str, run: &mut dyn FnMut() -> Outcome| {
        if selected(id) {
            let o = run();
            println!("{} [{id}] {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
            results.push((id, o));
        }
    };

    const C2: &str = "2 Example 1, Mesh I eps=1";
    const C3A: &str = "3a Example 1, Mesh I eps=2";
    const C3B: &str = "3b Example 1, Mesh I eps=4";
    const C4: &str = "4 pressure robustness, Example 2";
    const C7: &str = "7 Picard convergence within 30 iterations";
    let need = |ids: &[&str]| ids.iter().any(|id| selected(id));
    let ex1_1 = need(&[C2, C7]).then(|| study(&example1(), Grading::PowerLaw(1.0)));
    let ex1_2 = need(&[C3A, C7]).then(|| study(&example1(), Grading::PowerLaw(2.0)));
    let ex1_4 = need(&[C3B, C7]).then(|| study(&example1(), Grading::PowerLaw(4.0)));
    let ex2_1 = need(&[C4, C7]).then(|| study(&example2(), Grading::PowerLaw(1.0)).0);
    let ex2_c = need(&[C4, C7]).then(|| study(&example2(), Grading::Cosine).0);

    check("1 mesh metrics (Mesh I eps=2, eps=4, Mesh II)", &mut || criterion_mesh_metrics());
    if let Some((t, s)) = &ex1_1 {
        check(C2, &mut || criterion_example1_table(t, *s, &EX1_EPS1, None));
    }
    if let Some((t, s)) = &ex1_2 {
        check(C3A, &mut || criterion_example1_table(t, *s, &EX1_EPS2, None));
    }
    if let Some((t, s)) = &ex1_4 {
        check(C3B, &mut || criterion_example1_table(t, *s, &EX1_EPS4, Some((0.99, 1.97))));
    }
    if let (Some(t6), Some(t7)) = (&ex2_1, &ex2_c) {
        check(C4, &mut || {
            criterion_pressure_robustness(&[("Mesh I eps=1", t6, &EX2_MESH1_QH), ("Mesh II", t7, &EX2_MESH2_QH)])
        });
    }
    check("5a commuting diagram", &mut || criterion_commuting_diagram(&mut rng));
    check("5b RT-CR duality", &mut || criterion_duality(&mut rng));
    check("5c convection skew symmetry", &mut || criterion_skew(&mut rng));
    check("5d rotational identity on single cells", &mut || criterion_rotational_identity(&mut rng));
    check("5e discrete mass conservation", &mut || criterion_mass_conservation());
    check("6 exact-problem self-check", &mut || criterion_self_check(&mut rng));
    if let (Some((t3, _)), Some((t4, _)), Some((t5, _)), Some(t6), Some(t7)) = (&ex1_1, &ex1_2, &ex1_4, &ex2_1, &ex2_c) {
        check(C7, &mut || {
            criterion_picard(&[
                ("Ex1 eps=1", t3),
                ("Ex1 eps=2", t4),
                ("Ex1 eps=4", t5),
                ("Ex2 Mesh I", t6),
                ("Ex2 Mesh II", t7),
            ])
        });
    }
    check("8 quadrature certification", &mut || criterion_quadrature());

    let failed: Vec<&str> = results.iter().filter(|(_, o)| !o.pass).map(|(id, _)| *id).collect();
    println!("acceptance: {} passed, {} failed", results.len() - failed.len(), failed.len());
    if !failed.is_empty() {
        println!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
