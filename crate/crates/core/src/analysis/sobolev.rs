//! Empirical lower bound of the discrete Sobolev constant
//! `||phi_h||_{L^p} <= C |phi_h|_{H1(T_h)}` over CR functions vanishing on the
//! boundary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::elements::quadrature_rule;
use crate::interpolation::{interpolate_cr_scalar, CrFunction};
use crate::mesh::Triangulation;

fn lp_norm(tri: &Triangulation, phi: &CrFunction, p: f64) -> f64 {
    let degree = ((p.ceil() as usize) + 2).clamp(2, crate::elements::MAX_QUADRATURE_DEGREE);
    let rule = quadrature_rule::<f64>(degree).expect("supported degree");
    let s: f64 = (0..tri.num_cells())
        .map(|c| {
            let area = tri.area(c);
            rule.physical_points(&tri.shape(c).vertices)
                .map(|(x, w)| w * area * phi.cell_value(tri, c, 0, x).abs().powf(p))
                .sum::<f64>()
        })
        .sum();
    s.powf(1.0 / p)
}

/// Largest ratio `||phi||_{L^p} / |phi|_{H1(T_h)}` over `samples` random
/// zero-boundary scalar CR functions. Half of the samples are interpolants
/// of random low-frequency sine series, half carry independent random
/// interior DOFs. Samples with vanishing seminorm are skipped.
pub fn discrete_sobolev_probe(tri: &Triangulation, p: f64, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nf = tri.num_facets();
    let mut best: f64 = 0.0;
    for s in 0..samples {
        let phi = if s % 2 == 0 {
            let coeff: Vec<f64> = (0..9).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let pi = std::f64::consts::PI;
            interpolate_cr_scalar(tri, |x| {
                let mut v = 0.0;
                for k in 0..3 {
                    for l in 0..3 {
                        v += coeff[3 * k + l]
                            * ((k + 1) as f64 * pi * x.x1).sin()
                            * ((l + 1) as f64 * pi * x.x2).sin();
                    }
                }
                v
            })
        } else {
            CrFunction::from_values(
                1,
                (0..nf).map(|f| if tri.is_boundary_facet(f) { 0.0 } else { rng.gen_range(-1.0..1.0) }).collect(),
            )
        };
        let mut phi = phi;
        for &f in tri.boundary_facets() {
            phi.values_mut()[f] = 0.0;
        }
        let semi = phi.broken_h1_seminorm(tri);
        if semi == 0.0 {
            continue;
        }
        best = best.max(lp_norm(tri, &phi, p) / semi);
    }
    best
}
