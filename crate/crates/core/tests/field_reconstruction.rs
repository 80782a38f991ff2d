//! Oracle checks on the reconstructed 3D vector field: the eigen-equation
//! curl X = λX probed by finite differences in Cartesian coordinates, and
//! the algebraic boundary identity of the azimuthal component.

use approx::assert_relative_eq;
use curlax_core::gseig::{solve, FieldSampler, SolverConfig};
use curlax_core::mesh2::triangulate;
use curlax_core::xsection::{circle, CrossSection, MetricKind, Point};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn half_disc(spacing: f64) -> CrossSection {
    let n = (std::f64::consts::PI / spacing).ceil() as usize;
    let mut pts: Vec<Point> = Vec::new();
    for k in 0..=n {
        let t = -std::f64::consts::FRAC_PI_2
            + std::f64::consts::PI * k as f64 / n as f64;
        pts.push([t.cos(), t.sin()]);
    }
    // Close along the axis; endpoints sit exactly at r = 0.
    pts[0] = [0.0, -1.0];
    *pts.last_mut().unwrap() = [0.0, 1.0];
    CrossSection::new(pts, vec![], MetricKind::Euclidean).unwrap()
}

/// Fourth-order central difference of a component function.
fn diff4(f: &dyn Fn(f64) -> f64, d: f64) -> f64 {
    (-f(2.0 * d) + 8.0 * f(d) - 8.0 * f(-d) + f(-2.0 * d)) / (12.0 * d)
}

#[test]
fn ball_field_satisfies_the_curl_equation() {
    let h = 0.02;
    let mesh = triangulate(&half_disc(h), h).unwrap();
    let report = solve(&mesh, None, &SolverConfig::default()).unwrap();
    let pair = &report.pairs[0];
    let sampler = FieldSampler::new(&mesh, &pair.psi, pair.lambda);

    let delta = 3.0 * h;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut err_sq = 0.0f64;
    let mut ref_sq = 0.0f64;
    let mut used = 0usize;
    while used < 200 {
        let x = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let rad = f64::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        let r_cyl = f64::sqrt(x[0] * x[0] + x[1] * x[1]);
        // Stay a full stencil width inside the ball and off the axis so
        // every sample sees a smooth neighbourhood.
        if rad > 1.0 - 3.0 * delta || r_cyl < 0.1 {
            continue;
        }
        used += 1;
        let comp = |p: [f64; 3], c: usize| sampler.field_cart(p).unwrap()[c];
        let d_at = |axis: usize, c: usize| {
            diff4(
                &|t: f64| {
                    let mut p = x;
                    p[axis] += t;
                    comp(p, c)
                },
                delta,
            )
        };
        let curl = [
            d_at(1, 2) - d_at(2, 1),
            d_at(2, 0) - d_at(0, 2),
            d_at(0, 1) - d_at(1, 0),
        ];
        let field = sampler.field_cart(x).unwrap();
        for c in 0..3 {
            let want = pair.lambda * field[c];
            err_sq += (curl[c] - want).powi(2);
            ref_sq += want * want;
        }
    }
    let rel = (err_sq / ref_sq).sqrt();
    assert!(rel < 0.02, "aggregate curl defect {rel:.4} at h = {h}");
}

#[test]
fn boundary_azimuthal_component_follows_the_shared_value() {
    let cs =
        CrossSection::new(circle([2.0, 0.0], 0.5, 96), vec![], MetricKind::Euclidean).unwrap();
    let mesh = triangulate(&cs, 0.05).unwrap();
    let report = solve(&mesh, None, &SolverConfig::default()).unwrap();
    let pair = &report.pairs[0];
    let sampler = FieldSampler::new(&mesh, &pair.psi, pair.lambda);
    let trace = mesh.boundary_trace();

    let mut checked = 0usize;
    for edge in &trace.outer {
        for &v in &[edge.a, edge.b] {
            let p = mesh.vertices[v];
            let field = sampler.field_cyl(p).expect("boundary vertex is sampleable");
            let want = pair.lambda * pair.c_b / p[0];
            assert_relative_eq!(field[1], want, max_relative = 1e-12);
            checked += 1;
        }
    }
    assert!(checked > 100, "boundary sweep covered {checked} samples");
}

#[test]
fn zero_stream_function_gives_zero_field() {
    let cs =
        CrossSection::new(circle([2.0, 0.0], 0.5, 64), vec![], MetricKind::Euclidean).unwrap();
    let mesh = triangulate(&cs, 0.1).unwrap();
    let psi = vec![0.0; mesh.vertices.len()];
    let sampler = FieldSampler::new(&mesh, &psi, 3.0);
    for p in [[2.0, 0.0], [1.8, 0.2], [2.3, -0.1]] {
        let f = sampler.field_cyl(p).unwrap();
        assert_eq!(f, [0.0, 0.0, 0.0]);
    }
}
