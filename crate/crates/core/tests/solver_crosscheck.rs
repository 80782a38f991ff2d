//! Cross-checks the finite-element eigensolver against the independent
//! finite-difference reference discretisation. Mesh, basis, quadrature, and
//! eigensolver all differ between the two routes; only the physical problem
//! is shared, so agreement is evidence against implementation bias.

use approx::assert_relative_eq;
use curlax_core::gseig::{
    assemble, rayleigh_quotient, solve, torus_mu_extrapolated, FdTorusSpec, SolverConfig,
};
use curlax_core::mesh2::{triangulate, VertexTag};
use curlax_core::xsection::{circle, CrossSection, MetricKind, Point};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ellipse(center: Point, a_r: f64, a_z: f64, n: usize) -> Vec<Point> {
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            [center[0] + a_r * t.cos(), center[1] + a_z * t.sin()]
        })
        .collect()
}

fn fem_lambda(outer: Vec<Point>, h: f64) -> f64 {
    let cs = CrossSection::new(outer, vec![], MetricKind::Euclidean).unwrap();
    let mesh = triangulate(&cs, h).unwrap();
    let report = solve(&mesh, None, &SolverConfig::default()).unwrap();
    report.pairs[0].lambda
}

#[test]
fn circular_torus_matches_the_difference_reference() {
    let lambda = fem_lambda(circle([2.0, 0.0], 0.5, 256), 0.03);
    let mu_ref = torus_mu_extrapolated(&FdTorusSpec::circle(2.0, 0.5, 16));
    let lambda_ref = mu_ref.sqrt();
    assert_relative_eq!(lambda, lambda_ref, max_relative = 0.01);
}

#[test]
fn elliptical_torus_matches_the_difference_reference() {
    let lambda = fem_lambda(ellipse([2.5, 0.0], 0.5, 0.8, 320), 0.03);
    let mu_ref = torus_mu_extrapolated(&FdTorusSpec {
        r0: 2.5,
        a_r: 0.5,
        a_z: 0.8,
        n_rho: 16,
        n_theta: 32,
    });
    let lambda_ref = mu_ref.sqrt();
    assert_relative_eq!(lambda, lambda_ref, max_relative = 0.01);
}

#[test]
fn quotient_is_stationary_and_homogeneous_at_the_eigenvector() {
    let cs =
        CrossSection::new(circle([2.0, 0.0], 0.5, 128), vec![], MetricKind::Euclidean).unwrap();
    let mesh = triangulate(&cs, 0.06).unwrap();
    let forms = assemble(&mesh);
    let report = solve(&mesh, None, &SolverConfig::default()).unwrap();
    let pair = &report.pairs[0];

    let mu = rayleigh_quotient(&forms, &pair.psi);
    assert_relative_eq!(mu, pair.mu, max_relative = 1e-12);

    // Homogeneity: scaling the vector leaves the quotient unchanged.
    let scaled: Vec<f64> = pair.psi.iter().map(|v| 7.0 * v).collect();
    assert_relative_eq!(rayleigh_quotient(&forms, &scaled), mu, max_relative = 1e-14);

    // Stationarity: along any fixed admissible direction the quotient can
    // only grow, and quadratically so. Admissibility means the shared
    // boundary value stays shared (perturb interior nodes only) and the
    // weighted mean stays zero (re-balance along the interior indicator,
    // whose weight sum is positive).
    let interior: Vec<usize> = mesh
        .tags
        .iter()
        .enumerate()
        .filter(|(_, t)| matches!(t, VertexTag::Interior))
        .map(|(i, _)| i)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let norm: f64 = pair.psi.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut dir = vec![0.0f64; pair.psi.len()];
    for &i in &interior {
        dir[i] = rng.random_range(-1.0..1.0);
    }
    let ell_dot: f64 = forms.ell.iter().zip(&dir).map(|(l, d)| l * d).sum();
    let ell_int: f64 = interior.iter().map(|&i| forms.ell[i]).sum();
    for &i in &interior {
        dir[i] -= ell_dot / ell_int;
    }
    let dir_norm: f64 = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut dir {
        *v *= norm / dir_norm;
    }

    let perturbed_quotient = |t: f64| {
        let psi: Vec<f64> = pair
            .psi
            .iter()
            .zip(&dir)
            .map(|(p, d)| p + t * d)
            .collect();
        rayleigh_quotient(&forms, &psi)
    };
    let q3 = perturbed_quotient(1e-3);
    let q4 = perturbed_quotient(1e-4);
    assert!(q3 >= mu * (1.0 - 1e-12), "variational principle: {q3} < {mu}");
    assert!(q4 >= mu * (1.0 - 1e-12), "variational principle: {q4} < {mu}");
    let ratio = (q3 - mu) / (q4 - mu);
    assert!(
        (80.0..=120.0).contains(&ratio),
        "growth is not quadratic in the step: ratio {ratio}"
    );
}
