//! Boundary diagnostics: field speed profile, flux recovery, the virial
//! identity, and the tangency invariant g(X, R).
//!
//! All boundary integrals run over the outer boundary cycle of the meridian
//! mesh (axis edges are not part of the revolved surface). The normal
//! derivative of the stream function is recovered in the consistent-flux
//! sense: the Galerkin residual K ψ − μ M ψ restricted to boundary rows is
//! exactly the weak form of ∮ (∂ₙψ / r) φ ds, so solving the 1/r-weighted
//! boundary mass matrix against it yields nodal values of ∂ₙψ that converge
//! one order faster than naive gradient sampling.

use super::DiagnoseError;
use crate::gseig::linalg::{Csr, OrderedChol};
use crate::gseig::{Assembled, EigenPair, FieldSampler};
use crate::mesh2::{BoundaryEdge, TriMesh};

/// |X| along the outer boundary together with its summary statistics.
#[derive(Debug, Clone)]
pub struct BoundaryProfile {
    /// (arclength, |X|) at each boundary edge midpoint.
    pub samples: Vec<(f64, f64)>,
    /// (max − min) / max of |X| over the boundary.
    pub constancy_score: f64,
    /// Arc-length weighted mean of |X|.
    pub c_estimate: f64,
    /// True when the boundary field is vanishingly small against the
    /// interior field.
    pub vanishing_warning: bool,
}

/// Sample |X| at the outer boundary edge midpoints and score how far the
/// profile is from a constant.
pub fn boundary_constancy(
    mesh: &TriMesh,
    pair: &EigenPair,
) -> Result<BoundaryProfile, DiagnoseError> {
    let sampler = FieldSampler::new(mesh, &pair.psi, pair.lambda);
    let trace = mesh.boundary_trace();
    let mut samples = Vec::with_capacity(trace.outer.len());
    let mut s = 0.0;
    let mut weighted = 0.0;
    let mut total_len = 0.0;
    for edge in &trace.outer {
        let mid = edge.midpoint(mesh);
        // Nudge inward a hair so the sample never falls outside due to
        // roundoff on curved boundaries.
        let p = [
            mid[0] - 1e-12 * edge.normal[0],
            mid[1] - 1e-12 * edge.normal[1],
        ];
        let x = sampler
            .field_cyl(p)
            .or_else(|| sampler.field_cyl(mid))
            .ok_or(DiagnoseError::ZeroField)?;
        let speed = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        samples.push((s + 0.5 * edge.length, speed));
        weighted += edge.length * speed;
        total_len += edge.length;
        s += edge.length;
    }
    let max = samples.iter().fold(0.0f64, |a, &(_, v)| a.max(v));
    let min = samples.iter().fold(f64::INFINITY, |a, &(_, v)| a.min(v));
    if !(max > 0.0) || total_len <= 0.0 {
        return Err(DiagnoseError::ZeroField);
    }
    Ok(BoundaryProfile {
        constancy_score: (max - min) / max,
        c_estimate: weighted / total_len,
        vanishing_warning: max <= 1e-10 * interior_speed_scale(mesh, pair),
        samples,
    })
}

/// Max |X| over triangle centroids; the interior scale the boundary field
/// is compared against.
fn interior_speed_scale(mesh: &TriMesh, pair: &EigenPair) -> f64 {
    let mut best = 0.0f64;
    for t in &mesh.triangles {
        let [a, b, c] = *t;
        let (pa, pb, pc) = (mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]);
        let area2 = (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pc[0] - pa[0]) * (pb[1] - pa[1]);
        if area2.abs() <= 0.0 {
            continue;
        }
        let (fa, fb, fc) = (pair.psi[a], pair.psi[b], pair.psi[c]);
        let gr = (fa * (pb[1] - pc[1]) + fb * (pc[1] - pa[1]) + fc * (pa[1] - pb[1])) / area2;
        let gz = (fa * (pc[0] - pb[0]) + fb * (pa[0] - pc[0]) + fc * (pb[0] - pa[0])) / area2;
        let rc = (pa[0] + pb[0] + pc[0]) / 3.0;
        let psic = (fa + fb + fc) / 3.0;
        let speed2 =
            (gz * gz + pair.lambda * pair.lambda * psic * psic + gr * gr) / (rc * rc);
        best = best.max(speed2);
    }
    best.sqrt()
}

/// Nodal consistent-flux recovery of ∂ₙψ on the outer boundary.
///
/// Returns the boundary vertex ids (in trace order of first appearance) and
/// the recovered normal derivative at each.
fn recover_normal_flux(
    mesh: &TriMesh,
    forms: &Assembled,
    pair: &EigenPair,
    outer: &[BoundaryEdge],
) -> (Vec<usize>, Vec<f64>) {
    let n = mesh.vertices.len();
    let mut local = vec![usize::MAX; n];
    let mut verts = Vec::new();
    let mut index_of = |v: usize, verts: &mut Vec<usize>| -> usize {
        if local[v] == usize::MAX {
            local[v] = verts.len();
            verts.push(v);
        }
        local[v]
    };
    let mut triplets: Vec<(usize, usize, f64)> = Vec::with_capacity(4 * outer.len());
    for e in outer {
        let mid = e.midpoint(mesh);
        let w = e.length / mid[0];
        let (la, lb) = (index_of(e.a, &mut verts), index_of(e.b, &mut verts));
        triplets.push((la, la, w / 3.0));
        triplets.push((lb, lb, w / 3.0));
        triplets.push((la, lb, w / 6.0));
        triplets.push((lb, la, w / 6.0));
    }
    let nb = verts.len();
    let bmat = Csr::from_triplets(nb, &mut triplets);

    // Galerkin residual = weak boundary flux functional.
    let mut f = vec![0.0; n];
    forms.k.matvec(&pair.psi, &mut f);
    let mut mf = vec![0.0; n];
    forms.m.matvec(&pair.psi, &mut mf);
    for (fi, mi) in f.iter_mut().zip(&mf) {
        *fi -= pair.mu * mi;
    }
    let rhs: Vec<f64> = verts.iter().map(|&v| f[v]).collect();
    let chol = OrderedChol::new(&bmat)
        .expect("1/r-weighted boundary mass matrix is symmetric positive definite");
    let mut q = vec![0.0; nb];
    chol.solve(&rhs, &mut q);
    (verts, q)
}

/// Relative defect of the virial identity
/// 2π ∫ (|∇ψ|² + λ²ψ²)/r dA  =  2π ∮ ((∂ₙψ)² + λ²c_b²) (r·n_r + (z−z₀)·n_z) / r ds
/// which every eigenfield satisfies exactly in the continuum, for any
/// origin (0, z₀) of the position field.
pub fn rellich_identity(
    mesh: &TriMesh,
    forms: &Assembled,
    pair: &EigenPair,
    z_origin: f64,
) -> f64 {
    let volume_side = super::total_energy(forms, pair);
    let trace = mesh.boundary_trace();
    let (verts, q) = recover_normal_flux(mesh, forms, pair, &trace.outer);
    let mut local = vec![usize::MAX; mesh.vertices.len()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    // 3-point Gauss on each edge, exact through degree-5 polynomials.
    let half = 0.5 * (3.0f64 / 5.0).sqrt();
    let gauss = [
        (0.5 - half, 5.0 / 18.0),
        (0.5, 8.0 / 18.0),
        (0.5 + half, 5.0 / 18.0),
    ];
    let c2 = pair.mu * pair.c_b * pair.c_b;
    let mut boundary_side = 0.0;
    for e in &trace.outer {
        let (pa, pb) = (mesh.vertices[e.a], mesh.vertices[e.b]);
        let (qa, qb) = (q[local[e.a]], q[local[e.b]]);
        let mut acc = 0.0;
        for (t, w) in gauss {
            let r = pa[0] + t * (pb[0] - pa[0]);
            let z = pa[1] + t * (pb[1] - pa[1]) - z_origin;
            let qn = qa + t * (qb - qa);
            acc += w * (qn * qn + c2) * (r * e.normal[0] + z * e.normal[1]) / r;
        }
        boundary_side += acc * e.length;
    }
    boundary_side *= 2.0 * std::f64::consts::PI;
    (volume_side - boundary_side).abs()
        / volume_side.abs().max(boundary_side.abs()).max(f64::MIN_POSITIVE)
}

/// g(X, R) = λψ along the outer boundary, its reference constant
/// c₀ = λ·c_b, and the worst deviation relative to the field scale.
///
/// For an eigenfield of a rotationally invariant domain this boundary trace
/// is exactly constant; a non-constant profile certifies that the domain and
/// field do not satisfy the rotational first-order optimality structure.
pub fn g_xr_constancy(mesh: &TriMesh, pair: &EigenPair) -> (Vec<(f64, f64)>, f64, f64) {
    let trace = mesh.boundary_trace();
    let c0 = pair.lambda * pair.c_b;
    let scale = pair
        .psi
        .iter()
        .fold(0.0f64, |a, &v| a.max(v.abs()))
        * pair.lambda.abs();
    let mut samples = Vec::with_capacity(trace.outer.len());
    let mut s = 0.0;
    let mut worst = 0.0f64;
    for e in &trace.outer {
        let g = pair.lambda * 0.5 * (pair.psi[e.a] + pair.psi[e.b]);
        samples.push((s + 0.5 * e.length, g));
        worst = worst.max((g - c0).abs());
        s += e.length;
    }
    (samples, worst / scale.max(f64::MIN_POSITIVE), c0)
}

/// Net flux of the poloidal field through the boundary, normalized by the
/// total absolute nodal flux: |Σ f_b| / Σ |f_b| with f = Kψ − μMψ on outer
/// boundary rows (the weak form of ∮ (∂ₙψ / r) ds against the constant).
///
/// The constrained eigenproblem forces this to solver precision; a plain
/// Dirichlet solve leaves the one-signed spurious flux mode, for which the
/// value is order one. Errors on ball-like meshes, where the meridian
/// section is simply connected and no net-flux constraint exists.
pub fn flux_balance(
    mesh: &TriMesh,
    forms: &Assembled,
    pair: &EigenPair,
) -> Result<f64, DiagnoseError> {
    if mesh.has_axis_vertices() {
        return Err(DiagnoseError::WrongTopology {
            needed: "torus_like",
            got: "ball_like".to_string(),
        });
    }
    let trace = mesh.boundary_trace();
    let n = mesh.vertices.len();
    let mut f = vec![0.0; n];
    forms.k.matvec(&pair.psi, &mut f);
    let mut mf = vec![0.0; n];
    forms.m.matvec(&pair.psi, &mut mf);
    for (fi, mi) in f.iter_mut().zip(&mf) {
        *fi -= pair.mu * mi;
    }
    let mut seen = vec![false; n];
    let mut net = 0.0;
    let mut total = 0.0;
    for e in &trace.outer {
        for v in [e.a, e.b] {
            if !seen[v] {
                seen[v] = true;
                net += f[v];
                total += f[v].abs();
            }
        }
    }
    if total <= 0.0 {
        return Ok(0.0);
    }
    Ok(net / total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gseig::{assemble, solve_with_forms, SolveMode, SolverConfig};
    use crate::mesh2::triangulate;
    use crate::xsection::{circle, CrossSection, MetricKind};

    fn torus_cs() -> CrossSection {
        let pts = circle([2.0, 0.0], 0.5, 96);
        CrossSection::new(pts, vec![], MetricKind::Euclidean).unwrap()
    }

    fn half_disc(spacing: f64) -> CrossSection {
        let n = (std::f64::consts::PI / spacing).ceil() as usize;
        let mut pts: Vec<[f64; 2]> = vec![[0.0, -1.0]];
        for k in 1..n {
            let t = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * k as f64 / n as f64;
            pts.push([t.cos(), t.sin()]);
        }
        pts.push([0.0, 1.0]);
        CrossSection::new(pts, vec![], MetricKind::Euclidean).unwrap()
    }

    #[test]
    fn ball_speed_profile_matches_the_separable_solution() {
        // For the ball eigenfield the stream function is R·j₁(λR)·sin²θ in
        // spherical coordinates, so |X| on the unit sphere is proportional
        // to sinθ = r. Check proportionality away from the poles.
        let mesh = triangulate(&half_disc(0.03), 0.03).unwrap();
        let forms = assemble(&mesh);
        let report =
            solve_with_forms(&mesh, &forms, None, &SolverConfig::default()).unwrap();
        let pair = &report.pairs[0];
        let profile = boundary_constancy(&mesh, pair).unwrap();
        assert!(
            profile.constancy_score > 0.9,
            "score {}",
            profile.constancy_score
        );
        assert!(!profile.vanishing_warning);

        let trace = mesh.boundary_trace();
        let mut num = 0.0;
        let mut den = 0.0;
        let mids: Vec<[f64; 2]> = trace.outer.iter().map(|e| e.midpoint(&mesh)).collect();
        for (m, &(_, v)) in mids.iter().zip(&profile.samples) {
            num += v * m[0];
            den += m[0] * m[0];
        }
        let alpha = num / den;
        assert!(alpha > 0.0);
        let mut worst = 0.0f64;
        for (m, &(_, v)) in mids.iter().zip(&profile.samples) {
            if m[0] > 0.3 {
                worst = worst.max((v / (alpha * m[0]) - 1.0).abs());
            }
        }
        assert!(worst < 0.08, "deviation from sinθ profile {worst}");
    }

    #[test]
    fn constrained_flux_is_orders_below_the_dirichlet_control() {
        let mesh = triangulate(&torus_cs(), 0.04).unwrap();
        let forms = assemble(&mesh);
        let cfg = SolverConfig::default();
        let torus = solve_with_forms(&mesh, &forms, None, &cfg).unwrap();
        let plain =
            solve_with_forms(&mesh, &forms, Some(SolveMode::PlainDirichlet), &cfg).unwrap();
        let good = flux_balance(&mesh, &forms, &torus.pairs[0]).unwrap().abs();
        let bad = flux_balance(&mesh, &forms, &plain.pairs[0]).unwrap().abs();
        assert!(good < 1e-6, "constrained flux {good}");
        assert!(bad > 1e-3, "control flux {bad}");
        assert!(bad / good.max(f64::MIN_POSITIVE) >= 100.0, "ratio {}", bad / good);
    }

    #[test]
    fn flux_balance_rejects_ball_topology() {
        let mesh = triangulate(&half_disc(0.08), 0.08).unwrap();
        let forms = assemble(&mesh);
        let report =
            solve_with_forms(&mesh, &forms, None, &SolverConfig::default()).unwrap();
        assert!(matches!(
            flux_balance(&mesh, &forms, &report.pairs[0]),
            Err(DiagnoseError::WrongTopology { .. })
        ));
    }

    #[test]
    fn tangency_invariant_is_constant_until_perturbed() {
        let mesh = triangulate(&torus_cs(), 0.05).unwrap();
        let forms = assemble(&mesh);
        let report =
            solve_with_forms(&mesh, &forms, None, &SolverConfig::default()).unwrap();
        let pair = &report.pairs[0];
        let (_, dev, c0) = g_xr_constancy(&mesh, pair);
        assert!(dev < 1e-10, "deviation {dev}");
        assert!(c0.abs() > 0.0);

        // Inject a non-constant boundary trace; the diagnostic must see it.
        let mut bad = pair.clone();
        let scale = bad.psi.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        let trace = mesh.boundary_trace();
        for e in &trace.outer {
            for v in [e.a, e.b] {
                let p = mesh.vertices[v];
                let theta = (p[1]).atan2(p[0] - 2.0);
                bad.psi[v] = pair.psi[v] + 0.3 * scale * (3.0 * theta).sin();
            }
        }
        let (_, dev_bad, _) = g_xr_constancy(&mesh, &bad);
        assert!(dev_bad > 0.1, "perturbed deviation {dev_bad}");
    }

    #[test]
    fn rellich_holds_for_the_ball_with_any_origin() {
        let mesh = triangulate(&half_disc(0.03), 0.03).unwrap();
        let forms = assemble(&mesh);
        let report =
            solve_with_forms(&mesh, &forms, None, &SolverConfig::default()).unwrap();
        let r0 = rellich_identity(&mesh, &forms, &report.pairs[0], 0.0);
        let r5 = rellich_identity(&mesh, &forms, &report.pairs[0], 5.0);
        assert!(r0 < 0.02, "origin residual {r0}");
        assert!(r5 < 0.02, "shifted origin residual {r5}");
    }
}
