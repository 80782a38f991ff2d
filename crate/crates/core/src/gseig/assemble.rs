//! Assembly of the weighted stiffness and mass forms.
//!
//! The stream-function eigenproblem on the cross section is, in weak form,
//!
//! ```text
//! ∫ ∇ψ·∇χ (1/r) dr dz  =  μ ∫ ψ χ (1/r) dr dz
//! ```
//!
//! over piecewise-linear elements. Per triangle the 1/r weight is frozen at
//! a quadrature average w̄ chosen to stay finite next to the axis, and the
//! remaining polynomial integrals are exact:
//!
//! * no vertex on the axis: w̄ = 1/r(centroid),
//! * one vertex on the axis: w̄ = mean of 1/r over the three edge midpoints,
//! * two vertices on the axis: w̄ = mean of 1/r over the three interior
//!   points with barycentric coordinates (2/3, 1/6, 1/6), which stay off
//!   the axis edge.
//!
//! Freezing the weight keeps the element mass matrix proportional to the
//! exact P1 mass matrix, so row sums of M equal the load vector
//! ℓ_i = ∫ φ_i (1/r) exactly and the all-ones vector satisfies M·1 = ℓ to
//! rounding. The deflation of the constant mode in the torus-like solve
//! relies on that identity.

use super::linalg::Csr;
use super::{SolveError, SolveMode};
use crate::mesh2::{TriMesh, VertexTag};

/// Full-mesh forms: stiffness `k`, mass `m`, load `ell` over all vertices.
#[derive(Debug, Clone)]
pub struct Assembled {
    pub k: Csr,
    pub m: Csr,
    pub ell: Vec<f64>,
}

pub fn assemble(mesh: &TriMesh) -> Assembled {
    let nv = mesh.vertices.len();
    let mut kt: Vec<(usize, usize, f64)> = Vec::with_capacity(9 * mesh.triangles.len());
    let mut mt: Vec<(usize, usize, f64)> = Vec::with_capacity(9 * mesh.triangles.len());
    let mut ell = vec![0.0f64; nv];
    for &tri in &mesh.triangles {
        let p = [
            mesh.vertices[tri[0]],
            mesh.vertices[tri[1]],
            mesh.vertices[tri[2]],
        ];
        let area = 0.5
            * ((p[1][0] - p[0][0]) * (p[2][1] - p[0][1])
                - (p[1][1] - p[0][1]) * (p[2][0] - p[0][0]));
        debug_assert!(area > 0.0, "triangles must be counter-clockwise");
        let w = frozen_weight(&p);
        // P1 gradients: grad phi_i = (b_i, c_i) / (2A).
        let b = [p[1][1] - p[2][1], p[2][1] - p[0][1], p[0][1] - p[1][1]];
        let c = [p[2][0] - p[1][0], p[0][0] - p[2][0], p[1][0] - p[0][0]];
        for i in 0..3 {
            for j in 0..3 {
                let kij = w * (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
                kt.push((tri[i], tri[j], kij));
                let mij = w * area / 12.0 * if i == j { 2.0 } else { 1.0 };
                mt.push((tri[i], tri[j], mij));
            }
            ell[tri[i]] += w * area / 3.0;
        }
    }
    Assembled {
        k: Csr::from_triplets(nv, &mut kt),
        m: Csr::from_triplets(nv, &mut mt),
        ell,
    }
}

/// Frozen 1/r weight for one triangle (vertices counter-clockwise).
fn frozen_weight(p: &[[f64; 2]; 3]) -> f64 {
    let on_axis = [
        p[0][0] <= crate::mesh2::AXIS_TOL,
        p[1][0] <= crate::mesh2::AXIS_TOL,
        p[2][0] <= crate::mesh2::AXIS_TOL,
    ];
    match on_axis.iter().filter(|&&b| b).count() {
        0 => {
            let rc = (p[0][0] + p[1][0] + p[2][0]) / 3.0;
            1.0 / rc
        }
        1 => {
            let mids = [
                0.5 * (p[0][0] + p[1][0]),
                0.5 * (p[1][0] + p[2][0]),
                0.5 * (p[2][0] + p[0][0]),
            ];
            (1.0 / mids[0] + 1.0 / mids[1] + 1.0 / mids[2]) / 3.0
        }
        _ => {
            // Interior rule: barycentric (2/3, 1/6, 1/6) and cyclic shifts.
            let mut acc = 0.0;
            for k in 0..3 {
                let r = (4.0 * p[k][0] + p[(k + 1) % 3][0] + p[(k + 2) % 3][0]) / 6.0;
                acc += 1.0 / r;
            }
            acc / 3.0
        }
    }
}

/// Degree-of-freedom layout after applying boundary conditions.
#[derive(Debug, Clone)]
pub struct Condensed {
    pub k: Csr,
    pub m: Csr,
    pub ell: Vec<f64>,
    /// Condensed index of each mesh vertex; `None` for eliminated vertices.
    pub dof_of_vertex: Vec<Option<usize>>,
    /// Index of the collapsed boundary unknown, if the mode has one.
    pub c_index: Option<usize>,
    pub n: usize,
}

impl Condensed {
    /// Expand a condensed vector to nodal values over all mesh vertices.
    pub fn expand(&self, x: &[f64]) -> Vec<f64> {
        self.dof_of_vertex
            .iter()
            .map(|d| match d {
                Some(i) => x[*i],
                None => 0.0,
            })
            .collect()
    }

    /// Value of the collapsed boundary unknown in a condensed vector.
    pub fn boundary_constant(&self, x: &[f64]) -> f64 {
        self.c_index.map(|i| x[i]).unwrap_or(0.0)
    }
}

/// Apply the boundary treatment of `mode` to the assembled forms.
///
/// * `BallLike`: ψ = 0 on the axis and the outer boundary (simply connected
///   sections touching the axis).
/// * `TorusLike`: ψ equals one shared unknown on the outer boundary
///   (sections away from the axis); the zero-mean constraint vector is the
///   condensed load.
/// * `PlainDirichlet`: ψ = 0 on every boundary vertex. For sections away
///   from the axis this drops the boundary freedom on purpose; it is the
///   negative control for the flux-balance diagnostic.
pub fn condense(
    mesh: &TriMesh,
    forms: &Assembled,
    mode: SolveMode,
) -> Result<Condensed, SolveError> {
    let nv = mesh.vertices.len();
    let mut dof_of_vertex: Vec<Option<usize>> = vec![None; nv];
    let mut next = 0usize;
    let mut c_index = None;

    let touches_axis = mesh.has_axis_vertices();
    if mesh.hole_count() > 0 {
        return Err(SolveError::UnsupportedTopology(
            "multiply connected cross sections are not supported".into(),
        ));
    }
    match mode {
        SolveMode::BallLike => {
            if !touches_axis {
                return Err(SolveError::UnsupportedTopology(
                    "ball-like mode needs a section touching the axis".into(),
                ));
            }
            for (v, tag) in mesh.tags.iter().enumerate() {
                if *tag == VertexTag::Interior {
                    dof_of_vertex[v] = Some(next);
                    next += 1;
                }
            }
        }
        SolveMode::TorusLike => {
            if touches_axis {
                return Err(SolveError::UnsupportedTopology(
                    "torus-like mode needs a section away from the axis".into(),
                ));
            }
            for (v, tag) in mesh.tags.iter().enumerate() {
                if *tag == VertexTag::Interior {
                    dof_of_vertex[v] = Some(next);
                    next += 1;
                }
            }
            let c = next;
            next += 1;
            c_index = Some(c);
            for (v, tag) in mesh.tags.iter().enumerate() {
                if *tag == VertexTag::OuterBoundary {
                    dof_of_vertex[v] = Some(c);
                }
            }
        }
        SolveMode::PlainDirichlet => {
            for (v, tag) in mesh.tags.iter().enumerate() {
                if *tag == VertexTag::Interior {
                    dof_of_vertex[v] = Some(next);
                    next += 1;
                }
            }
        }
    }
    if next == 0 {
        return Err(SolveError::BadMesh("no free unknowns".into()));
    }

    let map = |csr: &Csr| -> Csr {
        let mut trips = Vec::new();
        for r in 0..nv {
            let Some(i) = dof_of_vertex[r] else { continue };
            for kk in csr.row_range(r) {
                let cidx = csr.cols[kk];
                if let Some(j) = dof_of_vertex[cidx] {
                    trips.push((i, j, csr.vals[kk]));
                }
            }
        }
        Csr::from_triplets(next, &mut trips)
    };
    let k = map(&forms.k);
    let m = map(&forms.m);
    let mut ell = vec![0.0f64; next];
    for v in 0..nv {
        if let Some(i) = dof_of_vertex[v] {
            ell[i] += forms.ell[v];
        }
    }
    Ok(Condensed {
        k,
        m,
        ell,
        dof_of_vertex,
        c_index,
        n: next,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh2::triangulate;
    use crate::xsection::{circle, CrossSection, MetricKind};
    use approx::assert_relative_eq;

    fn torus_mesh() -> TriMesh {
        let cs = CrossSection::new(circle([2.0, 0.0], 0.5, 64), vec![], MetricKind::Euclidean)
            .unwrap();
        triangulate(&cs, 0.08).unwrap()
    }

    #[test]
    fn mass_rows_sum_to_load() {
        // M·1 = ℓ exactly (partition of unity with frozen weights).
        let mesh = torus_mesh();
        let forms = assemble(&mesh);
        let ones = vec![1.0; mesh.vertices.len()];
        let mut m1 = vec![0.0; mesh.vertices.len()];
        forms.m.matvec(&ones, &mut m1);
        for (a, b) in m1.iter().zip(&forms.ell) {
            assert_relative_eq!(a, b, max_relative = 1e-13);
        }
    }

    #[test]
    fn stiffness_annihilates_constants() {
        let mesh = torus_mesh();
        let forms = assemble(&mesh);
        let ones = vec![1.0; mesh.vertices.len()];
        let mut k1 = vec![0.0; mesh.vertices.len()];
        forms.k.matvec(&ones, &mut k1);
        let scale = forms.k.max_diag();
        for v in &k1 {
            assert!(v.abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn mass_total_matches_weighted_area() {
        // 1ᵀM·1 = ∫(1/r) dA at the quadrature level; for a torus section the
        // exact integral of 1/r over the disc r²+z²≤a² around (R,0) is
        // 2π(R − sqrt(R² − a²)).
        let mesh = torus_mesh();
        let forms = assemble(&mesh);
        let total: f64 = forms.ell.iter().sum();
        let exact = 2.0 * std::f64::consts::PI * (2.0 - (4.0f64 - 0.25).sqrt());
        assert_relative_eq!(total, exact, max_relative = 5e-3);
    }

    #[test]
    fn assembly_scales_exactly_by_powers_of_two() {
        let mesh = torus_mesh();
        let scaled = mesh.scaled(2.0);
        let a = assemble(&mesh);
        let b = assemble(&scaled);
        // K scales by 1/s, M by s, ℓ by s for s = 2 (exact in floating
        // point for powers of two).
        for (x, y) in a.k.vals.iter().zip(&b.k.vals) {
            assert_eq!(*x * 0.5, *y);
        }
        for (x, y) in a.m.vals.iter().zip(&b.m.vals) {
            assert_eq!(*x * 2.0, *y);
        }
        for (x, y) in a.ell.iter().zip(&b.ell) {
            assert_eq!(*x * 2.0, *y);
        }
    }

    #[test]
    fn condensed_torus_has_single_boundary_dof() {
        let mesh = torus_mesh();
        let forms = assemble(&mesh);
        let cond = condense(&mesh, &forms, SolveMode::TorusLike).unwrap();
        let n_interior = mesh
            .tags
            .iter()
            .filter(|t| **t == VertexTag::Interior)
            .count();
        assert_eq!(cond.n, n_interior + 1);
        // Condensed quadratic forms agree with full ones on admissible
        // vectors (constant on the boundary).
        let x: Vec<f64> = (0..cond.n).map(|i| (i as f64 * 0.3).sin()).collect();
        let full = cond.expand(&x);
        assert_relative_eq!(
            cond.k.quadratic_form(&x),
            forms.k.quadratic_form(&full),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            cond.m.quadratic_form(&x),
            forms.m.quadratic_form(&full),
            max_relative = 1e-12
        );
    }
}
