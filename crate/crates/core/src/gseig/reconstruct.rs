//! Evaluation of the stream function and its vector field off the mesh.
//!
//! From ψ the axisymmetric field is, in cylindrical components,
//!
//! ```text
//! X = (X_r, X_φ, X_z) = (−ψ_z / r,  λ ψ / r,  ψ_r / r),
//! ```
//!
//! which is the curl eigenfield when ψ solves the stream-function problem.
//! Piecewise-linear ψ has piecewise-constant raw gradients; an area-weighted
//! nodal average (recovered gradient) restores one extra order of accuracy
//! at interior points, enough for finite-difference curl checks to resolve
//! the eigenvalue relation. On the axis the components degenerate to the
//! limit X = (0, 0, 2a(z)) with ψ ≈ a(z) r²; near-axis queries use that
//! limit with a(z) estimated from the containing triangle's centroid.

use crate::mesh2::TriMesh;

/// Point-locating interpolator for one nodal field on a mesh.
pub struct FieldSampler<'a> {
    mesh: &'a TriMesh,
    psi: &'a [f64],
    pub lambda: f64,
    /// Recovered (area-averaged) gradient per vertex.
    grads: Vec<[f64; 2]>,
    grid: Grid,
}

struct Grid {
    min: [f64; 2],
    cell: f64,
    nx: usize,
    ny: usize,
    bins: Vec<Vec<u32>>,
}

impl Grid {
    fn build(mesh: &TriMesh) -> Grid {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for v in &mesh.vertices {
            for k in 0..2 {
                min[k] = min[k].min(v[k]);
                max[k] = max[k].max(v[k]);
            }
        }
        let cell = (2.0 * mesh.h).max(1e-12);
        let nx = (((max[0] - min[0]) / cell).floor() as usize + 1).max(1);
        let ny = (((max[1] - min[1]) / cell).floor() as usize + 1).max(1);
        let mut bins = vec![Vec::new(); nx * ny];
        for (ti, tri) in mesh.triangles.iter().enumerate() {
            let mut tmin = [f64::INFINITY; 2];
            let mut tmax = [f64::NEG_INFINITY; 2];
            for &v in tri {
                for k in 0..2 {
                    tmin[k] = tmin[k].min(mesh.vertices[v][k]);
                    tmax[k] = tmax[k].max(mesh.vertices[v][k]);
                }
            }
            let (x0, y0) = Grid::cell_of(min, cell, nx, ny, tmin);
            let (x1, y1) = Grid::cell_of(min, cell, nx, ny, tmax);
            for x in x0..=x1 {
                for y in y0..=y1 {
                    bins[y * nx + x].push(ti as u32);
                }
            }
        }
        Grid {
            min,
            cell,
            nx,
            ny,
            bins,
        }
    }

    fn cell_of(min: [f64; 2], cell: f64, nx: usize, ny: usize, p: [f64; 2]) -> (usize, usize) {
        let x = (((p[0] - min[0]) / cell).floor().max(0.0) as usize).min(nx - 1);
        let y = (((p[1] - min[1]) / cell).floor().max(0.0) as usize).min(ny - 1);
        (x, y)
    }

    fn candidates(&self, p: [f64; 2]) -> &[u32] {
        let (x, y) = Grid::cell_of(self.min, self.cell, self.nx, self.ny, p);
        &self.bins[y * self.nx + x]
    }
}

impl<'a> FieldSampler<'a> {
    pub fn new(mesh: &'a TriMesh, psi: &'a [f64], lambda: f64) -> Self {
        assert_eq!(mesh.vertices.len(), psi.len());
        let mut grads = vec![[0.0f64; 2]; mesh.vertices.len()];
        let mut weights = vec![0.0f64; mesh.vertices.len()];
        for tri in &mesh.triangles {
            let (g, area) = tri_gradient(mesh, psi, *tri);
            for &v in tri {
                grads[v][0] += area * g[0];
                grads[v][1] += area * g[1];
                weights[v] += area;
            }
        }
        for (g, w) in grads.iter_mut().zip(&weights) {
            if *w > 0.0 {
                g[0] /= w;
                g[1] /= w;
            }
        }
        FieldSampler {
            mesh,
            psi,
            lambda,
            grads,
            grid: Grid::build(mesh),
        }
    }

    /// Containing triangle and barycentric coordinates, if any.
    fn locate(&self, p: [f64; 2]) -> Option<(usize, [f64; 3])> {
        let mut best: Option<(usize, [f64; 3], f64)> = None;
        for &ti in self.grid.candidates(p) {
            let tri = self.mesh.triangles[ti as usize];
            if let Some((bc, slack)) = barycentric(self.mesh, tri, p) {
                match &best {
                    Some((_, _, s)) if *s >= slack => {}
                    _ => best = Some((ti as usize, bc, slack)),
                }
            }
        }
        best.map(|(ti, bc, _)| (ti, bc))
    }

    /// Interpolated stream function.
    pub fn psi_at(&self, p: [f64; 2]) -> Option<f64> {
        let (ti, bc) = self.locate(p)?;
        let tri = self.mesh.triangles[ti];
        Some(bc[0] * self.psi[tri[0]] + bc[1] * self.psi[tri[1]] + bc[2] * self.psi[tri[2]])
    }

    /// Recovered gradient, interpolated linearly from nodal averages.
    pub fn grad_at(&self, p: [f64; 2]) -> Option<[f64; 2]> {
        let (ti, bc) = self.locate(p)?;
        let tri = self.mesh.triangles[ti];
        let mut g = [0.0f64; 2];
        for (w, &v) in bc.iter().zip(&tri) {
            g[0] += w * self.grads[v][0];
            g[1] += w * self.grads[v][1];
        }
        Some(g)
    }

    /// Cylindrical components (X_r, X_φ, X_z) at a meridional point.
    pub fn field_cyl(&self, p: [f64; 2]) -> Option<[f64; 3]> {
        let r = p[0];
        if r < 0.5 * self.mesh.h {
            // Axis limit: ψ ≈ a(z) r² gives X → (0, 0, 2a). Estimate a from
            // the centroid of the triangle containing the query.
            let (ti, _) = self.locate(p)?;
            let tri = self.mesh.triangles[ti];
            let c = centroid(self.mesh, tri);
            let pc = (self.psi[tri[0]] + self.psi[tri[1]] + self.psi[tri[2]]) / 3.0;
            if c[0] <= 0.0 {
                return None;
            }
            return Some([0.0, 0.0, 2.0 * pc / (c[0] * c[0])]);
        }
        let psi = self.psi_at(p)?;
        let g = self.grad_at(p)?;
        Some([-g[1] / r, self.lambda * psi / r, g[0] / r])
    }

    /// Cartesian components at a 3D point (axis of revolution = z).
    pub fn field_cart(&self, x: [f64; 3]) -> Option<[f64; 3]> {
        let r = (x[0] * x[0] + x[1] * x[1]).sqrt();
        let cyl = self.field_cyl([r, x[2]])?;
        if r < 0.5 * self.mesh.h {
            return Some([0.0, 0.0, cyl[2]]);
        }
        let (c, s) = (x[0] / r, x[1] / r);
        Some([
            cyl[0] * c - cyl[1] * s,
            cyl[0] * s + cyl[1] * c,
            cyl[2],
        ])
    }
}

fn tri_gradient(mesh: &TriMesh, psi: &[f64], tri: [usize; 3]) -> ([f64; 2], f64) {
    let p = [
        mesh.vertices[tri[0]],
        mesh.vertices[tri[1]],
        mesh.vertices[tri[2]],
    ];
    let area = 0.5
        * ((p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[1][1] - p[0][1]) * (p[2][0] - p[0][0]));
    let b = [p[1][1] - p[2][1], p[2][1] - p[0][1], p[0][1] - p[1][1]];
    let c = [p[2][0] - p[1][0], p[0][0] - p[2][0], p[1][0] - p[0][0]];
    let mut g = [0.0f64; 2];
    for i in 0..3 {
        g[0] += psi[tri[i]] * b[i] / (2.0 * area);
        g[1] += psi[tri[i]] * c[i] / (2.0 * area);
    }
    (g, area)
}

fn centroid(mesh: &TriMesh, tri: [usize; 3]) -> [f64; 2] {
    let p = [
        mesh.vertices[tri[0]],
        mesh.vertices[tri[1]],
        mesh.vertices[tri[2]],
    ];
    [
        (p[0][0] + p[1][0] + p[2][0]) / 3.0,
        (p[0][1] + p[1][1] + p[2][1]) / 3.0,
    ]
}

/// Barycentric coordinates if `p` lies in `tri` (small negative slack is
/// tolerated and reported so boundary queries pick the best triangle).
fn barycentric(mesh: &TriMesh, tri: [usize; 3], p: [f64; 2]) -> Option<([f64; 3], f64)> {
    let a = mesh.vertices[tri[0]];
    let b = mesh.vertices[tri[1]];
    let c = mesh.vertices[tri[2]];
    let det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    if det <= 0.0 {
        return None;
    }
    let l1 = ((b[0] - p[0]) * (c[1] - p[1]) - (b[1] - p[1]) * (c[0] - p[0])) / det;
    let l2 = ((c[0] - p[0]) * (a[1] - p[1]) - (c[1] - p[1]) * (a[0] - p[0])) / det;
    let l3 = 1.0 - l1 - l2;
    let slack = l1.min(l2).min(l3);
    if slack >= -1e-9 {
        Some(([l1, l2, l3], slack))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh2::triangulate;
    use crate::xsection::{circle, CrossSection, MetricKind};
    use approx::assert_relative_eq;

    fn torus_sampler_mesh() -> TriMesh {
        let cs = CrossSection::new(circle([2.0, 0.0], 0.5, 96), vec![], MetricKind::Euclidean)
            .unwrap();
        triangulate(&cs, 0.04).unwrap()
    }

    #[test]
    fn linear_fields_are_reproduced_exactly() {
        // ψ = 1 + 2r − 3z is linear, so interpolation and recovered
        // gradients are exact away from nothing (no axis in this mesh).
        let mesh = torus_sampler_mesh();
        let psi: Vec<f64> = mesh
            .vertices
            .iter()
            .map(|&[r, z]| 1.0 + 2.0 * r - 3.0 * z)
            .collect();
        let s = FieldSampler::new(&mesh, &psi, 1.0);
        for p in [[2.0, 0.0], [1.8, 0.2], [2.3, -0.1]] {
            assert_relative_eq!(s.psi_at(p).unwrap(), 1.0 + 2.0 * p[0] - 3.0 * p[1], max_relative = 1e-12);
            let g = s.grad_at(p).unwrap();
            assert_relative_eq!(g[0], 2.0, max_relative = 1e-10);
            assert_relative_eq!(g[1], -3.0, max_relative = 1e-10);
        }
        assert!(s.psi_at([5.0, 5.0]).is_none());
    }

    #[test]
    fn field_components_follow_stream_function() {
        let mesh = torus_sampler_mesh();
        let psi: Vec<f64> = mesh
            .vertices
            .iter()
            .map(|&[r, z]| 1.0 + 2.0 * r - 3.0 * z)
            .collect();
        let lambda = 4.0;
        let s = FieldSampler::new(&mesh, &psi, lambda);
        let p = [2.1, 0.1];
        let f = s.field_cyl(p).unwrap();
        let psi_p = 1.0 + 2.0 * p[0] - 3.0 * p[1];
        assert_relative_eq!(f[0], 3.0 / p[0], max_relative = 1e-9);
        assert_relative_eq!(f[1], lambda * psi_p / p[0], max_relative = 1e-9);
        assert_relative_eq!(f[2], 2.0 / p[0], max_relative = 1e-9);
        // Cartesian rotation at azimuth 90° maps ê_r to ê_y.
        let cart = s.field_cart([0.0, p[0], p[1]]).unwrap();
        assert_relative_eq!(cart[1], f[0], max_relative = 1e-9);
        assert_relative_eq!(cart[0], -f[1], max_relative = 1e-9);
        assert_relative_eq!(cart[2], f[2], max_relative = 1e-9);
    }
}
