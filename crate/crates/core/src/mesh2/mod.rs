//! Triangular meshes of meridional cross sections.
//!
//! Meshing is fully deterministic: boundary polylines are subdivided to the
//! target edge length, interior points come from a fixed triangular lattice,
//! and the constrained Delaunay triangulation of that point set is classified
//! against the input polygon. Every construction step commutes with scaling
//! coordinates by a power of two, which keeps scaled solves exactly scaled.

mod io;
mod triangulate;

pub use io::{mesh_from_text, mesh_svg, mesh_to_text};
pub use triangulate::triangulate;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("target edge length must be positive, got {0}")]
    InvalidH(f64),
    #[error("h = {h} is too large to resolve hole {hole}")]
    HoleTooSmall { hole: usize, h: f64 },
    #[error("h = {h} is too large for the outer curve")]
    DomainTooSmall { h: f64 },
    #[error("triangulation produced no interior triangles")]
    Empty,
    #[error("non-finite coordinate in input")]
    NonFinite,
    #[error("mesh file is malformed: {0}")]
    BadFormat(String),
    #[error(transparent)]
    Geometry(#[from] crate::xsection::GeometryError),
}

/// Classification of a mesh vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexTag {
    Interior,
    OuterBoundary,
    HoleBoundary(usize),
    Axis,
}

/// Radius below which a vertex counts as lying on the symmetry axis.
pub const AXIS_TOL: f64 = 1e-12;

/// Triangle mesh of a cross section. Triangles are counter-clockwise index
/// triples into `vertices`.
#[derive(Debug, Clone)]
pub struct TriMesh {
    pub vertices: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub tags: Vec<VertexTag>,
    /// Target edge length the mesh was built for.
    pub h: f64,
}

impl TriMesh {
    /// Sum of triangle areas. Equals the polygon area of the meshed section
    /// up to rounding because the boundary is respected exactly.
    pub fn area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| self.tri_area(*t))
            .sum::<f64>()
    }

    fn tri_area(&self, [a, b, c]: [usize; 3]) -> f64 {
        let pa = self.vertices[a];
        let pb = self.vertices[b];
        let pc = self.vertices[c];
        0.5 * ((pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0]))
    }

    /// Volume of the solid of revolution, via the exact integral of r over
    /// each triangle (area times centroid radius).
    pub fn revolved_volume(&self) -> f64 {
        let mut acc = 0.0;
        for &[a, b, c] in &self.triangles {
            let r = (self.vertices[a][0] + self.vertices[b][0] + self.vertices[c][0]) / 3.0;
            acc += self.tri_area([a, b, c]) * r;
        }
        2.0 * std::f64::consts::PI * acc
    }

    /// Smallest interior angle over all triangles, in degrees.
    pub fn min_angle_deg(&self) -> f64 {
        let mut min = f64::INFINITY;
        for &[a, b, c] in &self.triangles {
            let p = [self.vertices[a], self.vertices[b], self.vertices[c]];
            for k in 0..3 {
                let u = sub(p[(k + 1) % 3], p[k]);
                let v = sub(p[(k + 2) % 3], p[k]);
                let dot = u[0] * v[0] + u[1] * v[1];
                let nu = (u[0] * u[0] + u[1] * u[1]).sqrt();
                let nv = (v[0] * v[0] + v[1] * v[1]).sqrt();
                let ang = (dot / (nu * nv)).clamp(-1.0, 1.0).acos();
                min = min.min(ang);
            }
        }
        min.to_degrees()
    }

    /// Scale all coordinates (and the stored target length) by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        TriMesh {
            vertices: self.vertices.iter().map(|&[r, z]| [s * r, s * z]).collect(),
            triangles: self.triangles.clone(),
            tags: self.tags.clone(),
            h: self.h * s,
        }
    }

    /// Number of hole boundary curves present in the tags.
    pub fn hole_count(&self) -> usize {
        self.tags
            .iter()
            .filter_map(|t| match t {
                VertexTag::HoleBoundary(k) => Some(k + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn has_axis_vertices(&self) -> bool {
        self.tags.iter().any(|t| *t == VertexTag::Axis)
    }

    /// Ordered boundary cycles with outward normals.
    ///
    /// Axis edges (both endpoints on the axis) belong to the revolved solid's
    /// interior, not its surface, so they are reported separately from the
    /// outer cycle.
    pub fn boundary_trace(&self) -> BoundaryTrace {
        use std::collections::BTreeMap;
        // Directed boundary edges: an undirected edge used by exactly one
        // triangle, kept in that triangle's orientation (interior on the
        // left).
        let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &[a, b, c] in &self.triangles {
            for (u, v) in [(a, b), (b, c), (c, a)] {
                *count.entry((u.min(v), u.max(v))).or_insert(0) += 1;
            }
        }
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for &[a, b, c] in &self.triangles {
            for (u, v) in [(a, b), (b, c), (c, a)] {
                if count[&(u.min(v), u.max(v))] == 1 {
                    next.insert(u, v);
                }
            }
        }
        let mut visited: std::collections::BTreeSet<usize> = Default::default();
        let mut cycles: Vec<Vec<BoundaryEdge>> = Vec::new();
        let starts: Vec<usize> = next.keys().cloned().collect();
        for &start in &starts {
            if visited.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut u = start;
            loop {
                visited.insert(u);
                let v = next[&u];
                cycle.push(self.make_edge(u, v));
                u = v;
                if u == start {
                    break;
                }
            }
            cycles.push(cycle);
        }

        let mut outer = Vec::new();
        let mut axis = Vec::new();
        let mut holes: Vec<Vec<BoundaryEdge>> = vec![Vec::new(); self.hole_count()];
        let mut closure_defects = Vec::new();
        for cycle in cycles {
            let mut defect = [0.0f64; 2];
            for e in &cycle {
                defect[0] += e.normal[0] * e.length;
                defect[1] += e.normal[1] * e.length;
            }
            closure_defects.push((defect[0] * defect[0] + defect[1] * defect[1]).sqrt());
            let hole_id = cycle.iter().find_map(|e| match self.tags[e.a] {
                VertexTag::HoleBoundary(k) => Some(k),
                _ => None,
            });
            if let Some(k) = hole_id {
                holes[k] = cycle;
            } else {
                for e in cycle {
                    let on_axis = self.tags[e.a] == VertexTag::Axis
                        && self.tags[e.b] == VertexTag::Axis;
                    if on_axis {
                        axis.push(e);
                    } else {
                        outer.push(e);
                    }
                }
            }
        }
        BoundaryTrace {
            outer,
            axis,
            holes,
            closure_defects,
        }
    }

    fn make_edge(&self, a: usize, b: usize) -> BoundaryEdge {
        let pa = self.vertices[a];
        let pb = self.vertices[b];
        let d = sub(pb, pa);
        let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
        // Interior lies left of a->b, so the outward normal is the right
        // normal.
        BoundaryEdge {
            a,
            b,
            length: len,
            normal: [d[1] / len, -d[0] / len],
        }
    }
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// One directed boundary edge with its outward unit normal.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryEdge {
    pub a: usize,
    pub b: usize,
    pub length: f64,
    pub normal: [f64; 2],
}

impl BoundaryEdge {
    pub fn midpoint(&self, mesh: &TriMesh) -> [f64; 2] {
        let pa = mesh.vertices[self.a];
        let pb = mesh.vertices[self.b];
        [0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])]
    }
}

/// Boundary of a mesh grouped by owning curve, each group in cycle order.
#[derive(Debug, Clone)]
pub struct BoundaryTrace {
    pub outer: Vec<BoundaryEdge>,
    pub axis: Vec<BoundaryEdge>,
    pub holes: Vec<Vec<BoundaryEdge>>,
    /// Norm of the summed normal-times-length per closed cycle; zero for a
    /// watertight boundary.
    pub closure_defects: Vec<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xsection::{circle, CrossSection, MetricKind};
    use approx::assert_relative_eq;

    fn euclid(outer: Vec<[f64; 2]>, holes: Vec<Vec<[f64; 2]>>) -> CrossSection {
        CrossSection::new(outer, holes, MetricKind::Euclidean).unwrap()
    }

    fn rect_cs(r0: f64, r1: f64, z0: f64, z1: f64) -> CrossSection {
        euclid(vec![[r0, z0], [r1, z0], [r1, z1], [r0, z1]], vec![])
    }

    pub(crate) fn half_disc(spacing: f64) -> CrossSection {
        // Radius-1 half disc touching the axis; arc sampled near `spacing`.
        let n = (std::f64::consts::PI / spacing).ceil() as usize;
        let mut pts: Vec<[f64; 2]> = Vec::new();
        pts.push([0.0, -1.0]);
        for k in 1..n {
            let t = -std::f64::consts::FRAC_PI_2
                + std::f64::consts::PI * k as f64 / n as f64;
            pts.push([t.cos(), t.sin()]);
        }
        pts.push([0.0, 1.0]);
        euclid(pts, vec![])
    }

    #[test]
    fn rect_mesh_exact_area_and_volume() {
        let mesh = triangulate(&rect_cs(1.0, 2.0, 0.0, 1.0), 0.25).unwrap();
        assert_relative_eq!(mesh.area(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(
            mesh.revolved_volume(),
            3.0 * std::f64::consts::PI,
            max_relative = 1e-12
        );
        assert!(mesh.min_angle_deg() >= 20.0);
    }

    #[test]
    fn circle_mesh_area() {
        let cs = euclid(circle([3.0, 0.0], 1.0, 512), vec![]);
        let mesh = triangulate(&cs, 0.05).unwrap();
        assert_relative_eq!(mesh.area(), std::f64::consts::PI, max_relative = 2e-3);
        assert!(mesh.min_angle_deg() >= 20.0, "{}", mesh.min_angle_deg());
    }

    #[test]
    fn half_disc_volume_and_axis_tags() {
        let mesh = triangulate(&half_disc(0.02), 0.02).unwrap();
        assert_relative_eq!(
            mesh.revolved_volume(),
            4.0 * std::f64::consts::PI / 3.0,
            max_relative = 5e-3
        );
        assert!(mesh.has_axis_vertices());
        for (v, t) in mesh.vertices.iter().zip(&mesh.tags) {
            if *t == VertexTag::Axis {
                assert!(v[0] <= AXIS_TOL);
            } else {
                assert!(v[0] > 0.0);
            }
        }
    }

    #[test]
    fn volume_converges_at_second_order() {
        let exact = 4.0 * std::f64::consts::PI / 3.0;
        let mut errs = Vec::new();
        for h in [0.08, 0.04, 0.02] {
            let mesh = triangulate(&half_disc(h), h).unwrap();
            errs.push((mesh.revolved_volume() - exact).abs());
        }
        let order = ((errs[0] / errs[2]).log2()) / 2.0;
        assert!(order >= 1.8, "volume convergence order {order}, errs {errs:?}");
    }

    #[test]
    fn scaling_volume_exact() {
        let cs = euclid(circle([2.0, 0.0], 0.5, 128), vec![]);
        let mesh = triangulate(&cs, 0.05).unwrap();
        let scaled = mesh.scaled(2.0);
        assert_relative_eq!(
            scaled.revolved_volume(),
            8.0 * mesh.revolved_volume(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn triangulate_commutes_with_power_of_two_scaling() {
        let cs = euclid(circle([2.0, 0.0], 0.5, 128), vec![]);
        let fine = triangulate(&cs, 0.05).unwrap();
        let scaled = triangulate(&cs.scaled(2.0), 0.1).unwrap();
        assert_eq!(fine.triangles, scaled.triangles);
        for (a, b) in fine.vertices.iter().zip(&scaled.vertices) {
            assert_eq!(a[0] * 2.0, b[0]);
            assert_eq!(a[1] * 2.0, b[1]);
        }
    }

    #[test]
    fn determinism_bit_for_bit() {
        let cs = euclid(
            circle([3.0, 0.0], 1.0, 256),
            vec![circle([3.0, 0.0], 0.4, 128)],
        );
        let a = triangulate(&cs, 0.05).unwrap();
        let b = triangulate(&cs, 0.05).unwrap();
        assert_eq!(a.vertices, b.vertices);
        assert_eq!(a.triangles, b.triangles);
    }

    #[test]
    fn boundary_trace_closes_and_separates_axis() {
        let mesh = triangulate(&half_disc(0.05), 0.05).unwrap();
        let trace = mesh.boundary_trace();
        assert!(!trace.axis.is_empty());
        assert!(!trace.outer.is_empty());
        for e in &trace.outer {
            assert!(
                mesh.tags[e.a] != VertexTag::Axis || mesh.tags[e.b] != VertexTag::Axis
            );
        }
        for d in &trace.closure_defects {
            assert!(*d < 1e-12, "closure defect {d}");
        }
        // Outward normals: moving along a normal from an edge midpoint must
        // leave the section.
        let cs = half_disc(0.05);
        for e in trace.outer.iter().step_by(7) {
            let m = e.midpoint(&mesh);
            let outside = [m[0] + 1e-3 * e.normal[0], m[1] + 1e-3 * e.normal[1]];
            assert!(!crate::xsection::point_in_polygon(outside, cs.outer()));
        }
    }

    #[test]
    fn annulus_trace_has_hole_cycle() {
        // Sampled near the target h so no coarsening happens and the mesh
        // covers the polygon exactly.
        let cs = euclid(
            circle([3.0, 0.0], 1.0, 128),
            vec![circle([3.0, 0.0], 0.4, 64)],
        );
        let mesh = triangulate(&cs, 0.05).unwrap();
        let trace = mesh.boundary_trace();
        assert_eq!(trace.holes.len(), 1);
        assert!(!trace.holes[0].is_empty());
        assert!(trace.axis.is_empty());
        assert_relative_eq!(mesh.area(), cs.area(), max_relative = 1e-12);
        // Hole cycle normals point into the hole (outward from the section).
        let e = trace.holes[0][0];
        let m = e.midpoint(&mesh);
        let probe = [m[0] + 1e-4 * e.normal[0], m[1] + 1e-4 * e.normal[1]];
        assert!(crate::xsection::point_in_polygon(probe, &cs.holes()[0]));
    }

    #[test]
    fn hole_too_small_for_h() {
        let cs = euclid(
            circle([3.0, 0.0], 1.0, 256),
            vec![circle([3.0, 0.0], 0.1, 64)],
        );
        assert!(matches!(
            triangulate(&cs, 0.4),
            Err(MeshError::HoleTooSmall { hole: 0, .. })
        ));
        assert!(matches!(
            triangulate(&cs, -0.1),
            Err(MeshError::InvalidH(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let mesh = triangulate(&rect_cs(1.0, 2.0, 0.0, 1.0), 0.25).unwrap();
        let text = mesh_to_text(&mesh);
        let back = mesh_from_text(&text).unwrap();
        assert_eq!(back.vertices, mesh.vertices);
        assert_eq!(back.triangles, mesh.triangles);
        assert_eq!(back.tags, mesh.tags);
        assert_eq!(back.h, mesh.h);
        assert!(mesh_svg(&mesh).starts_with("<svg"));
    }
}
