//! Deterministic constrained Delaunay meshing.
//!
//! Point placement is explicit so that meshing is reproducible bit for bit:
//!
//! 1. each boundary curve is brought to the target edge length `h`
//!    (subdivided if coarser; resampled by arc length if much finer),
//! 2. interior candidates come from a triangular lattice with row spacing
//!    `h*sqrt(3)/2`, anchored at the bounding-box corner of the outer curve,
//!    keeping points at least `0.7*h` away from every boundary segment,
//! 3. the constrained Delaunay triangulation of those points is classified
//!    by triangle centroid against the (resampled) polygon with holes,
//! 4. interior vertices are relaxed by a few guarded Laplacian sweeps that
//!    never invert or nearly collapse a triangle.
//!
//! Every step commutes with scaling all coordinates and `h` by a power of
//! two, so meshes of scaled sections are exactly scaled meshes.

use super::{MeshError, TriMesh, VertexTag, AXIS_TOL};
use crate::xsection::{point_in_polygon, resample, CrossSection, Point};
use spade::{ConstrainedDelaunayTriangulation, Point2, Triangulation};

/// Mesh the cross section with target edge length `h`.
pub fn triangulate(cs: &CrossSection, h: f64) -> Result<TriMesh, MeshError> {
    if !h.is_finite() || h <= 0.0 {
        return Err(MeshError::InvalidH(h));
    }
    let (outer_ext, _) = bbox(cs.outer());
    if outer_ext[0] < 2.0 * h && outer_ext[1] < 2.0 * h {
        return Err(MeshError::DomainTooSmall { h });
    }
    for (k, hole) in cs.holes().iter().enumerate() {
        let (ext, _) = bbox(hole);
        if ext[0].min(ext[1]) < 2.0 * h {
            return Err(MeshError::HoleTooSmall { hole: k, h });
        }
    }

    // Bring every curve near the target spacing. These polylines are both
    // the constraint edges and the classification polygon.
    let mut curves: Vec<Vec<Point>> = Vec::with_capacity(1 + cs.holes().len());
    curves.push(prepare_curve(cs.outer(), h)?);
    for hole in cs.holes() {
        curves.push(prepare_curve(hole, h)?);
    }

    let mut points: Vec<Point> = Vec::new();
    for c in &curves {
        points.extend_from_slice(c);
    }
    let n_boundary_per_curve: Vec<usize> = curves.iter().map(|c| c.len()).collect();
    let n_boundary: usize = n_boundary_per_curve.iter().sum();

    points.extend(lattice_points(&curves, h));
    if points.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(MeshError::NonFinite);
    }

    // Constrained Delaunay triangulation of the fixed point set.
    let mut cdt: ConstrainedDelaunayTriangulation<Point2<f64>> =
        ConstrainedDelaunayTriangulation::new();
    let mut handles = Vec::with_capacity(points.len());
    for p in &points {
        let handle = cdt
            .insert(Point2::new(p[0], p[1]))
            .map_err(|_| MeshError::NonFinite)?;
        handles.push(handle);
    }
    let mut offset = 0;
    for n in &n_boundary_per_curve {
        for i in 0..*n {
            let a = handles[offset + i];
            let b = handles[offset + (i + 1) % n];
            cdt.add_constraint(a, b);
        }
        offset += n;
    }

    // Keep faces whose centroid lies inside the section. Exactly collinear
    // boundary points (e.g. edge midpoints from resampling) can leave
    // zero-area sliver faces hugging the boundary; those are dropped by a
    // scale-free degeneracy test so assembly only ever sees triangles of
    // genuinely positive area.
    let mut raw_triangles: Vec<[usize; 3]> = Vec::new();
    for face in cdt.inner_faces() {
        let vs = face.vertices();
        let idx = [vs[0].fix().index(), vs[1].fix().index(), vs[2].fix().index()];
        let (p0, p1, p2) = (points[idx[0]], points[idx[1]], points[idx[2]]);
        let area2 = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]);
        let edge2 = [(p1, p0), (p2, p1), (p0, p2)]
            .iter()
            .map(|(a, b)| (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2))
            .fold(0.0f64, f64::max);
        if area2 <= 2e-14 * edge2 {
            continue;
        }
        let c = [
            (p0[0] + p1[0] + p2[0]) / 3.0,
            (p0[1] + p1[1] + p2[1]) / 3.0,
        ];
        if point_in_polygon(c, &curves[0])
            && curves[1..].iter().all(|hole| !point_in_polygon(c, hole))
        {
            raw_triangles.push(idx);
        }
    }
    if raw_triangles.is_empty() {
        return Err(MeshError::Empty);
    }

    // Compact vertex indices (kept in original order: boundary first, then
    // lattice) and assign tags by origin.
    let mut used = vec![false; points.len()];
    for t in &raw_triangles {
        for &v in t {
            used[v] = true;
        }
    }
    let mut remap = vec![usize::MAX; points.len()];
    let mut vertices = Vec::new();
    let mut tags = Vec::new();
    for (old, p) in points.iter().enumerate() {
        if !used[old] {
            continue;
        }
        remap[old] = vertices.len();
        vertices.push(*p);
        tags.push(tag_for(old, p, &n_boundary_per_curve, n_boundary));
    }
    let mut triangles: Vec<[usize; 3]> = raw_triangles
        .iter()
        .map(|t| canonical([remap[t[0]], remap[t[1]], remap[t[2]]]))
        .collect();
    triangles.sort_unstable();

    let mut mesh = TriMesh {
        vertices,
        triangles,
        tags,
        h,
    };
    smooth(&mut mesh, 2);
    Ok(mesh)
}

fn tag_for(old: usize, p: &Point, per_curve: &[usize], n_boundary: usize) -> VertexTag {
    if old >= n_boundary {
        return VertexTag::Interior;
    }
    if p[0] <= AXIS_TOL {
        return VertexTag::Axis;
    }
    let mut offset = 0;
    for (curve, n) in per_curve.iter().enumerate() {
        if old < offset + n {
            return if curve == 0 {
                VertexTag::OuterBoundary
            } else {
                VertexTag::HoleBoundary(curve - 1)
            };
        }
        offset += n;
    }
    unreachable!("boundary index out of range")
}

/// Rotate a triangle so the smallest index comes first, keeping orientation.
fn canonical(t: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&k| t[k]).unwrap();
    [t[k], t[(k + 1) % 3], t[(k + 2) % 3]]
}

fn bbox(poly: &[Point]) -> ([f64; 2], ([f64; 2], [f64; 2])) {
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for p in poly {
        for k in 0..2 {
            min[k] = min[k].min(p[k]);
            max[k] = max[k].max(p[k]);
        }
    }
    ([max[0] - min[0], max[1] - min[1]], (min, max))
}

/// Subdivide a coarse curve at spacing `h`; resample a much finer curve by
/// uniform arc length so boundary and interior resolution stay comparable.
fn prepare_curve(poly: &[Point], h: f64) -> Result<Vec<Point>, MeshError> {
    let n = poly.len();
    let mut edges: Vec<f64> = (0..n)
        .map(|i| {
            let a = poly[i];
            let b = poly[(i + 1) % n];
            ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
        })
        .collect();
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = edges[n / 2];
    if median < 0.5 * h {
        Ok(uniform_walk(poly, h))
    } else {
        Ok(resample(poly, h)?)
    }
}

/// Place points at uniform arc length along the closed polyline, spacing as
/// close to `h` as divides the total length evenly.
fn uniform_walk(poly: &[Point], h: f64) -> Vec<Point> {
    let n = poly.len();
    let mut cum = Vec::with_capacity(n + 1);
    cum.push(0.0);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let l = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
        cum.push(cum[i] + l);
    }
    let total = *cum.last().unwrap();
    let m = (total / h).ceil().max(3.0) as usize;
    let spacing = total / m as f64;
    let mut out = Vec::with_capacity(m);
    let mut seg = 0;
    for k in 0..m {
        let target = spacing * k as f64;
        while seg + 1 < n && cum[seg + 1] <= target {
            seg += 1;
        }
        let a = poly[seg];
        let b = poly[(seg + 1) % n];
        let len = cum[seg + 1] - cum[seg];
        let t = if len > 0.0 { (target - cum[seg]) / len } else { 0.0 };
        out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
    }
    out
}

/// Triangular lattice candidates inside the section, clear of the boundary.
fn lattice_points(curves: &[Vec<Point>], h: f64) -> Vec<Point> {
    let (_, (min, max)) = bbox(&curves[0]);
    let dy = h * 3.0_f64.sqrt() / 2.0;
    let standoff2 = (0.7 * h) * (0.7 * h);
    let mut out = Vec::new();
    let mut j: usize = 1;
    loop {
        let z = min[1] + j as f64 * dy;
        if z >= max[1] {
            break;
        }
        let shift = if j % 2 == 1 { 0.5 * h } else { 0.0 };
        let mut i: usize = 0;
        loop {
            let r = min[0] + shift + i as f64 * h;
            if r >= max[0] {
                break;
            }
            let p = [r, z];
            let inside = point_in_polygon(p, &curves[0])
                && curves[1..].iter().all(|hole| !point_in_polygon(p, hole));
            if inside && min_boundary_dist2(p, curves) >= standoff2 {
                out.push(p);
            }
            i += 1;
        }
        j += 1;
    }
    out
}

fn min_boundary_dist2(p: Point, curves: &[Vec<Point>]) -> f64 {
    let mut best = f64::INFINITY;
    for c in curves {
        let n = c.len();
        for i in 0..n {
            best = best.min(segment_dist2(p, c[i], c[(i + 1) % n]));
        }
    }
    best
}

fn segment_dist2(p: Point, a: Point, b: Point) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let w = [p[0] - a[0], p[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 > 0.0 {
        ((w[0] * d[0] + w[1] * d[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let e = [w[0] - t * d[0], w[1] - t * d[1]];
    e[0] * e[0] + e[1] * e[1]
}

/// Guarded Laplacian smoothing of interior vertices. A vertex moves to the
/// average of its neighbours only if every incident triangle keeps at least
/// a quarter of its current area, so smoothing can never fold the mesh.
fn smooth(mesh: &mut TriMesh, sweeps: usize) {
    let nv = mesh.vertices.len();
    let mut neighbours: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); nv];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (ti, &[a, b, c]) in mesh.triangles.iter().enumerate() {
        for (u, v) in [(a, b), (b, c), (c, a)] {
            neighbours[u].insert(v);
            neighbours[v].insert(u);
        }
        for v in [a, b, c] {
            incident[v].push(ti);
        }
    }
    for _ in 0..sweeps {
        for v in 0..nv {
            if mesh.tags[v] != VertexTag::Interior || neighbours[v].is_empty() {
                continue;
            }
            let mut avg = [0.0, 0.0];
            for &u in &neighbours[v] {
                avg[0] += mesh.vertices[u][0];
                avg[1] += mesh.vertices[u][1];
            }
            let deg = neighbours[v].len() as f64;
            let candidate = [avg[0] / deg, avg[1] / deg];
            let ok = incident[v].iter().all(|&ti| {
                let t = mesh.triangles[ti];
                let before = tri_area_with(mesh, t, v, mesh.vertices[v]);
                let after = tri_area_with(mesh, t, v, candidate);
                after > 0.25 * before
            });
            if ok {
                mesh.vertices[v] = candidate;
            }
        }
    }
}

fn tri_area_with(mesh: &TriMesh, t: [usize; 3], replace: usize, p: Point) -> f64 {
    let pos = |v: usize| if v == replace { p } else { mesh.vertices[v] };
    let (a, b, c) = (pos(t[0]), pos(t[1]), pos(t[2]));
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
}
