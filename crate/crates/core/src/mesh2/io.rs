//! Line-oriented mesh text format and an SVG preview.
//!
//! The text format round-trips exactly: floats are written with Rust's
//! shortest round-trip formatting.
//!
//! ```text
//! trimesh 1
//! <n_vertices> <n_triangles> <h>
//! <r> <z> <tag>        one line per vertex; tag: i | o | a | h<k>
//! <a> <b> <c>          one line per triangle
//! ```

use super::{MeshError, TriMesh, VertexTag};
use crate::plot;

pub fn mesh_to_text(mesh: &TriMesh) -> String {
    let mut out = String::new();
    out.push_str("trimesh 1\n");
    out.push_str(&format!(
        "{} {} {}\n",
        mesh.vertices.len(),
        mesh.triangles.len(),
        mesh.h
    ));
    for (v, tag) in mesh.vertices.iter().zip(&mesh.tags) {
        let t = match tag {
            VertexTag::Interior => "i".to_string(),
            VertexTag::OuterBoundary => "o".to_string(),
            VertexTag::Axis => "a".to_string(),
            VertexTag::HoleBoundary(k) => format!("h{k}"),
        };
        out.push_str(&format!("{} {} {}\n", v[0], v[1], t));
    }
    for t in &mesh.triangles {
        out.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
    }
    out
}

pub fn mesh_from_text(text: &str) -> Result<TriMesh, MeshError> {
    let mut lines = text.lines().enumerate();
    let bad = |line: usize, what: &str| MeshError::BadFormat(format!("line {}: {what}", line + 1));
    let (i, header) = lines
        .next()
        .ok_or_else(|| MeshError::BadFormat("empty file".into()))?;
    if header.trim() != "trimesh 1" {
        return Err(bad(i, "expected header `trimesh 1`"));
    }
    let (i, counts) = lines
        .next()
        .ok_or_else(|| MeshError::BadFormat("missing size line".into()))?;
    let mut it = counts.split_whitespace();
    let nv: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad(i, "bad vertex count"))?;
    let nt: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad(i, "bad triangle count"))?;
    let h: f64 = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad(i, "bad target edge length"))?;

    let mut vertices = Vec::with_capacity(nv);
    let mut tags = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (i, line) = lines
            .next()
            .ok_or_else(|| MeshError::BadFormat("truncated vertex list".into()))?;
        let mut it = line.split_whitespace();
        let r: f64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad(i, "bad vertex r"))?;
        let z: f64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad(i, "bad vertex z"))?;
        let tag = match it.next().ok_or_else(|| bad(i, "missing vertex tag"))? {
            "i" => VertexTag::Interior,
            "o" => VertexTag::OuterBoundary,
            "a" => VertexTag::Axis,
            s if s.starts_with('h') => VertexTag::HoleBoundary(
                s[1..].parse().map_err(|_| bad(i, "bad hole index"))?,
            ),
            _ => return Err(bad(i, "unknown vertex tag")),
        };
        vertices.push([r, z]);
        tags.push(tag);
    }
    let mut triangles = Vec::with_capacity(nt);
    for _ in 0..nt {
        let (i, line) = lines
            .next()
            .ok_or_else(|| MeshError::BadFormat("truncated triangle list".into()))?;
        let mut it = line.split_whitespace();
        let mut t = [0usize; 3];
        for slot in &mut t {
            *slot = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad(i, "bad triangle index"))?;
            if *slot >= nv {
                return Err(bad(i, "triangle index out of range"));
            }
        }
        triangles.push(t);
    }
    Ok(TriMesh {
        vertices,
        triangles,
        tags,
        h,
    })
}

/// Wireframe preview: interior edges grey, outer boundary black, axis
/// green, hole boundaries purple.
pub fn mesh_svg(mesh: &TriMesh) -> String {
    let (min, max) = plot::bounds(&mesh.vertices);
    let frame = plot::Frame::fit(min, max, 720.0);
    let (w, h) = frame.canvas_size(max);
    let mut svg = plot::svg_open(w, h);
    let mut edges: std::collections::BTreeSet<(usize, usize)> = Default::default();
    for &[a, b, c] in &mesh.triangles {
        for (u, v) in [(a, b), (b, c), (c, a)] {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    for &(u, v) in &edges {
        let seg = [mesh.vertices[u], mesh.vertices[v]];
        let stroke = match (mesh.tags[u], mesh.tags[v]) {
            (VertexTag::Axis, VertexTag::Axis) => "#1e8f4e",
            (VertexTag::HoleBoundary(_), VertexTag::HoleBoundary(_)) => "#7a1fa0",
            (VertexTag::OuterBoundary | VertexTag::Axis, VertexTag::OuterBoundary | VertexTag::Axis) => {
                "#000000"
            }
            _ => "#cccccc",
        };
        let width = if stroke == "#cccccc" { 0.5 } else { 1.2 };
        svg.push_str(&plot::path(&frame, &seg, false, stroke, width));
    }
    svg.push_str(plot::svg_close());
    svg
}
