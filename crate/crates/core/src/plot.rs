//! Minimal deterministic SVG output.
//!
//! Coordinates are world (r, z); the canvas flips z so that +z points up on
//! screen. All numbers are written with fixed precision so repeated runs
//! produce byte-identical files.

/// World-to-screen mapping with uniform scale and a margin.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    min: [f64; 2],
    scale: f64,
    height: f64,
    margin: f64,
}

impl Frame {
    /// Fit a frame around the world bounding box with a target long side in
    /// pixels.
    pub fn fit(min: [f64; 2], max: [f64; 2], long_side: f64) -> Self {
        let w = (max[0] - min[0]).max(1e-12);
        let h = (max[1] - min[1]).max(1e-12);
        let scale = long_side / w.max(h);
        let margin = 0.05 * long_side;
        Frame {
            min,
            scale,
            height: h * scale,
            margin,
        }
    }

    pub fn canvas_size(&self, max: [f64; 2]) -> (f64, f64) {
        (
            (max[0] - self.min[0]) * self.scale + 2.0 * self.margin,
            self.height + 2.0 * self.margin,
        )
    }

    pub fn to_screen(&self, p: [f64; 2]) -> (f64, f64) {
        (
            (p[0] - self.min[0]) * self.scale + self.margin,
            self.height - (p[1] - self.min[1]) * self.scale + self.margin,
        )
    }
}

pub fn svg_open(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.1}\" height=\"{:.1}\" \
         viewBox=\"0 0 {:.1} {:.1}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        width, height, width, height
    )
}

pub fn svg_close() -> &'static str {
    "</svg>\n"
}

/// Polyline path element; `closed` appends a Z command.
pub fn path(frame: &Frame, pts: &[[f64; 2]], closed: bool, stroke: &str, width: f64) -> String {
    if pts.len() < 2 {
        return String::new();
    }
    let mut d = String::new();
    for (i, &p) in pts.iter().enumerate() {
        let (x, y) = frame.to_screen(p);
        let cmd = if i == 0 { 'M' } else { 'L' };
        d.push_str(&format!("{cmd}{x:.2} {y:.2} "));
    }
    if closed {
        d.push('Z');
    }
    format!(
        "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{:.2}\"/>\n",
        d.trim_end(),
        stroke,
        width
    )
}

pub fn dot(frame: &Frame, p: [f64; 2], radius: f64, fill: &str) -> String {
    let (x, y) = frame.to_screen(p);
    format!("<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{radius:.2}\" fill=\"{fill}\"/>\n")
}

pub fn text(frame: &Frame, p: [f64; 2], size: f64, content: &str) -> String {
    let (x, y) = frame.to_screen(p);
    format!(
        "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"{size:.1}\" \
         font-family=\"monospace\" fill=\"black\">{content}</text>\n"
    )
}

/// Iso-line segments of a linear-per-triangle field at the given level.
///
/// `vertices` are world points, `triangles` index triples, `values` one value
/// per vertex. Returns world segments; geometry is exact per triangle.
pub fn iso_segments(
    vertices: &[[f64; 2]],
    triangles: &[[usize; 3]],
    values: &[f64],
    level: f64,
) -> Vec<[[f64; 2]; 2]> {
    let mut out = Vec::new();
    for tri in triangles {
        let mut pts: Vec<[f64; 2]> = Vec::with_capacity(2);
        for e in 0..3 {
            let (i, j) = (tri[e], tri[(e + 1) % 3]);
            let (vi, vj) = (values[i], values[j]);
            if (vi - level) * (vj - level) < 0.0 {
                let t = (level - vi) / (vj - vi);
                let a = vertices[i];
                let b = vertices[j];
                pts.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
            }
        }
        if pts.len() == 2 {
            out.push([pts[0], pts[1]]);
        }
    }
    out
}

/// Contour plot of a nodal field on a triangle mesh.
pub fn contour_svg(
    vertices: &[[f64; 2]],
    triangles: &[[usize; 3]],
    values: &[f64],
    levels: usize,
) -> String {
    let (min, max) = bounds(vertices);
    let frame = Frame::fit(min, max, 600.0);
    let (w, h) = frame.canvas_size(max);
    let mut svg = svg_open(w, h);
    let vmin = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let vmax = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    for tri in triangles {
        let pts: Vec<[f64; 2]> = tri.iter().map(|&i| vertices[i]).collect();
        svg.push_str(&path(&frame, &pts, true, "#dddddd", 0.3));
    }
    for k in 1..=levels {
        let level = vmin + (vmax - vmin) * k as f64 / (levels + 1) as f64;
        for seg in iso_segments(vertices, triangles, values, level) {
            svg.push_str(&path(&frame, &seg, false, "#1f6fb2", 1.0));
        }
    }
    svg.push_str(svg_close());
    svg
}

/// Simple polyline chart of (x, y) samples, for boundary profiles and sweep
/// objectives.
pub fn line_chart_svg(samples: &[(f64, f64)], x_label: &str, y_label: &str) -> String {
    let (w, h) = (640.0, 400.0);
    let mut svg = svg_open(w, h);
    if samples.len() >= 2 {
        let xmin = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
        let xmax = samples
            .iter()
            .map(|s| s.0)
            .fold(f64::NEG_INFINITY, f64::max);
        let ymin = samples.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
        let ymax = samples
            .iter()
            .map(|s| s.1)
            .fold(f64::NEG_INFINITY, f64::max);
        let pad = |lo: f64, hi: f64| {
            let d = (hi - lo).max(1e-12);
            (lo - 0.05 * d, hi + 0.05 * d)
        };
        let (x0, x1) = pad(xmin, xmax);
        let (y0, y1) = pad(ymin, ymax);
        let sx = |x: f64| 60.0 + (x - x0) / (x1 - x0) * (w - 80.0);
        let sy = |y: f64| (h - 40.0) - (y - y0) / (y1 - y0) * (h - 70.0);
        let mut d = String::new();
        for (i, &(x, y)) in samples.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            d.push_str(&format!("{cmd}{:.2} {:.2} ", sx(x), sy(y)));
        }
        svg.push_str(&format!(
            "<path d=\"{}\" fill=\"none\" stroke=\"#b2391f\" stroke-width=\"1.5\"/>\n",
            d.trim_end()
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" font-family=\"monospace\">{}</text>\n",
            w / 2.0 - 30.0,
            h - 8.0,
            x_label
        ));
        svg.push_str(&format!(
            "<text x=\"8\" y=\"16\" font-size=\"12\" font-family=\"monospace\">{y_label}</text>\n",
        ));
    }
    svg.push_str(svg_close());
    svg
}

pub fn bounds(pts: &[[f64; 2]]) -> ([f64; 2], [f64; 2]) {
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for p in pts {
        for k in 0..2 {
            min[k] = min[k].min(p[k]);
            max[k] = max[k].max(p[k]);
        }
    }
    (min, max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iso_segments_cut_a_triangle() {
        let v = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let t = [[0usize, 1, 2]];
        let vals = [0.0, 1.0, 1.0];
        let segs = iso_segments(&v, &t, &vals, 0.5);
        assert_eq!(segs.len(), 1);
        // The iso-line passes through the two edge midpoints touching v0.
        let s = segs[0];
        assert!((s[0][0] - 0.5).abs() < 1e-12 || (s[0][1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn svg_output_is_stable() {
        let v = vec![[0.0, 0.0], [1.0, 0.0], [0.5, 1.0]];
        let frame = Frame::fit([0.0, 0.0], [1.0, 1.0], 100.0);
        let a = path(&frame, &v, true, "black", 1.0);
        let b = path(&frame, &v, true, "black", 1.0);
        assert_eq!(a, b);
    }
}
