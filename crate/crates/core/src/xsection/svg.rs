//! Annotated SVG rendering of a criterion evaluation.
//!
//! Outer boundary black, near arc blue, far set red, holes purple, and the
//! near-minimal vertices as green dots.

use super::{CriterionOutcome, CrossSection};
use crate::plot::{self, Frame};

pub fn criterion_svg(cs: &CrossSection, outcome: &CriterionOutcome) -> String {
    let mut all: Vec<[f64; 2]> = cs.outer().to_vec();
    for h in cs.holes() {
        all.extend_from_slice(h);
    }
    let (min, max) = plot::bounds(&all);
    let frame = Frame::fit(min, max, 640.0);
    let (w, h) = frame.canvas_size(max);
    let mut svg = plot::svg_open(w, h);
    svg.push_str(&plot::path(&frame, cs.outer(), true, "black", 1.2));
    for hole in cs.holes() {
        svg.push_str(&plot::path(&frame, hole, true, "#7a1fa0", 1.2));
    }
    if outcome.l_minus_arc.len() > 1 {
        svg.push_str(&plot::path(&frame, &outcome.l_minus_arc, false, "#1f6fb2", 3.0));
    }
    for arc in &outcome.l_plus_arcs {
        svg.push_str(&plot::path(&frame, arc, false, "#c0392b", 3.0));
    }
    for &p in &outcome.report.n0_points {
        svg.push_str(&plot::dot(&frame, p, 3.0, "#1e8f4e"));
    }
    let label = format!(
        "verdict: {}",
        serde_json::to_string(&outcome.report.verdict)
            .unwrap_or_default()
            .trim_matches('"')
    );
    svg.push_str(&plot::text(&frame, [min[0], max[1]], 12.0, &label));
    svg.push_str(plot::svg_close());
    svg
}
