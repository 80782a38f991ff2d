//! Section builders shared by the benchmarks.

use curlax_core::xsection::{circle, CrossSection, MetricKind};

/// Unit half-disc against the axis: semicircular arc from (0,−1) to (0,1)
/// with vertex spacing roughly `spacing` along the arc.
pub fn half_disc(spacing: f64) -> CrossSection {
    let n = (std::f64::consts::PI / spacing).ceil() as usize;
    let mut pts: Vec<[f64; 2]> = Vec::with_capacity(n + 1);
    pts.push([0.0, -1.0]);
    for k in 1..n {
        let t = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * k as f64 / n as f64;
        pts.push([t.cos(), t.sin()]);
    }
    pts.push([0.0, 1.0]);
    CrossSection::new(pts, vec![], MetricKind::Euclidean).expect("half disc is valid")
}

/// Off-axis disc of radius 1/2 centered at r = 2.
pub fn torus_section(n: usize) -> CrossSection {
    CrossSection::new(circle([2.0, 0.0], 0.5, n), vec![], MetricKind::Euclidean)
        .expect("torus section is valid")
}

/// Annulus: radius-3 disc at r = 5 with a radius-2 hole, `n` vertices per loop.
pub fn annulus_section(n: usize) -> CrossSection {
    CrossSection::new(
        circle([5.0, 0.0], 3.0, n),
        vec![circle([5.0, 0.0], 2.0, n)],
        MetricKind::Euclidean,
    )
    .expect("annulus section is valid")
}
