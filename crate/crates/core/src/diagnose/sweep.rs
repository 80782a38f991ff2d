//! Shape sweeps: solve a parameterized family of cross sections and report
//! the scale-invariant objective λ₊ · vol^(1/3) for each member.
//!
//! Members are solved in parallel but reported in input order, and every
//! row is bitwise identical to a standalone solve of the same member: the
//! mesher and eigensolver are deterministic, so parallelism cannot leak
//! into the results.

use super::DiagnoseError;
use crate::gseig::{assemble, solve_with_forms, SolverConfig};
use crate::mesh2::triangulate;
use crate::xsection::{circle, CrossSection, MetricKind};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One cross section in a sweep family.
#[derive(Debug, Clone)]
pub struct SweepMember {
    pub label: String,
    /// The family parameter this member represents (center radius, scale,
    /// aspect ratio, ...).
    pub parameter: f64,
    pub cross_section: CrossSection,
    pub h: f64,
}

/// Solved summary of one member.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub label: String,
    pub parameter: f64,
    pub h: f64,
    pub lambda_plus: f64,
    pub volume: f64,
    /// λ₊ · vol^(1/3), invariant under rigid motions and dilations.
    pub objective: f64,
}

/// Mesh and solve every member, in parallel, preserving input order.
/// The first failing member (by index) aborts the sweep.
pub fn sweep(
    members: &[SweepMember],
    config: &SolverConfig,
) -> Result<Vec<SweepRow>, DiagnoseError> {
    let results: Vec<Result<SweepRow, String>> = members
        .par_iter()
        .map(|m| solve_member(m, config))
        .collect();
    results
        .into_iter()
        .enumerate()
        .map(|(index, r)| r.map_err(|message| DiagnoseError::MemberFailed { index, message }))
        .collect()
}

fn solve_member(m: &SweepMember, config: &SolverConfig) -> Result<SweepRow, String> {
    let mesh = triangulate(&m.cross_section, m.h).map_err(|e| e.to_string())?;
    let forms = assemble(&mesh);
    let report = solve_with_forms(&mesh, &forms, None, config).map_err(|e| e.to_string())?;
    let lambda = report.pairs[0].lambda;
    let volume = mesh.revolved_volume();
    Ok(SweepRow {
        label: m.label.clone(),
        parameter: m.parameter,
        h: m.h,
        lambda_plus: lambda,
        volume,
        objective: lambda * volume.cbrt(),
    })
}

/// Render rows as CSV, one line per member in input order.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("label,parameter,h,lambda_plus,volume,objective\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.label, r.parameter, r.h, r.lambda_plus, r.volume, r.objective
        ));
    }
    out
}

/// Circular cross sections of fixed minor radius at varying center radius.
pub fn torus_center_family(
    centers: &[f64],
    minor_radius: f64,
    n_points: usize,
    h: f64,
) -> Vec<SweepMember> {
    centers
        .iter()
        .map(|&r0| SweepMember {
            label: format!("center_{r0}"),
            parameter: r0,
            cross_section: CrossSection::new(
                circle([r0, 0.0], minor_radius, n_points),
                vec![],
                MetricKind::Euclidean,
            )
            .expect("circle off the axis is a valid cross section"),
            h,
        })
        .collect()
}

/// Dilations of a base cross section; mesh spacing scales with the member
/// so the objective is constant to roundoff across the family.
pub fn scale_family(base: &CrossSection, scales: &[f64], base_h: f64) -> Vec<SweepMember> {
    scales
        .iter()
        .map(|&s| SweepMember {
            label: format!("scale_{s}"),
            parameter: s,
            cross_section: base.scaled(s),
            h: base_h * s,
        })
        .collect()
}

/// Elliptical cross sections of fixed area πab and varying aspect a/b,
/// centered at (center_r, 0); a is the radial semi-axis.
pub fn ellipse_aspect_family(
    center_r: f64,
    area: f64,
    aspects: &[f64],
    n_points: usize,
    h: f64,
) -> Vec<SweepMember> {
    aspects
        .iter()
        .map(|&q| {
            let ab = area / std::f64::consts::PI;
            let a = (ab * q).sqrt();
            let b = (ab / q).sqrt();
            let pts: Vec<[f64; 2]> = (0..n_points)
                .map(|i| {
                    let t = 2.0 * std::f64::consts::PI * i as f64 / n_points as f64;
                    [center_r + a * t.cos(), b * t.sin()]
                })
                .collect();
            SweepMember {
                label: format!("aspect_{q}"),
                parameter: q,
                cross_section: CrossSection::new(pts, vec![], MetricKind::Euclidean)
                    .expect("ellipse off the axis is a valid cross section"),
                h,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn scaled_family_has_constant_objective() {
        let base = CrossSection::new(
            circle([2.0, 0.0], 0.5, 96),
            vec![],
            MetricKind::Euclidean,
        )
        .unwrap();
        let members = scale_family(&base, &[1.0, 2.0, 4.0], 0.06);
        let rows = sweep(&members, &SolverConfig::default()).unwrap();
        assert_eq!(rows.len(), 3);
        for r in &rows[1..] {
            assert_relative_eq!(r.objective, rows[0].objective, max_relative = 1e-10);
        }
        // λ itself scales inversely with size.
        assert_relative_eq!(
            rows[1].lambda_plus * 2.0,
            rows[0].lambda_plus,
            max_relative = 1e-10
        );
    }

    #[test]
    fn sweep_rows_match_standalone_solves_bitwise() {
        let members = torus_center_family(&[1.5, 2.0, 3.0], 0.5, 96, 0.08);
        let cfg = SolverConfig::default();
        let rows = sweep(&members, &cfg).unwrap();
        assert_eq!(rows.len(), 3);
        for (m, row) in members.iter().zip(&rows) {
            assert_eq!(row.parameter, m.parameter);
            let single = solve_member(m, &cfg).unwrap();
            assert_eq!(row.lambda_plus.to_bits(), single.lambda_plus.to_bits());
            assert_eq!(row.volume.to_bits(), single.volume.to_bits());
        }
    }

    #[test]
    fn ellipse_family_members_share_the_polygon_area() {
        // The inscribed n-gon area depends only on n and the product ab,
        // so fixing πab fixes the discrete area across aspects exactly.
        let members =
            ellipse_aspect_family(3.0, std::f64::consts::PI * 0.25, &[1.0, 1.5, 2.0], 256, 0.05);
        let a0 = members[0].cross_section.area();
        for m in &members[1..] {
            assert_relative_eq!(m.cross_section.area(), a0, max_relative = 1e-12);
        }
    }

    #[test]
    fn failing_member_reports_its_index() {
        let mut members = torus_center_family(&[2.0, 3.0], 0.5, 64, 0.1);
        members[1].h = 10.0; // spacing far larger than the domain
        let err = sweep(&members, &SolverConfig::default()).unwrap_err();
        match err {
            DiagnoseError::MemberFailed { index, .. } => assert_eq!(index, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn csv_is_stable_and_ordered() {
        let members = torus_center_family(&[2.0], 0.5, 64, 0.1);
        let rows = sweep(&members, &SolverConfig::default()).unwrap();
        let csv = sweep_csv(&rows);
        assert!(csv.starts_with("label,parameter,h,lambda_plus,volume,objective\n"));
        assert_eq!(csv, sweep_csv(&rows));
        assert_eq!(csv.lines().count(), 2);
    }
}
