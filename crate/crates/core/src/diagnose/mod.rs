//! Diagnostics for computed eigenfields: necessary conditions for optimal
//! domains, integral identities, constraint checks, and shape sweeps.
//!
//! A domain minimising the first curl eigenvalue at fixed volume must carry
//! an eigenfield of constant length on the boundary, satisfy a Rellich-type
//! virial identity, and keep its eigenfield orthogonal to the harmonic
//! Neumann field (zero net flux through the meridional section). None of
//! the computed domains is expected to be optimal; the diagnostics turn the
//! necessary conditions into quantitative reports that certify
//! non-optimality or expose discretisation error.

mod boundary;
pub mod sweep;

pub use boundary::{
    boundary_constancy, flux_balance, g_xr_constancy, rellich_identity, BoundaryProfile,
};
pub use sweep::{sweep, SweepMember, SweepRow};

use crate::gseig::{Assembled, EigenPair, SolveMode, SolveReport};
use crate::mesh2::TriMesh;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagnoseError {
    #[error("stream function is identically zero")]
    ZeroField,
    #[error("diagnostic needs {needed} topology, solution is {got}")]
    WrongTopology { needed: &'static str, got: String },
    #[error("sweep member {index} failed: {message}")]
    MemberFailed { index: usize, message: String },
}

/// Full diagnostics of one eigensolve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Diagnostics {
    pub mode: String,
    pub lambda_plus: f64,
    /// Ascending √μ of the converged eigenvalues.
    pub eigen_gaps: Vec<f64>,
    pub near_degenerate: bool,
    /// (arclength, |X|) along the outer boundary.
    pub boundary_speed: Vec<(f64, f64)>,
    /// (max|X| − min|X|) / max|X| on the outer boundary.
    pub constancy_score: f64,
    /// Arc-length weighted mean of |X| on the boundary.
    pub c_estimate: f64,
    /// Set when the boundary field is vanishingly small against the
    /// interior field (an eigenfield cannot vanish on the whole boundary).
    pub boundary_vanishing_warning: bool,
    /// Relative defect of the virial identity with origin at (0,0).
    pub rellich_residual: f64,
    /// Same identity with the origin shifted along z.
    pub rellich_residual_shifted: f64,
    pub rellich_shift: f64,
    /// (arclength, g(X,R)) along the outer boundary.
    pub g_xr_boundary: Vec<(f64, f64)>,
    pub g_xr_deviation: f64,
    /// λ·c_b for torus-like solutions, 0 for ball-like.
    pub c0: f64,
    /// Net normalized flux through the boundary; `None` for ball-like
    /// topology where the harmonic Neumann field does not exist.
    pub flux_balance: Option<f64>,
    /// |∫|X|² − 3c²·vol| / ∫|X|²; report-only.
    pub criticality_gap: f64,
    pub volume: f64,
    /// Scale-invariant objective λ₊ · vol^(1/3).
    pub objective: f64,
}

/// Run every diagnostic on the first converged pair of `report`.
pub fn run(
    mesh: &TriMesh,
    forms: &Assembled,
    report: &SolveReport,
) -> Result<Diagnostics, DiagnoseError> {
    let pair = &report.pairs[0];
    let scale = pair.psi.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
    if scale <= 0.0 {
        return Err(DiagnoseError::ZeroField);
    }
    let profile = boundary_constancy(mesh, pair)?;
    let rellich = rellich_identity(mesh, forms, pair, 0.0);
    let rellich_shift = 5.0;
    let rellich_shifted = rellich_identity(mesh, forms, pair, rellich_shift);
    let (g_xr_boundary, g_xr_deviation, c0) = g_xr_constancy(mesh, pair);
    let flux = match report.mode {
        SolveMode::BallLike => None,
        _ => Some(flux_balance(mesh, forms, pair)?),
    };
    let volume = mesh.revolved_volume();
    let energy = total_energy(forms, pair);
    let criticality_gap =
        (energy - 3.0 * profile.c_estimate.powi(2) * volume).abs() / energy.max(f64::MIN_POSITIVE);
    Ok(Diagnostics {
        mode: report.mode.to_string(),
        lambda_plus: pair.lambda,
        eigen_gaps: report
            .pairs
            .iter()
            .map(|p| p.lambda)
            .collect(),
        near_degenerate: report.near_degenerate,
        boundary_speed: profile.samples.clone(),
        constancy_score: profile.constancy_score,
        c_estimate: profile.c_estimate,
        boundary_vanishing_warning: profile.vanishing_warning,
        rellich_residual: rellich,
        rellich_residual_shifted: rellich_shifted,
        rellich_shift,
        g_xr_boundary,
        g_xr_deviation,
        c0,
        flux_balance: flux,
        criticality_gap,
        volume,
        objective: pair.lambda * volume.cbrt(),
    })
}

/// ∫|X|² dV of the reconstructed field, in closed quadratic form:
/// 2π(ψᵀKψ + μ ψᵀMψ).
pub fn total_energy(forms: &Assembled, pair: &EigenPair) -> f64 {
    2.0 * std::f64::consts::PI
        * (forms.k.quadratic_form(&pair.psi) + pair.mu * forms.m.quadratic_form(&pair.psi))
}
