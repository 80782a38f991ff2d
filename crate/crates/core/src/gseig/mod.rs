//! Smallest-eigenvalue solver for the axisymmetric stream-function problem.
//!
//! A divergence-free axisymmetric field with azimuthal symmetry can be
//! written through a stream function ψ(r, z) as
//!
//! ```text
//! X = ∇ψ × ∇φ + λ ψ ∇φ,        ∇φ = ê_φ / r,
//! ```
//!
//! and the curl eigenproblem curl X = λX reduces to the scalar problem
//!
//! ```text
//! ψ_rr − ψ_r / r + ψ_zz = −μ ψ,        μ = λ²,
//! ```
//!
//! on the meridional cross section, with ψ = 0 on the axis and ψ constant
//! on the boundary. Sections touching the axis clamp that constant to zero
//! (ball-like); sections away from the axis keep it as one extra unknown
//! and remove the constant stream function through a zero-mean constraint
//! (torus-like). The smallest positive μ gives the smallest positive curl
//! eigenvalue λ = √μ of the solid of revolution.
//!
//! Submodules: [`assemble`] builds weighted P1 forms, [`linalg`] provides
//! banded Cholesky solves, [`solve`] runs shifted subspace iteration,
//! [`reconstruct`] evaluates ψ and the vector field off the mesh, and
//! [`fd_reference`] is an independent finite-difference discretisation used
//! to cross-check the element solver.

pub mod assemble;
pub mod fd_reference;
pub mod linalg;
pub mod reconstruct;
pub mod solve;

pub use assemble::{assemble, condense, Assembled, Condensed};
pub use fd_reference::{torus_mu, torus_mu_extrapolated, FdTorusSpec};
pub use reconstruct::FieldSampler;
pub use solve::{rayleigh_quotient, solve, solve_with_forms, EigenPair, SolveReport};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("eigensolve did not converge after {iterations} sweeps (residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),
    #[error("matrix is singular or not positive definite")]
    Singular,
    #[error("bad mesh: {0}")]
    BadMesh(String),
}

/// Boundary treatment of the solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMode {
    /// ψ = 0 on axis and outer boundary (section touches the axis).
    BallLike,
    /// ψ equal to one shared unknown on the boundary, zero-mean constraint
    /// (section away from the axis).
    TorusLike,
    /// ψ = 0 on the whole boundary. Negative control: for torus-like
    /// sections this drops the boundary freedom and breaks the discrete
    /// flux balance.
    PlainDirichlet,
}

impl std::fmt::Display for SolveMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SolveMode::BallLike => "ball_like",
            SolveMode::TorusLike => "torus_like",
            SolveMode::PlainDirichlet => "plain_dirichlet",
        };
        f.write_str(s)
    }
}

/// Eigensolver parameters. Defaults are tight enough that eigenvalues of
/// exactly-scaled matrices agree to better than 1e-12 relative.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    /// Number of eigenpairs to converge (smallest first).
    pub k: usize,
    pub max_iter: usize,
    /// Relative residual threshold ‖Kx − θMx‖ / ((‖K‖ + θ‖M‖)‖x‖).
    pub tol: f64,
    /// Relative eigenvalue stagnation threshold between sweeps.
    pub value_tol: f64,
    /// Seed for the deterministic start block.
    pub seed: u64,
    /// Shift factor: A = K + σM with σ = factor · maxdiag(K)/maxdiag(M).
    pub sigma_factor: f64,
    /// Extra guard vectors beyond `k` in the iteration block.
    pub subspace_extra: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            k: 1,
            max_iter: 500,
            tol: 1e-11,
            value_tol: 1e-13,
            seed: 0x5eed_0001,
            sigma_factor: 1e-3,
            subspace_extra: 3,
        }
    }
}

/// Nodal solution as CSV (`r,z,psi` with one row per vertex).
pub fn solution_csv(mesh: &crate::mesh2::TriMesh, psi: &[f64]) -> String {
    let mut out = String::from("r,z,psi\n");
    for (v, p) in mesh.vertices.iter().zip(psi) {
        out.push_str(&format!("{},{},{}\n", v[0], v[1], p));
    }
    out
}

/// Contour plot of the stream function over the section.
pub fn solution_svg(mesh: &crate::mesh2::TriMesh, psi: &[f64]) -> String {
    crate::plot::contour_svg(&mesh.vertices, &mesh.triangles, psi, 12)
}
