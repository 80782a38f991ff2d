//! Numerical laboratory for the smallest positive curl eigenvalue on solids
//! of revolution.
//!
//! The crate is organised around a pipeline:
//!
//! * [`xsection`]: meridional cross-section geometry in the (r, z) half-plane
//!   and the boundary-split non-optimality criterion for rotationally
//!   symmetric domains.
//! * [`mesh2`]: deterministic constrained Delaunay triangulation of cross
//!   sections and revolved measures.
//! * [`gseig`]: axisymmetric stream-function reduction of the curl
//!   eigenproblem (Grad-Shafranov operator) and a sparse symmetric
//!   eigensolver.
//! * [`diagnose`]: integral identities and sweep drivers used to sanity-check
//!   computed eigenfields.
//! * [`geomfields`]: exact tensor calculus on constant-curvature model
//!   spaces in conformal charts, with a verification suite.
//! * [`plot`]: minimal deterministic SVG output used by the CLI.

pub mod diagnose;
pub mod geomfields;
pub mod gseig;
pub mod mesh2;
pub mod plot;
pub mod xsection;

/// Version string embedded in every generated report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Format version stamped on all JSON and text artifacts.
pub const FORMAT_VERSION: u32 = 1;
