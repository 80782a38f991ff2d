//! On-disk report schemas and deterministic writers.
//!
//! Every report shares the same envelope: `format_version` (the frozen
//! schema revision), `tool_version`, the subcommand that produced it, a
//! SHA-256 of the raw input file, and the fully resolved configuration.
//! Reports contain no timestamps and no map-typed fields, so repeated runs
//! on the same input are byte-identical.

use curlax_core::diagnose::{Diagnostics, SweepRow};
use curlax_core::geomfields::SuiteReport;
use curlax_core::xsection::{CriterionReport, CrossSectionFile};
use curlax_core::FORMAT_VERSION;
use serde::{Deserialize, Serialize};

pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Pretty JSON with a trailing newline; field order is declaration order,
/// so the output is reproducible byte for byte.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn default_format_version() -> u32 {
    FORMAT_VERSION
}

// ---------------------------------------------------------------------------
// criterion

#[derive(Debug, Serialize)]
pub struct CriterionConfig {
    pub input: String,
    /// Resolved axis-proximity tolerance (default derived from d_minus).
    pub tol: f64,
    pub out_dir: String,
    pub svg: bool,
}

#[derive(Debug, Serialize)]
pub struct CriterionReportFile<'a> {
    pub format_version: u32,
    pub tool_version: &'a str,
    pub command: &'a str,
    pub input_sha256: &'a str,
    pub config: CriterionConfig,
    pub report: &'a CriterionReport,
}

// ---------------------------------------------------------------------------
// solve

/// Eigensolver settings as echoed into (and read back from) reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveConfig {
    pub input: String,
    pub h: f64,
    pub k: usize,
    /// Boundary treatment; v1 always infers it from the mesh ("auto").
    pub topology: String,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
    pub out_dir: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub mu: f64,
    pub lambda: f64,
    pub c_b: f64,
    pub psi: Vec<f64>,
}

/// Self-contained eigensolve report: carries the mesh so that `diagnose`
/// can re-derive every quantity from the file alone.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveReportFile {
    #[serde(default = "default_format_version")]
    pub format_version: u32,
    pub tool_version: String,
    pub command: String,
    pub input_sha256: String,
    pub config: SolveConfig,
    pub mode: String,
    pub lambda_plus: f64,
    pub volume: f64,
    /// Scale-invariant objective λ₊ · vol^(1/3).
    pub objective: f64,
    pub iterations: usize,
    pub residuals: Vec<f64>,
    pub near_degenerate: bool,
    pub pairs: Vec<PairFile>,
    /// Mesh in the plain text interchange format.
    pub mesh_text: String,
}

// ---------------------------------------------------------------------------
// diagnose

#[derive(Debug, Serialize)]
pub struct DiagnoseConfig {
    pub input: String,
    /// "cross_section" (inline solve) or "solve_report".
    pub input_kind: &'static str,
    pub h: f64,
    pub k: usize,
    pub topology: String,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
    pub out_dir: String,
}

#[derive(Debug, Serialize)]
pub struct DiagnoseReportFile<'a> {
    pub format_version: u32,
    pub tool_version: &'a str,
    pub command: &'a str,
    pub input_sha256: &'a str,
    pub config: DiagnoseConfig,
    pub diagnostics: &'a Diagnostics,
}

// ---------------------------------------------------------------------------
// sweep

/// Sweep family description, the `--input` format of `curlax sweep`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    #[serde(default = "default_format_version")]
    pub format_version: u32,
    pub family: FamilySpec,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySpec {
    TorusCenters(TorusCentersSpec),
    Scales(ScalesSpec),
    EllipseAspects(EllipseAspectsSpec),
}

/// Circles of fixed minor radius at varying center radius.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusCentersSpec {
    pub centers: Vec<f64>,
    pub minor_radius: f64,
    pub n_points: usize,
    pub h: f64,
}

/// Dilations of an inline base cross section; the mesh spacing scales
/// with each member, so the objective is constant across the family.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalesSpec {
    pub base: CrossSectionFile,
    pub scales: Vec<f64>,
    pub base_h: f64,
}

/// Ellipses of fixed section area and varying radial/axial aspect ratio.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipseAspectsSpec {
    pub center_r: f64,
    pub area: f64,
    pub aspects: Vec<f64>,
    pub n_points: usize,
    pub h: f64,
}

#[derive(Debug, Serialize)]
pub struct SweepConfig {
    pub input: String,
    pub out_dir: String,
}

#[derive(Debug, Serialize)]
pub struct SweepReportFile<'a> {
    pub format_version: u32,
    pub tool_version: &'a str,
    pub command: &'a str,
    pub input_sha256: &'a str,
    pub config: SweepConfig,
    pub family: &'a SweepFile,
    pub rows: &'a [SweepRow],
}

// ---------------------------------------------------------------------------
// verify-model

#[derive(Debug, Serialize)]
pub struct VerifyModelConfig {
    pub seed: u64,
    pub inject_wrong_potential: bool,
    pub points_csv: bool,
    pub out_dir: String,
}

/// No `input_sha256`: this command takes no input file.
#[derive(Debug, Serialize)]
pub struct VerifyModelReportFile<'a> {
    pub format_version: u32,
    pub tool_version: &'a str,
    pub command: &'a str,
    pub config: VerifyModelConfig,
    pub suite: &'a SuiteReport,
}

// ---------------------------------------------------------------------------
// mesh-info

#[derive(Debug, Serialize)]
pub struct MeshInfoConfig {
    pub input: String,
    pub h: f64,
    pub out_dir: String,
    pub svg: bool,
}

#[derive(Debug, Serialize)]
pub struct MeshStats {
    pub vertices: usize,
    pub triangles: usize,
    pub h: f64,
    pub min_angle_deg: f64,
    pub section_area: f64,
    pub revolved_volume: f64,
    pub axis_vertices: usize,
    pub outer_boundary_edges: usize,
    pub hole_boundary_loops: usize,
    pub max_boundary_closure_defect: f64,
}

#[derive(Debug, Serialize)]
pub struct MeshInfoReportFile<'a> {
    pub format_version: u32,
    pub tool_version: &'a str,
    pub command: &'a str,
    pub input_sha256: &'a str,
    pub config: MeshInfoConfig,
    pub mesh: MeshStats,
}
