//! curlax — command-line laboratory for the axisymmetric curl eigenproblem.
//!
//! Subcommands:
//! - `criterion`    geometric non-optimality test of a cross section
//! - `solve`        mesh a cross section and solve for the lowest curl
//!   eigenvalue
//! - `diagnose`     run the full diagnostic battery on a solution (inline
//!   solve or a previously written solve report)
//! - `sweep`        solve a parameterized family and tabulate the
//!   scale-invariant objective
//! - `verify-model` differential-geometric self-checks on the
//!   constant-curvature model spaces
//! - `mesh-info`    triangulate a cross section and report mesh statistics
//!
//! Exit codes: 0 success; 2 parse error (the message names the byte
//! offset); 3 invalid or unsupported input; 4 numerical non-convergence
//! (the message includes the final residual); 5 verification failure (the
//! message lists the failed checks).
//!
//! All reports are deterministic: they embed the tool version, the fully
//! resolved configuration, and a SHA-256 of the input, never a timestamp.
//! The number of worker threads can be pinned with the `CURLAX_THREADS`
//! environment variable; no other environment is consulted.

mod report;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;

use curlax_core::diagnose::{self, sweep::*, DiagnoseError};
use curlax_core::geomfields::{self, SuiteOptions};
use curlax_core::gseig::{
    self, solution_csv, solution_svg, EigenPair, SolveError, SolveMode, SolveReport, SolverConfig,
};
use curlax_core::mesh2::{mesh_from_text, mesh_svg, mesh_to_text, triangulate, TriMesh, VertexTag};
use curlax_core::plot::line_chart_svg;
use curlax_core::xsection::{criterion_svg, CrossSection, CrossSectionFile};
use curlax_core::{FORMAT_VERSION, TOOL_VERSION};

use report::*;

#[derive(Parser)]
#[command(name = "curlax", version, about = "Axisymmetric curl-eigenvalue laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the non-optimality criterion of a cross section.
    Criterion {
        /// Cross-section JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Axis-proximity tolerance (default: scaled from d_minus).
        #[arg(long)]
        tol: Option<f64>,
        /// Directory receiving the reports.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Also write an annotated SVG of the boundary decomposition.
        #[arg(long)]
        svg: bool,
    },
    /// Mesh a cross section and solve for the lowest curl eigenvalue.
    Solve {
        /// Cross-section JSON file (simply connected).
        #[arg(long)]
        input: PathBuf,
        /// Target mesh edge length.
        #[arg(long, default_value_t = 0.05)]
        h: f64,
        /// Number of eigenpairs to converge.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Relative residual tolerance of the eigensolver.
        #[arg(long)]
        tol: Option<f64>,
        /// Seed of the deterministic start block.
        #[arg(long)]
        seed: Option<u64>,
        /// Directory receiving the reports.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Run the diagnostic battery on a solution.
    Diagnose {
        /// Either a cross-section JSON (solved inline) or a solve report.
        #[arg(long)]
        input: PathBuf,
        /// Target mesh edge length for inline solves.
        #[arg(long, default_value_t = 0.05)]
        h: f64,
        /// Number of eigenpairs to converge for inline solves.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Relative residual tolerance of the eigensolver.
        #[arg(long)]
        tol: Option<f64>,
        /// Seed of the deterministic start block.
        #[arg(long)]
        seed: Option<u64>,
        /// Directory receiving the reports.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Solve a parameterized family of cross sections.
    Sweep {
        /// Family description JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Directory receiving the reports.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Verify the differential-geometric model-space identities.
    VerifyModel {
        /// Seed for the sample points (verdicts must not depend on it).
        #[arg(long)]
        seed: Option<u64>,
        /// Write per-point residual traces as CSV.
        #[arg(long)]
        points_csv: bool,
        /// Self-test: corrupt the hyperbolic concircular potential so the
        /// suite must fail.
        #[arg(long)]
        inject_wrong_potential: bool,
        /// Directory receiving the reports.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Triangulate a cross section and report mesh statistics.
    MeshInfo {
        /// Cross-section JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Target mesh edge length.
        #[arg(long, default_value_t = 0.05)]
        h: f64,
        /// Directory receiving the reports.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Also write an SVG preview of the triangulation.
        #[arg(long)]
        svg: bool,
    },
}

// ---------------------------------------------------------------------------
// errors

#[derive(Debug)]
enum CliError {
    /// Malformed input file (exit 2).
    Parse {
        path: PathBuf,
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },
    /// Well-formed but invalid or unsupported input (exit 3).
    Invalid(String),
    /// The numerical method did not converge (exit 4).
    NonConvergence(String),
    /// Verification checks failed (exit 5).
    Verification(Vec<String>),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Invalid(_) => 3,
            CliError::NonConvergence(_) => 4,
            CliError::Verification(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse {
                path,
                offset,
                line,
                column,
                message,
            } => write!(
                f,
                "{}: parse error at byte {offset} (line {line} column {column}): {message}",
                path.display()
            ),
            CliError::Invalid(m) => f.write_str(m),
            CliError::NonConvergence(m) => f.write_str(m),
            CliError::Verification(checks) => {
                write!(f, "verification failed: {}", checks.join(", "))
            }
        }
    }
}

fn invalid(e: impl fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

// ---------------------------------------------------------------------------
// shared plumbing

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

/// Honor `CURLAX_THREADS` if set; otherwise let the pool size itself.
fn init_thread_pool() {
    if let Ok(v) = std::env::var("CURLAX_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Criterion {
            input,
            tol,
            out_dir,
            svg,
        } => cmd_criterion(&input, tol, &out_dir, svg),
        Command::Solve {
            input,
            h,
            k,
            tol,
            seed,
            out_dir,
        } => cmd_solve(&input, h, k, tol, seed, &out_dir),
        Command::Diagnose {
            input,
            h,
            k,
            tol,
            seed,
            out_dir,
        } => cmd_diagnose(&input, h, k, tol, seed, &out_dir),
        Command::Sweep { input, out_dir } => cmd_sweep(&input, &out_dir),
        Command::VerifyModel {
            seed,
            points_csv,
            inject_wrong_potential,
            out_dir,
        } => cmd_verify_model(seed, points_csv, inject_wrong_potential, &out_dir),
        Command::MeshInfo {
            input,
            h,
            out_dir,
            svg,
        } => cmd_mesh_info(&input, h, &out_dir, svg),
    }
}

/// Read an input file, returning its text and SHA-256.
fn read_input(path: &Path) -> Result<(String, String), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Invalid(format!("{}: not valid UTF-8", path.display())))?;
    let sha = sha256_hex(text.as_bytes());
    Ok((text, sha))
}

/// Parse JSON, classifying malformed input (exit 2, with byte offset) apart
/// from well-formed JSON that violates the schema (exit 3).
fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        if e.classify() == serde_json::error::Category::Data {
            CliError::Invalid(format!("{}: {e}", path.display()))
        } else {
            let (line, column) = (e.line(), e.column());
            CliError::Parse {
                path: path.to_path_buf(),
                offset: byte_offset(text, line, column),
                line,
                column,
                message: e.to_string(),
            }
        }
    })
}

/// Translate serde_json's 1-based line/column into a byte offset.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let mut offset = 0;
    for (i, l) in text.split('\n').enumerate() {
        if i + 1 == line {
            return (offset + column.saturating_sub(1)).min(text.len());
        }
        offset += l.len() + 1;
    }
    text.len()
}

fn check_format_version(path: &Path, found: u32) -> Result<(), CliError> {
    if found != FORMAT_VERSION {
        return Err(CliError::Invalid(format!(
            "{}: unsupported format_version {found} (this tool reads version {FORMAT_VERSION})",
            path.display()
        )));
    }
    Ok(())
}

fn ensure_out_dir(out_dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", out_dir.display())))
}

fn write_file(out_dir: &Path, name: &str, content: &str) -> Result<(), CliError> {
    let path = out_dir.join(name);
    std::fs::write(&path, content)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn positive(name: &str, value: f64) -> Result<(), CliError> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(CliError::Invalid(format!(
            "{name} must be positive and finite, got {value}"
        )));
    }
    Ok(())
}

fn load_cross_section(path: &Path) -> Result<(CrossSection, String), CliError> {
    let (text, sha) = read_input(path)?;
    let file: CrossSectionFile = parse_json(path, &text)?;
    check_format_version(path, file.format_version)?;
    let cs = CrossSection::from_file(file).map_err(invalid)?;
    Ok((cs, sha))
}

/// Enum serde name of a serializable value ("not_optimal_length", ...).
fn serde_name<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value)
        .expect("plain enums always serialize")
        .trim_matches('"')
        .to_string()
}

// ---------------------------------------------------------------------------
// criterion

fn cmd_criterion(
    input: &Path,
    tol: Option<f64>,
    out_dir: &Path,
    svg: bool,
) -> Result<String, CliError> {
    if let Some(t) = tol {
        positive("--tol", t)?;
    }
    let (cs, sha) = load_cross_section(input)?;
    ensure_out_dir(out_dir)?;

    let outcome = cs.criterion(tol).map_err(invalid)?;
    let tol_resolved = tol.unwrap_or_else(|| CrossSection::default_tol(outcome.report.d_minus));

    let file = CriterionReportFile {
        format_version: FORMAT_VERSION,
        tool_version: TOOL_VERSION,
        command: "criterion",
        input_sha256: &sha,
        config: CriterionConfig {
            input: input.display().to_string(),
            tol: tol_resolved,
            out_dir: out_dir.display().to_string(),
            svg,
        },
        report: &outcome.report,
    };
    write_file(out_dir, "criterion_report.json", &to_json(&file))?;
    if svg {
        write_file(out_dir, "criterion.svg", &criterion_svg(&cs, &outcome))?;
    }
    Ok(format!("verdict: {}", serde_name(&outcome.report.verdict)))
}

// ---------------------------------------------------------------------------
// solve

fn solver_config(k: usize, tol: Option<f64>, seed: Option<u64>) -> Result<SolverConfig, CliError> {
    if k == 0 {
        return Err(CliError::Invalid("--k must be at least 1".into()));
    }
    let mut config = SolverConfig::default();
    config.k = k;
    if let Some(t) = tol {
        positive("--tol", t)?;
        config.tol = t;
    }
    if let Some(s) = seed {
        config.seed = s;
    }
    Ok(config)
}

fn map_solve_error(e: SolveError) -> CliError {
    match e {
        SolveError::NonConvergence { .. } | SolveError::Singular => {
            CliError::NonConvergence(e.to_string())
        }
        SolveError::UnsupportedTopology(_) | SolveError::BadMesh(_) => invalid(e),
    }
}

fn reject_holes(cs: &CrossSection) -> Result<(), CliError> {
    if !cs.holes().is_empty() {
        return Err(CliError::Invalid(
            "multiply-connected cross-sections unsupported".into(),
        ));
    }
    Ok(())
}

fn solve_report_file(
    input: &Path,
    sha: &str,
    h: f64,
    config: &SolverConfig,
    out_dir: &Path,
    mesh: &TriMesh,
    report: &SolveReport,
) -> SolveReportFile {
    let volume = mesh.revolved_volume();
    let lambda = report.pairs[0].lambda;
    SolveReportFile {
        format_version: FORMAT_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        command: "solve".to_string(),
        input_sha256: sha.to_string(),
        config: SolveConfig {
            input: input.display().to_string(),
            h,
            k: config.k,
            topology: "auto".to_string(),
            max_iter: config.max_iter,
            tol: config.tol,
            seed: config.seed,
            out_dir: out_dir.display().to_string(),
        },
        mode: report.mode.to_string(),
        lambda_plus: lambda,
        volume,
        objective: lambda * volume.cbrt(),
        iterations: report.iterations,
        residuals: report.residuals.clone(),
        near_degenerate: report.near_degenerate,
        pairs: report
            .pairs
            .iter()
            .map(|p| PairFile {
                mu: p.mu,
                lambda: p.lambda,
                c_b: p.c_b,
                psi: p.psi.clone(),
            })
            .collect(),
        mesh_text: mesh_to_text(mesh),
    }
}

fn cmd_solve(
    input: &Path,
    h: f64,
    k: usize,
    tol: Option<f64>,
    seed: Option<u64>,
    out_dir: &Path,
) -> Result<String, CliError> {
    positive("--h", h)?;
    let config = solver_config(k, tol, seed)?;
    let (cs, sha) = load_cross_section(input)?;
    reject_holes(&cs)?;
    ensure_out_dir(out_dir)?;

    let mesh = triangulate(&cs, h).map_err(invalid)?;
    let report = gseig::solve(&mesh, None, &config).map_err(map_solve_error)?;

    let file = solve_report_file(input, &sha, h, &config, out_dir, &mesh, &report);
    write_file(out_dir, "solve_report.json", &to_json(&file))?;
    write_file(
        out_dir,
        "solve_psi.csv",
        &solution_csv(&mesh, &report.pairs[0].psi),
    )?;
    write_file(
        out_dir,
        "solve_contours.svg",
        &solution_svg(&mesh, &report.pairs[0].psi),
    )?;
    Ok(format!(
        "lambda_plus = {} (mode {}, {} iterations), objective = {}",
        file.lambda_plus, file.mode, file.iterations, file.objective
    ))
}

// ---------------------------------------------------------------------------
// diagnose

fn parse_mode(path: &Path, s: &str) -> Result<SolveMode, CliError> {
    match s {
        "ball_like" => Ok(SolveMode::BallLike),
        "torus_like" => Ok(SolveMode::TorusLike),
        "plain_dirichlet" => Ok(SolveMode::PlainDirichlet),
        other => Err(CliError::Invalid(format!(
            "{}: unknown solve mode \"{other}\"",
            path.display()
        ))),
    }
}

fn map_diagnose_error(e: DiagnoseError) -> CliError {
    match e {
        DiagnoseError::WrongTopology { .. } | DiagnoseError::ZeroField => invalid(e),
        DiagnoseError::MemberFailed { ref message, .. } => {
            if message.contains("converge") {
                CliError::NonConvergence(e.to_string())
            } else {
                invalid(e)
            }
        }
    }
}

fn cmd_diagnose(
    input: &Path,
    h: f64,
    k: usize,
    tol: Option<f64>,
    seed: Option<u64>,
    out_dir: &Path,
) -> Result<String, CliError> {
    positive("--h", h)?;
    let (text, sha) = read_input(input)?;
    let probe: serde_json::Value = parse_json(input, &text)?;

    // A cross section carries "outer"; a solve report carries "pairs".
    let (mesh, report, config_echo) = if probe.get("outer").is_some() {
        let file: CrossSectionFile = parse_json(input, &text)?;
        check_format_version(input, file.format_version)?;
        let cs = CrossSection::from_file(file).map_err(invalid)?;
        reject_holes(&cs)?;
        let config = solver_config(k, tol, seed)?;
        let mesh = triangulate(&cs, h).map_err(invalid)?;
        let report = gseig::solve(&mesh, None, &config).map_err(map_solve_error)?;
        let echo = DiagnoseConfig {
            input: input.display().to_string(),
            input_kind: "cross_section",
            h,
            k: config.k,
            topology: "auto".to_string(),
            max_iter: config.max_iter,
            tol: config.tol,
            seed: config.seed,
            out_dir: out_dir.display().to_string(),
        };
        (mesh, report, echo)
    } else if probe.get("pairs").is_some() {
        let file: SolveReportFile = parse_json(input, &text)?;
        check_format_version(input, file.format_version)?;
        let mesh = mesh_from_text(&file.mesh_text).map_err(invalid)?;
        let mode = parse_mode(input, &file.mode)?;
        let pairs: Vec<EigenPair> = file
            .pairs
            .iter()
            .map(|p| EigenPair {
                mu: p.mu,
                lambda: p.lambda,
                psi: p.psi.clone(),
                c_b: p.c_b,
            })
            .collect();
        if pairs.is_empty() {
            return Err(CliError::Invalid(format!(
                "{}: solve report contains no eigenpairs",
                input.display()
            )));
        }
        if pairs.iter().any(|p| p.psi.len() != mesh.vertices.len()) {
            return Err(CliError::Invalid(format!(
                "{}: eigenvector length does not match the embedded mesh",
                input.display()
            )));
        }
        let report = SolveReport {
            pairs,
            mode,
            iterations: file.iterations,
            residuals: file.residuals.clone(),
            near_degenerate: file.near_degenerate,
        };
        let echo = DiagnoseConfig {
            input: input.display().to_string(),
            input_kind: "solve_report",
            h: file.config.h,
            k: file.config.k,
            topology: file.config.topology.clone(),
            max_iter: file.config.max_iter,
            tol: file.config.tol,
            seed: file.config.seed,
            out_dir: out_dir.display().to_string(),
        };
        (mesh, report, echo)
    } else {
        return Err(CliError::Invalid(format!(
            "{}: neither a cross section (missing \"outer\") nor a solve report (missing \"pairs\")",
            input.display()
        )));
    };

    ensure_out_dir(out_dir)?;
    let forms = gseig::assemble(&mesh);
    let diagnostics = diagnose::run(&mesh, &forms, &report).map_err(map_diagnose_error)?;

    let file = DiagnoseReportFile {
        format_version: FORMAT_VERSION,
        tool_version: TOOL_VERSION,
        command: "diagnose",
        input_sha256: &sha,
        config: config_echo,
        diagnostics: &diagnostics,
    };
    write_file(out_dir, "diagnose_report.json", &to_json(&file))?;
    write_file(
        out_dir,
        "diagnose_boundary_speed.svg",
        &line_chart_svg(&diagnostics.boundary_speed, "arclength", "|X|"),
    )?;
    write_file(
        out_dir,
        "diagnose_contours.svg",
        &solution_svg(&mesh, &report.pairs[0].psi),
    )?;
    Ok(format!(
        "objective = {}, constancy_score = {}, rellich_residual = {}",
        diagnostics.objective, diagnostics.constancy_score, diagnostics.rellich_residual
    ))
}

// ---------------------------------------------------------------------------
// sweep

fn sweep_members(path: &Path, family: &FamilySpec) -> Result<Vec<SweepMember>, CliError> {
    match family {
        FamilySpec::TorusCenters(s) => {
            positive("h", s.h)?;
            positive("minor_radius", s.minor_radius)?;
            for &c in &s.centers {
                positive("center", c)?;
            }
            Ok(torus_center_family(
                &s.centers,
                s.minor_radius,
                s.n_points,
                s.h,
            ))
        }
        FamilySpec::Scales(s) => {
            positive("base_h", s.base_h)?;
            for &f in &s.scales {
                positive("scale", f)?;
            }
            check_format_version(path, s.base.format_version)?;
            let base = CrossSection::new(
                s.base.outer.clone(),
                s.base.holes.clone(),
                s.base.metric,
            )
            .map_err(invalid)?;
            Ok(scale_family(&base, &s.scales, s.base_h))
        }
        FamilySpec::EllipseAspects(s) => {
            positive("h", s.h)?;
            positive("area", s.area)?;
            positive("center_r", s.center_r)?;
            for &q in &s.aspects {
                positive("aspect", q)?;
            }
            Ok(ellipse_aspect_family(
                s.center_r, s.area, &s.aspects, s.n_points, s.h,
            ))
        }
    }
}

fn cmd_sweep(input: &Path, out_dir: &Path) -> Result<String, CliError> {
    let (text, sha) = read_input(input)?;
    let file: SweepFile = parse_json(input, &text)?;
    check_format_version(input, file.format_version)?;
    let members = sweep_members(input, &file.family)?;
    ensure_out_dir(out_dir)?;

    let rows = diagnose::sweep(&members, &SolverConfig::default()).map_err(map_diagnose_error)?;

    let report = SweepReportFile {
        format_version: FORMAT_VERSION,
        tool_version: TOOL_VERSION,
        command: "sweep",
        input_sha256: &sha,
        config: SweepConfig {
            input: input.display().to_string(),
            out_dir: out_dir.display().to_string(),
        },
        family: &file,
        rows: &rows,
    };
    write_file(out_dir, "sweep_report.json", &to_json(&report))?;
    write_file(out_dir, "sweep.csv", &sweep_csv(&rows))?;
    let chart: Vec<(f64, f64)> = rows.iter().map(|r| (r.parameter, r.objective)).collect();
    write_file(
        out_dir,
        "sweep_objective.svg",
        &line_chart_svg(&chart, "parameter", "objective"),
    )?;

    let lo = rows.iter().map(|r| r.objective).fold(f64::INFINITY, f64::min);
    let hi = rows
        .iter()
        .map(|r| r.objective)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(format!(
        "{} members swept, objective in [{lo}, {hi}]",
        rows.len()
    ))
}

// ---------------------------------------------------------------------------
// verify-model

fn cmd_verify_model(
    seed: Option<u64>,
    points_csv: bool,
    inject_wrong_potential: bool,
    out_dir: &Path,
) -> Result<String, CliError> {
    let defaults = SuiteOptions::default();
    let options = SuiteOptions {
        seed: seed.unwrap_or(defaults.seed),
        inject_wrong_potential,
        record_points: points_csv,
    };
    ensure_out_dir(out_dir)?;

    let suite = geomfields::suite(options);

    let file = VerifyModelReportFile {
        format_version: FORMAT_VERSION,
        tool_version: TOOL_VERSION,
        command: "verify-model",
        config: VerifyModelConfig {
            seed: options.seed,
            inject_wrong_potential,
            points_csv,
            out_dir: out_dir.display().to_string(),
        },
        suite: &suite,
    };
    write_file(out_dir, "verify_model_report.json", &to_json(&file))?;
    if points_csv {
        write_file(
            out_dir,
            "point_residuals.csv",
            &geomfields::point_residual_csv(&suite),
        )?;
    }

    if !suite.all_pass {
        let failed: Vec<String> = suite
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.clone())
            .collect();
        return Err(CliError::Verification(failed));
    }
    Ok(format!(
        "{} checks passed (seed {})",
        suite.checks.len(),
        suite.seed
    ))
}

// ---------------------------------------------------------------------------
// mesh-info

fn cmd_mesh_info(input: &Path, h: f64, out_dir: &Path, svg: bool) -> Result<String, CliError> {
    positive("--h", h)?;
    let (cs, sha) = load_cross_section(input)?;
    ensure_out_dir(out_dir)?;

    let mesh = triangulate(&cs, h).map_err(invalid)?;
    let trace = mesh.boundary_trace();
    let axis_vertices = mesh
        .tags
        .iter()
        .filter(|t| matches!(t, VertexTag::Axis))
        .count();
    let max_defect = trace
        .closure_defects
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);

    let file = MeshInfoReportFile {
        format_version: FORMAT_VERSION,
        tool_version: TOOL_VERSION,
        command: "mesh-info",
        input_sha256: &sha,
        config: MeshInfoConfig {
            input: input.display().to_string(),
            h,
            out_dir: out_dir.display().to_string(),
            svg,
        },
        mesh: MeshStats {
            vertices: mesh.vertices.len(),
            triangles: mesh.triangles.len(),
            h: mesh.h,
            min_angle_deg: mesh.min_angle_deg(),
            section_area: mesh.area(),
            revolved_volume: mesh.revolved_volume(),
            axis_vertices,
            outer_boundary_edges: trace.outer.len(),
            hole_boundary_loops: trace.holes.len(),
            max_boundary_closure_defect: max_defect,
        },
    };
    write_file(out_dir, "mesh_info.json", &to_json(&file))?;
    if svg {
        write_file(out_dir, "mesh_preview.svg", &mesh_svg(&mesh))?;
    }
    Ok(format!(
        "{} vertices, {} triangles, min angle {}",
        mesh.vertices.len(),
        mesh.triangles.len(),
        mesh.min_angle_deg()
    ))
}
