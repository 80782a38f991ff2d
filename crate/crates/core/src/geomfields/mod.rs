//! Tensor calculus on the three conformally flat model charts — Euclidean
//! space, the hyperbolic ball, and the spherical ball — together with a
//! verification suite for the structural identities the eigenfield theory
//! rests on: concircular position fields, Killing rotation fields, Beltrami
//! eigenfields, and the constant-curvature relations connecting them.
//!
//! Every metric has the form g = e^{2φ}·δ on its chart, with φ and ∇φ in
//! closed form; derivatives of fields default to fourth-order Richardson
//! central differences, overridden by closed-form Jacobians when a field
//! provides them.

pub mod calculus;
pub mod checks;
pub mod fields;

pub use calculus::{
    christoffel, christoffel_from_metric, covariant_derivative, curl_div, sectional_curvature,
    CurvatureSample,
};
pub use checks::{beltrami_fit, concircular_residual, killing_residual, s7l1_residual};
pub use fields::Field;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("point ({0}, {1}, {2}) lies outside the chart domain")]
    OutsideChart(f64, f64, f64),
    #[error("field is not Killing at the sample points (residual {residual:.3e} exceeds the 1e-5 guard)")]
    KillingGuard { residual: f64 },
    #[error("field vanishes at every sample point")]
    DegenerateField,
}

/// The three constant-curvature model spaces in conformally flat charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelSpace {
    /// ℝ³ with the flat metric (φ ≡ 0), curvature 0.
    Euclidean,
    /// Unit ball with e^{φ} = 2/(1−|x|²), curvature −1.
    HyperbolicBall,
    /// Unit ball with e^{φ} = 2/(1+|x|²), curvature +1.
    SphericalBall,
}

impl ModelSpace {
    pub fn contains(self, p: [f64; 3]) -> bool {
        match self {
            ModelSpace::Euclidean => p.iter().all(|v| v.is_finite()),
            _ => p.iter().all(|v| v.is_finite()) && norm_sq(p) < 1.0,
        }
    }

    /// Conformal exponent φ with g = e^{2φ}δ.
    pub fn phi(self, p: [f64; 3]) -> f64 {
        let u = norm_sq(p);
        match self {
            ModelSpace::Euclidean => 0.0,
            ModelSpace::HyperbolicBall => (2.0f64).ln() - (1.0 - u).ln(),
            ModelSpace::SphericalBall => (2.0f64).ln() - (1.0 + u).ln(),
        }
    }

    /// Closed-form ∇φ.
    pub fn grad_phi(self, p: [f64; 3]) -> [f64; 3] {
        let u = norm_sq(p);
        let c = match self {
            ModelSpace::Euclidean => 0.0,
            ModelSpace::HyperbolicBall => 2.0 / (1.0 - u),
            ModelSpace::SphericalBall => -2.0 / (1.0 + u),
        };
        [c * p[0], c * p[1], c * p[2]]
    }

    /// e^{φ}, the length scale of the metric at `p`.
    pub fn conformal(self, p: [f64; 3]) -> f64 {
        self.phi(p).exp()
    }

    /// Metric inner product g(x, y) at `p`.
    pub fn inner(self, p: [f64; 3], x: [f64; 3], y: [f64; 3]) -> f64 {
        let e2 = (2.0 * self.phi(p)).exp();
        e2 * (x[0] * y[0] + x[1] * y[1] + x[2] * y[2])
    }

    pub fn norm(self, p: [f64; 3], x: [f64; 3]) -> f64 {
        self.inner(p, x, x).sqrt()
    }

    /// Finite-difference step: shrinks toward the chart boundary so stencil
    /// points stay inside the ball.
    pub fn fd_step(self, p: [f64; 3]) -> f64 {
        match self {
            ModelSpace::Euclidean => 1e-5,
            _ => 1e-4 * (1.0 - norm_sq(p).sqrt()),
        }
    }

    /// The potential of the concircular position field on this space.
    pub fn concircular_potential(self, p: [f64; 3]) -> f64 {
        let u = norm_sq(p);
        match self {
            ModelSpace::Euclidean => 1.0,
            ModelSpace::HyperbolicBall => (1.0 + u) / (1.0 - u),
            ModelSpace::SphericalBall => (1.0 - u) / (1.0 + u),
        }
    }

    /// The constant sectional curvature of the space.
    pub fn curvature(self) -> f64 {
        match self {
            ModelSpace::Euclidean => 0.0,
            ModelSpace::HyperbolicBall => -1.0,
            ModelSpace::SphericalBall => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelSpace::Euclidean => "euclidean",
            ModelSpace::HyperbolicBall => "hyperbolic_ball",
            ModelSpace::SphericalBall => "spherical_ball",
        }
    }
}

pub(crate) fn norm_sq(p: [f64; 3]) -> f64 {
    p[0] * p[0] + p[1] * p[1] + p[2] * p[2]
}

/// One verification check: a named residual compared against its bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// "<=" for ordinary residual bounds, ">" for negative controls that
    /// must stay large.
    pub comparison: String,
    pub tolerance: f64,
    pub residual: f64,
    pub pass: bool,
    pub points: usize,
}

/// Full verification suite output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub all_pass: bool,
    pub checks: Vec<CheckResult>,
    /// Per-point residual traces, populated on request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_residuals: Option<Vec<PointTrace>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointTrace {
    pub check: String,
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Corrupt the hyperbolic concircular potential; the suite must catch it.
    pub inject_wrong_potential: bool,
    /// Record per-point residual traces for CSV export.
    pub record_points: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: 0x6d6f_6465,
            inject_wrong_potential: false,
            record_points: false,
        }
    }
}

/// Uniform points in the ball |p| < 0.9 (rejection sampling, deterministic
/// for a fixed RNG state).
pub fn sample_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<[f64; 3]> {
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let p = [
            rng.random_range(-0.9..0.9),
            rng.random_range(-0.9..0.9),
            rng.random_range(-0.9..0.9),
        ];
        if norm_sq(p) < 0.81 {
            pts.push(p);
        }
    }
    pts
}

fn unit_vector(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n = norm_sq(v);
        if n > 1e-3 && n <= 1.0 {
            let s = n.sqrt();
            return [v[0] / s, v[1] / s, v[2] / s];
        }
    }
}

/// Run the full verification suite with a fixed, recorded seed.
pub fn suite(options: SuiteOptions) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut checks: Vec<CheckResult> = Vec::new();
    let mut traces: Vec<PointTrace> = Vec::new();

    let push = |checks: &mut Vec<CheckResult>,
                    traces: &mut Vec<PointTrace>,
                    name: &str,
                    upper: bool,
                    tol: f64,
                    residual: f64,
                    per_point: Vec<f64>| {
        let pass = if upper { residual <= tol } else { residual > tol };
        checks.push(CheckResult {
            name: name.to_string(),
            comparison: if upper { "<=" } else { ">" }.to_string(),
            tolerance: tol,
            residual,
            pass,
            points: per_point.len(),
        });
        if options.record_points {
            traces.push(PointTrace {
                check: name.to_string(),
                residuals: per_point,
            });
        }
    };

    let all = [
        ModelSpace::Euclidean,
        ModelSpace::HyperbolicBall,
        ModelSpace::SphericalBall,
    ];

    // Closed-form ∇φ versus finite differences of φ.
    for space in all {
        let pts = sample_points(&mut rng, 100);
        let per: Vec<f64> = pts
            .iter()
            .map(|&p| {
                let g = space.grad_phi(p);
                let fd = calculus::grad_scalar_fd(space, &|q| space.phi(q), p);
                ((g[0] - fd[0]).powi(2) + (g[1] - fd[1]).powi(2) + (g[2] - fd[2]).powi(2)).sqrt()
            })
            .collect();
        let worst = per.iter().cloned().fold(0.0f64, f64::max);
        push(
            &mut checks,
            &mut traces,
            &format!("grad_phi_fd_{}", space.name()),
            true,
            1e-8,
            worst,
            per,
        );
    }

    // Closed-form Christoffels versus symbols differenced from the metric.
    for space in all {
        let mut pts = sample_points(&mut rng, 50);
        pts.push([0.3, 0.0, 0.0]);
        let per: Vec<f64> = pts
            .iter()
            .map(|&p| {
                let a = christoffel(space, p);
                let b = christoffel_from_metric(space, p);
                let mut worst = 0.0f64;
                for k in 0..3 {
                    for i in 0..3 {
                        for j in 0..3 {
                            worst = worst.max((a[k][i][j] - b[k][i][j]).abs());
                        }
                    }
                }
                worst
            })
            .collect();
        let worst = per.iter().cloned().fold(0.0f64, f64::max);
        push(
            &mut checks,
            &mut traces,
            &format!("christoffel_fd_{}", space.name()),
            true,
            1e-7,
            worst,
            per,
        );
    }

    // Concircular position fields with their model potentials.
    for space in all {
        let pts = sample_points(&mut rng, 100);
        let z = fields::position();
        let bad_factor = if options.inject_wrong_potential
            && space == ModelSpace::HyperbolicBall
        {
            1.05
        } else {
            1.0
        };
        let f = move |p: [f64; 3]| bad_factor * space.concircular_potential(p);
        let (worst, per) = concircular_residual(space, &z, &f, &pts);
        let tol = match space {
            ModelSpace::Euclidean => 1e-10,
            _ => 1e-7,
        };
        push(
            &mut checks,
            &mut traces,
            &format!("concircular_position_{}", space.name()),
            true,
            tol,
            worst,
            per,
        );
    }
    {
        // Negative control: the rotation field is not concircular.
        let pts = sample_points(&mut rng, 100);
        let (worst, per) = concircular_residual(
            ModelSpace::Euclidean,
            &fields::rotation(),
            &|_| 1.0,
            &pts,
        );
        push(
            &mut checks,
            &mut traces,
            "concircular_control_rotation",
            false,
            0.5,
            worst,
            per,
        );
    }

    // Killing rotation fields; position field as negative control.
    for space in all {
        let pts = sample_points(&mut rng, 100);
        let (worst, per) = killing_residual(space, &fields::rotation(), &pts);
        let tol = match space {
            ModelSpace::Euclidean => 1e-10,
            _ => 1e-7,
        };
        push(
            &mut checks,
            &mut traces,
            &format!("killing_rotation_{}", space.name()),
            true,
            tol,
            worst,
            per,
        );
    }
    {
        let pts = sample_points(&mut rng, 100);
        let (worst, per) = killing_residual(ModelSpace::Euclidean, &fields::position(), &pts);
        push(
            &mut checks,
            &mut traces,
            "killing_control_position",
            false,
            0.1,
            worst,
            per,
        );
    }
    {
        // The Hopf field generates an isometry of the round sphere.
        let pts = sample_points(&mut rng, 100);
        let (worst, per) = killing_residual(ModelSpace::SphericalBall, &fields::hopf(), &pts);
        push(
            &mut checks,
            &mut traces,
            "killing_hopf",
            true,
            1e-6,
            worst,
            per,
        );
    }

    // Curl and divergence: classical rotation curl, then the Hopf field.
    {
        let pts = sample_points(&mut rng, 100);
        let rot = fields::rotation();
        let per: Vec<f64> = pts
            .iter()
            .map(|&p| {
                let (curl, div) = curl_div(ModelSpace::Euclidean, &rot, p);
                let d = [curl[0], curl[1], curl[2] - 2.0];
                (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt() + div.abs()
            })
            .collect();
        let worst = per.iter().cloned().fold(0.0f64, f64::max);
        push(
            &mut checks,
            &mut traces,
            "curl_euclidean_rotation",
            true,
            1e-10,
            worst,
            per,
        );
    }
    {
        let pts = sample_points(&mut rng, 100);
        let hopf = fields::hopf();
        let space = ModelSpace::SphericalBall;
        let per: Vec<f64> = pts
            .iter()
            .map(|&p| {
                let (curl, div) = curl_div(space, &hopf, p);
                let y = (hopf.eval)(p);
                let d = [
                    curl[0] - 2.0 * y[0],
                    curl[1] - 2.0 * y[1],
                    curl[2] - 2.0 * y[2],
                ];
                space.norm(p, d) + div.abs()
            })
            .collect();
        let worst = per.iter().cloned().fold(0.0f64, f64::max);
        push(
            &mut checks,
            &mut traces,
            "curl_spherical_hopf",
            true,
            1e-6,
            worst,
            per,
        );
    }

    // Constant sectional curvature over random planes.
    for space in all {
        let pts = sample_points(&mut rng, 50);
        let target = space.curvature();
        let tol = if space == ModelSpace::Euclidean {
            1e-9
        } else {
            1e-6
        };
        let per: Vec<f64> = pts
            .iter()
            .map(|&p| {
                let x = unit_vector(&mut rng);
                let z = unit_vector(&mut rng);
                let sample = sectional_curvature(space, p, x, z);
                if sample.wedge_norm_sq <= 1e-14 {
                    0.0
                } else {
                    (sample.sec - target).abs()
                }
            })
            .collect();
        let worst = per.iter().cloned().fold(0.0f64, f64::max);
        push(
            &mut checks,
            &mut traces,
            &format!("sectional_curvature_{}", space.name()),
            true,
            tol,
            worst,
            per,
        );
    }

    // Curvature–Killing identity for translation, rotation, and Hopf fields.
    {
        let pts = sample_points(&mut rng, 100);
        let e1 = fields::constant("e1", [1.0, 0.0, 0.0]);
        let x = fields::constant("x", [0.3, -0.7, 0.55]);
        let (worst, per) =
            s7l1_residual(ModelSpace::Euclidean, &x, &e1, &pts).expect("translation is Killing");
        push(
            &mut checks,
            &mut traces,
            "curvature_identity_translation",
            true,
            1e-10,
            worst,
            per,
        );
    }
    {
        let pts = sample_points(&mut rng, 100);
        let x = fields::constant("x", [0.9, 0.2, -0.4]);
        let (worst, per) =
            s7l1_residual(ModelSpace::Euclidean, &x, &fields::rotation(), &pts)
                .expect("rotation is Killing");
        push(
            &mut checks,
            &mut traces,
            "curvature_identity_rotation",
            true,
            1e-5,
            worst,
            per,
        );
    }
    {
        let pts = sample_points(&mut rng, 100);
        let x = fields::constant("x", [-0.5, 0.8, 0.31]);
        let (worst, per) =
            s7l1_residual(ModelSpace::SphericalBall, &x, &fields::hopf(), &pts)
                .expect("the Hopf field is Killing on the spherical chart");
        push(
            &mut checks,
            &mut traces,
            "curvature_identity_hopf",
            true,
            1e-5,
            worst,
            per,
        );
    }

    // Beltrami fits: translation (λ = 0), Hopf (λ = 2), and the hyperbolic
    // obstruction (no Killing Beltrami field in curvature −1).
    {
        let pts = sample_points(&mut rng, 100);
        let (lam, res) =
            beltrami_fit(ModelSpace::Euclidean, &fields::constant("e1", [1.0, 0.0, 0.0]), &pts)
                .expect("constant field is nonzero");
        push(
            &mut checks,
            &mut traces,
            "beltrami_translation_lambda",
            true,
            1e-8,
            lam.abs().max(res),
            vec![],
        );
    }
    let hopf_lambda = {
        let pts = sample_points(&mut rng, 100);
        let (lam, res) = beltrami_fit(ModelSpace::SphericalBall, &fields::hopf(), &pts)
            .expect("Hopf field is nonzero");
        push(
            &mut checks,
            &mut traces,
            "beltrami_hopf_lambda",
            true,
            1e-6,
            (lam - 2.0).abs().max(res),
            vec![],
        );
        lam
    };
    {
        let pts = sample_points(&mut rng, 100);
        let (_, res) = beltrami_fit(ModelSpace::HyperbolicBall, &fields::rotation(), &pts)
            .expect("rotation field is nonzero");
        push(
            &mut checks,
            &mut traces,
            "beltrami_hyperbolic_obstruction",
            false,
            0.1,
            res,
            vec![],
        );
    }

    // λ²/4 = sec for the Hopf pair, the structure equation
    // ∇_X Y = (λ/2) Y ×_g X, and geodesic flow ∇_Y Y = 0.
    {
        let space = ModelSpace::SphericalBall;
        let hopf = fields::hopf();
        let pts = sample_points(&mut rng, 100);
        let mut mt9 = Vec::with_capacity(pts.len());
        let mut s7e2 = Vec::with_capacity(pts.len());
        let mut geodesic = Vec::with_capacity(pts.len());
        for &p in &pts {
            let y = (hopf.eval)(p);
            let x = unit_vector(&mut rng);
            let z = unit_vector(&mut rng);
            let sample = sectional_curvature(space, p, x, z);
            if sample.wedge_norm_sq > 1e-14 {
                mt9.push((hopf_lambda * hopf_lambda / 4.0 - sample.sec).abs());
            } else {
                mt9.push(0.0);
            }
            // Killing–Beltrami structure equation ∇_X Y = (λ/2)·(Y ×_g X):
            // for any Killing field, 2g(∇_X Y, Z) = vol(curl Y, X, Z), and
            // curl Y = λY closes it. The argument order matches the ⋆dω
            // curl convention (flat rigid-rotation check: ∇_X R = Ω × X
            // with curl R = 2Ω).
            let mut worst_dir = 0.0f64;
            for i in 0..3 {
                let mut e = [0.0; 3];
                e[i] = 1.0;
                let dy = covariant_derivative(space, e, &hopf, p);
                let cross = calculus::metric_cross(space, p, y, e);
                let d = [
                    dy[0] - 0.5 * hopf_lambda * cross[0],
                    dy[1] - 0.5 * hopf_lambda * cross[1],
                    dy[2] - 0.5 * hopf_lambda * cross[2],
                ];
                worst_dir = worst_dir.max(space.norm(p, d));
            }
            s7e2.push(worst_dir);
            let dyy = covariant_derivative(space, y, &hopf, p);
            geodesic.push(space.norm(p, dyy));
        }
        let w1 = mt9.iter().cloned().fold(0.0f64, f64::max);
        push(
            &mut checks,
            &mut traces,
            "lambda_quarter_square_vs_curvature",
            true,
            1e-5,
            w1,
            mt9,
        );
        let w2 = s7e2.iter().cloned().fold(0.0f64, f64::max);
        push(
            &mut checks,
            &mut traces,
            "structure_equation_hopf",
            true,
            1e-5,
            w2,
            s7e2,
        );
        let w3 = geodesic.iter().cloned().fold(0.0f64, f64::max);
        push(
            &mut checks,
            &mut traces,
            "geodesic_hopf",
            true,
            1e-5,
            w3,
            geodesic,
        );
    }

    let all_pass = checks.iter().all(|c| c.pass);
    SuiteReport {
        seed: options.seed,
        all_pass,
        checks,
        point_residuals: if options.record_points {
            Some(traces)
        } else {
            None
        },
    }
}

/// CSV of per-point residuals from a suite run with `record_points`.
pub fn point_residual_csv(report: &SuiteReport) -> String {
    let mut out = String::from("check,point_index,residual\n");
    if let Some(traces) = &report.point_residuals {
        for t in traces {
            for (i, r) in t.residuals.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", t.check, i, r));
            }
        }
    }
    out
}
