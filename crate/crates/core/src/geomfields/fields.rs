//! Named vector fields on the model charts, with closed-form Jacobians.
//!
//! # The Hopf field in the spherical chart
//!
//! The spherical chart is the stereographic image of the unit three-sphere
//! S³ = {x² + y² + z² + w² = 1} ⊂ ℝ⁴, projected from the pole w = +1
//! (so the chart respects the boundary orientation S³ inherits from the
//! unit four-ball):
//!
//! ```text
//! π(x, y, z, w) = (x, y, z) / (1 − w),
//! π⁻¹(ξ) = (2ξ₁, 2ξ₂, 2ξ₃, u − 1) / (1 + u),   u = |ξ|².
//! ```
//!
//! The round metric pulls back to 4/(1+u)²·δ, which is exactly the chart
//! metric of [`super::ModelSpace::SphericalBall`]. The Hopf rotation field
//! on S³,
//!
//! ```text
//! V(x, y, z, w) = (−y, x, −w, z),
//! ```
//!
//! is tangent (V·p = 0) and of unit length. Pushing it through dπ at
//! p = π⁻¹(ξ), using dπ(v) = (v₁, v₂, v₃)/(1−w) + (x, y, z)·v₄/(1−w)² and
//! 1 − w = 2/(1+u), gives after simplification
//!
//! ```text
//! Y(ξ) = ( ξ₁ξ₃ − ξ₂,  ξ₁ + ξ₂ξ₃,  (1 − ξ₁² − ξ₂² + ξ₃²)/2 ),
//! ```
//!
//! a polynomial field of constant metric length 1 (e.g. |Y|_g = 1 at the
//! origin: |Y| = 1/2 and e^{φ} = 2) with curl Y = 2Y; projecting from the
//! opposite pole reverses the chart orientation and lands on the λ = −2
//! partner instead. The Euclidean Jacobian is
//!
//! ```text
//! ∂Y/∂ξ = [  ξ₃  −1    ξ₁ ]
//!         [  1    ξ₃   ξ₂ ]
//!         [ −ξ₁  −ξ₂   ξ₃ ].
//! ```

/// A vector field on a chart: an evaluation closure plus an optional
/// closed-form Jacobian (column convention J[k][j] = ∂_j Y^k). Derivative
/// operators fall back to finite differences when `jacobian` is `None`.
pub struct Field {
    pub name: &'static str,
    pub eval: Box<dyn Fn([f64; 3]) -> [f64; 3] + Send + Sync>,
    pub jacobian: Option<Box<dyn Fn([f64; 3]) -> [[f64; 3]; 3] + Send + Sync>>,
}

impl Field {
    pub fn from_fn(
        name: &'static str,
        eval: impl Fn([f64; 3]) -> [f64; 3] + Send + Sync + 'static,
    ) -> Self {
        Self {
            name,
            eval: Box::new(eval),
            jacobian: None,
        }
    }
}

/// The constant field p ↦ v (a translation generator in the flat chart).
pub fn constant(name: &'static str, v: [f64; 3]) -> Field {
    Field {
        name,
        eval: Box::new(move |_| v),
        jacobian: Some(Box::new(|_| [[0.0; 3]; 3])),
    }
}

/// The position field p ↦ p, concircular on all three model spaces.
pub fn position() -> Field {
    Field {
        name: "position",
        eval: Box::new(|p| p),
        jacobian: Some(Box::new(|_| {
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        })),
    }
}

/// The rotation field (−y, x, 0) about the z axis, Killing on all three
/// model spaces.
pub fn rotation() -> Field {
    Field {
        name: "rotation",
        eval: Box::new(|p| [-p[1], p[0], 0.0]),
        jacobian: Some(Box::new(|_| {
            [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
        })),
    }
}

/// The Hopf field in the spherical chart (derivation in the module docs):
/// a Killing field of unit length satisfying curl Y = 2Y.
pub fn hopf() -> Field {
    Field {
        name: "hopf",
        eval: Box::new(|p| {
            let [a, b, c] = p;
            [a * c - b, a + b * c, 0.5 * (1.0 - a * a - b * b + c * c)]
        }),
        jacobian: Some(Box::new(|p| {
            let [a, b, c] = p;
            [[c, -1.0, a], [1.0, c, b], [-a, -b, c]]
        })),
    }
}
