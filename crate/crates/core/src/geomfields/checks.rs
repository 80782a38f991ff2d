//! Residual checks for the structural field identities: concircularity,
//! the Killing equations, the curvature–Killing identity, and Beltrami
//! eigenfield fits.

use super::calculus::{
    covariant_derivative, covariant_derivative_of, curl_div, sectional_curvature,
};
use super::fields::Field;
use super::{GeomError, ModelSpace};

const BASIS: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// Worst deviation from ∇_X Z = f·X over the basis directions, together
/// with the divergence identity div Z = 3f. Returns (max, per-point).
pub fn concircular_residual(
    space: ModelSpace,
    z: &Field,
    f: &dyn Fn([f64; 3]) -> f64,
    points: &[[f64; 3]],
) -> (f64, Vec<f64>) {
    let per: Vec<f64> = points
        .iter()
        .map(|&p| {
            let fp = f(p);
            let mut worst = 0.0f64;
            for e in BASIS {
                let d = covariant_derivative(space, e, z, p);
                let diff = [d[0] - fp * e[0], d[1] - fp * e[1], d[2] - fp * e[2]];
                worst = worst.max(space.norm(p, diff));
            }
            let (_, div) = curl_div(space, z, p);
            worst.max((div - 3.0 * fp).abs())
        })
        .collect();
    (per.iter().cloned().fold(0.0, f64::max), per)
}

/// Worst g-norm of the symmetrized covariant differential of Y: zero
/// exactly when Y is Killing. Returns (max, per-point).
pub fn killing_residual(
    space: ModelSpace,
    y: &Field,
    points: &[[f64; 3]],
) -> (f64, Vec<f64>) {
    let per: Vec<f64> = points
        .iter()
        .map(|&p| {
            let grad: Vec<[f64; 3]> = BASIS
                .iter()
                .map(|&e| covariant_derivative(space, e, y, p))
                .collect();
            // S_ij = g(∇_{e_i}Y, e_j) + g(∇_{e_j}Y, e_i); its (0,2) tensor
            // g-norm equals the flat Frobenius norm of the symmetrized
            // component matrix (the conformal factors cancel).
            let mut acc = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    let s = grad[i][j] + grad[j][i];
                    acc += s * s;
                }
            }
            acc.sqrt()
        })
        .collect();
    (per.iter().cloned().fold(0.0, f64::max), per)
}

/// Residual of the curvature–Killing identity
/// Rm(X,Y,Y,X) = |∇_X Y|²_g + g(X, ∇_X ∇_Y Y)
/// for a Killing field Y, evaluated pointwise. The Killing property is
/// guarded (residual < 1e-5 over the points), since the identity fails for
/// non-isometric flows.
pub fn s7l1_residual(
    space: ModelSpace,
    x: &Field,
    y: &Field,
    points: &[[f64; 3]],
) -> Result<(f64, Vec<f64>), GeomError> {
    let (killing, _) = killing_residual(space, y, points);
    if killing >= 1e-5 {
        return Err(GeomError::KillingGuard { residual: killing });
    }
    let yy_field = |q: [f64; 3]| {
        let yq = (y.eval)(q);
        covariant_derivative(space, yq, y, q)
    };
    let per: Vec<f64> = points
        .iter()
        .map(|&p| {
            let xv = (x.eval)(p);
            let yv = (y.eval)(p);
            let sample = sectional_curvature(space, p, xv, yv);
            let dxy = covariant_derivative(space, xv, y, p);
            let t2 = space.inner(p, dxy, dxy);
            let dxw = covariant_derivative_of(space, xv, &yy_field, p);
            let t3 = space.inner(p, xv, dxw);
            (sample.rm - t2 - t3).abs()
        })
        .collect();
    Ok((per.iter().cloned().fold(0.0, f64::max), per))
}

/// Least-squares Beltrami eigenvalue over the sample points: the λ
/// minimizing Σ|curl Y − λY|²_g, plus the relative residual
/// √(Σ|curl Y − λY|²_g / Σ|Y|²_g).
pub fn beltrami_fit(
    space: ModelSpace,
    y: &Field,
    points: &[[f64; 3]],
) -> Result<(f64, f64), GeomError> {
    let mut num = 0.0;
    let mut den = 0.0;
    let mut curls = Vec::with_capacity(points.len());
    for &p in points {
        let (curl, _) = curl_div(space, y, p);
        let yv = (y.eval)(p);
        num += space.inner(p, curl, yv);
        den += space.inner(p, yv, yv);
        curls.push((p, curl, yv));
    }
    if den <= 0.0 {
        return Err(GeomError::DegenerateField);
    }
    let lambda = num / den;
    let mut defect = 0.0;
    for (p, curl, yv) in curls {
        let d = [
            curl[0] - lambda * yv[0],
            curl[1] - lambda * yv[1],
            curl[2] - lambda * yv[2],
        ];
        defect += space.inner(p, d, d);
    }
    Ok((lambda, (defect / den).sqrt()))
}
