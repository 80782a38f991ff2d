//! Coordinate tensor calculus for conformally flat metrics g = e^{2φ}δ:
//! Christoffel symbols, covariant derivatives, curl/divergence, and the
//! Riemann tensor assembled from differenced symbols.
//!
//! Derivatives use fourth-order Richardson central differences with the
//! chart-aware step from [`ModelSpace::fd_step`]; fields carrying a
//! closed-form Jacobian skip the differencing entirely.

use super::fields::Field;
use super::ModelSpace;

/// Fourth-order central difference of a scalar function along axis `axis`.
fn diff4(f: &dyn Fn([f64; 3]) -> f64, p: [f64; 3], axis: usize, h: f64) -> f64 {
    let at = |s: f64| {
        let mut q = p;
        q[axis] += s;
        f(q)
    };
    (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h)
}

/// Gradient of a scalar chart function by finite differences.
pub fn grad_scalar_fd(space: ModelSpace, f: &dyn Fn([f64; 3]) -> f64, p: [f64; 3]) -> [f64; 3] {
    let h = space.fd_step(p);
    [diff4(f, p, 0, h), diff4(f, p, 1, h), diff4(f, p, 2, h)]
}

/// Finite-difference Jacobian J[k][j] = ∂_j F^k.
fn jacobian_fd<F: Fn([f64; 3]) -> [f64; 3]>(space: ModelSpace, f: &F, p: [f64; 3]) -> [[f64; 3]; 3] {
    let h = space.fd_step(p);
    let mut j = [[0.0; 3]; 3];
    for axis in 0..3 {
        let at = |s: f64| {
            let mut q = p;
            q[axis] += s;
            f(q)
        };
        let (p2, p1, m1, m2) = (at(2.0 * h), at(h), at(-h), at(-2.0 * h));
        for k in 0..3 {
            j[k][axis] = (-p2[k] + 8.0 * p1[k] - 8.0 * m1[k] + m2[k]) / (12.0 * h);
        }
    }
    j
}

/// Jacobian of a field: closed form when provided, finite differences
/// otherwise.
pub fn field_jacobian(space: ModelSpace, field: &Field, p: [f64; 3]) -> [[f64; 3]; 3] {
    match &field.jacobian {
        Some(jac) => jac(p),
        None => jacobian_fd(space, &|q| (field.eval)(q), p),
    }
}

/// Christoffel symbols Γ[k][i][j] = Γ^k_ij of the conformal metric, in
/// closed form: Γ^k_ij = δ_ik ∂_jφ + δ_jk ∂_iφ − δ_ij ∂_kφ.
///
/// Panics if `p` lies outside the chart domain.
pub fn christoffel(space: ModelSpace, p: [f64; 3]) -> [[[f64; 3]; 3]; 3] {
    assert!(space.contains(p), "point outside the chart domain");
    let d = space.grad_phi(p);
    let mut g = [[[0.0; 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut v = 0.0;
                if i == k {
                    v += d[j];
                }
                if j == k {
                    v += d[i];
                }
                if i == j {
                    v -= d[k];
                }
                g[k][i][j] = v;
            }
        }
    }
    g
}

/// Christoffel symbols differenced directly from the metric components,
/// Γ^k_ij = ½ g^{kl} (∂_i g_jl + ∂_j g_il − ∂_l g_ij); the independent
/// oracle for [`christoffel`].
pub fn christoffel_from_metric(space: ModelSpace, p: [f64; 3]) -> [[[f64; 3]; 3]; 3] {
    assert!(space.contains(p), "point outside the chart domain");
    let metric_entry = |i: usize, j: usize| {
        move |q: [f64; 3]| {
            if i == j {
                (2.0 * space.phi(q)).exp()
            } else {
                0.0
            }
        }
    };
    let h = space.fd_step(p);
    // dg[l][i][j] = ∂_l g_ij
    let mut dg = [[[0.0; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                dg[l][i][j] = diff4(&metric_entry(i, j), p, l, h);
            }
        }
    }
    let ginv = (-2.0 * space.phi(p)).exp();
    let mut gamma = [[[0.0; 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                // Diagonal inverse metric: only l = k contributes.
                gamma[k][i][j] = 0.5 * ginv * (dg[i][j][k] + dg[j][i][k] - dg[k][i][j]);
            }
        }
    }
    gamma
}

/// (∇_X Y)^k = X^i ∂_i Y^k + Γ^k_ij X^i Y^j at `p`, with X given by its
/// value at `p`.
///
/// Panics if `p` lies outside the chart domain.
pub fn covariant_derivative(
    space: ModelSpace,
    x: [f64; 3],
    y: &Field,
    p: [f64; 3],
) -> [f64; 3] {
    let j = field_jacobian(space, y, p);
    let yv = (y.eval)(p);
    cov_from_parts(space, x, yv, &j, p)
}

/// Covariant derivative of an arbitrary closure (no closed Jacobian), used
/// for nested derivatives like ∇_X (∇_Y Y).
pub fn covariant_derivative_of<F: Fn([f64; 3]) -> [f64; 3]>(
    space: ModelSpace,
    x: [f64; 3],
    f: &F,
    p: [f64; 3],
) -> [f64; 3] {
    let j = jacobian_fd(space, f, p);
    cov_from_parts(space, x, f(p), &j, p)
}

fn cov_from_parts(
    space: ModelSpace,
    x: [f64; 3],
    yv: [f64; 3],
    j: &[[f64; 3]; 3],
    p: [f64; 3],
) -> [f64; 3] {
    assert!(space.contains(p), "point outside the chart domain");
    let gamma = christoffel(space, p);
    let mut out = [0.0; 3];
    for k in 0..3 {
        let mut v = 0.0;
        for i in 0..3 {
            v += j[k][i] * x[i];
            for jj in 0..3 {
                v += gamma[k][i][jj] * x[i] * yv[jj];
            }
        }
        out[k] = v;
    }
    out
}

/// Coordinate curl and divergence:
/// div = (1/√det g) ∂_i(√det g · X^i), curl^i = (1/√det g) ε^{ijk} ∂_j(g_kl X^l),
/// which for the conformal metric reduce to
/// div = tr J + 3 X·∇φ and curl = e^{−φ}(2 ∇φ × X + ∇ × X).
///
/// Panics if `p` lies outside the chart domain.
pub fn curl_div(space: ModelSpace, field: &Field, p: [f64; 3]) -> ([f64; 3], f64) {
    assert!(space.contains(p), "point outside the chart domain");
    let j = field_jacobian(space, field, p);
    let x = (field.eval)(p);
    let d = space.grad_phi(p);
    let div = j[0][0] + j[1][1] + j[2][2] + 3.0 * (x[0] * d[0] + x[1] * d[1] + x[2] * d[2]);
    let curl_flat = [
        j[2][1] - j[1][2],
        j[0][2] - j[2][0],
        j[1][0] - j[0][1],
    ];
    let twist = cross(d, x);
    let s = (-space.phi(p)).exp();
    let curl = [
        s * (2.0 * twist[0] + curl_flat[0]),
        s * (2.0 * twist[1] + curl_flat[1]),
        s * (2.0 * twist[2] + curl_flat[2]),
    ];
    (curl, div)
}

/// Metric cross product X ×_g Y, defined by g(X ×_g Y, W) = vol_g(X, Y, W);
/// for the conformal metric this is e^{φ}·(X × Y).
pub fn metric_cross(space: ModelSpace, p: [f64; 3], x: [f64; 3], y: [f64; 3]) -> [f64; 3] {
    let s = space.conformal(p);
    let c = cross(x, y);
    [s * c[0], s * c[1], s * c[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// One sectional-curvature evaluation.
#[derive(Debug, Clone, Copy)]
pub struct CurvatureSample {
    /// Rm(X, Z, Z, X), the lowered Riemann tensor on the plane.
    pub rm: f64,
    /// |X ∧ Z|²_g = |X|²|Z|² − g(X,Z)².
    pub wedge_norm_sq: f64,
    /// rm / wedge_norm_sq, or 0 by convention for degenerate planes
    /// (wedge_norm_sq ≤ 1e-14).
    pub sec: f64,
}

/// Riemann tensor Rm^l_ijk = ∂_iΓ^l_jk − ∂_jΓ^l_ik + Γ^l_im Γ^m_jk −
/// Γ^l_jm Γ^m_ik, with ∂Γ by fourth-order differences of the closed-form
/// symbols.
fn riemann(space: ModelSpace, p: [f64; 3]) -> [[[[f64; 3]; 3]; 3]; 3] {
    let h = space.fd_step(p);
    // dgamma[i][l][j][k] = ∂_i Γ^l_jk
    let mut dgamma = [[[[0.0; 3]; 3]; 3]; 3];
    for axis in 0..3 {
        let at = |s: f64| {
            let mut q = p;
            q[axis] += s;
            christoffel(space, q)
        };
        let (p2, p1, m1, m2) = (at(2.0 * h), at(h), at(-h), at(-2.0 * h));
        for l in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    dgamma[axis][l][j][k] = (-p2[l][j][k] + 8.0 * p1[l][j][k]
                        - 8.0 * m1[l][j][k]
                        + m2[l][j][k])
                        / (12.0 * h);
                }
            }
        }
    }
    let gamma = christoffel(space, p);
    let mut rm = [[[[0.0; 3]; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut v = dgamma[i][l][j][k] - dgamma[j][l][i][k];
                    for m in 0..3 {
                        v += gamma[l][i][m] * gamma[m][j][k] - gamma[l][j][m] * gamma[m][i][k];
                    }
                    rm[l][i][j][k] = v;
                }
            }
        }
    }
    rm
}

/// Sectional curvature of the plane spanned by X and Z at `p`.
///
/// Panics if `p` lies outside the chart domain.
pub fn sectional_curvature(
    space: ModelSpace,
    p: [f64; 3],
    x: [f64; 3],
    z: [f64; 3],
) -> CurvatureSample {
    assert!(space.contains(p), "point outside the chart domain");
    let rm4 = riemann(space, p);
    // (R(X,Z)Z)^l, then lower and contract with X.
    let mut rxzz = [0.0; 3];
    for l in 0..3 {
        let mut v = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    v += rm4[l][i][j][k] * x[i] * z[j] * z[k];
                }
            }
        }
        rxzz[l] = v;
    }
    let rm = space.inner(p, rxzz, x);
    let wedge = space.inner(p, x, x) * space.inner(p, z, z) - space.inner(p, x, z).powi(2);
    let sec = if wedge > 1e-14 { rm / wedge } else { 0.0 };
    CurvatureSample {
        rm,
        wedge_norm_sq: wedge,
        sec,
    }
}
