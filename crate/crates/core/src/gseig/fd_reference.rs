//! Independent finite-difference reference for torus-like sections.
//!
//! Cross-checking the element solver needs a discretisation that shares
//! nothing with it: this one solves the same stream-function eigenproblem
//! on elliptical sections with a cell-centred polar grid, second-order
//! differences, and dense LU inverse iteration. Only the physical problem
//! is common; mesh, basis, quadrature, and eigensolver all differ.
//!
//! An ellipse with semi-axes (a_r, a_z) around (r0, 0) maps to the disc of
//! radius a_r by stretching z̃ = (a_r/a_z) z, turning the operator into
//!
//! ```text
//! ψ_rr + β ψ_z̃z̃ − ψ_r / r = −μ ψ,     β = (a_r/a_z)²,
//! ```
//!
//! on the disc, with r = r0 + ρ cos θ. Polar derivatives use the standard
//! chain rule; the radial grid is cell-centred (ρ_i = (i+½)Δρ) so nothing
//! is evaluated at the coordinate centre, rows across the centre couple
//! through ψ(−ρ, θ) = ψ(ρ, θ+π), and the outer ghost row enforces the
//! shared boundary value 2c − ψ via its own column. The zero-mean
//! constraint row closes the system, and every inverse-iteration step
//! satisfies it exactly because the constraint is one of the solved rows.

use nalgebra::{DMatrix, DVector};

/// Grid and section parameters for the reference solve.
#[derive(Debug, Clone, Copy)]
pub struct FdTorusSpec {
    /// Centre radius of the section (distance to the axis).
    pub r0: f64,
    /// Semi-axis along r.
    pub a_r: f64,
    /// Semi-axis along z.
    pub a_z: f64,
    pub n_rho: usize,
    pub n_theta: usize,
}

impl FdTorusSpec {
    pub fn circle(r0: f64, a: f64, n_rho: usize) -> Self {
        FdTorusSpec {
            r0,
            a_r: a,
            a_z: a,
            n_rho,
            n_theta: 2 * n_rho,
        }
    }
}

/// Smallest positive eigenvalue μ of the reference discretisation.
pub fn torus_mu(spec: &FdTorusSpec) -> f64 {
    assert!(spec.n_theta % 2 == 0, "theta count must be even");
    assert!(spec.r0 - spec.a_r > 0.0, "section must stay off the axis");
    let (nr, nt) = (spec.n_rho, spec.n_theta);
    let n = nr * nt + 1; // + shared boundary value
    let c_col = n - 1;
    let drho = spec.a_r / nr as f64;
    let dth = 2.0 * std::f64::consts::PI / nt as f64;
    let beta = (spec.a_r / spec.a_z).powi(2);

    let idx = |i: usize, j: usize| i * nt + j;
    let mut a = DMatrix::<f64>::zeros(n, n);

    // Neighbour in the radial direction, folding across the centre and
    // into the ghost row at the outer edge. Returns (column, factor) pairs.
    let radial = |i: isize, j: usize| -> Vec<(usize, f64)> {
        if i < 0 {
            vec![(idx(0, (j + nt / 2) % nt), 1.0)]
        } else if (i as usize) < nr {
            vec![(idx(i as usize, j), 1.0)]
        } else {
            // ghost = 2c − last interior
            vec![(c_col, 2.0), (idx(nr - 1, j), -1.0)]
        }
    };

    for i in 0..nr {
        let rho = (i as f64 + 0.5) * drho;
        for j in 0..nt {
            let th = j as f64 * dth;
            let (ct, st) = (th.cos(), th.sin());
            let r = spec.r0 + rho * ct;
            let row = idx(i, j);
            // Operator L = ψ_rr + β ψ_z̃z̃ − ψ_r / r expanded in polar
            // derivative stencils; we assemble −L so eigenvalues are +μ.
            let c_rr = ct * ct + beta * st * st; // f_ρρ
            let c_tt = (st * st + beta * ct * ct) / (rho * rho); // f_θθ
            let c_rt = 2.0 * st * ct * (beta - 1.0) / rho; // f_ρθ
            let c_r = (st * st + beta * ct * ct) / rho - ct / r; // f_ρ
            let c_t = 2.0 * st * ct * (1.0 - beta) / (rho * rho) + st / (rho * r); // f_θ

            let mut add = |col_terms: Vec<(usize, f64)>, w: f64| {
                for (col, f) in col_terms {
                    a[(row, col)] -= w * f; // minus: assembling −L
                }
            };
            let jp = (j + 1) % nt;
            let jm = (j + nt - 1) % nt;
            // f_ρρ
            add(radial(i as isize + 1, j), c_rr / (drho * drho));
            add(radial(i as isize - 1, j), c_rr / (drho * drho));
            add(vec![(row, 1.0)], -2.0 * c_rr / (drho * drho));
            // f_θθ
            add(vec![(idx(i, jp), 1.0)], c_tt / (dth * dth));
            add(vec![(idx(i, jm), 1.0)], c_tt / (dth * dth));
            add(vec![(row, 1.0)], -2.0 * c_tt / (dth * dth));
            // f_ρθ (cross, 4-corner)
            for (ii, jj, sgn) in [
                (i as isize + 1, jp, 1.0),
                (i as isize + 1, jm, -1.0),
                (i as isize - 1, jp, -1.0),
                (i as isize - 1, jm, 1.0),
            ] {
                add(radial(ii, jj), sgn * c_rt / (4.0 * drho * dth));
            }
            // f_ρ
            add(radial(i as isize + 1, j), c_r / (2.0 * drho));
            add(radial(i as isize - 1, j), -c_r / (2.0 * drho));
            // f_θ
            add(vec![(idx(i, jp), 1.0)], c_t / (2.0 * dth));
            add(vec![(idx(i, jm), 1.0)], -c_t / (2.0 * dth));
        }
    }
    // Zero-mean constraint row: ∫ ψ (1/r) dA = Σ ψ ρΔρΔθ / r = 0.
    for i in 0..nr {
        let rho = (i as f64 + 0.5) * drho;
        for j in 0..nt {
            let r = spec.r0 + rho * (j as f64 * dth).cos();
            a[(n - 1, idx(i, j))] = rho * drho * dth / r;
        }
    }

    let lu = a.lu();
    // Inverse iteration on the pencil (A, W) with W = diag(1,…,1,0): every
    // solve lands exactly on the constraint.
    let mut v = DVector::<f64>::zeros(n);
    for i in 0..nr {
        let rho = (i as f64 + 0.5) * drho;
        for j in 0..nt {
            // Smooth start overlapping both z-parity sectors: symmetric
            // sections commute with z ↦ −z, so a purely even start would
            // lock the iteration out of odd ground modes (tall ellipses
            // have a z-odd dipole as their lowest constrained mode).
            let th = j as f64 * dth;
            v[idx(i, j)] = (1.0 - (rho / spec.a_r).powi(2))
                * (1.0 + 0.3 * th.cos() + 0.2 * th.sin());
        }
    }
    let mut inv_mu = 0.0f64;
    for _ in 0..400 {
        let mut w = v.clone();
        w[c_col] = 0.0; // W v
        let y = lu.solve(&w).expect("reference matrix is nonsingular");
        let num: f64 = v
            .iter()
            .take(nr * nt)
            .zip(y.iter())
            .map(|(a, b)| a * b)
            .sum();
        let den: f64 = v.iter().take(nr * nt).map(|a| a * a).sum();
        let next = num / den;
        let rel = (next - inv_mu).abs() / next.abs().max(f64::MIN_POSITIVE);
        inv_mu = next;
        let norm = y.norm();
        v = y / norm;
        if rel < 1e-13 {
            break;
        }
    }
    1.0 / inv_mu
}

/// Richardson-extrapolated reference eigenvalue (second-order stencils).
pub fn torus_mu_extrapolated(spec: &FdTorusSpec) -> f64 {
    let coarse = torus_mu(spec);
    let fine_spec = FdTorusSpec {
        n_rho: spec.n_rho * 2,
        n_theta: spec.n_theta * 2,
        ..*spec
    };
    let fine = torus_mu(&fine_spec);
    (4.0 * fine - coarse) / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_converges_at_second_order() {
        let mu = |n: usize| {
            torus_mu(&FdTorusSpec {
                r0: 2.0,
                a_r: 0.5,
                a_z: 0.5,
                n_rho: n,
                n_theta: 2 * n,
            })
        };
        let (m1, m2, m3) = (mu(8), mu(16), mu(32));
        let order = ((m1 - m2).abs() / (m2 - m3).abs()).log2();
        assert!(
            (1.5..=2.6).contains(&order),
            "order {order}, values {m1} {m2} {m3}"
        );
        // Sanity: near the large-radius limit the eigenvalue approaches
        // (j_{1,1}/a)² ≈ 58.7; at r0/a = 4 it should sit within ~15%.
        let extrap = (4.0 * m3 - m2) / 3.0;
        assert!((45.0..=70.0).contains(&extrap), "mu {extrap}");
    }

    #[test]
    fn anisotropy_lowers_the_eigenvalue() {
        // Stretching the section in z enlarges the domain, so μ must drop.
        let round = torus_mu(&FdTorusSpec::circle(3.0, 0.5, 16));
        let tall = torus_mu(&FdTorusSpec {
            r0: 3.0,
            a_r: 0.5,
            a_z: 1.0,
            n_rho: 16,
            n_theta: 32,
        });
        assert!(tall < round * 0.8, "round {round}, tall {tall}");
    }
}
