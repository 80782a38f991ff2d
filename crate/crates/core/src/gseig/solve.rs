//! Generalized symmetric eigensolve by shifted subspace iteration.
//!
//! The pencil (K, M) has K symmetric positive semi-definite and M symmetric
//! positive definite. Iteration runs on A = K + σM (always definite; σ is a
//! small multiple of the diagonal scale ratio, which keeps the shift
//! scale-equivariant), applying A⁻¹M to a block of vectors with
//! M-orthonormalisation and a Rayleigh-Ritz projection per sweep.
//!
//! For torus-like sections the pencil has the exact eigenpair (0, 1): the
//! constant stream function costs no energy. Because mass row sums equal
//! the load vector, M-orthogonality to the constant vector is the same
//! linear condition as the zero-mean constraint ℓᵀψ = 0, so deflating the
//! constant both removes the spurious mode and enforces the constraint. The
//! constrained problem then satisfies Kψ = μMψ with no multiplier term:
//! testing against the constant makes the multiplier vanish.

use super::assemble::{assemble, condense, Assembled, Condensed};
use super::linalg::OrderedChol;
use super::{SolveError, SolveMode, SolverConfig};
use crate::mesh2::TriMesh;
use rand::Rng;
use rand::SeedableRng;

/// One converged eigenpair with nodal values over all mesh vertices.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub mu: f64,
    pub lambda: f64,
    /// Stream function at every mesh vertex (boundary values included).
    pub psi: Vec<f64>,
    /// Shared boundary value (zero for ball-like and plain Dirichlet runs).
    pub c_b: f64,
}

/// Result of an eigensolve.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub pairs: Vec<EigenPair>,
    pub mode: SolveMode,
    pub iterations: usize,
    pub residuals: Vec<f64>,
    /// Set when the two smallest eigenvalues agree to within 1e-9
    /// relative; downstream diagnostics should not trust mode shapes then.
    pub near_degenerate: bool,
}

/// Solve the smallest-eigenvalue problem on `mesh`.
///
/// `mode=None` picks ball-like for sections touching the axis and
/// torus-like otherwise.
pub fn solve(
    mesh: &TriMesh,
    mode: Option<SolveMode>,
    config: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    let forms = assemble(mesh);
    solve_with_forms(mesh, &forms, mode, config)
}

/// As [`solve`], reusing already-assembled forms.
pub fn solve_with_forms(
    mesh: &TriMesh,
    forms: &Assembled,
    mode: Option<SolveMode>,
    config: &SolverConfig,
) -> Result<SolveReport, SolveError> {
    let mode = mode.unwrap_or(if mesh.has_axis_vertices() {
        SolveMode::BallLike
    } else {
        SolveMode::TorusLike
    });
    let cond = condense(mesh, forms, mode)?;
    let (thetas, vectors, iterations, residuals) = subspace_smallest(&cond, mode, config)?;
    let near_degenerate = thetas.len() >= 2 && {
        let gap = (thetas[1] - thetas[0]).abs();
        gap <= 1e-9 * thetas[1].abs().max(thetas[0].abs())
    };
    let pairs = thetas
        .iter()
        .zip(&vectors)
        .map(|(&mu, x)| {
            let mut x = x.clone();
            normalize_sign(&mut x);
            let psi = cond.expand(&x);
            EigenPair {
                mu,
                lambda: mu.max(0.0).sqrt(),
                c_b: cond.boundary_constant(&x),
                psi,
            }
        })
        .collect();
    Ok(SolveReport {
        pairs,
        mode,
        iterations,
        residuals,
        near_degenerate,
    })
}

/// Fix the overall sign so the largest-magnitude entry is positive.
fn normalize_sign(x: &mut [f64]) {
    let mut best = 0usize;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > x[best].abs() {
            best = i;
        }
    }
    if x[best] < 0.0 {
        for v in x.iter_mut() {
            *v = -*v;
        }
    }
}

type SubspaceOut = (Vec<f64>, Vec<Vec<f64>>, usize, Vec<f64>);

fn subspace_smallest(
    cond: &Condensed,
    mode: SolveMode,
    config: &SolverConfig,
) -> Result<SubspaceOut, SolveError> {
    let n = cond.n;
    let k = config.k.max(1);
    let m = (k + config.subspace_extra).min(n);
    if k > n {
        return Err(SolveError::BadMesh(format!(
            "requested {k} eigenpairs from a system of size {n}"
        )));
    }

    let sigma = config.sigma_factor * cond.k.max_diag() / cond.m.max_diag();
    let shifted = {
        let mut trips = Vec::with_capacity(cond.k.vals.len() + cond.m.vals.len());
        for r in 0..n {
            for kk in cond.k.row_range(r) {
                trips.push((r, cond.k.cols[kk], cond.k.vals[kk]));
            }
            for kk in cond.m.row_range(r) {
                trips.push((r, cond.m.cols[kk], sigma * cond.m.vals[kk]));
            }
        }
        super::linalg::Csr::from_triplets(n, &mut trips)
    };
    let factor = OrderedChol::new(&shifted)?;

    // Deflation vector: the all-ones condensed vector spans the zero mode
    // of torus-like sections.
    let deflate: Option<Vec<f64>> = match mode {
        SolveMode::TorusLike => {
            let ones = vec![1.0; n];
            Some(ones)
        }
        _ => None,
    };
    let m_ip = |a: &[f64], b: &[f64], tmp: &mut Vec<f64>| -> f64 {
        cond.m.matvec(b, tmp);
        a.iter().zip(tmp.iter()).map(|(x, y)| x * y).sum()
    };

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
    let mut block: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let mut tmp = vec![0.0f64; n];

    let mut thetas = vec![f64::INFINITY; m];
    let mut iterations = 0usize;
    let mut residuals = vec![f64::INFINITY; k];
    for sweep in 0..config.max_iter {
        iterations = sweep + 1;
        // Y = A^{-1} M X, deflated and M-orthonormalised.
        let mut next: Vec<Vec<f64>> = Vec::with_capacity(m);
        for x in &block {
            cond.m.matvec(x, &mut tmp);
            let mut y = vec![0.0f64; n];
            factor.solve(&tmp, &mut y);
            next.push(y);
        }
        if let Some(e) = &deflate {
            let ee = m_ip(e, e, &mut tmp);
            for y in &mut next {
                let c = m_ip(e, y, &mut tmp) / ee;
                for (yi, ei) in y.iter_mut().zip(e) {
                    *yi -= c * ei;
                }
            }
        }
        // Modified Gram-Schmidt in the M inner product.
        for i in 0..m {
            for j in 0..i {
                let (head, tail) = next.split_at_mut(i);
                let c = m_ip(&head[j], &tail[0], &mut tmp);
                for (yi, xj) in tail[0].iter_mut().zip(&head[j]) {
                    *yi -= c * xj;
                }
            }
            let norm = m_ip(&next[i], &next[i], &mut tmp).sqrt();
            if !(norm > 0.0) || !norm.is_finite() {
                return Err(SolveError::Singular);
            }
            for v in next[i].iter_mut() {
                *v /= norm;
            }
        }
        // Rayleigh-Ritz with the K form.
        let mut kr = nalgebra::DMatrix::<f64>::zeros(m, m);
        for i in 0..m {
            cond.k.matvec(&next[i], &mut tmp);
            for j in 0..m {
                let v: f64 = next[j].iter().zip(tmp.iter()).map(|(a, b)| a * b).sum();
                kr[(j, i)] = v;
            }
        }
        // Symmetrise rounding noise before the dense solve.
        let kr = (&kr + kr.transpose()) * 0.5;
        let eig = nalgebra::SymmetricEigen::new(kr);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
        let mut rotated: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut new_thetas = Vec::with_capacity(m);
        for &col in &order {
            let mut x = vec![0.0f64; n];
            for (src, y) in next.iter().enumerate() {
                let w = eig.eigenvectors[(src, col)];
                for (xi, yi) in x.iter_mut().zip(y) {
                    *xi += w * yi;
                }
            }
            rotated.push(x);
            new_thetas.push(eig.eigenvalues[col]);
        }
        block = rotated;

        // Convergence: relative residual ‖Kx − θMx‖ / ((‖K‖+θ‖M‖)‖x‖) per
        // wanted pair, plus eigenvalue stagnation.
        let mut all_ok = true;
        for i in 0..k {
            let theta = new_thetas[i];
            cond.k.matvec(&block[i], &mut tmp);
            let mut res = tmp.clone();
            cond.m.matvec(&block[i], &mut tmp);
            for (r, mv) in res.iter_mut().zip(tmp.iter()) {
                *r -= theta * mv;
            }
            let rn = l2(&res);
            let xn = l2(&block[i]);
            let scale = (cond.k.max_diag() + theta.abs() * cond.m.max_diag()) * xn;
            residuals[i] = rn / scale.max(f64::MIN_POSITIVE);
            let stagnated = (theta - thetas[i]).abs()
                <= config.value_tol * theta.abs().max(f64::MIN_POSITIVE);
            if residuals[i] > config.tol || !stagnated {
                all_ok = false;
            }
        }
        thetas = new_thetas;
        if all_ok {
            // Return all Ritz values (the trailing ones are coarse but let
            // callers judge spectral gaps) and only the converged vectors.
            let out_vecs = block[..k].to_vec();
            return Ok((thetas, out_vecs, iterations, residuals));
        }
    }
    Err(SolveError::NonConvergence {
        iterations,
        residual: residuals.iter().cloned().fold(0.0, f64::max),
    })
}

fn l2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Rayleigh quotient of nodal values in the full (uncondensed) forms.
pub fn rayleigh_quotient(forms: &Assembled, psi: &[f64]) -> f64 {
    forms.k.quadratic_form(psi) / forms.m.quadratic_form(psi)
}
