//! Sparse symmetric linear algebra for the eigensolver.
//!
//! A compressed sparse-row matrix stores the full symmetric pattern. Systems
//! are solved by a banded Cholesky factorisation after a reverse Cuthill-McKee
//! reordering; meshes of meridional sections have O(sqrt(n)) bandwidth under
//! that ordering, so the factorisation is cheap and exactly reproducible.

use super::SolveError;

/// Symmetric sparse matrix in CSR form (full pattern stored).
#[derive(Debug, Clone)]
pub struct Csr {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<f64>,
}

impl Csr {
    /// Build from unordered triplets, summing duplicates.
    pub fn from_triplets(n: usize, triplets: &mut Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut counts = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut vals: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for &(r, c, v) in triplets.iter() {
            if last == Some((r, c)) {
                *vals.last_mut().unwrap() += v;
            } else {
                cols.push(c);
                vals.push(v);
                counts[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        debug_assert_eq!(counts[n], cols.len());
        Csr {
            n,
            row_ptr: counts,
            cols,
            vals,
        }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.n {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            y[i] = acc;
        }
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            let mut row = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                row += self.vals[k] * x[self.cols[k]];
            }
            acc += x[i] * row;
        }
        acc
    }

    pub fn max_diag(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                if self.cols[k] == i {
                    m = m.max(self.vals[k].abs());
                }
            }
        }
        m
    }

    /// y = alpha*A*x + beta*B*x element-wise combination used by residuals.
    pub fn row_range(&self, i: usize) -> std::ops::Range<usize> {
        self.row_ptr[i]..self.row_ptr[i + 1]
    }
}

/// Reverse Cuthill-McKee ordering. Returns `perm` with `perm[new] = old`.
pub fn rcm(a: &Csr) -> Vec<usize> {
    let n = a.n;
    let degree: Vec<usize> = (0..n).map(|i| a.row_ptr[i + 1] - a.row_ptr[i]).collect();
    let mut visited = vec![false; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    // Process every connected component (meshes are connected, but stay
    // robust).
    loop {
        let start = match (0..n)
            .filter(|&i| !visited[i])
            .min_by_key(|&i| (degree[i], i))
        {
            Some(s) => s,
            None => break,
        };
        // One BFS to find a pseudo-peripheral start, a second to order.
        let far = bfs_last(a, start, &visited, &degree);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(far);
        visited[far] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut nbrs: Vec<usize> = a.row_range(u)
                .map(|k| a.cols[k])
                .filter(|&v| v != u && !visited[v])
                .collect();
            nbrs.sort_unstable_by_key(|&v| (degree[v], v));
            nbrs.dedup();
            for v in nbrs {
                if !visited[v] {
                    visited[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    order.reverse();
    order
}

fn bfs_last(a: &Csr, start: usize, visited_global: &[bool], degree: &[usize]) -> usize {
    let mut seen = visited_global.to_vec();
    let mut frontier = vec![start];
    seen[start] = true;
    let mut last_level = vec![start];
    while !frontier.is_empty() {
        last_level = frontier.clone();
        let mut next = Vec::new();
        for &u in &frontier {
            for k in a.row_range(u) {
                let v = a.cols[k];
                if !seen[v] {
                    seen[v] = true;
                    next.push(v);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }
    *last_level
        .iter()
        .min_by_key(|&&v| (degree[v], v))
        .unwrap()
}

/// Lower-banded Cholesky factor L with A = L L^T.
///
/// Band `d` of `data` holds L[i, i-d] at position i.
pub struct BandedChol {
    pub n: usize,
    pub bw: usize,
    data: Vec<f64>,
}

impl BandedChol {
    /// Factor the symmetric positive definite matrix `a` under the ordering
    /// `perm` (`perm[new] = old`).
    pub fn factor(a: &Csr, perm: &[usize]) -> Result<Self, SolveError> {
        let n = a.n;
        let mut inv = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut bw = 0usize;
        for old_r in 0..n {
            for k in a.row_range(old_r) {
                let d = inv[old_r].abs_diff(inv[a.cols[k]]);
                bw = bw.max(d);
            }
        }
        let mut data = vec![0.0f64; (bw + 1) * n];
        // data[d * n + i] = A[i, i-d] in permuted indices (lower half).
        for old_r in 0..n {
            let i = inv[old_r];
            for k in a.row_range(old_r) {
                let j = inv[a.cols[k]];
                if i >= j {
                    data[(i - j) * n + i] = a.vals[k];
                }
            }
        }
        // In-place banded Cholesky.
        for j in 0..n {
            let mut djj = data[j];
            let kmin = j.saturating_sub(bw);
            for k in kmin..j {
                let l = data[(j - k) * n + j];
                djj -= l * l;
            }
            if !(djj > 0.0) || !djj.is_finite() {
                return Err(SolveError::Singular);
            }
            let ljj = djj.sqrt();
            data[j] = ljj;
            let imax = (j + bw).min(n - 1);
            for i in j + 1..=imax {
                let mut v = data[(i - j) * n + i];
                let kmin = i.saturating_sub(bw).max(kmin);
                for k in kmin..j {
                    v -= data[(i - k) * n + i] * data[(j - k) * n + j];
                }
                data[(i - j) * n + i] = v / ljj;
            }
        }
        Ok(BandedChol { n, bw, data })
    }

    /// Solve A x = b in the *original* ordering, using the stored
    /// permutation handled by the caller. `b` is overwritten with x.
    pub fn solve_permuted(&self, b: &mut [f64]) {
        let (n, bw) = (self.n, self.bw);
        // forward: L y = b
        for i in 0..n {
            let kmin = i.saturating_sub(bw);
            let mut v = b[i];
            for k in kmin..i {
                v -= self.data[(i - k) * n + i] * b[k];
            }
            b[i] = v / self.data[i];
        }
        // backward: L^T x = y
        for i in (0..n).rev() {
            let mut v = b[i];
            let imax = (i + bw).min(n - 1);
            for k in i + 1..=imax {
                v -= self.data[(k - i) * n + k] * b[k];
            }
            b[i] = v / self.data[i];
        }
    }
}

/// Convenience wrapper: factorisation plus its ordering.
pub struct OrderedChol {
    pub chol: BandedChol,
    pub perm: Vec<usize>,
    inv: Vec<usize>,
    scratch: std::cell::RefCell<Vec<f64>>,
}

impl OrderedChol {
    pub fn new(a: &Csr) -> Result<Self, SolveError> {
        let perm = rcm(a);
        let chol = BandedChol::factor(a, &perm)?;
        let mut inv = vec![0usize; a.n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        Ok(OrderedChol {
            chol,
            perm,
            inv,
            scratch: std::cell::RefCell::new(vec![0.0; a.n]),
        })
    }

    /// x = A^{-1} b, both in the natural ordering.
    pub fn solve(&self, b: &[f64], x: &mut [f64]) {
        let mut tmp = self.scratch.borrow_mut();
        for old in 0..b.len() {
            tmp[self.inv[old]] = b[old];
        }
        self.chol.solve_permuted(&mut tmp);
        for (new, &old) in self.perm.iter().enumerate() {
            x[old] = tmp[new];
        }
    }
}
