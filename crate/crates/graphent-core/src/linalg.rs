//! Internal numerical toolbox: dense matrices, LU factorization, strongly
//! connected components, Perron eigendata, and bracketed root-finding.
//!
//! Everything here is `pub(crate)`: the public API exposes graph-language
//! wrappers in [`crate::spectral`] instead.  All transcendental calls go
//! through [`libm`] so the crate stays `no_std` and bit-reproducible.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A dense row-major `n × n` matrix of `f64`.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    n: usize,
    a: Vec<f64>,
}

impl Dense {
    pub(crate) fn zeros(n: usize) -> Dense {
        Dense { n, a: vec![0.0; n * n] }
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    /// `y ← A·x`.
    pub(crate) fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let row = &self.a[i * self.n..(i + 1) * self.n];
            *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// `y ← Aᵀ·x`.
    pub(crate) fn matvec_t(&self, x: &[f64], y: &mut [f64]) {
        y.fill(0.0);
        for (i, &xi) in x.iter().enumerate() {
            let row = &self.a[i * self.n..(i + 1) * self.n];
            for (yj, &aij) in y.iter_mut().zip(row) {
                *yj += aij * xi;
            }
        }
    }
}

/// LU factorization with partial pivoting (Doolittle, in place).
///
/// Exactly singular matrices factor fine — the determinant is then `0` —
/// but `solve` substitutes a tiny pivot for exact zeros so that inverse
/// iteration near a singular matrix stays finite.
pub(crate) struct Lu {
    n: usize,
    lu: Vec<f64>,
    piv: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub(crate) fn factor(m: &Dense) -> Lu {
        let n = m.n;
        let mut lu = m.a.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            // Partial pivoting: largest magnitude in column k at or below row k.
            let mut p = k;
            let mut best = libm::fabs(lu[k * n + k]);
            for i in k + 1..n {
                let cand = libm::fabs(lu[i * n + k]);
                if cand > best {
                    best = cand;
                    p = i;
                }
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                piv.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[k * n + k];
            if pivot == 0.0 {
                continue; // singular column; leave zeros, det will be 0
            }
            for i in k + 1..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in k + 1..n {
                    lu[i * n + j] -= factor * lu[k * n + j];
                }
            }
        }
        Lu { n, lu, piv, sign }
    }

    pub(crate) fn det(&self) -> f64 {
        let mut d = self.sign;
        for k in 0..self.n {
            d *= self.lu[k * self.n + k];
        }
        d
    }

    /// Solves `A·x = b` in place, permuting `b` by the pivot order first.
    /// Exact zero pivots are replaced by `±1e-300` so the solve never
    /// produces NaN; callers doing inverse iteration renormalize anyway.
    pub(crate) fn solve(&self, b: &mut [f64]) {
        let n = self.n;
        let permuted: Vec<f64> = self.piv.iter().map(|&p| b[p]).collect();
        b.copy_from_slice(&permuted);
        for i in 1..n {
            let row = &self.lu[i * n..i * n + i];
            let s: f64 = b[i] - row.iter().zip(&b[..i]).map(|(a, x)| a * x).sum::<f64>();
            b[i] = s;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n + i + 1..i * n + n];
            let s: f64 = b[i] - row.iter().zip(&b[i + 1..]).map(|(a, x)| a * x).sum::<f64>();
            let mut pivot = self.lu[i * n + i];
            if pivot == 0.0 {
                pivot = 1e-300;
            }
            b[i] = s / pivot;
        }
    }
}

/// Strongly connected components of the digraph on `0..n` with adjacency
/// lists `adj`, via Kosaraju's two-pass DFS (iterative: component sizes
/// here are bounded only by the edge count, so no recursion).
///
/// Components come out in topological order of the condensation; nodes
/// within a component are ascending.
pub(crate) fn strongly_connected(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    // Pass 1: post-order on the forward graph.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push((start, 0));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    // Reverse adjacency.
    let mut radj = vec![Vec::new(); n];
    for (v, out) in adj.iter().enumerate() {
        for &w in out {
            radj[w].push(v);
        }
    }
    // Pass 2: DFS on the reverse graph in reverse post-order.
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut dfs = Vec::new();
    for &start in order.iter().rev() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        comps.push(Vec::new());
        comp[start] = id;
        dfs.push(start);
        while let Some(v) = dfs.pop() {
            comps[id].push(v);
            for &w in &radj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    dfs.push(w);
                }
            }
        }
    }
    for c in &mut comps {
        c.sort_unstable();
    }
    comps
}

/// Perron eigendata of an irreducible non-negative matrix.
#[derive(Clone, Debug)]
pub(crate) struct PerronOutcome {
    /// The Perron value (spectral radius).
    pub(crate) value: f64,
    /// Strictly positive eigenvector, normalized to `‖·‖₁ = 1`.
    pub(crate) vector: Vec<f64>,
    /// Final Collatz–Wielandt enclosure of `value` (rigorous bounds; read
    /// by the convergence tests, carried as the iteration's certificate).
    #[allow(dead_code)]
    pub(crate) lower: f64,
    #[allow(dead_code)]
    pub(crate) upper: f64,
}

/// Cap on total iterations of [`perron`]; generous because each step is an
/// `n²` mat-vec on matrices of edge-count size.
pub(crate) const PERRON_ITERATION_CAP: u64 = 100_000;

/// Relative width of the Collatz–Wielandt enclosure at which [`perron`]
/// declares convergence.
pub(crate) const PERRON_TOL: f64 = 1e-13;

/// Perron value and right (or left, with `transpose`) eigenvector of an
/// irreducible non-negative matrix, by power iteration on the shifted
/// matrix `M + I` with Collatz–Wielandt bounds as the stopping criterion.
///
/// For any strictly positive `x`, `min_i (Mx+x)_i/x_i − 1` and
/// `max_i (Mx+x)_i/x_i − 1` bracket the Perron value, so the returned
/// enclosure is rigorous whether or not the iteration fully converged.
/// When plain power iteration stalls (nearly multiple Perron roots, as on
/// almost-decoupled graphs) the routine switches to inverse iteration with
/// a shift just above the current upper bound, which restores fast
/// convergence; after the overall cap the tightest enclosure midpoint is
/// returned.
pub(crate) fn perron(m: &Dense, transpose: bool) -> PerronOutcome {
    let n = m.n();
    debug_assert!(n > 0);
    if n == 1 {
        let v = m.get(0, 0);
        return PerronOutcome { value: v, vector: vec![1.0], lower: v, upper: v };
    }
    let apply = |x: &[f64], y: &mut [f64]| {
        if transpose {
            m.matvec_t(x, y);
        } else {
            m.matvec(x, y);
        }
    };
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut lower = 0.0;
    let mut upper = f64::INFINITY;
    let mut iterations = 0u64;

    // Phase 1: shifted power iteration.  The shift makes the iteration
    // converge even for periodic support and keeps every iterate strictly
    // positive.
    const POWER_BUDGET: u64 = 5_000;
    while iterations < POWER_BUDGET {
        iterations += 1;
        apply(&x, &mut y);
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        let mut norm = 0.0;
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += xi; // shift by I
            let q = *yi / xi;
            lo = lo.min(q);
            hi = hi.max(q);
            norm += *yi; // entries are positive
        }
        lower = lo - 1.0;
        upper = hi - 1.0;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
        if hi - lo <= PERRON_TOL * hi {
            let value = 0.5 * (lower + upper);
            return PerronOutcome { value, vector: x, lower, upper };
        }
    }

    // Phase 2: inverse iteration with a shift slightly above the current
    // upper bound for M + I.  Each solve is O(n³) but a handful suffice.
    let mut rounds = 0;
    while iterations < PERRON_ITERATION_CAP && rounds < 64 {
        rounds += 1;
        let sigma = (upper + 1.0) * (1.0 + 1e-12) + 1e-300;
        let mut shifted = m.clone();
        for i in 0..n {
            shifted.set(i, i, shifted.get(i, i) + 1.0 - sigma);
        }
        let lu = Lu::factor(&shifted);
        // A few solves per factorization; the shift is refreshed once the
        // enclosure tightens.
        for _ in 0..4 {
            iterations += 1;
            let mut z = x.clone();
            if transpose {
                // Solve Mᵀz = x via the LU of M by solving with the
                // transposed system: fall back to factoring the transpose.
                let mut mt = Dense::zeros(n);
                for i in 0..n {
                    for j in 0..n {
                        mt.set(i, j, shifted.get(j, i));
                    }
                }
                let lut = Lu::factor(&mt);
                lut.solve(&mut z);
            } else {
                lu.solve(&mut z);
            }
            let mut norm = 0.0;
            for zi in z.iter_mut() {
                *zi = libm::fabs(*zi).max(1e-300);
                norm += *zi;
            }
            for zi in z.iter_mut() {
                *zi /= norm;
            }
            x = z;
            apply(&x, &mut y);
            let mut lo = f64::INFINITY;
            let mut hi = 0.0f64;
            for (yi, xi) in y.iter().zip(&x) {
                let q = (yi + xi) / xi;
                lo = lo.min(q);
                hi = hi.max(q);
            }
            if lo - 1.0 > lower {
                lower = lo - 1.0;
            }
            if hi - 1.0 < upper {
                upper = hi - 1.0;
            }
            if upper - lower <= PERRON_TOL * (upper + 1.0) {
                let value = 0.5 * (lower + upper);
                return PerronOutcome { value, vector: x, lower, upper };
            }
        }
    }
    let value = 0.5 * (lower + upper);
    PerronOutcome { value, vector: x, lower, upper }
}

/// Bracketed root of a continuous function by false position with the
/// Illinois modification, which guarantees superlinear convergence without
/// the stagnation plain regula falsi suffers on convex functions.
///
/// Requires `f(lo)` and `f(hi)` of opposite sign (a zero value on either
/// end returns that end).  Stops when the bracket is narrower than `tol`
/// (absolute) or the residual underflows.
pub(crate) fn illinois_root<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut flo: f64,
    mut hi: f64,
    mut fhi: f64,
    tol: f64,
) -> Result<f64> {
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::IterationLimit { limit: 0 });
    }
    for _ in 0..200 {
        let mut c = hi - fhi * (hi - lo) / (fhi - flo);
        // Keep the secant point strictly inside the bracket.
        if !(c > lo.min(hi) && c < lo.max(hi)) {
            c = 0.5 * (lo + hi);
        }
        let fc = f(c);
        if fc == 0.0 {
            return Ok(c);
        }
        if fc.signum() != fhi.signum() {
            // Fresh sign change between the last two iterates: both
            // endpoints are new.
            lo = hi;
            flo = fhi;
        } else {
            // Same side retained: halve its stored value so the stale
            // endpoint cannot stall the secant (the Illinois step).
            flo *= 0.5;
        }
        hi = c;
        fhi = fc;
        if libm::fabs(hi - lo) <= tol {
            return Ok(hi);
        }
    }
    Err(Error::IterationLimit { limit: 200 })
}
