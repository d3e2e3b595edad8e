//! The non-backtracking edge transition matrix and everything spectral:
//! entropy, unit-entropy normalization, Perron eigendata, the equilibrium
//! measure, and the determinant function `F(ℓ) = det(I − A_{G,ℓ})`.
//!
//! For a metric graph `(G, ℓ)` the weighted transition matrix acts on
//! directed edges:
//!
//! ```text
//! A_{G,ℓ}(e, e′) = exp(−ℓ(e)) · [τ(e) = o(e′), e′ ≠ ē].
//! ```
//!
//! Its spectral radius `ρ(A_{G,sℓ})` is continuous and strictly decreasing
//! in `s > 0`, and the **entropy** `h(G, ℓ)` is the unique `s` with
//! `ρ(A_{G,sℓ}) = 1` whenever some component of `G` has rank ≥ 2 (and `0`
//! otherwise).  Entropy therefore obeys `h(G, αℓ) = h(G, ℓ)/α`.
//!
//! On the unit-entropy locus (`h = 1`, i.e. `ρ(A_{G,ℓ}) = 1`) the matrix
//! has left and right Perron vectors `u, v > 0`; normalized to
//! `uᵀv = 1`, the products `μ(e) = u(e)·v(e)` form the **equilibrium
//! measure**, a probability distribution on directed edges invariant under
//! edge reversal: `μ(e) = μ(ē)`.
//!
//! Spectral radii are computed blockwise: the support digraph is split
//! into strongly connected components and each non-trivial block gets a
//! shifted power iteration with rigorous Collatz–Wielandt bounds (see
//! `linalg`), so reducible matrices — disconnected graphs, graphs with
//! trees hanging off the core — are handled exactly, not by luck.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, LengthFunction};
use crate::linalg::{self, Dense, Lu};

/// A dense matrix indexed by the directed edges of a graph.
///
/// Row `e`, column `e′` holds the transition weight from `e` to `e′`.
#[derive(Clone, Debug)]
pub struct EdgeMatrix {
    dense: Dense,
}

impl EdgeMatrix {
    /// Number of directed edges (the matrix is `order × order`).
    #[must_use]
    pub fn order(&self) -> usize {
        self.dense.n()
    }

    /// The transition weight from `e` to `f`.
    #[must_use]
    pub fn get(&self, e: EdgeId, f: EdgeId) -> f64 {
        self.dense.get(e.index(), f.index())
    }

    pub(crate) fn dense(&self) -> &Dense {
        &self.dense
    }
}

/// The unweighted (0/1) non-backtracking transition matrix of a graph.
///
/// ```
/// use graphent_core::graph::{rose, EdgeId};
/// use graphent_core::spectral::adjacency_matrix;
///
/// let (g, _) = rose(&[1.0, 1.0]).unwrap();
/// let a = adjacency_matrix(&g);
/// // A loop edge may repeat itself but not backtrack.
/// assert_eq!(a.get(EdgeId(0), EdgeId(0)), 1.0);
/// assert_eq!(a.get(EdgeId(0), EdgeId(1)), 0.0);
/// ```
#[must_use]
pub fn adjacency_matrix(g: &Graph) -> EdgeMatrix {
    build_matrix(g, |_| 1.0)
}

/// The weighted transition matrix `A_{G,ℓ}` with row `e` scaled by
/// `exp(−ℓ(e))`.
pub fn weighted_matrix(g: &Graph, l: &LengthFunction) -> Result<EdgeMatrix> {
    l.check_fits(g)?;
    Ok(build_matrix(g, |e| libm::exp(-l.get(e))))
}

fn build_matrix<W: Fn(EdgeId) -> f64>(g: &Graph, weight: W) -> EdgeMatrix {
    let n = g.edge_count();
    let mut dense = Dense::zeros(n);
    for e in g.edges() {
        let w = weight(e);
        for f in g.successors(e) {
            dense.set(e.index(), f.index(), w);
        }
    }
    EdgeMatrix { dense }
}

/// Spectral radius of an edge matrix (or any entrywise non-negative
/// matrix), exact under reducibility.
///
/// The support digraph is decomposed into strongly connected components;
/// the spectral radius is the maximum of the per-block Perron values, with
/// trivial blocks (single edge, no self-transition) contributing `0`.
#[must_use]
pub fn spectral_radius(m: &EdgeMatrix) -> f64 {
    let n = m.order();
    let d = m.dense();
    let mut adj = vec![Vec::new(); n];
    for (i, out) in adj.iter_mut().enumerate() {
        for j in 0..n {
            if d.get(i, j) > 0.0 {
                out.push(j);
            }
        }
    }
    let mut radius = 0.0f64;
    for block in linalg::strongly_connected(n, &adj) {
        if block.len() == 1 {
            let v = block[0];
            radius = radius.max(d.get(v, v));
            continue;
        }
        let k = block.len();
        let mut sub = Dense::zeros(k);
        for (bi, &i) in block.iter().enumerate() {
            for (bj, &j) in block.iter().enumerate() {
                sub.set(bi, bj, d.get(i, j));
            }
        }
        radius = radius.max(linalg::perron(&sub, false).value);
    }
    radius
}

/// The volume entropy `h(G, ℓ)`: the unique `s > 0` with
/// `ρ(A_{G,sℓ}) = 1`, or `0` when every component has rank ≤ 1 (trees and
/// single cycles carry no exponential circuit growth).
///
/// Disconnected graphs are fine: the global spectral radius is the max
/// over components, so the root is automatically
/// `max_i h(Gᵢ, ℓ|_{Gᵢ})`.
///
/// ```
/// use graphent_core::graph::rose;
/// use graphent_core::spectral::entropy;
///
/// let (g, l) = rose(&[1.0, 1.0, 1.0]).unwrap();
/// // 3 petals: 5 continuations per edge, so h = log 5 at unit lengths.
/// assert!((entropy(&g, &l).unwrap() - 5.0_f64.ln()).abs() < 1e-10);
/// ```
pub fn entropy(g: &Graph, l: &LengthFunction) -> Result<f64> {
    l.check_fits(g)?;
    if g.max_component_rank() <= 1 {
        return Ok(0.0);
    }
    let log_rho = |s: f64| -> f64 {
        let m = build_matrix(g, |e| libm::exp(-s * l.get(e)));
        libm::log(spectral_radius(&m))
    };
    // Bracket the root: log ρ is strictly decreasing in s, positive near 0.
    let mut lo = 1.0;
    let mut flo = log_rho(lo);
    if flo == 0.0 {
        return Ok(lo);
    }
    let mut hi;
    let mut fhi;
    if flo > 0.0 {
        hi = 2.0;
        fhi = log_rho(hi);
        while fhi > 0.0 {
            lo = hi;
            flo = fhi;
            hi *= 2.0;
            if hi > 1e18 {
                return Err(Error::IterationLimit { limit: 60 });
            }
            fhi = log_rho(hi);
        }
    } else {
        hi = lo;
        fhi = flo;
        lo = 0.5;
        flo = log_rho(lo);
        while flo < 0.0 {
            hi = lo;
            fhi = flo;
            lo *= 0.5;
            if lo < 1e-18 {
                return Err(Error::IterationLimit { limit: 60 });
            }
            flo = log_rho(lo);
        }
    }
    let tol = 1e-13 * hi.max(1.0);
    linalg::illinois_root(log_rho, lo, flo, hi, fhi, tol)
}

/// Rescales a length function onto the unit-entropy locus: returns `h·ℓ`,
/// which satisfies `h(G, h·ℓ) = 1`.
///
/// # Errors
///
/// [`Error::ZeroEntropy`] if the graph has entropy `0` (no rescaling of a
/// tree or circle ever reaches entropy 1).
pub fn normalize_unit(g: &Graph, l: &LengthFunction) -> Result<LengthFunction> {
    let h = entropy(g, l)?;
    if h == 0.0 {
        return Err(Error::ZeroEntropy);
    }
    l.scaled(h)
}

/// Absolute tolerance on `|ρ(A_{G,ℓ}) − 1|` accepted by [`perron_pair`].
///
/// A length function within `1e-8` of the unit-entropy locus moves the
/// Perron root by at most (mean ℓ weighted by μ) · 1e-8, which the total
/// length bounds from above.
pub(crate) fn unit_tolerance(l: &LengthFunction) -> f64 {
    1e-8 * (1.0 + l.total())
}

/// Checks that `ℓ` lies on the unit-entropy locus within [`unit_tolerance`].
pub(crate) fn require_unit(g: &Graph, l: &LengthFunction) -> Result<()> {
    let rho = spectral_radius(&weighted_matrix(g, l)?);
    if libm::fabs(rho - 1.0) > unit_tolerance(l) {
        return Err(Error::NotUnitEntropy { spectral_radius: rho });
    }
    Ok(())
}

/// Left and right Perron data of `A_{G,ℓ}` on the unit-entropy locus.
///
/// Vectors are indexed by directed edges.  Normalization is pinned so
/// results are reproducible: `‖right‖₁ = 1` and `leftᵀ·right = 1`.
#[derive(Clone, Debug)]
pub struct PerronPair {
    /// The Perron eigenvalue of `A_{G,ℓ}` (within the unit tolerance of 1).
    pub lambda: f64,
    /// Left Perron vector `u` (row eigenvector), strictly positive.
    pub left: Vec<f64>,
    /// Right Perron vector `v`, strictly positive, `‖v‖₁ = 1`.
    pub right: Vec<f64>,
    /// `max_e |(uᵀA − λuᵀ)(e)|`.
    pub residual_left: f64,
    /// `max_e |(Av − λv)(e)|`.
    pub residual_right: f64,
}

/// Computes the Perron pair of the weighted transition matrix at a
/// unit-entropy length function.
///
/// # Errors
///
/// * [`Error::Disconnected`] / [`Error::RankTooLow`] — the graph must be
///   connected with rank ≥ 2.
/// * [`Error::NotStronglyConnected`] — the transition digraph must be a
///   single strongly connected block (valence-1 vertices break this), or
///   no strictly positive eigenvector exists.
/// * [`Error::NotUnitEntropy`] — `ρ(A_{G,ℓ})` must be within a scaled
///   `1e-8` of `1`.
pub fn perron_pair(g: &Graph, l: &LengthFunction) -> Result<PerronPair> {
    l.check_fits(g)?;
    let components = g.component_count();
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    if g.rank() < 2 {
        return Err(Error::RankTooLow { rank: g.rank(), needs: 2 });
    }
    let n = g.edge_count();
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        for f in g.successors(e) {
            adj[e.index()].push(f.index());
        }
    }
    if linalg::strongly_connected(n, &adj).len() != 1 {
        return Err(Error::NotStronglyConnected);
    }
    let w = weighted_matrix(g, l)?;
    let d = w.dense();
    let right_out = linalg::perron(d, false);
    let lambda = right_out.value;
    if libm::fabs(lambda - 1.0) > unit_tolerance(l) {
        return Err(Error::NotUnitEntropy { spectral_radius: lambda });
    }
    let left_out = linalg::perron(d, true);

    // Polish both vectors by one round of inverse iteration with a shift
    // just off the Perron root, then keep whichever vector has the smaller
    // eigen-residual.
    let sigma = lambda * (1.0 + 1e-11) + 1e-300;
    let right = better_vector(d, false, lambda, right_out.vector, sigma);
    let left = better_vector(d, true, lambda, left_out.vector, sigma);

    // Pin the normalization: ‖v‖₁ = 1, uᵀv = 1.
    let mut right = right;
    let sum: f64 = right.iter().sum();
    for v in right.iter_mut() {
        *v /= sum;
    }
    let mut left = left;
    let dot: f64 = left.iter().zip(&right).map(|(a, b)| a * b).sum();
    for u in left.iter_mut() {
        *u /= dot;
    }
    let residual_right = eigen_residual(d, false, lambda, &right);
    let residual_left = eigen_residual(d, true, lambda, &left);
    Ok(PerronPair { lambda, left, right, residual_left, residual_right })
}

/// One inverse-iteration polish; returns whichever of the original and
/// polished vectors has the smaller eigen-residual (after L1
/// normalization).
fn better_vector(
    d: &Dense,
    transpose: bool,
    lambda: f64,
    mut base: Vec<f64>,
    sigma: f64,
) -> Vec<f64> {
    normalize_l1(&mut base);
    let n = d.n();
    let mut shifted = if transpose { transposed(d) } else { d.clone() };
    for i in 0..n {
        shifted.set(i, i, shifted.get(i, i) - sigma);
    }
    let lu = Lu::factor(&shifted);
    let mut candidate = base.clone();
    for _ in 0..2 {
        lu.solve(&mut candidate);
        for c in candidate.iter_mut() {
            *c = libm::fabs(*c).max(1e-300);
        }
        normalize_l1(&mut candidate);
    }
    let r_base = eigen_residual(d, transpose, lambda, &base);
    let r_cand = eigen_residual(d, transpose, lambda, &candidate);
    if r_cand < r_base {
        candidate
    } else {
        base
    }
}

fn transposed(d: &Dense) -> Dense {
    let n = d.n();
    let mut t = Dense::zeros(n);
    for i in 0..n {
        for j in 0..n {
            t.set(i, j, d.get(j, i));
        }
    }
    t
}

fn normalize_l1(x: &mut [f64]) {
    let sum: f64 = x.iter().map(|v| libm::fabs(*v)).sum();
    for v in x.iter_mut() {
        *v /= sum;
    }
}

fn eigen_residual(d: &Dense, transpose: bool, lambda: f64, x: &[f64]) -> f64 {
    let mut y = vec![0.0; x.len()];
    if transpose {
        d.matvec_t(x, &mut y);
    } else {
        d.matvec(x, &mut y);
    }
    y.iter()
        .zip(x)
        .map(|(yi, xi)| libm::fabs(yi - lambda * xi))
        .fold(0.0, f64::max)
}

/// The equilibrium measure `μ(e) = u(e)·v(e)` on directed edges.
///
/// With the [`PerronPair`] normalization `uᵀv = 1` this is a probability
/// measure; it is strictly positive and reversal-invariant
/// (`μ(e) = μ(ē)`).
#[derive(Clone, Debug)]
pub struct EquilibriumMeasure {
    values: Vec<f64>,
}

impl EquilibriumMeasure {
    /// Mass of a directed edge.
    #[must_use]
    pub fn get(&self, e: EdgeId) -> f64 {
        self.values[e.index()]
    }

    /// All masses in directed-edge order.
    #[must_use]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Combined mass of a pair's two orientations.
    #[must_use]
    pub fn pair_mass(&self, p: crate::graph::PairId) -> f64 {
        self.values[p.forward().index()] + self.values[p.backward().index()]
    }

    /// Total mass (1 up to rounding; kept exact by construction).
    #[must_use]
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Computes the equilibrium measure at a unit-entropy length function.
///
/// Errors as in [`perron_pair`].  The returned masses are renormalized to
/// sum to exactly 1 (the `uᵀv = 1` normalization already puts them within
/// rounding of that).
pub fn equilibrium_measure(g: &Graph, l: &LengthFunction) -> Result<EquilibriumMeasure> {
    let pair = perron_pair(g, l)?;
    let mut values: Vec<f64> =
        pair.left.iter().zip(&pair.right).map(|(u, v)| u * v).collect();
    let total: f64 = values.iter().sum();
    for v in values.iter_mut() {
        *v /= total;
    }
    Ok(EquilibriumMeasure { values })
}

/// The determinant function `F(ℓ) = det(I − A_{G,ℓ})`.
///
/// `F` vanishes on the unit-entropy locus (where `1` is an eigenvalue) and
/// is positive for `ℓ` strictly above it.  Defined for any graph and any
/// valid length function; no connectivity is required.
pub fn f_value(g: &Graph, l: &LengthFunction) -> Result<f64> {
    let w = weighted_matrix(g, l)?;
    let n = w.order();
    let mut m = Dense::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, -w.dense().get(i, j));
        }
        m.set(i, i, 1.0 + m.get(i, i));
    }
    Ok(Lu::factor(&m).det())
}

/// Gradient of `F` by central finite differences: component `p` is
/// `(F(ℓ + h·δ_p) − F(ℓ − h·δ_p)) / 2h` over edge pairs `p`.
///
/// # Errors
///
/// `h` must be positive and smaller than every edge length (otherwise
/// `ℓ − h·δ_p` leaves the valid cone); violations surface as
/// [`Error::NonPositiveLength`].
pub fn f_gradient(g: &Graph, l: &LengthFunction, h: f64) -> Result<Vec<f64>> {
    l.check_fits(g)?;
    if h.is_nan() || h <= 0.0 {
        return Err(Error::NonPositiveLength { pair: 0, value: h });
    }
    let mut grad = Vec::with_capacity(l.pair_count());
    for p in 0..l.pair_count() {
        let mut plus = l.values().to_vec();
        plus[p] += h;
        let mut minus = l.values().to_vec();
        minus[p] -= h;
        let fp = f_value(g, &LengthFunction::new(plus)?)?;
        let fm = f_value(g, &LengthFunction::new(minus)?)?;
        grad.push((fp - fm) / (2.0 * h));
    }
    Ok(grad)
}
