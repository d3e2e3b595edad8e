//! Subgraph-entropy suprema and heuristic minimization over the
//! unit-entropy moduli space.
//!
//! For a unit-entropy metric graph `(G, ℓ)` the *subgraph entropy* is
//!
//! ```text
//! h_sup(G, ℓ) = max { h(H, ℓ|_H) : H ⊊ G a proper subgraph },
//! ```
//!
//! with the lengths restricted — never renormalized — to each subgraph.
//! Since entropy is monotone under inclusion (a subgraph's transition
//! matrix is a principal submatrix, so its spectral radius can only
//! drop), the supremum is strictly below 1 and is always attained on a
//! *maximal* proper subgraph, i.e. one obtained by deleting a single edge
//! pair.  [`entropy_sup`] evaluates every proper subgraph anyway (the map
//! of all values is itself useful data), while
//! [`entropy_sup_over_deletions`] exploits the monotonicity to handle
//! graphs too large for exhaustive enumeration, with identical results.
//!
//! Minimizing `ℓ ↦ h_sup(G, ℓ)` over the unit-entropy locus `M¹(G)`
//! estimates the infimum `h_inf(G)`, the quantity conjectured to be
//! `log 2 / log 3` for the four-edge theta and `log 3 / log 5` for the
//! three-petal rose.  The objective is a maximum of smooth branches that
//! meet in ridges exactly where the optimal subgraph switches — and the
//! conjectured extremals sit *on* those ridges — so the search uses a
//! derivative-free Nelder–Mead simplex in log-length coordinates.  The
//! scale direction (adding a constant to all log-lengths) is folded away
//! by normalizing to unit entropy inside the objective, and the search
//! runs in the sum-zero hyperplane so the simplex cannot drift along the
//! flat direction.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::graph::{
    delete_edges, proper_subgraphs, restrict_to, Graph, LengthFunction, SubgraphSelection,
};
use crate::spectral::{self, entropy, normalize_unit};

/// Largest number of edge pairs [`entropy_sup`] will enumerate
/// exhaustively (`2^20 − 2` subgraphs).
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 20;

/// The subgraph-entropy supremum together with the full per-subgraph map.
#[derive(Clone, Debug)]
pub struct SupResult {
    /// The supremum itself; lies in `[0, 1)` for unit-entropy input.
    pub value: f64,
    /// The selection (pairs kept) attaining the supremum; ties go to the
    /// smallest selection bitmask.
    pub best_subgraph: SubgraphSelection,
    /// Every evaluated selection with its entropy, in ascending bitmask
    /// order.
    pub per_subgraph: Vec<(SubgraphSelection, f64)>,
}

/// Computes the subgraph entropy of `(g, ℓ)` by exhausting all proper
/// subgraphs.
///
/// Every non-empty proper subset of the edge pairs is restricted to (with
/// the lengths it inherits) and its entropy recorded; the maximum and its
/// argmax come back along with the whole map.  Subgraphs that fall apart
/// into pieces of rank at most one contribute entropy `0`.
///
/// # Errors
///
/// * [`Error::TooManyPairs`] — more than [`EXHAUSTIVE_PAIR_LIMIT`] pairs.
/// * [`Error::NotUnitEntropy`] — `ℓ` is not unit within tolerance.
pub fn entropy_sup(g: &Graph, l: &LengthFunction) -> Result<SupResult> {
    let pairs = g.pair_count();
    if pairs > EXHAUSTIVE_PAIR_LIMIT {
        return Err(Error::TooManyPairs { pairs, limit: EXHAUSTIVE_PAIR_LIMIT });
    }
    spectral::require_unit(g, l)?;
    let mut per_subgraph = Vec::new();
    let mut best: Option<(f64, SubgraphSelection)> = None;
    for sel in proper_subgraphs(g) {
        let (sub, sub_l) = restrict_to(g, l, &sel)?;
        let h = entropy(&sub, &sub_l)?;
        // Strict comparison keeps the first (smallest-bitmask) argmax.
        if best.as_ref().is_none_or(|(b, _)| h > *b) {
            best = Some((h, sel.clone()));
        }
        per_subgraph.push((sel, h));
    }
    let (value, best_subgraph) =
        best.expect("unit entropy forces at least two pairs, hence subgraphs");
    Ok(SupResult { value, best_subgraph, per_subgraph })
}

/// Computes the subgraph entropy by deleting one edge pair at a time.
///
/// Entropy is monotone under subgraph inclusion, so the supremum over all
/// proper subgraphs equals the maximum over the `|E₊|` maximal ones.
/// This evaluates linearly many subgraphs instead of exponentially many
/// and carries no pair-count guard; the per-subgraph map contains exactly
/// the single-deletion selections.  Agrees with [`entropy_sup`] wherever
/// both apply.
///
/// # Errors
///
/// [`Error::NotUnitEntropy`] — `ℓ` is not unit within tolerance.
pub fn entropy_sup_over_deletions(g: &Graph, l: &LengthFunction) -> Result<SupResult> {
    spectral::require_unit(g, l)?;
    let mut per_subgraph = Vec::new();
    let mut best: Option<(f64, SubgraphSelection)> = None;
    for p in g.pairs() {
        let kept = SubgraphSelection::singleton(p).complement(g);
        let (sub, sub_l) = delete_edges(g, l, &SubgraphSelection::singleton(p))?;
        let h = entropy(&sub, &sub_l)?;
        if best.as_ref().is_none_or(|(b, _)| h > *b) {
            best = Some((h, kept.clone()));
        }
        per_subgraph.push((kept, h));
    }
    let (value, best_subgraph) =
        best.expect("unit entropy forces at least two pairs, hence deletions");
    Ok(SupResult { value, best_subgraph, per_subgraph })
}

/// Settings for [`minimize_entropy_sup`].
#[derive(Clone, Debug)]
pub struct OptimizerConfig {
    /// Independent simplex starts: the uniform point plus `restarts − 1`
    /// Dirichlet-perturbed points.
    pub restarts: usize,
    /// Iteration cap per restart.
    pub max_iterations: usize,
    /// Edge length step (in log coordinates) of the initial simplex.
    pub initial_step: f64,
    /// A restart stops, and counts as converged, once every simplex
    /// vertex is within this of the best vertex.
    pub diameter_tol: f64,
    /// Seed for the restart points; restart `k` draws from
    /// `sample_seed(seed, k)`.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 20,
            max_iterations: 300,
            initial_step: 0.25,
            diameter_tol: 1e-7,
            seed: fixtures::DEFAULT_SEED,
        }
    }
}

/// One logged step of the simplex search.
#[derive(Clone, Copy, Debug)]
pub struct TraceRow {
    /// Restart the step belongs to.
    pub restart: usize,
    /// Iteration within the restart.
    pub iteration: usize,
    /// Best objective value seen by this restart so far.
    pub objective: f64,
    /// Largest distance from a simplex vertex to the best vertex.
    pub simplex_diameter: f64,
}

/// Heuristic estimate of `h_inf(G) = inf { h_sup(G, ℓ) : ℓ ∈ M¹(G) }`.
#[derive(Clone, Debug)]
pub struct InfEstimate {
    /// Best subgraph-entropy supremum found.
    pub value: f64,
    /// The unit-entropy length function attaining it.
    pub argmin_lengths: LengthFunction,
    /// Per-iteration log of every restart.
    pub optimizer_trace: Vec<TraceRow>,
    /// Whether the winning restart's simplex collapsed below the
    /// diameter tolerance (as opposed to running out of iterations).
    pub converged: bool,
}

/// Euclidean distance between coordinate vectors.
fn distance(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Projects log-coordinates onto the sum-zero hyperplane.
///
/// The objective is invariant under adding a constant to every
/// log-length (it rescales `ℓ`, which the unit normalization undoes), so
/// the search space is really this hyperplane; projecting the initial
/// vertices keeps every later simplex operation inside it.
fn recentre(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    for v in x.iter_mut() {
        *v -= mean;
    }
}

/// The objective `x ↦ h_sup(G, normalize_unit(exp(x)))`.
///
/// Coordinates are clamped to `[−30, 30]` before exponentiation as a
/// trust region; the optimum of interest is far inside.
fn objective(g: &Graph, x: &[f64]) -> Result<f64> {
    let lengths: Vec<f64> = x.iter().map(|&v| libm::exp(v.clamp(-30.0, 30.0))).collect();
    let raw = LengthFunction::new(lengths)?;
    let unit = normalize_unit(g, &raw)?;
    Ok(entropy_sup(g, &unit)?.value)
}

/// Minimizes the subgraph entropy over the unit-entropy locus by
/// restarted Nelder–Mead simplex search in log-length coordinates.
///
/// Restart 0 starts at the uniform point, so the estimate never exceeds
/// the uniform point's value; further restarts start at Dirichlet-random
/// length profiles under the configured seed.  The returned lengths are
/// unit-normalized and reproduce `value` through [`entropy_sup`]; the
/// trace records every iteration of every restart.
///
/// This is a heuristic: `converged` certifies a collapsed simplex, not
/// global optimality.
///
/// # Errors
///
/// * [`Error::RankTooLow`] — the graph must have first Betti number at
///   least 3 (below that the infimum degenerates: every proper subgraph
///   of a rank-2 graph has rank at most 1, so the objective is
///   identically zero).
/// * [`Error::TooManyPairs`] — via the exhaustive [`entropy_sup`].
pub fn minimize_entropy_sup(g: &Graph, config: &OptimizerConfig) -> Result<InfEstimate> {
    let rank = g.rank();
    if rank < 3 {
        return Err(Error::RankTooLow { rank, needs: 3 });
    }
    let n = g.pair_count();
    let restarts = config.restarts.max(1);
    let mut trace = Vec::new();
    let mut best: Option<(f64, Vec<f64>, bool)> = None;

    for restart in 0..restarts {
        // Initial vertex: uniform for restart 0, Dirichlet log-profile
        // afterwards (exponential draws normalized to a random simplex
        // point, mapped to log coordinates).
        let mut x0 = vec![0.0; n];
        if restart > 0 {
            let mut rng = fixtures::rng(fixtures::sample_seed(config.seed, restart as u64));
            let draws: Vec<f64> =
                (0..n).map(|_| -libm::log(1.0 - rng.gen::<f64>())).collect();
            let total: f64 = draws.iter().sum();
            for (xi, d) in x0.iter_mut().zip(&draws) {
                *xi = libm::log((d / total).max(1e-12));
            }
        }
        recentre(&mut x0);

        // Initial simplex: x0 plus a step along each coordinate axis,
        // re-projected. All later simplex operations are affine, so the
        // vertices stay in the sum-zero hyperplane.
        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.clone());
        for i in 0..n {
            let mut v = x0.clone();
            v[i] += config.initial_step;
            recentre(&mut v);
            simplex.push(v);
        }
        let mut values: Vec<f64> =
            simplex.iter().map(|v| objective(g, v)).collect::<Result<_>>()?;

        let mut converged = false;
        for iteration in 0..config.max_iterations {
            // Order the simplex: index of best, worst, second-worst.
            let mut order: Vec<usize> = (0..simplex.len()).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            let (lo, hi) = (order[0], order[n]);
            let second_worst = values[order[n - 1]];

            let diameter = simplex
                .iter()
                .map(|v| distance(v, &simplex[lo]))
                .fold(0.0, f64::max);
            trace.push(TraceRow {
                restart,
                iteration,
                objective: values[lo],
                simplex_diameter: diameter,
            });
            if diameter < config.diameter_tol {
                converged = true;
                break;
            }

            // Centroid of all vertices but the worst.
            let mut centroid = vec![0.0; n];
            for (idx, v) in simplex.iter().enumerate() {
                if idx != hi {
                    for (c, vi) in centroid.iter_mut().zip(v) {
                        *c += vi;
                    }
                }
            }
            for c in centroid.iter_mut() {
                *c /= n as f64;
            }
            let combine = |a: f64, b: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[hi])
                    .map(|(c, w)| a * c + b * w)
                    .collect()
            };

            let reflected = combine(2.0, -1.0);
            let f_reflected = objective(g, &reflected)?;
            if f_reflected < values[lo] {
                let expanded = combine(3.0, -2.0);
                let f_expanded = objective(g, &expanded)?;
                if f_expanded < f_reflected {
                    simplex[hi] = expanded;
                    values[hi] = f_expanded;
                } else {
                    simplex[hi] = reflected;
                    values[hi] = f_reflected;
                }
            } else if f_reflected < second_worst {
                simplex[hi] = reflected;
                values[hi] = f_reflected;
            } else {
                // Contract toward the better of worst/reflected; shrink
                // everything toward the best vertex if even that fails.
                let (contracted, threshold) = if f_reflected < values[hi] {
                    (combine(1.5, -0.5), f_reflected)
                } else {
                    (combine(0.5, 0.5), values[hi])
                };
                let f_contracted = objective(g, &contracted)?;
                if f_contracted < threshold {
                    simplex[hi] = contracted;
                    values[hi] = f_contracted;
                } else {
                    let best_vertex = simplex[lo].clone();
                    for (idx, v) in simplex.iter_mut().enumerate() {
                        if idx != lo {
                            for (vi, bi) in v.iter_mut().zip(&best_vertex) {
                                *vi = 0.5 * (*vi + bi);
                            }
                        }
                    }
                    for (idx, v) in simplex.iter().enumerate() {
                        if idx != lo {
                            values[idx] = objective(g, v)?;
                        }
                    }
                }
            }
        }

        let best_idx = (0..values.len())
            .min_by(|&a, &b| values[a].total_cmp(&values[b]))
            .expect("simplex is non-empty");
        let candidate = (values[best_idx], simplex[best_idx].clone(), converged);
        if best.as_ref().is_none_or(|(b, _, _)| candidate.0 < *b) {
            best = Some(candidate);
        }
    }

    let (value, x, converged) = best.expect("at least one restart ran");
    let lengths: Vec<f64> = x.iter().map(|&v| libm::exp(v.clamp(-30.0, 30.0))).collect();
    let argmin_lengths = normalize_unit(g, &LengthFunction::new(lengths)?)?;
    Ok(InfEstimate { value, argmin_lengths, optimizer_trace: trace, converged })
}

/// Per-graph infimum estimates over a user-supplied catalog of graphs
/// sharing one rank.
#[derive(Clone, Debug)]
pub struct RankEstimate {
    /// One estimate per catalog entry, in catalog order.
    pub estimates: Vec<InfEstimate>,
    /// Smallest estimated infimum over the catalog — the empirical
    /// entropy constant of the shared rank, relative to this catalog.
    pub overall_min: f64,
    /// Catalog index attaining the overall minimum.
    pub best_graph: usize,
}

/// Runs [`minimize_entropy_sup`] over a catalog of same-rank graphs.
///
/// The overall minimum estimates the rank's entropy constant
/// `h_r = inf { h_inf(G) : rank(G) = r }` *restricted to the supplied
/// catalog* — no attempt is made to enumerate all homeomorphism types.
///
/// # Errors
///
/// * [`Error::EmptyCatalog`] — no graphs supplied.
/// * [`Error::MixedRanks`] — the graphs do not all share one rank.
/// * Everything [`minimize_entropy_sup`] can return.
pub fn entropy_rank_estimate(
    catalog: &[Graph],
    config: &OptimizerConfig,
) -> Result<RankEstimate> {
    let Some(first) = catalog.first() else {
        return Err(Error::EmptyCatalog);
    };
    let expected = first.rank();
    for g in catalog {
        let found = g.rank();
        if found != expected {
            return Err(Error::MixedRanks { expected, found });
        }
    }
    let mut estimates = Vec::with_capacity(catalog.len());
    for g in catalog {
        estimates.push(minimize_entropy_sup(g, config)?);
    }
    let best_graph = (0..estimates.len())
        .min_by(|&a, &b| estimates[a].value.total_cmp(&estimates[b].value))
        .expect("catalog is non-empty");
    let overall_min = estimates[best_graph].value;
    Ok(RankEstimate { estimates, overall_min, best_graph })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{conjecture_graph, random_unit_lengths, sample_seed, DEFAULT_SEED};
    use crate::graph::{barbell, rose, theta, PairId};
    use approx::assert_relative_eq;

    fn small_config() -> OptimizerConfig {
        OptimizerConfig { restarts: 4, max_iterations: 250, ..OptimizerConfig::default() }
    }

    #[test]
    fn four_edge_theta_sup_is_log2_over_log3() {
        let (g, l) = conjecture_graph();
        let sup = entropy_sup(&g, &l).unwrap();
        let expected = libm::log(2.0) / libm::log(3.0);
        assert_relative_eq!(sup.value, expected, max_relative = 1e-10);
        // All four 3-edge subgraphs tie; the smallest bitmask wins.
        assert_eq!(sup.best_subgraph.bitmask(), 0b0111);
        assert_eq!(sup.per_subgraph.len(), 14);
    }

    #[test]
    fn uniform_rose3_sup_is_log3_over_log5() {
        let l5 = libm::log(5.0);
        let (g, l) = rose(&[l5, l5, l5]).unwrap();
        let sup = entropy_sup(&g, &l).unwrap();
        assert_relative_eq!(
            sup.value,
            libm::log(3.0) / libm::log(5.0),
            max_relative = 1e-10
        );
        assert_eq!(sup.best_subgraph.bitmask(), 0b011);
    }

    #[test]
    fn barbell_sup_is_zero() {
        // Every proper subgraph of the rank-2 barbell has component rank
        // at most 1 (a lone loop, a loop with a dangling bridge, or two
        // disjoint loops), so the entropy gate sends each one to 0 and
        // the supremum is exactly 0.
        let (g, raw) = barbell(1.0, 2.0, 0.5).unwrap();
        let l = normalize_unit(&g, &raw).unwrap();
        let sup = entropy_sup(&g, &l).unwrap();
        assert_eq!(sup.value, 0.0);
        assert_eq!(sup.per_subgraph.len(), 6);
        assert!(sup.per_subgraph.iter().all(|(_, h)| *h == 0.0));
    }

    #[test]
    fn deletions_agree_with_exhaustive_enumeration() {
        for index in 0..6 {
            let (g, _) = match index % 2 {
                0 => theta(&[1.0; 4]).unwrap(),
                _ => crate::graph::double_rose(&[1.0, 1.0], &[1.0], 1.0).unwrap(),
            };
            let l = random_unit_lengths(&g, sample_seed(DEFAULT_SEED, index)).unwrap();
            let full = entropy_sup(&g, &l).unwrap();
            let fast = entropy_sup_over_deletions(&g, &l).unwrap();
            assert_relative_eq!(full.value, fast.value, max_relative = 1e-12);
            assert_eq!(fast.per_subgraph.len(), g.pair_count());
        }
    }

    #[test]
    fn sup_is_invariant_under_edge_relabeling() {
        let (g, _) = theta(&[1.0; 4]).unwrap();
        let l = random_unit_lengths(&g, DEFAULT_SEED).unwrap();
        let mut permuted = l.values().to_vec();
        permuted.swap(0, 3);
        permuted.swap(1, 2);
        let lp = LengthFunction::new(permuted).unwrap();
        let a = entropy_sup(&g, &l).unwrap().value;
        let b = entropy_sup(&g, &lp).unwrap().value;
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }

    #[test]
    fn rose_sup_deletes_the_longest_petal() {
        for index in 0..8 {
            let petals = 3 + (index as usize % 3);
            let (g, _) = rose(&vec![1.0; petals]).unwrap();
            let l = random_unit_lengths(&g, sample_seed(DEFAULT_SEED, 100 + index)).unwrap();
            let longest = (0..petals)
                .max_by(|&a, &b| l.values()[a].total_cmp(&l.values()[b]))
                .unwrap();
            let sup = entropy_sup(&g, &l).unwrap();
            let kept = SubgraphSelection::singleton(PairId(longest as u32)).complement(&g);
            assert_eq!(
                sup.best_subgraph.pairs(),
                kept.pairs(),
                "petals {:?}",
                l.values()
            );
        }
    }

    #[test]
    fn sup_requires_unit_lengths_and_few_pairs() {
        let (g, l) = rose(&[1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(
            entropy_sup(&g, &l),
            Err(Error::NotUnitEntropy { .. })
        ));
        let (big, _) = rose(&[1.0; 21]).unwrap();
        let unit = random_unit_lengths(&big, DEFAULT_SEED).unwrap();
        assert!(matches!(
            entropy_sup(&big, &unit),
            Err(Error::TooManyPairs { pairs: 21, limit: 20 })
        ));
        // The deletion route has no pair guard.
        assert!(entropy_sup_over_deletions(&big, &unit).is_ok());
    }

    #[test]
    fn minimize_rejects_low_rank() {
        let (g, _) = barbell(1.0, 1.0, 1.0).unwrap();
        assert!(matches!(
            minimize_entropy_sup(&g, &OptimizerConfig::default()),
            Err(Error::RankTooLow { rank: 2, needs: 3 })
        ));
    }

    #[test]
    fn minimize_rose3_finds_the_uniform_point() {
        let (g, _) = rose(&[1.0, 1.0, 1.0]).unwrap();
        let est = minimize_entropy_sup(&g, &small_config()).unwrap();
        let expected = libm::log(3.0) / libm::log(5.0);
        assert!((est.value - expected).abs() < 1e-3, "value {}", est.value);
        assert!(est.converged);
        // The argmin is the uniform log-5 rose.
        for &v in est.argmin_lengths.values() {
            assert_relative_eq!(v, libm::log(5.0), max_relative = 1e-2);
        }
        // Type invariants: unit lengths reproducing the value.
        let sup = entropy_sup(&g, &est.argmin_lengths).unwrap();
        assert!((sup.value - est.value).abs() < 1e-8);
        // Never worse than the uniform start.
        let uniform = normalize_unit(&g, &LengthFunction::uniform(3, 1.0).unwrap()).unwrap();
        assert!(est.value <= entropy_sup(&g, &uniform).unwrap().value + 1e-12);
        assert!(!est.optimizer_trace.is_empty());
    }

    #[test]
    fn minimize_four_edge_theta_finds_log2_over_log3() {
        let (g, _) = theta(&[1.0; 4]).unwrap();
        let est = minimize_entropy_sup(&g, &small_config()).unwrap();
        let expected = libm::log(2.0) / libm::log(3.0);
        assert!((est.value - expected).abs() < 1e-3, "value {}", est.value);
        for &v in est.argmin_lengths.values() {
            assert_relative_eq!(v, libm::log(3.0), max_relative = 1e-2);
        }
    }

    #[test]
    fn rank_estimate_prefers_the_four_edge_theta() {
        let (rose3, _) = rose(&[1.0; 3]).unwrap();
        let (theta4, _) = theta(&[1.0; 4]).unwrap();
        let config = OptimizerConfig { restarts: 2, ..small_config() };
        let out = entropy_rank_estimate(&[rose3.clone(), theta4], &config).unwrap();
        assert_eq!(out.best_graph, 1);
        assert!((out.overall_min - libm::log(2.0) / libm::log(3.0)).abs() < 1e-3);
        assert_eq!(out.estimates.len(), 2);

        assert!(matches!(
            entropy_rank_estimate(&[], &config),
            Err(Error::EmptyCatalog)
        ));
        let (rose4, _) = rose(&[1.0; 4]).unwrap();
        assert!(matches!(
            entropy_rank_estimate(&[rose3, rose4], &config),
            Err(Error::MixedRanks { expected: 3, found: 4 })
        ));
    }
}
