//! Executable checkers for the proved entropy inequalities.
//!
//! Each inequality that the theory establishes — rose–barbell comparison,
//! the barbell entropy floor, the rose and non-loop equilibrium-measure
//! estimates, the collapse chain, the rose floor, and the final assembly
//! bound with its barbell trigger — is implemented here as a *checker*
//! that evaluates both sides numerically and reports whether the claim
//! held.  Since every one of them is a theorem, a violation on valid
//! input is an implementation bug somewhere in the spectral machinery;
//! running the randomized sweeps in [`run_suite`] therefore doubles as a
//! correctness oracle for the whole crate.
//!
//! Reports carry both sides and a margin so that near-ties are visible:
//! the margin is oriented so that *positive means comfortably satisfied*
//! (for `lhs ≥ rhs` claims it is `lhs − rhs`, for `lhs ≤ rhs` claims
//! `rhs − lhs`, and for the two-sided collapse chain the lesser of the
//! two one-sided margins).  Strict inequalities are tested with zero
//! slack — an exact floating-point tie would surface as a violation
//! worth inspecting rather than being absorbed silently — while
//! non-strict ones allow the documented rounding slack.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::explorer;
use crate::fixtures;
use crate::graph::{
    self, collapse_edge, proper_subgraphs, restrict_to, Graph, LengthFunction, PairId,
    SubgraphSelection,
};
use crate::linalg;
use crate::spectral::{
    self, entropy, equilibrium_measure, spectral_radius, weighted_matrix,
};

/// Outcome of one inequality check.
#[derive(Clone, Debug)]
pub struct BoundReport {
    /// Which check produced the report (stable identifier, one per
    /// checker; doubles as the CSV `check_name` column).
    pub name: &'static str,
    /// Input fingerprint: the sample seed inside a randomized sweep, the
    /// grid index for deterministic grid rows, `0` for direct calls.
    pub seed: u64,
    /// Left-hand side of the documented inequality.
    pub lhs: f64,
    /// Right-hand side of the documented inequality.
    pub rhs: f64,
    /// Oriented slack: positive means comfortably satisfied.
    pub margin: f64,
    /// Whether the inequality held (with the checker's documented
    /// strictness and rounding slack).
    pub satisfied: bool,
}

/// The curve `R₂(x) = −log((1 − e^{−x}) / (1 + 3e^{−x}))`.
///
/// `(x, R₂(x))` parametrizes the unit-entropy locus of the two-petal
/// rose: the rose with petal lengths `x` and `R₂(x)` has unit entropy.
/// Defined for `x > 0`; decreasing, with `R₂(log 3) = log 3` (the
/// uniform point), diverging as `x → 0⁺`, and `R₂(x) → 0⁺` as `x → ∞`.
/// Evaluated as `log1p(3e^{−x}) − log1p(−e^{−x})` so the tail keeps full
/// relative precision (the plain quotient would round to `−log 1 = 0`
/// once `x` passes ~36).  For `x < 0` the first logarithm's argument is
/// negative and the result is NaN.
#[must_use]
pub fn r2_curve(x: f64) -> f64 {
    let q = libm::exp(-x);
    libm::log1p(3.0 * q) - libm::log1p(-q)
}

/// Entropy of the two-loop barbell `B₂(a, b, c)`, solved from its scalar
/// characteristic equation.
///
/// A circuit of the barbell alternates bridge crossings with windings at
/// the two loops, so the unit-radius condition for the weighted
/// transition matrix reduces (via the first-return series at the bridge,
/// with `x = e^{−sa}`, `y = e^{−sb}`, `z = e^{−sc}`) to
///
/// ```text
/// 4·x·y·z² = (1 − x)(1 − y).
/// ```
///
/// The entropy is the unique root in `s` of its log form
/// `G(s) = log 4 − s(a + b + 2c) − log(−expm1(−sa)) − log(−expm1(−sb))`,
/// which is strictly decreasing from `+∞` to `−∞`.  Unlike the generic
/// eigensolve, `G` keeps full relative precision even when a loop is
/// many orders of magnitude shorter than the bridge — the regime the
/// barbell-floor family enters for large `c`, where `1 − e^{−sa}`
/// computed through the matrix entries has no correct bits left and the
/// Perron root is flat at the `10⁻¹⁴` level.  All barbell entropies in
/// this module go through this solve; a unit test pins it against the
/// generic eigensolver on benign inputs.
fn barbell_entropy(a: f64, b: f64, c: f64) -> Result<f64> {
    for (pair, value) in [a, b, c].into_iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveLength { pair, value });
        }
    }
    let g = |s: f64| {
        libm::log(4.0) - s * (a + b + 2.0 * c)
            - libm::log(-libm::expm1(-s * a))
            - libm::log(-libm::expm1(-s * b))
    };
    let mut lo = 1e-9;
    let mut flo = g(lo);
    while flo <= 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::IterationLimit { limit: 1000 });
        }
        flo = g(lo);
    }
    let mut hi = 1.0;
    let mut fhi = g(hi);
    while fhi >= 0.0 {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::IterationLimit { limit: 1000 });
        }
        fhi = g(hi);
    }
    linalg::illinois_root(g, lo, flo, hi, fhi, 1e-14)
}

/// Checks the rose–barbell comparison `h_{B₂}(a,b,c) ≥ h_{R₂}(a, b+2c)`.
///
/// Wrapping the far loop and the bridge into a single petal of length
/// `b + 2c` can only lose circuits, so the barbell dominates.  Margin is
/// `lhs − rhs`; satisfied allows `1e-10` rounding slack.  As `c → 0` the
/// two sides converge.
///
/// # Errors
///
/// Invalid lengths ([`Error::NonPositiveLength`]).
pub fn check_rose_barbell(a: f64, b: f64, c: f64) -> Result<BoundReport> {
    let lhs = barbell_entropy(a, b, c)?;
    let (rg, rl) = graph::rose(&[a, b + 2.0 * c])?;
    let rhs = entropy(&rg, &rl)?;
    let margin = lhs - rhs;
    Ok(BoundReport {
        name: "rose_barbell_compare",
        seed: 0,
        lhs,
        rhs,
        margin,
        satisfied: margin >= -1e-10,
    })
}

/// Checks the barbell floor: `h(B₂(3e^{−c/2}, c/4, c)) ≥ 1/5`.
///
/// This one-parameter family of barbells — a very short near loop, a
/// quarter-bridge far loop, a bridge of length `c` — stays above entropy
/// `1/5` for every `c > 0`, decreasing towards `2/9` as `c → ∞`.
/// Margin is `lhs − 0.2` with `1e-10` slack.  The entropy comes from the
/// closed characteristic equation ([`barbell_entropy`]): past `c ≈ 40`
/// the near loop is so short that the generic eigensolve cannot resolve
/// the Perron root's crossing of 1 in double precision.
///
/// # Errors
///
/// Invalid `c` ([`Error::NonPositiveLength`]).
pub fn check_barbell_floor(c: f64) -> Result<BoundReport> {
    let lhs = barbell_entropy(3.0 * libm::exp(-c / 2.0), c / 4.0, c)?;
    let rhs = 0.2;
    let margin = lhs - rhs;
    Ok(BoundReport {
        name: "barbell_floor",
        seed: 0,
        lhs,
        rhs,
        margin,
        satisfied: margin >= -1e-10,
    })
}

/// Checks the rose estimate: on a unit rose,
/// `e^{ℓ(e_i)}μ(e_i) < 4·e^{ℓ(e_k)}μ(e_k)` strictly, for any ordered pair
/// of distinct petals.
///
/// The rose is reconstructed from the length count (a rose is determined
/// by its number of petals).  Both sides use the combined mass of the two
/// orientations; the convention cancels.  Satisfied requires the *strict*
/// inequality with zero slack; margin is `rhs − lhs`.
///
/// # Errors
///
/// * [`Error::EdgeOutOfRange`] / [`Error::IdenticalEdges`] — bad petal
///   indices.
/// * [`Error::NotUnitEntropy`] — `ℓ` is not on the unit locus.
pub fn check_rose_estimate(l: &LengthFunction, i: PairId, k: PairId) -> Result<BoundReport> {
    let (g, l) = graph::rose(l.values())?;
    for p in [i, k] {
        if p.index() >= g.pair_count() {
            return Err(Error::EdgeOutOfRange { index: p.index(), limit: g.pair_count() });
        }
    }
    if i == k {
        return Err(Error::IdenticalEdges { pair: i.index() });
    }
    let mu = equilibrium_measure(&g, &l)?;
    let lhs = libm::exp(l.pair(i)) * mu.pair_mass(i);
    let rhs = 4.0 * libm::exp(l.pair(k)) * mu.pair_mass(k);
    Ok(BoundReport {
        name: "rose_estimate",
        seed: 0,
        lhs,
        rhs,
        margin: rhs - lhs,
        satisfied: lhs < rhs,
    })
}

/// Validates the bridge-with-loops incidence pattern shared by the
/// non-loop estimate and the assembly check: `e` a non-loop, `γ1` a loop
/// at its origin, `γ2` a loop at its terminus.
fn validate_bridge_with_loops(
    g: &Graph,
    l: &LengthFunction,
    e: PairId,
    gamma1: PairId,
    gamma2: PairId,
) -> Result<()> {
    l.check_fits(g)?;
    for p in [e, gamma1, gamma2] {
        if p.index() >= g.pair_count() {
            return Err(Error::EdgeOutOfRange { index: p.index(), limit: g.pair_count() });
        }
    }
    if g.is_loop(e) {
        return Err(Error::ExpectedNonLoop { pair: e.index() });
    }
    for p in [gamma1, gamma2] {
        if !g.is_loop(p) {
            return Err(Error::ExpectedLoop { pair: p.index() });
        }
    }
    let origin = g.origin(e.forward());
    let terminus = g.terminus(e.forward());
    if g.origin(gamma1.forward()) != origin {
        return Err(Error::LoopNotAtVertex { pair: gamma1.index(), vertex: origin });
    }
    if g.origin(gamma2.forward()) != terminus {
        return Err(Error::LoopNotAtVertex { pair: gamma2.index(), vertex: terminus });
    }
    Ok(())
}

/// Checks the non-loop estimate: at unit entropy, a non-loop edge `e`
/// flanked by loops `γ1` at its origin and `γ2` at its terminus satisfies
///
/// ```text
/// e^{ℓ(e)}·μ(e) ≤ 2·e^{ℓ(γ1)+ℓ(γ2)}·(μ(γ1) + μ(γ2)).
/// ```
///
/// Non-strict; satisfied allows `1e-12` slack, margin is `rhs − lhs`.
/// The proof splits `μ(e)` into incoming Perron masses at the two
/// endpoints; those split quantities are internal to the proof and are
/// deliberately not part of any public type here.
///
/// # Errors
///
/// Incidence violations ([`Error::ExpectedNonLoop`],
/// [`Error::ExpectedLoop`], [`Error::LoopNotAtVertex`],
/// [`Error::EdgeOutOfRange`]) and [`Error::NotUnitEntropy`].
pub fn check_nonloop_estimate(
    g: &Graph,
    l: &LengthFunction,
    e: PairId,
    gamma1: PairId,
    gamma2: PairId,
) -> Result<BoundReport> {
    validate_bridge_with_loops(g, l, e, gamma1, gamma2)?;
    let mu = equilibrium_measure(g, l)?;
    let lhs = libm::exp(l.pair(e)) * mu.pair_mass(e);
    let rhs = 2.0
        * libm::exp(l.pair(gamma1) + l.pair(gamma2))
        * (mu.pair_mass(gamma1) + mu.pair_mass(gamma2));
    let margin = rhs - lhs;
    Ok(BoundReport {
        name: "nonloop_estimate",
        seed: 0,
        lhs,
        rhs,
        margin,
        satisfied: margin >= -1e-12,
    })
}

/// The proved lower bound for the subgraph entropy of unit roses with
/// `r` petals: `1/5` for `3 ≤ r < 29` and `1 − 4/log(2r−3)` for
/// `r ≥ 29` (increasing to 1).
///
/// # Errors
///
/// [`Error::TooFewLoops`] for `r < 3`.
pub fn rose_floor(r: usize) -> Result<f64> {
    if r < 3 {
        return Err(Error::TooFewLoops { loops: r, minimum: 3 });
    }
    if r < 29 {
        Ok(0.2)
    } else {
        Ok(1.0 - 4.0 / libm::log(2.0 * r as f64 - 3.0))
    }
}

/// Checks the rose floor: a unit rose's subgraph entropy is at least
/// [`rose_floor`] of its petal count.
///
/// The rose is reconstructed from the length count.  The supremum is
/// computed over single-petal deletions (exact by monotonicity), so
/// arbitrarily many petals are fine.  Margin is `lhs − rhs` with `1e-9`
/// slack.
///
/// # Errors
///
/// [`Error::TooFewLoops`] below three petals and
/// [`Error::NotUnitEntropy`] off the unit locus.
pub fn check_rose_floor(l: &LengthFunction) -> Result<BoundReport> {
    let rhs = rose_floor(l.pair_count())?;
    let (g, l) = graph::rose(l.values())?;
    let lhs = explorer::entropy_sup_over_deletions(&g, &l)?.value;
    let margin = lhs - rhs;
    Ok(BoundReport {
        name: "rose_floor",
        seed: 0,
        lhs,
        rhs,
        margin,
        satisfied: margin >= -1e-9,
    })
}

/// Checks the two-sided collapse chain.
///
/// Collapsing a non-loop edge `e` of `(G, ℓ)` yields `(G′, ℓ′)`; a proper
/// subgraph `H′ ⊆ G′` (given by `kept_after`, the pairs of `G′` to keep)
/// pulls back to `H ⊆ G`, the pre-image pairs plus `e` itself.  When `e`
/// is minimal in `H` — `ℓ(e) ≤ ℓ(e′)` for every `e′` in `H`, the
/// hypothesis under which a circuit crossing `e` must also cross a
/// remaining edge at least as long — the chain
///
/// ```text
/// h(H, ℓ|_H) ≤ h(H′, ℓ′|_{H′}) ≤ 2·h(H, ℓ|_H)
/// ```
///
/// holds.  Returns `Ok(None)` (skipped, not failed) when the minimality
/// hypothesis does not hold for this `H`.  The report has `lhs = h(H)`,
/// `rhs = h(H′)` and margin `min(rhs − lhs, 2·lhs − rhs)`, each side with
/// `1e-10` slack.
///
/// # Errors
///
/// [`Error::CollapseLoop`], [`Error::EdgeOutOfRange`] from the collapse;
/// [`Error::NotProperSelection`] if `kept_after` is empty or everything.
pub fn check_collapse_inequality(
    g: &Graph,
    l: &LengthFunction,
    e: PairId,
    kept_after: &SubgraphSelection,
) -> Result<Option<BoundReport>> {
    let (collapsed, collapsed_l) = collapse_edge(g, l, e)?;
    if kept_after.is_empty() || kept_after.len() >= collapsed.pair_count() {
        return Err(Error::NotProperSelection {
            selected: kept_after.len(),
            pairs: collapsed.pair_count(),
        });
    }
    // Pairs of the collapsed graph keep their original order with `e`'s
    // slot removed, so index `q` pulls back to `q`, or `q + 1` past `e`.
    let preimage = kept_after.pairs().iter().map(|p| {
        if p.index() >= e.index() {
            PairId(p.0 + 1)
        } else {
            *p
        }
    });
    let h_sel = SubgraphSelection::from_pairs(preimage.chain(core::iter::once(e)));
    let minimal = h_sel.pairs().iter().all(|&p| l.pair(p) >= l.pair(e));
    if !minimal {
        return Ok(None);
    }
    let (h_graph, h_lengths) = restrict_to(g, l, &h_sel)?;
    let lhs = entropy(&h_graph, &h_lengths)?;
    let (hp_graph, hp_lengths) = restrict_to(&collapsed, &collapsed_l, kept_after)?;
    let rhs = entropy(&hp_graph, &hp_lengths)?;
    let margin = (rhs - lhs).min(2.0 * lhs - rhs);
    Ok(Some(BoundReport {
        name: "collapse_chain",
        seed: 0,
        lhs,
        rhs,
        margin,
        satisfied: margin >= -1e-10,
    }))
}

/// The assembly check's result: the main deletion bound, plus the barbell
/// trigger whenever its hypothesis `m ≤ 3e^{−ℓ(e)/2}` fires.
#[derive(Clone, Debug)]
pub struct AssemblyOutcome {
    /// The bound `h(G−e, ℓ|_{G−e}) ≥ 1 − 2e^{−ℓ(e)/2}/m`.
    pub main: BoundReport,
    /// When `m = min(ℓ(γ1), ℓ(γ2)) ≤ 3e^{−ℓ(e)/2}`: the sub-barbell on
    /// `(γ1, e, γ2)` has entropy at least `1/5`.
    pub trigger: Option<BoundReport>,
}

/// Checks the final assembly bound at a unit-entropy length function.
///
/// With `e` a non-loop, `γ1, γ2` loops at its two endpoints, each of
/// length at most `ℓ(e)/4`, and `m = min(ℓ(γ1), ℓ(γ2))`:
///
/// * **main** — deleting `e` keeps entropy at least
///   `1 − 2e^{−ℓ(e)/2}/m` (the integral of the blow-up derivative is
///   bounded by the non-loop estimate);
/// * **trigger** — if moreover `m ≤ 3e^{−ℓ(e)/2}`, the sub-barbell on
///   `(γ1, e, γ2)` with its actual lengths has entropy at least `1/5`:
///   its lengths are pointwise at most the floor family's
///   `(3e^{−c/2}, c/4, c)` template at `c = ℓ(e)`, and entropy only grows
///   when lengths shrink.
///
/// Margins are `lhs − rhs` with `1e-10` slack on both reports.
///
/// # Errors
///
/// Incidence violations as in [`check_nonloop_estimate`];
/// [`Error::LoopTooLong`] when a loop exceeds `ℓ(e)/4`;
/// [`Error::NotUnitEntropy`] off the unit locus.
pub fn check_final_assembly(
    g: &Graph,
    l: &LengthFunction,
    e: PairId,
    gamma1: PairId,
    gamma2: PairId,
) -> Result<AssemblyOutcome> {
    validate_bridge_with_loops(g, l, e, gamma1, gamma2)?;
    let limit = l.pair(e) / 4.0;
    for p in [gamma1, gamma2] {
        if l.pair(p) > limit * (1.0 + 1e-12) {
            return Err(Error::LoopTooLong { pair: p.index(), length: l.pair(p), limit });
        }
    }
    spectral::require_unit(g, l)?;

    let m = l.pair(gamma1).min(l.pair(gamma2));
    let decay = libm::exp(-l.pair(e) / 2.0);
    let lhs = crate::blowup::subgraph_entropy_direct(g, l, e)?;
    let rhs = 1.0 - 2.0 * decay / m;
    let margin = lhs - rhs;
    let main = BoundReport {
        name: "final_assembly",
        seed: 0,
        lhs,
        rhs,
        margin,
        satisfied: margin >= -1e-10,
    };

    let trigger = if m <= 3.0 * decay {
        let lhs = barbell_entropy(l.pair(gamma1), l.pair(gamma2), l.pair(e))?;
        let margin = lhs - 0.2;
        Some(BoundReport {
            name: "assembly_trigger",
            seed: 0,
            lhs,
            rhs: 0.2,
            margin,
            satisfied: margin >= -1e-10,
        })
    } else {
        None
    };
    Ok(AssemblyOutcome { main, trigger })
}

/// Builds the barbell-with-loop graph whose free loop is calibrated to
/// put the whole graph on the unit-entropy locus.
///
/// The graph has loops of length `m` and `d` at vertex 0, a loop of
/// length `b` at vertex 1, and a bridge of length `c` between them (pair
/// order `[m, d, b, bridge]`); the free length `d` is root-found so the
/// spectral radius at `s = 1` is exactly 1.  Such a `d` exists precisely
/// when the underlying barbell `B₂(m, b, c)` has entropy below 1 (the
/// extra loop can only add circuits, and its contribution fades as
/// `d → ∞`).
///
/// # Errors
///
/// Invalid lengths; [`Error::IterationLimit`] if no calibrating `d`
/// exists in `[10⁻⁹, 10⁹]` (the barbell part is already at or above unit
/// entropy).
pub fn calibrated_barbell_with_loop(
    m: f64,
    b: f64,
    c: f64,
) -> Result<(Graph, LengthFunction)> {
    let (g, _) = graph::double_rose(&[m, 1.0], &[b], c)?;
    let rho_at = |d: f64| -> f64 {
        let l = LengthFunction::new([m, d, b, c].to_vec())
            .expect("lengths stay positive inside the bracket");
        let w = weighted_matrix(&g, &l).expect("length function fits the fixed graph");
        spectral_radius(&w) - 1.0
    };
    let lo = 1e-9;
    let flo = rho_at(lo);
    if flo <= 0.0 {
        // Even a near-degenerate loop cannot lift the graph to unit
        // entropy: no calibration exists.
        return Err(Error::IterationLimit { limit: 0 });
    }
    let mut hi = 1.0;
    let mut fhi = rho_at(hi);
    while fhi > 0.0 {
        hi *= 2.0;
        if hi > 1e9 {
            return Err(Error::IterationLimit { limit: 64 });
        }
        fhi = rho_at(hi);
    }
    let d = linalg::illinois_root(rho_at, lo, flo, hi, fhi, 1e-13)?;
    let l = LengthFunction::new([m, d, b, c].to_vec())?;
    Ok((g, l))
}

/// The randomized sweep families, one per theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Rose estimate on random unit roses, 3–8 petals.
    Rose,
    /// Non-loop estimate on rank-3 barbells-with-extra-loop.
    NonLoop,
    /// Rose–barbell comparison on random triples, plus the fixed
    /// 100-point barbell-floor grid.
    Barbell,
    /// Collapse chain on four-edge thetas, shortest edge collapsed,
    /// exhaustive over subgraphs of the collapsed rose.
    Collapse,
    /// Assembly bound and trigger on calibrated barbell-with-loop
    /// fixtures built so the trigger always fires.
    Assembly,
    /// Rose floor on random unit roses cycling 3, 4, 5, 6 and 30 petals.
    RoseFloor,
}

/// The `c` values of the fixed barbell-floor grid: 100 points log-spaced
/// over `[10⁻³, 10²]`.
fn floor_grid() -> impl Iterator<Item = f64> {
    (0..100).map(|i| libm::pow(10.0, -3.0 + 5.0 * i as f64 / 99.0))
}

/// Runs one theorem sweep with `samples` random draws.
///
/// Sample `i` is seeded with `sample_seed(base_seed, i)` and stamped into
/// the reports' `seed` field, so any row can be replayed in isolation.
/// Where one sample admits several instances of an inequality (all
/// ordered petal pairs, both flanking-loop choices, every subgraph of the
/// collapsed graph), the row records the instance of *smallest margin*,
/// so "all rows satisfied" certifies the whole family.  Deterministic
/// extras — the barbell suite's 100-point floor grid — are appended after
/// the random rows with the grid index in the seed column.  The assembly
/// suite emits two rows per sample (main bound and trigger).
///
/// For the rose suite the smallest margin over ordered petal pairs
/// `(i, k)` is attained at `i` the longest and `k` the shortest petal:
/// `e^{ℓ}μ` is increasing in the petal length, a monotonicity the unit
/// tests verify against full enumeration.
///
/// # Errors
///
/// Anything the underlying checkers can return; fixture construction
/// failures ([`Error::IterationLimit`] from calibration).
pub fn run_suite(suite: Suite, samples: u64, base_seed: u64) -> Result<Vec<BoundReport>> {
    let mut rows = Vec::new();
    for index in 0..samples {
        let seed = fixtures::sample_seed(base_seed, index);
        match suite {
            Suite::Rose => {
                let petals = 3 + (index % 6) as usize;
                let (g, _) = graph::rose(&alloc::vec![1.0; petals])?;
                let l = fixtures::random_unit_lengths(&g, seed)?;
                let values = l.values();
                let longest = (0..petals)
                    .max_by(|&a, &b| values[a].total_cmp(&values[b]))
                    .expect("a rose has petals");
                let shortest = (0..petals)
                    .filter(|&p| p != longest)
                    .min_by(|&a, &b| values[a].total_cmp(&values[b]))
                    .expect("at least three petals");
                let mut row =
                    check_rose_estimate(&l, PairId(longest as u32), PairId(shortest as u32))?;
                row.seed = seed;
                rows.push(row);
            }
            Suite::NonLoop => {
                let left_loops = 1 + (index % 2) as usize;
                let (g, _) = graph::double_rose(
                    &alloc::vec![1.0; left_loops],
                    &alloc::vec![1.0; 3 - left_loops],
                    1.0,
                )?;
                let l = fixtures::random_unit_lengths(&g, seed)?;
                let bridge = PairId(3);
                let worst = candidate_flank_pairs(&g, bridge)
                    .map(|(g1, g2)| check_nonloop_estimate(&g, &l, bridge, g1, g2))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .min_by(|a, b| a.margin.total_cmp(&b.margin))
                    .expect("both endpoints carry loops");
                let mut row = worst;
                row.seed = seed;
                rows.push(row);
            }
            Suite::Barbell => {
                let t = fixtures::random_raw_lengths(3, seed);
                let mut row = check_rose_barbell(t[0], t[1], t[2])?;
                row.seed = seed;
                rows.push(row);
            }
            Suite::Collapse => {
                let (g, _) = graph::theta(&[1.0; 4])?;
                let l = fixtures::random_unit_lengths(&g, seed)?;
                let shortest = g
                    .pairs()
                    .min_by(|a, b| l.pair(*a).total_cmp(&l.pair(*b)))
                    .expect("theta has pairs");
                let (collapsed, _) = collapse_edge(&g, &l, shortest)?;
                // Rank ≤ 1 subgraphs satisfy the chain as the degenerate
                // equality 0 ≤ 0 ≤ 0; fold the minimum margin over the
                // informative subgraphs (falling back to a degenerate row
                // only if nothing else exists) so the reported row
                // reflects the substance of the claim.
                let mut worst: Option<BoundReport> = None;
                let mut degenerate: Option<BoundReport> = None;
                for sel in proper_subgraphs(&collapsed) {
                    // The collapsed edge is globally shortest, so the
                    // minimality hypothesis holds for every subgraph.
                    let row = check_collapse_inequality(&g, &l, shortest, &sel)?
                        .expect("globally shortest edge satisfies minimality");
                    let slot = if row.satisfied && row.lhs == 0.0 && row.rhs == 0.0 {
                        &mut degenerate
                    } else {
                        &mut worst
                    };
                    if slot.as_ref().is_none_or(|w| row.margin < w.margin) {
                        *slot = Some(row);
                    }
                }
                let mut row =
                    worst.or(degenerate).expect("a collapsed theta has proper subgraphs");
                row.seed = seed;
                rows.push(row);
            }
            Suite::Assembly => {
                let mut rng = fixtures::rng(seed);
                let c = rng.gen_range(3.0..=6.0);
                let u = rng.gen_range(0.5..=1.0);
                let m = 3.0 * libm::exp(-c / 2.0) * u;
                let b = c * rng.gen_range(0.125..=0.25);
                let (g, l) = calibrated_barbell_with_loop(m, b, c)?;
                let outcome =
                    check_final_assembly(&g, &l, PairId(3), PairId(0), PairId(2))?;
                let mut main = outcome.main;
                main.seed = seed;
                rows.push(main);
                let mut trigger = outcome
                    .trigger
                    .expect("fixture construction keeps m below the trigger threshold");
                trigger.seed = seed;
                rows.push(trigger);
            }
            Suite::RoseFloor => {
                let petals = [3, 4, 5, 6, 30][(index % 5) as usize];
                let (g, _) = graph::rose(&alloc::vec![1.0; petals])?;
                let l = fixtures::random_unit_lengths(&g, seed)?;
                let mut row = check_rose_floor(&l)?;
                row.seed = seed;
                rows.push(row);
            }
        }
    }
    if suite == Suite::Barbell {
        for (i, c) in floor_grid().enumerate() {
            let mut row = check_barbell_floor(c)?;
            row.seed = i as u64;
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Both (γ1, γ2) incidence choices for a bridge of a double rose: every
/// loop at the origin paired with every loop at the terminus.
fn candidate_flank_pairs(
    g: &Graph,
    bridge: PairId,
) -> impl Iterator<Item = (PairId, PairId)> + '_ {
    let origin = g.origin(bridge.forward());
    let terminus = g.terminus(bridge.forward());
    let at = move |v: usize| {
        g.pairs()
            .filter(move |&p| g.is_loop(p) && g.origin(p.forward()) == v)
    };
    at(origin).flat_map(move |g1| at(terminus).map(move |g2| (g1, g2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{sample_seed, DEFAULT_SEED};
    use crate::graph::{barbell, rose, theta};
    use crate::spectral::{f_value, normalize_unit};
    use approx::assert_relative_eq;

    #[test]
    fn r2_fixed_point_and_limit() {
        let l3 = libm::log(3.0);
        // e^{−log3} = 1/3 gives (2/3)/2 = 1/3, so R₂(log 3) = log 3.
        assert_relative_eq!(r2_curve(l3), l3, max_relative = 1e-14);
        let far = r2_curve(40.0);
        assert!(far > 0.0 && far < 1e-16);
        assert!(r2_curve(-1.0).is_nan());
    }

    #[test]
    fn r2_parametrizes_the_unit_locus() {
        for x in [0.5, 1.0, 2.0, 5.0] {
            let y = r2_curve(x);
            let (g, l) = rose(&[x, y]).unwrap();
            assert!((entropy(&g, &l).unwrap() - 1.0).abs() < 1e-9);
            // The determinant vanishes after dividing out the trivial
            // (1 − e^{−ℓ}) orientation factors.
            let f = f_value(&g, &l).unwrap();
            let norm = (1.0 - libm::exp(-x)) * (1.0 - libm::exp(-y));
            assert!((f / norm).abs() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn rose_barbell_holds_at_the_unit_triple() {
        let report = check_rose_barbell(1.0, 1.0, 1.0).unwrap();
        assert!(report.satisfied);
        assert_relative_eq!(report.lhs, libm::log(2.0), max_relative = 1e-10);
        assert_relative_eq!(report.rhs, 0.5936227759423647, max_relative = 1e-8);
        assert_relative_eq!(report.margin, 0.09952440461758072, max_relative = 1e-6);
    }

    #[test]
    fn rose_barbell_sides_converge_as_the_bridge_vanishes() {
        let report = check_rose_barbell(1.0, 1.0, 1e-6).unwrap();
        assert!(report.satisfied);
        assert!(report.margin.abs() < 1e-3);
    }

    #[test]
    fn barbell_floor_frozen_values() {
        let at_one = check_barbell_floor(1.0).unwrap();
        assert!(at_one.satisfied);
        assert_relative_eq!(at_one.lhs, 0.8181569863681737, max_relative = 1e-8);
        let at_twenty = check_barbell_floor(20.0).unwrap();
        assert_relative_eq!(at_twenty.lhs, 0.2649934231489154, max_relative = 1e-8);
        // Near loop 3e^{−50} ≈ 6·10⁻²²: far outside eigensolver reach,
        // resolved exactly by the characteristic equation.
        let at_hundred = check_barbell_floor(100.0).unwrap();
        assert!(at_hundred.satisfied);
        assert_relative_eq!(at_hundred.lhs, 0.23004596621734316, max_relative = 1e-10);
    }

    #[test]
    fn barbell_entropy_matches_the_eigensolver() {
        assert_relative_eq!(
            barbell_entropy(libm::log(2.0), libm::log(2.0), libm::log(2.0)).unwrap(),
            1.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            barbell_entropy(1.0, 1.0, 1.0).unwrap(),
            libm::log(2.0),
            max_relative = 1e-13
        );
        for s in 0..8 {
            let t = fixtures::random_raw_lengths(3, sample_seed(DEFAULT_SEED, 90 + s));
            let (g, l) = barbell(t[0], t[1], t[2]).unwrap();
            assert_relative_eq!(
                barbell_entropy(t[0], t[1], t[2]).unwrap(),
                entropy(&g, &l).unwrap(),
                max_relative = 1e-9
            );
        }
        assert!(matches!(
            barbell_entropy(1.0, -2.0, 1.0),
            Err(Error::NonPositiveLength { pair: 1, .. })
        ));
    }

    #[test]
    fn rose_estimate_uniform_and_graded() {
        // Uniform rose: all petals carry mass 1/3, so lhs = 5/3 and
        // rhs = 20/3 for every ordered pair.
        let l5 = libm::log(5.0);
        let l = LengthFunction::new(alloc::vec![l5, l5, l5]).unwrap();
        let report = check_rose_estimate(&l, PairId(0), PairId(1)).unwrap();
        assert!(report.satisfied);
        assert_relative_eq!(report.lhs, 5.0 / 3.0, max_relative = 1e-9);
        assert_relative_eq!(report.rhs, 20.0 / 3.0, max_relative = 1e-9);
        assert_relative_eq!(report.margin, 5.0, max_relative = 1e-9);

        // Graded rose: every ordered pair satisfied.
        let (g, raw) = rose(&[1.0, 2.0, 3.0]).unwrap();
        let unit = normalize_unit(&g, &raw).unwrap();
        for i in 0..3u32 {
            for k in 0..3u32 {
                if i != k {
                    let r = check_rose_estimate(&unit, PairId(i), PairId(k)).unwrap();
                    assert!(r.satisfied, "pair ({i}, {k}) margin {}", r.margin);
                }
            }
        }
    }

    #[test]
    fn rose_estimate_worst_pair_is_longest_vs_shortest() {
        for s in 0..3 {
            let (g, _) = rose(&[1.0; 4]).unwrap();
            let l = fixtures::random_unit_lengths(&g, sample_seed(DEFAULT_SEED, 40 + s)).unwrap();
            let mut worst = (f64::INFINITY, 0u32, 0u32);
            for i in 0..4u32 {
                for k in 0..4u32 {
                    if i != k {
                        let r = check_rose_estimate(&l, PairId(i), PairId(k)).unwrap();
                        if r.margin < worst.0 {
                            worst = (r.margin, i, k);
                        }
                    }
                }
            }
            let values = l.values();
            let longest =
                (0..4).max_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap() as u32;
            let shortest =
                (0..4).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap() as u32;
            assert_eq!((worst.1, worst.2), (longest, shortest));
        }
    }

    #[test]
    fn rose_estimate_rejects_bad_inputs() {
        let l5 = libm::log(5.0);
        let l = LengthFunction::new(alloc::vec![l5, l5, l5]).unwrap();
        assert_eq!(
            check_rose_estimate(&l, PairId(1), PairId(1)).unwrap_err(),
            Error::IdenticalEdges { pair: 1 }
        );
        assert_eq!(
            check_rose_estimate(&l, PairId(0), PairId(3)).unwrap_err(),
            Error::EdgeOutOfRange { index: 3, limit: 3 }
        );
        let ones = LengthFunction::new(alloc::vec![1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(
            check_rose_estimate(&ones, PairId(0), PairId(1)),
            Err(Error::NotUnitEntropy { .. })
        ));
    }

    #[test]
    fn nonloop_estimate_on_the_uniform_unit_barbell() {
        // At ℓ = log2·(1,1,1) the barbell is exactly unit and all three
        // pair masses are 1/3: lhs = 2·(1/3) = 2/3 and
        // rhs = 2·4·(2/3) = 16/3.
        let l2 = libm::log(2.0);
        let (g, l) = barbell(l2, l2, l2).unwrap();
        let report =
            check_nonloop_estimate(&g, &l, PairId(2), PairId(0), PairId(1)).unwrap();
        assert!(report.satisfied);
        assert_relative_eq!(report.lhs, 2.0 / 3.0, max_relative = 1e-9);
        assert_relative_eq!(report.rhs, 16.0 / 3.0, max_relative = 1e-9);
        assert_relative_eq!(report.margin, 14.0 / 3.0, max_relative = 1e-9);
    }

    #[test]
    fn nonloop_estimate_rejects_bad_incidence() {
        let l2 = libm::log(2.0);
        let (g, l) = barbell(l2, l2, l2).unwrap();
        assert_eq!(
            check_nonloop_estimate(&g, &l, PairId(0), PairId(1), PairId(2)).unwrap_err(),
            Error::ExpectedNonLoop { pair: 0 }
        );
        assert_eq!(
            check_nonloop_estimate(&g, &l, PairId(2), PairId(2), PairId(1)).unwrap_err(),
            Error::ExpectedLoop { pair: 2 }
        );
        assert_eq!(
            check_nonloop_estimate(&g, &l, PairId(2), PairId(1), PairId(0)).unwrap_err(),
            Error::LoopNotAtVertex { pair: 1, vertex: 0 }
        );
    }

    #[test]
    fn rose_floor_constants() {
        assert_eq!(
            rose_floor(2).unwrap_err(),
            Error::TooFewLoops { loops: 2, minimum: 3 }
        );
        assert_eq!(rose_floor(3).unwrap(), 0.2);
        assert_eq!(rose_floor(28).unwrap(), 0.2);
        let at_29 = rose_floor(29).unwrap();
        assert_relative_eq!(at_29, 1.0 - 4.0 / libm::log(55.0), max_relative = 1e-15);
        assert_relative_eq!(at_29, 0.0018299, max_relative = 1e-3);
        assert_relative_eq!(rose_floor(1_000_000).unwrap(), 0.724, max_relative = 1e-3);
        assert!(rose_floor(1000).unwrap() > rose_floor(100).unwrap());
    }

    #[test]
    fn rose_floor_check_on_exact_roses() {
        let l5 = libm::log(5.0);
        let uniform3 = LengthFunction::new(alloc::vec![l5, l5, l5]).unwrap();
        let r = check_rose_floor(&uniform3).unwrap();
        assert!(r.satisfied);
        assert_relative_eq!(
            r.lhs,
            libm::log(3.0) / libm::log(5.0),
            max_relative = 1e-9
        );
        assert_eq!(r.rhs, 0.2);

        let l59 = libm::log(59.0);
        let uniform30 = LengthFunction::new(alloc::vec![l59; 30]).unwrap();
        let r30 = check_rose_floor(&uniform30).unwrap();
        assert!(r30.satisfied);
        assert_relative_eq!(
            r30.lhs,
            libm::log(57.0) / libm::log(59.0),
            max_relative = 1e-9
        );
        assert_relative_eq!(
            r30.rhs,
            1.0 - 4.0 / libm::log(57.0),
            max_relative = 1e-15
        );
    }

    #[test]
    fn collapse_chain_exact_oracle() {
        // Uniform log-3 four-edge theta: collapsing any edge gives the
        // uniform log-3 three-petal rose. Keeping two of its petals is
        // the *unit* two-petal rose (h = 1), while the pre-image is the
        // uniform log-3 three-edge theta (h = log2/log3). The chain is
        // log2/log3 ≤ 1 ≤ 2·log2/log3 with margin 2·log2/log3 − 1.
        let (g, l) = crate::fixtures::conjecture_graph();
        let sel = SubgraphSelection::from_pairs([PairId(0), PairId(1)]);
        let report = check_collapse_inequality(&g, &l, PairId(0), &sel)
            .unwrap()
            .expect("uniform lengths satisfy minimality");
        assert!(report.satisfied);
        let h = libm::log(2.0) / libm::log(3.0);
        assert_relative_eq!(report.lhs, h, max_relative = 1e-9);
        assert_relative_eq!(report.rhs, 1.0, max_relative = 1e-9);
        assert_relative_eq!(report.margin, 2.0 * h - 1.0, max_relative = 1e-7);
    }

    #[test]
    fn collapse_chain_skips_when_minimality_fails() {
        let (g, raw) = theta(&[2.0, 1.0, 1.0, 1.0]).unwrap();
        let l = normalize_unit(&g, &raw).unwrap();
        let sel = SubgraphSelection::from_pairs([PairId(0), PairId(1)]);
        assert!(check_collapse_inequality(&g, &l, PairId(0), &sel)
            .unwrap()
            .is_none());
    }

    #[test]
    fn collapse_chain_handles_the_degenerate_barbell_case() {
        // Collapse the (minimal) bridge of a barbell; keep one petal.
        // Both H and H′ have rank 1, so the chain is 0 ≤ 0 ≤ 0.
        let (g, l) = barbell(1.0, 1.0, 0.5).unwrap();
        let sel = SubgraphSelection::singleton(PairId(0));
        let report = check_collapse_inequality(&g, &l, PairId(2), &sel)
            .unwrap()
            .expect("bridge is minimal");
        assert!(report.satisfied);
        assert_eq!(report.lhs, 0.0);
        assert_eq!(report.rhs, 0.0);
    }

    #[test]
    fn collapse_chain_rejects_bad_inputs() {
        let (g, l) = barbell(1.0, 1.0, 0.5).unwrap();
        assert_eq!(
            check_collapse_inequality(&g, &l, PairId(0), &SubgraphSelection::singleton(PairId(0)))
                .unwrap_err(),
            Error::CollapseLoop { pair: 0 }
        );
        let all = SubgraphSelection::from_pairs([PairId(0), PairId(1)]);
        assert_eq!(
            check_collapse_inequality(&g, &l, PairId(2), &all).unwrap_err(),
            Error::NotProperSelection { selected: 2, pairs: 2 }
        );
    }

    #[test]
    fn assembly_frozen_example() {
        // c = 4, m = 3e^{−2} (the trigger threshold itself), b = c/4:
        // the calibrated loop and both reports have frozen values, and
        // the main bound's right side is exactly 1 − 2/3 = 1/3.
        let c = 4.0;
        let m = 3.0 * libm::exp(-2.0);
        let (g, l) = calibrated_barbell_with_loop(m, 1.0, c).unwrap();
        assert!((l.values()[1] - 2.197951280441391).abs() < 1e-8);
        let outcome = check_final_assembly(&g, &l, PairId(3), PairId(0), PairId(2)).unwrap();
        assert!(outcome.main.satisfied);
        assert_relative_eq!(outcome.main.lhs, 0.9993390148678589, max_relative = 1e-8);
        assert_relative_eq!(outcome.main.rhs, 1.0 / 3.0, max_relative = 1e-12);
        let trigger = outcome.trigger.expect("m equals the threshold");
        assert!(trigger.satisfied);
        assert_relative_eq!(trigger.lhs, 0.44686004276605373, max_relative = 1e-8);
    }

    #[test]
    fn assembly_rejects_long_loops_and_off_unit_input() {
        let c = 4.0;
        let m = 3.0 * libm::exp(-2.0);
        let (g, l) = calibrated_barbell_with_loop(m, 1.0, c).unwrap();
        // Loop longer than c/4 = 1.
        let mut values = l.values().to_vec();
        values[2] = 1.5;
        let too_long = LengthFunction::new(values).unwrap();
        assert!(matches!(
            check_final_assembly(&g, &too_long, PairId(3), PairId(0), PairId(2)),
            Err(Error::LoopTooLong { pair: 2, .. })
        ));
        // Valid incidence but off the unit locus.
        let (g2, raw) = graph::double_rose(&[0.3, 1.0], &[0.5], 4.0).unwrap();
        assert!(matches!(
            check_final_assembly(&g2, &raw, PairId(3), PairId(0), PairId(2)),
            Err(Error::NotUnitEntropy { .. })
        ));
    }

    #[test]
    fn suites_are_satisfied_and_reproducible() {
        for (suite, n, expected_rows) in [
            (Suite::Rose, 6, 6),
            (Suite::NonLoop, 6, 6),
            (Suite::Barbell, 4, 104),
            (Suite::Collapse, 5, 5),
            (Suite::Assembly, 4, 8),
            (Suite::RoseFloor, 5, 5),
        ] {
            let rows = run_suite(suite, n, DEFAULT_SEED).unwrap();
            assert_eq!(rows.len(), expected_rows, "{suite:?}");
            assert!(
                rows.iter().all(|r| r.satisfied),
                "{suite:?}: {:?}",
                rows.iter().find(|r| !r.satisfied)
            );
            let again = run_suite(suite, n, DEFAULT_SEED).unwrap();
            for (a, b) in rows.iter().zip(&again) {
                assert_eq!(a.name, b.name);
                assert_eq!(a.seed, b.seed);
                assert_eq!(a.lhs.to_bits(), b.lhs.to_bits(), "{suite:?}");
                assert_eq!(a.margin.to_bits(), b.margin.to_bits());
            }
        }
    }

    #[test]
    fn barbell_suite_grid_minimum_is_frozen() {
        let rows = run_suite(Suite::Barbell, 0, DEFAULT_SEED).unwrap();
        assert_eq!(rows.len(), 100);
        // The family decreases towards its 2/9 asymptote over the grid's
        // upper decades, so the minimum sits at the last point, c = 100.
        let min = rows
            .iter()
            .map(|r| r.lhs)
            .min_by(f64::total_cmp)
            .unwrap();
        assert_relative_eq!(min, 0.23004596621734316, max_relative = 1e-9);
        assert_eq!(rows.last().unwrap().lhs, min);
        assert!(rows.iter().all(|r| r.name == "barbell_floor" && r.satisfied));
    }
}
