//! Linear-time blow-up of an edge and the two routes to subgraph entropy.
//!
//! Fix a unit-entropy metric graph `(G, ℓ)` and an edge `e`.  The
//! *linear-time blow-up* of `ℓ` along `e` is the path of length functions
//!
//! ```text
//! ψ_t(e)  = ℓ(e) + t,
//! ψ_t(e′) = j(t)·ℓ(e′)   for e′ ≠ e,
//! ```
//!
//! where the *scaling factor* `j(t)` is the unique scalar keeping
//! `h(G, ψ_t) = 1`: the blown-up edge grows linearly while every other
//! edge shrinks just enough to hold the entropy at one.  `j` is smooth and
//! strictly decreasing with `j(0) = 1`, and its limit `j_∞` is precisely
//! the entropy of the subgraph `G − e` with the *original* lengths.
//!
//! Two consequences are implemented and played against each other here:
//!
//! 1. **Derivative formula.** Writing `μ_t` for the equilibrium measure at
//!    `ψ_t`,
//!
//!    ```text
//!    j′(t) = −μ_t(e) / Σ_{e′ ≠ e} ℓ(e′)·μ_t(e′),
//!    ```
//!
//!    with `ℓ` the original lengths in the denominator.  Numerator and
//!    denominator use matching conventions (here: the mass of both
//!    orientations), so the ratio is convention-free.
//!
//! 2. **Integral identity.** `h(G−e, ℓ|_{G−e}) = 1 − ∫₀^∞ |j′(t)| dt`.
//!
//! [`subgraph_entropy_integral`] evaluates route 2 by adaptive quadrature
//! of the formula in route 1 with an explicit horizon-doubling tail
//! criterion; [`subgraph_entropy_direct`] computes the same number by
//! deleting the edge and root-finding the entropy.  Their agreement is a
//! genuine end-to-end check of both formulas, since its two sides share no
//! code beyond the spectral radius.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{delete_edges, Graph, LengthFunction, PairId, SubgraphSelection};
use crate::linalg;
use crate::quadrature::{self, GaussLegendre};
use crate::spectral;

/// Tolerances and horizons for the blow-up computations.
#[derive(Clone, Debug)]
pub struct BlowupConfig {
    /// Absolute tolerance of the bracketed root-finding for `j(t)`.
    pub root_tol: f64,
    /// Absolute tolerance of the adaptive quadrature for `∫ |j′|`.
    pub quad_tol: f64,
    /// The horizon stops doubling once `|j(T) − j(2T)|` drops below this.
    pub tail_tol: f64,
    /// First horizon tried.
    pub start_horizon: f64,
    /// Hard cap on the horizon; exceeded means the configuration is
    /// near-degenerate and the integral is refused.
    pub max_horizon: f64,
    /// Order of the per-panel Gauss–Legendre rule.
    pub quad_order: usize,
}

impl Default for BlowupConfig {
    fn default() -> BlowupConfig {
        BlowupConfig {
            root_tol: 1e-12,
            quad_tol: 1e-8,
            tail_tol: 1e-8,
            start_horizon: 25.0,
            max_horizon: 200.0,
            quad_order: quadrature::DEFAULT_ORDER,
        }
    }
}

/// Result of [`subgraph_entropy_integral`].
#[derive(Clone, Debug)]
pub struct IntegralOutcome {
    /// `1 − ∫₀^horizon |j′(t)| dt`, the subgraph entropy estimate.
    pub value: f64,
    /// Horizon the integral was actually taken to.
    pub horizon: f64,
    /// The increment `|j(T) − j(2T)|` observed at the accepted doubling —
    /// an empirical bound on what truncating the tail discards.
    pub tail_bound: f64,
    /// Accumulated panel discrepancies of the adaptive quadrature.
    pub quadrature_error: f64,
}

/// One row of a [`BlowupTrace`].
#[derive(Clone, Debug)]
pub struct BlowupSample {
    /// Blow-up time.
    pub t: f64,
    /// Scaling factor `j(t)`.
    pub j: f64,
    /// Derivative from the equilibrium-measure formula (always negative).
    pub j_prime: f64,
    /// Equilibrium mass `μ_t(e)` of the blown-up edge (both orientations).
    pub mu_e: f64,
    /// Denominator `Σ_{e′≠e} ℓ(e′)·μ_t(e′)` (original lengths, both
    /// orientations).
    pub denom: f64,
}

/// A sampled linear-time blow-up, ready for CSV export or plotting.
#[derive(Clone, Debug)]
pub struct BlowupTrace {
    /// The blown-up edge.
    pub edge: PairId,
    /// Samples at uniformly spaced times `0 = t₀ < … < t_{n−1} = horizon`.
    pub samples: Vec<BlowupSample>,
    /// Largest sampled time.
    pub horizon: f64,
    /// `|j(horizon) − j(2·horizon)|`, how far `j` still moves past the
    /// trace window.
    pub tail_bound: f64,
}

/// Validates the standing hypotheses of the blow-up machinery:
/// `e` exists, `t ≥ 0`, `G` connected of rank ≥ 3, and `ℓ` on the
/// unit-entropy locus.
fn validate(g: &Graph, l: &LengthFunction, e: PairId, t: f64) -> Result<()> {
    l.check_fits(g)?;
    if e.index() >= g.pair_count() {
        return Err(Error::EdgeOutOfRange { index: e.index(), limit: g.pair_count() });
    }
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeTime { value: t });
    }
    let components = g.component_count();
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    if g.rank() < 3 {
        // Rank 2 would allow j_∞ = 0 (deleting e can kill all circuits);
        // the derivative/integral identities need rank ≥ 3.
        return Err(Error::RankTooLow { rank: g.rank(), needs: 3 });
    }
    let rho = spectral::spectral_radius(&spectral::weighted_matrix(g, l)?);
    if libm::fabs(rho - 1.0) > spectral::unit_tolerance(l) {
        return Err(Error::NotUnitEntropy { spectral_radius: rho });
    }
    Ok(())
}

/// The scaling factor `j(t)`: the unique scalar such that scaling every
/// edge except `e` by it — while `e` has length `ℓ(e) + t` — keeps the
/// entropy at 1.  Found by bracketed root-finding on the spectral radius
/// (absolute tolerance `root_tol`).
///
/// # Errors
///
/// [`Error::RankTooLow`] (rank must be ≥ 3), [`Error::Disconnected`],
/// [`Error::NotUnitEntropy`], [`Error::NegativeTime`], or
/// [`Error::EdgeOutOfRange`] on bad inputs.
pub fn scaling_factor(
    g: &Graph,
    l: &LengthFunction,
    e: PairId,
    t: f64,
    config: &BlowupConfig,
) -> Result<f64> {
    validate(g, l, e, t)?;
    scaling_factor_unchecked(g, l, e, t, config.root_tol)
}

/// Root-finding core of [`scaling_factor`]; hypotheses already checked.
fn scaling_factor_unchecked(
    g: &Graph,
    l: &LengthFunction,
    e: PairId,
    t: f64,
    root_tol: f64,
) -> Result<f64> {
    let blown = l.pair(e) + t;
    // log ρ(A at ψ(j)) is strictly decreasing in j; j* ∈ (0, 1] up to the
    // unit tolerance of ℓ, so [walk-down, 1.001] brackets the root.
    let log_rho = |j: f64| -> f64 {
        let values: Vec<f64> = g
            .pairs()
            .map(|p| if p == e { blown } else { j * l.pair(p) })
            .collect();
        let m = spectral::weighted_matrix(g, &LengthFunction::new(values).unwrap())
            .expect("lengths fit by construction");
        libm::log(spectral::spectral_radius(&m))
    };
    let mut hi = 1.001;
    let mut fhi = log_rho(hi);
    while fhi > 0.0 {
        // Only possible for ℓ just below the locus; widen upward.
        hi *= 1.01;
        fhi = log_rho(hi);
        if hi > 2.0 {
            return Err(Error::IterationLimit { limit: 100 });
        }
    }
    let mut lo = 0.9 * hi;
    let mut flo = log_rho(lo);
    while flo <= 0.0 {
        hi = lo;
        fhi = flo;
        lo *= 0.7;
        if lo < 1e-12 {
            return Err(Error::IterationLimit { limit: 100 });
        }
        flo = log_rho(lo);
    }
    linalg::illinois_root(log_rho, lo, flo, hi, fhi, root_tol)
}

/// The blown-up length function `ψ_t`: `ℓ(e) + t` on `e` and
/// `j(t)·ℓ(e′)` elsewhere.  Unit entropy by construction.
///
/// ```
/// use graphent_core::blowup::{psi_t, BlowupConfig};
/// use graphent_core::graph::{rose, PairId};
/// use graphent_core::spectral::entropy;
///
/// let ln5 = 5.0_f64.ln();
/// let (g, l) = rose(&[ln5, ln5, ln5]).unwrap();
/// let config = BlowupConfig::default();
/// let blown = psi_t(&g, &l, PairId(0), 2.0, &config).unwrap();
/// assert!((blown.pair(PairId(0)) - (ln5 + 2.0)).abs() < 1e-12);
/// assert!((entropy(&g, &blown).unwrap() - 1.0).abs() < 1e-9);
/// ```
pub fn psi_t(
    g: &Graph,
    l: &LengthFunction,
    e: PairId,
    t: f64,
    config: &BlowupConfig,
) -> Result<LengthFunction> {
    let j = scaling_factor(g, l, e, t, config)?;
    psi_from_j(g, l, e, t, j)
}

fn psi_from_j(g: &Graph, l: &LengthFunction, e: PairId, t: f64, j: f64) -> Result<LengthFunction> {
    let values: Vec<f64> = g
        .pairs()
        .map(|p| if p == e { l.pair(p) + t } else { j * l.pair(p) })
        .collect();
    LengthFunction::new(values)
}

/// The derivative `j′(t) = −μ_t(e) / Σ_{e′≠e} ℓ(e′)·μ_t(e′)`, evaluated
/// through the equilibrium measure at `ψ_t` (not by differencing `j`).
///
/// Always strictly negative.  The denominator uses the *original* unit
/// lengths `ℓ`; both numerator and denominator take an edge's mass to be
/// the sum over its two orientations, and the common convention cancels
/// in the ratio.
///
/// # Errors
///
/// As [`scaling_factor`], plus [`Error::NotStronglyConnected`] when the
/// equilibrium measure does not exist (e.g. valence-1 vertices).
pub fn j_prime(
    g: &Graph,
    l: &LengthFunction,
    e: PairId,
    t: f64,
    config: &BlowupConfig,
) -> Result<f64> {
    validate(g, l, e, t)?;
    let j = scaling_factor_unchecked(g, l, e, t, config.root_tol)?;
    let (jp, _, _) = j_prime_parts(g, l, e, t, j)?;
    Ok(jp)
}

/// Shared core: `(j′, μ_t(e), denom)` given an already-computed `j`.
fn j_prime_parts(
    g: &Graph,
    l: &LengthFunction,
    e: PairId,
    t: f64,
    j: f64,
) -> Result<(f64, f64, f64)> {
    let psi = psi_from_j(g, l, e, t, j)?;
    let mu = spectral::equilibrium_measure(g, &psi)?;
    let mu_e = mu.pair_mass(e);
    let mut denom = 0.0;
    for p in g.pairs() {
        if p != e {
            denom += l.pair(p) * mu.pair_mass(p);
        }
    }
    Ok((-mu_e / denom, mu_e, denom))
}

/// Subgraph entropy the spectral way: delete `e` and compute
/// `h(G − e, ℓ|_{G−e})` (max over components; `0` if every surviving
/// component has rank ≤ 1).
///
/// No unit-entropy or rank hypotheses — any graph with at least two edges
/// works.
pub fn subgraph_entropy_direct(g: &Graph, l: &LengthFunction, e: PairId) -> Result<f64> {
    let (sub, sub_l) = delete_edges(g, l, &SubgraphSelection::singleton(e))?;
    spectral::entropy(&sub, &sub_l)
}

/// Subgraph entropy the blow-up way: `1 − ∫₀^T |j′(t)| dt` with the
/// derivative evaluated from the equilibrium-measure formula.
///
/// The horizon `T` starts at `config.start_horizon` and doubles until
/// `|j(T) − j(2T)| < config.tail_tol`; the integral is then taken over
/// `[0, 2T]` by adaptive Gauss–Legendre quadrature to `config.quad_tol`.
///
/// # Errors
///
/// As [`j_prime`]; additionally [`Error::TailNotResolved`] if the doubling
/// passes `config.max_horizon` without settling — the configuration is
/// then near-degenerate and the answer would be untrustworthy.
pub fn subgraph_entropy_integral(
    g: &Graph,
    l: &LengthFunction,
    e: PairId,
    config: &BlowupConfig,
) -> Result<IntegralOutcome> {
    validate(g, l, e, 0.0)?;
    let j_at = |t: f64| scaling_factor_unchecked(g, l, e, t, config.root_tol);
    let mut horizon = config.start_horizon;
    let mut j_here = j_at(horizon)?;
    let (horizon, tail_bound) = loop {
        let doubled = 2.0 * horizon;
        if doubled > config.max_horizon * (1.0 + 1e-12) {
            return Err(Error::TailNotResolved {
                horizon,
                increment: f64::INFINITY,
            });
        }
        let j_there = j_at(doubled)?;
        let increment = libm::fabs(j_here - j_there);
        if increment < config.tail_tol {
            break (doubled, increment);
        }
        if doubled >= config.max_horizon {
            return Err(Error::TailNotResolved { horizon: doubled, increment });
        }
        horizon = doubled;
        j_here = j_there;
    };
    let rule = GaussLegendre::new(config.quad_order);
    let mut failure = None;
    let mut integrand = |t: f64| match (|| -> Result<f64> {
        let j = j_at(t)?;
        let (jp, _, _) = j_prime_parts(g, l, e, t, j)?;
        Ok(libm::fabs(jp))
    })() {
        Ok(v) => v,
        Err(err) => {
            if failure.is_none() {
                failure = Some(err);
            }
            0.0
        }
    };
    let (integral, quadrature_error) =
        quadrature::integrate_adaptive(&mut integrand, 0.0, horizon, config.quad_tol, &rule)?;
    if let Some(err) = failure {
        return Err(err);
    }
    Ok(IntegralOutcome { value: 1.0 - integral, horizon, tail_bound, quadrature_error })
}

/// Samples the blow-up path at `samples ≥ 2` uniformly spaced times on
/// `[0, horizon]`, recording `j`, `j′`, and the formula's ingredients at
/// each.
///
/// The trace's `tail_bound` is `|j(horizon) − j(2·horizon)|`, a measure of
/// how much of the approach to `j_∞` the window missed.
///
/// # Errors
///
/// As [`j_prime`], plus [`Error::TooFewSamples`] and
/// [`Error::NegativeTime`] (the horizon must be positive).
pub fn blowup_trace(
    g: &Graph,
    l: &LengthFunction,
    e: PairId,
    horizon: f64,
    samples: usize,
    config: &BlowupConfig,
) -> Result<BlowupTrace> {
    if samples < 2 {
        return Err(Error::TooFewSamples { samples });
    }
    if horizon.is_nan() || horizon <= 0.0 {
        return Err(Error::NegativeTime { value: horizon });
    }
    validate(g, l, e, 0.0)?;
    let mut rows = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = horizon * i as f64 / (samples - 1) as f64;
        let j = scaling_factor_unchecked(g, l, e, t, config.root_tol)?;
        let (jp, mu_e, denom) = j_prime_parts(g, l, e, t, j)?;
        rows.push(BlowupSample { t, j, j_prime: jp, mu_e, denom });
    }
    let j_end = rows.last().expect("samples >= 2").j;
    let j_beyond = scaling_factor_unchecked(g, l, e, 2.0 * horizon, config.root_tol)?;
    Ok(BlowupTrace {
        edge: e,
        samples: rows,
        horizon,
        tail_bound: libm::fabs(j_end - j_beyond),
    })
}
