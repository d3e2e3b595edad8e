//! Error type shared by every module of the crate.

use core::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong when building graphs or running the
/// numerical routines.
///
/// Variants carry enough data to reconstruct what was rejected; the
/// [`fmt::Display`] impl renders a one-line human-readable message.
#[derive(Clone, Debug, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// A graph was constructed with no edges at all.
    EmptyEdgeList,
    /// An edge endpoint referred to a vertex id outside `0..vertex_count`.
    DanglingVertex {
        /// Index of the offending edge pair in the input list.
        pair: usize,
        /// The vertex id that does not exist.
        vertex: usize,
        /// Number of vertices the graph was declared with.
        vertex_count: usize,
    },
    /// A length function contained a value that is not strictly positive
    /// and finite.
    NonPositiveLength {
        /// Index of the offending edge pair.
        pair: usize,
        /// The rejected value.
        value: f64,
    },
    /// A length function has a different number of entries than the graph
    /// has edge pairs.
    LengthCountMismatch {
        /// Entries in the length function.
        lengths: usize,
        /// Edge pairs in the graph.
        pairs: usize,
    },
    /// An edge or pair id was out of range for the graph at hand.
    EdgeOutOfRange {
        /// The offending index (directed edge or pair, per context).
        index: usize,
        /// Number of valid indices.
        limit: usize,
    },
    /// `collapse_edge` was asked to collapse a loop, which is not a
    /// homotopy equivalence.
    CollapseLoop {
        /// The loop's pair index.
        pair: usize,
    },
    /// `subdivide_edge` needs at least two parts.
    TooFewParts {
        /// The requested number of parts.
        parts: usize,
    },
    /// An edge-deletion selection did not describe a proper, non-empty
    /// subgraph.
    NotProperSelection {
        /// Pairs selected.
        selected: usize,
        /// Pairs in the graph.
        pairs: usize,
    },
    /// A circuit enumeration exceeded its visit cap before finishing.
    CapExceeded {
        /// The configured cap on visited partial paths.
        cap: u64,
    },
    /// The graph supports no circuit at all (it is a forest).
    NoCircuit,
    /// An operation required a connected graph.
    Disconnected {
        /// Number of connected components found.
        components: usize,
    },
    /// An operation required a minimum first Betti number (for a component
    /// or for the whole graph, per context) that the input does not meet.
    RankTooLow {
        /// The rank that was found.
        rank: usize,
        /// The smallest rank the operation accepts.
        needs: usize,
    },
    /// Perron data was requested for a graph whose non-backtracking
    /// transition digraph is not strongly connected (e.g. the graph has a
    /// valence-one vertex), so no positive eigenvector exists.
    NotStronglyConnected,
    /// Perron data was requested at a length function that is not on the
    /// unit-entropy locus.
    NotUnitEntropy {
        /// Spectral radius of the weighted transition matrix at `ℓ`.
        spectral_radius: f64,
    },
    /// A rescaling to unit entropy was requested for a graph of zero
    /// entropy (all components of rank at most one).
    ZeroEntropy,
    /// An exhaustive subgraph sweep was requested on a graph with too many
    /// edge pairs.
    TooManyPairs {
        /// Pairs in the graph.
        pairs: usize,
        /// Largest supported count.
        limit: usize,
    },
    /// The integral horizon doubled past its limit without the scaling
    /// factor settling below the requested tail tolerance.
    TailNotResolved {
        /// Last horizon tried.
        horizon: f64,
        /// Increment observed at that horizon.
        increment: f64,
    },
    /// Adaptive quadrature hit its subdivision limit before reaching the
    /// requested tolerance.
    QuadratureStalled {
        /// Interval endpoint where refinement stalled.
        at: f64,
        /// Error estimate of the offending panel.
        estimate: f64,
    },
    /// A rose-floor check needs petals of at least this many loops.
    TooFewLoops {
        /// Loops requested.
        loops: usize,
        /// Minimum supported.
        minimum: usize,
    },
    /// An iterative solver ran out of iterations before converging.
    IterationLimit {
        /// The iteration cap that was exhausted.
        limit: u64,
    },
    /// A blow-up time parameter was negative (or NaN).
    NegativeTime {
        /// The rejected value.
        value: f64,
    },
    /// A sampled trace needs at least two sample points.
    TooFewSamples {
        /// Samples requested.
        samples: usize,
    },
    /// Two distinct edge pairs were required but the same one was passed
    /// twice.
    IdenticalEdges {
        /// The repeated pair index.
        pair: usize,
    },
    /// An edge pair was required to be a loop (both endpoints equal) but
    /// is not.
    ExpectedLoop {
        /// The offending pair index.
        pair: usize,
    },
    /// An edge pair was required to be a non-loop but is a loop.
    ExpectedNonLoop {
        /// The offending pair index.
        pair: usize,
    },
    /// A loop was required to be based at a specific vertex but is based
    /// elsewhere.
    LoopNotAtVertex {
        /// The loop's pair index.
        pair: usize,
        /// The vertex the loop was required to be based at.
        vertex: usize,
    },
    /// A loop exceeded the length bound a checker's hypothesis places on
    /// it (relative to its bridge edge).
    LoopTooLong {
        /// The loop's pair index.
        pair: usize,
        /// The loop's length.
        length: f64,
        /// Largest admissible length.
        limit: f64,
    },
    /// A graph catalog mixed first Betti numbers where a single common
    /// rank was required.
    MixedRanks {
        /// Rank of the first catalog entry.
        expected: usize,
        /// A differing rank found later in the catalog.
        found: usize,
    },
    /// A graph catalog was empty.
    EmptyCatalog,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyEdgeList => write!(f, "graph has no edges"),
            Error::DanglingVertex { pair, vertex, vertex_count } => write!(
                f,
                "edge pair {pair} references vertex {vertex}, but only {vertex_count} vertices exist"
            ),
            Error::NonPositiveLength { pair, value } => write!(
                f,
                "edge pair {pair} has length {value}, which is not strictly positive and finite"
            ),
            Error::LengthCountMismatch { lengths, pairs } => write!(
                f,
                "length function has {lengths} entries but the graph has {pairs} edge pairs"
            ),
            Error::EdgeOutOfRange { index, limit } => {
                write!(f, "edge index {index} out of range (limit {limit})")
            }
            Error::CollapseLoop { pair } => {
                write!(f, "cannot collapse pair {pair}: it is a loop")
            }
            Error::TooFewParts { parts } => {
                write!(f, "subdivision needs at least 2 parts, got {parts}")
            }
            Error::NotProperSelection { selected, pairs } => write!(
                f,
                "selection of {selected} of {pairs} pairs is not a proper non-empty subgraph"
            ),
            Error::CapExceeded { cap } => {
                write!(f, "circuit enumeration exceeded the visit cap of {cap}")
            }
            Error::NoCircuit => write!(f, "graph supports no circuit"),
            Error::Disconnected { components } => {
                write!(f, "graph must be connected, found {components} components")
            }
            Error::RankTooLow { rank, needs } => {
                write!(f, "first Betti number must be at least {needs}, found {rank}")
            }
            Error::NotStronglyConnected => write!(
                f,
                "non-backtracking transition digraph is not strongly connected"
            ),
            Error::NotUnitEntropy { spectral_radius } => write!(
                f,
                "length function is not on the unit-entropy locus (spectral radius {spectral_radius})"
            ),
            Error::ZeroEntropy => {
                write!(f, "graph has zero entropy; no unit-entropy rescaling exists")
            }
            Error::TooManyPairs { pairs, limit } => write!(
                f,
                "exhaustive subgraph sweep supports at most {limit} edge pairs, got {pairs}"
            ),
            Error::TailNotResolved { horizon, increment } => write!(
                f,
                "scaling factor tail still moving by {increment} at horizon {horizon}"
            ),
            Error::QuadratureStalled { at, estimate } => write!(
                f,
                "adaptive quadrature stalled near {at} with panel estimate {estimate}"
            ),
            Error::TooFewLoops { loops, minimum } => {
                write!(f, "rose floor needs at least {minimum} loops, got {loops}")
            }
            Error::IterationLimit { limit } => {
                write!(f, "iteration limit of {limit} exhausted before convergence")
            }
            Error::NegativeTime { value } => {
                write!(f, "blow-up time must be non-negative, got {value}")
            }
            Error::TooFewSamples { samples } => {
                write!(f, "a trace needs at least 2 samples, got {samples}")
            }
            Error::IdenticalEdges { pair } => {
                write!(f, "two distinct edge pairs are required, got pair {pair} twice")
            }
            Error::ExpectedLoop { pair } => {
                write!(f, "edge pair {pair} must be a loop")
            }
            Error::ExpectedNonLoop { pair } => {
                write!(f, "edge pair {pair} must not be a loop")
            }
            Error::LoopNotAtVertex { pair, vertex } => {
                write!(f, "loop {pair} must be based at vertex {vertex}")
            }
            Error::LoopTooLong { pair, length, limit } => write!(
                f,
                "loop {pair} has length {length}, above the hypothesis limit {limit}"
            ),
            Error::MixedRanks { expected, found } => write!(
                f,
                "catalog graphs must share one rank, found both {expected} and {found}"
            ),
            Error::EmptyCatalog => write!(f, "graph catalog is empty"),
        }
    }
}

impl core::error::Error for Error {}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn display_mentions_the_data() {
        let e = Error::DanglingVertex { pair: 3, vertex: 7, vertex_count: 4 };
        let msg = e.to_string();
        assert!(msg.contains('3') && msg.contains('7') && msg.contains('4'));

        let e = Error::NonPositiveLength { pair: 0, value: -1.5 };
        assert!(e.to_string().contains("-1.5"));

        let e = Error::TooManyPairs { pairs: 25, limit: 20 };
        assert!(e.to_string().contains("25"));
    }
}
