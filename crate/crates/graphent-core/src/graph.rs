//! Finite graphs with oriented edges, length functions, and the
//! combinatorial operations (deletion, collapse, subdivision) used by the
//! entropy machinery.
//!
//! A graph is stored as a set of *edge pairs*: pair `i` consists of the two
//! directed edges `2i` (its forward orientation) and `2i + 1` (its
//! reverse), so that for any directed edge `e` the reversal is `e ^ 1` and
//! the underlying pair is `e >> 1`.  Every structural routine in the crate
//! leans on this layout.
//!
//! Length functions assign a strictly positive, finite length to every
//! pair; both orientations of a pair share that length.  Loops (edges with
//! equal endpoints) are allowed and are essential — roses are the basic
//! examples throughout — but a loop still consists of two *distinct*
//! directed edges, and traversing a loop and immediately re-traversing it
//! backwards is backtracking just like on a non-loop edge.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Identifier of a *directed* edge.
///
/// Directed edges come in reversal pairs occupying adjacent indices: the
/// reversal of edge `k` is `k ^ 1`, and the unoriented pair is `k >> 1`.
///
/// ```
/// use graphent_core::graph::EdgeId;
/// let e = EdgeId(4);
/// assert_eq!(e.reverse(), EdgeId(5));
/// assert_eq!(e.reverse().reverse(), e);
/// assert_eq!(e.pair(), e.reverse().pair());
/// ```
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub u32);

impl EdgeId {
    /// The same edge traversed in the opposite direction.
    #[must_use]
    pub fn reverse(self) -> EdgeId {
        EdgeId(self.0 ^ 1)
    }

    /// The unoriented pair this directed edge belongs to.
    #[must_use]
    pub fn pair(self) -> PairId {
        PairId(self.0 >> 1)
    }

    /// The index as a `usize`, for slice lookups.
    #[must_use]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Whether this is the forward orientation of its pair.
    #[must_use]
    pub fn is_forward(self) -> bool {
        self.0 & 1 == 0
    }
}

/// Identifier of an unoriented edge pair.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PairId(pub u32);

impl PairId {
    /// The forward orientation (even directed index).
    #[must_use]
    pub fn forward(self) -> EdgeId {
        EdgeId(self.0 << 1)
    }

    /// The reverse orientation (odd directed index).
    #[must_use]
    pub fn backward(self) -> EdgeId {
        EdgeId(self.0 << 1 | 1)
    }

    /// The index as a `usize`, for slice lookups.
    #[must_use]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite graph with oriented edges.
///
/// Vertices are `0..vertex_count`.  Isolated vertices are permitted (they
/// contribute rank-zero components); an empty edge set is not.
#[derive(Clone, Debug)]
pub struct Graph {
    vertex_count: usize,
    /// `(origin, terminus)` per directed edge, in index order.
    ends: Vec<(u32, u32)>,
    /// Directed edges leaving each vertex, in ascending edge order.
    outgoing: Vec<Vec<EdgeId>>,
}

impl Graph {
    /// Builds a graph on `vertex_count` vertices from a list of unoriented
    /// edge pairs `(origin, terminus)`.
    ///
    /// Pair `i` of the input becomes directed edges `2i` (origin →
    /// terminus) and `2i + 1` (terminus → origin).  Loops
    /// (`origin == terminus`) are allowed.
    ///
    /// # Errors
    ///
    /// [`Error::EmptyEdgeList`] if `pairs` is empty, and
    /// [`Error::DanglingVertex`] if an endpoint is not below
    /// `vertex_count`.
    pub fn new(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Graph> {
        if pairs.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        let mut ends = Vec::with_capacity(2 * pairs.len());
        for (i, &(o, t)) in pairs.iter().enumerate() {
            for v in [o, t] {
                if v >= vertex_count {
                    return Err(Error::DanglingVertex { pair: i, vertex: v, vertex_count });
                }
            }
            ends.push((o as u32, t as u32));
            ends.push((t as u32, o as u32));
        }
        let mut outgoing = vec![Vec::new(); vertex_count];
        for (k, &(o, _)) in ends.iter().enumerate() {
            outgoing[o as usize].push(EdgeId(k as u32));
        }
        Ok(Graph { vertex_count, ends, outgoing })
    }

    /// Number of vertices (isolated ones included).
    #[must_use]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of unoriented edge pairs.
    #[must_use]
    pub fn pair_count(&self) -> usize {
        self.ends.len() / 2
    }

    /// Number of directed edges (always `2 · pair_count`).
    #[must_use]
    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    /// Origin vertex of a directed edge.
    #[must_use]
    pub fn origin(&self, e: EdgeId) -> usize {
        self.ends[e.index()].0 as usize
    }

    /// Terminus vertex of a directed edge.
    #[must_use]
    pub fn terminus(&self, e: EdgeId) -> usize {
        self.ends[e.index()].1 as usize
    }

    /// Whether a pair is a loop (both endpoints equal).
    #[must_use]
    pub fn is_loop(&self, p: PairId) -> bool {
        let (o, t) = self.ends[p.forward().index()];
        o == t
    }

    /// Iterator over all pair ids in index order.
    pub fn pairs(&self) -> impl Iterator<Item = PairId> {
        (0..self.pair_count() as u32).map(PairId)
    }

    /// Iterator over all directed edge ids in index order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count() as u32).map(EdgeId)
    }

    /// Directed edges leaving a vertex, in ascending edge order.
    #[must_use]
    pub fn outgoing(&self, vertex: usize) -> &[EdgeId] {
        &self.outgoing[vertex]
    }

    /// Valence (undirected degree) of a vertex; loops count twice.
    #[must_use]
    pub fn valence(&self, vertex: usize) -> usize {
        self.outgoing[vertex].len()
    }

    /// Whether `f` may follow `e` in a non-backtracking path: `f` must
    /// start where `e` ends and must not be the reversal of `e`.
    #[must_use]
    pub fn step_allowed(&self, e: EdgeId, f: EdgeId) -> bool {
        self.terminus(e) == self.origin(f) && f != e.reverse()
    }

    /// Non-backtracking successors of a directed edge, in ascending edge
    /// order.
    pub fn successors(&self, e: EdgeId) -> impl Iterator<Item = EdgeId> + '_ {
        let rev = e.reverse();
        self.outgoing[self.terminus(e)].iter().copied().filter(move |&f| f != rev)
    }

    /// Connected components, each listing its vertices and pairs in
    /// ascending order.  Isolated vertices form their own (edgeless)
    /// components.
    #[must_use]
    pub fn components(&self) -> Vec<Component> {
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.vertex_count {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &e in &self.outgoing[v] {
                    let w = self.terminus(e);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        let mut out = vec![
            Component { vertices: Vec::new(), pairs: Vec::new() };
            count
        ];
        for (v, &c) in comp.iter().enumerate() {
            out[c].vertices.push(v);
        }
        for p in self.pairs() {
            let v = self.origin(p.forward());
            out[comp[v]].pairs.push(p);
        }
        out
    }

    /// Number of connected components.
    #[must_use]
    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Whether the graph is connected (a single component).
    #[must_use]
    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// First Betti number `|E₊| − |V| + #components`.
    ///
    /// ```
    /// use graphent_core::graph::rose;
    /// let (g, _) = rose(&[1.0, 1.0, 1.0]).unwrap();
    /// assert_eq!(g.rank(), 3);
    /// ```
    #[must_use]
    pub fn rank(&self) -> usize {
        self.pair_count() + self.component_count() - self.vertex_count
    }

    /// Largest first Betti number over the connected components.
    ///
    /// Entropy is positive exactly when this is at least `2`.
    #[must_use]
    pub fn max_component_rank(&self) -> usize {
        self.components().iter().map(Component::rank).max().unwrap_or(0)
    }
}

/// One connected component of a [`Graph`].
#[derive(Clone, Debug)]
pub struct Component {
    /// Vertices of the component, ascending.
    pub vertices: Vec<usize>,
    /// Edge pairs of the component, ascending.
    pub pairs: Vec<PairId>,
}

impl Component {
    /// First Betti number of the component.
    #[must_use]
    pub fn rank(&self) -> usize {
        self.pairs.len() + 1 - self.vertices.len()
    }
}

/// A strictly positive, finite length per edge pair.
///
/// Both orientations of a pair share the pair's length.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthFunction {
    values: Vec<f64>,
}

impl LengthFunction {
    /// Wraps a per-pair list of lengths.
    ///
    /// # Errors
    ///
    /// [`Error::NonPositiveLength`] if any entry is not strictly positive
    /// and finite (NaN and `+∞` are rejected), and [`Error::EmptyEdgeList`]
    /// if the list is empty.
    pub fn new(values: Vec<f64>) -> Result<LengthFunction> {
        if values.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        for (pair, &value) in values.iter().enumerate() {
            if !(value > 0.0 && value < f64::INFINITY) {
                return Err(Error::NonPositiveLength { pair, value });
            }
        }
        Ok(LengthFunction { values })
    }

    /// A constant length function on `pairs` edge pairs.
    pub fn uniform(pairs: usize, value: f64) -> Result<LengthFunction> {
        LengthFunction::new(vec![value; pairs])
    }

    /// Number of edge pairs covered.
    #[must_use]
    pub fn pair_count(&self) -> usize {
        self.values.len()
    }

    /// Length of a directed edge (same as its pair's length).
    #[must_use]
    pub fn get(&self, e: EdgeId) -> f64 {
        self.values[e.pair().index()]
    }

    /// Length of an unoriented pair.
    #[must_use]
    pub fn pair(&self, p: PairId) -> f64 {
        self.values[p.index()]
    }

    /// The underlying per-pair slice, in pair order.
    #[must_use]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sum of the pair lengths (the metric graph's total volume).
    #[must_use]
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// The length function scaled by a positive factor.
    pub fn scaled(&self, factor: f64) -> Result<LengthFunction> {
        LengthFunction::new(self.values.iter().map(|v| v * factor).collect())
    }

    /// Checks that this length function fits the graph.
    pub(crate) fn check_fits(&self, g: &Graph) -> Result<()> {
        if self.values.len() != g.pair_count() {
            return Err(Error::LengthCountMismatch {
                lengths: self.values.len(),
                pairs: g.pair_count(),
            });
        }
        Ok(())
    }
}

/// A set of edge pairs singled out for deletion or retention.
///
/// Selections are kept sorted and deduplicated, so two selections are equal
/// exactly when they describe the same pair set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphSelection {
    pairs: Vec<PairId>,
}

impl SubgraphSelection {
    /// Builds a selection from any iterator of pair ids (duplicates are
    /// dropped, order is normalized).
    pub fn from_pairs<I: IntoIterator<Item = PairId>>(pairs: I) -> SubgraphSelection {
        let mut pairs: Vec<PairId> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        SubgraphSelection { pairs }
    }

    /// The selection consisting of a single pair.
    #[must_use]
    pub fn singleton(p: PairId) -> SubgraphSelection {
        SubgraphSelection { pairs: vec![p] }
    }

    /// Selected pairs in ascending order.
    #[must_use]
    pub fn pairs(&self) -> &[PairId] {
        &self.pairs
    }

    /// Number of selected pairs.
    #[must_use]
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Whether nothing is selected.
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Whether a given pair is selected.
    #[must_use]
    pub fn contains(&self, p: PairId) -> bool {
        self.pairs.binary_search(&p).is_ok()
    }

    /// The selection as a bitmask with bit `i` set when pair `i` is
    /// selected.  Only meaningful for graphs with at most 64 pairs, which
    /// covers everything the exhaustive explorer accepts.
    #[must_use]
    pub fn bitmask(&self) -> u64 {
        let mut mask = 0u64;
        for p in &self.pairs {
            debug_assert!(p.index() < 64);
            mask |= 1 << p.index();
        }
        mask
    }

    /// The complementary selection within a graph.
    #[must_use]
    pub fn complement(&self, g: &Graph) -> SubgraphSelection {
        SubgraphSelection::from_pairs(g.pairs().filter(|p| !self.contains(*p)))
    }
}

/// An based non-backtracking circuit, recorded as its directed edge
/// sequence `e₁, …, e_m`.
///
/// Validity means every consecutive step is allowed (`τ(eᵢ) = o(eᵢ₊₁)`,
/// `eᵢ₊₁ ≠ ēᵢ`) *including the wrap-around step* from `e_m` back to `e₁`.
/// Two circuits that differ by a cyclic rotation are distinct as based
/// circuits but can be compared via [`Circuit::canonical_rotation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    edges: Vec<EdgeId>,
}

impl Circuit {
    /// Wraps an edge sequence without validation; pair with
    /// [`Circuit::is_valid`].
    #[must_use]
    pub fn new(edges: Vec<EdgeId>) -> Circuit {
        Circuit { edges }
    }

    /// The edge sequence.
    #[must_use]
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Combinatorial length (number of edges).
    #[must_use]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Whether the circuit has no edges (never valid).
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks closedness and the non-backtracking condition at every step,
    /// wrap-around included.
    #[must_use]
    pub fn is_valid(&self, g: &Graph) -> bool {
        if self.edges.is_empty() {
            return false;
        }
        if self.edges.iter().any(|e| e.index() >= g.edge_count()) {
            return false;
        }
        let m = self.edges.len();
        (0..m).all(|i| g.step_allowed(self.edges[i], self.edges[(i + 1) % m]))
    }

    /// Total metric length under a length function.
    #[must_use]
    pub fn metric_length(&self, l: &LengthFunction) -> f64 {
        self.edges.iter().map(|&e| l.get(e)).sum()
    }

    /// How many times the circuit traverses a pair (in either direction).
    #[must_use]
    pub fn multiplicity(&self, p: PairId) -> usize {
        self.edges.iter().filter(|e| e.pair() == p).count()
    }

    /// The lexicographically smallest rotation of the edge sequence, a
    /// canonical representative of the circuit's cyclic class.
    #[must_use]
    pub fn canonical_rotation(&self) -> Circuit {
        let m = self.edges.len();
        let mut best = 0;
        for start in 1..m {
            for k in 0..m {
                let a = self.edges[(start + k) % m];
                let b = self.edges[(best + k) % m];
                if a != b {
                    if a < b {
                        best = start;
                    }
                    break;
                }
            }
        }
        let edges = (0..m).map(|k| self.edges[(best + k) % m]).collect();
        Circuit { edges }
    }
}

/// A rose: one vertex carrying `lengths.len()` loops.
///
/// Pair `i` gets `lengths[i]`.
///
/// ```
/// use graphent_core::graph::rose;
/// let (g, l) = rose(&[1.0, 2.0]).unwrap();
/// assert_eq!(g.vertex_count(), 1);
/// assert_eq!(g.pair_count(), 2);
/// assert_eq!(g.rank(), 2);
/// assert_eq!(l.total(), 3.0);
/// ```
pub fn rose(lengths: &[f64]) -> Result<(Graph, LengthFunction)> {
    let pairs = vec![(0usize, 0usize); lengths.len()];
    let g = Graph::new(1, &pairs)?;
    let l = LengthFunction::new(lengths.to_vec())?;
    Ok((g, l))
}

/// A theta-like graph: two vertices joined by `lengths.len()` parallel
/// edges.
///
/// At least two parallel edges are required for the graph to carry a
/// circuit; the classical theta graph is `theta(&[a, b, c])`.
pub fn theta(lengths: &[f64]) -> Result<(Graph, LengthFunction)> {
    let pairs = vec![(0usize, 1usize); lengths.len()];
    let g = Graph::new(2, &pairs)?;
    let l = LengthFunction::new(lengths.to_vec())?;
    Ok((g, l))
}

/// A barbell: loops of length `a` and `b` at the two ends of a bridge of
/// length `c`.
///
/// Pair order is `[loop a at vertex 0, loop b at vertex 1, bridge]`.
pub fn barbell(a: f64, b: f64, c: f64) -> Result<(Graph, LengthFunction)> {
    double_rose(&[a], &[b], c)
}

/// Two roses joined by a bridge: `left` loops at vertex 0, `right` loops
/// at vertex 1, and a bridge of length `bridge` between them.
///
/// Pair order is left loops, then right loops, then the bridge (forward
/// orientation 0 → 1).  `barbell` is the special case of one loop on each
/// side.
pub fn double_rose(left: &[f64], right: &[f64], bridge: f64) -> Result<(Graph, LengthFunction)> {
    let mut pairs = Vec::with_capacity(left.len() + right.len() + 1);
    pairs.extend(core::iter::repeat_n((0usize, 0usize), left.len()));
    pairs.extend(core::iter::repeat_n((1usize, 1usize), right.len()));
    pairs.push((0usize, 1usize));
    let g = Graph::new(2, &pairs)?;
    let mut values = Vec::with_capacity(pairs.len());
    values.extend_from_slice(left);
    values.extend_from_slice(right);
    values.push(bridge);
    let l = LengthFunction::new(values)?;
    Ok((g, l))
}

/// Every proper non-empty subset of the edge pairs, as selections of the
/// pairs to *keep*, in ascending bitmask order.
///
/// There are `2^|E₊| − 2` of them.  Intended for small graphs; panics if
/// the graph has more than 24 pairs (the exhaustive explorer guards much
/// earlier).
#[must_use]
pub fn proper_subgraphs(g: &Graph) -> Vec<SubgraphSelection> {
    let k = g.pair_count();
    assert!(k <= 24, "proper_subgraphs is exhaustive; {k} pairs is too many");
    let full: u64 = (1 << k) - 1;
    let mut out = Vec::with_capacity((full as usize).saturating_sub(1));
    for mask in 1..full {
        out.push(SubgraphSelection::from_pairs(
            (0..k as u32).filter(|i| mask >> i & 1 == 1).map(PairId),
        ));
    }
    out
}

/// Deletes the selected pairs, dropping vertices that end up isolated and
/// renumbering everything in ascending order of the survivors.
///
/// The selection must leave at least one pair standing and must delete at
/// least... nothing: deleting the empty selection is allowed and returns a
/// relabelled copy.  Deleting *all* pairs is rejected.
///
/// # Errors
///
/// [`Error::EdgeOutOfRange`] if the selection mentions a pair the graph
/// does not have, [`Error::NotProperSelection`] if every pair would be
/// deleted, and [`Error::LengthCountMismatch`] if `l` does not fit `g`.
pub fn delete_edges(
    g: &Graph,
    l: &LengthFunction,
    sel: &SubgraphSelection,
) -> Result<(Graph, LengthFunction)> {
    l.check_fits(g)?;
    for p in sel.pairs() {
        if p.index() >= g.pair_count() {
            return Err(Error::EdgeOutOfRange { index: p.index(), limit: g.pair_count() });
        }
    }
    if sel.len() == g.pair_count() {
        return Err(Error::NotProperSelection { selected: sel.len(), pairs: g.pair_count() });
    }
    let kept: Vec<PairId> = g.pairs().filter(|p| !sel.contains(*p)).collect();
    keep_pairs(g, l, &kept)
}

/// Restricts to the selected pairs (the complement of [`delete_edges`]),
/// dropping vertices that end up isolated.
///
/// # Errors
///
/// As for [`delete_edges`]; the selection must be non-empty.
pub fn restrict_to(
    g: &Graph,
    l: &LengthFunction,
    sel: &SubgraphSelection,
) -> Result<(Graph, LengthFunction)> {
    l.check_fits(g)?;
    for p in sel.pairs() {
        if p.index() >= g.pair_count() {
            return Err(Error::EdgeOutOfRange { index: p.index(), limit: g.pair_count() });
        }
    }
    if sel.is_empty() {
        return Err(Error::NotProperSelection { selected: 0, pairs: g.pair_count() });
    }
    keep_pairs(g, l, sel.pairs())
}

/// Shared tail of `delete_edges`/`restrict_to`: rebuild on a kept pair
/// list (ascending, non-empty).
fn keep_pairs(g: &Graph, l: &LengthFunction, kept: &[PairId]) -> Result<(Graph, LengthFunction)> {
    let mut vertex_map = vec![usize::MAX; g.vertex_count()];
    let mut next = 0;
    for &p in kept {
        for v in [g.origin(p.forward()), g.terminus(p.forward())] {
            if vertex_map[v] == usize::MAX {
                vertex_map[v] = 0; // mark; final ids assigned below in vertex order
            }
        }
    }
    for slot in vertex_map.iter_mut() {
        if *slot != usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let pairs: Vec<(usize, usize)> = kept
        .iter()
        .map(|&p| {
            (vertex_map[g.origin(p.forward())], vertex_map[g.terminus(p.forward())])
        })
        .collect();
    let values: Vec<f64> = kept.iter().map(|&p| l.pair(p)).collect();
    Ok((Graph::new(next, &pairs)?, LengthFunction::new(values)?))
}

/// Collapses a non-loop edge, identifying its endpoints.
///
/// The pair itself disappears; its length is discarded (collapse is the
/// `ℓ(p) → 0` limit).  The surviving vertex is the smaller endpoint id and
/// every other vertex keeps its relative order.  Rank and connectivity are
/// preserved; edges parallel to the collapsed one become loops.
///
/// # Errors
///
/// [`Error::CollapseLoop`] if the pair is a loop (collapsing it would
/// change the homotopy type), [`Error::EdgeOutOfRange`] for a bad pair id,
/// and [`Error::NotProperSelection`] if the pair is the only edge.
pub fn collapse_edge(
    g: &Graph,
    l: &LengthFunction,
    p: PairId,
) -> Result<(Graph, LengthFunction)> {
    l.check_fits(g)?;
    if p.index() >= g.pair_count() {
        return Err(Error::EdgeOutOfRange { index: p.index(), limit: g.pair_count() });
    }
    if g.is_loop(p) {
        return Err(Error::CollapseLoop { pair: p.index() });
    }
    if g.pair_count() == 1 {
        return Err(Error::NotProperSelection { selected: 1, pairs: 1 });
    }
    let a = g.origin(p.forward()).min(g.terminus(p.forward()));
    let b = g.origin(p.forward()).max(g.terminus(p.forward()));
    let remap = |v: usize| {
        let v = if v == b { a } else { v };
        if v > b {
            v - 1
        } else {
            v
        }
    };
    let mut pairs = Vec::with_capacity(g.pair_count() - 1);
    let mut values = Vec::with_capacity(g.pair_count() - 1);
    for q in g.pairs() {
        if q == p {
            continue;
        }
        pairs.push((remap(g.origin(q.forward())), remap(g.terminus(q.forward()))));
        values.push(l.pair(q));
    }
    Ok((Graph::new(g.vertex_count() - 1, &pairs)?, LengthFunction::new(values)?))
}

/// Subdivides an edge into `parts ≥ 2` segments of equal length.
///
/// New vertices are appended after the existing ones; the replacement
/// segments are appended after the surviving pairs (the subdivided pair's
/// slot is removed), each of length `ℓ(p)/parts`.  Subdivision is a metric
/// isomorphism: entropy and circuit metric lengths are unchanged.
///
/// # Errors
///
/// [`Error::TooFewParts`] for `parts < 2` and [`Error::EdgeOutOfRange`]
/// for a bad pair id.
pub fn subdivide_edge(
    g: &Graph,
    l: &LengthFunction,
    p: PairId,
    parts: usize,
) -> Result<(Graph, LengthFunction)> {
    l.check_fits(g)?;
    if p.index() >= g.pair_count() {
        return Err(Error::EdgeOutOfRange { index: p.index(), limit: g.pair_count() });
    }
    if parts < 2 {
        return Err(Error::TooFewParts { parts });
    }
    let mut pairs = Vec::with_capacity(g.pair_count() - 1 + parts);
    let mut values = Vec::with_capacity(pairs.capacity());
    for q in g.pairs() {
        if q == p {
            continue;
        }
        pairs.push((g.origin(q.forward()), g.terminus(q.forward())));
        values.push(l.pair(q));
    }
    let o = g.origin(p.forward());
    let t = g.terminus(p.forward());
    let segment = l.pair(p) / parts as f64;
    let mut prev = o;
    for i in 0..parts {
        let next = if i + 1 == parts { t } else { g.vertex_count() + i };
        pairs.push((prev, next));
        values.push(segment);
        prev = next;
    }
    Ok((
        Graph::new(g.vertex_count() + parts - 1, &pairs)?,
        LengthFunction::new(values)?,
    ))
}
