//! Exhaustive enumeration and counting of based non-backtracking
//! circuits, and the systole (shortest circuit length).
//!
//! A *based* circuit is an edge sequence `e₁, …, e_m` where every step —
//! the wrap-around `e_m → e₁` included — moves to an edge starting where
//! the previous one ended without reversing it.  Cyclic rotations count
//! separately, which is exactly the convention under which the number of
//! `m`-edge circuits equals `trace(Aᵐ)` for the 0/1 transition matrix,
//! and the growth rate of `|C_{G,ℓ}(t)|` (circuits of metric length ≤ t)
//! is the entropy.
//!
//! Enumeration is depth-first over path extensions with a visit cap, so a
//! runaway request fails loudly with [`Error::CapExceeded`] instead of
//! hanging.  The systole is computed exactly by running Dijkstra from each
//! directed edge on the transition digraph, where stepping onto an edge
//! costs that edge's length.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Circuit, EdgeId, Graph, LengthFunction};

/// Default visit cap for the enumeration routines: plenty for the small
/// graphs these are meant for, small enough to fail fast on a mistake.
/// Deliberately searching a large horizon (circuit counts grow
/// exponentially with metric length) is what the explicit-cap parameters
/// are for.
pub const DEFAULT_VISIT_CAP: u64 = 10_000_000;

/// Counts based circuits with exactly `1, 2, …, max_edges` edges.
///
/// Entry `m − 1` of the result is the number of `m`-edge circuits, the
/// quantity that matches `trace(Aᵐ)` of the adjacency edge matrix.
///
/// # Errors
///
/// [`Error::CapExceeded`] if more than `cap` partial paths get visited.
///
/// ```
/// use graphent_core::circuits::circuit_counts;
/// use graphent_core::graph::rose;
///
/// // Rose with two petals: trace(Aᵐ) = 3ᵐ + 2 + (−1)ᵐ.
/// let (g, _) = rose(&[1.0, 1.0]).unwrap();
/// let counts = circuit_counts(&g, 4, 1_000_000).unwrap();
/// assert_eq!(counts, vec![4, 12, 28, 84]);
/// ```
pub fn circuit_counts(g: &Graph, max_edges: usize, cap: u64) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; max_edges];
    dfs_circuits(g, max_edges, cap, |path| counts[path.len() - 1] += 1)?;
    Ok(counts)
}

/// Collects every based circuit with at most `max_edges` edges.
///
/// Circuits come out grouped by starting edge (ascending), then in
/// depth-first order; every one satisfies [`Circuit::is_valid`].
pub fn collect_circuits(g: &Graph, max_edges: usize, cap: u64) -> Result<Vec<Circuit>> {
    let mut out = Vec::new();
    dfs_circuits(g, max_edges, cap, |path| out.push(Circuit::new(path.to_vec())))?;
    Ok(out)
}

/// Depth-first scan of all non-backtracking paths with at most
/// `max_edges` edges, invoking `emit` on each prefix that closes up into
/// a circuit.
fn dfs_circuits<F: FnMut(&[EdgeId])>(
    g: &Graph,
    max_edges: usize,
    cap: u64,
    mut emit: F,
) -> Result<()> {
    let mut visits: u64 = 0;
    let mut path: Vec<EdgeId> = Vec::new();
    // (edge, position into outgoing(terminus(edge))) per path entry.
    let mut frames: Vec<(EdgeId, usize)> = Vec::new();
    for start in g.edges() {
        visits += 1;
        if visits > cap {
            return Err(Error::CapExceeded { cap });
        }
        if max_edges == 0 {
            return Ok(());
        }
        if g.step_allowed(start, start) {
            emit(&[start]);
        }
        path.push(start);
        frames.push((start, 0));
        while let Some(&mut (e, ref mut pos)) = frames.last_mut() {
            if path.len() == max_edges {
                path.pop();
                frames.pop();
                continue;
            }
            let out = g.outgoing(g.terminus(e));
            if *pos == out.len() {
                path.pop();
                frames.pop();
                continue;
            }
            let f = out[*pos];
            *pos += 1;
            if f == e.reverse() {
                continue;
            }
            visits += 1;
            if visits > cap {
                return Err(Error::CapExceeded { cap });
            }
            path.push(f);
            if g.step_allowed(f, start) {
                emit(&path);
            }
            frames.push((f, 0));
        }
        path.clear();
    }
    Ok(())
}

/// Counts based circuits of metric length at most `t` (inclusive), the
/// circuit-complexity function `|C_{G,ℓ}(t)|`.
///
/// Runs in time proportional to the number of non-backtracking paths of
/// length ≤ t, so it is exponential in `t` — exactly the growth that
/// entropy measures.  Guard with `cap`.
///
/// # Errors
///
/// [`Error::CapExceeded`] when the path count outgrows `cap`, and
/// [`Error::LengthCountMismatch`] if `l` does not fit `g`.
pub fn count_circuits_up_to_length(
    g: &Graph,
    l: &LengthFunction,
    t: f64,
    cap: u64,
) -> Result<u64> {
    l.check_fits(g)?;
    let mut total = 0u64;
    let mut visits = 0u64;
    // (edge, successor position, accumulated length including this edge).
    let mut frames: Vec<(EdgeId, usize, f64)> = Vec::new();
    for start in g.edges() {
        let base = l.get(start);
        if base > t {
            continue;
        }
        visits += 1;
        if visits > cap {
            return Err(Error::CapExceeded { cap });
        }
        if g.step_allowed(start, start) {
            total += 1;
        }
        frames.push((start, 0, base));
        while let Some(&mut (e, ref mut pos, sum)) = frames.last_mut() {
            let out = g.outgoing(g.terminus(e));
            if *pos == out.len() {
                frames.pop();
                continue;
            }
            let f = out[*pos];
            *pos += 1;
            if f == e.reverse() {
                continue;
            }
            let extended = sum + l.get(f);
            if extended > t {
                continue; // lengths are positive: no extension can recover
            }
            visits += 1;
            if visits > cap {
                return Err(Error::CapExceeded { cap });
            }
            if g.step_allowed(f, start) {
                total += 1;
            }
            frames.push((f, 0, extended));
        }
    }
    Ok(total)
}

/// Min-heap entry for the systole Dijkstra.
#[derive(PartialEq)]
struct HeapEntry {
    dist: f64,
    edge: u32,
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        // Reversed: BinaryHeap is a max-heap, we want the smallest dist.
        other.dist.total_cmp(&self.dist).then(other.edge.cmp(&self.edge))
    }
}

/// The systole: the shortest metric length of any circuit.
///
/// Computed exactly (no enumeration cap): for each starting edge `e`, a
/// Dijkstra run on the transition digraph — where stepping onto `f` costs
/// `ℓ(f)` — finds the cheapest non-backtracking way back into `e`.
/// Reversing a circuit preserves validity and length, so only forward
/// orientations need to serve as starting edges.
///
/// # Errors
///
/// [`Error::NoCircuit`] if the graph is a forest.
pub fn systole(g: &Graph, l: &LengthFunction) -> Result<f64> {
    l.check_fits(g)?;
    let n = g.edge_count();
    let mut best = f64::INFINITY;
    let mut dist = vec![f64::INFINITY; n];
    for p in g.pairs() {
        let start = p.forward();
        if g.step_allowed(start, start) {
            best = best.min(l.get(start));
        }
        dist.fill(f64::INFINITY);
        let mut heap = BinaryHeap::new();
        for f in g.successors(start) {
            let d = l.get(f);
            if d < dist[f.index()] {
                dist[f.index()] = d;
                heap.push(HeapEntry { dist: d, edge: f.0 });
            }
        }
        while let Some(HeapEntry { dist: d, edge }) = heap.pop() {
            let e = EdgeId(edge);
            if d > dist[e.index()] || d >= best {
                continue;
            }
            if g.step_allowed(e, start) {
                best = best.min(d + l.get(start));
            }
            for f in g.successors(e) {
                let nd = d + l.get(f);
                if nd < dist[f.index()] {
                    dist[f.index()] = nd;
                    heap.push(HeapEntry { dist: nd, edge: f.0 });
                }
            }
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::NoCircuit)
    }
}
