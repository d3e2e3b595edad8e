//! Entropy and equilibrium measures of finite metric graphs.
//!
//! A *metric graph* is a finite graph `G` together with a length function
//! `ℓ : E₊ → (0, ∞)` on its (unoriented) edges.  The central quantity
//! computed by this crate is the **volume entropy**
//!
//! ```text
//! h(G, ℓ) = lim_{t → ∞} (1/t) · log |C_{G,ℓ}(t)|,
//! ```
//!
//! the exponential growth rate of the number of based non-backtracking
//! circuits of metric length at most `t`.  The entropy is the unique `s > 0`
//! at which the weighted non-backtracking edge transition matrix
//!
//! ```text
//! A_{G,sℓ}(e, e′) = exp(−s·ℓ(e)) · [τ(e) = o(e′), ē ≠ e′]
//! ```
//!
//! has spectral radius exactly `1`, provided some component of `G` has first
//! Betti number (rank) at least `2`; graphs whose components are all trees or
//! single cycles have entropy `0`.
//!
//! On the unit-entropy locus the matrix `A_{G,ℓ}` has Perron eigenvalue `1`,
//! and the left/right Perron vectors combine into the **equilibrium
//! measure** `μ(e) = u(e)·v(e)`, the stationary distribution of the circuit
//! flow.  The crate computes these, the determinant function
//! `F(ℓ) = det(I − A_{G,ℓ})` and its gradient, and the **subgraph entropy**
//!
//! ```text
//! h_e(G, ℓ) = lim_{t → ∞} h(G, ψ_t(ℓ)) · (ℓ(e) + t)
//! ```
//!
//! obtained by blowing up a single edge `e`, both by direct evaluation at a
//! large horizon and through the integral representation of the scaling
//! factor `j(t)` that renormalizes the blow-up back to unit entropy.
//!
//! The crate is `no_std` (it requires only `alloc`); all transcendental
//! functions are taken from [`libm`] so results are bit-reproducible across
//! platforms.  IO, file formats, and the command-line interface live in the
//! companion crate `graphent-cli`.
//!
//! # Example
//!
//! ```
//! use graphent_core::graph::rose;
//! use graphent_core::spectral::{entropy, normalize_unit};
//!
//! // A rose with three petals of equal length L has entropy log(5)/L:
//! // each directed edge has 5 non-backtracking successors.
//! let (g, l) = rose(&[1.0, 1.0, 1.0]).unwrap();
//! let h = entropy(&g, &l).unwrap();
//! assert!((h - 5.0_f64.ln()).abs() < 1e-9);
//!
//! // Scaling the lengths to unit entropy divides every length by h.
//! let unit = normalize_unit(&g, &l).unwrap();
//! assert!((unit.pair_count() - 3) == 0);
//! assert!((entropy(&g, &unit).unwrap() - 1.0).abs() < 1e-9);
//! ```

#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod blowup;
pub mod bounds;
pub mod circuits;
pub mod error;
pub mod explorer;
pub mod fixtures;
pub mod graph;
mod linalg;
mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
