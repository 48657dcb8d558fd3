//! Expander graphs from iterated 2-lifts.
//!
//! A signing of a graph's edges determines both a signed adjacency matrix
//! and a 2-lift (a double cover). The lift's spectrum is the base spectrum
//! together with the signed spectrum, so a signing with small spectral
//! radius doubles the graph without hurting its spectral gap. Repeating
//! from `K_{d+1}` gives arbitrarily large `d`-regular expanders.
//!
//! The crate is organised as:
//!
//! - [`graph`]: graphs, signings, the 2-lift, covering checks, subset
//!   enumeration, generators and the edge-list file format.
//! - [`spectral`]: dense symmetric eigensolving, signed adjacency matrices,
//!   the old/new lift spectrum split and signed closed-walk traces.
//! - [`discrepancy`]: jumbledness, sparsity, the mixing-lemma checks in both
//!   directions, dyadic rounding and discrepancy-witness extraction.
//! - [`signing`]: signing searches (random, exhaustive, conditional
//!   expectations, small-bias sample spaces, local refinement), goodness
//!   certificates and the strongly explicit lift-chain adjacency oracle.
//! - [`builder`]: the iterated-lift expander builder and the tightness
//!   example families.
//! - [`cli`]: the `twolift` command-line front end.
//!
//! Logarithms in every bound are base 2.
//!
//! ```
//! use twolift::graph::make_railway;
//! use twolift::spectral::{eigenvalues_sym, signed_adjacency, DEFAULT_TOL};
//!
//! let (g, s) = make_railway(4).unwrap();
//! let report = eigenvalues_sym(&signed_adjacency(&g, &s).unwrap(), DEFAULT_TOL).unwrap();
//! assert!((report.radius - 5f64.sqrt()).abs() < 1e-9);
//! ```

pub mod builder;
pub mod cli;
pub mod discrepancy;
pub mod error;
pub mod graph;
pub mod report;
pub mod signing;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Graph, LiftProjection, Signing};
