//! Exact counting and enumeration of reduced unicellular hypermonopoles.
//!
//! A hypermap is a pair of permutations `(sigma, alpha)` of the same point
//! set generating a transitive group: `sigma` rotates points around
//! vertices, `alpha` around hyperedges, and the face rotation is
//! `alpha^-1 . sigma`. This crate works with unicellular hypermonopoles,
//! maps whose vertex and face rotations are both circular, normalized so
//! the face is the standard circular permutation. Such a map is *reduced*
//! when its hyperedge rotation has no fixed point.
//!
//! The crate provides:
//!
//! - exact counts via Stirling-number formulas ([`exact`]),
//! - exhaustive scans over all faces of a given size ([`brute`]), which
//!   serve as independent oracles for the formulas,
//! - two equivalent combinatorial models, a signed cycle graph and a
//!   polygon-gluing diagram, convertible to and from the permutation form
//!   ([`models`]).
//!
//! Counts are exact at every size ([`num_bigint::BigUint`] throughout);
//! scans can run in parallel with deterministic, thread-count-independent
//! results.

pub mod brute;
pub mod exact;
pub mod hypermap;
pub mod models;
pub mod perm;

pub use brute::{CountByK, ScanError, ScanOptions, DEFAULT_SCAN_LIMIT};
pub use exact::Poly;
pub use hypermap::{Hypermap, HypermapClass, HypermapError, HypermapRecord};
pub use models::{CycleGraph, GluingDiagram, ModelError, SignedVertex};
pub use perm::{CycleDecomposition, ParseError, PermError, Permutation};
