//! Reciprocity of directed hypergraphs.
//!
//! This crate holds the algorithmic side of the toolkit and builds without
//! `std` (it needs `alloc`):
//!
//! - [`hypergraph`]: the immutable [`DirectedHypergraph`] with incidence
//!   indexes, degrees and canonical arc signatures.
//! - [`probability`]: transition distributions from head-set nodes and the
//!   Jensen-Shannon divergence used to compare them with the optimum.
//! - [`measure`]: the HyperRec arc-level and hypergraph-level measures.
//! - [`search`]: maximisation over reciprocal sets (FastHyperRec), the
//!   unit-tail fast path, an exact group search and a brute-force oracle.
//! - [`baselines`]: the seven baseline measures used for axiomatic comparison.
//! - [`axioms`]: fixtures and randomized generators for the axiom suite.
//! - [`generators`]: null model, ReDi and the no-reciprocity baseline generator.
//! - [`analytics`]: statistics behind the hypergraph-, arc- and node-level
//!   analyses.
//!
//! Parallel evaluation, file formats and the command line live in the
//! companion `hyperrec` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analytics;
pub mod axioms;
pub mod baselines;
pub mod generators;
pub mod hypergraph;
pub mod measure;
pub mod probability;
pub mod search;

mod error;
mod math;

pub use error::Error;
pub use hypergraph::{ArcId, DegreeReport, DirectedHypergraph, Hyperarc, HypergraphBuilder, NodeId};
pub use measure::{ArcReciprocity, ReciprocityConfig};
pub use probability::{DivergenceValue, TransitionDistribution, L_MAX};
pub use search::{SearchConfig, SearchMode};

pub type Result<T, E = Error> = core::result::Result<T, E>;
