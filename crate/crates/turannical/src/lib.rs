//! Turánnical restriction hypergraphs: extremal formulas and constructions,
//! exact decision of the (eps-)Turánnical property via combinatorial
//! optimization, structural classification of near-extremal graphs, and
//! seeded Monte Carlo threshold experiments.
//!
//! A restriction hypergraph detects a graph when some hyperedge induces a
//! complete subgraph; it is Turánnical when it detects every graph above
//! the extremal edge count. The crate provides the graph/hypergraph kernel
//! ([`graph`], [`hypergraph`], [`cliques`]), closed-form extremal numbers
//! and constructions ([`turan`]), the detection predicate ([`detect`]), an
//! exact hitting-set solver with certified witnesses ([`solver`]),
//! structural classification ([`structure`]), and reproducible threshold
//! experiments ([`experiments`]).

pub mod cliques;
pub mod combin;
pub mod detect;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod ratio;
pub mod rng;
pub mod solver;
pub mod stats;
pub mod structure;
pub mod turan;

pub use error::{Error, Result};
pub use graph::Graph;
pub use hypergraph::UniformHypergraph;
