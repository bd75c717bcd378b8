//! Deterministic combinatorial detection of induced 4-cycles.

pub mod bench;
pub mod error;
pub mod corpus;
pub mod decomposition;
pub mod detector;
pub mod graph_core;
pub mod orderings;
pub mod quadruples;
pub mod range_query;
pub mod selftest;
pub mod triples;

pub use error::{Error, Result};
pub use detector::{detect, find, DetectionReport, Phase};
pub use graph_core::{load_graph, oracle_detect, verify_witness, write_graph, C4Witness, Graph, GraphSpec};
