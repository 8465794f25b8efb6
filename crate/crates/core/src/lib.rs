//! Verification of minimum spanning trees.
//!
//! Given a weighted graph and a candidate spanning tree, decide whether the
//! tree has minimum weight and, if not, produce a strictly lighter tree by a
//! single edge exchange. The candidate's Borůvka tree is built with exactly
//! `n - 1` weight-oracle queries; afterwards the heaviest tree edge on any
//! path is found without further queries. The search for a violating edge is
//! either a classical scan or a simulated Grover search whose oracle
//! applications are counted exactly.

pub mod boruvka;
pub mod cli;
mod dsu;
pub mod error;
pub mod generate;
pub mod graph;
pub mod grover;
pub mod oracle;
pub mod scaling;
pub mod verifier;

pub use boruvka::{direct_path_max, BNode, BoruvkaTree, PathMaxAnswer};
pub use dsu::DisjointSets;
pub use error::{Error, Result};
pub use graph::{load_graph, load_tree, tree_weight, Edge, EdgeId, EdgeKey, Graph, SpanningTree, VertexId};
pub use grover::{GroverConfig, SearchSpace};
pub use oracle::{InstrumentedOracle, OracleModel, QueryContext};
pub use verifier::{
    classical_scan, classical_verify, improve, is_violating, kruskal_mst, quantum_verify, QueryReport, Verdict,
    VerifyConfig, VerifyMode, Witness,
};
