//! Weight oracles with exact query accounting.
//!
//! Two access models are supported. In the adjacency-matrix model the oracle
//! is indexed by a vertex pair and answers `+inf` for pairs that are not
//! edges. In the edge-list model it is indexed by edge number and answers the
//! endpoints together with the weight.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleModel {
    AdjacencyMatrix,
    EdgeList,
}

/// Which counter a query is charged to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryContext {
    Classical,
    Quantum,
}

#[derive(Debug)]
pub struct InstrumentedOracle<'g> {
    graph: &'g Graph,
    model: OracleModel,
    classical: AtomicU64,
    quantum: AtomicU64,
}

impl<'g> InstrumentedOracle<'g> {
    pub fn new(graph: &'g Graph, model: OracleModel) -> Self {
        Self {
            graph,
            model,
            classical: AtomicU64::new(0),
            quantum: AtomicU64::new(0),
        }
    }

    pub fn adjacency(graph: &'g Graph) -> Self {
        Self::new(graph, OracleModel::AdjacencyMatrix)
    }

    pub fn edge_list(graph: &'g Graph) -> Self {
        Self::new(graph, OracleModel::EdgeList)
    }

    pub fn model(&self) -> OracleModel {
        self.model
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    fn charge(&self, ctx: QueryContext, count: u64) {
        let counter = match ctx {
            QueryContext::Classical => &self.classical,
            QueryContext::Quantum => &self.quantum,
        };
        counter.fetch_add(count, Ordering::Relaxed);
    }

    /// `w(a, b)` for the pair, `+inf` when the pair is not an edge. Symmetric.
    /// Parallel edges collapse to the lightest one.
    pub fn query_weight(&self, a: VertexId, b: VertexId, ctx: QueryContext) -> f64 {
        self.charge(ctx, 1);
        match self.graph.edge_between(a, b) {
            Some(id) => self.graph.edges()[id].w,
            None => f64::INFINITY,
        }
    }

    /// Endpoints and weight of edge `i`.
    pub fn query_edge(&self, i: EdgeId, ctx: QueryContext) -> Result<(VertexId, VertexId, f64)> {
        let e = self.graph.edge(i).ok_or(Error::IndexOutOfRange {
            index: i,
            m: self.graph.m(),
        })?;
        self.charge(ctx, 1);
        Ok((e.u, e.v, e.w))
    }

    /// Weight of a known edge through whichever access path the model allows:
    /// a pair lookup on its endpoints, or an index lookup. One query either way.
    pub fn edge_weight(&self, id: EdgeId, ctx: QueryContext) -> Result<f64> {
        match self.model {
            OracleModel::AdjacencyMatrix => {
                let e = self.graph.edge(id).ok_or(Error::IndexOutOfRange {
                    index: id,
                    m: self.graph.m(),
                })?;
                Ok(self.query_weight(e.u, e.v, ctx))
            }
            OracleModel::EdgeList => self.query_edge(id, ctx).map(|(_, _, w)| w),
        }
    }

    /// Charges `count` oracle applications made on a superposition. The
    /// simulator evaluates the marker itself; this keeps the query tally.
    pub fn record_quantum_applications(&self, count: u64) {
        self.charge(QueryContext::Quantum, count);
    }

    pub fn classical_queries(&self) -> u64 {
        self.classical.load(Ordering::Relaxed)
    }

    pub fn quantum_queries(&self) -> u64 {
        self.quantum.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.classical.store(0, Ordering::Relaxed);
        self.quantum.store(0, Ordering::Relaxed);
    }
}
