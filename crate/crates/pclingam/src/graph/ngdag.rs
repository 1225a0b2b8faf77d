//! DAGs and patterns annotated with non-Gaussianity marks.

use crate::error::{Error, Result};
use crate::graph::meek::meek_closure;
use crate::graph::{cpdag_from_dag, Dag, MixedGraph};

/// A DAG paired with a per-node flag marking non-Gaussian disturbances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgDag {
    pub dag: Dag,
    pub ng: Vec<bool>,
}

impl NgDag {
    pub fn new(dag: Dag, ng: Vec<bool>) -> Result<Self> {
        if ng.len() != dag.node_count() {
            return Err(Error::InvalidArgument(format!(
                "ng vector has length {}, graph has {} nodes",
                ng.len(),
                dag.node_count()
            )));
        }
        Ok(Self { dag, ng })
    }

    pub fn node_count(&self) -> usize {
        self.dag.node_count()
    }
}

/// The pattern of a distribution-equivalence class: a chain graph in which
/// every edge incident to a non-Gaussian node is directed, plus the ng marks.
///
/// Two ngDAGs are distribution-equivalent exactly when their patterns agree,
/// edge marks and ng vector both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgPattern {
    graph: MixedGraph,
    ng: Vec<bool>,
}

impl NgPattern {
    pub fn new(graph: MixedGraph, ng: Vec<bool>) -> Result<Self> {
        if ng.len() != graph.node_count() {
            return Err(Error::InvalidArgument(format!(
                "ng vector has length {}, graph has {} nodes",
                ng.len(),
                graph.node_count()
            )));
        }
        if !graph.is_chain_graph() {
            return Err(Error::InvalidArgument(
                "pattern contains a semi-directed cycle".into(),
            ));
        }
        for (a, b) in graph.undirected_edges() {
            if ng[a] || ng[b] {
                return Err(Error::InvalidArgument(format!(
                    "undirected edge ({a}, {b}) touches a non-Gaussian node"
                )));
            }
        }
        Ok(Self { graph, ng })
    }

    pub fn graph(&self) -> &MixedGraph {
        &self.graph
    }

    pub fn ng(&self) -> &[bool] {
        &self.ng
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }
}

/// Builds the pattern representing `ngdag`: the completed pattern of its DAG,
/// with every undirected edge incident to a non-Gaussian node re-oriented as
/// in the DAG, closed again under the Meek rules.
pub fn ngdag_pattern(ngdag: &NgDag) -> NgPattern {
    let mut g = cpdag_from_dag(&ngdag.dag);
    for (a, b) in g.undirected_edges().collect::<Vec<_>>() {
        if ngdag.ng[a] || ngdag.ng[b] {
            if ngdag.dag.has_edge(a, b) {
                g.orient(a, b).expect("edge is undirected");
            } else {
                g.orient(b, a).expect("edge is undirected");
            }
        }
    }
    let closed = meek_closure(&g).expect("orientations taken from a DAG are consistent");
    NgPattern::new(closed, ngdag.ng.clone()).expect("closure of consistent marks is a pattern")
}

/// True iff the two ngDAGs are represented by the same pattern.
pub fn distribution_equivalent(d1: &NgDag, d2: &NgDag) -> Result<bool> {
    if d1.node_count() != d2.node_count() {
        return Err(Error::InvalidArgument(format!(
            "node counts differ: {} vs {}",
            d1.node_count(),
            d2.node_count()
        )));
    }
    Ok(ngdag_pattern(d1) == ngdag_pattern(d2))
}
