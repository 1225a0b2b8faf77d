//! Directed acyclic graphs over indexed variables.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A directed acyclic graph over nodes `0..node_count`.
///
/// Edges are stored as ordered `(parent, child)` pairs. Construction rejects
/// self-loops, duplicate edges, out-of-range indices and directed cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dag {
    node_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Dag {
    pub fn new<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (p, c) in edges {
            if p >= node_count || c >= node_count {
                return Err(Error::InvalidArgument(format!(
                    "edge ({p}, {c}) out of range for {node_count} nodes"
                )));
            }
            if p == c {
                return Err(Error::InvalidArgument(format!("self-loop at node {p}")));
            }
            if !set.insert((p, c)) {
                return Err(Error::InvalidArgument(format!("duplicate edge ({p}, {c})")));
            }
        }
        let dag = Self { node_count, edges: set };
        if dag.topological_order().is_none() {
            return Err(Error::InvalidArgument("graph contains a directed cycle".into()));
        }
        Ok(dag)
    }

    /// An edgeless DAG.
    pub fn empty(node_count: usize) -> Self {
        Self { node_count, edges: BTreeSet::new() }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(parent, child)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, parent: usize, child: usize) -> bool {
        self.edges.contains(&(parent, child))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.has_edge(a, b) || self.has_edge(b, a)
    }

    pub fn parents(&self, node: usize) -> Vec<usize> {
        self.edges.iter().filter(|&&(_, c)| c == node).map(|&(p, _)| p).collect()
    }

    pub fn children(&self, node: usize) -> Vec<usize> {
        self.edges
            .range((node, 0)..(node, usize::MAX))
            .map(|&(_, c)| c)
            .collect()
    }

    /// Kahn topological order; `None` iff the edge set has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.node_count;
        let mut indeg = vec![0usize; n];
        for &(_, c) in &self.edges {
            indeg[c] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = queue.pop() {
            order.push(u);
            for v in self.children(u) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// All ancestors of the nodes in `seeds` (not including the seeds
    /// themselves unless reachable).
    pub fn ancestors_of_set(&self, seeds: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.node_count];
        let mut stack: Vec<usize> = seeds.to_vec();
        while let Some(u) = stack.pop() {
            for p in self.parents(u) {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }
}
