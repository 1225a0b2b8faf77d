//! Mixed graphs with directed and undirected edge marks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Dag;

/// Graph whose edges are either directed `(parent, child)` pairs or
/// undirected `{a, b}` pairs (stored with the smaller index first).
///
/// A node pair carries at most one mark, and self-loops are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    node_count: usize,
    directed: BTreeSet<(usize, usize)>,
    undirected: BTreeSet<(usize, usize)>,
}

impl MixedGraph {
    pub fn new<D, U>(node_count: usize, directed: D, undirected: U) -> Result<Self>
    where
        D: IntoIterator<Item = (usize, usize)>,
        U: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(node_count);
        for (p, c) in directed {
            g.insert_directed(p, c)?;
        }
        for (a, b) in undirected {
            g.insert_undirected(a, b)?;
        }
        Ok(g)
    }

    pub fn empty(node_count: usize) -> Self {
        Self { node_count, directed: BTreeSet::new(), undirected: BTreeSet::new() }
    }

    /// Every edge of `dag`, kept directed.
    pub fn from_dag(dag: &Dag) -> Self {
        Self {
            node_count: dag.node_count(),
            directed: dag.edges().collect(),
            undirected: BTreeSet::new(),
        }
    }

    /// The skeleton of `dag`: every edge undirected.
    pub fn skeleton_of(dag: &Dag) -> Self {
        let mut g = Self::empty(dag.node_count());
        for (p, c) in dag.edges() {
            g.insert_undirected(p, c).expect("dag edges are simple");
        }
        g
    }

    fn check_new_pair(&self, a: usize, b: usize) -> Result<()> {
        if a >= self.node_count || b >= self.node_count {
            return Err(Error::InvalidArgument(format!(
                "edge ({a}, {b}) out of range for {} nodes",
                self.node_count
            )));
        }
        if a == b {
            return Err(Error::InvalidArgument(format!("self-loop at node {a}")));
        }
        if self.adjacent(a, b) {
            return Err(Error::InvalidArgument(format!(
                "pair ({a}, {b}) already carries an edge"
            )));
        }
        Ok(())
    }

    pub fn insert_directed(&mut self, parent: usize, child: usize) -> Result<()> {
        self.check_new_pair(parent, child)?;
        self.directed.insert((parent, child));
        Ok(())
    }

    pub fn insert_undirected(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_new_pair(a, b)?;
        self.undirected.insert((a.min(b), a.max(b)));
        Ok(())
    }

    /// Replaces the undirected edge `{parent, child}` with `parent -> child`.
    /// Fails if the pair is not currently undirected.
    pub fn orient(&mut self, parent: usize, child: usize) -> Result<()> {
        let key = (parent.min(child), parent.max(child));
        if !self.undirected.remove(&key) {
            return Err(Error::InvalidArgument(format!(
                "pair ({parent}, {child}) is not undirected"
            )));
        }
        self.directed.insert((parent, child));
        Ok(())
    }

    /// Replaces any edge on the pair `{a, b}` with an undirected one.
    pub fn unorient(&mut self, a: usize, b: usize) {
        if self.directed.remove(&(a, b)) || self.directed.remove(&(b, a)) {
            self.undirected.insert((a.min(b), a.max(b)));
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn directed_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.directed.iter().copied()
    }

    pub fn undirected_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.undirected.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.directed.len() + self.undirected.len()
    }

    pub fn has_directed(&self, parent: usize, child: usize) -> bool {
        self.directed.contains(&(parent, child))
    }

    pub fn has_undirected(&self, a: usize, b: usize) -> bool {
        self.undirected.contains(&(a.min(b), a.max(b)))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.has_directed(a, b) || self.has_directed(b, a) || self.has_undirected(a, b)
    }

    pub fn parents(&self, node: usize) -> Vec<usize> {
        self.directed.iter().filter(|&&(_, c)| c == node).map(|&(p, _)| p).collect()
    }

    pub fn children(&self, node: usize) -> Vec<usize> {
        self.directed
            .range((node, 0)..(node, usize::MAX))
            .map(|&(_, c)| c)
            .collect()
    }

    pub fn undirected_neighbors(&self, node: usize) -> Vec<usize> {
        self.undirected
            .iter()
            .filter_map(|&(a, b)| {
                if a == node {
                    Some(b)
                } else if b == node {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        let mut out = self.parents(node);
        out.extend(self.children(node));
        out.extend(self.undirected_neighbors(node));
        out.sort_unstable();
        out
    }

    pub fn is_fully_directed(&self) -> bool {
        self.undirected.is_empty()
    }

    /// Converts a fully directed mixed graph into a `Dag`.
    pub fn to_dag(&self) -> Result<Dag> {
        if !self.is_fully_directed() {
            return Err(Error::InvalidArgument(
                "graph still contains undirected edges".into(),
            ));
        }
        Dag::new(self.node_count, self.directed.iter().copied())
    }

    /// True iff the directed part alone is acyclic.
    pub fn directed_part_is_acyclic(&self) -> bool {
        Dag::new(self.node_count, self.directed.iter().copied()).is_ok()
    }

    /// Connected components of the undirected subgraph; returns the component
    /// id per node and the component count.
    pub fn undirected_components(&self) -> (Vec<usize>, usize) {
        let n = self.node_count;
        let mut comp = vec![usize::MAX; n];
        let mut next = 0usize;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for w in self.undirected_neighbors(u) {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        (comp, next)
    }

    /// Chain components (maximal undirected-connected node sets), each sorted,
    /// in order of their smallest member. Singletons included.
    pub fn chain_components(&self) -> Vec<Vec<usize>> {
        let (comp, count) = self.undirected_components();
        let mut out = vec![Vec::new(); count];
        for (node, &c) in comp.iter().enumerate() {
            out[c].push(node);
        }
        out
    }

    /// True iff the graph contains no semi-directed cycle, i.e. no directed
    /// edge stays inside an undirected component and the component-level
    /// directed graph is acyclic.
    pub fn is_chain_graph(&self) -> bool {
        let (comp, count) = self.undirected_components();
        let mut comp_edges = BTreeSet::new();
        for &(p, c) in &self.directed {
            if comp[p] == comp[c] {
                return false;
            }
            comp_edges.insert((comp[p], comp[c]));
        }
        Dag::new(count, comp_edges).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marks_are_exclusive() {
        let mut g = MixedGraph::empty(3);
        g.insert_directed(0, 1).unwrap();
        assert!(g.insert_undirected(0, 1).is_err());
        assert!(g.insert_directed(1, 0).is_err());
        g.insert_undirected(1, 2).unwrap();
        assert!(g.has_undirected(2, 1));
    }

    #[test]
    fn orient_and_unorient() {
        let mut g = MixedGraph::new(3, [], [(0, 1)]).unwrap();
        g.orient(1, 0).unwrap();
        assert!(g.has_directed(1, 0));
        g.unorient(0, 1);
        assert!(g.has_undirected(0, 1));
    }

    #[test]
    fn dag_is_chain_graph() {
        let dag = Dag::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(MixedGraph::from_dag(&dag).is_chain_graph());
    }

    #[test]
    fn semi_directed_cycle_detected() {
        // a -> b, b -- c, c -- a
        let g = MixedGraph::new(3, [(0, 1)], [(1, 2), (2, 0)]).unwrap();
        assert!(!g.is_chain_graph());
    }

    #[test]
    fn component_level_cycle_detected() {
        // {0,1} and {2,3} linked 0->2 and 3->1
        let g = MixedGraph::new(4, [(0, 2), (3, 1)], [(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_chain_graph());
    }

    #[test]
    fn chain_components_sorted() {
        let g = MixedGraph::new(5, [(0, 2)], [(2, 3), (1, 4)]).unwrap();
        assert_eq!(g.chain_components(), vec![vec![0], vec![1, 4], vec![2, 3]]);
    }
}
