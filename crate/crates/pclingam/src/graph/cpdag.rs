//! Completed patterns of d-separation-equivalence classes.

use crate::graph::meek::meek_closure;
use crate::graph::{Dag, MixedGraph};

/// The completed pattern (CPDAG) of the d-separation-equivalence class of
/// `dag`: skeleton plus unshielded colliders, closed under the Meek rules.
/// Directed edges are exactly those oriented identically in every equivalent
/// DAG.
pub fn cpdag_from_dag(dag: &Dag) -> MixedGraph {
    let mut g = MixedGraph::skeleton_of(dag);
    for y in 0..dag.node_count() {
        let parents = dag.parents(y);
        for (i, &a) in parents.iter().enumerate() {
            for &b in &parents[i + 1..] {
                if !dag.adjacent(a, b) {
                    if !g.has_directed(a, y) {
                        g.orient(a, y).expect("skeleton edge");
                    }
                    if !g.has_directed(b, y) {
                        g.orient(b, y).expect("skeleton edge");
                    }
                }
            }
        }
    }
    meek_closure(&g).expect("orientations taken from a DAG are consistent")
}
