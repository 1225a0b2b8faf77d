//! Brute-force enumeration of the DAGs represented by a pattern.

use crate::error::{Error, Result};
use crate::graph::meek::meek_closure;
use crate::graph::{Dag, MixedGraph};

/// Default cap on the number of enumerated DAGs.
pub const DEFAULT_CLASS_SIZE_CAP: usize = 10_000;

/// Enumerates every DAG represented by `graph`, i.e. every acyclic
/// orientation of the pattern's undirected edges that creates no unshielded
/// collider absent from the pattern. For a completed pattern this is exactly
/// the set of DAGs whose CPDAG equals the pattern.
///
/// Output order is deterministic: undirected edges are processed in ascending
/// `(i, j)` order and `i -> j` is tried before `j -> i`.
pub fn enumerate_dags(graph: &MixedGraph) -> Result<Vec<Dag>> {
    enumerate_dags_capped(graph, DEFAULT_CLASS_SIZE_CAP)
}

pub fn enumerate_dags_capped(graph: &MixedGraph, cap: usize) -> Result<Vec<Dag>> {
    if !graph.is_chain_graph() {
        return Err(Error::InvalidArgument(
            "pattern contains a semi-directed cycle".into(),
        ));
    }
    let closed = meek_closure(graph)?;
    let free: Vec<(usize, usize)> = closed.undirected_edges().collect();
    let mut out = Vec::new();
    let mut work = closed.clone();
    extend(&mut work, &closed, &free, 0, cap, &mut out)?;
    Ok(out)
}

fn extend(
    g: &mut MixedGraph,
    pattern: &MixedGraph,
    free: &[(usize, usize)],
    next: usize,
    cap: usize,
    out: &mut Vec<Dag>,
) -> Result<()> {
    if next == free.len() {
        if out.len() >= cap {
            return Err(Error::ClassTooLarge { cap });
        }
        out.push(g.to_dag().expect("all edges oriented and acyclic"));
        return Ok(());
    }
    let (i, j) = free[next];
    for (parent, child) in [(i, j), (j, i)] {
        if orientation_admissible(g, pattern, parent, child) {
            g.orient(parent, child).expect("edge is undirected");
            extend(g, pattern, free, next + 1, cap, out)?;
            g.unorient(parent, child);
        }
    }
    Ok(())
}

/// Orienting `parent -> child` is admissible iff it closes no directed cycle
/// and forms no unshielded collider at `child` with an already-directed edge.
/// Both defects are permanent once introduced, so pruning here is safe.
fn orientation_admissible(
    g: &MixedGraph,
    pattern: &MixedGraph,
    parent: usize,
    child: usize,
) -> bool {
    for p in g.parents(child) {
        if p != parent && !pattern.adjacent(p, parent) {
            return false;
        }
    }
    !directed_path_exists(g, child, parent)
}

fn directed_path_exists(g: &MixedGraph, from: usize, to: usize) -> bool {
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        if seen[u] {
            continue;
        }
        seen[u] = true;
        stack.extend(g.children(u));
    }
    false
}
