//! Meek orientation rules R1-R4.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::MixedGraph;

/// Applies rules R1-R4 to fixpoint. Only converts undirected edges to
/// directed ones; never removes or reverses an edge, hence idempotent.
///
/// Each pass collects every rule firing on the current graph before applying
/// any of them, so contradictory demands on one edge are detected rather than
/// silently resolved by application order. A directed cycle in the input or
/// in the closed graph is likewise reported as an inconsistency.
pub fn meek_closure(graph: &MixedGraph) -> Result<MixedGraph> {
    let mut g = graph.clone();
    if let Some((a, b)) = directed_cycle_edge(&g) {
        return Err(Error::InconsistentOrientation { a, b });
    }
    loop {
        let demands = collect_demands(&g);
        if demands.is_empty() {
            return Ok(g);
        }
        for &(a, b) in &demands {
            if demands.contains(&(b, a)) {
                return Err(Error::InconsistentOrientation { a: a.min(b), b: a.max(b) });
            }
        }
        for (a, b) in demands {
            g.orient(a, b).expect("demanded edge is undirected");
        }
        if let Some((a, b)) = directed_cycle_edge(&g) {
            return Err(Error::InconsistentOrientation { a, b });
        }
    }
}

fn collect_demands(g: &MixedGraph) -> BTreeSet<(usize, usize)> {
    let mut demands = BTreeSet::new();
    // R1: a -> b, b -- c, a and c nonadjacent  =>  b -> c
    for (a, b) in g.directed_edges() {
        for c in g.undirected_neighbors(b) {
            if c != a && !g.adjacent(a, c) {
                demands.insert((b, c));
            }
        }
    }
    for (a, b) in g.undirected_edges() {
        for (x, y) in [(a, b), (b, a)] {
            // R2: x -> w -> y and x -- y  =>  x -> y
            if g.children(x).iter().any(|&w| g.has_directed(w, y)) {
                demands.insert((x, y));
            }
            // R3: x -- c, x -- d, c -> y, d -> y, c and d nonadjacent  =>  x -> y
            let pa_y = g.parents(y);
            let und_x = g.undirected_neighbors(x);
            let linked: Vec<usize> =
                pa_y.iter().copied().filter(|&c| und_x.contains(&c)).collect();
            'r3: for (i, &c) in linked.iter().enumerate() {
                for &d in &linked[i + 1..] {
                    if !g.adjacent(c, d) {
                        demands.insert((x, y));
                        break 'r3;
                    }
                }
            }
            // R4: x -- c, c -> d, d -> y, c and y nonadjacent  =>  x -> y
            'r4: for &c in &und_x {
                if c == y || g.adjacent(c, y) {
                    continue;
                }
                for &d in &g.children(c) {
                    if g.has_directed(d, y) {
                        demands.insert((x, y));
                        break 'r4;
                    }
                }
            }
        }
    }
    demands
}

/// Some directed edge lying on a directed cycle, or `None` if acyclic.
/// Deterministic: the smallest such edge in `(parent, child)` order.
pub(crate) fn directed_cycle_edge(g: &MixedGraph) -> Option<(usize, usize)> {
    let n = g.node_count();
    let mut indeg = vec![0usize; n];
    for (_, c) in g.directed_edges() {
        indeg[c] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut removed = vec![false; n];
    while let Some(u) = queue.pop() {
        removed[u] = true;
        for v in g.children(u) {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push(v);
            }
        }
    }
    g.directed_edges().find(|&(p, c)| !removed[p] && !removed[c])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r1_orients_away_from_arrow() {
        // a -> b, b -- c, a !~ c  =>  b -> c
        let g = MixedGraph::new(3, [(0, 1)], [(1, 2)]).unwrap();
        let closed = meek_closure(&g).unwrap();
        assert!(closed.has_directed(1, 2));
    }

    #[test]
    fn r2_avoids_two_cycle() {
        // 0 -> 2 -> 1 and 0 -- 1  =>  0 -> 1
        let g = MixedGraph::new(3, [(0, 2), (2, 1)], [(0, 1)]).unwrap();
        let closed = meek_closure(&g).unwrap();
        assert!(closed.has_directed(0, 1));
    }

    #[test]
    fn r3_fires() {
        // 0 -- 1, 0 -- 2, 0 -- 3, 2 -> 1, 3 -> 1, 2 !~ 3  =>  0 -> 1
        let g = MixedGraph::new(4, [(2, 1), (3, 1)], [(0, 1), (0, 2), (0, 3)]).unwrap();
        let closed = meek_closure(&g).unwrap();
        assert!(closed.has_directed(0, 1));
    }

    #[test]
    fn r4_fires() {
        // 0 -- 1, 0 -- 2, 2 -> 3, 3 -> 1, 2 !~ 1; 0 ~ 3
        let g = MixedGraph::new(4, [(2, 3), (3, 1)], [(0, 1), (0, 2), (0, 3)]).unwrap();
        let closed = meek_closure(&g).unwrap();
        assert!(closed.has_directed(0, 1));
    }

    #[test]
    fn undirected_tree_unchanged() {
        let g = MixedGraph::new(4, [], [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(meek_closure(&g).unwrap(), g);
    }

    #[test]
    fn idempotent() {
        let g = MixedGraph::new(4, [(0, 1)], [(1, 2), (2, 3)]).unwrap();
        let once = meek_closure(&g).unwrap();
        assert!(once.is_fully_directed());
        let twice = meek_closure(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn square_with_inflow_has_no_extension() {
        // 0 -> 1 on an undirected chordless square: every orientation of
        // 3 -- 0 ends in a cycle or a new unshielded collider.
        let g = MixedGraph::new(4, [(0, 1)], [(1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(matches!(meek_closure(&g), Err(Error::InconsistentOrientation { .. })));
    }

    #[test]
    fn conflicting_demands_error() {
        // a -> b -- c <- d with a !~ c and d !~ b wants b -> c and c -> b
        let g = MixedGraph::new(4, [(0, 1), (3, 2)], [(1, 2)]).unwrap();
        assert!(matches!(
            meek_closure(&g),
            Err(Error::InconsistentOrientation { a: 1, b: 2 })
        ));
    }

    #[test]
    fn directed_cycle_input_error() {
        let g = MixedGraph::new(3, [(0, 1), (1, 2), (2, 0)], []).unwrap();
        assert!(matches!(meek_closure(&g), Err(Error::InconsistentOrientation { .. })));
    }
}
