//! d-separation by reachability over active trails.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Dag;

/// True iff every path between `x` and `y` is blocked given `cond`.
///
/// Standard two-phase reachability: first collect the ancestors of the
/// conditioning set, then breadth-first search over (node, trail direction)
/// states, where a collider may only be passed downward-in/upward-out when it
/// or one of its descendants is conditioned on.
pub fn d_separated(dag: &Dag, x: usize, y: usize, cond: &[usize]) -> Result<bool> {
    let n = dag.node_count();
    for &v in [x, y].iter().chain(cond) {
        if v >= n {
            return Err(Error::InvalidArgument(format!("node {v} out of range")));
        }
    }
    if x == y {
        return Err(Error::InvalidArgument("x and y must differ".into()));
    }
    if cond.contains(&x) || cond.contains(&y) {
        return Err(Error::InvalidArgument(
            "conditioning set must not contain x or y".into(),
        ));
    }

    let mut in_cond = vec![false; n];
    for &z in cond {
        in_cond[z] = true;
    }
    // cond plus all its ancestors: nodes at which a collider is active
    let mut anc_cond = dag.ancestors_of_set(cond);
    for &z in cond {
        anc_cond[z] = true;
    }

    // (node, entered-from-child?)
    let mut visited = vec![[false; 2]; n];
    let mut queue = VecDeque::new();
    queue.push_back((x, true));
    while let Some((v, from_child)) = queue.pop_front() {
        let dir = usize::from(from_child);
        if visited[v][dir] {
            continue;
        }
        visited[v][dir] = true;
        if v == y {
            return Ok(false);
        }
        if from_child {
            if !in_cond[v] {
                for p in dag.parents(v) {
                    queue.push_back((p, true));
                }
                for c in dag.children(v) {
                    queue.push_back((c, false));
                }
            }
        } else {
            if !in_cond[v] {
                for c in dag.children(v) {
                    queue.push_back((c, false));
                }
            }
            if anc_cond[v] {
                // collider at v is open
                for p in dag.parents(v) {
                    queue.push_back((p, true));
                }
            }
        }
    }
    Ok(true)
}
