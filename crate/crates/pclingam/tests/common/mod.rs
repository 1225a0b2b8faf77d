//! Shared brute-force oracles for the integration suites. Everything here is
//! deliberately naive and independent of the library's algorithms.

#![allow(dead_code)]

use pclingam::graph::{Dag, MixedGraph, NgDag};

/// Every labeled DAG on `n` nodes, by trying all 3^(n choose 2) mark
/// assignments and keeping the acyclic ones.
pub fn all_dags(n: usize) -> Vec<Dag> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut edges = Vec::new();
        for &(i, j) in &pairs {
            match c % 3 {
                0 => {}
                1 => edges.push((i, j)),
                2 => edges.push((j, i)),
                _ => unreachable!(),
            }
            c /= 3;
        }
        if let Ok(dag) = Dag::new(n, edges) {
            out.push(dag);
        }
    }
    out
}

/// d-separation by exhaustive simple-path enumeration: a path is active given
/// `cond` iff every collider on it has itself or a descendant in `cond` and
/// every non-collider is outside `cond`.
pub fn dsep_by_paths(dag: &Dag, x: usize, y: usize, cond: &[usize]) -> bool {
    let n = dag.node_count();
    let mut in_cond = vec![false; n];
    for &z in cond {
        in_cond[z] = true;
    }
    // cond or an ancestor of cond: where a collider is active
    let mut collider_open = dag.ancestors_of_set(cond);
    for &z in cond {
        collider_open[z] = true;
    }
    let mut path = vec![x];
    let mut on_path = vec![false; n];
    on_path[x] = true;
    !exists_active_path(dag, y, &in_cond, &collider_open, &mut path, &mut on_path)
}

fn exists_active_path(
    dag: &Dag,
    target: usize,
    in_cond: &[bool],
    collider_open: &[bool],
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
) -> bool {
    let last = *path.last().unwrap();
    if last == target {
        return path_is_active(dag, path, in_cond, collider_open);
    }
    for next in 0..dag.node_count() {
        if !on_path[next] && dag.adjacent(last, next) {
            path.push(next);
            on_path[next] = true;
            let found = exists_active_path(dag, target, in_cond, collider_open, path, on_path);
            path.pop();
            on_path[next] = false;
            if found {
                return true;
            }
        }
    }
    false
}

fn path_is_active(dag: &Dag, path: &[usize], in_cond: &[bool], collider_open: &[bool]) -> bool {
    for w in path.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        let collider = dag.has_edge(a, b) && dag.has_edge(c, b);
        if collider {
            if !collider_open[b] {
                return false;
            }
        } else if in_cond[b] {
            return false;
        }
    }
    true
}

/// All conditioning sets over `0..n` excluding `x` and `y`, as bitmask order.
pub fn all_cond_sets(n: usize, x: usize, y: usize) -> Vec<Vec<usize>> {
    let others: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
    (0..(1usize << others.len()))
        .map(|mask| {
            others.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect()
        })
        .collect()
}

/// The full d-separation relation of `dag` as a flat boolean signature over
/// every (x, y, cond) query, computed with the path-enumeration oracle.
pub fn dsep_signature(dag: &Dag) -> Vec<bool> {
    let n = dag.node_count();
    let mut sig = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            for cond in all_cond_sets(n, x, y) {
                sig.push(dsep_by_paths(dag, x, y, &cond));
            }
        }
    }
    sig
}

/// The set of edges incident to a flagged node, oriented as in the ngDAG.
fn ng_incident_edges(ngdag: &NgDag) -> Vec<(usize, usize)> {
    ngdag
        .dag
        .edges()
        .filter(|&(a, b)| ngdag.ng[a] || ngdag.ng[b])
        .collect()
}

/// Ground-truth pattern of an ngDAG, straight from the definitions: the class
/// is every DAG with the same d-separation relation that agrees on all
/// edges incident to flagged nodes; a pair is directed in the pattern iff
/// every class member orients it the same way.
pub fn oracle_ngdag_pattern(ngdag: &NgDag, dags_with_sigs: &[(Dag, Vec<bool>)]) -> MixedGraph {
    let n = ngdag.node_count();
    let sig = dsep_signature(&ngdag.dag);
    let fixed = ng_incident_edges(ngdag);
    let class: Vec<&Dag> = dags_with_sigs
        .iter()
        .filter(|(_, s)| *s == sig)
        .map(|(d, _)| d)
        .filter(|d| {
            fixed.iter().all(|&(a, b)| d.has_edge(a, b))
                && ng_incident_edges(&NgDag::new((*d).clone(), ngdag.ng.clone()).unwrap())
                    .iter()
                    .all(|&(a, b)| ngdag.dag.has_edge(a, b))
        })
        .collect();
    assert!(!class.is_empty(), "the ngDAG itself is in its class");
    let mut pattern = MixedGraph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if !ngdag.dag.adjacent(i, j) {
                continue;
            }
            if class.iter().all(|d| d.has_edge(i, j)) {
                pattern.insert_directed(i, j).unwrap();
            } else if class.iter().all(|d| d.has_edge(j, i)) {
                pattern.insert_directed(j, i).unwrap();
            } else {
                pattern.insert_undirected(i, j).unwrap();
            }
        }
    }
    pattern
}

/// Ground-truth CPDAG: the all-Gaussian special case of the oracle pattern.
pub fn oracle_cpdag(dag: &Dag, dags_with_sigs: &[(Dag, Vec<bool>)]) -> MixedGraph {
    let ngdag = NgDag::new(dag.clone(), vec![false; dag.node_count()]).unwrap();
    oracle_ngdag_pattern(&ngdag, dags_with_sigs)
}

pub fn dags_with_signatures(n: usize) -> Vec<(Dag, Vec<bool>)> {
    all_dags(n).into_iter().map(|d| { let s = dsep_signature(&d); (d, s) }).collect()
}
