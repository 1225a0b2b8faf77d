//! PC-style estimation of the d-separation-equivalence pattern.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::data::Dataset;
use crate::discovery::DiscoveryConfig;
use crate::error::{Error, Result};
use crate::graph::{meek_closure, MixedGraph};
use crate::stats::ci_test;

/// PC pattern search: skeleton by conditional-independence pruning with
/// adjacency-restricted conditioning sets of growing size, unshielded-collider
/// orientation from the recorded separating sets, then Meek closure.
pub fn pc_pattern(data: &Dataset, config: &DiscoveryConfig) -> Result<MixedGraph> {
    pc_pattern_with_repairs(data, config).map(|(pattern, _)| pattern)
}

/// Like [`pc_pattern`], also reporting how many finite-sample orientation
/// conflicts had to be repaired by un-orienting an edge.
pub fn pc_pattern_with_repairs(
    data: &Dataset,
    config: &DiscoveryConfig,
) -> Result<(MixedGraph, usize)> {
    config.validate()?;
    let n = data.n_vars();
    if data.n_samples() <= n + 3 {
        return Err(Error::InsufficientData { needed: n + 4, got: data.n_samples() });
    }
    let mut independent =
        |i: usize, j: usize, cond: &[usize]| Ok(ci_test(data, i, j, cond, config.ci_alpha)?.independent);
    pc_from_ci(n, &mut independent, config)
}

/// The PC search driven by an arbitrary conditional-independence decision.
/// With perfect decisions (d-separation in the generating DAG) this returns
/// exactly that DAG's completed pattern.
pub fn pc_from_ci<F>(
    n: usize,
    independent: &mut F,
    config: &DiscoveryConfig,
) -> Result<(MixedGraph, usize)>
where
    F: FnMut(usize, usize, &[usize]) -> Result<bool>,
{
    let (skeleton, sepsets) = pc_skeleton(n, independent, config)?;
    let oriented = orient_colliders(n, &skeleton, &sepsets);
    Ok(repair_and_close(oriented))
}

type SepSets = BTreeMap<(usize, usize), Vec<usize>>;

fn pc_skeleton<F>(
    n: usize,
    independent: &mut F,
    config: &DiscoveryConfig,
) -> Result<(Vec<BTreeSet<usize>>, SepSets)>
where
    F: FnMut(usize, usize, &[usize]) -> Result<bool>,
{
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).collect())
        .collect();
    let mut sepsets = SepSets::new();
    let max_depth = config.max_cond_size.unwrap_or(n.saturating_sub(2));

    for depth in 0..=max_depth {
        let mut any_candidate = false;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| adj[i].contains(&j))
            .collect();
        for (i, j) in pairs {
            if !adj[i].contains(&j) {
                continue; // removed earlier at this depth
            }
            let mut separated = None;
            'sides: for (a, b) in [(i, j), (j, i)] {
                let candidates: Vec<usize> =
                    adj[a].iter().copied().filter(|&v| v != b).collect();
                if candidates.len() < depth {
                    continue;
                }
                any_candidate = true;
                for cond in combinations(&candidates, depth) {
                    if independent(i, j, &cond)? {
                        separated = Some(cond);
                        break 'sides;
                    }
                }
            }
            if let Some(cond) = separated {
                adj[i].remove(&j);
                adj[j].remove(&i);
                sepsets.insert((i, j), cond);
            }
        }
        if !any_candidate {
            break;
        }
    }
    Ok((adj, sepsets))
}

/// All `k`-subsets of `items` in lexicographic order.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for idx in start..items.len() {
            if items.len() - idx < k - current.len() {
                break;
            }
            current.push(items[idx]);
            rec(items, k, idx + 1, current, out);
            current.pop();
        }
    }
    rec(items, k, 0, &mut current, &mut out);
    out
}

/// Orients each unshielded triple i - k - j with k outside sepset(i, j) as a
/// collider. Contradictory demands on one edge cancel out (the edge is left
/// undirected).
fn orient_colliders(n: usize, adj: &[BTreeSet<usize>], sepsets: &SepSets) -> MixedGraph {
    let mut demands: BTreeSet<(usize, usize)> = BTreeSet::new();
    for k in 0..n {
        let nbrs: Vec<usize> = adj[k].iter().copied().collect();
        for (a, &i) in nbrs.iter().enumerate() {
            for &j in &nbrs[a + 1..] {
                if adj[i].contains(&j) {
                    continue; // shielded
                }
                let sep = sepsets.get(&(i.min(j), i.max(j))).expect("removed pair has a sepset");
                if !sep.contains(&k) {
                    demands.insert((i, k));
                    demands.insert((j, k));
                }
            }
        }
    }
    let mut g = MixedGraph::empty(n);
    for i in 0..n {
        for &j in adj[i].range((i + 1)..) {
            g.insert_undirected(i, j).expect("skeleton pair");
        }
    }
    for &(a, b) in &demands {
        if !demands.contains(&(b, a)) {
            g.orient(a, b).expect("skeleton edge is undirected");
        }
    }
    g
}

/// Closes the graph under the Meek rules, un-orienting edges until the
/// closure is consistent and a chain graph. Each repair drops one directed
/// edge, so this terminates; a fully undirected graph always succeeds.
fn repair_and_close(mut work: MixedGraph) -> (MixedGraph, usize) {
    let mut repairs = 0usize;
    loop {
        match meek_closure(&work) {
            Ok(closed) => {
                if closed.is_chain_graph() {
                    return (closed, repairs);
                }
                let edge = chain_violation_edge(&closed).expect("non-chain graph has one");
                unorient_cause(&mut work, edge);
                repairs += 1;
            }
            Err(Error::InconsistentOrientation { a, b }) => {
                unorient_cause(&mut work, (a, b));
                repairs += 1;
            }
            Err(_) => unreachable!("meek_closure only reports inconsistencies"),
        }
    }
}

/// A deterministic directed edge witnessing a semi-directed cycle.
fn chain_violation_edge(g: &MixedGraph) -> Option<(usize, usize)> {
    let (comp, count) = g.undirected_components();
    if let Some(e) = g.directed_edges().find(|&(p, c)| comp[p] == comp[c]) {
        return Some(e);
    }
    // component-level cycle: peel sink/source-free components Kahn-style
    let mut indeg = vec![0usize; count];
    for (p, c) in g.directed_edges() {
        if comp[p] != comp[c] {
            indeg[comp[c]] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..count).filter(|&k| indeg[k] == 0).collect();
    let mut removed = vec![false; count];
    while let Some(x) = queue.pop() {
        removed[x] = true;
        for (p, c) in g.directed_edges() {
            if comp[p] == x && comp[c] != x {
                indeg[comp[c]] -= 1;
                if indeg[comp[c]] == 0 {
                    queue.push(comp[c]);
                }
            }
        }
    }
    g.directed_edges().find(|&(p, c)| !removed[comp[p]] && !removed[comp[c]])
}

/// Un-orients the directed edge behind a conflict: the edge itself if it is
/// directed in `work`, otherwise the smallest directed edge touching it,
/// otherwise the smallest directed edge overall.
fn unorient_cause(work: &mut MixedGraph, (a, b): (usize, usize)) {
    if work.has_directed(a, b) || work.has_directed(b, a) {
        work.unorient(a, b);
        return;
    }
    let target = work
        .directed_edges()
        .find(|&(p, c)| p == a || p == b || c == a || c == b)
        .or_else(|| work.directed_edges().next())
        .expect("a conflicting graph has a directed edge");
    work.unorient(target.0, target.1);
}
