//! Dominator trees, flow-graph bridges, strong articulation points and strong
//! bridges.

use crate::error::{Error, Result};
use crate::graph::{scc, scc_without_vertex, Digraph, EdgeId, Vertex, NONE};
use crate::tree::RootedTree;

/// The dominator tree `D(s)` of a flow graph. `parent(w)` is the immediate
/// dominator of `w`.
pub type DominatorTree = RootedTree;

/// Computes the dominator tree of `g` rooted at `s` with the Lengauer-Tarjan
/// algorithm (simple path compression, iterative).
pub fn dominator_tree(g: &Digraph, s: Vertex) -> Result<DominatorTree> {
    g.check_vertex(s)?;
    let n = g.n();

    // DFS numbering
    let mut num = vec![NONE; n];
    let mut vertex = Vec::with_capacity(n);
    let mut dfs_parent = Vec::with_capacity(n);
    let mut stack: Vec<(Vertex, usize)> = vec![(s, 0)];
    num[s] = 0;
    vertex.push(s);
    dfs_parent.push(NONE);
    while let Some(top) = stack.last_mut() {
        let (v, pos) = *top;
        let succ = g.successors(v);
        if pos < succ.len() {
            top.1 += 1;
            let w = succ[pos];
            if num[w] == NONE {
                num[w] = vertex.len();
                vertex.push(w);
                dfs_parent.push(num[v]);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    if vertex.len() < n {
        let missing = (0..n).find(|&v| num[v] == NONE).unwrap_or(NONE);
        return Err(Error::Unreachable { vertex: missing, start: s });
    }

    let mut semi: Vec<usize> = (0..n).collect();
    let mut label: Vec<usize> = (0..n).collect();
    let mut ancestor = vec![NONE; n];
    let mut idom = vec![NONE; n];
    let mut bucket_head = vec![NONE; n];
    let mut bucket_next = vec![NONE; n];
    let mut path = Vec::new();

    let eval = |v: usize, ancestor: &mut [usize], label: &mut [usize], semi: &[usize], path: &mut Vec<usize>| {
        if ancestor[v] == NONE {
            return v;
        }
        let mut x = v;
        while ancestor[ancestor[x]] != NONE {
            path.push(x);
            x = ancestor[x];
        }
        while let Some(y) = path.pop() {
            let a = ancestor[y];
            if semi[label[a]] < semi[label[y]] {
                label[y] = label[a];
            }
            ancestor[y] = ancestor[a];
        }
        label[v]
    };

    for w in (1..n).rev() {
        for &pv in g.predecessors(vertex[w]) {
            let v = num[pv];
            let u = eval(v, &mut ancestor, &mut label, &semi, &mut path);
            if semi[u] < semi[w] {
                semi[w] = semi[u];
            }
        }
        let sw = semi[w];
        bucket_next[w] = bucket_head[sw];
        bucket_head[sw] = w;
        let p = dfs_parent[w];
        ancestor[w] = p;
        let mut v = bucket_head[p];
        bucket_head[p] = NONE;
        while v != NONE {
            let u = eval(v, &mut ancestor, &mut label, &semi, &mut path);
            idom[v] = if semi[u] < semi[v] { u } else { p };
            v = bucket_next[v];
        }
    }
    for w in 1..n {
        if idom[w] != semi[w] {
            idom[w] = idom[idom[w]];
        }
    }

    let mut parent = vec![NONE; n];
    for w in 1..n {
        parent[vertex[w]] = vertex[idom[w]];
    }
    RootedTree::from_parents(s, parent)
}

/// Bridges of the flow graph `G(s)`: edges lying on every path from `s` to
/// their head. `t` must be the dominator tree of `g` rooted at `s`.
///
/// `(d(w), w)` is a bridge iff it is the only edge entering `w` from a vertex
/// that is not a proper descendant of `w`.
pub fn flow_graph_bridges(g: &Digraph, t: &DominatorTree) -> Vec<EdgeId> {
    let mut out = Vec::new();
    for w in 0..g.n() {
        if w == t.root() {
            continue;
        }
        let mut entry = NONE;
        let mut count = 0;
        for (&x, &e) in g.predecessors(w).iter().zip(g.in_edge_ids(w)) {
            if !t.is_ancestor(w, x) {
                count += 1;
                entry = e;
                if count > 1 {
                    break;
                }
            }
        }
        if count == 1 {
            debug_assert_eq!(Some(g.edge(entry).0), t.parent(w));
            out.push(entry);
        }
    }
    out.sort_unstable();
    out
}

/// Strong articulation points and strong bridges of a strongly connected
/// digraph, both sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongCutSet {
    pub articulation_points: Vec<Vertex>,
    pub strong_bridges: Vec<EdgeId>,
}

impl StrongCutSet {
    pub fn is_articulation_point(&self, v: Vertex) -> bool {
        self.articulation_points.binary_search(&v).is_ok()
    }

    pub fn is_strong_bridge(&self, e: EdgeId) -> bool {
        self.strong_bridges.binary_search(&e).is_ok()
    }
}

/// Computes the strong cut set from vertex 0.
pub fn strong_cut_set(g: &Digraph) -> Result<StrongCutSet> {
    strong_cut_set_from(g, 0)
}

/// Strong bridges of a graph in which every vertex is reachable from the
/// root of `d` (the dominator tree of `g`), in both `g` and its reverse.
/// Reports `NotStronglyConnected` otherwise.
pub(crate) fn strong_bridges_with(g: &Digraph, d: &DominatorTree) -> Result<Vec<EdgeId>> {
    let rev = g.reverse();
    let dr = dominator_tree(&rev, d.root()).map_err(|_| Error::NotStronglyConnected)?;
    let mut bridges = flow_graph_bridges(g, d);
    bridges.extend(flow_graph_bridges(&rev, &dr));
    bridges.sort_unstable();
    bridges.dedup();
    Ok(bridges)
}

/// Computes the strong cut set using `s` as the root of both dominator trees.
pub fn strong_cut_set_from(g: &Digraph, s: Vertex) -> Result<StrongCutSet> {
    if g.n() == 0 {
        return Ok(StrongCutSet { articulation_points: Vec::new(), strong_bridges: Vec::new() });
    }
    g.check_vertex(s)?;
    if scc(g).count() != 1 {
        return Err(Error::NotStronglyConnected);
    }
    let rev = g.reverse();
    let d = dominator_tree(g, s)?;
    let dr = dominator_tree(&rev, s)?;
    let mut is_ap = vec![false; g.n()];
    for v in 0..g.n() {
        if v != s && (!d.is_leaf(v) || !dr.is_leaf(v)) {
            is_ap[v] = true;
        }
    }
    if scc_without_vertex(g, s).count() > 1 {
        is_ap[s] = true;
    }
    let mut bridges = flow_graph_bridges(g, &d);
    bridges.extend(flow_graph_bridges(&rev, &dr));
    bridges.sort_unstable();
    bridges.dedup();
    Ok(StrongCutSet { articulation_points: (0..g.n()).filter(|&v| is_ap[v]).collect(), strong_bridges: bridges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bi3, cyc3, path3};
    use crate::oracle::{brute_immediate_dominators, brute_strong_cut_set};
    use crate::random::random_flow_graph;
    use crate::random::random_strongly_connected;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_examples() {
        let t = dominator_tree(&cyc3(), 0).unwrap();
        assert_eq!(t.parent(1), Some(0));
        assert_eq!(t.parent(2), Some(1));
        let t = dominator_tree(&bi3(), 0).unwrap();
        assert_eq!(t.parent(1), Some(0));
        assert_eq!(t.parent(2), Some(0));
    }

    #[test]
    fn unreachable_is_reported() {
        let g = Digraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(dominator_tree(&g, 0), Err(Error::Unreachable { vertex: 2, start: 0 }));
    }

    #[test]
    fn bridges_of_examples() {
        let g = cyc3();
        let t = dominator_tree(&g, 0).unwrap();
        let b: Vec<_> = flow_graph_bridges(&g, &t).into_iter().map(|e| g.edge(e)).collect();
        assert_eq!(b, vec![(0, 1), (1, 2)]);
        let g = bi3();
        let t = dominator_tree(&g, 0).unwrap();
        assert!(flow_graph_bridges(&g, &t).is_empty());
    }

    #[test]
    fn cut_sets_of_examples() {
        let g = path3();
        let c = strong_cut_set(&g).unwrap();
        assert_eq!(c.articulation_points, vec![1]);
        assert_eq!(c.strong_bridges.len(), 4);
        let c = strong_cut_set(&bi3()).unwrap();
        assert!(c.articulation_points.is_empty());
        assert!(c.strong_bridges.is_empty());
        let g = Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(strong_cut_set(&g), Err(Error::NotStronglyConnected));
    }

    #[test]
    fn matches_removal_oracles() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=24);
            let m = rng.gen_range(0..=3 * n);
            let g = random_flow_graph(&mut rng, n, m);
            let t = dominator_tree(&g, 0).unwrap();
            let brute = brute_immediate_dominators(&g, 0);
            for w in 1..n {
                assert_eq!(t.parent(w), Some(brute[w]), "idom of {w}");
            }
            let bridges = flow_graph_bridges(&g, &t);
            for e in 0..g.m() {
                let reach = crate::graph::reachable_from(&g, 0, None, Some(e));
                let is_bridge = reach.iter().any(|&r| !r);
                assert_eq!(bridges.binary_search(&e).is_ok(), is_bridge, "edge {e}");
            }
        }
    }

    #[test]
    fn cut_set_matches_brute_force_for_every_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(2..=24);
            let m = rng.gen_range(n..=3 * n);
            let g = random_strongly_connected(&mut rng, n, m);
            let brute = brute_strong_cut_set(&g);
            for _ in 0..5 {
                let s = rng.gen_range(0..n);
                assert_eq!(strong_cut_set_from(&g, s).unwrap(), brute);
            }
        }
    }
}
