//! Auxiliary graphs: for a non-leaf `r` of a dominator tree `D(s)`, the graph
//! `G_r` keeps `r` and its descendants down to three levels, contracts every
//! non-descendant of `r` into `r`, and contracts the subtree of every
//! level-three descendant into that descendant. Loops are dropped and
//! parallel edges merged.

use crate::dominators::DominatorTree;
use crate::graph::{Digraph, EdgeId, Vertex, NONE};

/// One auxiliary graph `G_r`. Local vertex 0 is `r`, followed by the
/// descendants of `r` at depths one, two and three, level by level.
#[derive(Clone, Debug)]
pub struct AuxiliaryGraph {
    root: Vertex,
    vertices: Vec<Vertex>,
    graph: Digraph,
    edge_origin: Vec<EdgeId>,
    ordinary_end: usize,
    root_ordinary: bool,
}

impl AuxiliaryGraph {
    /// `r`, as a vertex of the parent graph.
    pub fn root(&self) -> Vertex {
        self.root
    }

    /// The contracted graph on local ids.
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// Parent-graph vertex of each local vertex.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    #[inline]
    pub fn to_parent(&self, local: Vertex) -> Vertex {
        self.vertices[local]
    }

    /// For each local edge, a parent-graph edge it was derived from.
    pub fn edge_origin(&self) -> &[EdgeId] {
        &self.edge_origin
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    /// Ordinary vertices are the descendants at depth one and two, plus the
    /// root when `r` is the root of the dominator tree.
    #[inline]
    pub fn is_ordinary(&self, local: Vertex) -> bool {
        (local == 0 && self.root_ordinary) || (local >= 1 && local < self.ordinary_end)
    }

    /// Local ids of the ordinary vertices, ascending.
    pub fn ordinary(&self) -> impl Iterator<Item = Vertex> + '_ {
        let start = if self.root_ordinary { 0 } else { 1 };
        start..self.ordinary_end
    }
}

/// All auxiliary graphs of one flow graph, with the lookup tables that map
/// parent vertices to local ids.
#[derive(Clone, Debug)]
pub struct AuxiliaryGraphs {
    graphs: Vec<AuxiliaryGraph>,
    index_of: Vec<usize>,
    loc: Vec<[usize; 4]>,
}

impl AuxiliaryGraphs {
    pub fn graphs(&self) -> &[AuxiliaryGraph] {
        &self.graphs
    }

    pub fn into_graphs(self) -> Vec<AuxiliaryGraph> {
        self.graphs
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Index of `G_r`, if `r` is not a leaf.
    #[inline]
    pub fn index_of(&self, r: Vertex) -> Option<usize> {
        let i = self.index_of[r];
        (i != NONE).then_some(i)
    }

    pub fn get(&self, r: Vertex) -> Option<&AuxiliaryGraph> {
        self.index_of(r).map(|i| &self.graphs[i])
    }

    /// Local id of `x` in the graph of its `k`-th dominator-tree ancestor
    /// (`k` in `0..4`), or `NONE` if that graph does not exist.
    #[inline]
    pub fn local(&self, x: Vertex, k: usize) -> usize {
        self.loc[x][k]
    }

    pub fn total_vertices(&self) -> usize {
        self.graphs.iter().map(AuxiliaryGraph::n).sum()
    }

    pub fn total_edges(&self) -> usize {
        self.graphs.iter().map(AuxiliaryGraph::m).sum()
    }
}

/// Builds `G_r` for every non-leaf `r` of `t`, the dominator tree of `g`
/// from `t.root()`. Graphs are listed in preorder of their roots. O(m).
pub fn build_auxiliary_graphs(g: &Digraph, t: &DominatorTree) -> AuxiliaryGraphs {
    let n = g.n();
    let s = t.root();
    let mut index_of = vec![NONE; n];
    let mut loc = vec![[NONE; 4]; n];
    let mut vertex_lists = Vec::new();
    let mut ordinary_ends = Vec::new();
    for &r in t.preorder() {
        if t.is_leaf(r) {
            continue;
        }
        index_of[r] = vertex_lists.len();
        let mut vs = vec![r];
        loc[r][0] = 0;
        let mut level_start = 0;
        let mut ordinary_end = 1;
        for k in 1..=3 {
            let level_end = vs.len();
            for i in level_start..level_end {
                for &c in t.children(vs[i]) {
                    loc[c][k] = vs.len();
                    vs.push(c);
                }
            }
            level_start = level_end;
            if k == 2 {
                ordinary_end = vs.len();
            }
        }
        vertex_lists.push(vs);
        ordinary_ends.push(ordinary_end);
    }
    let count = vertex_lists.len();

    // low(w): smallest tag over edges leaving the subtree of w, where the tag
    // of (u, v) is the preorder number of the nearest common ancestor.
    let mut low = vec![NONE; n];
    let mut low_edge = vec![NONE; n];
    for u in 0..n {
        for (&v, &e) in g.successors(u).iter().zip(g.out_edge_ids(u)) {
            let tag = if t.is_ancestor(u, v) {
                t.pre(u)
            } else if t.is_ancestor(v, u) {
                t.pre(v)
            } else {
                t.pre(t.parent(v).expect("non-root vertex"))
            };
            if tag < low[u] {
                low[u] = tag;
                low_edge[u] = e;
            }
        }
    }
    for &w in t.preorder().iter().rev() {
        if let Some(p) = t.parent(w) {
            if low[w] < low[p] {
                low[p] = low[w];
                low_edge[p] = low_edge[w];
            }
        }
    }

    let enumerate = |emit: &mut dyn FnMut(usize, usize, usize, EdgeId)| {
        let mut stack: Vec<Vertex> = Vec::new();
        for &u in t.preorder() {
            let du = t.depth(u);
            stack.truncate(du);
            stack.push(u);
            for (&v, &e) in g.successors(u).iter().zip(g.out_edge_ids(u)) {
                // graphs of v and of its ancestors up to three levels above
                let mut r = v;
                for k in 0..=3 {
                    if k > 0 {
                        match t.parent(r) {
                            Some(p) => r = p,
                            None => break,
                        }
                    }
                    let gi = index_of[r];
                    if gi == NONE {
                        continue;
                    }
                    let lu = if !t.is_ancestor(r, u) {
                        0
                    } else {
                        let dist = du - t.depth(r);
                        if dist <= 3 {
                            loc[u][dist]
                        } else {
                            loc[stack[t.depth(r) + 3]][3]
                        }
                    };
                    let lv = loc[v][k];
                    if lu != lv {
                        emit(gi, lu, lv, e);
                    }
                }
                // edges leaving the subtree of one of u's three nearest ancestors
                let mut r = u;
                for k in 1..=3 {
                    match t.parent(r) {
                        Some(p) => r = p,
                        None => break,
                    }
                    if !t.is_ancestor(r, v) {
                        emit(index_of[r], loc[u][k], 0, e);
                    }
                }
            }
        }
        // edges leaving the subtree of r from deep inside a level-three subtree
        for &w in t.preorder() {
            if t.depth(w) < 3 {
                continue;
            }
            let r = t.parent(t.parent(t.parent(w).unwrap()).unwrap()).unwrap();
            if low[w] < t.pre(r) {
                emit(index_of[r], loc[w][3], 0, low_edge[w]);
            }
        }
    };

    let mut off = vec![0usize; count + 1];
    enumerate(&mut |gi, _, _, _| off[gi + 1] += 1);
    for i in 0..count {
        off[i + 1] += off[i];
    }
    let total = off[count];
    let mut fill = off.clone();
    let mut tails = vec![0usize; total];
    let mut heads = vec![0usize; total];
    let mut origins = vec![0usize; total];
    enumerate(&mut |gi, lu, lv, e| {
        let p = fill[gi];
        tails[p] = lu;
        heads[p] = lv;
        origins[p] = e;
        fill[gi] += 1;
    });
    drop(fill);

    let mut stamp = vec![0usize; n];
    let mut token = 0usize;
    let mut bucket_off = Vec::new();
    let mut order = Vec::new();
    let mut graphs = Vec::with_capacity(count);
    for (gi, vertices) in vertex_lists.into_iter().enumerate() {
        let k = vertices.len();
        let range = off[gi]..off[gi + 1];
        // bucket this graph's edges by tail, then keep the first copy of each pair
        bucket_off.clear();
        bucket_off.resize(k + 1, 0);
        for p in range.clone() {
            bucket_off[tails[p] + 1] += 1;
        }
        for i in 0..k {
            bucket_off[i + 1] += bucket_off[i];
        }
        order.clear();
        order.resize(range.len(), 0);
        for p in range.clone() {
            let slot = &mut bucket_off[tails[p]];
            order[*slot] = p;
            *slot += 1;
        }
        let mut edges = Vec::with_capacity(range.len());
        let mut edge_origin = Vec::with_capacity(range.len());
        let mut prev_tail = NONE;
        for &p in &order {
            let (u, v) = (tails[p], heads[p]);
            if u != prev_tail {
                prev_tail = u;
                token += 1;
            }
            if stamp[v] != token {
                stamp[v] = token;
                edges.push((u, v));
                edge_origin.push(origins[p]);
            }
        }
        graphs.push(AuxiliaryGraph {
            root: vertices[0],
            graph: Digraph::from_edges_unchecked(k, edges),
            vertices,
            edge_origin,
            ordinary_end: ordinary_ends[gi],
            root_ordinary: index_of[s] == gi,
        });
    }
    AuxiliaryGraphs { graphs, index_of, loc }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dominators::dominator_tree;
    use crate::fixtures::{bi3, chain5};
    use crate::random::random_strongly_connected;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn global_edges(a: &AuxiliaryGraph) -> BTreeSet<(Vertex, Vertex)> {
        a.graph().edges().iter().map(|&(u, v)| (a.to_parent(u), a.to_parent(v))).collect()
    }

    #[test]
    fn chain_contraction() {
        let g = chain5();
        let t = dominator_tree(&g, 0).unwrap();
        let aux = build_auxiliary_graphs(&g, &t);
        let g1 = aux.get(1).unwrap();
        assert_eq!(g1.vertices(), &[1, 2, 3, 4]);
        let ord: Vec<_> = g1.ordinary().map(|l| g1.to_parent(l)).collect();
        assert_eq!(ord, vec![2, 3]);
        let want: BTreeSet<_> = [(1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3)].into_iter().collect();
        assert_eq!(global_edges(g1), want);
    }

    #[test]
    fn depth_one_tree_keeps_graph() {
        let g = bi3();
        let t = dominator_tree(&g, 0).unwrap();
        let aux = build_auxiliary_graphs(&g, &t);
        assert_eq!(aux.len(), 1);
        let g0 = aux.get(0).unwrap();
        assert_eq!(g0.ordinary().count(), 3);
        assert_eq!(global_edges(g0), g.edges().iter().copied().collect());
    }

    /// Contraction straight from the definition.
    fn contract(g: &Digraph, t: &DominatorTree, r: Vertex) -> BTreeSet<(Vertex, Vertex)> {
        let image = |x: Vertex| -> Vertex {
            if !t.is_ancestor(r, x) {
                return r;
            }
            let mut y = x;
            while t.depth(y) > t.depth(r) + 3 {
                y = t.parent(y).unwrap();
            }
            y
        };
        g.edges().iter().map(|&(u, v)| (image(u), image(v))).filter(|(a, b)| a != b).collect()
    }

    #[test]
    fn matches_contraction_and_size_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let n = rng.gen_range(2..=32);
            let m = rng.gen_range(n..=4 * n);
            let g = random_strongly_connected(&mut rng, n, m);
            let s = rng.gen_range(0..n);
            let t = dominator_tree(&g, s).unwrap();
            let aux = build_auxiliary_graphs(&g, &t);
            for a in aux.graphs() {
                assert_eq!(global_edges(a), contract(&g, &t, a.root()), "G_{}", a.root());
                assert_eq!(a.graph().dedup().0.m(), a.m());
                assert!(a.graph().is_strongly_connected());
                for (le, &e) in a.edge_origin().iter().enumerate() {
                    let (u, v) = g.edge(e);
                    let (lu, lv) = a.graph().edge(le);
                    assert!(t.is_ancestor(a.to_parent(lu), u) || (lu == 0 && !t.is_ancestor(a.root(), u)));
                    assert!(t.is_ancestor(a.to_parent(lv), v) || (lv == 0 && !t.is_ancestor(a.root(), v)));
                }
            }
            assert!(aux.total_vertices() <= 4 * n);
            assert!(aux.total_edges() <= 4 * g.m() + n);
        }
    }
}
