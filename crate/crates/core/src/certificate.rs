//! Independent spanning trees and the sparse certificate.
//!
//! The trees are built one dominator-tree level at a time. For a vertex `p`
//! of `D(s)`, every edge entering a child `v` of `p` comes from `p` or from
//! the subtree of a sibling `c`; contracting sibling subtrees gives a flat
//! graph on `{p} ∪ C(p)` in which `p` dominates nothing but itself. The
//! children are then ordered so that each one has an in-neighbour below it
//! and one above it, with `p` counting as both ends of the order. Tree `B`
//! takes a lower in-neighbour as parent and tree `R` a higher one, so their
//! paths inside the level are disjoint.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dominators::{dominator_tree, flow_graph_bridges, DominatorTree};
use crate::embedding::{ConvexEmbedding, Row};
use crate::error::{Error, Result};
use crate::graph::{Digraph, EdgeId, SccLabeling, Vertex, NONE};
use crate::vrb::run_fast_vrb;

/// Levels with more free children than this try Gauss-Seidel first.
const DENSE_LIMIT: usize = 150;
const ORDER_ATTEMPTS: usize = 32;

/// Two spanning trees of a flow graph, as parent vertices and parent edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTreePair {
    pub root: Vertex,
    pub b_parent: Vec<Vertex>,
    pub b_edge: Vec<EdgeId>,
    pub r_parent: Vec<Vertex>,
    pub r_edge: Vec<EdgeId>,
}

impl SpanningTreePair {
    /// Appends the edge ids of both trees.
    pub fn push_edges(&self, out: &mut Vec<EdgeId>) {
        out.extend(self.b_edge.iter().chain(&self.r_edge).copied().filter(|&e| e != NONE));
    }

    /// Edges used by both trees, ascending.
    pub fn shared_edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = (0..self.b_edge.len())
            .filter(|&v| self.b_edge[v] != NONE && self.b_edge[v] == self.r_edge[v])
            .map(|v| self.b_edge[v])
            .collect();
        out.sort_unstable();
        out
    }
}

/// Two independent spanning trees of the flow graph `G(s)`.
pub fn independent_spanning_trees(g: &Digraph, s: Vertex) -> Result<SpanningTreePair> {
    let d = dominator_tree(g, s)?;
    independent_spanning_trees_with(g, &d)
}

struct Incoming {
    from: usize,
    edge: EdgeId,
}

/// As [`independent_spanning_trees`], reusing a dominator tree of `g`.
pub fn independent_spanning_trees_with(g: &Digraph, d: &DominatorTree) -> Result<SpanningTreePair> {
    let n = g.n();
    let s = d.root();
    // position of every vertex among its siblings
    let mut index = vec![NONE; n];
    for &p in d.preorder() {
        for (i, &c) in d.children(p).iter().enumerate() {
            index[c] = i;
        }
    }

    // derived in-edges of each vertex: `from` is a sibling index, or NONE for the parent
    let mut incoming: Vec<Vec<Incoming>> = (0..n).map(|_| Vec::new()).collect();
    let mut stack: Vec<Vertex> = Vec::new();
    for &u in d.preorder() {
        stack.truncate(d.depth(u));
        stack.push(u);
        for (&v, &e) in g.successors(u).iter().zip(g.out_edge_ids(u)) {
            let Some(p) = d.parent(v) else { continue };
            if u == p {
                incoming[v].push(Incoming { from: NONE, edge: e });
                continue;
            }
            let c = stack[d.depth(p) + 1];
            if c != v {
                incoming[v].push(Incoming { from: index[c], edge: e });
            }
        }
    }

    let mut pair = SpanningTreePair {
        root: s,
        b_parent: vec![NONE; n],
        b_edge: vec![NONE; n],
        r_parent: vec![NONE; n],
        r_edge: vec![NONE; n],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    for &p in d.preorder() {
        let kids = d.children(p);
        if kids.is_empty() {
            continue;
        }
        let pos = level_order(kids, &incoming, &mut rng)?;
        for (i, &v) in kids.iter().enumerate() {
            let mut low: Option<&Incoming> = None;
            let mut high: Option<&Incoming> = None;
            let mut from_parent: Vec<EdgeId> = Vec::new();
            for inc in &incoming[v] {
                if inc.from == NONE {
                    from_parent.push(inc.edge);
                } else if pos[inc.from] < pos[i] {
                    low = low.or(Some(inc));
                } else if pos[inc.from] > pos[i] {
                    high = high.or(Some(inc));
                }
            }
            let b = match low {
                Some(inc) => inc.edge,
                None => *from_parent.first().ok_or_else(|| Error::contract("no lower in-neighbour"))?,
            };
            let r = match high {
                Some(inc) => inc.edge,
                None => *from_parent
                    .get(usize::from(low.is_none() && from_parent.len() > 1))
                    .ok_or_else(|| Error::contract("no higher in-neighbour"))?,
            };
            pair.b_edge[v] = b;
            pair.b_parent[v] = g.edge(b).0;
            pair.r_edge[v] = r;
            pair.r_parent[v] = g.edge(r).0;
        }
    }
    Ok(pair)
}

/// Positions in (0, 1) for the children of one dominator-tree vertex such
/// that every child has an in-neighbour strictly below and one strictly
/// above, where the parent sits at both 0 and 1.
fn level_order(kids: &[Vertex], incoming: &[Vec<Incoming>], rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    let k = kids.len();
    let mut out_adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut has_parent_edge = vec![false; k];
    for (i, &v) in kids.iter().enumerate() {
        for inc in &incoming[v] {
            if inc.from == NONE {
                has_parent_edge[i] = true;
            } else {
                out_adj[inc.from].push(i);
            }
        }
    }

    // Greedy phase: a child is placed once it has an edge from the parent or
    // two placed in-neighbours; it goes right after the lower of the two.
    let mut order = OrderList::new(k);
    let mut first_placed = vec![NONE; k];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for i in 0..k {
        if has_parent_edge[i] {
            order.push_back(i);
            queue.push_back(i);
        }
    }
    while let Some(a) = queue.pop_front() {
        for &y in &out_adj[a] {
            if order.contains(y) || first_placed[y] == a {
                continue;
            }
            if first_placed[y] == NONE {
                first_placed[y] = a;
                continue;
            }
            let b = first_placed[y];
            let lower = if order.before(a, b) { a } else { b };
            order.insert_after(lower, y);
            queue.push_back(y);
        }
    }
    let placed = order.ranks();
    if placed.iter().all(|&r| r != NONE) {
        let total = k as f64 + 1.0;
        return Ok(placed.iter().map(|&r| (r as f64 + 1.0) / total).collect());
    }

    // Rubber-band phase for the rest, with placed children pinned.
    let count = order.len() as f64 + 1.0;
    let fixed: Vec<Option<f64>> = placed.iter().map(|&r| (r != NONE).then(|| (r as f64 + 1.0) / count)).collect();
    let free: Vec<usize> = (0..k).filter(|&i| fixed[i].is_none()).collect();
    let mut slot = vec![NONE; k];
    for (j, &i) in free.iter().enumerate() {
        slot[i] = j;
    }
    for _ in 0..ORDER_ATTEMPTS {
        let rows: Vec<Row<f64>> = free
            .iter()
            .map(|&i| {
                let nbrs: Vec<usize> = incoming[kids[i]].iter().map(|inc| inc.from).collect();
                let weights: Vec<f64> = nbrs.iter().map(|_| rng.gen_range(0.5..1.5)).collect();
                let total: f64 = weights.iter().sum();
                let mut row = Row { coeffs: Vec::new(), constant: 0.0 };
                for (&f, &w) in nbrs.iter().zip(&weights) {
                    let w = w / total;
                    match fixed.get(f).copied().flatten() {
                        Some(x) => row.constant += w * x,
                        // the parent sits at both ends; each of its edges picks one
                        None if f == NONE => row.constant += if rng.gen_bool(0.5) { w } else { 0.0 },
                        None => row.coeffs.push((slot[f], w)),
                    }
                }
                row
            })
            .collect();
        let iterative = (free.len() > DENSE_LIMIT)
            .then(|| ConvexEmbedding::solve_iterative(&rows, 0.5, 1e-15, 20 * free.len()))
            .flatten();
        let dense = || ConvexEmbedding::<f64>::solve(&rows);
        for sol in iterative.into_iter().map(Some).chain(std::iter::once_with(dense)).flatten() {
            let pos: Vec<f64> = (0..k).map(|i| fixed[i].unwrap_or_else(|| sol.values()[slot[i]])).collect();
            if is_valid_order(kids, incoming, &pos) {
                return Ok(pos);
            }
        }
    }
    Err(Error::contract("no valid ordering found for a dominator-tree level"))
}

fn is_valid_order(kids: &[Vertex], incoming: &[Vec<Incoming>], pos: &[f64]) -> bool {
    const GAP: f64 = 1e-12;
    kids.iter().enumerate().all(|(i, &v)| {
        let mut below = false;
        let mut above = false;
        for inc in &incoming[v] {
            let (lo, hi) = if inc.from == NONE { (0.0, 1.0) } else { (pos[inc.from], pos[inc.from]) };
            below |= lo < pos[i] - GAP;
            above |= hi > pos[i] + GAP;
        }
        below && above
    })
}

/// A linear order with insertion after a given element and O(1) amortized
/// order comparisons, via integer labels that are respread when crowded.
struct OrderList {
    label: Vec<u64>,
    next: Vec<usize>,
    prev: Vec<usize>,
    head: usize,
    tail: usize,
    len: usize,
}

impl OrderList {
    fn new(k: usize) -> Self {
        OrderList { label: vec![u64::MAX; k], next: vec![NONE; k], prev: vec![NONE; k], head: NONE, tail: NONE, len: 0 }
    }

    fn len(&self) -> usize {
        self.len
    }

    fn contains(&self, x: usize) -> bool {
        self.label[x] != u64::MAX
    }

    fn before(&self, a: usize, b: usize) -> bool {
        self.label[a] < self.label[b]
    }

    fn push_back(&mut self, x: usize) {
        let start = if self.tail == NONE { 0 } else { self.label[self.tail] };
        if start > u64::MAX / 2 {
            self.respread();
        }
        self.label[x] = if self.tail == NONE { 1 << 32 } else { self.label[self.tail] + (1 << 32) };
        self.prev[x] = self.tail;
        if self.tail == NONE {
            self.head = x;
        } else {
            self.next[self.tail] = x;
        }
        self.tail = x;
        self.len += 1;
    }

    fn insert_after(&mut self, a: usize, x: usize) {
        let upper = |s: &Self| if s.next[a] == NONE { s.label[a] + (1 << 33) } else { s.label[s.next[a]] };
        if upper(self) - self.label[a] < 2 {
            self.respread();
        }
        self.label[x] = self.label[a] + (upper(self) - self.label[a]) / 2;
        self.next[x] = self.next[a];
        self.prev[x] = a;
        if self.next[a] == NONE {
            self.tail = x;
        } else {
            let nx = self.next[a];
            self.prev[nx] = x;
        }
        self.next[a] = x;
        self.len += 1;
    }

    fn respread(&mut self) {
        let step = (u64::MAX / 4) / (self.len as u64 + 2);
        let mut cur = self.head;
        let mut l = step;
        while cur != NONE {
            self.label[cur] = l;
            l += step;
            cur = self.next[cur];
        }
    }

    /// Rank of every element in the order, `NONE` for absent ones.
    fn ranks(&self) -> Vec<usize> {
        let mut out = vec![NONE; self.label.len()];
        let mut cur = self.head;
        let mut r = 0;
        while cur != NONE {
            out[cur] = r;
            r += 1;
            cur = self.next[cur];
        }
        out
    }
}

/// Checks that `pair` consists of two spanning trees of `G(s)` over edges of
/// `g` whose root paths to each `v` share exactly the dominators of `v`.
pub fn verify_independence(g: &Digraph, pair: &SpanningTreePair) -> Result<bool> {
    let n = g.n();
    let s = pair.root;
    for parents in [(&pair.b_parent, &pair.b_edge), (&pair.r_parent, &pair.r_edge)] {
        if parents.0.len() != n || parents.1.len() != n {
            return Err(Error::contract("tree arrays do not cover the vertex set"));
        }
        for v in 0..n {
            if v == s {
                continue;
            }
            let (p, e) = (parents.0[v], parents.1[v]);
            if p == NONE || e >= g.m() || g.edge(e) != (p, v) {
                return Err(Error::contract(format!("vertex {v} has no valid tree edge")));
            }
        }
    }
    let path = |parent: &[Vertex], v: Vertex| -> Result<Vec<Vertex>> {
        let mut out = vec![v];
        let mut cur = v;
        while cur != s {
            cur = parent[cur];
            out.push(cur);
            if out.len() > n {
                return Err(Error::contract("tree contains a cycle"));
            }
        }
        Ok(out)
    };
    let d = dominator_tree(g, s)?;
    let mut mark = vec![NONE; n];
    for v in 0..n {
        for x in path(&pair.b_parent, v)? {
            mark[x] = v;
        }
        let mut shared: Vec<Vertex> = path(&pair.r_parent, v)?.into_iter().filter(|&x| mark[x] == v).collect();
        shared.sort_unstable();
        let mut doms: Vec<Vertex> = d.ancestors(v).collect();
        doms.sort_unstable();
        if shared != doms {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Appends, for every strongly connected component of `g` other than that of
/// `skip`, the edges of a BFS out-tree and a BFS in-tree of the subgraph
/// induced by the component.
pub(crate) fn push_bfs_forest(g: &Digraph, comp: &SccLabeling, skip: Vertex, out: &mut Vec<EdgeId>) {
    let n = g.n();
    for forward in [true, false] {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if start == skip || seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let c = comp.component[start];
            while let Some(x) = queue.pop_front() {
                let (nbrs, eids) =
                    if forward { (g.successors(x), g.out_edge_ids(x)) } else { (g.predecessors(x), g.in_edge_ids(x)) };
                for (&y, &e) in nbrs.iter().zip(eids) {
                    if y != skip && !seen[y] && comp.component[y] == c {
                        seen[y] = true;
                        out.push(e);
                        queue.push_back(y);
                    }
                }
            }
        }
    }
}

/// A spanning subgraph with O(n) edges that has the same vertex-resilient
/// and 2-vertex-connected blocks as the input.
#[derive(Clone, Debug)]
pub struct Certificate {
    edges: Vec<EdgeId>,
    graph: Digraph,
}

impl Certificate {
    /// Ids (in the input graph) of the kept edges, ascending.
    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edges
    }

    /// The certificate graph; its edge `i` is input edge `edge_ids()[i]`.
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// Kept edges per vertex.
    pub fn ratio(&self) -> f64 {
        if self.graph.n() == 0 {
            0.0
        } else {
            self.graph.m() as f64 / self.graph.n() as f64
        }
    }
}

/// Builds the sparse certificate of a strongly connected graph.
pub fn sparse_certificate(g: &Digraph) -> Result<Certificate> {
    let mut list = Vec::new();
    if g.n() > 0 {
        run_fast_vrb(g, 0, Some(&mut list))?;
    }
    list.sort_unstable();
    list.dedup();
    Ok(Certificate { graph: g.edge_subgraph(&list), edges: list })
}

/// Bridges of `G(s)` as recorded by the trees: every shared edge must be one.
pub fn shared_edges_are_bridges(g: &Digraph, pair: &SpanningTreePair) -> Result<bool> {
    let d = dominator_tree(g, pair.root)?;
    Ok(pair.shared_edges() == flow_graph_bridges(g, &d))
}
