//! Vertex-resilient blocks: the quadratic baseline, the single-vertex
//! variant and the linear-time algorithm with its query context.

use std::collections::HashSet;

use crate::auxiliary::{build_auxiliary_graphs, AuxiliaryGraph};
use crate::certificate::{independent_spanning_trees_with, push_bfs_forest};
use crate::dominators::{dominator_tree, strong_bridges_with, strong_cut_set_from, DominatorTree};
use crate::error::{Error, Result};
use crate::forest::{BlockFamily, BlockForest, BlockId};
use crate::graph::{scc, scc_without_vertex, Digraph, EdgeId, Vertex, NONE};
use crate::tree::RootedTree;

fn require_strongly_connected(g: &Digraph) -> Result<()> {
    if g.n() > 1 && scc(g).count() != 1 {
        return Err(Error::NotStronglyConnected);
    }
    Ok(())
}

/// Vertex-resilient blocks by one refinement per strong articulation point.
/// O(m·p) for p strong articulation points.
pub fn simple_vrb(g: &Digraph) -> Result<BlockForest> {
    simple_vrb_from(g, 0)
}

/// [`simple_vrb`] with the strong articulation points found from root `s`.
pub fn simple_vrb_from(g: &Digraph, s: Vertex) -> Result<BlockForest> {
    require_strongly_connected(g)?;
    let n = g.n();
    let mut family = BlockFamily::with_block(n, (0..n).collect());
    if n < 3 {
        return Ok(family.finalize());
    }
    let cut = strong_cut_set_from(g, s)?;
    let mut label = vec![0usize; n];
    for &x in &cut.articulation_points {
        let comp = scc_without_vertex(g, x);
        for v in 0..n {
            label[v] = if v == x { 0 } else { comp.component[v] + 1 };
        }
        family.refine_all(&label, Some(x))?;
    }
    Ok(family.finalize())
}

/// The vertex-resilient blocks containing `v`, each sorted ascending.
pub fn vrb_single_source(g: &Digraph, v: Vertex) -> Result<Vec<Vec<Vertex>>> {
    g.check_vertex(v)?;
    require_strongly_connected(g)?;
    let n = g.n();
    let d = dominator_tree(g, v)?;
    let dr = dominator_tree(&g.reverse(), v)?;
    let mut block = vec![v];
    block.extend(d.children(v).iter().copied().filter(|&w| dr.parent(w) == Some(v)));
    let comp = scc_without_vertex(g, v);
    let mut label = vec![0usize; n];
    for &w in &block[1..] {
        label[w] = comp.component[w] + 1;
    }
    let mut family = BlockFamily::with_block(n, block);
    family.refine_all(&label, Some(v))?;
    Ok(family.sorted_blocks())
}

/// Sizes of the auxiliary graphs built during one [`fast_vrb`] run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VrbStats {
    pub first_level_graphs: usize,
    pub first_level_vertices: usize,
    pub first_level_edges: usize,
    pub second_level_graphs: usize,
    pub second_level_vertices: usize,
    pub second_level_edges: usize,
}

/// Linear-time vertex-resilient blocks, from vertex 0.
pub fn fast_vrb(g: &Digraph) -> Result<(BlockForest, QueryContext)> {
    fast_vrb_from(g, 0)
}

/// Linear-time vertex-resilient blocks with `s` as the start vertex.
pub fn fast_vrb_from(g: &Digraph, s: Vertex) -> Result<(BlockForest, QueryContext)> {
    let run = run_fast_vrb(g, s, None)?;
    Ok((run.context.forest.clone(), run.context))
}

/// Like [`fast_vrb_from`], also reporting the auxiliary graph sizes.
pub fn fast_vrb_with_stats(g: &Digraph, s: Vertex) -> Result<(BlockForest, QueryContext, VrbStats)> {
    let run = run_fast_vrb(g, s, None)?;
    Ok((run.context.forest.clone(), run.context, run.stats))
}

pub(crate) struct FastRun {
    pub context: QueryContext,
    pub stats: VrbStats,
}

/// The full algorithm. When `cert` is given, the edges of the sparse
/// certificate are appended to it (with repetitions).
pub(crate) fn run_fast_vrb(g: &Digraph, s: Vertex, mut cert: Option<&mut Vec<EdgeId>>) -> Result<FastRun> {
    let n = g.n();
    if n == 0 {
        return Ok(FastRun { context: QueryContext::empty(), stats: VrbStats::default() });
    }
    g.check_vertex(s)?;
    let mut stats = VrbStats::default();

    // Step 1
    let d = dominator_tree(g, s).map_err(|_| Error::NotStronglyConnected)?;
    let strong_bridges = strong_bridges_with(g, &d)?;
    if let Some(list) = cert.as_deref_mut() {
        independent_spanning_trees_with(g, &d)?.push_edges(list);
    }
    let mut family = BlockFamily::new(n);
    for &v in d.preorder() {
        if !d.is_leaf(v) {
            let mut b = vec![v];
            b.extend_from_slice(d.children(v));
            family.add_block(b);
        }
    }

    // Step 2
    let aux = build_auxiliary_graphs(g, &d);
    stats.first_level_graphs = aux.len();
    stats.first_level_vertices = aux.total_vertices();
    stats.first_level_edges = aux.total_edges();

    let sb: HashSet<(Vertex, Vertex)> = strong_bridges.iter().map(|&e| g.edge(e)).collect();

    let mut local_of = vec![NONE; n];
    let mut label = vec![0usize; n];
    let mut seen_block: Vec<usize> = Vec::new();
    let mut stamp = 0usize;
    let mut hits: Vec<u32> = Vec::new();
    let mut trees: Vec<Option<RootedTree>> = vec![None; aux.len()];
    let mut tree_bridge: Vec<Vec<bool>> = vec![Vec::new(); aux.len()];

    // Step 3: bottom-up over D(s)
    for &r in d.preorder().iter().rev() {
        let Some(hi) = aux.index_of(r) else { continue };
        let h = &aux.graphs()[hi];
        let hr = h.graph().reverse();

        // Step 3.1
        let t = dominator_tree(&hr, 0)?;
        if let Some(list) = cert.as_deref_mut() {
            let pair = independent_spanning_trees_with(&hr, &t)?;
            let mut local = Vec::new();
            pair.push_edges(&mut local);
            list.extend(local.into_iter().map(|e| h.edge_origin()[e]));
        }

        // Step 3.2
        stamp += 1;
        let mut targets: Vec<BlockId> = Vec::new();
        for &c in d.children(r) {
            for &b in family.blocks_of(c) {
                if b >= seen_block.len() {
                    seen_block.resize(b + 1, 0);
                }
                if seen_block[b] != stamp {
                    seen_block[b] = stamp;
                    targets.push(b);
                }
            }
        }

        // Step 3.3
        for (l, &v) in h.vertices().iter().enumerate() {
            local_of[v] = l;
        }
        for b in targets {
            family.split(b, |v| {
                let l = local_of[v];
                (l != NONE && t.contains(l)).then(|| (t.pre(l), t.parent(l).map(|p| t.pre(p))))
            })?;
        }
        for &v in h.vertices() {
            local_of[v] = NONE;
        }

        // Step 3.4
        let second = build_auxiliary_graphs(&hr, &t);
        stats.second_level_graphs += second.len();
        stats.second_level_vertices += second.total_vertices();
        stats.second_level_edges += second.total_edges();

        // Step 3.5
        for hq in second.graphs() {
            refine_second_level(&mut family, h, hq, &mut label, &mut hits, cert.as_deref_mut())?;
        }

        tree_bridge[hi] =
            (0..h.n()).map(|x| t.parent(x).is_some_and(|p| sb.contains(&(h.to_parent(x), h.to_parent(p))))).collect();
        trees[hi] = Some(t);
    }

    let dom_bridge: Vec<bool> = (0..n).map(|w| d.parent(w).is_some_and(|p| sb.contains(&(p, w)))).collect();
    let forest = family.finalize();
    let context = QueryContext {
        forest,
        graph_of: (0..n).map(|r| aux.index_of(r).unwrap_or(NONE)).collect(),
        loc: (0..n).map(|x| [aux.local(x, 1), aux.local(x, 2)]).collect(),
        vertices: aux.graphs().iter().map(|h| h.vertices().to_vec()).collect(),
        trees: trees.into_iter().map(|t| t.expect("every auxiliary graph is processed")).collect(),
        tree_bridge,
        dom_bridge,
        dom: d,
    };
    Ok(FastRun { context, stats })
}

/// Steps 3.5.1 to 3.5.3 for one second-level graph `hq` of `h`.
fn refine_second_level(
    family: &mut BlockFamily,
    h: &AuxiliaryGraph,
    hq: &AuxiliaryGraph,
    label: &mut [usize],
    hits: &mut Vec<u32>,
    cert: Option<&mut Vec<EdgeId>>,
) -> Result<()> {
    let global = |l: Vertex| h.to_parent(hq.to_parent(l));

    let mut bq: Vec<BlockId> = Vec::new();
    for o in hq.ordinary() {
        for &b in family.blocks_of(global(o)) {
            if b >= hits.len() {
                hits.resize(b + 1, 0);
            }
            hits[b] += 1;
            if hits[b] == 2 {
                bq.push(b);
            }
        }
    }
    for o in hq.ordinary() {
        for &b in family.blocks_of(global(o)) {
            hits[b] = 0;
        }
    }

    let comp = scc_without_vertex(hq.graph(), 0);
    if let Some(list) = cert {
        let mut local = Vec::new();
        push_bfs_forest(hq.graph(), &comp, 0, &mut local);
        list.extend(local.into_iter().map(|e| h.edge_origin()[hq.edge_origin()[e]]));
    }
    if bq.is_empty() {
        return Ok(());
    }
    for l in 1..hq.n() {
        label[global(l)] = comp.component[l] + 1;
    }
    family.refine(&bq, label, Some(global(0)))?;
    for l in 1..hq.n() {
        label[global(l)] = 0;
    }
    Ok(())
}

/// A witness that two vertices are not 2-vertex-connected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Witness {
    /// A strong articulation point whose removal separates the pair.
    Vertex(Vertex),
    /// A strong bridge `(u, v)` whose removal separates the pair.
    Edge(Vertex, Vertex),
}

/// Retained state of a [`fast_vrb`] run that answers vertex-resilience and
/// 2-vertex-connectivity queries with witnesses in O(1) time. Holds O(n)
/// data: no graph is kept.
#[derive(Clone, Debug)]
pub struct QueryContext {
    forest: BlockForest,
    dom: DominatorTree,
    graph_of: Vec<usize>,
    loc: Vec<[usize; 2]>,
    vertices: Vec<Vec<Vertex>>,
    trees: Vec<RootedTree>,
    dom_bridge: Vec<bool>,
    tree_bridge: Vec<Vec<bool>>,
}

impl QueryContext {
    fn empty() -> Self {
        QueryContext {
            forest: BlockForest::from_blocks(0, Vec::new()),
            dom: RootedTree::from_parents(0, vec![NONE]).expect("single vertex tree"),
            graph_of: Vec::new(),
            loc: Vec::new(),
            vertices: Vec::new(),
            trees: Vec::new(),
            dom_bridge: Vec::new(),
            tree_bridge: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.forest.n()
    }

    pub fn forest(&self) -> &BlockForest {
        &self.forest
    }

    pub fn dominator_tree(&self) -> &DominatorTree {
        &self.dom
    }

    /// `u ≠ w` are vertex-resilient.
    #[inline]
    pub fn vertex_resilient(&self, u: Vertex, w: Vertex) -> bool {
        self.forest.same_block(u, w)
    }

    /// `u ≠ w` are 2-vertex-connected.
    pub fn two_vertex_connected(&self, u: Vertex, w: Vertex) -> bool {
        self.vertex_resilient(u, w) && self.bridge_between(u, w).is_none()
    }

    /// First-level graph index and local ids of a pair satisfying the
    /// sibling-or-parent test in `D(s)`.
    fn first_level(&self, u: Vertex, w: Vertex) -> (usize, Vertex, Vertex) {
        let d = &self.dom;
        let r = if d.parent(w) == Some(u) {
            d.parent(u).unwrap_or(u)
        } else if d.parent(u) == Some(w) {
            d.parent(w).unwrap_or(w)
        } else {
            d.parent(u).expect("siblings have a parent")
        };
        let local = |x: Vertex| {
            if x == r {
                0
            } else {
                self.loc[x][d.depth(x) - d.depth(r) - 1]
            }
        };
        (self.graph_of[r], local(u), local(w))
    }

    /// A strong bridge joining a vertex-resilient pair, the lexicographically
    /// smaller one if both directions qualify.
    pub fn bridge_between(&self, u: Vertex, w: Vertex) -> Option<(Vertex, Vertex)> {
        if u == w || !self.dom.siblings_or_parent(u, w) {
            return None;
        }
        let mut found: Option<(Vertex, Vertex)> = None;
        let mut take = |e: (Vertex, Vertex)| {
            if found.is_none_or(|f| e < f) {
                found = Some(e);
            }
        };
        for (a, b) in [(u, w), (w, u)] {
            if self.dom.parent(b) == Some(a) && self.dom_bridge[b] {
                take((a, b));
            }
        }
        let (hi, lu, lw) = self.first_level(u, w);
        let t = &self.trees[hi];
        let marks = &self.tree_bridge[hi];
        let vs = &self.vertices[hi];
        for (a, b) in [(lu, lw), (lw, lu)] {
            // tree edge p -> a of the reverse graph is the edge a -> p
            if t.parent(a) == Some(b) && marks[a] {
                take((vs[a], vs[b]));
            }
        }
        found
    }

    /// A strong articulation point separating `u` and `w`, which must be
    /// distinct, strongly connected and not vertex-resilient.
    pub fn witness_not_vr(&self, u: Vertex, w: Vertex) -> Result<Vertex> {
        if u == w || u >= self.n() || w >= self.n() {
            return Err(Error::contract(format!("no separating vertex for the pair ({u},{w})")));
        }
        if self.vertex_resilient(u, w) {
            return Err(Error::contract(format!("{u} and {w} are vertex-resilient")));
        }
        let d = &self.dom;
        let s = d.root();
        if u == s || w == s {
            let other = if u == s { w } else { u };
            let p = d.parent(other).expect("non-root vertex");
            if p != s {
                return Ok(p);
            }
            let hi = self.graph_of[s];
            let lo = self.loc[other][0];
            let tp = self.trees[hi].parent(lo).expect("non-root vertex");
            return Ok(self.vertices[hi][tp]);
        }
        if !d.siblings_or_parent(u, w) {
            let dw = d.parent(w).expect("non-root vertex");
            return Ok(if !d.is_ancestor(dw, u) { dw } else { d.parent(u).expect("non-root vertex") });
        }
        let (hi, lu, lw) = self.first_level(u, w);
        let t = &self.trees[hi];
        let vs = &self.vertices[hi];
        let (pu, pw) = (t.parent(lu), t.parent(lw));
        let q = if !t.siblings_or_parent(lu, lw) {
            let pw = pw.expect("non-root vertex");
            if !t.is_ancestor(pw, lu) {
                pw
            } else {
                pu.expect("non-root vertex")
            }
        } else if pu == Some(lw) {
            pw.expect("w is not the root")
        } else {
            // siblings, or lw's parent is lu
            pu.expect("u is not the root")
        };
        Ok(vs[q])
    }

    /// A witness that `u ≠ w` are not 2-vertex-connected.
    pub fn witness_not_2vc(&self, u: Vertex, w: Vertex) -> Result<Witness> {
        if self.vertex_resilient(u, w) {
            return self
                .bridge_between(u, w)
                .map(|(a, b)| Witness::Edge(a, b))
                .ok_or_else(|| Error::contract(format!("{u} and {w} are 2-vertex-connected")));
        }
        self.witness_not_vr(u, w).map(Witness::Vertex)
    }

    /// Number of machine words held, for space accounting.
    pub fn footprint(&self) -> usize {
        let forest = 2 * self.forest.total_size() + self.forest.num_blocks() * 4 + 3 * self.n();
        let tree = |t: &RootedTree| 8 * t.capacity();
        forest
            + tree(&self.dom)
            + self.graph_of.len()
            + 2 * self.loc.len()
            + self.vertices.iter().map(Vec::len).sum::<usize>()
            + self.trees.iter().map(tree).sum::<usize>()
            + self.dom_bridge.len()
            + self.tree_bridge.iter().map(Vec::len).sum::<usize>()
    }
}
