//! Compact directed graph storage, text formats and strongly connected
//! components.
//!
//! Vertices are dense integers `0..n`. Edges keep a stable id (their index in
//! the edge list) so that derived graphs can always point back at the edge of
//! the graph they were built from.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

/// Sentinel used in flat per-vertex arrays.
pub const NONE: usize = usize::MAX;

/// An immutable directed graph with both forward and backward adjacency.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    out_off: Vec<usize>,
    out_nbr: Vec<Vertex>,
    out_eid: Vec<EdgeId>,
    in_off: Vec<usize>,
    in_nbr: Vec<Vertex>,
    in_eid: Vec<EdgeId>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

fn csr(
    n: usize,
    keys: impl Iterator<Item = (Vertex, Vertex, EdgeId)> + Clone,
) -> (Vec<usize>, Vec<Vertex>, Vec<EdgeId>) {
    let mut off = vec![0usize; n + 1];
    for (k, _, _) in keys.clone() {
        off[k + 1] += 1;
    }
    for i in 0..n {
        off[i + 1] += off[i];
    }
    let total = off[n];
    let mut pos = off.clone();
    let mut nbr = vec![0; total];
    let mut eid = vec![0; total];
    for (k, other, e) in keys {
        nbr[pos[k]] = other;
        eid[pos[k]] = e;
        pos[k] += 1;
    }
    (off, nbr, eid)
}

impl Digraph {
    /// Builds a graph, dropping self-loops. Endpoints must lie in `0..n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut kept = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u != v {
                kept.push((u, v));
            }
        }
        Ok(Self::from_edges_unchecked(n, kept))
    }

    /// Builds a graph from edges already known to be in range and loop-free.
    pub(crate) fn from_edges_unchecked(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        debug_assert!(edges.iter().all(|&(u, v)| u < n && v < n && u != v));
        let (out_off, out_nbr, out_eid) = csr(n, edges.iter().enumerate().map(|(e, &(u, v))| (u, v, e)));
        let (in_off, in_nbr, in_eid) = csr(n, edges.iter().enumerate().map(|(e, &(u, v))| (v, u, e)));
        Digraph { n, edges, out_off, out_nbr, out_eid, in_off, in_nbr, in_eid }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges_unchecked(n, Vec::new())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    #[inline]
    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        &self.out_nbr[self.out_off[v]..self.out_off[v + 1]]
    }

    #[inline]
    pub fn predecessors(&self, v: Vertex) -> &[Vertex] {
        &self.in_nbr[self.in_off[v]..self.in_off[v + 1]]
    }

    /// Ids of the edges leaving `v`, parallel to [`Digraph::successors`].
    #[inline]
    pub fn out_edge_ids(&self, v: Vertex) -> &[EdgeId] {
        &self.out_eid[self.out_off[v]..self.out_off[v + 1]]
    }

    /// Ids of the edges entering `v`, parallel to [`Digraph::predecessors`].
    #[inline]
    pub fn in_edge_ids(&self, v: Vertex) -> &[EdgeId] {
        &self.in_eid[self.in_off[v]..self.in_off[v + 1]]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_off[v + 1] - self.out_off[v]
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_off[v + 1] - self.in_off[v]
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// The reverse graph. Edge ids are preserved: edge `e = (u, v)` becomes
    /// `e = (v, u)`.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| (v, u)).collect(),
            out_off: self.in_off.clone(),
            out_nbr: self.in_nbr.clone(),
            out_eid: self.in_eid.clone(),
            in_off: self.out_off.clone(),
            in_nbr: self.out_nbr.clone(),
            in_eid: self.out_eid.clone(),
        }
    }

    /// Removes parallel edges, keeping the first copy of every ordered pair.
    /// Returns the new graph and, for each of its edges, the id of the edge
    /// it came from.
    pub fn dedup(&self) -> (Digraph, Vec<EdgeId>) {
        let mut stamp = vec![NONE; self.n];
        let mut keep = vec![false; self.m()];
        for u in 0..self.n {
            for (&v, &e) in self.successors(u).iter().zip(self.out_edge_ids(u)) {
                if stamp[v] != u {
                    stamp[v] = u;
                    keep[e] = true;
                }
            }
        }
        let origin: Vec<EdgeId> = (0..self.m()).filter(|&e| keep[e]).collect();
        let edges = origin.iter().map(|&e| self.edges[e]).collect();
        (Digraph::from_edges_unchecked(self.n, edges), origin)
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.dedup().0.m() != self.m()
    }

    /// The subgraph induced by the vertices with `keep[v] == true`.
    pub fn induced_subgraph(&self, keep: &[bool]) -> Subgraph {
        assert_eq!(keep.len(), self.n);
        let mut from_parent = vec![None; self.n];
        let mut to_parent = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                from_parent[v] = Some(to_parent.len());
                to_parent.push(v);
            }
        }
        let mut edges = Vec::new();
        let mut edge_to_parent = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (from_parent[u], from_parent[v]) {
                edges.push((a, b));
                edge_to_parent.push(e);
            }
        }
        Subgraph {
            graph: Digraph::from_edges_unchecked(to_parent.len(), edges),
            to_parent,
            from_parent,
            edge_to_parent,
        }
    }

    /// `G \ x`, with ids of the surviving vertices remapped densely.
    pub fn remove_vertex(&self, x: Vertex) -> Result<Subgraph> {
        self.check_vertex(x)?;
        let mut keep = vec![true; self.n];
        keep[x] = false;
        Ok(self.induced_subgraph(&keep))
    }

    /// Subgraph consisting of the given edges only (all vertices kept).
    pub fn edge_subgraph(&self, edge_ids: &[EdgeId]) -> Digraph {
        Digraph::from_edges_unchecked(self.n, edge_ids.iter().map(|&e| self.edges[e]).collect())
    }

    /// Finds an edge `u -> v`, if any.
    pub fn find_edge(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.successors(u).iter().zip(self.out_edge_ids(u)).find(|(&w, _)| w == v).map(|(_, &e)| e)
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n <= 1 || scc(self).count() == 1
    }

    /// Writes the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 * (self.m() + 1));
        out.push_str(&format!("{} {}\n", self.n, self.m()));
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// A subgraph together with the vertex and edge mappings to its parent.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: Digraph,
    pub to_parent: Vec<Vertex>,
    pub from_parent: Vec<Option<Vertex>>,
    pub edge_to_parent: Vec<EdgeId>,
}

/// Input text formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    /// `n m` header followed by `u v` lines, 0-based.
    #[default]
    EdgeList,
    /// `p <name> n m` header followed by `a u v` lines, 1-based.
    Dimacs,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

/// Result of parsing: the graph plus the number of self-loops dropped.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub graph: Digraph,
    pub self_loops: usize,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse::<usize>().map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_graph(text: &str, format: Format) -> Result<Parsed> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

fn finish(n: usize, declared_m: usize, raw: Vec<(Vertex, Vertex)>, last_line: usize) -> Result<Parsed> {
    if raw.len() != declared_m {
        return Err(parse_err(last_line, format!("header declares {declared_m} edges but {} were given", raw.len())));
    }
    let self_loops = raw.iter().filter(|(u, v)| u == v).count();
    let edges = raw.into_iter().filter(|(u, v)| u != v).collect();
    Ok(Parsed { graph: Digraph::from_edges_unchecked(n, edges), self_loops })
}

fn parse_edge_list(text: &str) -> Result<Parsed> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw = Vec::new();
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        last = lineno;
        let mut toks = line.split_whitespace();
        let a = parse_usize(toks.next(), lineno, "first field")?;
        let b = parse_usize(toks.next(), lineno, "second field")?;
        if toks.next().is_some() {
            return Err(parse_err(lineno, "expected exactly two fields"));
        }
        match header {
            None => header = Some((a, b)),
            Some((n, _)) => {
                for x in [a, b] {
                    if x >= n {
                        return Err(Error::VertexOutOfRange { vertex: x, n });
                    }
                }
                raw.push((a, b));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    finish(n, m, raw, last)
}

fn parse_dimacs(text: &str) -> Result<Parsed> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw = Vec::new();
    let mut last = 0;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        last = lineno;
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate `p` line"));
                }
                let _name = toks.next().ok_or_else(|| parse_err(lineno, "missing problem name"))?;
                let n = parse_usize(toks.next(), lineno, "vertex count")?;
                let m = parse_usize(toks.next(), lineno, "edge count")?;
                header = Some((n, m));
            }
            Some("a") | Some("e") => {
                let (n, _) = header.ok_or_else(|| parse_err(lineno, "arc before `p` line"))?;
                let u = parse_usize(toks.next(), lineno, "tail")?;
                let v = parse_usize(toks.next(), lineno, "head")?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(Error::VertexOutOfRange { vertex: x, n });
                    }
                }
                raw.push((u - 1, v - 1));
            }
            Some(other) => return Err(parse_err(lineno, format!("unknown line type `{other}`"))),
            None => unreachable!(),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(1, "missing `p` line"))?;
    finish(n, m, raw, last)
}

/// Strongly connected component labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccLabeling {
    /// Component id per vertex; [`NONE`] for vertices excluded by a mask.
    pub component: Vec<usize>,
    count: usize,
}

impl SccLabeling {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn same(&self, u: Vertex, v: Vertex) -> bool {
        self.component[u] != NONE && self.component[u] == self.component[v]
    }

    /// Members of every component, each sorted ascending.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.component.iter().enumerate() {
            if c != NONE {
                out[c].push(v);
            }
        }
        out
    }
}

/// Strongly connected components (iterative Tarjan). Components are numbered
/// in order of their smallest vertex.
pub fn scc(g: &Digraph) -> SccLabeling {
    scc_masked(g, None, None)
}

/// Components of `G \ x`; `x` itself is labelled [`NONE`].
pub fn scc_without_vertex(g: &Digraph, x: Vertex) -> SccLabeling {
    scc_masked(g, Some(x), None)
}

/// Components of `G \ e`.
pub fn scc_without_edge(g: &Digraph, e: EdgeId) -> SccLabeling {
    scc_masked(g, None, Some(e))
}

pub(crate) fn scc_masked(g: &Digraph, skip_vertex: Option<Vertex>, skip_edge: Option<EdgeId>) -> SccLabeling {
    let n = g.n();
    let mut index = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut raw = vec![NONE; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<Vertex> = Vec::new();
    let mut call: Vec<(Vertex, usize)> = Vec::new();
    let mut next_index = 0;
    let mut raw_count = 0;
    let skip_v = skip_vertex.unwrap_or(NONE);
    let skip_e = skip_edge.unwrap_or(NONE);

    for root in 0..n {
        if index[root] != NONE || root == skip_v {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, 0));
        while let Some(top) = call.last_mut() {
            let (v, pos) = *top;
            let succ = g.successors(v);
            let eids = g.out_edge_ids(v);
            if pos < succ.len() {
                top.1 += 1;
                let w = succ[pos];
                let e = eids[pos];
                if w == skip_v || e == skip_e {
                    continue;
                }
                if index[w] == NONE {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        raw[w] = raw_count;
                        if w == v {
                            break;
                        }
                    }
                    raw_count += 1;
                }
            }
        }
    }

    let mut relabel = vec![NONE; raw_count];
    let mut count = 0;
    let mut component = vec![NONE; n];
    for v in 0..n {
        let r = raw[v];
        if r == NONE {
            continue;
        }
        if relabel[r] == NONE {
            relabel[r] = count;
            count += 1;
        }
        component[v] = relabel[r];
    }
    SccLabeling { component, count }
}

/// Vertices reachable from `s` (optionally avoiding one vertex and one edge).
pub fn reachable_from(g: &Digraph, s: Vertex, skip_vertex: Option<Vertex>, skip_edge: Option<EdgeId>) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    if Some(s) == skip_vertex {
        return seen;
    }
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for (&w, &e) in g.successors(v).iter().zip(g.out_edge_ids(v)) {
            if seen[w] || Some(w) == skip_vertex || Some(e) == skip_edge {
                continue;
            }
            seen[w] = true;
            stack.push(w);
        }
    }
    seen
}
