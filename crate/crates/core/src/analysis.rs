//! Whole-graph drivers: split the input into strongly connected components,
//! run the block algorithms on each, and map results back to input ids.

use std::str::FromStr;

use crate::certificate::sparse_certificate;
use crate::ecb::two_edge_connected_blocks;
use crate::error::{Error, Result};
use crate::graph::{scc, Digraph, EdgeId, SccLabeling, Vertex};
use crate::vcb::{query_2vc, two_vertex_connected_blocks, PairStatus};
use crate::vrb::{run_fast_vrb, simple_vrb, QueryContext, VrbStats, Witness};

/// Which block family to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Vrb,
    Ecb,
    Vcb,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vrb" => Ok(Mode::Vrb),
            "2ecb" => Ok(Mode::Ecb),
            "2vcb" => Ok(Mode::Vcb),
            other => Err(Error::contract(format!("unknown mode {other:?}"))),
        }
    }
}

/// Which vertex-resilient block algorithm to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Fast,
    Simple,
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Algorithm::Fast),
            "simple" => Ok(Algorithm::Simple),
            other => Err(Error::contract(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// One strongly connected component as a standalone graph.
#[derive(Clone, Debug)]
pub struct Component {
    /// Input id of each local vertex, ascending.
    pub vertices: Vec<Vertex>,
    pub graph: Digraph,
    /// Input id of each local edge.
    pub edges: Vec<EdgeId>,
}

/// Splits `g` into its strongly connected components, in component-id order.
pub fn split_components(g: &Digraph) -> (SccLabeling, Vec<Component>) {
    let labels = scc(g);
    let k = labels.count();
    let mut local = vec![0usize; g.n()];
    let mut vertices = vec![Vec::new(); k];
    for v in 0..g.n() {
        let c = labels.component[v];
        local[v] = vertices[c].len();
        vertices[c].push(v);
    }
    let mut edge_lists: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); k];
    let mut edge_ids: Vec<Vec<EdgeId>> = vec![Vec::new(); k];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = labels.component[u];
        if labels.component[v] == c {
            edge_lists[c].push((local[u], local[v]));
            edge_ids[c].push(e);
        }
    }
    let comps = vertices
        .into_iter()
        .zip(edge_lists)
        .zip(edge_ids)
        .map(|((vertices, edges), ids)| Component {
            graph: Digraph::from_edges_unchecked(vertices.len(), edges),
            vertices,
            edges: ids,
        })
        .collect();
    (labels, comps)
}

/// The blocks of one component, in input ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentBlocks {
    pub scc: usize,
    pub blocks: Vec<Vec<Vertex>>,
}

/// Totals over all components, for reporting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BlockStats {
    pub blocks: usize,
    pub memberships: usize,
    pub aux: VrbStats,
}

/// Computes one block family per strongly connected component.
pub fn compute_blocks(g: &Digraph, mode: Mode, algo: Algorithm) -> Result<(Vec<ComponentBlocks>, BlockStats)> {
    let (_, comps) = split_components(g);
    let mut out = Vec::with_capacity(comps.len());
    let mut stats = BlockStats::default();
    for (i, c) in comps.iter().enumerate() {
        let h = &c.graph;
        let mut vrb = || -> Result<_> {
            match algo {
                Algorithm::Fast => {
                    let run = run_fast_vrb(h, 0, None)?;
                    add_stats(&mut stats.aux, &run.stats);
                    Ok(run.context.forest().clone())
                }
                Algorithm::Simple => simple_vrb(h),
            }
        };
        let local = match mode {
            Mode::Vrb => vrb()?.blocks().to_vec(),
            Mode::Ecb => two_edge_connected_blocks(h)?.blocks(),
            Mode::Vcb => {
                let f = vrb()?;
                two_vertex_connected_blocks(&f, &two_edge_connected_blocks(h)?).blocks().to_vec()
            }
        };
        let blocks: Vec<Vec<Vertex>> =
            local.into_iter().map(|b| b.into_iter().map(|v| c.vertices[v]).collect()).collect();
        stats.blocks += blocks.len();
        stats.memberships += blocks.iter().map(Vec::len).sum::<usize>();
        out.push(ComponentBlocks { scc: i, blocks });
    }
    Ok((out, stats))
}

fn add_stats(acc: &mut VrbStats, s: &VrbStats) {
    acc.first_level_graphs += s.first_level_graphs;
    acc.first_level_vertices += s.first_level_vertices;
    acc.first_level_edges += s.first_level_edges;
    acc.second_level_graphs += s.second_level_graphs;
    acc.second_level_vertices += s.second_level_vertices;
    acc.second_level_edges += s.second_level_edges;
}

/// Pair queries over an arbitrary digraph, answered per component.
#[derive(Clone, Debug)]
pub struct PairOracle {
    component: Vec<usize>,
    local: Vec<Vertex>,
    vertices: Vec<Vec<Vertex>>,
    contexts: Vec<QueryContext>,
}

impl PairOracle {
    pub fn new(g: &Digraph) -> Result<Self> {
        let (labels, comps) = split_components(g);
        let mut local = vec![0; g.n()];
        let mut contexts = Vec::with_capacity(comps.len());
        let mut vertices = Vec::with_capacity(comps.len());
        for c in comps {
            for (i, &v) in c.vertices.iter().enumerate() {
                local[v] = i;
            }
            contexts.push(run_fast_vrb(&c.graph, 0, None)?.context);
            vertices.push(c.vertices);
        }
        Ok(PairOracle { component: labels.component, local, vertices, contexts })
    }

    pub fn n(&self) -> usize {
        self.component.len()
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    /// Classifies the pair, with a witness when it is not 2-vertex-connected.
    pub fn query(&self, u: Vertex, w: Vertex) -> Result<PairStatus> {
        self.check(u)?;
        self.check(w)?;
        if u == w {
            return Ok(PairStatus::SameVertex);
        }
        let c = self.component[u];
        if self.component[w] != c {
            return Ok(PairStatus::DifferentScc);
        }
        let vs = &self.vertices[c];
        Ok(match query_2vc(&self.contexts[c], self.local[u], self.local[w]) {
            PairStatus::VertexResilientOnly(a, b) => PairStatus::VertexResilientOnly(vs[a], vs[b]),
            PairStatus::Separated(x) => PairStatus::Separated(vs[x]),
            other => other,
        })
    }

    /// A witness that the pair is not 2-vertex-connected, `None` when it is
    /// or when the pair lies in different components.
    pub fn witness(&self, u: Vertex, w: Vertex) -> Result<Option<Witness>> {
        Ok(match self.query(u, w)? {
            PairStatus::VertexResilientOnly(a, b) => Some(Witness::Edge(a, b)),
            PairStatus::Separated(x) => Some(Witness::Vertex(x)),
            _ => None,
        })
    }

    /// Sum of the per-component context footprints, in words.
    pub fn footprint(&self) -> usize {
        self.contexts.iter().map(QueryContext::footprint).sum::<usize>() + 2 * self.n()
    }
}

/// The sparse certificate of every component, as input edge ids (ascending).
pub fn certify(g: &Digraph) -> Result<Vec<EdgeId>> {
    let (_, comps) = split_components(g);
    let mut out = Vec::new();
    for c in &comps {
        let cert = sparse_certificate(&c.graph)?;
        out.extend(cert.edge_ids().iter().map(|&e| c.edges[e]));
    }
    out.sort_unstable();
    Ok(out)
}

/// Result of comparing a graph with a candidate certificate.
#[derive(Clone, Debug, PartialEq)]
pub enum CertificateCheck {
    Ok { ratio: f64 },
    Fail(String),
}

/// Checks that `cert` uses only edges of `g`, keeps its strongly connected
/// components, and has the same vertex-resilient and 2-vertex-connected blocks.
pub fn verify_certificate(g: &Digraph, cert: &Digraph) -> Result<CertificateCheck> {
    if g.n() != cert.n() {
        return Ok(CertificateCheck::Fail(format!("vertex counts differ: {} vs {}", g.n(), cert.n())));
    }
    let mut available: std::collections::HashMap<(Vertex, Vertex), usize> = std::collections::HashMap::new();
    for &e in g.edges() {
        *available.entry(e).or_default() += 1;
    }
    for &(u, v) in cert.edges() {
        match available.get_mut(&(u, v)) {
            Some(c) if *c > 0 => *c -= 1,
            _ => return Ok(CertificateCheck::Fail(format!("edge ({u},{v}) is not an edge of the graph"))),
        }
    }
    let (a, b) = (scc(g), scc(cert));
    if a.component != b.component {
        return Ok(CertificateCheck::Fail("strongly connected components differ".into()));
    }
    for mode in [Mode::Vrb, Mode::Vcb] {
        let (x, _) = compute_blocks(g, mode, Algorithm::Fast)?;
        let (y, _) = compute_blocks(cert, mode, Algorithm::Fast)?;
        if x != y {
            let name = if mode == Mode::Vrb { "vertex-resilient" } else { "2-vertex-connected" };
            return Ok(CertificateCheck::Fail(format!("{name} blocks differ")));
        }
    }
    let ratio = if g.n() == 0 { 0.0 } else { cert.m() as f64 / g.n() as f64 };
    Ok(CertificateCheck::Ok { ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bi3, path3, star};

    #[test]
    fn blocks_of_examples() {
        let (b, _) = compute_blocks(&star(4), Mode::Vrb, Algorithm::Fast).unwrap();
        assert_eq!(b[0].blocks, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 4]]);
        let (b, _) = compute_blocks(&path3(), Mode::Vcb, Algorithm::Simple).unwrap();
        assert!(b[0].blocks.is_empty());
    }

    #[test]
    fn components_map_back() {
        // two triangles joined by a one-way edge
        let g =
            Digraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2), (2, 3), (3, 4), (4, 5), (5, 3)])
                .unwrap();
        let (b, _) = compute_blocks(&g, Mode::Vrb, Algorithm::Fast).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].blocks, vec![vec![0, 1, 2]]);
        assert!(b[1].blocks.is_empty());
        let q = PairOracle::new(&g).unwrap();
        assert_eq!(q.query(0, 3).unwrap(), PairStatus::DifferentScc);
        assert_eq!(q.query(0, 1).unwrap(), PairStatus::TwoVertexConnected);
        assert_eq!(q.query(3, 4).unwrap(), PairStatus::Separated(5));
    }

    #[test]
    fn certificate_round_trip() {
        let g = bi3();
        let cert = g.edge_subgraph(&certify(&g).unwrap());
        assert_eq!(verify_certificate(&g, &cert).unwrap(), CertificateCheck::Ok { ratio: 2.0 });
        let p = path3();
        let broken_path = Digraph::from_edges(3, p.edges()[1..].to_vec()).unwrap();
        assert!(matches!(verify_certificate(&p, &broken_path).unwrap(), CertificateCheck::Fail(_)));
    }
}
