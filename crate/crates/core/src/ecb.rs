//! 2-edge-connected blocks by refining with the SCCs of `G \ e` for every
//! strong bridge `e`. O(m·b) for b strong bridges.

use std::collections::HashMap;

use crate::dominators::strong_cut_set;
use crate::error::{Error, Result};
use crate::graph::{scc, scc_without_edge, Digraph, Vertex};

/// The partition of the vertices into 2-edge-connected blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeBlockPartition {
    class: Vec<usize>,
    sizes: Vec<usize>,
}

impl EdgeBlockPartition {
    /// Class id of `v`; classes are numbered by their smallest vertex.
    pub fn class_of(&self, v: Vertex) -> usize {
        self.class[v]
    }

    pub fn classes(&self) -> &[usize] {
        &self.class
    }

    pub fn is_trivial(&self, v: Vertex) -> bool {
        self.sizes[self.class[v]] == 1
    }

    pub fn same(&self, u: Vertex, w: Vertex) -> bool {
        u != w && self.class[u] == self.class[w]
    }

    /// Classes of at least two vertices, each ascending, sorted.
    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.sizes.len()];
        for (v, &c) in self.class.iter().enumerate() {
            out[c].push(v);
        }
        out.retain(|b| b.len() >= 2);
        out
    }
}

pub fn two_edge_connected_blocks(g: &Digraph) -> Result<EdgeBlockPartition> {
    let n = g.n();
    if n > 1 && scc(g).count() != 1 {
        return Err(Error::NotStronglyConnected);
    }
    let mut class = vec![0usize; n];
    if n > 1 {
        for e in strong_cut_set(g)?.strong_bridges {
            let comp = scc_without_edge(g, e);
            let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
            for v in 0..n {
                let next = ids.len();
                class[v] = *ids.entry((class[v], comp.component[v])).or_insert(next);
            }
        }
    }
    // renumber by smallest member
    let mut rename = vec![usize::MAX; n.max(1)];
    let mut sizes = Vec::new();
    for v in 0..n {
        let c = class[v];
        if rename[c] == usize::MAX {
            rename[c] = sizes.len();
            sizes.push(0);
        }
        class[v] = rename[c];
        sizes[class[v]] += 1;
    }
    Ok(EdgeBlockPartition { class, sizes })
}
