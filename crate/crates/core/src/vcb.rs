//! 2-vertex-connected blocks, pair queries and witness validation.

use crate::ecb::EdgeBlockPartition;
use crate::forest::{BlockFamily, BlockForest};
use crate::graph::{reachable_from, Digraph, Vertex};
use crate::vrb::{QueryContext, Witness};

/// Refines the vertex-resilient blocks by the 2-edge-connected blocks.
pub fn two_vertex_connected_blocks(vrb: &BlockForest, ecb: &EdgeBlockPartition) -> BlockForest {
    let n = vrb.n();
    let mut family = BlockFamily::new(n);
    for b in vrb.blocks() {
        family.add_block(b.clone());
    }
    let label: Vec<usize> = (0..n).map(|v| ecb.class_of(v) + 1).collect();
    family.refine_all(&label, None).expect("no pivot");
    family.finalize()
}

/// Outcome of a 2-vertex-connectivity query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairStatus {
    /// The two query vertices are the same.
    SameVertex,
    DifferentScc,
    TwoVertexConnected,
    /// Vertex-resilient, but joined by a strong bridge.
    VertexResilientOnly(Vertex, Vertex),
    /// Separated by a strong articulation point.
    Separated(Vertex),
}

impl PairStatus {
    pub fn is_2vc(self) -> bool {
        self == PairStatus::TwoVertexConnected
    }
}

/// O(1) query on a strongly connected graph's context.
pub fn query_2vc(ctx: &QueryContext, u: Vertex, w: Vertex) -> PairStatus {
    if u == w {
        return PairStatus::SameVertex;
    }
    if ctx.vertex_resilient(u, w) {
        match ctx.bridge_between(u, w) {
            Some((a, b)) => PairStatus::VertexResilientOnly(a, b),
            None => PairStatus::TwoVertexConnected,
        }
    } else {
        PairStatus::Separated(ctx.witness_not_vr(u, w).expect("pair is not vertex-resilient"))
    }
}

/// Checks in O(m) that removing the witness leaves `u` and `w` in different
/// strongly connected components.
pub fn validate_witness(g: &Digraph, u: Vertex, w: Vertex, witness: Witness) -> bool {
    let (skip_vertex, skip_edge) = match witness {
        Witness::Vertex(x) => {
            if x == u || x == w {
                return false;
            }
            (Some(x), None)
        }
        Witness::Edge(a, b) => match g.find_edge(a, b) {
            Some(e) => (None, Some(e)),
            None => return false,
        },
    };
    !reachable_from(g, u, skip_vertex, skip_edge)[w] || !reachable_from(g, w, skip_vertex, skip_edge)[u]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ecb::two_edge_connected_blocks;
    use crate::fixtures::{bi3, path3, star};
    use crate::oracle::brute_2v_matrix;
    use crate::random::random_strongly_connected;
    use crate::vrb::fast_vrb;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn blocks_2vc(g: &Digraph) -> BlockForest {
        two_vertex_connected_blocks(&fast_vrb(g).unwrap().0, &two_edge_connected_blocks(g).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(blocks_2vc(&bi3()).blocks(), &[vec![0, 1, 2]]);
        assert!(blocks_2vc(&path3()).blocks().is_empty());
        let (_, ctx) = fast_vrb(&bi3()).unwrap();
        assert_eq!(query_2vc(&ctx, 0, 1), PairStatus::TwoVertexConnected);
        assert_eq!(query_2vc(&ctx, 1, 1), PairStatus::SameVertex);
        let (_, ctx) = fast_vrb(&path3()).unwrap();
        assert_eq!(query_2vc(&ctx, 0, 1), PairStatus::VertexResilientOnly(0, 1));
        assert_eq!(ctx.witness_not_2vc(0, 1).unwrap(), Witness::Edge(0, 1));
        let (_, ctx) = fast_vrb(&star(3)).unwrap();
        assert_eq!(query_2vc(&ctx, 1, 2), PairStatus::Separated(0));
        assert_eq!(ctx.witness_not_2vc(1, 3).unwrap(), Witness::Vertex(0));
    }

    #[test]
    fn queries_match_flow_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..150 {
            let n = rng.gen_range(3..=20);
            let m = rng.gen_range(n..=3 * n);
            let g = random_strongly_connected(&mut rng, n, m);
            let rel = brute_2v_matrix(&g);
            let (_, ctx) = fast_vrb(&g).unwrap();
            let blocks = blocks_2vc(&g);
            for u in 0..n {
                for w in 0..n {
                    if u == w {
                        continue;
                    }
                    let st = query_2vc(&ctx, u, w);
                    assert_eq!(st.is_2vc(), rel[u][w], "pair ({u},{w}) of {:?}", g.edges());
                    assert_eq!(blocks.same_block(u, w), rel[u][w]);
                    if !rel[u][w] {
                        let wit = ctx.witness_not_2vc(u, w).unwrap();
                        assert!(validate_witness(&g, u, w, wit), "{wit:?} for ({u},{w})");
                    }
                }
            }
        }
    }
}
