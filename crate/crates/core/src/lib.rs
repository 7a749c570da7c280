pub mod analysis;
pub mod auxiliary;
pub mod certificate;
pub mod dominators;
pub mod ecb;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod forest;
pub mod graph;
pub mod oracle;
pub mod random;
pub mod tree;
pub mod vcb;
pub mod vrb;

pub use analysis::{
    certify, compute_blocks, split_components, verify_certificate, Algorithm, BlockStats, CertificateCheck, Component,
    ComponentBlocks, Mode, PairOracle,
};
pub use auxiliary::{build_auxiliary_graphs, AuxiliaryGraph, AuxiliaryGraphs};
pub use certificate::{
    independent_spanning_trees, sparse_certificate, verify_independence, Certificate, SpanningTreePair,
};
pub use dominators::{dominator_tree, flow_graph_bridges, strong_cut_set, DominatorTree, StrongCutSet};
pub use ecb::{two_edge_connected_blocks, EdgeBlockPartition};
pub use embedding::ConvexEmbedding;
pub use error::{Error, Result};
pub use forest::{BlockFamily, BlockForest};
pub use graph::{parse_graph, scc, Digraph, EdgeId, Format, SccLabeling, Vertex};
pub use tree::RootedTree;
pub use vcb::{query_2vc, two_vertex_connected_blocks, validate_witness, PairStatus};
pub use vrb::{
    fast_vrb, fast_vrb_from, fast_vrb_with_stats, simple_vrb, simple_vrb_from, vrb_single_source, QueryContext,
    VrbStats, Witness,
};

/// Barycentric embedding over `f64`.
pub type Embedding = ConvexEmbedding<f64>;
