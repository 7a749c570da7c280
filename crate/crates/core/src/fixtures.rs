//! Small named graphs used in examples and tests.

use crate::graph::Digraph;

/// Directed triangle 0→1→2→0.
pub fn cyc3() -> Digraph {
    Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
}

/// Complete digraph on three vertices.
pub fn bi3() -> Digraph {
    Digraph::from_edges(3, [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]).unwrap()
}

/// Bidirected path 0↔1↔2.
pub fn path3() -> Digraph {
    Digraph::from_edges(3, [(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap()
}

/// Bidirected star with center 0 and leaves `1..=k`.
pub fn star(k: usize) -> Digraph {
    Digraph::from_edges(k + 1, (1..=k).flat_map(|i| [(0, i), (i, 0)])).unwrap()
}

/// Bidirected path on five vertices.
pub fn chain5() -> Digraph {
    Digraph::from_edges(5, (0..4).flat_map(|i| [(i, i + 1), (i + 1, i)])).unwrap()
}
