//! Seeded random graph generators for tests, benchmarks and the CLI.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Digraph, Vertex};

/// A simple digraph in which every vertex is reachable from 0: a random
/// arborescence rooted at 0 plus up to `extra` further distinct edges.
pub fn random_flow_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: usize) -> Digraph {
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for v in 1..n {
        let p = rng.gen_range(0..v);
        edges.push((p, v));
        seen.insert((p, v));
    }
    add_random_edges(rng, n, extra, &mut edges, &mut seen);
    Digraph::from_edges(n, edges).expect("generated edges are in range")
}

/// A simple strongly connected digraph with exactly `max(m, n)` edges (capped
/// at `n(n-1)`): a random Hamiltonian cycle plus random distinct edges.
pub fn random_strongly_connected<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Digraph {
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    if n >= 2 {
        let mut perm: Vec<Vertex> = (0..n).collect();
        perm.shuffle(rng);
        for i in 0..n {
            let e = (perm[i], perm[(i + 1) % n]);
            edges.push(e);
            seen.insert(e);
        }
    }
    let target = m.min(n * n.saturating_sub(1));
    let extra = target.saturating_sub(edges.len());
    add_random_edges(rng, n, extra, &mut edges, &mut seen);
    Digraph::from_edges(n, edges).expect("generated edges are in range")
}

/// A digraph with `n` vertices and `m` random edges (loops dropped, parallel
/// edges possible).
pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Digraph {
    let edges: Vec<_> =
        if n == 0 { Vec::new() } else { (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect() };
    Digraph::from_edges(n, edges).expect("generated edges are in range")
}

fn add_random_edges<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    count: usize,
    edges: &mut Vec<(Vertex, Vertex)>,
    seen: &mut HashSet<(Vertex, Vertex)>,
) {
    if n < 2 {
        return;
    }
    let cap = n * (n - 1);
    let mut added = 0;
    while added < count && seen.len() < cap {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && seen.insert((u, v)) {
            edges.push((u, v));
            added += 1;
        }
    }
}
