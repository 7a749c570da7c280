//! Brute-force reference implementations, straight from the definitions.
//! Quadratic or worse; meant for tests and debugging only.

use std::collections::VecDeque;

use crate::dominators::StrongCutSet;
use crate::graph::{reachable_from, scc, scc_without_edge, scc_without_vertex, Digraph, Vertex, NONE};

/// `u` and `w` stay strongly connected after removing any single vertex other
/// than themselves.
pub fn brute_vertex_resilient(g: &Digraph, u: Vertex, w: Vertex) -> bool {
    if !scc(g).same(u, w) {
        return false;
    }
    (0..g.n()).filter(|&x| x != u && x != w).all(|x| scc_without_vertex(g, x).same(u, w))
}

/// `u` and `w` stay strongly connected after removing any single edge.
pub fn brute_2e_connected(g: &Digraph, u: Vertex, w: Vertex) -> bool {
    scc(g).same(u, w) && (0..g.m()).all(|e| scc_without_edge(g, e).same(u, w))
}

/// Two internally vertex-disjoint paths from `u` to `w` and two from `w` to
/// `u`, checked with unit-capacity max-flow on the vertex-split graph.
pub fn brute_2v_connected(g: &Digraph, u: Vertex, w: Vertex) -> bool {
    u != w && disjoint_paths(g, u, w) >= 2 && disjoint_paths(g, w, u) >= 2
}

/// Full vertex-resilience relation, `n` SCC computations.
pub fn brute_vr_matrix(g: &Digraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let base = scc(g);
    let mut rel = vec![vec![false; n]; n];
    for u in 0..n {
        for w in 0..n {
            rel[u][w] = u != w && base.same(u, w);
        }
    }
    for x in 0..n {
        let c = scc_without_vertex(g, x);
        for u in (0..n).filter(|&u| u != x) {
            for w in (0..n).filter(|&w| w != x && w != u) {
                if !c.same(u, w) {
                    rel[u][w] = false;
                }
            }
        }
    }
    rel
}

/// Full 2-edge-connectivity relation, `m` SCC computations.
pub fn brute_2e_matrix(g: &Digraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let base = scc(g);
    let mut rel = vec![vec![false; n]; n];
    for u in 0..n {
        for w in 0..n {
            rel[u][w] = u != w && base.same(u, w);
        }
    }
    for e in 0..g.m() {
        let c = scc_without_edge(g, e);
        for u in 0..n {
            for w in 0..n {
                if !c.same(u, w) {
                    rel[u][w] = false;
                }
            }
        }
    }
    rel
}

/// Full 2-vertex-connectivity relation by max-flow on every pair.
pub fn brute_2v_matrix(g: &Digraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut rel = vec![vec![false; n]; n];
    for u in 0..n {
        for w in u + 1..n {
            let r = brute_2v_connected(g, u, w);
            rel[u][w] = r;
            rel[w][u] = r;
        }
    }
    rel
}

/// Dominator sets: `dom[w]` lists every `u` such that all paths from `s` to
/// `w` contain `u`, including `s` and `w`, ascending.
pub fn brute_dominators(g: &Digraph, s: Vertex) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut dom = vec![Vec::new(); n];
    for u in 0..n {
        let reach = if u == s { vec![false; n] } else { reachable_from(g, s, Some(u), None) };
        for w in 0..n {
            if w == u || !reach[w] {
                dom[w].push(u);
            }
        }
    }
    dom
}

/// Immediate dominators from the transitive reduction of
/// [`brute_dominators`]; `NONE` for `s`.
pub fn brute_immediate_dominators(g: &Digraph, s: Vertex) -> Vec<Vertex> {
    let dom = brute_dominators(g, s);
    (0..g.n())
        .map(|w| {
            if w == s {
                return NONE;
            }
            // the deepest proper dominator has the most dominators itself
            dom[w].iter().copied().filter(|&u| u != w).max_by_key(|&u| dom[u].len()).unwrap_or(NONE)
        })
        .collect()
}

/// Strong articulation points and strong bridges by removal and SCC counting.
pub fn brute_strong_cut_set(g: &Digraph) -> StrongCutSet {
    let base = scc(g).count();
    StrongCutSet {
        articulation_points: (0..g.n()).filter(|&x| scc_without_vertex(g, x).count() > base).collect(),
        strong_bridges: (0..g.m()).filter(|&e| scc_without_edge(g, e).count() > base).collect(),
    }
}

/// Maximum number of internally vertex-disjoint paths from `a` to `b`,
/// capped at two.
fn disjoint_paths(g: &Digraph, a: Vertex, b: Vertex) -> usize {
    // node 2v is v_in, 2v+1 is v_out
    let n = g.n();
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let cap = if v == a || v == b { 2 } else { 1 };
        net.add(2 * v, 2 * v + 1, cap);
    }
    for &(x, y) in g.edges() {
        net.add(2 * x + 1, 2 * y, 1);
    }
    let (src, dst) = (2 * a + 1, 2 * b);
    let mut flow = 0;
    while flow < 2 && net.augment(src, dst) {
        flow += 1;
    }
    flow
}

struct FlowNet {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i32>,
    next: Vec<usize>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { head: vec![NONE; nodes], to: Vec::new(), cap: Vec::new(), next: Vec::new() }
    }

    fn add(&mut self, u: usize, v: usize, c: i32) {
        for (a, b, c) in [(u, v, c), (v, u, 0)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![NONE; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut a = self.head[u];
            while a != NONE {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = a;
                    queue.push_back(v);
                }
                a = self.next[a];
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let a = via[v];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            v = self.to[a ^ 1];
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bi3, cyc3, path3, star};
    use crate::random::random_strongly_connected;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn definitional_examples() {
        assert!(brute_vertex_resilient(&path3(), 0, 1));
        assert!(!brute_vertex_resilient(&cyc3(), 0, 1));
        assert!(!brute_vertex_resilient(&star(3), 1, 2));
        assert!(brute_2v_connected(&bi3(), 0, 1));
        assert!(!brute_2v_connected(&path3(), 0, 1));
        assert!(brute_2e_connected(&bi3(), 0, 1));
        assert!(!brute_2e_connected(&path3(), 0, 1));
        assert!(!brute_2e_connected(&cyc3(), 0, 1));
        assert_eq!(brute_dominators(&cyc3(), 0)[1], vec![0, 1]);
        assert_eq!(brute_dominators(&cyc3(), 0)[2], vec![0, 1, 2]);
        assert_eq!(brute_dominators(&bi3(), 0)[2], vec![0, 2]);
    }

    #[test]
    fn flow_agrees_with_resilience_and_edge_connectivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(3..=12);
            let m = rng.gen_range(n..=3 * n);
            let g = random_strongly_connected(&mut rng, n, m);
            let vr = brute_vr_matrix(&g);
            let e2 = brute_2e_matrix(&g);
            let v2 = brute_2v_matrix(&g);
            for u in 0..n {
                for w in 0..n {
                    if u != w {
                        assert_eq!(v2[u][w], vr[u][w] && e2[u][w], "pair ({u},{w})");
                        assert_eq!(vr[u][w], brute_vertex_resilient(&g, u, w));
                    }
                }
            }
        }
    }
}
