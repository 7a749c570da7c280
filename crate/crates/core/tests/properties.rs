use proptest::prelude::*;
use vcblocks::oracle::{brute_2v_matrix, brute_vr_matrix};
use vcblocks::{
    dominator_tree, fast_vrb, fast_vrb_from, scc, strong_cut_set, two_edge_connected_blocks,
    two_vertex_connected_blocks, Digraph,
};

/// A Hamiltonian cycle plus arbitrary extra edges, so always strongly connected.
fn strongly_connected(max_n: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..4 * n).prop_map(move |extra| {
            let mut edges: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
            edges.extend(extra.into_iter().filter(|(u, v)| u != v));
            Digraph::from_edges(n, edges).unwrap()
        })
    })
}

fn any_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..3 * n)
            .prop_map(move |edges| Digraph::from_edges(n, edges.into_iter().filter(|(u, v)| u != v)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reverse_is_an_involution(g in any_digraph(12)) {
        let rr = g.reverse().reverse();
        prop_assert_eq!(rr.edges(), g.edges());
        for v in 0..g.n() {
            prop_assert_eq!(rr.successors(v), g.successors(v));
        }
    }

    #[test]
    fn components_survive_reversal(g in any_digraph(12)) {
        let (a, b) = (scc(&g), scc(&g.reverse()));
        for u in 0..g.n() {
            for w in 0..g.n() {
                prop_assert_eq!(a.same(u, w), b.same(u, w));
            }
        }
    }

    #[test]
    fn fast_blocks_match_oracle_from_any_root(g in strongly_connected(10), root in any::<prop::sample::Index>()) {
        let s = root.index(g.n());
        let (f, _) = fast_vrb_from(&g, s).unwrap();
        let brute = brute_vr_matrix(&g);
        for u in 0..g.n() {
            for w in u + 1..g.n() {
                prop_assert_eq!(f.same_block(u, w), brute[u][w], "pair ({}, {}) from root {}", u, w, s);
            }
        }
    }

    #[test]
    fn resilient_pairs_are_siblings_or_parent_and_child(g in strongly_connected(12), root in any::<prop::sample::Index>()) {
        let s = root.index(g.n());
        let d = dominator_tree(&g, s).unwrap();
        let (f, _) = fast_vrb(&g).unwrap();
        for u in 0..g.n() {
            for w in u + 1..g.n() {
                if f.same_block(u, w) {
                    let related = d.parent(u) == d.parent(w) || d.parent(u) == Some(w) || d.parent(w) == Some(u);
                    prop_assert!(related, "({}, {}) resilient but unrelated in the dominator tree", u, w);
                }
            }
        }
    }

    #[test]
    fn four_resilient_pairs_close_up(g in strongly_connected(10)) {
        let (f, _) = fast_vrb(&g).unwrap();
        let n = g.n();
        for u in 0..n {
            for v in u + 1..n {
                for x in 0..n {
                    for y in x + 1..n {
                        if [x, y].contains(&u) || [x, y].contains(&v) {
                            continue;
                        }
                        if f.same_block(u, x) && f.same_block(v, x) && f.same_block(u, y) && f.same_block(v, y) {
                            prop_assert!(f.same_block(x, y) && f.same_block(u, v));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn resilient_but_not_2vc_means_a_strong_bridge_between(g in strongly_connected(10)) {
        let (vrb, _) = fast_vrb(&g).unwrap();
        let vcb = two_vertex_connected_blocks(&vrb, &two_edge_connected_blocks(&g).unwrap());
        let cut = strong_cut_set(&g).unwrap();
        let brute = brute_2v_matrix(&g);
        for u in 0..g.n() {
            for w in u + 1..g.n() {
                prop_assert_eq!(vcb.same_block(u, w), brute[u][w]);
                if vrb.same_block(u, w) {
                    let bridged = cut.strong_bridges.iter().any(|&e| {
                        let (a, b) = g.edge(e);
                        (a, b) == (u, w) || (a, b) == (w, u)
                    });
                    prop_assert_eq!(!vcb.same_block(u, w), bridged);
                }
            }
        }
    }

    #[test]
    fn blocks_are_the_same_on_the_reverse(g in strongly_connected(12)) {
        let (a, _) = fast_vrb(&g).unwrap();
        let (b, _) = fast_vrb(&g.reverse()).unwrap();
        prop_assert_eq!(a.blocks(), b.blocks());
    }
}
