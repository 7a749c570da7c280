//! Block families and the block forest.
//!
//! [`BlockFamily`] is the mutable working set used while an algorithm runs;
//! it supports the `refine` and `split` primitives in time linear in the
//! blocks touched. [`BlockForest`] is the finalized, rooted, read-only form
//! answering same-block queries in O(1).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Vertex, NONE};

pub type BlockId = usize;

#[derive(Clone, Debug)]
pub struct BlockFamily {
    n: usize,
    blocks: Vec<Option<Vec<Vertex>>>,
    // may hold ids of removed blocks until the next scan of that vertex
    of_vertex: Vec<Vec<BlockId>>,
    live: usize,
    count: Vec<usize>,
    slot: Vec<usize>,
    touched: Vec<usize>,
    pairs: Vec<(usize, Vertex)>,
}

impl BlockFamily {
    pub fn new(n: usize) -> Self {
        BlockFamily {
            n,
            blocks: Vec::new(),
            of_vertex: vec![Vec::new(); n],
            live: 0,
            count: vec![0; n + 1],
            slot: vec![NONE; n + 1],
            touched: Vec::new(),
            pairs: Vec::new(),
        }
    }

    /// A family holding the single block `members` (if it has two or more).
    pub fn with_block(n: usize, members: Vec<Vertex>) -> Self {
        let mut f = BlockFamily::new(n);
        f.add_block(members);
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of live blocks.
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Adds a block; blocks with fewer than two members are discarded.
    pub fn add_block(&mut self, members: Vec<Vertex>) -> Option<BlockId> {
        if members.len() < 2 {
            return None;
        }
        let id = self.blocks.len();
        for &v in &members {
            self.of_vertex[v].push(id);
        }
        self.blocks.push(Some(members));
        self.live += 1;
        Some(id)
    }

    /// Removes a block and returns its members.
    pub fn remove_block(&mut self, b: BlockId) -> Option<Vec<Vertex>> {
        let out = self.blocks.get_mut(b)?.take();
        if out.is_some() {
            self.live -= 1;
        }
        out
    }

    pub fn block(&self, b: BlockId) -> Option<&[Vertex]> {
        self.blocks.get(b)?.as_deref()
    }

    pub fn is_live(&self, b: BlockId) -> bool {
        matches!(self.blocks.get(b), Some(Some(_)))
    }

    pub fn live_ids(&self) -> Vec<BlockId> {
        (0..self.blocks.len()).filter(|&b| self.blocks[b].is_some()).collect()
    }

    /// Live blocks containing `v`. Drops stale entries from the list.
    pub fn blocks_of(&mut self, v: Vertex) -> &[BlockId] {
        let blocks = &self.blocks;
        self.of_vertex[v].retain(|&b| blocks[b].is_some());
        &self.of_vertex[v]
    }

    /// Replaces every block `B` in `targets` by the sets `B ∩ (S ∪ {x})` of
    /// size at least two, where the sets `S` are given as labels: vertices
    /// with equal nonzero `label` form one set, label 0 means "in no set".
    /// `x` must carry label 0. Returns the ids of the new blocks.
    pub fn refine(&mut self, targets: &[BlockId], label: &[usize], x: Option<Vertex>) -> Result<Vec<BlockId>> {
        if let Some(x) = x {
            if label[x] != 0 {
                return Err(Error::contract("refine pivot must not belong to a partition set"));
            }
        }
        let mut created = Vec::new();
        let mut groups = Vec::new();
        for &b in targets {
            let Some(members) = self.remove_block(b) else { continue };
            let mut pairs = std::mem::take(&mut self.pairs);
            pairs.clear();
            let mut has_x = false;
            for &v in &members {
                if Some(v) == x {
                    has_x = true;
                } else if label[v] != 0 {
                    pairs.push((label[v], v));
                }
            }
            let extra = if has_x { x } else { None };
            self.group(&pairs, extra, &mut groups);
            self.pairs = pairs;
            for grp in groups.drain(..) {
                created.extend(self.add_block(grp));
            }
        }
        Ok(created)
    }

    /// [`refine`](Self::refine) with the partition given as explicit sets.
    pub fn refine_sets(
        &mut self,
        targets: &[BlockId],
        sets: &[Vec<Vertex>],
        x: Option<Vertex>,
    ) -> Result<Vec<BlockId>> {
        let mut label = vec![0usize; self.n];
        for (i, s) in sets.iter().enumerate() {
            for &v in s {
                if v >= self.n {
                    return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
                }
                if label[v] != 0 {
                    return Err(Error::contract(format!("vertex {v} appears in two partition sets")));
                }
                label[v] = i + 1;
            }
        }
        self.refine(targets, &label, x)
    }

    /// Refines every live block.
    pub fn refine_all(&mut self, label: &[usize], x: Option<Vertex>) -> Result<Vec<BlockId>> {
        let ids = self.live_ids();
        self.refine(&ids, label, x)
    }

    /// Replaces block `b` by the sets `b ∩ Ĉ_T(z)` of size at least two, for
    /// every node `z` of a tree `T`, where `Ĉ_T(z)` is `z` with its children.
    /// `pos(v)` gives the preorder number of `v` in `T` and that of its
    /// parent (`None` at the root), or `None` if `v` is not in `T`.
    pub fn split(
        &mut self,
        b: BlockId,
        pos: impl Fn(Vertex) -> Option<(usize, Option<usize>)>,
    ) -> Result<Vec<BlockId>> {
        let mut pairs = std::mem::take(&mut self.pairs);
        pairs.clear();
        let Some(Some(members)) = self.blocks.get(b) else {
            self.pairs = pairs;
            return Ok(Vec::new());
        };
        for &v in members {
            let Some((pre, parent_pre)) = pos(v) else {
                self.pairs = pairs;
                return Err(Error::contract(format!("block member {v} is not a node of the split tree")));
            };
            pairs.push((pre, v));
            if let Some(p) = parent_pre {
                pairs.push((p, v));
            }
        }
        self.remove_block(b);
        let mut groups = Vec::new();
        self.group(&pairs, None, &mut groups);
        self.pairs = pairs;
        Ok(groups.into_iter().filter_map(|g| self.add_block(g)).collect())
    }

    /// Buckets `pairs` by label, in order of first appearance, and emits the
    /// groups that reach size two once `extra` is added to each.
    fn group(&mut self, pairs: &[(usize, Vertex)], extra: Option<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let bonus = usize::from(extra.is_some());
        for &(l, _) in pairs {
            if l >= self.count.len() {
                self.count.resize(l + 1, 0);
                self.slot.resize(l + 1, NONE);
            }
            if self.count[l] == 0 {
                self.touched.push(l);
            }
            self.count[l] += 1;
        }
        for &l in &self.touched {
            if self.count[l] + bonus >= 2 {
                self.slot[l] = out.len();
                let mut g = Vec::with_capacity(self.count[l] + bonus);
                g.extend(extra);
                out.push(g);
            }
        }
        for &(l, v) in pairs {
            if self.slot[l] != NONE {
                out[self.slot[l]].push(v);
            }
        }
        for l in self.touched.drain(..) {
            self.count[l] = 0;
            self.slot[l] = NONE;
        }
    }

    /// Current blocks, each sorted, in canonical order.
    pub fn sorted_blocks(&self) -> Vec<Vec<Vertex>> {
        canonical(self.blocks.iter().flatten().cloned().collect())
    }

    pub fn finalize(&self) -> BlockForest {
        BlockForest::from_blocks(self.n, self.blocks.iter().flatten().cloned().collect())
    }
}

fn canonical(mut blocks: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
    for b in &mut blocks {
        b.sort_unstable();
        b.dedup();
    }
    blocks.retain(|b| b.len() >= 2);
    blocks.sort_unstable();
    blocks
}

/// A rooted block forest: vertex nodes and block nodes, each block adjacent
/// to its members. Blocks are sorted by smallest member; each tree is rooted
/// at its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockForest {
    n: usize,
    blocks: Vec<Vec<Vertex>>,
    off: Vec<usize>,
    of_vertex: Vec<BlockId>,
    vertex_parent: Vec<BlockId>,
    block_parent: Vec<Vertex>,
    acyclic: bool,
}

impl BlockForest {
    /// Builds the forest from a list of blocks. Members are sorted, blocks of
    /// fewer than two vertices are dropped.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<Vertex>>) -> Self {
        let blocks = canonical(blocks);
        let mut off = vec![0usize; n + 1];
        for b in &blocks {
            for &v in b {
                off[v + 1] += 1;
            }
        }
        for i in 0..n {
            off[i + 1] += off[i];
        }
        let mut fill = off.clone();
        let mut of_vertex = vec![0; off[n]];
        for (id, b) in blocks.iter().enumerate() {
            for &v in b {
                of_vertex[fill[v]] = id;
                fill[v] += 1;
            }
        }

        let mut vertex_parent = vec![NONE; n];
        let mut block_parent = vec![NONE; blocks.len()];
        let mut seen = vec![false; n];
        let mut acyclic = true;
        let mut queue = Vec::new();
        for r in 0..n {
            if seen[r] || off[r] == off[r + 1] {
                continue;
            }
            seen[r] = true;
            queue.push(r);
            while let Some(v) = queue.pop() {
                for &b in &of_vertex[off[v]..off[v + 1]] {
                    if b == vertex_parent[v] {
                        continue;
                    }
                    if block_parent[b] != NONE {
                        acyclic = false;
                        continue;
                    }
                    block_parent[b] = v;
                    for &y in &blocks[b] {
                        if y == v {
                            continue;
                        }
                        if seen[y] {
                            acyclic = false;
                            continue;
                        }
                        seen[y] = true;
                        vertex_parent[y] = b;
                        queue.push(y);
                    }
                }
            }
        }
        BlockForest { n, blocks, off, of_vertex, vertex_parent, block_parent, acyclic }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn total_size(&self) -> usize {
        self.of_vertex.len()
    }

    /// Ids of the blocks containing `v`.
    pub fn blocks_of(&self, v: Vertex) -> &[BlockId] {
        &self.of_vertex[self.off[v]..self.off[v + 1]]
    }

    /// Parent block of a vertex node, `None` at roots and isolated vertices.
    pub fn vertex_parent(&self, v: Vertex) -> Option<BlockId> {
        let b = self.vertex_parent[v];
        (b != NONE).then_some(b)
    }

    /// Parent vertex of a block node.
    pub fn block_parent(&self, b: BlockId) -> Vertex {
        self.block_parent[b]
    }

    /// `true` iff some block contains both `u` and `w` (`u ≠ w`): the two are
    /// siblings or one is the grandparent of the other.
    #[inline]
    pub fn same_block(&self, u: Vertex, w: Vertex) -> bool {
        if u == w {
            return false;
        }
        let (pu, pw) = (self.vertex_parent[u], self.vertex_parent[w]);
        (pu != NONE && (pu == pw || self.block_parent[pu] == w)) || (pw != NONE && self.block_parent[pw] == u)
    }

    /// The block containing both `u` and `w`, if any.
    pub fn common_block(&self, u: Vertex, w: Vertex) -> Option<BlockId> {
        if !self.same_block(u, w) {
            return None;
        }
        let (pu, pw) = (self.vertex_parent[u], self.vertex_parent[w]);
        if pu != NONE && (pu == pw || self.block_parent[pu] == w) {
            Some(pu)
        } else {
            Some(pw)
        }
    }

    /// Checks the structural invariants: member ranges and sizes, the
    /// forest being acyclic, pairwise intersections of at most one vertex,
    /// at most `n-1` blocks and at most `2n-2` memberships.
    pub fn validate(&self) -> Result<()> {
        for (id, b) in self.blocks.iter().enumerate() {
            if b.len() < 2 {
                return Err(Error::contract(format!("block {id} has fewer than two members")));
            }
            if let Some(&v) = b.iter().find(|&&v| v >= self.n) {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let mut hits = vec![0usize; self.blocks.len()];
        for (id, b) in self.blocks.iter().enumerate() {
            for &v in b {
                for &other in self.blocks_of(v) {
                    if other != id {
                        hits[other] += 1;
                        if hits[other] > 1 {
                            return Err(Error::contract(format!("blocks {id} and {other} share two vertices")));
                        }
                    }
                }
            }
            for &v in b {
                for &other in self.blocks_of(v) {
                    hits[other] = 0;
                }
            }
        }
        if !self.acyclic {
            return Err(Error::contract("block graph contains a cycle"));
        }
        if self.n > 0 && self.blocks.len() > self.n - 1 {
            return Err(Error::contract(format!("{} blocks exceed n-1", self.blocks.len())));
        }
        if self.n > 0 && self.total_size() > 2 * self.n - 2 {
            return Err(Error::contract(format!("{} memberships exceed 2n-2", self.total_size())));
        }
        Ok(())
    }

    /// One block per line, members separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for b in &self.blocks {
            let line: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::RootedTree;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    #[test]
    fn refine_examples() {
        let mut f = BlockFamily::with_block(3, vec![0, 1, 2]);
        f.refine_sets(&f.live_ids(), &[vec![0], vec![2]], Some(1)).unwrap();
        assert_eq!(f.sorted_blocks(), vec![vec![0, 1], vec![1, 2]]);

        let mut f = BlockFamily::with_block(3, vec![0, 1, 2]);
        f.refine_sets(&f.live_ids(), &[vec![0, 1, 2]], None).unwrap();
        assert_eq!(f.sorted_blocks(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn refine_rejects_overlap() {
        let mut f = BlockFamily::with_block(3, vec![0, 1, 2]);
        assert!(f.refine_sets(&[0], &[vec![0, 1], vec![1, 2]], None).is_err());
    }

    #[test]
    fn split_examples() {
        let path = RootedTree::from_parents(0, vec![NONE, 0, 1]).unwrap();
        let star = RootedTree::from_parents(0, vec![NONE, 0, 0]).unwrap();
        for (t, want) in [(path, vec![vec![0, 1], vec![1, 2]]), (star, vec![vec![0, 1, 2]])] {
            let mut f = BlockFamily::with_block(3, vec![0, 1, 2]);
            f.split(0, |v| Some((t.pre(v), t.parent(v).map(|p| t.pre(p))))).unwrap();
            assert_eq!(f.sorted_blocks(), want);
        }
    }

    #[test]
    fn split_rejects_foreign_member() {
        let mut f = BlockFamily::with_block(3, vec![0, 1, 2]);
        assert!(f.split(0, |v| (v < 2).then_some((v, None))).is_err());
    }

    #[test]
    fn star_queries() {
        let f = BlockForest::from_blocks(4, vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
        f.validate().unwrap();
        assert!(f.same_block(0, 2));
        assert!(!f.same_block(1, 2));
        let f = BlockForest::from_blocks(4, vec![vec![0, 1]]);
        assert!(!f.same_block(3, 0));
        assert!(!f.same_block(3, 3));
    }

    #[test]
    fn validator_catches_cycles_and_overlap() {
        let f = BlockForest::from_blocks(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert!(f.validate().is_err());
        let f = BlockForest::from_blocks(4, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(f.validate().is_err());
    }

    fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Vertex>> {
        let mut vs: Vec<Vertex> = (0..n).filter(|_| rng.gen_bool(0.8)).collect();
        vs.shuffle(rng);
        let k = rng.gen_range(1..=4);
        let mut sets = vec![Vec::new(); k];
        for v in vs {
            sets[rng.gen_range(0..k)].push(v);
        }
        sets
    }

    #[test]
    fn refine_matches_naive_intersection() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.gen_range(2..=16);
            let blocks: Vec<Vec<Vertex>> =
                (0..rng.gen_range(1..4)).map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).collect()).collect();
            let sets = random_partition(&mut rng, n);
            let in_sets: BTreeSet<Vertex> = sets.iter().flatten().copied().collect();
            let x = (0..n).find(|v| !in_sets.contains(v)).filter(|_| rng.gen_bool(0.7));
            let mut f = BlockFamily::new(n);
            for b in &blocks {
                f.add_block(b.clone());
            }
            f.refine_all(&label_of(n, &sets), x).unwrap();
            let mut want = Vec::new();
            for b in blocks.iter().filter(|b| b.len() >= 2) {
                for s in &sets {
                    let mut inter: Vec<Vertex> = b.iter().copied().filter(|v| s.contains(v) || Some(*v) == x).collect();
                    inter.sort_unstable();
                    want.push(inter);
                }
            }
            assert_eq!(f.sorted_blocks(), canonical(want));
        }
    }

    fn label_of(n: usize, sets: &[Vec<Vertex>]) -> Vec<usize> {
        let mut label = vec![0; n];
        for (i, s) in sets.iter().enumerate() {
            for &v in s {
                label[v] = i + 1;
            }
        }
        label
    }

    #[test]
    fn split_matches_naive_children_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..300 {
            let n = rng.gen_range(2..=16);
            let mut order: Vec<Vertex> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut parent = vec![NONE; n];
            for i in 1..n {
                parent[order[i]] = order[rng.gen_range(0..i)];
            }
            let t = RootedTree::from_parents(order[0], parent).unwrap();
            let b: Vec<Vertex> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            let mut f = BlockFamily::with_block(n, b.clone());
            if f.is_empty() {
                continue;
            }
            f.split(0, |v| Some((t.pre(v), t.parent(v).map(|p| t.pre(p))))).unwrap();
            let want: Vec<Vec<Vertex>> =
                (0..n).map(|z| b.iter().copied().filter(|&v| v == z || t.parent(v) == Some(z)).collect()).collect();
            assert_eq!(f.sorted_blocks(), canonical(want));
        }
    }

    #[test]
    fn same_block_matches_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            // random block tree: attach each new block to one existing vertex
            let n = rng.gen_range(2..=40);
            let mut blocks = Vec::new();
            let mut placed = vec![0usize];
            let mut next = 1;
            while next < n {
                let size = rng.gen_range(1..=3).min(n - next);
                let anchor = placed[rng.gen_range(0..placed.len())];
                let mut b = vec![anchor];
                b.extend(next..next + size);
                placed.extend(next..next + size);
                next += size;
                blocks.push(b);
            }
            let f = BlockForest::from_blocks(n, blocks.clone());
            f.validate().unwrap();
            for u in 0..n {
                for w in 0..n {
                    let want = u != w && blocks.iter().any(|b| b.contains(&u) && b.contains(&w));
                    assert_eq!(f.same_block(u, w), want);
                }
            }
        }
    }
}
