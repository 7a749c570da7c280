use crate::error::{Error, Result};
use crate::graph::{Vertex, NONE};

/// A rooted tree on the vertex set `0..n` with preorder numbers, subtree sizes
/// and depths, giving O(1) ancestor tests.
///
/// Vertices that are not part of the tree have no parent and a preorder
/// number of [`NONE`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: Vertex,
    parent: Vec<Vertex>,
    pre: Vec<usize>,
    size: Vec<usize>,
    depth: Vec<usize>,
    order: Vec<Vertex>,
    child_off: Vec<usize>,
    children: Vec<Vertex>,
}

impl RootedTree {
    /// Builds a tree from a parent array (`NONE` for the root and for
    /// vertices outside the tree). Children are ordered by vertex id.
    pub fn from_parents(root: Vertex, parent: Vec<Vertex>) -> Result<Self> {
        let n = parent.len();
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        if parent[root] != NONE {
            return Err(Error::contract("the root must not have a parent"));
        }
        let mut child_off = vec![0usize; n + 1];
        for (v, &p) in parent.iter().enumerate() {
            if p != NONE {
                if p >= n {
                    return Err(Error::VertexOutOfRange { vertex: p, n });
                }
                if p == v {
                    return Err(Error::contract(format!("vertex {v} is its own parent")));
                }
                child_off[p + 1] += 1;
            }
        }
        for i in 0..n {
            child_off[i + 1] += child_off[i];
        }
        let mut fill = child_off.clone();
        let mut children = vec![0; child_off[n]];
        for (v, &p) in parent.iter().enumerate() {
            if p != NONE {
                children[fill[p]] = v;
                fill[p] += 1;
            }
        }

        let mut pre = vec![NONE; n];
        let mut depth = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            pre[v] = order.len();
            order.push(v);
            let kids = &children[child_off[v]..child_off[v + 1]];
            for &c in kids.iter().rev() {
                depth[c] = depth[v] + 1;
                stack.push(c);
            }
        }
        let attached = parent.iter().filter(|&&p| p != NONE).count();
        if attached + 1 != order.len() {
            return Err(Error::contract("parent array does not describe a tree rooted at the root"));
        }
        let mut size = vec![0usize; n];
        for &v in order.iter().rev() {
            size[v] += 1;
            if parent[v] != NONE {
                size[parent[v]] += size[v];
            }
        }
        Ok(RootedTree { root, parent, pre, size, depth, order, child_off, children })
    }

    #[inline]
    pub fn root(&self) -> Vertex {
        self.root
    }

    /// Number of vertex slots (including vertices outside the tree).
    pub fn capacity(&self) -> usize {
        self.parent.len()
    }

    /// Number of vertices in the tree.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.pre[v] != NONE
    }

    #[inline]
    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        let p = self.parent[v];
        (p != NONE).then_some(p)
    }

    pub fn parents(&self) -> &[Vertex] {
        &self.parent
    }

    #[inline]
    pub fn pre(&self, v: Vertex) -> usize {
        self.pre[v]
    }

    #[inline]
    pub fn size(&self, v: Vertex) -> usize {
        self.size[v]
    }

    #[inline]
    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    #[inline]
    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[self.child_off[v]..self.child_off[v + 1]]
    }

    #[inline]
    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.child_off[v] == self.child_off[v + 1]
    }

    /// Tree vertices in preorder.
    pub fn preorder(&self) -> &[Vertex] {
        &self.order
    }

    /// `true` iff `a` is an ancestor of `d` (every vertex is its own ancestor).
    #[inline]
    pub fn is_ancestor(&self, a: Vertex, d: Vertex) -> bool {
        let (pa, pd) = (self.pre[a], self.pre[d]);
        pa != NONE && pd != NONE && pa <= pd && pd < pa + self.size[a]
    }

    /// Ancestors of `v` from `v` up to the root.
    pub fn ancestors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let mut cur = if self.contains(v) { v } else { NONE };
        std::iter::from_fn(move || {
            if cur == NONE {
                return None;
            }
            let out = cur;
            cur = self.parent[cur];
            Some(out)
        })
    }

    /// Siblings, or one is the parent of the other.
    #[inline]
    pub fn siblings_or_parent(&self, u: Vertex, w: Vertex) -> bool {
        let (pu, pw) = (self.parent[u], self.parent[w]);
        (pu != NONE && pu == pw) || pu == w || pw == u
    }
}
