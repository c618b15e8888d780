//! Trees, simple paths and plane arborescences.

use std::collections::VecDeque;

use crate::{Error, Result, Vertex};

/// An undirected tree on vertices `0..n`.
///
/// Adjacency lists keep the order in which edges were given, which fixes the
/// default children order of every arborescence derived from the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    // Rooted at 0, used for path queries.
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
}

impl Tree {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "expected {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!("edge {u}-{v} out of range")));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[0] = 0;
        let mut queue = VecDeque::from([0]);
        let mut seen = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some(u);
                    seen += 1;
                    queue.push_back(w);
                }
            }
        }
        if seen != n {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }
        Ok(Tree {
            edges,
            adj,
            parent,
            depth,
        })
    }

    /// The path graph `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Tree::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("path is a tree")
    }

    /// The star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Tree::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).expect("star is a tree")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn is_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }

    /// The unique path from `u` to `v`, listed from `u`.
    pub fn path_between(&self, u: Vertex, v: Vertex) -> TreePath {
        let (mut a, mut b) = (u, v);
        let mut front = Vec::new();
        let mut back = Vec::new();
        while self.depth[a] > self.depth[b] {
            front.push(a);
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            back.push(b);
            b = self.parent[b].unwrap();
        }
        while a != b {
            front.push(a);
            back.push(b);
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        front.push(a);
        front.extend(back.into_iter().rev());
        TreePath(front)
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> usize {
        self.path_between(u, v).len() - 1
    }

    /// Parses the text format: `n` on the first line, then `n-1` lines `u v`.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let n: usize = first.trim().parse().map_err(|_| Error::Parse {
            line: 1,
            msg: format!("bad vertex count {first:?}"),
        })?;
        let mut edges = Vec::new();
        for (i, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| -> Result<Vertex> {
                s.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("bad vertex id {s:?}"),
                })
            };
            if parts.len() != 2 {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "expected two vertex ids".into(),
                });
            }
            edges.push((parse(parts[0])?, parse(parts[1])?));
        }
        Tree::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Roots the tree at `root`; children follow adjacency order.
    pub fn rooted(&self, root: Vertex) -> PlaneArborescence {
        let n = self.n();
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    children[u].push(w);
                    queue.push_back(w);
                }
            }
        }
        PlaneArborescence::new(root, children).expect("rooted tree is an arborescence")
    }
}

/// A simple path, listed as a vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePath(pub Vec<Vertex>);

impl TreePath {
    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn reversed(&self) -> TreePath {
        TreePath(self.0.iter().rev().copied().collect())
    }

    /// True if the sequence is nonempty, has no repeated vertex and
    /// consecutive vertices are adjacent in `tree`.
    pub fn is_path_in(&self, tree: &Tree) -> bool {
        if self.0.is_empty() || self.0.iter().any(|&v| v >= tree.n()) {
            return false;
        }
        let mut seen = vec![false; tree.n()];
        for &v in &self.0 {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        self.0.windows(2).all(|w| tree.is_edge(w[0], w[1]))
    }
}

/// Every path of the tree, one per unordered vertex pair (single vertices
/// included), listed from the smaller endpoint.
pub fn enumerate_paths(tree: &Tree) -> Vec<TreePath> {
    let n = tree.n();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for u in 0..n {
        for v in u..n {
            out.push(tree.path_between(u, v));
        }
    }
    out
}

/// A rooted tree with edges directed away from the root and a total order on
/// the children of every vertex (left to right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneArborescence {
    root: Vertex,
    children: Vec<Vec<Vertex>>,
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
    dfs: Vec<Vertex>,
    dfs_index: Vec<usize>,
    // up(v) occupies dfs[dfs_index[v]..subtree_end[v]].
    subtree_end: Vec<usize>,
    on_rightmost: Vec<bool>,
}

impl PlaneArborescence {
    pub fn new(root: Vertex, children: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = children.len();
        if root >= n {
            return Err(Error::Invalid(format!("root {root} out of range")));
        }
        let mut parent = vec![None; n];
        for (u, cs) in children.iter().enumerate() {
            for &c in cs {
                if c >= n || c == root || parent[c].is_some() {
                    return Err(Error::Invalid(format!("vertex {c} has an invalid parent")));
                }
                parent[c] = Some(u);
            }
        }
        let mut depth = vec![0; n];
        let mut dfs = Vec::with_capacity(n);
        let mut dfs_index = vec![usize::MAX; n];
        let mut subtree_end = vec![0; n];
        // Iterative preorder; the second stack entry marks subtree completion.
        let mut stack = vec![(root, false)];
        while let Some((v, done)) = stack.pop() {
            if done {
                subtree_end[v] = dfs.len();
                continue;
            }
            if dfs_index[v] != usize::MAX {
                return Err(Error::Invalid("children lists contain a cycle".into()));
            }
            dfs_index[v] = dfs.len();
            dfs.push(v);
            stack.push((v, true));
            for &c in children[v].iter().rev() {
                depth[c] = depth[v] + 1;
                stack.push((c, false));
            }
        }
        if dfs.len() != n {
            return Err(Error::Invalid("not every vertex is reachable from the root".into()));
        }
        let mut on_rightmost = vec![false; n];
        let mut v = root;
        on_rightmost[v] = true;
        while let Some(&last) = children[v].last() {
            v = last;
            on_rightmost[v] = true;
        }
        Ok(PlaneArborescence {
            root,
            children,
            parent,
            depth,
            dfs,
            dfs_index,
            subtree_end,
            on_rightmost,
        })
    }

    pub fn n(&self) -> usize {
        self.children.len()
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    /// Distance from the root.
    pub fn height(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.children[v].is_empty()
    }

    /// Start at the root and keep taking the last child until a leaf.
    pub fn rightmost_path(&self) -> TreePath {
        let mut path = vec![self.root];
        let mut v = self.root;
        while let Some(&last) = self.children[v].last() {
            path.push(last);
            v = last;
        }
        TreePath(path)
    }

    pub fn on_rightmost(&self, v: Vertex) -> bool {
        self.on_rightmost[v]
    }

    /// Preorder, children visited left to right.
    pub fn dfs_left_to_right(&self) -> &[Vertex] {
        &self.dfs
    }

    pub fn dfs_index(&self, v: Vertex) -> usize {
        self.dfs_index[v]
    }

    /// `v` together with all its descendants, in preorder.
    pub fn up_set(&self, v: Vertex) -> &[Vertex] {
        &self.dfs[self.dfs_index[v]..self.subtree_end[v]]
    }

    pub fn is_ancestor_or_self(&self, a: Vertex, v: Vertex) -> bool {
        let i = self.dfs_index[v];
        self.dfs_index[a] <= i && i < self.subtree_end[a]
    }

    /// Vertices from the root down to `v`, inclusive.
    pub fn root_chain(&self, v: Vertex) -> Vec<Vertex> {
        let mut chain = vec![v];
        let mut w = v;
        while let Some(p) = self.parent[w] {
            chain.push(p);
            w = p;
        }
        chain.reverse();
        chain
    }

    /// True if consecutive vertices are parent and child.
    pub fn is_directed_path(&self, path: &[Vertex]) -> bool {
        !path.is_empty()
            && path.iter().all(|&v| v < self.n())
            && path.windows(2).all(|w| self.parent[w[1]] == Some(w[0]))
    }

    /// The directed path from ancestor `a` to `v`, if `a` is an ancestor.
    pub fn directed_path(&self, a: Vertex, v: Vertex) -> Option<Vec<Vertex>> {
        if !self.is_ancestor_or_self(a, v) {
            return None;
        }
        let mut path = vec![v];
        let mut w = v;
        while w != a {
            w = self.parent[w].unwrap();
            path.push(w);
        }
        path.reverse();
        Some(path)
    }
}
