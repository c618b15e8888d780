//! Exact and heuristic path decompositions of trees.
//!
//! Both use the same recursion: a tree `D` with at least two vertices has a
//! decomposition of width `max(1, 1 + max pw(C))` where `C` ranges over the
//! components of `D - Q` for a path `Q`, and the optimum is attained by some
//! leaf-to-leaf path. The exact variant searches all such paths with
//! memoization over vertex bitmasks; the heuristic takes a longest path.

use std::collections::HashMap;

use super::PathDecomposition;
use crate::graph::Tree;
use crate::{Error, Result, Vertex};

/// Largest tree accepted by [`tree_pathwidth_exact`].
pub const EXACT_PATHWIDTH_LIMIT: usize = 64;

/// Minimum-width path decomposition, deterministic for a given tree.
pub fn tree_pathwidth_exact(tree: &Tree) -> Result<(usize, PathDecomposition)> {
    let n = tree.n();
    if n > EXACT_PATHWIDTH_LIMIT {
        return Err(Error::SizeLimit {
            what: "vertices for exact pathwidth",
            actual: n as u128,
            limit: EXACT_PATHWIDTH_LIMIT as u128,
        });
    }
    if n == 0 {
        return Ok((0, PathDecomposition::default()));
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| tree.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let mut ex = Exact {
        adj,
        exact: HashMap::new(),
        lower: HashMap::new(),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let k = ex.solve(all, n + 1);
    let mut bags = Vec::new();
    ex.emit(all, &mut bags);
    Ok((k, PathDecomposition::new(bags)))
}

struct Exact {
    adj: Vec<u64>,
    exact: HashMap<u64, (usize, Vec<Vertex>)>,
    lower: HashMap<u64, usize>,
}

fn bits(mut m: u64) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as Vertex;
            m &= m - 1;
            Some(v)
        }
    })
}

impl Exact {
    fn components(&self, mut rest: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                next &= rest & !comp;
                comp |= next;
                frontier = next;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    /// Leaf-to-leaf paths of `d`, longest first.
    fn leaf_paths(&self, d: u64) -> Vec<Vec<Vertex>> {
        let leaves: Vec<Vertex> = bits(d)
            .filter(|&v| (self.adj[v] & d).count_ones() == 1)
            .collect();
        let mut paths = Vec::new();
        let mut parent = [usize::MAX; 64];
        for (i, &a) in leaves.iter().enumerate() {
            parent[a] = a;
            let mut stack = vec![a];
            let mut seen = 1u64 << a;
            while let Some(v) = stack.pop() {
                for w in bits(self.adj[v] & d & !seen) {
                    seen |= 1 << w;
                    parent[w] = v;
                    stack.push(w);
                }
            }
            for &b in &leaves[i + 1..] {
                let mut p = vec![b];
                let mut v = b;
                while v != a {
                    v = parent[v];
                    p.push(v);
                }
                p.reverse();
                paths.push(p);
            }
        }
        paths.sort_by(|x, y| y.len().cmp(&x.len()));
        paths
    }

    /// Exact pathwidth of the subtree `d` if it is below `cap`; otherwise
    /// some value `>= cap`.
    fn solve(&mut self, d: u64, cap: usize) -> usize {
        if let Some(&(k, _)) = self.exact.get(&d) {
            return k;
        }
        if let Some(&lb) = self.lower.get(&d) {
            if lb >= cap {
                return lb;
            }
        }
        if d.count_ones() == 1 {
            self.exact.insert(d, (0, bits(d).collect()));
            return 0;
        }
        let lb = self.lower_bound(d);
        if lb >= cap {
            self.lower.insert(d, lb);
            return lb;
        }
        let mut best = cap;
        let mut best_path = None;
        for q in self.leaf_paths(d) {
            let qmask = q.iter().fold(0u64, |m, &v| m | 1 << v);
            let mut comps = self.components(d & !qmask);
            comps.sort_by_key(|c| std::cmp::Reverse(c.count_ones()));
            let mut val = 1;
            for &c in &comps {
                val = val.max(self.lower_bound(c) + 1);
            }
            if val >= best {
                continue;
            }
            for c in comps {
                let sub = self.solve(c, best.saturating_sub(1));
                val = val.max(sub + 1);
                if val >= best {
                    break;
                }
            }
            if val < best {
                best = val;
                best_path = Some(q);
                if best <= lb.max(1) {
                    break;
                }
            }
        }
        match best_path {
            Some(q) => {
                self.exact.insert(d, (best, q));
            }
            None => {
                let lb = self.lower.entry(d).or_insert(0);
                *lb = (*lb).max(cap);
            }
        }
        best
    }

    /// Lower bound from the rule that a vertex with three branches of
    /// pathwidth at least `k` forces pathwidth at least `k + 1`, applied to
    /// every rooted branch of `d` bottom-up and then rerooted.
    fn lower_bound(&mut self, d: u64) -> usize {
        if let Some(&lb) = self.lower.get(&d) {
            return lb;
        }
        let size = d.count_ones() as usize;
        if size <= 2 {
            return size - 1;
        }
        let root = d.trailing_zeros() as Vertex;
        let mut order = vec![root];
        let mut parent = [usize::MAX; 64];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for w in bits(self.adj[v] & d) {
                if w != parent[v] {
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
        let mut sub = [1usize; 64];
        let mut down = [0usize; 64];
        for &v in order.iter().rev() {
            let kids: Vec<Vertex> = bits(self.adj[v] & d).filter(|&w| w != parent[v]).collect();
            let vals: Vec<usize> = kids.iter().map(|&w| down[w]).collect();
            sub[v] = 1 + kids.iter().map(|&w| sub[w]).sum::<usize>();
            down[v] = combine(&vals, sub[v]);
        }
        let mut up = [0usize; 64];
        let mut best = 0;
        for &v in &order {
            let mut vals: Vec<(usize, Vertex)> = bits(self.adj[v] & d)
                .filter(|&w| w != parent[v])
                .map(|w| (down[w], w))
                .collect();
            if v != root {
                vals.push((up[v], usize::MAX));
            }
            let all: Vec<usize> = vals.iter().map(|p| p.0).collect();
            best = best.max(combine(&all, size));
            for &(_, w) in &vals {
                if w != usize::MAX {
                    let rest: Vec<usize> = vals.iter().filter(|p| p.1 != w).map(|p| p.0).collect();
                    up[w] = combine(&rest, size - sub[w]);
                }
            }
        }
        self.lower.insert(d, best);
        best
    }

    fn emit(&mut self, d: u64, bags: &mut Vec<Vec<Vertex>>) {
        let q = self.exact[&d].1.clone();
        let qmask = q.iter().fold(0u64, |m, &v| m | 1 << v);
        let comps = self.components(d & !qmask);
        let before = bags.len();
        for (i, &qi) in q.iter().enumerate() {
            for &c in &comps {
                if self.adj[qi] & c != 0 {
                    self.solve(c, usize::MAX);
                    let start = bags.len();
                    self.emit(c, bags);
                    for bag in &mut bags[start..] {
                        bag.push(qi);
                    }
                }
            }
            match q.get(i + 1) {
                Some(&next) => bags.push(vec![qi, next]),
                None if bags.len() == before => bags.push(vec![qi]),
                None => {}
            }
        }
    }
}

/// Bound for a tree of `size` vertices whose root has branches with the
/// given bounds.
fn combine(vals: &[usize], size: usize) -> usize {
    let mut v = vals.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    let mut b = usize::from(size >= 2);
    if let Some(&m) = v.first() {
        b = b.max(m);
    }
    if let Some(&third) = v.get(2) {
        b = b.max(third + 1);
    }
    b
}

/// A valid path decomposition of any tree, recursing on longest paths.
/// Its width is at most logarithmic in `n` but not always optimal.
pub fn heuristic_path_decomposition(tree: &Tree) -> PathDecomposition {
    let n = tree.n();
    let mut bags = Vec::new();
    if n == 0 {
        return PathDecomposition::default();
    }
    let mut alive = vec![true; n];
    let mut parent = vec![usize::MAX; n];
    heuristic_emit(tree, 0, &mut alive, &mut parent, &mut bags);
    PathDecomposition::new(bags)
}

fn farthest(tree: &Tree, from: Vertex, alive: &[bool], parent: &mut [Vertex]) -> Vertex {
    let mut order = vec![from];
    parent[from] = from;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in tree.neighbors(v) {
            if alive[w] && w != parent[v] {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    *order.last().unwrap()
}

fn heuristic_emit(
    tree: &Tree,
    start: Vertex,
    alive: &mut [bool],
    parent: &mut [Vertex],
    bags: &mut Vec<Vec<Vertex>>,
) {
    let a = farthest(tree, start, alive, parent);
    let b = farthest(tree, a, alive, parent);
    let mut q = vec![b];
    let mut v = b;
    while v != a {
        v = parent[v];
        q.push(v);
    }
    for &x in &q {
        alive[x] = false;
    }
    let before = bags.len();
    for (i, &qi) in q.iter().enumerate() {
        let attached: Vec<Vertex> = tree.neighbors(qi).iter().copied().filter(|&w| alive[w]).collect();
        for w in attached {
            let start = bags.len();
            heuristic_emit(tree, w, alive, parent, bags);
            for bag in &mut bags[start..] {
                bag.push(qi);
            }
        }
        if let Some(&next) = q.get(i + 1) {
            bags.push(vec![qi, next]);
        }
    }
    if bags.len() == before {
        bags.push(vec![q[0]]);
    }
}

/// Vertex separation number by dynamic programming over vertex subsets;
/// equals pathwidth. Intended as a test oracle for `n <= 20`.
pub fn vertex_separation_bruteforce(tree: &Tree) -> Result<usize> {
    let n = tree.n();
    if n > 20 {
        return Err(Error::SizeLimit {
            what: "vertices for subset dynamic programming",
            actual: n as u128,
            limit: 20,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| tree.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let full = (1u32 << n) - 1;
    let mut f = vec![usize::MAX; 1 << n];
    f[0] = 0;
    for s in 1..=full {
        let boundary = (0..n)
            .filter(|&v| s >> v & 1 == 1 && adj[v] & !s & full != 0)
            .count();
        let mut best = usize::MAX;
        for v in 0..n {
            if s >> v & 1 == 1 {
                best = best.min(f[(s & !(1 << v)) as usize]);
            }
        }
        f[s as usize] = best.max(boundary);
    }
    Ok(f[full as usize])
}
