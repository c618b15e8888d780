//! Exact minimum-height path-partitions.
//!
//! A class hanging below another must contain the vertex adjacent to its
//! parent class, so a component is described by the directed edge `p -> w`
//! that enters it. Its best height is a minimum over the paths through `w`,
//! memoized per directed edge. Roughly `O(n^4)` overall.

use std::collections::HashMap;

use super::PathPartition;
use crate::graph::Tree;
use crate::{Error, Result, Vertex};

/// Largest tree accepted by [`min_height_partition`].
pub const MIN_HEIGHT_LIMIT: usize = 96;

const NONE: Vertex = usize::MAX;

struct Search<'a> {
    tree: &'a Tree,
    memo: HashMap<(Vertex, Vertex), (usize, Vec<Vertex>)>,
}

impl Search<'_> {
    /// Vertices reachable from `w` without crossing `p`, with their parent
    /// pointers towards `w`.
    fn component(&self, p: Vertex, w: Vertex) -> (Vec<Vertex>, HashMap<Vertex, Vertex>) {
        let mut order = vec![w];
        let mut up = HashMap::from([(w, NONE)]);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &x in self.tree.neighbors(v) {
                if x != p && x != up[&v] {
                    up.insert(x, v);
                    order.push(x);
                }
            }
        }
        (order, up)
    }

    /// Height of a class `path` plus everything hanging off it, where `skip`
    /// is the neighbor outside the component.
    fn cost(&mut self, path: &[Vertex], skip: Vertex) -> usize {
        let on: Vec<Vertex> = path.to_vec();
        let mut worst = None;
        for &q in path {
            for &x in self.tree.neighbors(q) {
                if x == skip || on.contains(&x) {
                    continue;
                }
                let h = self.solve(q, x).0;
                worst = Some(worst.map_or(h, |w: usize| w.max(h)));
            }
        }
        worst.map_or(0, |h| h + 1)
    }

    /// Best class through `w` for the component entered by `p -> w`.
    fn solve(&mut self, p: Vertex, w: Vertex) -> (usize, Vec<Vertex>) {
        if let Some(hit) = self.memo.get(&(p, w)) {
            return hit.clone();
        }
        let (order, up) = self.component(p, w);
        let to_w = |mut v: Vertex| {
            let mut out = vec![v];
            while up[&v] != NONE {
                v = up[&v];
                out.push(v);
            }
            out
        };
        // branch of w each vertex lies in
        let branch = |v: Vertex| {
            let chain = to_w(v);
            if chain.len() >= 2 {
                chain[chain.len() - 2]
            } else {
                NONE
            }
        };
        let mut best: Option<(usize, Vec<Vertex>)> = None;
        for (i, &a) in order.iter().enumerate() {
            for &b in &order[i..] {
                let (ba, bb) = (branch(a), branch(b));
                if ba == bb && ba != NONE && a != b {
                    continue;
                }
                if a == b && a != w {
                    continue;
                }
                let mut path = to_w(a);
                if b != w {
                    let mut tail = to_w(b);
                    tail.pop();
                    tail.reverse();
                    path.extend(tail);
                }
                let h = self.cost(&path, p);
                if best.as_ref().is_none_or(|(bh, bp)| h < *bh || (h == *bh && path.len() > bp.len())) {
                    best = Some((h, path));
                }
            }
        }
        let best = best.expect("w itself is a candidate");
        self.memo.insert((p, w), best.clone());
        best
    }
}

/// A path-partition of least possible height. Ties prefer longer classes.
pub fn min_height_partition(tree: &Tree) -> Result<PathPartition> {
    let n = tree.n();
    if n == 0 {
        return Err(Error::InvalidTree("empty tree".into()));
    }
    if n > MIN_HEIGHT_LIMIT {
        return Err(Error::SizeLimit {
            what: "vertices for the minimum-height partition",
            actual: n as u128,
            limit: MIN_HEIGHT_LIMIT as u128,
        });
    }
    let mut s = Search {
        tree,
        memo: HashMap::new(),
    };
    let mut best: Option<(usize, Vec<Vertex>)> = None;
    for a in 0..n {
        for b in a..n {
            let path = tree.path_between(a, b).0;
            let h = s.cost(&path, NONE);
            if best.as_ref().is_none_or(|(bh, bp)| h < *bh || (h == *bh && path.len() > bp.len())) {
                best = Some((h, path));
            }
        }
    }
    let (_, root_path) = best.unwrap();
    let mut classes = vec![root_path];
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut parent_of_class = vec![NONE];
    let mut i = 0;
    while i < classes.len() {
        let path = classes[i].clone();
        let skip = parent_of_class[i];
        let mut kids = Vec::new();
        for &q in &path {
            let mut hanging: Vec<Vertex> = tree
                .neighbors(q)
                .iter()
                .copied()
                .filter(|&x| x != skip && !path.contains(&x))
                .collect();
            hanging.sort_unstable();
            for x in hanging {
                let (_, sub) = s.solve(q, x);
                kids.push(classes.len());
                classes.push(sub);
                children.push(Vec::new());
                parent_of_class.push(q);
            }
        }
        children[i] = kids;
        i += 1;
    }
    PathPartition::new(tree, 0, children, classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_and_stars() {
        assert_eq!(min_height_partition(&Tree::path(7)).unwrap().height(), 0);
        assert_eq!(min_height_partition(&Tree::star(5)).unwrap().height(), 1);
        // spider with three legs of length 2 needs one level
        let t = Tree::new(7, vec![(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        let pp = min_height_partition(&t).unwrap();
        assert_eq!(pp.height(), 1);
        assert_eq!(pp.classes().len(), 2);
    }
}
