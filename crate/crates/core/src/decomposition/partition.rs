//! Path-partitions: a rooted plane tree of vertex-disjoint host paths.
//!
//! Each class path is stored in its left-to-right orientation, so the
//! faithful embedding is implicit: levels come from the shape tree and the
//! horizontal order from positions inside a class.

use super::{validate_path_decomposition, PathDecomposition};
use crate::graph::{PlaneArborescence, Tree, TreePath};
use crate::repetition::spanning_bad_split;
use crate::{Color, Error, Result, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPartition {
    shape: PlaneArborescence,
    classes: Vec<Vec<Vertex>>,
    class_of: Vec<usize>,
    pos: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Right,
    Left,
    Up,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Horizontal,
    Vertical,
}

/// Result of [`classify_ascending`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ascending {
    pub ascending: bool,
    pub source: Option<Vertex>,
    pub direction: Option<Direction>,
    /// Minimum-level vertices in path order.
    pub base: TreePath,
    /// The path enumerated from its source; empty when not ascending.
    pub oriented: TreePath,
}

impl PathPartition {
    /// Builds and validates a partition of `tree`. `children[x]` lists the
    /// shape children of class `x` from left to right.
    pub fn new(
        tree: &Tree,
        root: usize,
        children: Vec<Vec<usize>>,
        classes: Vec<Vec<Vertex>>,
    ) -> Result<Self> {
        let n = tree.n();
        if children.len() != classes.len() {
            return Err(Error::Invalid("shape and class counts differ".into()));
        }
        let shape = PlaneArborescence::new(root, children)?;
        let mut class_of = vec![usize::MAX; n];
        let mut pos = vec![0; n];
        for (x, path) in classes.iter().enumerate() {
            if path.is_empty() {
                return Err(Error::Invalid(format!("class {x} is empty")));
            }
            if !TreePath(path.clone()).is_path_in(tree) {
                return Err(Error::Invalid(format!("class {x} is not a path of the tree")));
            }
            for (i, &v) in path.iter().enumerate() {
                if class_of[v] != usize::MAX {
                    return Err(Error::Invalid(format!("vertex {v} lies in two classes")));
                }
                class_of[v] = x;
                pos[v] = i;
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Invalid(format!("vertex {v} lies in no class")));
        }
        // host edges between classes must be exactly the shape edges
        let mut linking = 0;
        for &(a, b) in tree.edges() {
            let (x, y) = (class_of[a], class_of[b]);
            if x != y {
                if shape.parent(x) != Some(y) && shape.parent(y) != Some(x) {
                    return Err(Error::Invalid(format!(
                        "edge {a}-{b} joins classes {x} and {y} which are not adjacent in the shape"
                    )));
                }
                linking += 1;
            }
        }
        if linking + 1 != classes.len() {
            return Err(Error::Invalid("some shape edge has no host edge".into()));
        }
        Ok(PathPartition {
            shape,
            classes,
            class_of,
            pos,
        })
    }

    pub fn shape(&self) -> &PlaneArborescence {
        &self.shape
    }

    pub fn classes(&self) -> &[Vec<Vertex>] {
        &self.classes
    }

    pub fn class(&self, x: usize) -> &[Vertex] {
        &self.classes[x]
    }

    pub fn root_class(&self) -> usize {
        self.shape.root()
    }

    pub fn root_path(&self) -> &[Vertex] {
        &self.classes[self.shape.root()]
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, v: Vertex) -> usize {
        self.class_of[v]
    }

    /// Index of `v` in its class, counted from the left.
    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }

    pub fn level(&self, v: Vertex) -> usize {
        self.shape.height(self.class_of[v])
    }

    pub fn height(&self) -> usize {
        (0..self.classes.len()).map(|x| self.shape.height(x)).max().unwrap_or(0)
    }

    /// Endpoint in `P_x` of the edge to the parent class.
    pub fn center(&self, tree: &Tree, x: usize) -> Option<Vertex> {
        let parent = self.shape.parent(x)?;
        self.classes[x]
            .iter()
            .copied()
            .find(|&v| tree.neighbors(v).iter().any(|&w| self.class_of[w] == parent))
    }

    /// Host vertices of all classes in the shape subtree of `x`.
    pub fn subtree_vertices(&self, x: usize) -> Vec<Vertex> {
        self.shape
            .up_set(x)
            .iter()
            .flat_map(|&c| self.classes[c].iter().copied())
            .collect()
    }
}

/// Path-partition of height at most twice the width of `pd` with `u` on the
/// root-path.
pub fn build_path_partition(
    tree: &Tree,
    pd: &PathDecomposition,
    u: Vertex,
) -> Result<PathPartition> {
    validate_path_decomposition(tree, pd)?;
    if u >= tree.n() {
        return Err(Error::Invalid(format!("vertex {u} is not in the tree")));
    }
    let mut b = Builder {
        tree,
        pd,
        stamp: vec![0; tree.n()],
        next_stamp: 0,
        classes: Vec::new(),
        children: Vec::new(),
    };
    let all: Vec<Vertex> = (0..tree.n()).collect();
    let root = b.build(&all, u);
    let Builder {
        classes, children, ..
    } = b;
    PathPartition::new(tree, root, children, classes)
}

struct Builder<'a> {
    tree: &'a Tree,
    pd: &'a PathDecomposition,
    stamp: Vec<usize>,
    next_stamp: usize,
    classes: Vec<Vec<Vertex>>,
    children: Vec<Vec<usize>>,
}

impl Builder<'_> {
    fn new_class(&mut self, path: Vec<Vertex>) -> usize {
        self.classes.push(path);
        self.children.push(Vec::new());
        self.classes.len() - 1
    }

    fn mark(&mut self, vs: &[Vertex]) -> usize {
        self.next_stamp += 1;
        for &v in vs {
            self.stamp[v] = self.next_stamp;
        }
        self.next_stamp
    }

    /// Builds the partition of the subtree induced by `d`, returning its root
    /// class.
    fn build(&mut self, d: &[Vertex], u: Vertex) -> usize {
        if d.len() == 1 {
            return self.new_class(vec![u]);
        }
        let s = self.mark(d);
        let in_d = |stamp: &[usize], v: Vertex| stamp[v] == s;
        let pick = |bag: &Vec<Vertex>| bag.iter().copied().filter(|&v| in_d(&self.stamp, v)).min();
        let x = self.pd.bags.iter().find_map(pick).expect("decomposition covers the subtree");
        let y = self.pd.bags.iter().rev().find_map(pick).expect("decomposition covers the subtree");
        let q1 = self.tree.path_between(x, u).0;
        let toward_u = self.tree.path_between(y, u).0;
        let z_at = toward_u.iter().position(|v| q1.contains(v)).expect("paths meet at u");
        let q2: Vec<Vertex> = toward_u[..z_at].to_vec();
        let z = toward_u[z_at];

        let removed = self.mark(&[]);
        for &v in q1.iter().chain(&q2) {
            self.stamp[v] = removed;
        }
        // components of d minus the two paths, found by flooding through
        // vertices still carrying stamp `s`
        let mut comps: Vec<(Vec<Vertex>, Vertex, Vertex)> = Vec::new();
        for &start in d {
            if self.stamp[start] != s {
                continue;
            }
            let done = self.mark(&[start]);
            let mut comp = vec![start];
            let mut attach = None;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in self.tree.neighbors(v) {
                    if self.stamp[w] == s {
                        self.stamp[w] = done;
                        comp.push(w);
                    } else if self.stamp[w] == removed {
                        attach = Some((v, w));
                    }
                }
            }
            let (dj, parent_side) = attach.expect("component hangs off the removed paths");
            comps.push((comp, dj, parent_side));
        }

        let c1 = self.new_class(q1.clone());
        let c2 = (!q2.is_empty()).then(|| self.new_class(q2.clone()));
        let mut kids1: Vec<(usize, Vertex, usize)> = Vec::new();
        let mut kids2: Vec<(usize, Vertex, usize)> = Vec::new();
        if let Some(c2) = c2 {
            let zpos = q1.iter().position(|&v| v == z).unwrap();
            kids1.push((zpos, *q2.last().unwrap(), c2));
        }
        for (comp, dj, parent_side) in comps {
            let child = self.build(&comp, dj);
            if let Some(p) = q1.iter().position(|&v| v == parent_side) {
                kids1.push((p, dj, child));
            } else {
                let p = q2.iter().position(|&v| v == parent_side).unwrap();
                kids2.push((p, dj, child));
            }
        }
        kids1.sort_unstable();
        kids2.sort_unstable();
        self.children[c1] = kids1.into_iter().map(|k| k.2).collect();
        if let Some(c2) = c2 {
            self.children[c2] = kids2.into_iter().map(|k| k.2).collect();
        }
        c1
    }
}

/// Base, source and direction of `path` in the faithful embedding.
pub fn classify_ascending(pp: &PathPartition, path: &TreePath) -> Ascending {
    let vs = path.vertices();
    let min_level = vs.iter().map(|&v| pp.level(v)).min();
    let base: Vec<Vertex> = match min_level {
        Some(m) => vs.iter().copied().filter(|&v| pp.level(v) == m).collect(),
        None => Vec::new(),
    };
    let not_ascending = |base: Vec<Vertex>| Ascending {
        ascending: false,
        source: None,
        direction: None,
        base: TreePath(base),
        oriented: TreePath(Vec::new()),
    };
    let (Some(&first), Some(&last)) = (vs.first(), vs.last()) else {
        return not_ascending(base);
    };
    let in_base = |v: Vertex| Some(pp.level(v)) == min_level;
    let from_first = match (in_base(first), in_base(last)) {
        (false, false) => return not_ascending(base),
        (true, false) => true,
        (false, true) => false,
        (true, true) => pp.position(first) <= pp.position(last),
    };
    let oriented: Vec<Vertex> = if from_first {
        vs.to_vec()
    } else {
        vs.iter().rev().copied().collect()
    };
    let source = oriented[0];
    let direction = oriented.get(1).map(|&w| {
        if !in_base(w) {
            Direction::Up
        } else if pp.position(w) > pp.position(source) {
            Direction::Right
        } else {
            Direction::Left
        }
    });
    Ascending {
        ascending: true,
        source: Some(source),
        direction,
        base: TreePath(base),
        oriented: TreePath(oriented),
    }
}

pub fn edge_kind(pp: &PathPartition, a: Vertex, b: Vertex) -> EdgeKind {
    if pp.class_of(a) == pp.class_of(b) && pp.position(a).abs_diff(pp.position(b)) == 1 {
        EdgeKind::Horizontal
    } else {
        EdgeKind::Vertical
    }
}

/// Bad-path test for an ascending path, enumerated from its source, with
/// base vertices marked.
pub fn is_phi_bad_ascending(
    pp: &PathPartition,
    path: &TreePath,
    phi: &[Color],
) -> Result<Option<(usize, usize)>> {
    let asc = classify_ascending(pp, path);
    if !asc.ascending {
        return Err(Error::NotAscending);
    }
    let vs = asc.oriented.vertices();
    let base_level = pp.level(vs[0]);
    let seq: Vec<Color> = vs.iter().map(|&v| phi[v]).collect();
    let marked: Vec<bool> = vs.iter().map(|&v| pp.level(v) == base_level).collect();
    Ok(spanning_bad_split(&seq, &marked))
}

#[cfg(test)]
mod tests {
    use super::super::tree_pathwidth_exact;
    use super::*;

    /// Spine 0-1-2 with 3 above 1 and 4 above 3.
    fn two_level() -> (Tree, PathPartition) {
        let t = Tree::new(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let pp = PathPartition::new(&t, 0, vec![vec![1], vec![]], vec![vec![0, 1, 2], vec![3, 4]])
            .unwrap();
        (t, pp)
    }

    #[test]
    fn levels_and_edges() {
        let (t, pp) = two_level();
        assert_eq!(pp.level(0), 0);
        assert_eq!(pp.level(4), 1);
        assert_eq!(pp.height(), 1);
        assert_eq!(pp.center(&t, 1), Some(3));
        assert_eq!(edge_kind(&pp, 0, 1), EdgeKind::Horizontal);
        assert_eq!(edge_kind(&pp, 1, 3), EdgeKind::Vertical);
    }

    #[test]
    fn ascending_classification() {
        let (_, pp) = two_level();
        let single = classify_ascending(&pp, &TreePath(vec![4]));
        assert!(single.ascending && single.direction.is_none());
        let left = classify_ascending(&pp, &TreePath(vec![2, 1, 0]));
        assert_eq!(left.source, Some(0));
        assert_eq!(left.direction, Some(Direction::Right));
        let up = classify_ascending(&pp, &TreePath(vec![4, 3, 1]));
        assert_eq!(up.source, Some(1));
        assert_eq!(up.direction, Some(Direction::Up));
        let left = classify_ascending(&pp, &TreePath(vec![1, 0]));
        assert_eq!(left.direction, Some(Direction::Right));
        let l2 = classify_ascending(&pp, &TreePath(vec![4, 3, 1, 0]));
        assert_eq!(l2.oriented.vertices(), &[0, 1, 3, 4]);
        assert_eq!(l2.direction, Some(Direction::Right));
        let l3 = classify_ascending(&pp, &TreePath(vec![2, 1, 3]));
        assert_eq!(l3.direction, Some(Direction::Left));
        // V shape: 4 3 1 2 ... endpoints 4 (level 1) and 2 (level 0) is ascending;
        // a genuine V needs two children classes.
        let t = Tree::new(5, vec![(0, 1), (1, 2), (0, 3), (2, 4)]).unwrap();
        let pp = PathPartition::new(
            &t,
            0,
            vec![vec![1, 2], vec![], vec![]],
            vec![vec![0, 1, 2], vec![3], vec![4]],
        )
        .unwrap();
        let v = classify_ascending(&pp, &TreePath(vec![3, 0, 1, 2, 4]));
        assert!(!v.ascending);
        assert_eq!(v.base.vertices(), &[0, 1, 2]);
        assert_eq!(
            is_phi_bad_ascending(&pp, &TreePath(vec![3, 0, 1, 2, 4]), &[1; 5]),
            Err(Error::NotAscending)
        );
    }

    #[test]
    fn ascending_badness() {
        let (_, pp) = two_level();
        assert_eq!(
            is_phi_bad_ascending(&pp, &TreePath(vec![0, 1]), &[7, 7, 1, 2, 3]).unwrap(),
            Some((1, 0))
        );
        assert_eq!(
            is_phi_bad_ascending(&pp, &TreePath(vec![0, 1, 2]), &[7, 8, 9, 2, 3]).unwrap(),
            None
        );
    }

    #[test]
    fn invalid_partitions_rejected() {
        let t = Tree::path(3);
        assert!(PathPartition::new(&t, 0, vec![vec![]], vec![vec![0, 1]]).is_err());
        assert!(PathPartition::new(&t, 0, vec![vec![1], vec![]], vec![vec![0, 2], vec![1]]).is_err());
    }

    #[test]
    fn construction_on_small_cases() {
        let single = Tree::path(1);
        let pp = build_path_partition(&single, &PathDecomposition::new(vec![vec![0]]), 0).unwrap();
        assert_eq!(pp.height(), 0);
        assert_eq!(pp.root_path(), &[0]);
        let p = Tree::path(6);
        let (k, pd) = tree_pathwidth_exact(&p).unwrap();
        for u in 0..6 {
            let pp = build_path_partition(&p, &pd, u).unwrap();
            assert!(pp.height() <= 2 * k);
            assert!(pp.root_path().contains(&u));
        }
    }
}
