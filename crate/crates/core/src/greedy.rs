//! Guard-avoiding greedy coloring over a path-partition, and the full
//! pipeline from lists to a verified nonrepetitive coloring.

use std::collections::VecDeque;

use serde::Serialize;

use crate::decomposition::{
    build_path_partition, heuristic_path_decomposition, min_height_partition, tree_pathwidth_exact, PathDecomposition,
    PathPartition, EXACT_PATHWIDTH_LIMIT, MIN_HEIGHT_LIMIT,
};
use crate::graph::Tree;
use crate::repetition::{verify_nonrepetitive, Coloring, ListAssignment, SublistAssignment};
use crate::solver::{thin_lists, Schedule, StageReport, ThinOptions};
use crate::{Color, Error, Result, Vertex};

/// Guards of `v`: the upper endpoint of each vertical edge on the way from
/// `v` to the root-path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GuardSet {
    pub vertex: Vertex,
    pub guards: Vec<Vertex>,
}

/// Next vertex on the shortest path to the root-path (`None` on it).
fn toward_root_path(tree: &Tree, pp: &PathPartition) -> Vec<Option<Vertex>> {
    let n = tree.n();
    let mut next = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue: VecDeque<Vertex> = pp.root_path().iter().copied().collect();
    for &v in &queue {
        seen[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &w in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                next[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    next
}

fn guards_with(pp: &PathPartition, next: &[Option<Vertex>], v: Vertex) -> Vec<Vertex> {
    let mut out = Vec::new();
    let mut a = v;
    while let Some(b) = next[a] {
        if pp.class_of(a) != pp.class_of(b) {
            out.push(b);
        }
        a = b;
    }
    out
}

pub fn guards(tree: &Tree, pp: &PathPartition, v: Vertex) -> GuardSet {
    let next = toward_root_path(tree, pp);
    GuardSet {
        vertex: v,
        guards: guards_with(pp, &next, v),
    }
}

/// Colors by nondecreasing level (ties by id), each vertex getting the
/// smallest color of its sublist not used by any of its guards.
pub fn greedy_color(tree: &Tree, pp: &PathPartition, sub: &SublistAssignment) -> Result<Coloring> {
    let n = tree.n();
    if sub.sublists.len() != n || pp.n() != n {
        return Err(Error::Invalid("sublists and partition must cover the tree".into()));
    }
    let next = toward_root_path(tree, pp);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (pp.level(v), v));
    let mut phi: Vec<Color> = vec![0; n];
    for v in order {
        let s = sub.defined(v)?;
        let taken: Vec<Color> = guards_with(pp, &next, v).iter().map(|&g| phi[g]).collect();
        phi[v] = *s
            .iter()
            .find(|c| !taken.contains(c))
            .ok_or(Error::EmptyChoice(v))?;
    }
    Ok(phi)
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub thin: ThinOptions,
    /// Try every vertex as the partition root and keep the lowest partition.
    pub best_root: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            thin: ThinOptions::default(),
            best_root: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub pathwidth: usize,
    /// False when the tree was too large for the exact search.
    pub exact_pathwidth: bool,
    pub decomposition: PathDecomposition,
    pub partition: PathPartition,
    pub stages: Vec<StageReport>,
    pub sublists: SublistAssignment,
    pub coloring: Coloring,
}

/// Lowest path-partition over the candidate roots; ties go to the smaller
/// vertex.
pub fn lowest_partition(tree: &Tree, pd: &PathDecomposition, best_root: bool) -> Result<PathPartition> {
    let roots = if best_root { tree.n() } else { 1 };
    let mut best: Option<PathPartition> = None;
    for u in 0..roots {
        let pp = build_path_partition(tree, pd, u)?;
        if best.as_ref().is_none_or(|b| pp.height() < b.height()) {
            best = Some(pp);
        }
    }
    best.ok_or(Error::InvalidTree("empty tree".into()))
}

/// The partition built from `pd`, replaced by a minimum-height one when it
/// is taller than `max_height` and the tree is small enough to search.
pub fn choose_partition(
    tree: &Tree,
    pd: &PathDecomposition,
    max_height: usize,
    best_root: bool,
) -> Result<PathPartition> {
    let pp = lowest_partition(tree, pd, best_root)?;
    if pp.height() > max_height && tree.n() <= MIN_HEIGHT_LIMIT {
        let low = min_height_partition(tree)?;
        if low.height() < pp.height() {
            return Ok(low);
        }
    }
    Ok(pp)
}

/// Decomposition, partition, thinning, greedy coloring and a full
/// verification of the result.
pub fn pipeline(
    tree: &Tree,
    lists: &ListAssignment,
    schedule: &Schedule,
    opts: &PipelineOptions,
) -> Result<PipelineReport> {
    let (pathwidth, decomposition, exact) = if tree.n() <= EXACT_PATHWIDTH_LIMIT {
        let (w, pd) = tree_pathwidth_exact(tree)?;
        (w, pd, true)
    } else {
        let pd = heuristic_path_decomposition(tree);
        (pd.width(), pd, false)
    };
    let partition = choose_partition(tree, &decomposition, schedule.height(), opts.best_root)?;
    if schedule.ell() < partition.height() + 1 {
        return Err(Error::Invalid(format!(
            "final sublists of size {} cannot avoid {} guards",
            schedule.ell(),
            partition.height()
        )));
    }
    let thin = thin_lists(tree, &partition, lists, schedule, &opts.thin)?;
    let coloring = greedy_color(tree, &partition, &thin.sub)?;
    let (ok, witness) = verify_nonrepetitive(tree, &coloring);
    if !ok {
        return Err(Error::Invariant(format!(
            "greedy coloring is repetitive on {:?}; coloring {:?}; sublists {:?}; classes {:?}",
            witness.map(|p| p.0),
            coloring,
            thin.sub.sublists,
            partition.classes()
        )));
    }
    Ok(PipelineReport {
        pathwidth,
        exact_pathwidth: exact,
        decomposition,
        partition,
        stages: thin.stages,
        sublists: thin.sub,
        coloring,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_level() -> (Tree, PathPartition) {
        let t = Tree::new(6, vec![(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        let pp = PathPartition::new(&t, 0, vec![vec![1], vec![2], vec![]], vec![vec![0, 1, 2], vec![3, 4], vec![5]])
            .unwrap();
        (t, pp)
    }

    #[test]
    fn guard_counts_match_levels() {
        let (t, pp) = two_level();
        assert!(guards(&t, &pp, 0).guards.is_empty());
        assert_eq!(guards(&t, &pp, 4).guards, vec![1]);
        assert_eq!(guards(&t, &pp, 5).guards, vec![4, 1]);
        for v in 0..6 {
            assert_eq!(guards(&t, &pp, v).guards.len(), pp.level(v));
        }
    }

    #[test]
    fn tight_sublists_always_leave_a_color() {
        let (t, pp) = two_level();
        // every sublist {1..level+1}: guards take the small colors first
        let sub = SublistAssignment {
            sublists: (0..6).map(|v| Some((1..=pp.level(v) as Color + 1).collect())).collect(),
            ell: 0,
        };
        let phi = greedy_color(&t, &pp, &sub).unwrap();
        assert_eq!(phi, vec![1, 1, 1, 2, 2, 3]);
        let single = Tree::new(1, vec![]).unwrap();
        let pp1 = PathPartition::new(&single, 0, vec![vec![]], vec![vec![0]]).unwrap();
        let sub1 = SublistAssignment {
            sublists: vec![Some(vec![4, 9])],
            ell: 2,
        };
        assert_eq!(greedy_color(&single, &pp1, &sub1).unwrap(), vec![4]);
    }
}
