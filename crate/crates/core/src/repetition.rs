//! Repetitions, near repetitions and the bad-path predicates built on them.

use crate::graph::{PlaneArborescence, Tree, TreePath};
use crate::{Color, Error, Result, Vertex};

/// A coloring of `0..n`, indexed by vertex.
pub type Coloring = Vec<Color>;

/// Occurrence of `x y x` in a sequence with `|x| = r >= 1` and `|y| = g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NearRepetition {
    pub start: usize,
    pub r: usize,
    pub g: usize,
}

impl NearRepetition {
    pub fn holds_in<T: PartialEq>(&self, seq: &[T]) -> bool {
        self.r >= 1
            && self.start + 2 * self.r + self.g <= seq.len()
            && (0..self.r).all(|j| seq[self.start + j] == seq[self.start + self.r + self.g + j])
    }
}

/// Lists `L_v` of a common size, each sorted without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
    size: usize,
}

impl ListAssignment {
    pub fn new(mut lists: Vec<Vec<Color>>) -> Result<Self> {
        let size = lists.first().map_or(0, Vec::len);
        for (v, l) in lists.iter_mut().enumerate() {
            l.sort_unstable();
            l.dedup();
            if l.len() != size {
                return Err(Error::Invalid(format!(
                    "list of vertex {v} has {} distinct colors, expected {size}",
                    l.len()
                )));
            }
            if l.first() == Some(&0) {
                return Err(Error::Invalid(format!("list of vertex {v} contains color 0")));
            }
        }
        Ok(ListAssignment { lists, size })
    }

    /// Every vertex gets `{1, ..., size}`.
    pub fn uniform(n: usize, size: usize) -> Self {
        ListAssignment {
            lists: vec![(1..=size as Color).collect(); n],
            size,
        }
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    pub fn max_color(&self) -> Color {
        self.lists.iter().filter_map(|l| l.last().copied()).max().unwrap_or(0)
    }

    /// True if `phi` is total and picks from the lists.
    pub fn respects(&self, phi: &[Color]) -> bool {
        phi.len() == self.n() && phi.iter().zip(&self.lists).all(|(c, l)| l.binary_search(c).is_ok())
    }
}

/// Sublists `S_v` of size `ell`; `None` marks an undefined entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublistAssignment {
    pub sublists: Vec<Option<Vec<Color>>>,
    pub ell: usize,
}

impl SublistAssignment {
    pub fn undefined(n: usize, ell: usize) -> Self {
        SublistAssignment {
            sublists: vec![None; n],
            ell,
        }
    }

    pub fn get(&self, v: Vertex) -> Option<&[Color]> {
        self.sublists[v].as_deref()
    }

    pub fn defined(&self, v: Vertex) -> Result<&[Color]> {
        self.get(v).ok_or(Error::UndefinedSublist(v))
    }

    /// Checks sizes and containment in `lists` for all defined entries.
    pub fn check_against(&self, lists: &ListAssignment) -> Result<()> {
        for (v, s) in self.sublists.iter().enumerate() {
            if let Some(s) = s {
                if s.len() != self.ell || s.iter().any(|c| lists.list(v).binary_search(c).is_err()) {
                    return Err(Error::Invalid(format!("sublist of vertex {v} is not an {}-subset of its list", self.ell)));
                }
            }
        }
        Ok(())
    }

    /// Converts a fully defined assignment into a list assignment.
    pub fn into_lists(self) -> Result<ListAssignment> {
        let lists = self
            .sublists
            .into_iter()
            .enumerate()
            .map(|(v, s)| s.ok_or(Error::UndefinedSublist(v)))
            .collect::<Result<Vec<_>>>()?;
        ListAssignment::new(lists)
    }
}

/// A square `x x` in `seq`, smallest start first, then smallest `r`.
pub fn find_repetition<T: PartialEq>(seq: &[T]) -> Option<NearRepetition> {
    find_near_repetition(seq, 0)
}

/// A near repetition with gap at most `max_g`, ordered by start, `r`, `g`.
pub fn find_near_repetition<T: PartialEq>(seq: &[T], max_g: usize) -> Option<NearRepetition> {
    let len = seq.len();
    for start in 0..len {
        for r in 1..=(len - start) / 2 {
            for g in 0..=max_g.min(len - start - 2 * r) {
                let nr = NearRepetition { start, r, g };
                if nr.holds_in(seq) {
                    return Some(nr);
                }
            }
        }
    }
    None
}

/// True if the whole of `seq` is a square.
pub fn is_square<T: PartialEq>(seq: &[T]) -> bool {
    let len = seq.len();
    len >= 2 && len.is_multiple_of(2) && seq[..len / 2] == seq[len / 2..]
}

/// Smallest `r` such that `seq` as a whole is `x y x` with `|x| = r` and the
/// gap condition holds: `g <= r`, or at most `r` gap positions are marked.
pub fn spanning_bad_split<T: PartialEq>(seq: &[T], marked: &[bool]) -> Option<(usize, usize)> {
    let p = seq.len();
    for r in 1..=p / 2 {
        let g = p - 2 * r;
        if g > r && marked[r..r + g].iter().filter(|&&m| m).count() > r {
            continue;
        }
        if (0..r).all(|j| seq[j] == seq[r + g + j]) {
            return Some((r, g));
        }
    }
    None
}

/// Bad-path test for a directed path of a plane arborescence, marking the
/// rightmost path.
pub fn is_phi_bad_directed(
    arb: &PlaneArborescence,
    path: &TreePath,
    phi: &[Color],
) -> Result<Option<(usize, usize)>> {
    if !arb.is_directed_path(path.vertices()) {
        return Err(Error::NotDirected);
    }
    let seq: Vec<Color> = path.vertices().iter().map(|&v| phi[v]).collect();
    let marked: Vec<bool> = path.vertices().iter().map(|&v| arb.on_rightmost(v)).collect();
    Ok(spanning_bad_split(&seq, &marked))
}

/// Whether some coloring from the sublists makes `path` bad with block
/// length `r`. Reduces to pairwise intersection since path vertices are
/// distinct.
pub fn exists_bad_coloring_shape(
    sub: &SublistAssignment,
    path: &[Vertex],
    r: usize,
    on_rightmost: impl Fn(Vertex) -> bool,
) -> Result<bool> {
    let sets = path
        .iter()
        .map(|&v| sub.defined(v))
        .collect::<Result<Vec<_>>>()?;
    let p = path.len();
    if r == 0 || 2 * r > p {
        return Ok(false);
    }
    let g = p - 2 * r;
    if g > r && path[r..r + g].iter().filter(|&&v| on_rightmost(v)).count() > r {
        return Ok(false);
    }
    Ok((0..r).all(|j| crate::subsets::intersects(sets[j], sets[r + g + j])))
}

/// Checks every path of `tree` for a square; returns a witness path.
pub fn verify_nonrepetitive(tree: &Tree, phi: &[Color]) -> (bool, Option<TreePath>) {
    match find_square_path(tree, phi) {
        Some(p) => (false, Some(p)),
        None => (true, None),
    }
}

fn find_square_path(tree: &Tree, phi: &[Color]) -> Option<TreePath> {
    let n = tree.n();
    let mut stack: Vec<Vertex> = Vec::with_capacity(n);
    let mut colors: Vec<Color> = Vec::with_capacity(n);
    // (vertex, parent, next neighbor index)
    let mut frames: Vec<(Vertex, Vertex, usize)> = Vec::with_capacity(n);
    for u in 0..n {
        stack.clear();
        colors.clear();
        frames.clear();
        stack.push(u);
        colors.push(phi[u]);
        frames.push((u, usize::MAX, 0));
        while let Some(top) = frames.last_mut() {
            let (v, par, i) = *top;
            if i == tree.neighbors(v).len() {
                frames.pop();
                stack.pop();
                colors.pop();
                continue;
            }
            top.2 += 1;
            let w = tree.neighbors(v)[i];
            if w == par {
                continue;
            }
            stack.push(w);
            colors.push(phi[w]);
            frames.push((w, v, 0));
            if w > u && is_square(&colors) {
                return Some(TreePath(stack.clone()));
            }
        }
    }
    None
}

/// Squares on paths that end at `v` and otherwise use only vertices with
/// `colored[w]`. Assumes the colored vertices induce a connected subtree
/// containing a neighbor of `v` (or are empty).
fn square_ending_at(tree: &Tree, phi: &[Color], colored: &[bool], v: Vertex) -> bool {
    let mut colors = vec![phi[v]];
    let mut frames: Vec<(Vertex, Vertex, usize)> = vec![(v, usize::MAX, 0)];
    while let Some(top) = frames.last_mut() {
        let (x, par, i) = *top;
        if i == tree.neighbors(x).len() {
            frames.pop();
            colors.pop();
            continue;
        }
        top.2 += 1;
        let w = tree.neighbors(x)[i];
        if w == par || !colored[w] {
            continue;
        }
        colors.push(phi[w]);
        if is_square(&colors) {
            return true;
        }
        frames.push((w, x, 0));
    }
    false
}

/// Backtracking search for a nonrepetitive coloring from `lists`.
///
/// Vertices are colored in BFS order from 0 with colors tried in increasing
/// order. Fails with [`Error::BudgetExceeded`] after `budget` assignments.
pub fn brute_force_list_coloring(
    tree: &Tree,
    lists: &ListAssignment,
    budget: u64,
) -> Result<Option<Coloring>> {
    let n = tree.n();
    if lists.n() != n {
        return Err(Error::Invalid("list assignment does not match tree size".into()));
    }
    let order = bfs_order(tree);
    let mut phi: Coloring = vec![0; n];
    let mut colored = vec![false; n];
    let mut choice = vec![0usize; n];
    let mut steps = 0u64;
    let mut k = 0;
    while k < n {
        let v = order[k];
        let list = lists.list(v);
        let mut placed = false;
        while choice[k] < list.len() {
            let c = list[choice[k]];
            choice[k] += 1;
            steps += 1;
            if steps > budget {
                return Err(Error::BudgetExceeded {
                    context: "brute-force list coloring",
                    budget,
                });
            }
            phi[v] = c;
            if !square_ending_at(tree, &phi, &colored, v) {
                placed = true;
                break;
            }
        }
        if placed {
            colored[v] = true;
            k += 1;
        } else {
            choice[k] = 0;
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            colored[order[k]] = false;
        }
    }
    Ok(Some(phi))
}

pub(crate) fn bfs_order(tree: &Tree) -> Vec<Vertex> {
    let n = tree.n();
    if n == 0 {
        return Vec::new();
    }
    let mut seen = vec![false; n];
    let mut order = vec![0];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &w in tree.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order
}
