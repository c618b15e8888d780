//! Constraints along root chains: bad-path detection at a freshly sampled
//! vertex and the deterministic extension of child subtrees.
//!
//! A directed path from the rightmost path to `y` only meets ancestors of
//! `y`, so every check here looks at the root chain of one vertex. For a
//! start `s` on the chain and block length `r`, the path is *live* when all
//! pairs of its two blocks except the last one already intersect and the gap
//! condition holds; then `S_y` must avoid the partner `S_{v_r}`.

use crate::graph::PlaneArborescence;
use crate::repetition::ListAssignment;
use crate::subsets::{for_each_combination, intersects, rank_positions};
use crate::{Color, Error, Result, Vertex};

/// A bad path `v_1 .. v_{2r+g}` ending at the current vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPath {
    pub vertices: Vec<Vertex>,
    pub r: usize,
    pub g: usize,
}

pub(crate) struct Budget {
    pub used: u64,
    pub limit: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { used: 0, limit }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded {
                context: "sublist extension",
                budget: self.limit,
            });
        }
        Ok(())
    }
}

/// Partial sublist assignment on an arborescence, with ranks.
#[derive(Clone)]
pub(crate) struct Assignment<'a> {
    pub arb: &'a PlaneArborescence,
    pub lists: &'a ListAssignment,
    pub ell: usize,
    pub sets: Vec<Option<Vec<Color>>>,
    pub ranks: Vec<Option<u64>>,
}

impl<'a> Assignment<'a> {
    pub fn new(arb: &'a PlaneArborescence, lists: &'a ListAssignment, ell: usize) -> Self {
        let n = arb.n();
        Assignment {
            arb,
            lists,
            ell,
            sets: vec![None; n],
            ranks: vec![None; n],
        }
    }

    fn set(&self, v: Vertex) -> &[Color] {
        self.sets[v].as_deref().expect("chain vertices are assigned")
    }

    pub fn assign_positions(&mut self, v: Vertex, pos: &[usize]) -> Result<()> {
        let list = self.lists.list(v);
        self.sets[v] = Some(pos.iter().map(|&p| list[p]).collect());
        self.ranks[v] = Some(rank_positions(list.len(), pos)?);
        Ok(())
    }

    pub fn assign_rank(&mut self, v: Vertex, rank: u64) -> Result<()> {
        let pos = crate::subsets::unrank_positions(self.lists.list(v).len(), rank, self.ell)?;
        self.assign_positions(v, &pos)
    }

    pub fn clear(&mut self, v: Vertex) {
        self.sets[v] = None;
        self.ranks[v] = None;
    }

    pub fn clear_up(&mut self, v: Vertex) {
        for &w in self.arb.up_set(v) {
            self.sets[w] = None;
            self.ranks[w] = None;
        }
    }

    /// Live `(s, r)` pairs for a vertex whose ancestors are `chain`.
    fn live(&self, chain: &[Vertex]) -> Vec<(usize, usize)> {
        let len = chain.len();
        let b = chain.iter().take_while(|&&v| self.arb.on_rightmost(v)).count();
        let mut out = Vec::new();
        for s in 0..b {
            let p = len - s + 1;
            for r in 1..=p / 2 {
                let g = p - 2 * r;
                if g > r {
                    let gap_on_rmp = b.min(s + r + g).saturating_sub(s + r);
                    if gap_on_rmp > r {
                        continue;
                    }
                }
                let pairs_meet =
                    (1..r).all(|j| intersects(self.set(chain[s + j - 1]), self.set(chain[len - r + j])));
                if pairs_meet {
                    out.push((s, r));
                }
            }
        }
        out
    }

    /// First bad path ending at `u`, ordered by start depth then `r`.
    pub fn find_bad_path(&self, u: Vertex) -> Option<BadPath> {
        let mut chain = self.arb.root_chain(u);
        chain.pop();
        let su = self.set(u);
        for (s, r) in self.live(&chain) {
            if intersects(su, self.set(chain[s + r - 1])) {
                let mut vertices = chain[s..].to_vec();
                vertices.push(u);
                let g = vertices.len() - 2 * r;
                return Some(BadPath { vertices, r, g });
            }
        }
        None
    }

    fn allowed_positions(&self, y: Vertex, chain: &[Vertex]) -> Vec<usize> {
        let mut forbidden: Vec<Color> = self
            .live(chain)
            .into_iter()
            .flat_map(|(s, r)| self.set(chain[s + r - 1]).iter().copied())
            .collect();
        forbidden.sort_unstable();
        forbidden.dedup();
        self.lists
            .list(y)
            .iter()
            .enumerate()
            .filter(|(_, c)| forbidden.binary_search(c).is_err())
            .map(|(p, _)| p)
            .collect()
    }

    /// Assigns `up(w)` by backtracking (preorder vertices, rank-ordered
    /// candidates). Child subtrees are independent given their ancestors, so
    /// the first solution equals that of chronological backtracking.
    pub fn extend_subtree(
        &mut self,
        w: Vertex,
        chain: &mut Vec<Vertex>,
        budget: &mut Budget,
    ) -> Result<bool> {
        let pool = self.allowed_positions(w, chain);
        let arb = self.arb;
        let found = for_each_combination(&pool, self.ell, |pos| {
            budget.tick()?;
            self.assign_positions(w, pos)?;
            chain.push(w);
            let mut ok = true;
            for &c in arb.children(w) {
                if !self.extend_subtree(c, chain, budget)? {
                    ok = false;
                    break;
                }
            }
            chain.pop();
            if !ok {
                self.clear_up(w);
            }
            Ok(ok)
        })?;
        if !found {
            self.clear(w);
        }
        Ok(found)
    }

    /// Extends children of `x` left to right until one has no valid
    /// extension. Returns the extended children and the problematic one.
    pub fn extend_children(
        &mut self,
        x: Vertex,
        budget: &mut Budget,
    ) -> Result<(Vec<Vertex>, Option<Vertex>)> {
        let mut chain = self.arb.root_chain(x);
        let mut done = Vec::new();
        for &c in self.arb.children(x) {
            if self.extend_subtree(c, &mut chain, budget)? {
                done.push(c);
            } else {
                return Ok((done, Some(c)));
            }
        }
        Ok((done, None))
    }
}

/// True if no directed path from the rightmost path whose vertices all
/// have sublists admits a bad coloring. Enumerates paths explicitly.
pub fn assignment_is_valid(arb: &PlaneArborescence, sets: &[Option<Vec<Color>>]) -> bool {
    let n = arb.n();
    let sub = crate::repetition::SublistAssignment {
        sublists: sets.to_vec(),
        ell: 0,
    };
    for a in (0..n).filter(|&a| arb.on_rightmost(a)) {
        for v in 0..n {
            let Some(path) = arb.directed_path(a, v) else {
                continue;
            };
            if path.iter().any(|&w| sets[w].is_none()) {
                continue;
            }
            for r in 1..=path.len() / 2 {
                if crate::repetition::exists_bad_coloring_shape(&sub, &path, r, |w| arb.on_rightmost(w))
                    .expect("all path vertices are defined")
                {
                    return false;
                }
            }
        }
    }
    true
}
