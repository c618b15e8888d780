//! Level-by-level thinning of list assignments over a path-partition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{run_algorithm1, Outcome, RandomInput, SolverConfig};

/// Extension work allowed per thinning attempt. Hopeless stages otherwise
/// spend minutes backtracking over large subset spaces before failing.
pub const THIN_EXTENSION_BUDGET: u64 = 50_000;
use crate::decomposition::PathPartition;
use crate::graph::{PlaneArborescence, Tree};
use crate::repetition::{ListAssignment, SublistAssignment};
use crate::{Color, Error, Result, Vertex};

/// Sublist sizes `c_0 < ... < c_{2h+1}`: lists of size `c_{2h+1}` are
/// thinned to size `c_0` over a partition of height at most `h`, each level
/// consuming two steps of the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    chain: Vec<usize>,
}

impl Schedule {
    pub fn new(chain: Vec<usize>) -> Result<Self> {
        if chain.len() < 2 || !chain.len().is_multiple_of(2) {
            return Err(Error::Invalid("a schedule chain has an even number >= 2 of sizes".into()));
        }
        if chain[0] == 0 || chain.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Invalid(format!("schedule chain {chain:?} must be positive and nondecreasing")));
        }
        Ok(Schedule { chain })
    }

    /// Interpolates geometrically between per-level list sizes
    /// `anchors[0] > anchors[1] > ... > anchors[h]`, where `anchors[j]` is
    /// the list size entering level `j` and `anchors[h]` the final size.
    pub fn from_anchors(anchors: &[usize]) -> Result<Self> {
        if anchors.len() < 2 {
            return Err(Error::Invalid("need at least a list size and a final size".into()));
        }
        let h = anchors.len() - 1;
        let len = 2 * h + 2;
        // chain index of each anchor
        let at = |j: usize| if j == h { 0 } else { len - 1 - 2 * j };
        let mut chain = vec![0usize; len];
        for j in 0..h {
            let (hi, lo) = (at(j), at(j + 1));
            let (a, b) = (anchors[j] as f64, anchors[j + 1] as f64);
            for k in lo..=hi {
                let t = (k - lo) as f64 / (hi - lo) as f64;
                chain[k] = (b * (a / b).powf(t)).round() as usize;
            }
        }
        Schedule::new(chain)
    }

    /// The chain `c_k = next^k(ell)` with `next(x) = 32 x^3 + 1`.
    pub fn theoretical(ell: usize, h: usize) -> Result<Self> {
        let mut chain = vec![ell];
        for _ in 0..2 * h + 1 {
            let x = *chain.last().unwrap() as u128;
            let next = x
                .checked_pow(3)
                .and_then(|c| c.checked_mul(32))
                .and_then(|c| c.checked_add(1))
                .filter(|&c| c <= usize::MAX as u128)
                .ok_or(Error::SizeLimit {
                    what: "schedule list size",
                    actual: u128::MAX,
                    limit: usize::MAX as u128,
                })?;
            chain.push(next as usize);
        }
        Schedule::new(chain)
    }

    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    pub fn height(&self) -> usize {
        self.chain.len() / 2 - 1
    }

    pub fn list_size(&self) -> usize {
        *self.chain.last().unwrap()
    }

    pub fn ell(&self) -> usize {
        self.chain[0]
    }
}

/// An arborescence over the tree vertices, possibly with one extra inert
/// leaf `dummy = n` that stops the rightmost path at the end of the
/// root-path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageArborescence {
    pub arb: PlaneArborescence,
    pub dummy: Option<Vertex>,
}

/// Roots the tree at the first and at the last root-path vertex, with the
/// root-path as a prefix of the rightmost path in both. When the far end of
/// the root-path has other children, an inert dummy leaf is added as its
/// last child so the rightmost path does not run past the root-path.
pub fn to_arborescences(tree: &Tree, pp: &PathPartition) -> Result<(StageArborescence, StageArborescence)> {
    let rp = pp.root_path().to_vec();
    let rev: Vec<Vertex> = rp.iter().rev().copied().collect();
    Ok((orient(tree, &rp)?, orient(tree, &rev)?))
}

fn orient(tree: &Tree, spine: &[Vertex]) -> Result<StageArborescence> {
    let n = tree.n();
    let mut next_on_spine = vec![None; n];
    for w in spine.windows(2) {
        next_on_spine[w[0]] = Some(w[1]);
    }
    let mut children: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut parent = vec![usize::MAX; n];
    let root = spine[0];
    parent[root] = root;
    let mut queue = vec![root];
    let mut i = 0;
    while i < queue.len() {
        let v = queue[i];
        i += 1;
        let mut kids: Vec<Vertex> = tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| w != parent[v] && Some(w) != next_on_spine[v])
            .collect();
        kids.sort_unstable();
        if let Some(s) = next_on_spine[v] {
            kids.push(s);
        }
        for &w in &kids {
            parent[w] = v;
            queue.push(w);
        }
        children[v] = kids;
    }
    let end = *spine.last().unwrap();
    let dummy = if children[end].is_empty() {
        None
    } else {
        children.push(Vec::new());
        children[end].push(n);
        Some(n)
    };
    Ok(StageArborescence {
        arb: PlaneArborescence::new(root, children)?,
        dummy,
    })
}

#[derive(Debug, Clone)]
pub struct ThinOptions {
    /// Fresh random inputs tried per stage.
    pub retries: usize,
    /// Per attempt; running out counts as a failed attempt.
    pub extension_budget: u64,
    pub seed: u64,
}

impl Default for ThinOptions {
    fn default() -> Self {
        ThinOptions {
            retries: 16,
            extension_budget: THIN_EXTENSION_BUDGET,
            seed: 0,
        }
    }
}

/// One application of the thinning algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageReport {
    /// Recursion depth in the partition, 0 for the top root-path.
    pub depth: usize,
    /// `"path"`, `"A"` or `"A'"`.
    pub kind: &'static str,
    pub vertices: usize,
    pub from: usize,
    pub to: usize,
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinReport {
    pub sub: SublistAssignment,
    pub stages: Vec<StageReport>,
}

/// Thins `lists` (size `schedule.list_size()`) to sublists of size
/// `schedule.ell()` such that every ascending path is good for every
/// coloring from the sublists.
pub fn thin_lists(
    tree: &Tree,
    pp: &PathPartition,
    lists: &ListAssignment,
    schedule: &Schedule,
    opts: &ThinOptions,
) -> Result<ThinReport> {
    if lists.n() != tree.n() || pp.n() != tree.n() {
        return Err(Error::Invalid("tree, partition and lists disagree on n".into()));
    }
    if lists.size() < schedule.list_size() {
        return Err(Error::Invalid(format!(
            "lists of size {} are smaller than the schedule needs ({})",
            lists.size(),
            schedule.list_size()
        )));
    }
    if pp.height() > schedule.height() {
        return Err(Error::Invalid(format!(
            "partition height {} exceeds schedule height {}",
            pp.height(),
            schedule.height()
        )));
    }
    let mut ctx = Ctx {
        chain: schedule.chain(),
        opts,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        stages: Vec::new(),
    };
    let sets = ctx.thin(tree, pp, lists.lists(), 0, 0)?;
    Ok(ThinReport {
        sub: SublistAssignment {
            sublists: sets.into_iter().map(Some).collect(),
            ell: schedule.ell(),
        },
        stages: ctx.stages,
    })
}

struct Ctx<'a> {
    chain: &'a [usize],
    opts: &'a ThinOptions,
    rng: ChaCha8Rng,
    stages: Vec<StageReport>,
}

impl Ctx<'_> {
    /// Returns sublists of size `chain[k]`.
    fn thin(
        &mut self,
        tree: &Tree,
        pp: &PathPartition,
        lists: &[Vec<Color>],
        k: usize,
        depth: usize,
    ) -> Result<Vec<Vec<Color>>> {
        let n = tree.n();
        if pp.height() == 0 {
            let size = self.chain[k + 1];
            let cut: Vec<Vec<Color>> = lists.iter().map(|l| l[..size].to_vec()).collect();
            let rp = pp.root_path();
            let mut children = vec![Vec::new(); n];
            for w in rp.windows(2) {
                children[w[0]].push(w[1]);
            }
            let arb = StageArborescence {
                arb: PlaneArborescence::new(rp[0], children)?,
                dummy: None,
            };
            return self.stage(&arb, cut, self.chain[k], depth, "path");
        }
        let mut sets: Vec<Vec<Color>> = vec![Vec::new(); n];
        let top = self.chain[k + 2];
        for &v in pp.root_path() {
            sets[v] = lists[v][..top].to_vec();
        }
        let root = pp.root_class();
        for &y in pp.shape().children(root) {
            let (sub_tree, sub_pp, ids) = restrict(tree, pp, y)?;
            let sub_lists: Vec<Vec<Color>> = ids.iter().map(|&v| lists[v].clone()).collect();
            let got = self.thin(&sub_tree, &sub_pp, &sub_lists, k + 2, depth + 1)?;
            for (local, s) in got.into_iter().enumerate() {
                sets[ids[local]] = s;
            }
        }
        let (a, a2) = to_arborescences(tree, pp)?;
        let mid = self.stage(&a, sets, self.chain[k + 1], depth, "A")?;
        self.stage(&a2, mid, self.chain[k], depth, "A'")
    }

    fn stage(
        &mut self,
        arb: &StageArborescence,
        mut lists: Vec<Vec<Color>>,
        ell: usize,
        depth: usize,
        kind: &'static str,
    ) -> Result<Vec<Vec<Color>>> {
        let n = lists.len();
        let size = lists.first().map_or(0, Vec::len);
        if arb.dummy.is_some() {
            let max = lists.iter().filter_map(|l| l.last().copied()).max().unwrap_or(0);
            lists.push((max + 1..=max + size as Color).collect());
        }
        let assignment = ListAssignment::new(lists)?;
        for attempt in 1..=self.opts.retries {
            let cfg = SolverConfig {
                ell,
                list_size: size,
                max_iterations: Some(1),
                random: RandomInput::Seed(self.rng.gen()),
                extension_budget: self.opts.extension_budget,
                keep_trace: false,
            };
            match run_algorithm1(&arb.arb, &assignment, &cfg) {
                Ok(Outcome::Success { sub, .. }) => {
                    self.stages.push(StageReport {
                        depth,
                        kind,
                        vertices: n,
                        from: size,
                        to: ell,
                        attempts: attempt,
                    });
                    let mut out: Vec<Vec<Color>> = sub.sublists.into_iter().map(|s| s.unwrap()).collect();
                    out.truncate(n);
                    return Ok(out);
                }
                Ok(Outcome::Failure { .. }) | Err(Error::BudgetExceeded { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::ThinningFailed {
            stage: format!("{kind} at depth {depth} ({n} vertices, {size} -> {ell})"),
            attempts: self.opts.retries,
        })
    }
}

/// The subtree of classes below shape vertex `y`, relabeled; returns the
/// local-to-global vertex map.
fn restrict(tree: &Tree, pp: &PathPartition, y: usize) -> Result<(Tree, PathPartition, Vec<Vertex>)> {
    let ids = pp.subtree_vertices(y);
    let mut local = vec![usize::MAX; tree.n()];
    for (i, &v) in ids.iter().enumerate() {
        local[v] = i;
    }
    let edges = tree
        .edges()
        .iter()
        .filter(|&&(a, b)| local[a] != usize::MAX && local[b] != usize::MAX)
        .map(|&(a, b)| (local[a], local[b]))
        .collect();
    let sub_tree = Tree::new(ids.len(), edges)?;
    let class_ids = pp.shape().up_set(y);
    let mut class_local = vec![usize::MAX; pp.classes().len()];
    for (i, &c) in class_ids.iter().enumerate() {
        class_local[c] = i;
    }
    let classes = class_ids
        .iter()
        .map(|&c| pp.class(c).iter().map(|&v| local[v]).collect())
        .collect();
    let children = class_ids
        .iter()
        .map(|&c| pp.shape().children(c).iter().map(|&d| class_local[d]).collect())
        .collect();
    let sub_pp = PathPartition::new(&sub_tree, 0, children, classes)?;
    Ok((sub_tree, sub_pp, ids))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors_interpolate() {
        let s = Schedule::from_anchors(&[64, 16, 5]).unwrap();
        assert_eq!(s.height(), 2);
        assert_eq!(s.chain().len(), 6);
        assert_eq!(s.chain()[5], 64);
        assert_eq!(s.chain()[3], 16);
        assert_eq!(s.chain()[0], 5);
        let flat = Schedule::from_anchors(&[33, 1]).unwrap();
        assert_eq!(flat.chain(), &[1, 3, 10, 33]);
        assert_eq!(Schedule::theoretical(1, 0).unwrap().chain(), &[1, 33]);
        assert!(Schedule::new(vec![3, 2]).is_err());
    }

    #[test]
    fn path_partition_arborescences() {
        let t = Tree::path(4);
        let pp = PathPartition::new(&t, 0, vec![vec![]], vec![vec![0, 1, 2, 3]]).unwrap();
        let (a, a2) = to_arborescences(&t, &pp).unwrap();
        assert_eq!(a.arb.rightmost_path().vertices(), &[0, 1, 2, 3]);
        assert_eq!(a2.arb.rightmost_path().vertices(), &[3, 2, 1, 0]);
        assert!(a.dummy.is_none() && a2.dummy.is_none());
    }

    #[test]
    fn dummy_caps_rightmost_path() {
        // root-path 0-1, with 2 hanging off 1 and 3 off 0
        let t = Tree::new(4, vec![(0, 1), (1, 2), (0, 3)]).unwrap();
        let pp = PathPartition::new(&t, 0, vec![vec![1, 2], vec![], vec![]], vec![vec![0, 1], vec![3], vec![2]])
            .unwrap();
        let (a, a2) = to_arborescences(&t, &pp).unwrap();
        assert_eq!(a.dummy, Some(4));
        assert_eq!(a.arb.rightmost_path().vertices(), &[0, 1, 4]);
        assert_eq!(a2.arb.rightmost_path().vertices(), &[1, 0, 4]);
        assert_eq!(a.arb.children(1), &[2, 4]);
    }
}
