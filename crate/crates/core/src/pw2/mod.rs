//! The pathwidth-2 family `G(n, ell)` whose list assignment defeats every
//! nonrepetitive coloring once `n > e^(ell + 2)`.
//!
//! Index `i` runs over `1..=2n`. Odd indices are single vertices, even ones
//! are independent blobs of `C(ell n, ell)` vertices, and two vertices are
//! adjacent exactly when their indices differ by one. Dense ids put the odd
//! vertices first (`v_{2t+1}` is `t`), then the blobs layer by layer.

mod bounds;

pub use bounds::{count_witness_bounds, log_chain, LogChain, WitnessBounds};

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::decomposition::PathDecomposition;
use crate::repetition::{Coloring, ListAssignment};
use crate::subsets::{binomial_checked, unrank_positions};
use crate::{Color, Error, Result, Vertex};

/// Largest vertex count that is ever materialized.
pub const GNL_VERTEX_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GVertex {
    /// `v_i`, `i` odd.
    Odd { i: usize },
    /// `v_i^j`, `i` even, `j` in `1..=C(ell n, ell)`.
    Even { i: usize, j: u64 },
}

impl GVertex {
    pub fn index(&self) -> usize {
        match *self {
            GVertex::Odd { i } | GVertex::Even { i, .. } => i,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GnlGraph {
    n: usize,
    ell: usize,
    blob: u64,
}

impl GnlGraph {
    pub fn new(n: usize, ell: usize) -> Result<Self> {
        if n == 0 || ell == 0 {
            return Err(Error::Invalid("G(n, ell) needs n, ell >= 1".into()));
        }
        let blob = binomial_checked(ell * n, ell)?;
        let total = (n as u128) * (blob as u128 + 1);
        if total > GNL_VERTEX_LIMIT as u128 {
            return Err(Error::SizeLimit {
                what: "vertices of G(n, ell)",
                actual: total,
                limit: GNL_VERTEX_LIMIT as u128,
            });
        }
        Ok(GnlGraph { n, ell, blob })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn blob_size(&self) -> u64 {
        self.blob
    }

    pub fn vertex_count(&self) -> usize {
        self.n + self.n * self.blob as usize
    }

    pub fn id(&self, v: GVertex) -> Vertex {
        match v {
            GVertex::Odd { i } => (i - 1) / 2,
            GVertex::Even { i, j } => self.n + (i / 2 - 1) * self.blob as usize + (j as usize - 1),
        }
    }

    pub fn vertex(&self, id: Vertex) -> GVertex {
        if id < self.n {
            GVertex::Odd { i: 2 * id + 1 }
        } else {
            let k = id - self.n;
            let b = self.blob as usize;
            GVertex::Even {
                i: 2 * (k / b + 1),
                j: (k % b) as u64 + 1,
            }
        }
    }

    /// Dense ids of the blob at even index `q`.
    pub fn layer(&self, q: usize) -> std::ops::Range<Vertex> {
        let start = self.n + (q / 2 - 1) * self.blob as usize;
        start..start + self.blob as usize
    }

    pub fn adjacent(&self, a: GVertex, b: GVertex) -> bool {
        a.index().abs_diff(b.index()) == 1
    }

    /// `L_{2t+1} = {t ell + 1, ..., t ell + ell}`; blob vertex `j` gets the
    /// `j`-th `ell`-subset of `[ell n]` in rank order.
    pub fn list(&self, v: GVertex) -> Result<Vec<Color>> {
        let ell = self.ell as Color;
        match v {
            GVertex::Odd { i } => {
                let t = ((i - 1) / 2) as Color;
                Ok((1..=ell).map(|c| t * ell + c).collect())
            }
            GVertex::Even { j, .. } => Ok(unrank_positions(self.ell * self.n, j, self.ell)?
                .into_iter()
                .map(|p| p as Color + 1)
                .collect()),
        }
    }

    pub fn lists(&self) -> Result<ListAssignment> {
        ListAssignment::new(
            (0..self.vertex_count())
                .map(|id| self.list(self.vertex(id)))
                .collect::<Result<_>>()?,
        )
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for s in 1..=self.n {
            let q = 2 * s;
            for id in self.layer(q) {
                out.push((self.id(GVertex::Odd { i: q - 1 }), id));
                if q < 2 * self.n {
                    out.push((id, self.id(GVertex::Odd { i: q + 1 })));
                }
            }
        }
        out
    }

    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Bags `{v_{2i-1}, v_{2i}^j, v_{2i+1}}` over `j`, then `i`.
    pub fn path_decomposition(&self) -> PathDecomposition {
        let mut bags = Vec::new();
        for s in 1..=self.n {
            let q = 2 * s;
            for id in self.layer(q) {
                let mut bag = vec![self.id(GVertex::Odd { i: q - 1 }), id];
                if q < 2 * self.n {
                    bag.push(self.id(GVertex::Odd { i: q + 1 }));
                }
                bag.sort_unstable();
                bags.push(bag);
            }
        }
        PathDecomposition::new(bags)
    }
}

/// Width of `pd` after checking it decomposes the graph.
pub fn validate_gnl_decomposition(g: &GnlGraph, pd: &PathDecomposition) -> Result<usize> {
    let nv = g.vertex_count();
    let mut first = vec![usize::MAX; nv];
    let mut last = vec![0usize; nv];
    let mut count = vec![0usize; nv];
    for (b, bag) in pd.bags.iter().enumerate() {
        for &v in bag {
            if v >= nv {
                return Err(Error::InvalidDecomposition(format!("vertex {v} out of range")));
            }
            first[v] = first[v].min(b);
            last[v] = b;
            count[v] += 1;
        }
    }
    for v in 0..nv {
        if count[v] == 0 || last[v] - first[v] + 1 != count[v] {
            return Err(Error::InvalidDecomposition(format!("bags of vertex {v} are not contiguous")));
        }
    }
    // contiguous bag ranges share a bag iff they overlap
    for (a, b) in g.edges() {
        if first[a].max(first[b]) > last[a].min(last[b]) {
            return Err(Error::InvalidDecomposition(format!("edge {a}-{b} is in no bag")));
        }
    }
    Ok(pd.width())
}

/// The graph, its lists and a width-2 decomposition.
pub fn build_gnl(n: usize, ell: usize) -> Result<(GnlGraph, ListAssignment, PathDecomposition)> {
    let g = GnlGraph::new(n, ell)?;
    let lists = g.lists()?;
    let pd = g.path_decomposition();
    Ok((g, lists, pd))
}

/// `(p, q)` with `p` odd, `q` even and `|p - q| = 2k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub p: usize,
    pub q: usize,
    pub k: usize,
}

impl Witness {
    fn of(i: usize, k: usize) -> Self {
        let j = i + 2 * k + 1;
        let (p, q) = if i % 2 == 1 { (i, j) } else { (j, i) };
        Witness { p, q, k }
    }
}

/// Interval `[a, a + 4k + 1]` and the witness of its smallest violating index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalWitness {
    pub a: usize,
    pub k: usize,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GnlOutcome {
    RepetitivePath { path: Vec<GVertex>, colors: Vec<Color> },
    WitnessCensus { witnesses: BTreeSet<Witness>, intervals: Vec<IntervalWitness> },
}

/// For each odd `p` and even `q`, whether `phi(v_p)` is missing from
/// `phi(V_q)`, plus one blob vertex per color seen in each layer.
struct Misses {
    missing: Vec<Vec<bool>>,
    holder: Vec<HashMap<Color, u64>>,
}

fn misses(g: &GnlGraph, phi: &Coloring) -> Misses {
    let n = g.n();
    let mut holder = vec![HashMap::new(); n];
    for s in 1..=n {
        for (j, id) in g.layer(2 * s).enumerate() {
            holder[s - 1].entry(phi[id]).or_insert(j as u64 + 1);
        }
    }
    let missing = (0..n)
        .map(|t| (0..n).map(|s| !holder[s].contains_key(&phi[t])).collect())
        .collect();
    Misses { missing, holder }
}

fn violated(m: &Misses, w: Witness) -> bool {
    m.missing[(w.p - 1) / 2][w.q / 2 - 1]
}

fn check_coloring(g: &GnlGraph, lists: &ListAssignment, phi: &Coloring) -> Result<()> {
    if phi.len() != g.vertex_count() || lists.n() != g.vertex_count() {
        return Err(Error::Invalid("coloring and lists must cover G(n, ell)".into()));
    }
    if !lists.respects(phi) {
        return Err(Error::Invalid("coloring does not respect the lists".into()));
    }
    Ok(())
}

/// Scans intervals by `k`, then `a`. The first interval whose membership
/// conditions all hold yields a repetitively colored path; otherwise every
/// interval gets a witness and the census is returned.
pub fn find_repetition_or_witnesses(g: &GnlGraph, lists: &ListAssignment, phi: &Coloring) -> Result<GnlOutcome> {
    check_coloring(g, lists, phi)?;
    let m = misses(g, phi);
    let top = 2 * g.n();
    let mut witnesses = BTreeSet::new();
    let mut intervals = Vec::new();
    let mut k = 0;
    while 4 * k + 2 <= top {
        for a in 1..=top - 4 * k - 1 {
            let bad: Vec<Witness> = (a..=a + 2 * k)
                .map(|i| Witness::of(i, k))
                .filter(|&w| violated(&m, w))
                .collect();
            if bad.is_empty() {
                return Ok(repetitive_path(g, phi, &m, a, k));
            }
            intervals.push(IntervalWitness { a, k, witness: bad[0] });
            witnesses.extend(bad);
        }
        k += 1;
    }
    Ok(GnlOutcome::WitnessCensus { witnesses, intervals })
}

fn repetitive_path(g: &GnlGraph, phi: &Coloring, m: &Misses, a: usize, k: usize) -> GnlOutcome {
    let half = 2 * k + 1;
    let odd_color = |i: usize| phi[g.id(GVertex::Odd { i })];
    let mut path = Vec::with_capacity(2 * half);
    for idx in a..a + 2 * half {
        if idx % 2 == 1 {
            path.push(GVertex::Odd { i: idx });
        } else {
            let partner = if idx < a + half { idx + half } else { idx - half };
            let c = odd_color(partner);
            let j = m.holder[idx / 2 - 1][&c];
            path.push(GVertex::Even { i: idx, j });
        }
    }
    let colors = path.iter().map(|&v| phi[g.id(v)]).collect();
    GnlOutcome::RepetitivePath { path, colors }
}

/// Every witness of every interval, whatever the outcome of the scan.
pub fn witness_census(g: &GnlGraph, lists: &ListAssignment, phi: &Coloring) -> Result<BTreeSet<Witness>> {
    check_coloring(g, lists, phi)?;
    let m = misses(g, phi);
    let top = 2 * g.n();
    let mut out = BTreeSet::new();
    let mut k = 0;
    while 4 * k + 2 <= top {
        for a in 1..=top - 4 * k - 1 {
            out.extend((a..=a + 2 * k).map(|i| Witness::of(i, k)).filter(|&w| violated(&m, w)));
        }
        k += 1;
    }
    Ok(out)
}

/// True when `path` is a path of the graph whose colors form a repetition.
pub fn is_repetitive_path(g: &GnlGraph, path: &[GVertex], phi: &Coloring) -> bool {
    let distinct: BTreeSet<_> = path.iter().collect();
    if distinct.len() != path.len() || path.windows(2).any(|w| !g.adjacent(w[0], w[1])) {
        return false;
    }
    let colors: Vec<Color> = path.iter().map(|&v| phi[g.id(v)]).collect();
    crate::repetition::is_square(&colors)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Certification {
    /// The only coloring from the lists repeats along `path`.
    Forced { path: Vec<GVertex>, colors: Vec<Color> },
    /// No coloring from the lists is nonrepetitive.
    Exhaustive { nodes: u64 },
    NotCertified { reason: String },
}

/// Vertex count up to which the exhaustive search is attempted.
pub const EXHAUSTIVE_VERTEX_LIMIT: usize = 16;

/// Shows that no coloring from the lists is nonrepetitive, where that is
/// feasible: by the forced coloring for `ell = 1`, by exhaustive search on
/// tiny instances otherwise.
pub fn certify_lower_bound_small(g: &GnlGraph, lists: &ListAssignment, budget: u64) -> Result<Certification> {
    if g.ell() == 1 {
        let phi: Coloring = (0..g.vertex_count()).map(|v| lists.list(v)[0]).collect();
        return match find_repetition_or_witnesses(g, lists, &phi)? {
            GnlOutcome::RepetitivePath { path, colors } => Ok(Certification::Forced { path, colors }),
            GnlOutcome::WitnessCensus { .. } => Ok(Certification::NotCertified {
                reason: "forced coloring has no interval repetition".into(),
            }),
        };
    }
    if g.vertex_count() > EXHAUSTIVE_VERTEX_LIMIT {
        return Ok(Certification::NotCertified {
            reason: format!(
                "{} vertices is beyond exhaustive search (limit {EXHAUSTIVE_VERTEX_LIMIT})",
                g.vertex_count()
            ),
        });
    }
    let adj = g.adjacency();
    let mut search = Exhaustive {
        adj: &adj,
        lists,
        phi: vec![0; g.vertex_count()],
        nodes: 0,
        budget,
    };
    match search.extend(0) {
        Ok(true) => Ok(Certification::NotCertified {
            reason: format!("nonrepetitive coloring found: {:?}", search.phi),
        }),
        Ok(false) => Ok(Certification::Exhaustive { nodes: search.nodes }),
        Err(Error::BudgetExceeded { .. }) => Ok(Certification::NotCertified {
            reason: format!("search budget of {budget} nodes exhausted"),
        }),
        Err(e) => Err(e),
    }
}

/// Backtracking over list colorings of a general graph, rejecting a color
/// as soon as some path through the new vertex is repetitive.
struct Exhaustive<'a> {
    adj: &'a [Vec<Vertex>],
    lists: &'a ListAssignment,
    phi: Vec<Color>,
    nodes: u64,
    budget: u64,
}

impl Exhaustive<'_> {
    fn extend(&mut self, v: Vertex) -> Result<bool> {
        if v == self.adj.len() {
            return Ok(true);
        }
        for &c in self.lists.list(v) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    context: "exhaustive coloring search",
                    budget: self.budget,
                });
            }
            self.phi[v] = c;
            if !self.repetition_through(v) && self.extend(v + 1)? {
                return Ok(true);
            }
        }
        self.phi[v] = 0;
        Ok(false)
    }

    /// Any repetitive path among colored vertices `0..=v` that uses `v`.
    fn repetition_through(&self, v: Vertex) -> bool {
        (0..=v).any(|s| {
            let mut path = vec![s];
            self.walk(&mut path, v)
        })
    }

    fn walk(&self, path: &mut Vec<Vertex>, v: Vertex) -> bool {
        if path.len().is_multiple_of(2) && path.contains(&v) {
            let colors: Vec<Color> = path.iter().map(|&x| self.phi[x]).collect();
            if crate::repetition::is_square(&colors) {
                return true;
            }
        }
        let last = *path.last().unwrap();
        for &w in &self.adj[last] {
            if w <= v && !path.contains(&w) {
                path.push(w);
                if self.walk(path, v) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
}

/// A uniformly random list-respecting coloring.
pub fn random_coloring<R: rand::Rng + ?Sized>(lists: &ListAssignment, rng: &mut R) -> Coloring {
    use rand::seq::SliceRandom;
    (0..lists.n()).map(|v| *lists.list(v).choose(rng).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances() {
        let (g, lists, pd) = build_gnl(2, 1).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(lists.list(g.id(GVertex::Odd { i: 1 })), &[1]);
        assert_eq!(lists.list(g.id(GVertex::Odd { i: 3 })), &[2]);
        assert_eq!(lists.list(g.id(GVertex::Even { i: 2, j: 1 })), &[1]);
        assert_eq!(lists.list(g.id(GVertex::Even { i: 2, j: 2 })), &[2]);
        assert_eq!(validate_gnl_decomposition(&g, &pd).unwrap(), 2);
        let g = GnlGraph::new(3, 2).unwrap();
        assert_eq!(g.blob_size(), 15);
        assert_eq!(g.vertex_count(), 48);
        for id in 0..48 {
            assert_eq!(g.id(g.vertex(id)), id);
        }
    }

    #[test]
    fn forced_single_colors_repeat() {
        let (g, lists, _) = build_gnl(1, 1).unwrap();
        match certify_lower_bound_small(&g, &lists, 1000).unwrap() {
            Certification::Forced { path, colors } => {
                assert_eq!(path.len(), 2);
                assert_eq!(colors, vec![1, 1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exhaustive_finds_colorings_when_they_exist() {
        // G(1, 2): one edge with lists {1, 2}
        let (g, lists, _) = build_gnl(1, 2).unwrap();
        assert!(matches!(
            certify_lower_bound_small(&g, &lists, 1000).unwrap(),
            Certification::NotCertified { .. }
        ));
    }
}
