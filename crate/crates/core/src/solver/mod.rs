//! Randomized sublist thinning on plane arborescences and its per-level
//! application to path-partitions.

mod constants;
mod extension;
mod thin;

pub use constants::{paper_b, paper_f, paper_list_size};
pub use extension::{assignment_is_valid, BadPath};
pub use thin::{thin_lists, THIN_EXTENSION_BUDGET, to_arborescences, Schedule, StageArborescence, StageReport, ThinOptions, ThinReport};

pub(crate) use extension::{Assignment, Budget};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::PlaneArborescence;
use crate::logs::MLog;
use crate::repetition::{ListAssignment, SublistAssignment};
use crate::subsets::{intersecting_index, subset_count};
use crate::{Error, Result, Vertex};

/// Default cap on deterministic extension work per run.
pub const DEFAULT_EXTENSION_BUDGET: u64 = 5_000_000;

/// Source of the numbers `r_1, r_2, ...` in `[1, C(N, ell)]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomInput {
    #[serde(rename = "random_input")]
    Explicit(Vec<u64>),
    Seed(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub ell: usize,
    pub list_size: usize,
    /// `M`; defaults to the explicit input length or `64 n C(N, ell)`.
    #[serde(default)]
    pub max_iterations: Option<u64>,
    #[serde(flatten)]
    pub random: RandomInput,
    #[serde(default = "default_budget")]
    pub extension_budget: u64,
    #[serde(default = "default_trace")]
    pub keep_trace: bool,
}

fn default_budget() -> u64 {
    DEFAULT_EXTENSION_BUDGET
}

fn default_trace() -> bool {
    true
}

impl SolverConfig {
    pub fn seeded(ell: usize, list_size: usize, seed: u64) -> Self {
        SolverConfig {
            ell,
            list_size,
            max_iterations: None,
            random: RandomInput::Seed(seed),
            extension_budget: DEFAULT_EXTENSION_BUDGET,
            keep_trace: true,
        }
    }

    pub fn explicit(ell: usize, list_size: usize, input: Vec<u64>) -> Self {
        SolverConfig {
            random: RandomInput::Explicit(input),
            ..SolverConfig::seeded(ell, list_size, 0)
        }
    }

    pub fn with_max_iterations(mut self, m: u64) -> Self {
        self.max_iterations = Some(m);
        self
    }
}

/// What happened in one iteration after sampling the current vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Event {
    Retraction {
        path: Vec<Vertex>,
        r: usize,
        g: usize,
        /// Ranks of the sublists on the path just before erasure.
        ranks: Vec<u64>,
    },
    Extension {
        extended: Vec<Vertex>,
        problematic: Option<Vertex>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: u64,
    pub vertex: Vertex,
    pub rank: u64,
    pub event: Event,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Running,
    Success,
    Failure,
}

/// Snapshot handed back on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverState {
    pub current: Vertex,
    pub sub: SublistAssignment,
    pub iteration: u64,
    pub trace: Vec<IterationRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Success {
        sub: SublistAssignment,
        log: MLog,
        random_input: Vec<u64>,
    },
    Failure {
        log: MLog,
        state: SolverState,
        random_input: Vec<u64>,
    },
}

impl Outcome {
    pub fn log(&self) -> &MLog {
        match self {
            Outcome::Success { log, .. } | Outcome::Failure { log, .. } => log,
        }
    }

    pub fn random_input(&self) -> &[u64] {
        match self {
            Outcome::Success { random_input, .. } | Outcome::Failure { random_input, .. } => random_input,
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, Outcome::Success { .. })
    }
}

enum Source {
    Explicit(Vec<u64>),
    Rng(ChaCha8Rng),
}

/// One execution of the thinning algorithm, advanced an iteration at a time.
pub struct Solver<'a> {
    asg: Assignment<'a>,
    current: Vertex,
    iteration: u64,
    m: u64,
    source: Source,
    total: u64,
    used: Vec<u64>,
    budget: Budget,
    status: Status,
    log: MLog,
    trace: Vec<IterationRecord>,
    keep_trace: bool,
}

impl<'a> Solver<'a> {
    pub fn new(arb: &'a PlaneArborescence, lists: &'a ListAssignment, cfg: &SolverConfig) -> Result<Self> {
        let n = arb.n();
        if cfg.ell == 0 || cfg.list_size < cfg.ell {
            return Err(Error::Invalid(format!(
                "need 1 <= ell <= list size, got ell {} and list size {}",
                cfg.ell, cfg.list_size
            )));
        }
        if lists.n() != n || lists.size() != cfg.list_size {
            return Err(Error::Invalid(format!(
                "expected {n} lists of size {}, got {} of size {}",
                cfg.list_size,
                lists.n(),
                lists.size()
            )));
        }
        let total = subset_count(cfg.list_size, cfg.ell)?;
        let (source, default_m) = match &cfg.random {
            RandomInput::Explicit(v) => {
                if let Some(&bad) = v.iter().find(|&&x| x == 0 || x > total) {
                    return Err(Error::RankOutOfRange { rank: bad, max: total });
                }
                (Source::Explicit(v.clone()), v.len() as u64)
            }
            RandomInput::Seed(seed) => (
                Source::Rng(ChaCha8Rng::seed_from_u64(*seed)),
                (64 * n as u64).saturating_mul(total),
            ),
        };
        let m = cfg.max_iterations.unwrap_or(default_m);
        if m == 0 {
            return Err(Error::Invalid("the run needs at least one iteration".into()));
        }
        if let Source::Explicit(v) = &source {
            if (v.len() as u64) < m {
                return Err(Error::Invalid(format!(
                    "random input has {} entries but M = {m}",
                    v.len()
                )));
            }
        }
        Ok(Solver {
            asg: Assignment::new(arb, lists, cfg.ell),
            current: arb.root(),
            iteration: 0,
            m,
            source,
            total,
            used: Vec::new(),
            budget: Budget::new(cfg.extension_budget),
            status: Status::Running,
            log: MLog {
                d: Vec::new(),
                s: Vec::new(),
                b: Vec::new(),
                gamma: Vec::new(),
            },
            trace: Vec::new(),
            keep_trace: cfg.keep_trace,
        })
    }

    pub fn current(&self) -> Vertex {
        self.current
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn max_iterations(&self) -> u64 {
        self.m
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn arborescence(&self) -> &PlaneArborescence {
        self.asg.arb
    }

    pub fn sublists(&self) -> SublistAssignment {
        SublistAssignment {
            sublists: self.asg.sets.clone(),
            ell: self.asg.ell,
        }
    }

    pub fn ranks(&self) -> &[Option<u64>] {
        &self.asg.ranks
    }

    /// Vertices with a defined sublist form exactly the preorder prefix
    /// before the current vertex.
    pub fn defined_is_prefix(&self) -> bool {
        let arb = self.asg.arb;
        let cut = if self.status == Status::Success {
            arb.n()
        } else {
            arb.dfs_index(self.current)
        };
        arb.dfs_left_to_right()
            .iter()
            .enumerate()
            .all(|(i, &v)| self.asg.sets[v].is_some() == (i < cut))
    }

    fn next_random(&mut self) -> u64 {
        let i = self.iteration as usize;
        match &mut self.source {
            Source::Explicit(v) => v[i],
            Source::Rng(rng) => rng.gen_range(1..=self.total),
        }
    }

    /// Runs one iteration of the main loop.
    pub fn step(&mut self) -> Result<&IterationRecord> {
        if self.status != Status::Running {
            return Err(Error::Invalid("the run has already finished".into()));
        }
        let rank = self.next_random();
        self.used.push(rank);
        self.iteration += 1;
        let u = self.current;
        self.asg.assign_rank(u, rank)?;
        let arb = self.asg.arb;
        let event = if let Some(bp) = self.asg.find_bad_path(u) {
            let BadPath { vertices, r, g } = bp;
            let b = vertices[..r + g].iter().filter(|&&v| arb.on_rightmost(v)).count();
            let mut gamma = Vec::with_capacity(r);
            for j in 0..r {
                let y = vertices[r + g + j];
                let idx = intersecting_index(
                    self.asg.lists.list(y),
                    self.asg.sets[y].as_deref().unwrap(),
                    self.asg.sets[vertices[j]].as_deref().unwrap(),
                )?
                .ok_or_else(|| Error::Invariant("retracted pair does not intersect".into()))?;
                gamma.push(idx);
            }
            let ranks = vertices.iter().map(|&v| self.asg.ranks[v].unwrap()).collect();
            let top = vertices[r + g];
            self.asg.clear_up(top);
            self.current = top;
            self.log.b.push(b);
            self.log.gamma.push(Some(gamma));
            Event::Retraction {
                path: vertices,
                r,
                g,
                ranks,
            }
        } else {
            let (extended, problematic) = self.asg.extend_children(u, &mut self.budget)?;
            match problematic {
                Some(c) => self.current = c,
                None => {
                    if self.iteration != 1 || u != arb.root() {
                        return Err(Error::Invariant(format!(
                            "vertex {u} extended completely in iteration {}",
                            self.iteration
                        )));
                    }
                    self.status = Status::Success;
                }
            }
            self.log.b.push(0);
            self.log.gamma.push(None);
            Event::Extension {
                extended,
                problematic,
            }
        };
        self.log.d.push(arb.height(self.current));
        if self.status == Status::Running && self.iteration == self.m {
            self.status = Status::Failure;
        }
        let record = IterationRecord {
            iteration: self.iteration,
            vertex: u,
            rank,
            event,
        };
        if !self.keep_trace {
            self.trace.clear();
        }
        self.trace.push(record);
        Ok(self.trace.last().unwrap())
    }

    /// Runs to completion, calling `observe` after every iteration.
    pub fn run_observed(mut self, mut observe: impl FnMut(&Solver, &IterationRecord)) -> Result<Outcome> {
        while self.status == Status::Running {
            self.step()?;
            let rec = self.trace.last().unwrap().clone();
            observe(&self, &rec);
        }
        Ok(self.finish())
    }

    pub fn run(self) -> Result<Outcome> {
        self.run_observed(|_, _| {})
    }

    fn finish(mut self) -> Outcome {
        self.log.s = self.asg.ranks.clone();
        let sub = self.sublists();
        match self.status {
            Status::Success => Outcome::Success {
                sub,
                log: self.log,
                random_input: self.used,
            },
            _ => Outcome::Failure {
                log: self.log,
                state: SolverState {
                    current: self.current,
                    sub,
                    iteration: self.iteration,
                    trace: self.trace,
                },
                random_input: self.used,
            },
        }
    }
}

/// Runs the thinning algorithm once.
pub fn run_algorithm1(arb: &PlaneArborescence, lists: &ListAssignment, cfg: &SolverConfig) -> Result<Outcome> {
    Solver::new(arb, lists, cfg)?.run()
}

/// Deterministic extension of `up(w)` given sublists on the ancestors of
/// `w`. `sets` must be defined on the root chain of `w`; entries in `up(w)`
/// are overwritten. Returns `None` if no valid extension exists.
pub fn find_valid_extension(
    arb: &PlaneArborescence,
    lists: &ListAssignment,
    ell: usize,
    sets: &[Option<Vec<crate::Color>>],
    w: Vertex,
    budget: u64,
) -> Result<Option<Vec<Option<Vec<crate::Color>>>>> {
    let mut asg = Assignment::new(arb, lists, ell);
    let mut chain = arb.root_chain(w);
    chain.pop();
    for &a in &chain {
        let s = sets[a].as_ref().ok_or(Error::UndefinedSublist(a))?;
        let pos = crate::subsets::rank_subset(lists.list(a), s)?;
        asg.assign_rank(a, pos)?;
    }
    let mut b = Budget::new(budget);
    if asg.extend_subtree(w, &mut chain, &mut b)? {
        Ok(Some(asg.sets))
    } else {
        Ok(None)
    }
}

/// First bad path ending at `u` over defined sublists on the root chain.
pub fn find_bad_path(
    arb: &PlaneArborescence,
    lists: &ListAssignment,
    sub: &SublistAssignment,
    u: Vertex,
) -> Result<Option<BadPath>> {
    let mut asg = Assignment::new(arb, lists, sub.ell);
    for a in arb.root_chain(u) {
        let s = sub.defined(a)?;
        asg.assign_rank(a, crate::subsets::rank_subset(lists.list(a), s)?)?;
    }
    Ok(asg.find_bad_path(u))
}
