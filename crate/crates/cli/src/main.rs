//! `thue`: command-line front end.
//!
//! Results go to stdout as JSON (indented with `--pretty`), diagnostics to
//! stderr. Exit codes: 0 ok, 1 verification failed or not certified,
//! 2 usage or input error, 3 budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use thue_core::decomposition::{heuristic_path_decomposition, tree_pathwidth_exact, EXACT_PATHWIDTH_LIMIT};
use thue_core::game::{run_game, GameResult};
use thue_core::graph::Tree;
use thue_core::greedy::{choose_partition, pipeline, PipelineOptions};
use thue_core::io::{
    coloring_to_json, parse_coloring, parse_lists, parse_vertex_map, render, sublists_to_json, vertex_map,
    PartitionJson,
};
use thue_core::logs::{audit_log_bounds, decode_log, MLog};
use thue_core::pw2::{build_gnl, certify_lower_bound_small, find_repetition_or_witnesses, random_coloring, Certification};
use thue_core::repetition::{verify_nonrepetitive, ListAssignment};
use thue_core::solver::{run_algorithm1, thin_lists, Outcome, Schedule, SolverConfig, StageReport, ThinOptions};
use thue_core::{Color, Error};

#[derive(Parser)]
#[command(name = "thue", version, about = "Nonrepetitive list colorings of trees")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pathwidth and an optimal path decomposition of a tree.
    Pathwidth {
        #[arg(long)]
        tree: PathBuf,
    },
    /// A low path-partition of a tree.
    Partition {
        #[arg(long)]
        tree: PathBuf,
        /// Prefer a partition of at most this height.
        #[arg(long, default_value_t = 2)]
        max_height: usize,
    },
    /// Thin lists to sublists along a schedule.
    Thin(ThinArgs),
    /// Full pipeline: thin, color greedily, verify.
    Color(ThinArgs),
    /// Check a coloring for repetitive paths.
    Verify {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Also check that the coloring respects these lists.
        #[arg(long)]
        lists: Option<PathBuf>,
    },
    /// One run of the thinning algorithm on the tree rooted at `--root`.
    Solve(SolveArgs),
    /// Recover the random input from a log.
    LogDecode {
        #[arg(long)]
        log: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        lists: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Counting checks on a log.
    Audit {
        #[arg(long)]
        log: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        list_size: usize,
    },
    /// The pathwidth-2 graph G(n, ell) with its lists and decomposition.
    GenGnl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        /// Above this many vertices only the manifest is written.
        #[arg(long, default_value_t = 5000)]
        max_explicit: usize,
    },
    /// Repetitive path or witness census for a coloring of G(n, ell).
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        /// Coloring by vertex id; a random coloring from the lists otherwise.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Try to show that no coloring from the lists is nonrepetitive.
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// The append-and-erase game.
    Game {
        #[arg(long)]
        n: Option<usize>,
        /// Every position draws from 1..=list-size.
        #[arg(long)]
        list_size: Option<usize>,
        /// Per-position lists; overrides --n and --list-size.
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
}

#[derive(Args)]
struct ThinArgs {
    #[arg(long)]
    tree: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    /// Per-level list sizes, largest first, e.g. `64,16,5`.
    #[arg(long, value_delimiter = ',', default_values_t = [64usize, 16, 5])]
    schedule: Vec<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Fresh inputs tried per stage.
    #[arg(long, default_value_t = 16)]
    retries: usize,
    /// Extension work per attempt.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    tree: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    #[arg(long)]
    ell: Option<usize>,
    /// Defaults to the size of the lists.
    #[arg(long)]
    list_size: Option<usize>,
    #[arg(long)]
    max_iterations: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Extension work cap.
    #[arg(long)]
    budget: Option<u64>,
    /// Solver configuration JSON; its fields win over the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    root: usize,
    /// Include the per-iteration trace as an array.
    #[arg(long)]
    trace: bool,
}

/// Failure of a command, carrying its exit code.
struct Fail {
    code: u8,
    msg: String,
    /// Printed on stdout before exiting.
    output: Option<Value>,
}

impl Fail {
    fn usage(msg: impl Into<String>) -> Self {
        Fail {
            code: 2,
            msg: msg.into(),
            output: None,
        }
    }

    fn verdict(msg: impl Into<String>, output: Value) -> Self {
        Fail {
            code: 1,
            msg: msg.into(),
            output: Some(output),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::ThinningFailed { .. } => 3,
            Error::Invariant(_) => 1,
            _ => 2,
        };
        Fail {
            code,
            msg: e.to_string(),
            output: None,
        }
    }
}

type Res = Result<Value, Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::usage(format!("{}: {e}", path.display())))
}

fn read_tree(path: &Path) -> Result<Tree, Fail> {
    Ok(Tree::from_text(&read(path)?)?)
}

fn read_lists(path: &Path, n: usize) -> Result<ListAssignment, Fail> {
    let lists = parse_lists(&read(path)?)?;
    if lists.n() != n {
        return Err(Fail::usage(format!("lists cover {} vertices, the tree has {n}", lists.n())));
    }
    Ok(lists)
}

fn need_seed(seed: Option<u64>) -> Result<u64, Fail> {
    seed.ok_or_else(|| Fail::usage("this command is randomized; pass --seed"))
}

fn stages_json(stages: &[StageReport]) -> Value {
    stages
        .iter()
        .map(|s| {
            json!({"depth": s.depth, "kind": s.kind, "vertices": s.vertices,
                   "from": s.from, "to": s.to, "attempts": s.attempts})
        })
        .collect()
}

fn pathwidth(tree: &Path) -> Res {
    let tree = read_tree(tree)?;
    let (width, pd, exact) = if tree.n() <= EXACT_PATHWIDTH_LIMIT {
        let (w, pd) = tree_pathwidth_exact(&tree)?;
        (w, pd, true)
    } else {
        let pd = heuristic_path_decomposition(&tree);
        (pd.width(), pd, false)
    };
    Ok(json!({"pathwidth": width, "exact": exact, "bags": pd.bags}))
}

fn partition(tree: &Path, max_height: usize) -> Res {
    let tree = read_tree(tree)?;
    let pd = if tree.n() <= EXACT_PATHWIDTH_LIMIT {
        tree_pathwidth_exact(&tree)?.1
    } else {
        heuristic_path_decomposition(&tree)
    };
    let pp = choose_partition(&tree, &pd, max_height, true)?;
    let mut out = serde_json::to_value(PartitionJson::from_partition(&pp)).expect("plain data");
    out["height"] = json!(pp.height());
    out["levels"] = vertex_map(&(0..tree.n()).map(|v| pp.level(v)).collect::<Vec<_>>());
    Ok(out)
}

fn thin_options(a: &ThinArgs) -> Result<ThinOptions, Fail> {
    let mut opts = ThinOptions {
        seed: need_seed(a.seed)?,
        retries: a.retries,
        ..Default::default()
    };
    if let Some(b) = a.budget {
        opts.extension_budget = b;
    }
    Ok(opts)
}

fn thin(a: &ThinArgs) -> Res {
    let opts = thin_options(a)?;
    let tree = read_tree(&a.tree)?;
    let lists = read_lists(&a.lists, tree.n())?;
    let schedule = Schedule::from_anchors(&a.schedule)?;
    let pd = if tree.n() <= EXACT_PATHWIDTH_LIMIT {
        tree_pathwidth_exact(&tree)?.1
    } else {
        heuristic_path_decomposition(&tree)
    };
    let pp = choose_partition(&tree, &pd, schedule.height(), true)?;
    let rep = thin_lists(&tree, &pp, &lists, &schedule, &opts)?;
    Ok(json!({
        "sublists": sublists_to_json(&rep.sub),
        "partition": PartitionJson::from_partition(&pp),
        "schedule": schedule.chain(),
        "stages": stages_json(&rep.stages),
    }))
}

fn color(a: &ThinArgs) -> Res {
    let opts = PipelineOptions {
        thin: thin_options(a)?,
        best_root: true,
    };
    let tree = read_tree(&a.tree)?;
    let lists = read_lists(&a.lists, tree.n())?;
    let schedule = Schedule::from_anchors(&a.schedule)?;
    let rep = pipeline(&tree, &lists, &schedule, &opts)?;
    Ok(json!({
        "coloring": coloring_to_json(&rep.coloring),
        "pathwidth": rep.pathwidth,
        "exact_pathwidth": rep.exact_pathwidth,
        "height": rep.partition.height(),
        "sublists": sublists_to_json(&rep.sublists),
        "stages": stages_json(&rep.stages),
    }))
}

fn verify(tree: &Path, coloring: &Path, lists: Option<&Path>) -> Res {
    let tree = read_tree(tree)?;
    let phi = parse_coloring(&read(coloring)?)?;
    if phi.len() != tree.n() {
        return Err(Fail::usage(format!("coloring covers {} vertices, the tree has {}", phi.len(), tree.n())));
    }
    if let Some(l) = lists {
        let lists = read_lists(l, tree.n())?;
        if let Some(v) = (0..tree.n()).find(|&v| !lists.list(v).contains(&phi[v])) {
            let out = json!({"nonrepetitive": null, "respects_lists": false, "vertex": v});
            return Err(Fail::verdict(format!("vertex {v} is colored outside its list"), out));
        }
    }
    match verify_nonrepetitive(&tree, &phi) {
        (true, _) => Ok(json!({"nonrepetitive": true})),
        (false, w) => {
            let path = w.map(|p| p.0).unwrap_or_default();
            let colors: Vec<Color> = path.iter().map(|&v| phi[v]).collect();
            let out = json!({"nonrepetitive": false, "witness": {"path": path, "colors": colors}});
            Err(Fail::verdict("the coloring is repetitive", out))
        }
    }
}

fn solve(a: &SolveArgs) -> Res {
    let tree = read_tree(&a.tree)?;
    let lists = read_lists(&a.lists, tree.n())?;
    if a.root >= tree.n() {
        return Err(Fail::usage(format!("root {} is not a vertex", a.root)));
    }
    let cfg = match &a.config {
        Some(p) => serde_json::from_str::<SolverConfig>(&read(p)?).map_err(|e| Fail::usage(format!("config: {e}")))?,
        None => {
            let ell = a.ell.ok_or_else(|| Fail::usage("pass --ell or --config"))?;
            let mut cfg = SolverConfig::seeded(ell, a.list_size.unwrap_or(lists.size()), need_seed(a.seed)?);
            cfg.max_iterations = a.max_iterations;
            if let Some(b) = a.budget {
                cfg.extension_budget = b;
            }
            cfg.keep_trace = a.trace;
            cfg
        }
    };
    let arb = tree.rooted(a.root);
    let outcome = run_algorithm1(&arb, &lists, &cfg)?;
    let mut out = json!({
        "success": outcome.is_success(),
        "iterations": outcome.log().iterations(),
        "log": outcome.log(),
        "random_input": outcome.random_input(),
    });
    match &outcome {
        Outcome::Success { sub, .. } => out["sublists"] = sublists_to_json(sub),
        Outcome::Failure { state, .. } => {
            out["sublists"] = sublists_to_json(&state.sub);
            out["current"] = json!(state.current);
            if a.trace {
                out["trace"] = serde_json::to_value(&state.trace).expect("plain data");
            }
            return Err(Fail::verdict("no valid assignment within the iteration limit", out));
        }
    }
    Ok(out)
}

fn read_log(path: &Path) -> Result<MLog, Fail> {
    serde_json::from_str(&read(path)?).map_err(|e| Fail::usage(format!("log: {e}")))
}

fn log_decode(log: &Path, tree: &Path, lists: &Path, ell: usize, root: usize) -> Res {
    let log = read_log(log)?;
    let tree = read_tree(tree)?;
    let lists = read_lists(lists, tree.n())?;
    if root >= tree.n() {
        return Err(Fail::usage(format!("root {root} is not a vertex")));
    }
    let input = decode_log(&tree.rooted(root), &lists, ell, &log)?;
    Ok(json!({ "random_input": input }))
}

fn audit(log: &Path, ell: usize, list_size: usize) -> Res {
    let log = read_log(log)?;
    let a = audit_log_bounds(&log, ell, list_size)?;
    let out = serde_json::to_value(&a).expect("plain data");
    if a.ok() {
        Ok(out)
    } else {
        Err(Fail::verdict("the log violates its counting bounds", out))
    }
}

fn gen_gnl(n: usize, ell: usize, max_explicit: usize) -> Res {
    let (g, lists, pd) = build_gnl(n, ell)?;
    let manifest = json!({"n": n, "ell": ell, "blob_size": g.blob_size(), "vertex_count": g.vertex_count()});
    if g.vertex_count() > max_explicit {
        return Ok(json!({
            "manifest": manifest,
            "lazy": true,
            "addressing": "odd index i -> id (i-1)/2; even index i, blob position j -> id n + (i/2-1)*blob_size + (j-1)",
        }));
    }
    let vertices: Vec<Value> = (0..g.vertex_count())
        .map(|id| serde_json::to_value(g.vertex(id)).expect("plain data"))
        .collect();
    Ok(json!({
        "manifest": manifest,
        "lazy": false,
        "vertices": vertices,
        "edges": g.edges(),
        "lists": vertex_map(lists.lists()),
        "bags": pd.bags,
    }))
}

fn census(n: usize, ell: usize, coloring: Option<&Path>, seed: Option<u64>, certify: bool, budget: u64) -> Res {
    let (g, lists, _) = build_gnl(n, ell)?;
    let mut out = json!({});
    if coloring.is_some() || seed.is_some() || !certify {
        let phi = match coloring {
            Some(p) => parse_coloring(&read(p)?)?,
            None => random_coloring(&lists, &mut ChaCha8Rng::seed_from_u64(need_seed(seed)?)),
        };
        let outcome = find_repetition_or_witnesses(&g, &lists, &phi)?;
        out["outcome"] = serde_json::to_value(&outcome).expect("plain data");
    }
    if certify {
        let c = certify_lower_bound_small(&g, &lists, budget)?;
        out["certification"] = serde_json::to_value(&c).expect("plain data");
        if let Certification::NotCertified { reason } = &c {
            return Err(Fail::verdict(format!("not certified: {reason}"), out));
        }
    }
    Ok(out)
}

fn game(n: Option<usize>, list_size: Option<usize>, lists: Option<&Path>, seed: Option<u64>, budget: u64) -> Res {
    let seed = need_seed(seed)?;
    let lists: Vec<Vec<Color>> = match (lists, n, list_size) {
        (Some(p), _, _) => parse_vertex_map(&read(p)?)?,
        (None, Some(n), Some(k)) => vec![(1..=k as Color).collect(); n],
        _ => return Err(Fail::usage("pass --lists, or both --n and --list-size")),
    };
    let target = lists.len();
    let result = run_game(lists, &mut ChaCha8Rng::seed_from_u64(seed), budget)?;
    let mut out = serde_json::to_value(&result).expect("plain data");
    out["target"] = json!(target);
    match result {
        GameResult::Completed { .. } => Ok(out),
        GameResult::Stalled { .. } => Err(Fail {
            code: 3,
            msg: format!("step budget {budget} spent before reaching length {target}"),
            output: Some(out),
        }),
    }
}

fn dispatch(cmd: &Command) -> Res {
    match cmd {
        Command::Pathwidth { tree } => pathwidth(tree),
        Command::Partition { tree, max_height } => partition(tree, *max_height),
        Command::Thin(a) => thin(a),
        Command::Color(a) => color(a),
        Command::Verify { tree, coloring, lists } => verify(tree, coloring, lists.as_deref()),
        Command::Solve(a) => solve(a),
        Command::LogDecode {
            log,
            tree,
            lists,
            ell,
            root,
        } => log_decode(log, tree, lists, *ell, *root),
        Command::Audit { log, ell, list_size } => audit(log, *ell, *list_size),
        Command::GenGnl { n, ell, max_explicit } => gen_gnl(*n, *ell, *max_explicit),
        Command::Census {
            n,
            ell,
            coloring,
            seed,
            certify,
            budget,
        } => census(*n, *ell, coloring.as_deref(), *seed, *certify, *budget),
        Command::Game {
            n,
            list_size,
            lists,
            seed,
            budget,
        } => game(*n, *list_size, lists.as_deref(), *seed, *budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(v) => {
            println!("{}", render(&v, cli.pretty));
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(v) = f.output {
                println!("{}", render(&v, cli.pretty));
            }
            eprintln!("thue: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
