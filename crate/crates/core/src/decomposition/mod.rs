//! Path decompositions of trees and path-partitions built from them.

mod min_height;
mod partition;
mod pathwidth;

pub use min_height::{min_height_partition, MIN_HEIGHT_LIMIT};
pub use partition::{
    build_path_partition, classify_ascending, edge_kind, is_phi_bad_ascending, Ascending,
    Direction, EdgeKind, PathPartition,
};
pub use pathwidth::{
    heuristic_path_decomposition, tree_pathwidth_exact, vertex_separation_bruteforce,
    EXACT_PATHWIDTH_LIMIT,
};

use crate::graph::Tree;
use crate::{Error, Result, Vertex};

/// Bags indexed by the vertices of a path, in order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<Vertex>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<Vertex>>) -> Self {
        PathDecomposition { bags }
    }

    /// `max |bag| - 1`, or 0 without bags.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// One bag per line, ids separated by spaces.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut bags = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let bag = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<Vertex>().map_err(|e| Error::Parse {
                        line: i + 1,
                        msg: format!("{t:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            bags.push(bag);
        }
        Ok(PathDecomposition { bags })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for bag in &self.bags {
            let line: Vec<String> = bag.iter().map(ToString::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Checks that each vertex occupies a nonempty contiguous run of bags and
/// every edge lies in some bag. Returns the width.
pub fn validate_path_decomposition(tree: &Tree, pd: &PathDecomposition) -> Result<usize> {
    let n = tree.n();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0usize; n];
    let mut count = vec![0usize; n];
    for (i, bag) in pd.bags.iter().enumerate() {
        let mut seen = bag.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != bag.len() {
            return Err(Error::InvalidDecomposition(format!("bag {i} repeats a vertex")));
        }
        for &v in bag {
            if v >= n {
                return Err(Error::InvalidDecomposition(format!("bag {i} names unknown vertex {v}")));
            }
            first[v] = first[v].min(i);
            last[v] = i;
            count[v] += 1;
        }
    }
    for v in 0..n {
        if count[v] == 0 {
            return Err(Error::InvalidDecomposition(format!("vertex {v} is in no bag")));
        }
        if last[v] - first[v] + 1 != count[v] {
            return Err(Error::InvalidDecomposition(format!("bags of vertex {v} are not contiguous")));
        }
    }
    for &(a, b) in tree.edges() {
        // contiguous runs meet iff they overlap
        if first[a].max(first[b]) > last[a].min(last[b]) {
            return Err(Error::InvalidDecomposition(format!("edge {a}-{b} is in no bag")));
        }
    }
    Ok(pd.width())
}
