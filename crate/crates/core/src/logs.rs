//! The compact log of a solver run and what can be done with it.
//!
//! The decoder walks the log backwards. After every iteration the defined
//! vertices are the preorder prefix before the current vertex, so the current
//! vertex is the first undefined one. An ascent means the parent of that
//! vertex was sampled; a descent of `r - 1` means a retraction whose erased
//! block is rebuilt from `Gamma` and from replaying the extension sweeps.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::PlaneArborescence;
use crate::repetition::ListAssignment;
use crate::solver::{Assignment, Budget, Event, IterationRecord};
use crate::subsets::{binomial_checked, intersecting_index, nth_intersecting, rank_subset, unrank_subset};
use crate::{Error, Result};

/// `(D, S, B, Gamma)` after a run: heights of the current vertex after each
/// iteration, final sublist ranks, rightmost-prefix counts of retracted
/// paths and intersection indices of their repeated blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MLog {
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    #[serde(rename = "S", serialize_with = "ser_ranks", deserialize_with = "de_ranks")]
    pub s: Vec<Option<u64>>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    #[serde(rename = "Gamma")]
    pub gamma: Vec<Option<Vec<u64>>>,
}

fn ser_ranks<S: Serializer>(s: &[Option<u64>], ser: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    // numeric vertex order, not string order
    let mut m = ser.serialize_map(Some(s.len()))?;
    for (v, r) in s.iter().enumerate() {
        m.serialize_entry(&v.to_string(), r)?;
    }
    m.end()
}

fn de_ranks<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Vec<Option<u64>>, D::Error> {
    use serde::de::Error as _;
    let map: BTreeMap<String, Option<u64>> = BTreeMap::deserialize(de)?;
    let mut keyed = Vec::with_capacity(map.len());
    for (k, r) in map {
        let v: usize = k.parse().map_err(|_| D::Error::custom(format!("bad vertex key {k:?}")))?;
        keyed.push((v, r));
    }
    keyed.sort_unstable();
    if keyed.iter().enumerate().any(|(i, &(v, _))| i != v) {
        return Err(D::Error::custom("S must have one entry per vertex 0..n"));
    }
    Ok(keyed.into_iter().map(|(_, r)| r).collect())
}

impl MLog {
    pub fn iterations(&self) -> usize {
        self.d.len()
    }

    fn check_shape(&self) -> Result<()> {
        let m = self.d.len();
        if self.b.len() != m || self.gamma.len() != m {
            return Err(Error::InconsistentLog(format!(
                "D, B and Gamma have lengths {}, {}, {}",
                m,
                self.b.len(),
                self.gamma.len()
            )));
        }
        for (i, (b, g)) in self.b.iter().zip(&self.gamma).enumerate() {
            match g {
                None if *b != 0 => return Err(Error::InconsistentLog(format!("B[{i}] set without Gamma"))),
                Some(g) if g.is_empty() || *b == 0 => {
                    return Err(Error::InconsistentLog(format!("Gamma[{i}] without a positive B")))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Rebuilds the log from a full iteration trace and the final ranks.
pub fn record_mlog(
    arb: &PlaneArborescence,
    lists: &ListAssignment,
    ell: usize,
    trace: &[IterationRecord],
    final_ranks: &[Option<u64>],
) -> Result<MLog> {
    let mut log = MLog {
        d: Vec::with_capacity(trace.len()),
        s: final_ranks.to_vec(),
        b: Vec::with_capacity(trace.len()),
        gamma: Vec::with_capacity(trace.len()),
    };
    for (i, rec) in trace.iter().enumerate() {
        if rec.iteration != i as u64 + 1 {
            return Err(Error::Invalid(format!("trace entry {i} is iteration {}", rec.iteration)));
        }
        match &rec.event {
            Event::Extension { problematic, .. } => {
                log.d.push(arb.height(problematic.unwrap_or(rec.vertex)));
                log.b.push(0);
                log.gamma.push(None);
            }
            Event::Retraction { path, r, g, ranks } => {
                let (r, g) = (*r, *g);
                if path.len() != 2 * r + g || ranks.len() != path.len() || path.last() != Some(&rec.vertex) {
                    return Err(Error::Invalid(format!("malformed retraction in iteration {}", i + 1)));
                }
                let mut gamma = Vec::with_capacity(r);
                for j in 0..r {
                    let y = path[r + g + j];
                    let sy = unrank_subset(lists.list(y), ranks[r + g + j], ell)?;
                    let sv = unrank_subset(lists.list(path[j]), ranks[j], ell)?;
                    gamma.push(
                        intersecting_index(lists.list(y), &sy, &sv)?
                            .ok_or_else(|| Error::Invalid("retracted pair is disjoint".into()))?,
                    );
                }
                log.d.push(arb.height(path[r + g]));
                log.b.push(path[..r + g].iter().filter(|&&v| arb.on_rightmost(v)).count());
                log.gamma.push(Some(gamma));
            }
        }
    }
    Ok(log)
}

/// Symbols over `{+1, -1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DPrime {
    pub symbols: Vec<i8>,
}

impl DPrime {
    pub fn plus(&self) -> usize {
        self.symbols.iter().filter(|&&s| s == 1).count()
    }

    pub fn minus(&self) -> usize {
        self.symbols.len() - self.plus()
    }
}

/// Each difference `k <= 1` becomes `+1` followed by `1 - k` copies of `-1`.
pub fn encode_differences(diffs: &[i64]) -> Result<Vec<i8>> {
    let mut out = Vec::with_capacity(diffs.len());
    for &k in diffs {
        if k > 1 {
            return Err(Error::IllegalDifference(k));
        }
        out.push(1);
        out.extend(std::iter::repeat_n(-1, (1 - k) as usize));
    }
    Ok(out)
}

pub fn decode_differences(symbols: &[i8]) -> Result<Vec<i64>> {
    let mut out: Vec<i64> = Vec::new();
    for (i, &s) in symbols.iter().enumerate() {
        match s {
            1 => out.push(1),
            -1 => *out
                .last_mut()
                .ok_or_else(|| Error::InconsistentLog("D' starts with -1".into()))? -= 1,
            _ => return Err(Error::InconsistentLog(format!("symbol {s} at {i}"))),
        }
    }
    Ok(out)
}

/// Encodes the heights with the starting height 0 in front, so the result
/// has exactly one `+1` per iteration.
pub fn encode_dprime(d: &[usize]) -> Result<DPrime> {
    let diffs: Vec<i64> = std::iter::once(0)
        .chain(d.iter().copied())
        .collect::<Vec<_>>()
        .windows(2)
        .map(|w| w[1] as i64 - w[0] as i64)
        .collect();
    Ok(DPrime {
        symbols: encode_differences(&diffs)?,
    })
}

pub fn decode_dprime(dp: &DPrime) -> Result<Vec<usize>> {
    let mut h: i64 = 0;
    let mut out = Vec::new();
    for k in decode_differences(&dp.symbols)? {
        h += k;
        if h < 0 {
            return Err(Error::InconsistentLog("negative height".into()));
        }
        out.push(h as usize);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogAudit {
    pub iterations: usize,
    pub dprime_len: usize,
    pub dprime_minus: usize,
    pub gamma_total: usize,
    pub b_sum: usize,
    pub gamma_max: u64,
    /// `ell^2 C(N - 1, ell - 1)`.
    pub gamma_bound: u64,
    /// `C(N, ell) - C(N - ell, ell)`, the exact size of each collection.
    pub exact_intersecting: u64,
    pub violations: Vec<String>,
}

impl LogAudit {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the counting facts a single log must satisfy.
pub fn audit_log_bounds(log: &MLog, ell: usize, list_size: usize) -> Result<LogAudit> {
    let m = log.iterations();
    let mut violations = Vec::new();
    if let Err(e) = log.check_shape() {
        violations.push(e.to_string());
    }
    let dp = match encode_dprime(&log.d) {
        Ok(dp) => dp,
        Err(e) => {
            violations.push(format!("D is not a height trace: {e}"));
            DPrime { symbols: Vec::new() }
        }
    };
    let gamma_bound = (ell as u64 * ell as u64)
        .checked_mul(binomial_checked(list_size - 1, ell - 1)?)
        .ok_or(Error::SizeLimit {
            what: "gamma bound",
            actual: u128::MAX,
            limit: u64::MAX as u128,
        })?;
    let exact = binomial_checked(list_size, ell)? - binomial_checked(list_size.saturating_sub(ell), ell)?;
    let gamma_total: usize = log.gamma.iter().flatten().map(Vec::len).sum();
    let gamma_max = log.gamma.iter().flatten().flatten().copied().max().unwrap_or(0);
    let b_sum: usize = log.b.iter().sum();
    let len = dp.symbols.len();
    if !(m..=2 * m).contains(&len) {
        violations.push(format!("|D'| = {len} outside [{m}, {}]", 2 * m));
    }
    // a successful run stays at the root in its single iteration
    let success = !log.s.is_empty() && log.s.iter().all(Option::is_some);
    if dp.minus() != gamma_total + usize::from(success) {
        violations.push(format!("D' has {} minus symbols but Gamma has {gamma_total} entries", dp.minus()));
    }
    if gamma_total > m {
        violations.push(format!("Gamma has {gamma_total} entries for M = {m}"));
    }
    if b_sum > 2 * m {
        violations.push(format!("sum of B = {b_sum} exceeds 2M = {}", 2 * m));
    }
    for (i, (b, g)) in log.b.iter().zip(&log.gamma).enumerate() {
        if let Some(g) = g {
            if *b > 2 * g.len() {
                violations.push(format!("B[{i}] = {b} exceeds 2r = {}", 2 * g.len()));
            }
        }
    }
    if gamma_max > exact {
        violations.push(format!("gamma {gamma_max} exceeds the collection size {exact}"));
    }
    if gamma_max > gamma_bound {
        violations.push(format!("gamma {gamma_max} exceeds {gamma_bound}"));
    }
    Ok(LogAudit {
        iterations: m,
        dprime_len: len,
        dprime_minus: dp.minus(),
        gamma_total,
        b_sum,
        gamma_max,
        gamma_bound,
        exact_intersecting: exact,
        violations,
    })
}

fn inconsistent(i: usize, what: impl std::fmt::Display) -> Error {
    Error::InconsistentLog(format!("iteration {}: {what}", i + 1))
}

/// Recovers the random input `r_1 .. r_M` of the run that produced `log`.
pub fn decode_log(arb: &PlaneArborescence, lists: &ListAssignment, ell: usize, log: &MLog) -> Result<Vec<u64>> {
    log.check_shape()?;
    let n = arb.n();
    if log.s.len() != n || lists.n() != n {
        return Err(Error::InconsistentLog(format!("S covers {} vertices, expected {n}", log.s.len())));
    }
    let mut asg = Assignment::new(arb, lists, ell);
    for (v, r) in log.s.iter().enumerate() {
        if let Some(r) = r {
            asg.assign_rank(v, *r)?;
        }
    }
    let order = arb.dfs_left_to_right();
    let mut budget = Budget::new(u64::MAX);
    let m = log.iterations();
    let mut out = vec![0u64; m];
    for i in (0..m).rev() {
        let prev_h = if i == 0 { 0 } else { log.d[i - 1] as i64 };
        let k = log.d[i] as i64 - prev_h;
        let first_free = order.iter().copied().find(|&v| asg.sets[v].is_none());
        let Some(x) = first_free else {
            // a complete assignment only follows a first-iteration success
            if i != 0 || k != 0 {
                return Err(inconsistent(i, "complete assignment outside the first iteration"));
            }
            out[0] = asg.ranks[arb.root()].unwrap();
            asg.clear_up(arb.root());
            continue;
        };
        if arb.height(x) != log.d[i] {
            return Err(inconsistent(i, format!("first undefined vertex {x} is not at height {}", log.d[i])));
        }
        if k == 1 {
            if log.gamma[i].is_some() {
                return Err(inconsistent(i, "ascent with Gamma"));
            }
            let u = arb.parent(x).ok_or_else(|| inconsistent(i, "ascent onto the root"))?;
            out[i] = asg.ranks[u].ok_or_else(|| inconsistent(i, "sampled vertex undefined"))?;
            asg.clear_up(u);
            continue;
        }
        let gamma = log.gamma[i].as_ref().ok_or_else(|| inconsistent(i, "descent without Gamma"))?;
        let r = gamma.len();
        if k != 1 - r as i64 {
            return Err(inconsistent(i, format!("height change {k} with |Gamma| = {r}")));
        }
        let b = log.b[i];
        if b == 0 {
            return Err(inconsistent(i, "retraction with B = 0"));
        }
        let chain = arb.root_chain(x);
        let hx = chain.len() - 1;
        let rmp = chain.iter().take_while(|&&v| arb.on_rightmost(v)).count();
        let steps = if rmp == chain.len() { b } else { b - 1 };
        let w_h = rmp - 1;
        let v1_h = w_h
            .checked_sub(steps)
            .ok_or_else(|| inconsistent(i, "B walks past the root"))?;
        if hx - v1_h < r {
            return Err(inconsistent(i, "prefix shorter than the repeated block"));
        }
        // rebuild the erased block p_1 = x, ..., p_r = u
        let mut block = chain.clone();
        block.pop();
        let mut p = x;
        let mut ranks = Vec::with_capacity(r);
        for (j, &gj) in gamma.iter().enumerate() {
            let vj = chain[v1_h + j];
            let sv = asg.sets[vj].clone().ok_or_else(|| inconsistent(i, "block start undefined"))?;
            let sp = nth_intersecting(lists.list(p), &sv, ell, gj)?;
            let rank = rank_subset(lists.list(p), &sp)?;
            ranks.push(rank);
            if j + 1 == r {
                break;
            }
            asg.assign_rank(p, rank)?;
            block.push(p);
            let mut next = None;
            for &c in arb.children(p) {
                if !asg.extend_subtree(c, &mut block, &mut budget)? {
                    next = Some(c);
                    break;
                }
            }
            p = next.ok_or_else(|| inconsistent(i, "replayed sweep has no problematic child"))?;
        }
        out[i] = *ranks.last().unwrap();
    }
    if asg.sets.iter().any(Option::is_some) {
        return Err(Error::InconsistentLog("decoding left sublists behind".into()));
    }
    Ok(out)
}
