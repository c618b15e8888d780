//! Fixed-size subsets of an ordered universe, ranked lexicographically.
//!
//! A subset is identified with the increasing vector of positions it
//! occupies in the universe; ranks are 1-based and follow lexicographic order
//! of those position vectors, so rank 1 is the `ell` smallest elements.

use crate::{Color, Error, Result};

/// `C(n, k)` as `u64`, or `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

pub(crate) fn binomial_checked(n: usize, k: usize) -> Result<u64> {
    binomial(n, k).ok_or(Error::SizeLimit {
        what: "binomial coefficient",
        actual: u128::MAX,
        limit: u64::MAX as u128,
    })
}

/// Positions (0-based) of `subset` inside the sorted `universe`.
fn positions(universe: &[Color], subset: &[Color]) -> Option<Vec<usize>> {
    let mut pos: Vec<usize> = subset
        .iter()
        .map(|c| universe.binary_search(c).ok())
        .collect::<Option<_>>()?;
    pos.sort_unstable();
    if pos.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(pos)
}

/// Rank of `subset` among the `|subset|`-subsets of `universe`.
///
/// `universe` must be sorted increasingly without duplicates.
pub fn rank_subset(universe: &[Color], subset: &[Color]) -> Result<u64> {
    let ell = subset.len();
    let pos = positions(universe, subset).ok_or(Error::SubsetNotInUniverse { ell })?;
    rank_positions(universe.len(), &pos)
}

pub(crate) fn rank_positions(n: usize, pos: &[usize]) -> Result<u64> {
    let ell = pos.len();
    let mut rank = 0u64;
    let mut start = 0;
    for (i, &p) in pos.iter().enumerate() {
        for c in start..p {
            rank += binomial_checked(n - c - 1, ell - i - 1)?;
        }
        start = p + 1;
    }
    Ok(rank + 1)
}

/// The `index`-th `ell`-subset of `universe` (1-based), sorted.
pub fn unrank_subset(universe: &[Color], index: u64, ell: usize) -> Result<Vec<Color>> {
    Ok(unrank_positions(universe.len(), index, ell)?
        .into_iter()
        .map(|p| universe[p])
        .collect())
}

pub(crate) fn unrank_positions(n: usize, index: u64, ell: usize) -> Result<Vec<usize>> {
    let total = binomial_checked(n, ell)?;
    if index == 0 || index > total || ell > n {
        return Err(Error::RankOutOfRange {
            rank: index,
            max: total,
        });
    }
    let mut rest = index - 1;
    let mut out = Vec::with_capacity(ell);
    let mut c = 0;
    for i in 0..ell {
        loop {
            let count = binomial_checked(n - c - 1, ell - i - 1)?;
            if rest < count {
                out.push(c);
                c += 1;
                break;
            }
            rest -= count;
            c += 1;
        }
    }
    Ok(out)
}

/// Number of `ell`-subsets of `universe`.
pub fn subset_count(universe_len: usize, ell: usize) -> Result<u64> {
    binomial_checked(universe_len, ell)
}

fn forbidden_mask(universe: &[Color], other: &[Color]) -> Vec<bool> {
    universe.iter().map(|c| other.binary_search(c).is_ok()).collect()
}

/// Number of `ell`-subsets of `universe` that avoid `other` and come strictly
/// before the subset at `pos` in lexicographic order.
fn disjoint_before(forbidden: &[bool], pos: &[usize]) -> Result<u64> {
    let n = forbidden.len();
    let ell = pos.len();
    // free_after[c] = number of non-forbidden positions > c
    let mut free_after = vec![0usize; n + 1];
    for c in (0..n).rev() {
        free_after[c] = free_after[c + 1] + usize::from(!forbidden[c]);
    }
    let mut count = 0u64;
    let mut start = 0;
    for (i, &p) in pos.iter().enumerate() {
        for c in start..p {
            if !forbidden[c] {
                count += binomial_checked(free_after[c + 1], ell - i - 1)?;
            }
        }
        if forbidden[p] {
            break;
        }
        start = p + 1;
    }
    Ok(count)
}

/// 1-based index of `subset` among the `ell`-subsets of `universe` meeting
/// `other`, ordered by rank. `None` if `subset` is disjoint from `other`.
pub fn intersecting_index(
    universe: &[Color],
    subset: &[Color],
    other: &[Color],
) -> Result<Option<u64>> {
    let ell = subset.len();
    let pos = positions(universe, subset).ok_or(Error::SubsetNotInUniverse { ell })?;
    let forbidden = forbidden_mask(universe, other);
    if !pos.iter().any(|&p| forbidden[p]) {
        return Ok(None);
    }
    let rank = rank_positions(universe.len(), &pos)?;
    Ok(Some(rank - disjoint_before(&forbidden, &pos)?))
}

/// Number of `ell`-subsets of `universe` meeting `other`.
pub fn intersecting_count(universe: &[Color], other: &[Color], ell: usize) -> Result<u64> {
    let free = universe
        .iter()
        .filter(|c| other.binary_search(c).is_err())
        .count();
    Ok(binomial_checked(universe.len(), ell)? - binomial_checked(free, ell)?)
}

/// The `index`-th (1-based, rank order) `ell`-subset of `universe` meeting
/// `other`.
pub fn nth_intersecting(
    universe: &[Color],
    other: &[Color],
    ell: usize,
    index: u64,
) -> Result<Vec<Color>> {
    let n = universe.len();
    let total = intersecting_count(universe, other, ell)?;
    if index == 0 || index > total {
        return Err(Error::RankOutOfRange { rank: index, max: total });
    }
    let forbidden = forbidden_mask(universe, other);
    let mut free_after = vec![0usize; n + 1];
    for c in (0..n).rev() {
        free_after[c] = free_after[c + 1] + usize::from(!forbidden[c]);
    }
    let mut rest = index - 1;
    let mut out = Vec::with_capacity(ell);
    let mut hit = false;
    let mut c = 0;
    for i in 0..ell {
        loop {
            if c >= n {
                return Err(Error::Invariant("intersecting unrank overran".into()));
            }
            let remaining = ell - i - 1;
            let all = binomial_checked(n - c - 1, remaining)?;
            let count = if hit || forbidden[c] {
                all
            } else {
                all - binomial_checked(free_after[c + 1], remaining)?
            };
            if rest < count {
                hit |= forbidden[c];
                out.push(universe[c]);
                c += 1;
                break;
            }
            rest -= count;
            c += 1;
        }
    }
    Ok(out)
}

/// True if two sorted color sets share an element.
pub fn intersects(a: &[Color], b: &[Color]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Iterates the `ell`-subsets of `pool` (a list of positions) in
/// lexicographic order, calling `f` on each until it returns `true`.
pub(crate) fn for_each_combination(
    pool: &[usize],
    ell: usize,
    mut f: impl FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    let m = pool.len();
    if ell > m {
        return Ok(false);
    }
    let mut idx: Vec<usize> = (0..ell).collect();
    let mut buf: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        if f(&buf)? {
            return Ok(true);
        }
        // advance
        let mut i = ell;
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            if idx[i] < m - ell + i {
                break;
            }
            if i == 0 {
                return Ok(false);
            }
        }
        idx[i] += 1;
        for j in i + 1..ell {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..ell {
            buf[j] = pool[idx[j]];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_subsets(universe: &[Color], ell: usize) -> Vec<Vec<Color>> {
        let pool: Vec<usize> = (0..universe.len()).collect();
        let mut out = Vec::new();
        for_each_combination(&pool, ell, |c| {
            out.push(c.iter().map(|&p| universe[p]).collect());
            Ok(false)
        })
        .unwrap();
        out
    }

    #[test]
    fn two_subsets_of_four() {
        let u = [1, 2, 3, 4];
        let expect = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]];
        for (i, s) in expect.iter().enumerate() {
            assert_eq!(rank_subset(&u, s).unwrap(), i as u64 + 1);
            assert_eq!(unrank_subset(&u, i as u64 + 1, 2).unwrap(), s.to_vec());
        }
        assert!(unrank_subset(&u, 7, 2).is_err());
        assert!(unrank_subset(&u, 0, 2).is_err());
        assert!(rank_subset(&u, &[1, 9]).is_err());
    }

    #[test]
    fn round_trip_exhaustive() {
        for n in 1..=8 {
            let u: Vec<Color> = (0..n as Color).map(|c| 3 * c + 5).collect();
            for ell in 1..=n.min(4) {
                let all = all_subsets(&u, ell);
                assert_eq!(all.len() as u64, binomial(n, ell).unwrap());
                for (i, s) in all.iter().enumerate() {
                    let idx = i as u64 + 1;
                    assert_eq!(unrank_subset(&u, idx, ell).unwrap(), *s);
                    assert_eq!(rank_subset(&u, s).unwrap(), idx);
                }
                assert_eq!(unrank_subset(&u, 1, ell).unwrap(), u[..ell].to_vec());
            }
        }
    }

    #[test]
    fn intersecting_index_matches_filtered_enumeration() {
        let u: Vec<Color> = (1..=7).collect();
        for ell in 1..=3 {
            for other in all_subsets(&[2, 3, 5, 6, 9], ell) {
                let hits: Vec<_> = all_subsets(&u, ell)
                    .into_iter()
                    .filter(|s| intersects(s, &other))
                    .collect();
                assert_eq!(
                    intersecting_count(&u, &other, ell).unwrap(),
                    hits.len() as u64
                );
                for (i, s) in hits.iter().enumerate() {
                    let g = i as u64 + 1;
                    assert_eq!(intersecting_index(&u, s, &other).unwrap(), Some(g));
                    assert_eq!(nth_intersecting(&u, &other, ell, g).unwrap(), *s);
                }
            }
        }
        assert_eq!(intersecting_index(&u, &[1, 4], &[2, 3]).unwrap(), None);
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(0, 0), Some(1));
        assert_eq!(binomial(5, 6), Some(0));
        assert_eq!(binomial(64, 32), Some(1_832_624_140_942_590_534));
        assert_eq!(binomial(200, 100), None);
    }
}
