//! Tree generators: exhaustive, uniform random and structured families.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Tree;
use crate::Vertex;

/// All unlabeled trees on `n >= 1` vertices, one labeled representative
/// each, in a deterministic order.
pub fn all_free_trees(n: usize) -> Vec<Tree> {
    if n == 0 {
        return Vec::new();
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut level: Vec<usize> = (0..n).collect();
    loop {
        let t = from_level_sequence(&level);
        if seen.insert(canonical_form(&t)) {
            out.push(t);
        }
        // next rooted level sequence
        let Some(p) = (1..n).rev().find(|&i| level[i] > 1) else {
            break;
        };
        let q = (0..p).rev().find(|&i| level[i] == level[p] - 1).unwrap();
        for i in p..n {
            level[i] = level[i - (p - q)];
        }
    }
    out
}

fn from_level_sequence(level: &[usize]) -> Tree {
    let mut last_at = vec![0usize; level.len() + 1];
    let mut edges = Vec::new();
    for (i, &l) in level.iter().enumerate() {
        if i > 0 {
            edges.push((last_at[l - 1], i));
        }
        last_at[l] = i;
    }
    Tree::new(level.len(), edges).expect("level sequences encode trees")
}

/// Isomorphism-invariant string: the smaller AHU encoding over the centers.
pub fn canonical_form(tree: &Tree) -> String {
    centers(tree)
        .into_iter()
        .map(|c| ahu(tree, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn ahu(tree: &Tree, v: Vertex, parent: Vertex) -> String {
    let mut kids: Vec<String> = tree
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| ahu(tree, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn centers(tree: &Tree) -> Vec<Vertex> {
    let n = tree.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut layer: Vec<Vertex> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in tree.neighbors(v) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Uniformly random labeled tree via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    if n <= 2 {
        return Tree::path(n);
    }
    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut deg = vec![1usize; n];
    for &v in &seq {
        deg[v] += 1;
    }
    let mut leaves: BTreeSet<Vertex> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let leaf = leaves.pop_first().unwrap();
        edges.push((leaf, v));
        deg[v] -= 1;
        if deg[v] == 1 {
            leaves.insert(v);
        }
    }
    let a = leaves.pop_first().unwrap();
    let b = leaves.pop_first().unwrap();
    edges.push((a, b));
    Tree::new(n, edges).expect("Prüfer decoding yields a tree")
}

/// Random tree of pathwidth at most 2: a spine path with caterpillars hung
/// off it. Labels are shuffled.
pub fn random_pw2_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    if n <= 3 {
        return Tree::path(n);
    }
    let spine = rng.gen_range(1..=(n / 3).max(1));
    let mut edges: Vec<(Vertex, Vertex)> = (1..spine).map(|i| (i - 1, i)).collect();
    let mut next = spine;
    while next < n {
        // caterpillar body
        let body = rng.gen_range(1..=(n - next).min(6));
        let anchor = rng.gen_range(0..spine);
        let first = next;
        edges.push((anchor, first));
        for i in 1..body {
            edges.push((first + i - 1, first + i));
        }
        next += body;
        // legs
        let legs = rng.gen_range(0..=(n - next).min(2 * body));
        for _ in 0..legs {
            edges.push((first + rng.gen_range(0..body), next));
            next += 1;
        }
    }
    relabel(n, &edges, rng)
}

fn relabel<R: Rng + ?Sized>(n: usize, edges: &[(Vertex, Vertex)], rng: &mut R) -> Tree {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let edges = edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    Tree::new(n, edges).expect("relabeling keeps a tree")
}

/// Complete `k`-ary tree of the given height, root 0, BFS labels.
pub fn complete_kary(k: usize, height: usize) -> Tree {
    let mut edges = Vec::new();
    let mut n = 1;
    let mut frontier = vec![0];
    for _ in 0..height {
        let mut next = Vec::new();
        for &p in &frontier {
            for _ in 0..k {
                edges.push((p, n));
                next.push(n);
                n += 1;
            }
        }
        frontier = next;
    }
    Tree::new(n, edges).expect("complete trees are trees")
}

/// Spine `0..spine` where spine vertex `i` carries `legs` pendant leaves.
pub fn caterpillar(spine: usize, legs: usize) -> Tree {
    let mut edges: Vec<(Vertex, Vertex)> = (1..spine).map(|i| (i - 1, i)).collect();
    let mut n = spine;
    for i in 0..spine {
        for _ in 0..legs {
            edges.push((i, n));
            n += 1;
        }
    }
    Tree::new(n, edges).expect("caterpillars are trees")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{tree_pathwidth_exact, vertex_separation_bruteforce};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn free_tree_counts() {
        // OEIS A000055
        let expect = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
        for (i, &c) in expect.iter().enumerate() {
            assert_eq!(all_free_trees(i + 1).len(), c, "n = {}", i + 1);
        }
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let t = random_tree(9, &mut rng);
            let edges: Vec<_> = t.edges().to_vec();
            let u = relabel(9, &edges, &mut rng);
            assert_eq!(canonical_form(&t), canonical_form(&u));
        }
        assert_ne!(canonical_form(&Tree::path(4)), canonical_form(&Tree::star(3)));
    }

    #[test]
    fn pw2_generator_stays_in_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..16 {
            let t = random_pw2_tree(n, &mut rng);
            assert_eq!(t.n(), n);
            assert!(vertex_separation_bruteforce(&t).unwrap() <= 2);
        }
        for _ in 0..20 {
            let t = random_pw2_tree(60, &mut rng);
            assert!(tree_pathwidth_exact(&t).unwrap().0 <= 2);
        }
    }

    #[test]
    fn structured_families() {
        assert_eq!(complete_kary(3, 2).n(), 13);
        assert_eq!(caterpillar(4, 2).n(), 12);
        assert_eq!(tree_pathwidth_exact(&caterpillar(5, 3)).unwrap().0, 1);
    }
}
