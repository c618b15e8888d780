use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thue_core::decomposition::*;
use thue_core::gen::{all_free_trees, random_tree};
use thue_core::graph::{enumerate_paths, Tree};

/// Checks the partition invariants that do not depend on the construction.
fn check_partition(tree: &Tree, pp: &PathPartition) {
    let n = tree.n();
    let mut seen = vec![false; n];
    for class in pp.classes() {
        for &v in class {
            assert!(!seen[v]);
            seen[v] = true;
        }
    }
    assert!(seen.iter().all(|&s| s));
    let mut horizontal = 0;
    for &(a, b) in tree.edges() {
        if edge_kind(pp, a, b) == EdgeKind::Horizontal {
            horizontal += 1;
        }
    }
    assert_eq!(horizontal, n - pp.classes().len());
    let shape = pp.shape();
    for x in 0..pp.classes().len() {
        if x == pp.root_class() {
            continue;
        }
        let parent = shape.parent(x).unwrap();
        let linking: Vec<_> = tree
            .edges()
            .iter()
            .filter(|&&(a, b)| {
                let (ca, cb) = (pp.class_of(a), pp.class_of(b));
                (ca, cb) == (x, parent) || (ca, cb) == (parent, x)
            })
            .collect();
        assert_eq!(linking.len(), 1);
        let &(a, b) = linking[0];
        let inside = if pp.class_of(a) == x { a } else { b };
        assert_eq!(pp.center(tree, x), Some(inside));
    }
    // level = number of vertical edges on the way down to the root-path
    let root = pp.root_path()[0];
    for v in 0..n {
        let path = tree.path_between(v, root);
        let vertical = path
            .vertices()
            .windows(2)
            .filter(|w| edge_kind(pp, w[0], w[1]) == EdgeKind::Vertical)
            .count();
        assert_eq!(pp.level(v), vertical, "vertex {v}");
    }
    for v in 0..n {
        if pp.level(v) == 0 {
            assert!(pp.root_path().contains(&v));
        }
    }
}

#[test]
fn exact_matches_vertex_separation_up_to_12() {
    for n in 1..=12 {
        for t in all_free_trees(n) {
            let (k, pd) = tree_pathwidth_exact(&t).unwrap();
            assert_eq!(k, vertex_separation_bruteforce(&t).unwrap(), "{}", t.to_text());
            assert_eq!(validate_path_decomposition(&t, &pd), Ok(k));
        }
    }
}

#[test]
fn free_tree_counts_11_and_12() {
    assert_eq!(all_free_trees(11).len(), 235);
    assert_eq!(all_free_trees(12).len(), 551);
}

#[test]
fn partitions_of_all_small_trees() {
    for n in 1..=10 {
        for t in all_free_trees(n) {
            let (k, pd) = tree_pathwidth_exact(&t).unwrap();
            for u in 0..n {
                let pp = build_path_partition(&t, &pd, u).unwrap();
                assert!(pp.height() <= 2 * k, "height {} > 2*{k}", pp.height());
                assert!(pp.root_path().contains(&u));
                check_partition(&t, &pp);
            }
        }
    }
}

#[test]
fn partitions_of_random_trees_up_to_200() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for n in [50, 120, 200] {
        for _ in 0..5 {
            let t = random_tree(n, &mut rng);
            let pd = heuristic_path_decomposition(&t);
            let w = validate_path_decomposition(&t, &pd).unwrap();
            let pp = build_path_partition(&t, &pd, n / 2).unwrap();
            assert!(pp.height() <= 2 * w);
            check_partition(&t, &pp);
        }
    }
}

#[test]
fn classes_are_ascending_and_horizontal() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let t = random_tree(15, &mut rng);
        let (_, pd) = tree_pathwidth_exact(&t).unwrap();
        let pp = build_path_partition(&t, &pd, 0).unwrap();
        for class in pp.classes() {
            let asc = classify_ascending(&pp, &thue_core::graph::TreePath(class.clone()));
            assert!(asc.ascending);
            if class.len() >= 2 {
                assert_eq!(asc.direction, Some(Direction::Right));
                assert_eq!(asc.source, Some(class[0]));
            }
        }
        // base of every path lies in one class and is contiguous
        for p in enumerate_paths(&t) {
            let asc = classify_ascending(&pp, &p);
            let base = asc.base.vertices();
            let c = pp.class_of(base[0]);
            assert!(base.iter().all(|&v| pp.class_of(v) == c));
            let start = p.vertices().iter().position(|&v| v == base[0]).unwrap();
            assert_eq!(&p.vertices()[start..start + base.len()], base);
        }
    }
}

fn arb_tree(max_n: usize) -> impl Strategy<Value = Tree> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_decomposition_is_valid(t in arb_tree(40)) {
        let (k, pd) = tree_pathwidth_exact(&t).unwrap();
        prop_assert_eq!(validate_path_decomposition(&t, &pd), Ok(k));
        let h = heuristic_path_decomposition(&t);
        prop_assert!(validate_path_decomposition(&t, &h).unwrap() >= k);
    }

    #[test]
    fn partition_height_bound(t in arb_tree(40), u in any::<usize>()) {
        let (k, pd) = tree_pathwidth_exact(&t).unwrap();
        let u = u % t.n();
        let pp = build_path_partition(&t, &pd, u).unwrap();
        prop_assert!(pp.height() <= 2 * k);
        prop_assert!(pp.root_path().contains(&u));
        check_partition(&t, &pp);
    }
}

/// Minimum class-tree eccentricity over every way of cutting the tree into
/// paths; independent of the memoized search.
fn brute_min_height(tree: &Tree) -> usize {
    let n = tree.n();
    let edges = tree.edges().to_vec();
    let mut best = usize::MAX;
    for mask in 0u32..(1 << edges.len()) {
        let kept: Vec<_> = edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
        let mut deg = vec![0; n];
        for &(a, b) in &kept {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d > 2) {
            continue;
        }
        // components of kept edges are paths (a forest of max degree 2)
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut Vec<usize>, x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for &(a, b) in &kept {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra] = rb;
        }
        let roots: Vec<usize> = (0..n).map(|v| find(&mut comp, v)).collect();
        let mut ids: Vec<usize> = roots.clone();
        ids.sort_unstable();
        ids.dedup();
        let k = ids.len();
        let id = |r: usize| ids.binary_search(&r).unwrap();
        let mut adj = vec![Vec::new(); k];
        for (i, &(a, b)) in edges.iter().enumerate() {
            if mask >> i & 1 == 0 {
                adj[id(roots[a])].push(id(roots[b]));
                adj[id(roots[b])].push(id(roots[a]));
            }
        }
        for s in 0..k {
            let mut dist = vec![usize::MAX; k];
            dist[s] = 0;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        q.push_back(y);
                    }
                }
            }
            best = best.min(*dist.iter().max().unwrap());
        }
    }
    best
}

#[test]
fn min_height_matches_brute_force() {
    for n in 1..=10 {
        for tree in all_free_trees(n) {
            let pp = min_height_partition(&tree).unwrap();
            check_partition(&tree, &pp);
            assert_eq!(pp.height(), brute_min_height(&tree), "{}", tree.to_text());
            let (_, pd) = tree_pathwidth_exact(&tree).unwrap();
            for u in 0..n {
                assert!(build_path_partition(&tree, &pd, u).unwrap().height() >= pp.height());
            }
        }
    }
}
