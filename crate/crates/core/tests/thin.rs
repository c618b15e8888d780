use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thue_core::decomposition::{classify_ascending, is_phi_bad_ascending, tree_pathwidth_exact, PathPartition};
use thue_core::gen;
use thue_core::graph::{enumerate_paths, Tree};
use thue_core::greedy::{choose_partition, greedy_color, guards, lowest_partition, pipeline, PipelineOptions};
use thue_core::repetition::{exists_bad_coloring_shape, verify_nonrepetitive, ListAssignment, SublistAssignment};
use thue_core::solver::{thin_lists, to_arborescences, Schedule, ThinOptions};
use thue_core::{Color, Error};

fn random_lists(n: usize, size: usize, palette: u32, rng: &mut ChaCha8Rng) -> ListAssignment {
    let all: Vec<Color> = (1..=palette).collect();
    ListAssignment::new((0..n).map(|_| all.choose_multiple(rng, size).copied().collect()).collect()).unwrap()
}

/// No coloring from the sublists makes an ascending path bad, decided by
/// pairwise intersections along each oriented ascending path.
fn ascending_paths_good(tree: &Tree, pp: &PathPartition, sub: &SublistAssignment) -> bool {
    for p in enumerate_paths(tree) {
        let asc = classify_ascending(pp, &p);
        if !asc.ascending {
            continue;
        }
        let vs = asc.oriented.vertices();
        let base = pp.level(vs[0]);
        for r in 1..=vs.len() / 2 {
            if exists_bad_coloring_shape(sub, vs, r, |v| pp.level(v) == base).unwrap() {
                return false;
            }
        }
    }
    true
}

/// Same property by enumerating every coloring from the sublists.
fn ascending_paths_good_exhaustive(tree: &Tree, pp: &PathPartition, sub: &SublistAssignment) -> bool {
    let n = tree.n();
    let asc: Vec<_> = enumerate_paths(tree)
        .into_iter()
        .filter(|p| classify_ascending(pp, p).ascending)
        .collect();
    let sets: Vec<&[Color]> = (0..n).map(|v| sub.get(v).unwrap()).collect();
    let mut idx = vec![0usize; n];
    loop {
        let phi: Vec<Color> = (0..n).map(|v| sets[v][idx[v]]).collect();
        if asc.iter().any(|p| is_phi_bad_ascending(pp, p, &phi).unwrap().is_some()) {
            return false;
        }
        let mut i = 0;
        while i < n {
            idx[i] += 1;
            if idx[i] < sets[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == n {
            return true;
        }
    }
}

#[test]
fn rightmost_paths_start_with_the_root_path() {
    for n in 1..=8 {
        for tree in gen::all_free_trees(n) {
            let (_, pd) = tree_pathwidth_exact(&tree).unwrap();
            for u in 0..n {
                let pp = thue_core::decomposition::build_path_partition(&tree, &pd, u).unwrap();
                let rp = pp.root_path();
                let (a, a2) = to_arborescences(&tree, &pp).unwrap();
                assert!(a.arb.rightmost_path().vertices().starts_with(rp));
                let rev: Vec<_> = rp.iter().rev().copied().collect();
                assert!(a2.arb.rightmost_path().vertices().starts_with(&rev));
                // the dummy is the only thing past the root-path
                for s in [&a, &a2] {
                    let extra = s.arb.rightmost_path().len() - rp.len();
                    assert_eq!(extra, usize::from(s.dummy.is_some()));
                }
            }
        }
    }
}

#[test]
fn upward_paths_are_directed_in_both() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let tree = gen::random_pw2_tree(rng.gen_range(4..25), &mut rng);
        let (_, pd) = tree_pathwidth_exact(&tree).unwrap();
        let pp = lowest_partition(&tree, &pd, false).unwrap();
        let (a, a2) = to_arborescences(&tree, &pp).unwrap();
        for p in enumerate_paths(&tree) {
            let asc = classify_ascending(&pp, &p);
            if !asc.ascending || pp.level(asc.oriented.vertices()[0]) != 0 {
                continue;
            }
            let vs = asc.oriented.vertices();
            let in_a = a.arb.is_directed_path(vs);
            let in_a2 = a2.arb.is_directed_path(vs);
            assert!(in_a || in_a2, "risky path {vs:?} directed in neither");
            if vs.iter().all(|&v| pp.level(v) == 0) {
                continue;
            }
            if vs[1..].iter().all(|&v| pp.level(v) > 0) {
                assert!(in_a && in_a2, "upward path {vs:?}");
            }
        }
    }
}

#[test]
fn thinned_sublists_leave_ascending_paths_good() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let schedule = Schedule::from_anchors(&[64, 16, 5]).unwrap();
    let mut done = 0;
    for i in 0..40 {
        let tree = gen::random_pw2_tree(5 + i % 36, &mut rng);
        let n = tree.n();
        let (_, pd) = tree_pathwidth_exact(&tree).unwrap();
        let pp = choose_partition(&tree, &pd, schedule.height(), true).unwrap();
        let lists = random_lists(n, 64, 1024, &mut rng);
        let opts = ThinOptions {
            seed: i as u64,
            ..Default::default()
        };
        match thin_lists(&tree, &pp, &lists, &schedule, &opts) {
            Ok(rep) => {
                done += 1;
                for v in 0..n {
                    let s = rep.sub.get(v).unwrap();
                    assert_eq!(s.len(), 5);
                    assert!(s.iter().all(|c| lists.list(v).contains(c)));
                }
                assert!(ascending_paths_good(&tree, &pp, &rep.sub));
            }
            Err(Error::ThinningFailed { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(done >= 30, "only {done} of 40 thinned");
}

#[test]
fn small_thinning_checked_over_all_colorings() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let schedule = Schedule::from_anchors(&[24, 8, 2]).unwrap();
    let mut done = 0;
    for i in 0..30 {
        let n = rng.gen_range(2..=9);
        let tree = if i % 2 == 0 { Tree::path(n) } else { gen::caterpillar(n / 2, 1) };
        let n = tree.n();
        let (_, pd) = tree_pathwidth_exact(&tree).unwrap();
        let pp = lowest_partition(&tree, &pd, true).unwrap();
        let lists = random_lists(n, 24, 200, &mut rng);
        let opts = ThinOptions {
            seed: i,
            ..Default::default()
        };
        if let Ok(rep) = thin_lists(&tree, &pp, &lists, &schedule, &opts) {
            done += 1;
            assert!(ascending_paths_good_exhaustive(&tree, &pp, &rep.sub));
        }
    }
    assert!(done > 0);
}

#[test]
fn guards_match_levels_on_random_partitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..20 {
        let n = rng.gen_range(1..=200);
        let tree = gen::random_tree(n, &mut rng);
        let pd = thue_core::decomposition::heuristic_path_decomposition(&tree);
        let pp = lowest_partition(&tree, &pd, false).unwrap();
        for v in 0..n {
            let g = guards(&tree, &pp, v);
            assert_eq!(g.guards.len(), pp.level(v));
            assert!(g.guards.iter().all(|&w| pp.level(w) < pp.level(v)));
        }
    }
}

/// Paths with lists of size 4 out of six colors, thinned straight to
/// single colors; stars through a two-level schedule.
#[test]
fn pipeline_colors_paths_and_stars() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let path_schedule = Schedule::new(vec![1, 4]).unwrap();
    let mut colored = 0;
    for seed in 0..10 {
        let tree = Tree::path(12);
        let lists = random_lists(12, 4, 6, &mut rng);
        let opts = PipelineOptions {
            thin: ThinOptions {
                seed,
                ..Default::default()
            },
            best_root: true,
        };
        match pipeline(&tree, &lists, &path_schedule, &opts) {
            Ok(rep) => {
                colored += 1;
                assert!(verify_nonrepetitive(&tree, &rep.coloring).0);
                assert!(lists.respects(&rep.coloring));
            }
            Err(Error::ThinningFailed { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(colored > 0);
    let star = Tree::star(9);
    let lists = random_lists(10, 32, 400, &mut rng);
    let rep = pipeline(&star, &lists, &Schedule::from_anchors(&[32, 8, 3]).unwrap(), &PipelineOptions::default())
        .unwrap();
    assert!(verify_nonrepetitive(&star, &rep.coloring).0);
}

#[test]
fn greedy_is_deterministic_and_avoids_guards() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let tree = gen::random_pw2_tree(30, &mut rng);
    let (_, pd) = tree_pathwidth_exact(&tree).unwrap();
    let pp = lowest_partition(&tree, &pd, true).unwrap();
    let sub = SublistAssignment {
        sublists: (0..30).map(|v| Some((1..=pp.level(v) as Color + 1).collect())).collect(),
        ell: 0,
    };
    let a = greedy_color(&tree, &pp, &sub).unwrap();
    assert_eq!(a, greedy_color(&tree, &pp, &sub).unwrap());
    for v in 0..30 {
        assert!(guards(&tree, &pp, v).guards.iter().all(|&g| a[g] != a[v]));
    }
}
