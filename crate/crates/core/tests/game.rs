use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thue_core::game::{run_game, GameResult, GameState};
use thue_core::repetition::find_repetition;

#[test]
fn binary_alphabet_stays_below_four() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut g = GameState::uniform(10, 2).unwrap();
    for _ in 0..100_000 {
        g.step(&mut rng).unwrap();
        assert!(g.sequence().len() <= 3);
    }
    assert_eq!(g.longest(), 3);
}

#[test]
fn four_letters_reach_length_300() {
    let mut done = 0;
    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match run_game(vec![vec![1, 2, 3, 4]; 300], &mut rng, 1_000_000).unwrap() {
            GameResult::Completed { sequence, .. } => {
                assert!(find_repetition(&sequence).is_none());
                done += 1;
            }
            GameResult::Stalled { .. } => {}
        }
    }
    assert!(done >= 19);
}

proptest! {
    #[test]
    fn every_state_is_square_free_and_in_lists(
        seed in any::<u64>(),
        lists in proptest::collection::vec(proptest::collection::btree_set(1u32..6, 1..4), 1..25),
    ) {
        let lists: Vec<Vec<u32>> = lists.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = GameState::new(lists.clone()).unwrap();
        for _ in 0..500 {
            if g.is_complete() {
                break;
            }
            let before = g.sequence().len();
            let out = g.step(&mut rng).unwrap();
            prop_assert_eq!(g.sequence().len(), before + 1 - out.erased);
            prop_assert!(find_repetition(g.sequence()).is_none());
            for (i, c) in g.sequence().iter().enumerate() {
                prop_assert!(lists[i].contains(c));
            }
        }
    }
}
