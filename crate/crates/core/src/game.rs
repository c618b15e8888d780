//! Append a random symbol, erase the repeated block when a square appears.
//!
//! Position `i` draws from its own list `L_i`. The sequence is square-free
//! before each append, so any new square ends at the last symbol; the
//! shortest such square is removed by dropping its second half.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::{Color, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameState {
    lists: Vec<Vec<Color>>,
    seq: Vec<Color>,
    steps: u64,
    longest: usize,
    erased: u64,
}

/// What one step did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StepOutcome {
    pub symbol: Color,
    /// Length of the erased block, 0 if none.
    pub erased: usize,
}

/// Length `r` of the shortest square that is a suffix of `seq`.
pub fn square_suffix(seq: &[Color]) -> Option<usize> {
    let m = seq.len();
    (1..=m / 2).find(|&r| seq[m - 2 * r..m - r] == seq[m - r..])
}

impl GameState {
    pub fn new(lists: Vec<Vec<Color>>) -> Result<Self> {
        if lists.is_empty() || lists.iter().any(Vec::is_empty) {
            return Err(Error::Invalid("the game needs nonempty lists".into()));
        }
        Ok(GameState {
            lists,
            seq: Vec::new(),
            steps: 0,
            longest: 0,
            erased: 0,
        })
    }

    /// Every position draws from `1..=size`.
    pub fn uniform(n: usize, size: usize) -> Result<Self> {
        GameState::new(vec![(1..=size as Color).collect(); n])
    }

    pub fn target(&self) -> usize {
        self.lists.len()
    }

    pub fn sequence(&self) -> &[Color] {
        &self.seq
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    pub fn total_erased(&self) -> u64 {
        self.erased
    }

    pub fn is_complete(&self) -> bool {
        self.seq.len() == self.lists.len()
    }

    /// Appends `symbol`, which must come from the next list.
    pub fn push(&mut self, symbol: Color) -> Result<StepOutcome> {
        let m = self.seq.len();
        if m == self.lists.len() {
            return Err(Error::Invalid("the sequence is already complete".into()));
        }
        if !self.lists[m].contains(&symbol) {
            return Err(Error::Invalid(format!("symbol {symbol} is not in list {}", m + 1)));
        }
        self.steps += 1;
        self.seq.push(symbol);
        let erased = square_suffix(&self.seq).unwrap_or(0);
        self.seq.truncate(self.seq.len() - erased);
        self.erased += erased as u64;
        self.longest = self.longest.max(self.seq.len());
        Ok(StepOutcome { symbol, erased })
    }

    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<StepOutcome> {
        let m = self.seq.len();
        let list = self
            .lists
            .get(m)
            .ok_or_else(|| Error::Invalid("the sequence is already complete".into()))?;
        let symbol = *list.choose(rng).expect("lists are nonempty");
        self.push(symbol)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum GameResult {
    Completed { sequence: Vec<Color>, steps: u64, erased: u64 },
    Stalled { sequence: Vec<Color>, steps: u64, longest: usize },
}

/// Steps until the sequence reaches the target length or `budget` steps
/// have been spent.
pub fn run_game<R: Rng + ?Sized>(lists: Vec<Vec<Color>>, rng: &mut R, budget: u64) -> Result<GameResult> {
    let mut state = GameState::new(lists)?;
    while !state.is_complete() && state.steps < budget {
        state.step(rng)?;
    }
    Ok(if state.is_complete() {
        GameResult::Completed {
            sequence: state.seq,
            steps: state.steps,
            erased: state.erased,
        }
    } else {
        GameResult::Stalled {
            sequence: state.seq,
            steps: state.steps,
            longest: state.longest,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        // a b c b, then c: "bcbc" goes, "abc" stays
        let mut g = GameState::uniform(6, 3).unwrap();
        for c in [1, 2, 3, 2] {
            assert_eq!(g.push(c).unwrap().erased, 0);
        }
        assert_eq!(g.push(3).unwrap().erased, 2);
        assert_eq!(g.sequence(), &[1, 2, 3]);
    }

    #[test]
    fn single_symbol_never_doubles() {
        let mut rng = rand::rngs::mock::StepRng::new(0, 1);
        let out = run_game(vec![vec![7], vec![7]], &mut rng, 100).unwrap();
        assert_eq!(
            out,
            GameResult::Stalled {
                sequence: vec![7],
                steps: 100,
                longest: 1
            }
        );
    }

    #[test]
    fn empty_then_one() {
        let mut g = GameState::uniform(3, 2).unwrap();
        g.push(2).unwrap();
        assert_eq!(g.sequence(), &[2]);
        assert!(g.push(5).is_err());
    }
}
