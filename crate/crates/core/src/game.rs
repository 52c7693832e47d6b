//! The classical side of the game.
//!
//! Alice and Bob receive `N`-bit questions that are equal or differ in exactly
//! `N/2` positions and must answer `n`-bit strings that are equal exactly when
//! the questions are. Shared randomness does not help reach certainty: a
//! mixture that always wins has every deterministic strategy in its support
//! always winning, so only deterministic answer tables are evaluated.

use std::fmt::Write as _;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::hamming::{check_width, GameSize, LevelIter, Word};

/// Largest question length with materialized answer tables.
pub const MAX_TABLE_WIDTH: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Win,
    Lose,
}

pub fn referee(x_a: Word, x_b: Word, y_a: u32, y_b: u32, size: GameSize) -> Result<Verdict> {
    let width = size.question_bits();
    if x_a.width() != width || x_b.width() != width {
        return Err(Error::usage(format!("questions must have {width} bits")));
    }
    let answers = 1u32 << size.answer_bits();
    if y_a >= answers || y_b >= answers {
        return Err(Error::usage(format!("answers must be below {answers}")));
    }
    let d = (x_a.bits() ^ x_b.bits()).count_ones();
    if d != 0 && d != width / 2 {
        return Err(Error::PromiseViolation {
            distance: d,
            half: width / 2,
        });
    }
    Ok(if (y_a == y_b) == (d == 0) {
        Verdict::Win
    } else {
        Verdict::Lose
    })
}

/// Differences `x_A XOR x_B` allowed by the promise: zero, then every word of
/// weight `N/2` in ascending order.
pub fn promise_classes(width: u32) -> Result<impl Iterator<Item = Word>> {
    check_width(width)?;
    Ok(std::iter::once(Word::from_raw(0, width)).chain(LevelIter::new(width, width / 2)))
}

/// Deterministic answer tables for both parties.
#[derive(Clone, PartialEq, Eq)]
pub struct Strategy {
    size: GameSize,
    alice: Vec<u8>,
    bob: Vec<u8>,
}

impl std::fmt::Debug for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Strategy(N={}, symmetric={})",
            self.size.question_bits(),
            self.is_symmetric()
        )
    }
}

impl Strategy {
    pub fn new(size: GameSize, alice: Vec<u8>, bob: Vec<u8>) -> Result<Self> {
        let width = size.question_bits();
        if width > MAX_TABLE_WIDTH {
            return Err(Error::usage(format!(
                "answer tables limited to N <= {MAX_TABLE_WIDTH}"
            )));
        }
        let len = 1usize << width;
        if alice.len() != len || bob.len() != len {
            return Err(Error::usage(format!(
                "answer tables must have {len} entries"
            )));
        }
        let answers = 1u32 << size.answer_bits();
        if let Some(bad) = alice.iter().chain(&bob).find(|&&y| y as u32 >= answers) {
            return Err(Error::usage(format!(
                "answer {bad} is not an {}-bit string",
                size.answer_bits()
            )));
        }
        Ok(Strategy { size, alice, bob })
    }

    /// Both parties use the same table.
    pub fn symmetric(size: GameSize, table: Vec<u8>) -> Result<Self> {
        Strategy::new(size, table.clone(), table)
    }

    pub fn constant(size: GameSize, answer: u8) -> Result<Self> {
        let len = 1usize << size.question_bits().min(MAX_TABLE_WIDTH);
        Strategy::symmetric(size, vec![answer; len])
    }

    pub fn size(&self) -> GameSize {
        self.size
    }

    pub fn alice(&self) -> &[u8] {
        &self.alice
    }

    pub fn bob(&self) -> &[u8] {
        &self.bob
    }

    pub fn is_symmetric(&self) -> bool {
        self.alice == self.bob
    }

    pub fn answer(&self, x_a: Word, x_b: Word) -> (u32, u32) {
        (
            self.alice[x_a.bits() as usize] as u32,
            self.bob[x_b.bits() as usize] as u32,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Exhaustive,
    Sample { samples: u64, seed: u64 },
}

/// Win counts, split by equal (`z = 0`) and distant questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WinReport {
    pub equal_wins: u64,
    pub equal_cases: u64,
    pub distant_wins: u64,
    pub distant_cases: u64,
    pub exhaustive: bool,
}

impl WinReport {
    pub fn wins(&self) -> u64 {
        self.equal_wins + self.distant_wins
    }

    pub fn cases(&self) -> u64 {
        self.equal_cases + self.distant_cases
    }

    /// Exact in exhaustive mode, an unbiased estimate otherwise.
    pub fn win_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.wins(), self.cases().max(1))
    }

    pub fn equal_rate(&self) -> Ratio<u64> {
        Ratio::new(self.equal_wins, self.equal_cases.max(1))
    }

    pub fn distant_rate(&self) -> Ratio<u64> {
        Ratio::new(self.distant_wins, self.distant_cases.max(1))
    }

    pub fn always_wins(&self) -> bool {
        self.wins() == self.cases()
    }

    fn merge(self, other: WinReport) -> WinReport {
        WinReport {
            equal_wins: self.equal_wins + other.equal_wins,
            equal_cases: self.equal_cases + other.equal_cases,
            distant_wins: self.distant_wins + other.distant_wins,
            distant_cases: self.distant_cases + other.distant_cases,
            exhaustive: self.exhaustive,
        }
    }
}

/// Plays every `(x_A, z)` with `z` a promise class, or `samples` uniform
/// draws of such pairs.
pub fn evaluate_strategy(s: &Strategy, mode: EvalMode) -> WinReport {
    let width = s.size.question_bits();
    let distant: Vec<u32> = LevelIter::new(width, width / 2).map(Word::bits).collect();
    let (fa, fb) = (&s.alice, &s.bob);
    match mode {
        EvalMode::Exhaustive => {
            let empty = WinReport {
                exhaustive: true,
                ..Default::default()
            };
            (0..1u32 << width)
                .into_par_iter()
                .fold(
                    || empty,
                    |mut r, x| {
                        let ya = fa[x as usize];
                        r.equal_cases += 1;
                        r.equal_wins += (ya == fb[x as usize]) as u64;
                        r.distant_cases += distant.len() as u64;
                        r.distant_wins += distant
                            .iter()
                            .filter(|&&z| fb[(x ^ z) as usize] != ya)
                            .count() as u64;
                        r
                    },
                )
                .reduce(|| empty, WinReport::merge)
        }
        EvalMode::Sample { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let classes = distant.len() as u64 + 1;
            let mut r = WinReport::default();
            for _ in 0..samples {
                let x = rng.gen_range(0..1u32 << width);
                let pick = rng.gen_range(0..classes);
                let ya = fa[x as usize];
                if pick == 0 {
                    r.equal_cases += 1;
                    r.equal_wins += (ya == fb[x as usize]) as u64;
                } else {
                    let z = distant[(pick - 1) as usize];
                    r.distant_cases += 1;
                    r.distant_wins += (ya != fb[(x ^ z) as usize]) as u64;
                }
            }
            r
        }
    }
}

/// Both parties answer the colour of their question.
pub fn strategy_from_coloring(c: &Coloring) -> Result<Strategy> {
    let size = GameSize::from_question_bits(c.width())?;
    if c.color_count() > c.width() as usize {
        return Err(Error::usage(format!(
            "{} colours do not fit in {}-bit answers",
            c.color_count(),
            size.answer_bits()
        )));
    }
    if let Some((a, b)) = c.violation() {
        return Err(Error::usage(format!(
            "colouring is not proper: {a} and {b} share a colour"
        )));
    }
    Strategy::symmetric(size, c.table().to_vec())
}

/// Reads a colouring off a winning strategy, naming a losing question pair
/// when there is none.
pub fn coloring_from_strategy(s: &Strategy) -> Result<Coloring> {
    let width = s.size.question_bits();
    let word = |x: u32| Word::from_raw(x, width).to_hex();
    if let Some(x) = (0..s.alice.len()).find(|&x| s.alice[x] != s.bob[x]) {
        return Err(Error::LosingPair {
            x_a: word(x as u32),
            x_b: word(x as u32),
        });
    }
    let c = Coloring::new(width, s.alice.clone())?;
    if let Some((a, b)) = c.violation() {
        return Err(Error::LosingPair {
            x_a: a.to_hex(),
            x_b: b.to_hex(),
        });
    }
    Ok(c)
}

/// Both parties answer a seeded uniformly random `n`-bit hash of the question.
pub fn hash_strategy(seed: u64, size: GameSize) -> Result<Strategy> {
    let width = size.question_bits();
    if width > MAX_TABLE_WIDTH {
        return Err(Error::usage(format!(
            "answer tables limited to N <= {MAX_TABLE_WIDTH}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let answers = 1u32 << size.answer_bits();
    let table = (0..1usize << width)
        .map(|_| rng.gen_range(0..answers) as u8)
        .collect();
    Strategy::symmetric(size, table)
}

pub fn format_report(r: &WinReport) -> String {
    let mut out = String::new();
    let f = r.win_fraction();
    let _ = writeln!(
        out,
        "mode={} cases={} wins={} fraction={}/{} ({:.6})",
        if r.exhaustive { "exhaustive" } else { "sample" },
        r.cases(),
        r.wins(),
        f.numer(),
        f.denom(),
        r.wins() as f64 / r.cases().max(1) as f64
    );
    let _ = writeln!(out, "equal questions: {}/{}", r.equal_wins, r.equal_cases);
    let _ = write!(
        out,
        "distant questions: {}/{}",
        r.distant_wins, r.distant_cases
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{find_coloring, ColoringBudget, ColoringOutcome};

    fn size(n: u32) -> GameSize {
        GameSize::new(n).unwrap()
    }

    #[test]
    fn referee_cases() {
        let s = size(4);
        let x = Word::new(0x1234, 16).unwrap();
        let far = Word::new(0x1234 ^ 0x00ff, 16).unwrap();
        let near = Word::new(0x1234 ^ 0x0007, 16).unwrap();
        assert_eq!(referee(x, x, 3, 3, s).unwrap(), Verdict::Win);
        assert_eq!(referee(x, x, 3, 4, s).unwrap(), Verdict::Lose);
        assert_eq!(referee(x, far, 3, 3, s).unwrap(), Verdict::Lose);
        assert_eq!(referee(x, far, 3, 5, s).unwrap(), Verdict::Win);
        assert!(matches!(
            referee(x, near, 3, 3, s),
            Err(Error::PromiseViolation {
                distance: 3,
                half: 8
            })
        ));
        assert!(referee(x, x, 16, 0, s).is_err());
    }

    #[test]
    fn promise_class_counts() {
        assert_eq!(promise_classes(16).unwrap().count(), 12871);
        assert_eq!(promise_classes(4).unwrap().count(), 7);
        assert_eq!(promise_classes(4).unwrap().next().unwrap().bits(), 0);
    }

    #[test]
    fn constant_strategy_wins_only_equal_questions() {
        let s = Strategy::constant(size(2), 0).unwrap();
        let r = evaluate_strategy(&s, EvalMode::Exhaustive);
        assert_eq!(r.cases(), 16 * 7);
        assert_eq!(r.win_fraction(), Ratio::new(1, 7));
        assert!(coloring_from_strategy(&s).is_err());
    }

    #[test]
    fn asymmetric_tables_lose_an_equal_pair() {
        let mut bob = vec![0u8; 16];
        bob[5] = 1;
        let s = Strategy::new(size(2), vec![0u8; 16], bob).unwrap();
        let r = evaluate_strategy(&s, EvalMode::Exhaustive);
        assert!(r.equal_wins < r.equal_cases);
        match coloring_from_strategy(&s) {
            Err(Error::LosingPair { x_a, x_b }) => {
                assert_eq!((x_a.as_str(), x_b.as_str()), ("5", "5"))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bridge_round_trip_at_n4() {
        let c = match find_coloring(4, 4, 0, ColoringBudget::default()).unwrap() {
            ColoringOutcome::Found(c) => c,
            other => panic!("no colouring: {other:?}"),
        };
        let s = strategy_from_coloring(&c).unwrap();
        let r = evaluate_strategy(&s, EvalMode::Exhaustive);
        assert!(r.always_wins());
        let back = coloring_from_strategy(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn hash_strategy_is_seeded_and_symmetric() {
        let a = hash_strategy(9, size(3)).unwrap();
        assert_eq!(a, hash_strategy(9, size(3)).unwrap());
        assert_ne!(a, hash_strategy(10, size(3)).unwrap());
        let r = evaluate_strategy(&a, EvalMode::Exhaustive);
        assert_eq!(r.equal_rate(), Ratio::from_integer(1));
        assert!(!r.always_wins());
    }

    #[test]
    fn sampling_tracks_exhaustive_rate() {
        let s = hash_strategy(1, size(3)).unwrap();
        let exact = evaluate_strategy(&s, EvalMode::Exhaustive);
        let est = evaluate_strategy(
            &s,
            EvalMode::Sample {
                samples: 200_000,
                seed: 4,
            },
        );
        assert_eq!(est.cases(), 200_000);
        let diff =
            exact.wins() as f64 / exact.cases() as f64 - est.wins() as f64 / est.cases() as f64;
        assert!(diff.abs() < 0.01, "{diff}");
    }

    #[test]
    fn invalid_tables() {
        assert!(Strategy::symmetric(size(2), vec![0; 15]).is_err());
        assert!(Strategy::symmetric(size(2), vec![4; 16]).is_err());
        assert!(hash_strategy(0, size(5)).is_err());
    }
}
