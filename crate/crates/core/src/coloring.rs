//! Colourings of the whole graph `G_N` and DSATUR backtracking search.
//!
//! The graph is never materialized: the neighbours of `x` are `x XOR z` for
//! every weight-`N/2` word `z`.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hamming::{check_width, LevelIter, Word};

pub const MAX_COLORING_WIDTH: u32 = 16;

#[derive(Clone, PartialEq, Eq)]
pub struct Coloring {
    width: u32,
    table: Vec<u8>,
    color_count: usize,
}

impl std::fmt::Debug for Coloring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Coloring(N={}, colors={})", self.width, self.color_count)
    }
}

fn distant_masks(width: u32) -> Vec<u32> {
    LevelIter::new(width, width / 2).map(Word::bits).collect()
}

impl Coloring {
    pub fn new(width: u32, table: Vec<u8>) -> Result<Self> {
        check_width(width)?;
        if width > MAX_COLORING_WIDTH {
            return Err(Error::usage(format!(
                "colourings limited to N <= {MAX_COLORING_WIDTH}"
            )));
        }
        if table.len() != 1usize << width {
            return Err(Error::usage(format!(
                "colouring of G_{width} needs {} entries, got {}",
                1usize << width,
                table.len()
            )));
        }
        let color_count = table.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        Ok(Coloring {
            width,
            table,
            color_count,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// One more than the largest colour id.
    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn color(&self, w: Word) -> u8 {
        self.table[w.bits() as usize]
    }

    /// First monochromatic edge in ascending order, if any.
    pub fn violation(&self) -> Option<(Word, Word)> {
        let masks = distant_masks(self.width);
        (0..self.table.len() as u32).find_map(|x| {
            masks
                .iter()
                .map(|&z| x ^ z)
                .find(|&y| y > x && self.table[x as usize] == self.table[y as usize])
                .map(|y| (Word::from_raw(x, self.width), Word::from_raw(y, self.width)))
        })
    }

    pub fn is_proper(&self) -> bool {
        self.violation().is_none()
    }

    /// `COLORING v1 N=<int> colors=<int>` then `<hex> <color>` per vertex.
    pub fn to_file(&self) -> String {
        let mut out = format!("COLORING v1 N={} colors={}\n", self.width, self.color_count);
        for (x, c) in self.table.iter().enumerate() {
            let _ = writeln!(out, "{} {c}", Word::from_raw(x as u32, self.width));
        }
        out
    }

    pub fn from_file(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            location: format!("coloring line {line}"),
            message,
        };
        let mut lines = text.lines();
        let head = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
        let fields: Vec<&str> = head.split_whitespace().collect();
        let (width, colors) = match fields.as_slice() {
            ["COLORING", "v1", n, c] => {
                let n = n.strip_prefix("N=").and_then(|v| v.parse::<u32>().ok());
                let c = c
                    .strip_prefix("colors=")
                    .and_then(|v| v.parse::<usize>().ok());
                match (n, c) {
                    (Some(n), Some(c)) => (n, c),
                    _ => return Err(err(1, format!("bad header {head:?}"))),
                }
            }
            _ => return Err(err(1, format!("bad header {head:?}"))),
        };
        check_width(width).map_err(|e| err(1, e.to_string()))?;
        if width > MAX_COLORING_WIDTH {
            return Err(err(1, format!("N={width} too large")));
        }
        let mut table = vec![None; 1usize << width];
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(w), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(
                    i + 2,
                    format!("expected `<hex> <color>`, got {line:?}"),
                ));
            };
            let w = Word::from_hex(w, width).map_err(|e| err(i + 2, e.to_string()))?;
            let c: u8 = c
                .parse()
                .map_err(|_| err(i + 2, format!("bad colour {c:?}")))?;
            if table[w.bits() as usize].replace(c).is_some() {
                return Err(err(i + 2, format!("vertex {w} listed twice")));
            }
        }
        let table: Vec<u8> = table
            .into_iter()
            .enumerate()
            .map(|(x, c)| {
                c.ok_or_else(|| {
                    err(
                        0,
                        format!("vertex {} missing", Word::from_raw(x as u32, width)),
                    )
                })
            })
            .collect::<Result<_>>()?;
        let coloring = Coloring::new(width, table)?;
        if coloring.color_count != colors {
            return Err(err(
                1,
                format!(
                    "header says {colors} colours, table uses {}",
                    coloring.color_count
                ),
            ));
        }
        Ok(coloring)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringBudget {
    /// Colour assignments allowed over all restarts.
    pub assignments: u64,
    pub restarts: u32,
}

impl Default for ColoringBudget {
    fn default() -> Self {
        ColoringBudget {
            assignments: 1_000_000,
            restarts: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringOutcome {
    Found(Coloring),
    /// The complete search finished without a colouring: none exists.
    Infeasible,
    /// Budget spent; says nothing about existence.
    Inconclusive {
        assignments: u64,
    },
}

struct Dsatur<'a> {
    masks: &'a [u32],
    max_colors: usize,
    color: Vec<u8>,
    /// neighbour colour counts, `max_colors` per vertex
    seen: Vec<u16>,
    saturation: Vec<u8>,
    free_degree: Vec<u32>,
    rank: Vec<u32>,
    colored: usize,
}

const UNCOLORED: u8 = u8::MAX;

impl Dsatur<'_> {
    fn select(&self) -> Option<usize> {
        (0..self.color.len())
            .filter(|&v| self.color[v] == UNCOLORED)
            .max_by_key(|&v| {
                (
                    self.saturation[v],
                    self.free_degree[v],
                    std::cmp::Reverse(self.rank[v]),
                )
            })
    }

    fn assign(&mut self, v: usize, c: u8) {
        self.color[v] = c;
        self.colored += 1;
        for &z in self.masks {
            let y = v ^ z as usize;
            self.free_degree[y] -= 1;
            let slot = &mut self.seen[y * self.max_colors + c as usize];
            if *slot == 0 {
                self.saturation[y] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: u8) {
        self.color[v] = UNCOLORED;
        self.colored -= 1;
        for &z in self.masks {
            let y = v ^ z as usize;
            self.free_degree[y] += 1;
            let slot = &mut self.seen[y * self.max_colors + c as usize];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[y] -= 1;
            }
        }
    }

    fn available(&self, v: usize, c: usize) -> bool {
        self.seen[v * self.max_colors + c] == 0
    }
}

struct Frame {
    vertex: usize,
    next: usize,
    limit: usize,
    current: Option<u8>,
    used_before: usize,
}

enum Run {
    Found,
    Exhausted,
    OutOfBudget,
}

fn search(state: &mut Dsatur<'_>, budget: u64, spent: &mut u64) -> Run {
    let n = state.color.len();
    let mut stack: Vec<Frame> = Vec::new();
    let mut used = 0usize;
    loop {
        if state.colored == n {
            return Run::Found;
        }
        let v = state.select().expect("an uncoloured vertex remains");
        stack.push(Frame {
            vertex: v,
            next: 0,
            // a fresh colour is interchangeable with any other unused one
            limit: (used + 1).min(state.max_colors),
            current: None,
            used_before: used,
        });
        loop {
            let Some(frame) = stack.last_mut() else {
                return Run::Exhausted;
            };
            if let Some(c) = frame.current.take() {
                state.unassign(frame.vertex, c);
            }
            let v = frame.vertex;
            match (frame.next..frame.limit).find(|&c| state.available(v, c)) {
                Some(c) => {
                    if *spent >= budget {
                        return Run::OutOfBudget;
                    }
                    *spent += 1;
                    frame.next = c + 1;
                    frame.current = Some(c as u8);
                    used = frame.used_before.max(c + 1);
                    state.assign(v, c as u8);
                    break;
                }
                None => {
                    stack.pop();
                }
            }
        }
    }
}

/// DSATUR backtracking with seeded tie-breaking restarts. Ties after
/// saturation and uncoloured degree go to the lower rank; restart 0 ranks by
/// word value.
pub fn find_coloring(
    width: u32,
    max_colors: usize,
    seed: u64,
    budget: ColoringBudget,
) -> Result<ColoringOutcome> {
    check_width(width)?;
    if width > MAX_COLORING_WIDTH {
        return Err(Error::usage(format!(
            "colouring search supports N in {{2, 4, 8, 16}}, got {width}"
        )));
    }
    if max_colors == 0 || max_colors > u8::MAX as usize {
        return Err(Error::usage(format!(
            "max colours {max_colors} outside 1..=254"
        )));
    }
    let n = 1usize << width;
    let masks = distant_masks(width);
    let restarts = budget.restarts.max(1);
    let per_run = (budget.assignments / restarts as u64).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rank: Vec<u32> = (0..n as u32).collect();
    let mut total = 0u64;
    for run in 0..restarts {
        if run > 0 {
            rank.shuffle(&mut rng);
        }
        let mut state = Dsatur {
            masks: &masks,
            max_colors,
            color: vec![UNCOLORED; n],
            seen: vec![0; n * max_colors],
            saturation: vec![0; n],
            free_degree: vec![masks.len() as u32; n],
            rank: rank.clone(),
            colored: 0,
        };
        let mut spent = 0;
        let outcome = search(&mut state, per_run, &mut spent);
        total += spent;
        match outcome {
            Run::Found => {
                let c = Coloring::new(width, state.color)?;
                if let Some((a, b)) = c.violation() {
                    return Err(Error::Invariant(format!("search produced clash {a}-{b}")));
                }
                return Ok(ColoringOutcome::Found(c));
            }
            Run::Exhausted => return Ok(ColoringOutcome::Infeasible),
            Run::OutOfBudget => {}
        }
    }
    Ok(ColoringOutcome::Inconclusive { assignments: total })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn found(width: u32, colors: usize) -> Coloring {
        match find_coloring(width, colors, 0, ColoringBudget::default()).unwrap() {
            ColoringOutcome::Found(c) => c,
            other => panic!("N={width}: {other:?}"),
        }
    }

    /// Independent scan over every vertex pair.
    fn proper_by_pairs(c: &Coloring) -> bool {
        let n = 1u32 << c.width();
        (0..n).all(|x| {
            (x + 1..n).all(|y| {
                (x ^ y).count_ones() != c.width() / 2
                    || c.table()[x as usize] != c.table()[y as usize]
            })
        })
    }

    #[test]
    fn g2_is_a_four_cycle() {
        let c = found(2, 2);
        assert_eq!(c.color_count(), 2);
        assert!(proper_by_pairs(&c));
    }

    #[test]
    fn small_games_are_colourable() {
        for (w, k) in [(4, 4), (8, 8)] {
            let c = found(w, k);
            assert!(c.color_count() <= k);
            assert!(proper_by_pairs(&c));
        }
    }

    #[test]
    fn one_colour_is_infeasible() {
        assert_eq!(
            find_coloring(4, 1, 0, ColoringBudget::default()).unwrap(),
            ColoringOutcome::Infeasible
        );
    }

    #[test]
    fn sixteen_bit_search_gives_up() {
        let budget = ColoringBudget {
            assignments: 600,
            restarts: 2,
        };
        match find_coloring(16, 16, 0, budget).unwrap() {
            ColoringOutcome::Inconclusive { assignments } => assert!(assignments <= 600),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(find_coloring(32, 16, 0, ColoringBudget::default()).is_err());
        assert!(find_coloring(6, 4, 0, ColoringBudget::default()).is_err());
        assert!(find_coloring(4, 0, 0, ColoringBudget::default()).is_err());
    }

    #[test]
    fn file_round_trip_and_errors() {
        let c = found(4, 4);
        let text = c.to_file();
        assert!(text.starts_with(&format!("COLORING v1 N=4 colors={}\n", c.color_count())));
        assert_eq!(Coloring::from_file(&text).unwrap(), c);
        let truncated: String = text.lines().take(10).map(|l| format!("{l}\n")).collect();
        assert!(Coloring::from_file(&truncated).is_err());
        assert!(Coloring::from_file("COLORING v2 N=4 colors=4\n").is_err());
    }

    #[test]
    fn violation_reports_first_clash() {
        let c = Coloring::new(4, vec![0; 16]).unwrap();
        let (a, b) = c.violation().unwrap();
        assert_eq!((a.bits() ^ b.bits()).count_ones(), 2);
        assert!(!proper_by_pairs(&c));
    }
}
