//! Clique covers: a partition of the vertices into cliques bounds the
//! independence number by the number of parts.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BitGraph, BitSet, LevelGraph};
use crate::hamming::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCover {
    pub width: u32,
    pub level: Option<u32>,
    pub removed: Vec<Word>,
    pub cliques: Vec<Vec<Word>>,
}

impl CliqueCover {
    pub fn size(&self) -> usize {
        self.cliques.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.cliques.iter().map(Vec::len).sum()
    }

    /// Applies a word map (e.g. a position permutation) to every vertex and root.
    pub fn map_words(&self, f: impl Fn(Word) -> Word) -> CliqueCover {
        let mut cliques: Vec<Vec<Word>> = self
            .cliques
            .iter()
            .map(|c| {
                let mut c: Vec<Word> = c.iter().map(|&w| f(w)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        cliques.sort_unstable();
        CliqueCover {
            width: self.width,
            level: self.level,
            removed: self.removed.iter().map(|&w| f(w)).collect(),
            cliques,
        }
    }
}

/// Greedy cover driven by residual degree.
///
/// Each clique starts at the uncovered vertex of largest residual degree and
/// is extended by the common neighbour of largest residual degree until no
/// candidate remains. Ties go to the smaller `rank`.
fn greedy_cover_ranked(g: &BitGraph, rank: &[u32]) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut uncovered = BitSet::full(n);
    let mut residual: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let key = |v: usize, residual: &[usize]| (residual[v], std::cmp::Reverse(rank[v]));
    let mut cliques = Vec::new();

    while let Some(start) = uncovered.iter().max_by_key(|&v| key(v, &residual)) {
        let mut clique = vec![start];
        let mut cand = g.row(start).clone();
        cand.intersect_with(&uncovered);
        while let Some(next) = cand.iter().max_by_key(|&v| key(v, &residual)) {
            clique.push(next);
            cand.intersect_with(g.row(next));
        }
        for &v in &clique {
            uncovered.remove(v);
        }
        for &v in &clique {
            let mut touched = g.row(v).clone();
            touched.intersect_with(&uncovered);
            for x in touched.iter() {
                residual[x] -= 1;
            }
        }
        clique.sort_unstable();
        cliques.push(clique);
    }
    cliques
}

/// Best of `restarts` greedy runs on a bare graph. Run 0 breaks ties by
/// index; later runs use seeded random tie orders.
pub fn greedy_cover_indices(g: &BitGraph, seed: u64, restarts: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut rank: Vec<u32> = (0..n as u32).collect();
    let mut best = greedy_cover_ranked(g, &rank);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 1..restarts.max(1) {
        rank.shuffle(&mut rng);
        let cover = greedy_cover_ranked(g, &rank);
        if cover.len() < best.len() {
            best = cover;
        }
    }
    best
}

/// Iterated greedy re-insertion: reorders the cliques, then walks their
/// vertices in that order, placing each one into the first new clique it is
/// fully adjacent to. Members of an old clique can always share a new one, so
/// the count never grows. Orders cycle through largest-first, reversed, and a
/// seeded shuffle.
pub fn polish_cover(
    g: &BitGraph,
    mut cover: Vec<Vec<usize>>,
    rounds: usize,
    seed: u64,
) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for round in 0..rounds {
        match round % 3 {
            0 => cover.sort_by_key(|c| std::cmp::Reverse(c.len())),
            1 => cover.reverse(),
            _ => cover.shuffle(&mut rng),
        }
        // (members, vertices adjacent to every member)
        let mut rebuilt: Vec<(Vec<usize>, BitSet)> = Vec::with_capacity(cover.len());
        for &v in cover.iter().flatten() {
            match rebuilt.iter_mut().find(|(_, common)| common.contains(v)) {
                Some((members, common)) => {
                    members.push(v);
                    common.intersect_with(g.row(v));
                }
                None => rebuilt.push((vec![v], g.row(v).clone())),
            }
        }
        debug_assert!(rebuilt.len() <= cover.len());
        cover = rebuilt.into_iter().map(|(c, _)| c).collect();
    }
    for c in cover.iter_mut() {
        c.sort_unstable();
    }
    cover
}

/// Settings for cover construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverConfig {
    pub seed: u64,
    pub restarts: usize,
    /// Re-insertion rounds applied to the best greedy cover.
    pub polish_rounds: usize,
}

impl Default for CoverConfig {
    fn default() -> Self {
        CoverConfig {
            seed: 0,
            restarts: 8,
            polish_rounds: 300,
        }
    }
}

/// Greedy cover followed by [`polish_cover`].
pub fn build_cover(g: &LevelGraph, config: CoverConfig) -> CliqueCover {
    let greedy = greedy_cover_indices(g.adjacency(), config.seed, config.restarts);
    let cliques = polish_cover(g.adjacency(), greedy, config.polish_rounds, config.seed)
        .into_iter()
        .map(|c| g.words_of(&c))
        .collect();
    CliqueCover {
        width: g.width(),
        level: g.level(),
        removed: g.removed_roots().to_vec(),
        cliques,
    }
}

/// Deterministic for fixed `(seed, restarts)`.
pub fn greedy_clique_cover(g: &LevelGraph, seed: u64, restarts: usize) -> CliqueCover {
    let cliques = greedy_cover_indices(g.adjacency(), seed, restarts)
        .into_iter()
        .map(|c| g.words_of(&c))
        .collect();
    CliqueCover {
        width: g.width(),
        level: g.level(),
        removed: g.removed_roots().to_vec(),
        cliques,
    }
}

/// Why a cover fails to certify a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverDefect {
    UnknownVertex { clique: usize, word: Word },
    Duplicate { clique: usize, word: Word },
    Missing { word: Word },
    NotAdjacent { clique: usize, a: Word, b: Word },
}

impl std::fmt::Display for CoverDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoverDefect::UnknownVertex { clique, word } => {
                write!(f, "clique {clique}: {word} is not a vertex of the graph")
            }
            CoverDefect::Duplicate { clique, word } => {
                write!(f, "clique {clique}: {word} already covered")
            }
            CoverDefect::Missing { word } => write!(f, "vertex {word} is not covered"),
            CoverDefect::NotAdjacent { clique, a, b } => {
                write!(f, "clique {clique}: {a} and {b} are not adjacent")
            }
        }
    }
}

/// First defect found, or `None` when `c` partitions `V(g)` into cliques.
pub fn cover_defect(g: &LevelGraph, c: &CliqueCover) -> Option<CoverDefect> {
    let mut seen = BitSet::new(g.order());
    for (ci, clique) in c.cliques.iter().enumerate() {
        let mut idx = Vec::with_capacity(clique.len());
        for &w in clique {
            let Some(i) = g.index_of(w) else {
                return Some(CoverDefect::UnknownVertex {
                    clique: ci,
                    word: w,
                });
            };
            if seen.contains(i) {
                return Some(CoverDefect::Duplicate {
                    clique: ci,
                    word: w,
                });
            }
            seen.insert(i);
            idx.push(i);
        }
        for (x, &i) in idx.iter().enumerate() {
            for &j in &idx[x + 1..] {
                if !g.adjacency().adjacent(i, j) {
                    return Some(CoverDefect::NotAdjacent {
                        clique: ci,
                        a: g.vertices()[i],
                        b: g.vertices()[j],
                    });
                }
            }
        }
    }
    (0..g.order())
        .find(|&i| !seen.contains(i))
        .map(|i| CoverDefect::Missing {
            word: g.vertices()[i],
        })
}

pub fn verify_cover(g: &LevelGraph, c: &CliqueCover) -> bool {
    cover_defect(g, c).is_none()
}

/// Cover file header fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverHeader {
    pub width: u32,
    pub level: u32,
    pub u: Word,
    pub v: Word,
    pub w: Word,
    pub seed: u64,
}

/// `COVER v1 N=.. level=.. u=.. v=.. w=.. seed=..` then one clique per line.
pub fn write_cover_file(header: &CoverHeader, cover: &CliqueCover) -> String {
    let mut out = format!(
        "COVER v1 N={} level={} u={} v={} w={} seed={}\n",
        header.width, header.level, header.u, header.v, header.w, header.seed
    );
    for clique in &cover.cliques {
        let line: Vec<String> = clique.iter().map(|w| w.to_hex()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_cover_file(text: &str, location: &str) -> Result<(CoverHeader, CliqueCover)> {
    let parse_err = |line: usize, message: String| Error::Parse {
        location: format!("{location} line {line}"),
        message,
    };
    let mut lines = text.lines();
    let head = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty cover file".into()))?;
    let mut fields = head.split_whitespace();
    if fields.next() != Some("COVER") || fields.next() != Some("v1") {
        return Err(parse_err(1, format!("bad cover header {head:?}")));
    }
    let mut get = |key: &str| -> Result<String> {
        let tok = fields
            .next()
            .ok_or_else(|| parse_err(1, format!("missing {key}=")))?;
        tok.strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .map(str::to_owned)
            .ok_or_else(|| parse_err(1, format!("expected {key}=, found {tok:?}")))
    };
    let num = |s: String, key: &str| -> Result<u64> {
        s.parse()
            .map_err(|_| parse_err(1, format!("bad {key} value {s:?}")))
    };
    let width = num(get("N")?, "N")? as u32;
    let level = num(get("level")?, "level")? as u32;
    let (u, v, w) = (get("u")?, get("v")?, get("w")?);
    let seed = num(get("seed")?, "seed")?;
    let word =
        |s: &str, line: usize| Word::from_hex(s, width).map_err(|e| parse_err(line, e.to_string()));
    let header = CoverHeader {
        width,
        level,
        u: word(&u, 1)?,
        v: word(&v, 1)?,
        w: word(&w, 1)?,
        seed,
    };
    let mut cliques = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let clique = line
            .split_whitespace()
            .map(|tok| word(tok, i + 2))
            .collect::<Result<Vec<_>>>()?;
        cliques.push(clique);
    }
    let cover = CliqueCover {
        width,
        level: Some(level),
        removed: vec![header.u, header.v, header.w],
        cliques,
    };
    Ok((header, cover))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_level_graph, survivor_subgraph};

    fn level_graph(width: u32, k: u32) -> LevelGraph {
        build_level_graph(width, k).unwrap()
    }

    #[test]
    fn edgeless_graph_gets_singletons() {
        let g = level_graph(16, 2);
        let c = greedy_clique_cover(&g, 0, 4);
        assert_eq!(c.size(), 120);
        assert!(verify_cover(&g, &c));
    }

    #[test]
    fn complete_graph_gets_one_clique() {
        let cover = greedy_cover_indices(&BitGraph::complete(9), 3, 2);
        assert_eq!(cover, vec![(0..9).collect::<Vec<_>>()]);
    }

    #[test]
    fn deterministic_per_seed() {
        let g = level_graph(8, 4);
        let a = greedy_clique_cover(&g, 11, 5);
        let b = greedy_clique_cover(&g, 11, 5);
        assert_eq!(a, b);
        assert!(verify_cover(&g, &a));
    }

    #[test]
    fn restarts_never_hurt() {
        let g = level_graph(8, 4);
        let one = greedy_clique_cover(&g, 7, 1).size();
        let many = greedy_clique_cover(&g, 7, 20).size();
        assert!(many <= one);
    }

    #[test]
    fn polish_never_grows_and_stays_valid() {
        let g = level_graph(8, 4);
        for seed in 0..5 {
            let raw = greedy_cover_indices(g.adjacency(), seed, 1);
            let before = raw.len();
            let polished = polish_cover(g.adjacency(), raw, 30, seed);
            assert!(polished.len() <= before);
            let c = CliqueCover {
                width: 8,
                level: Some(4),
                removed: vec![],
                cliques: polished.iter().map(|c| g.words_of(c)).collect(),
            };
            assert!(verify_cover(&g, &c));
        }
        let built = build_cover(&g, CoverConfig::default());
        assert!(verify_cover(&g, &built));
        assert_eq!(built, build_cover(&g, CoverConfig::default()));
    }

    #[test]
    fn broken_covers_are_rejected() {
        let g = level_graph(8, 2);
        let mut c = greedy_clique_cover(&g, 0, 1);
        assert!(verify_cover(&g, &c));

        let mut missing = c.clone();
        let gone = missing.cliques[0].pop().unwrap();
        assert_eq!(
            cover_defect(&g, &missing),
            Some(CoverDefect::Missing { word: gone })
        );

        // merge two cliques whose members are not all adjacent
        let second = c.cliques.remove(1);
        c.cliques[0].extend(second);
        assert!(matches!(
            cover_defect(&g, &c),
            Some(CoverDefect::NotAdjacent { .. })
        ));

        let mut dup = greedy_clique_cover(&g, 0, 1);
        let w = dup.cliques[0][0];
        dup.cliques.push(vec![w]);
        assert!(matches!(
            cover_defect(&g, &dup),
            Some(CoverDefect::Duplicate { .. })
        ));

        let mut foreign = greedy_clique_cover(&g, 0, 1);
        foreign.cliques.push(vec![Word::new(0b111, 8).unwrap()]);
        assert!(matches!(
            cover_defect(&g, &foreign),
            Some(CoverDefect::UnknownVertex { .. })
        ));
    }

    #[test]
    fn cover_file_round_trip() {
        let g = level_graph(16, 6);
        let u = Word::new(0x003f, 16).unwrap();
        let v = Word::new(0x0fc0, 16).unwrap();
        let w = Word::new(0x71c0, 16).unwrap();
        let s = survivor_subgraph(&g, &[u, v, w]).unwrap();
        let cover = greedy_clique_cover(&s, 0, 1);
        let header = CoverHeader {
            width: 16,
            level: 6,
            u,
            v,
            w,
            seed: 0,
        };
        let text = write_cover_file(&header, &cover);
        assert!(text.starts_with("COVER v1 N=16 level=6 u=003f v=0fc0 w=71c0 seed=0\n"));
        let (h2, c2) = parse_cover_file(&text, "test").unwrap();
        assert_eq!(h2, header);
        assert_eq!(c2.cliques, cover.cliques);
        assert!(verify_cover(&s, &c2));
        assert_eq!(c2.vertex_count(), s.order());
    }

    #[test]
    fn malformed_cover_files() {
        assert!(parse_cover_file("", "x").is_err());
        assert!(parse_cover_file("COVER v2 N=16", "x").is_err());
        let bad = "COVER v1 N=16 level=6 u=003f v=0fc0 w=71c0 seed=0\n003f zz\n";
        match parse_cover_file(bad, "f.txt") {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "f.txt line 2"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
