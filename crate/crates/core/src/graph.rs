//! Bit-row adjacency and the induced subgraphs of `G_N` used by the bounds.
//!
//! `G_N` joins two `N`-bit words when they differ in exactly `N/2` positions.
//! Only level subgraphs (fixed weight) and their survivor subgraphs are
//! materialized; the full graph is reached through [`crate::hamming::distance`].

use crate::error::{Error, Result};
use crate::hamming::{check_width, enumerate_level, raw_distance, Word};

/// Fixed-capacity set of small integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    blocks: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            blocks: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet::new(len);
        for b in s.blocks.iter_mut() {
            *b = u64::MAX;
        }
        s.trim();
        s
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.blocks[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.blocks
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(i, b)| i * 64 + b.trailing_zeros() as usize)
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &b)| {
            let mut bits = b;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + t)
            })
        })
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Simple undirected graph on `0..n` with one adjacency bit-row per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct BitGraph {
    rows: Vec<BitSet>,
}

impl BitGraph {
    pub fn edgeless(n: usize) -> Self {
        BitGraph {
            rows: vec![BitSet::new(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = BitGraph::edgeless(n);
        for i in 0..n {
            g.rows[i] = BitSet::full(n);
            g.rows[i].remove(i);
        }
        g
    }

    /// Ignores self-loops and duplicate edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = BitGraph::edgeless(n);
        for (a, b) in edges {
            if a != b {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn from_predicate(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let mut g = BitGraph::edgeless(n);
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
        self.rows[b].insert(a);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    #[inline]
    pub fn row(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Induced subgraph on `keep` (ascending), re-indexed `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> BitGraph {
        let mut g = BitGraph::edgeless(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.adjacent(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && !self.adjacent(a, b)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }
}

impl std::fmt::Debug for BitGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitGraph(n={}, m={})", self.order(), self.edge_count())
    }
}

/// An induced subgraph of `G_N` on an explicit ascending vertex list.
///
/// `level` is set when every vertex has the same weight; `removed` records
/// the roots whose closed neighbourhoods were deleted to reach this graph.
#[derive(Clone, Debug)]
pub struct LevelGraph {
    width: u32,
    level: Option<u32>,
    removed: Vec<Word>,
    vertices: Vec<Word>,
    adjacency: BitGraph,
}

impl LevelGraph {
    /// Induced subgraph of `G_width` on `words`, sorted and deduplicated.
    pub fn on_words(width: u32, mut words: Vec<Word>) -> Result<Self> {
        check_width(width)?;
        if let Some(w) = words.iter().find(|w| w.width() != width) {
            return Err(Error::usage(format!(
                "word {w} has length {}, expected {width}",
                w.width()
            )));
        }
        words.sort_unstable();
        words.dedup();
        let half = width / 2;
        let raw: Vec<u32> = words.iter().map(|w| w.bits()).collect();
        let adjacency =
            BitGraph::from_predicate(raw.len(), |i, j| raw_distance(raw[i], raw[j]) == half);
        let level = match words.first() {
            Some(first) if words.iter().all(|w| w.weight() == first.weight()) => {
                Some(first.weight())
            }
            _ => None,
        };
        Ok(LevelGraph {
            width,
            level,
            removed: Vec::new(),
            vertices: words,
            adjacency,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn level(&self) -> Option<u32> {
        self.level
    }

    pub fn removed_roots(&self) -> &[Word] {
        &self.removed
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &BitGraph {
        &self.adjacency
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, w: Word) -> Option<usize> {
        self.vertices.binary_search(&w).ok()
    }

    pub fn degree(&self, w: Word) -> Option<usize> {
        self.index_of(w).map(|i| self.adjacency.degree(i))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.edge_count()
    }

    pub fn words_of(&self, indices: &[usize]) -> Vec<Word> {
        indices.iter().map(|&i| self.vertices[i]).collect()
    }

    fn induced(&self, keep: &[usize], removed: Vec<Word>) -> LevelGraph {
        LevelGraph {
            width: self.width,
            level: self.level,
            removed,
            vertices: keep.iter().map(|&i| self.vertices[i]).collect(),
            adjacency: self.adjacency.induced(keep),
        }
    }
}

/// The weight-`k` level of `G_N`.
pub fn build_level_graph(width: u32, k: u32) -> Result<LevelGraph> {
    let words = enumerate_level(width, k)?;
    let mut g = LevelGraph::on_words(width, words)?;
    g.level = Some(k);
    Ok(g)
}

/// Deletes `roots` and every vertex adjacent to a root.
pub fn survivor_subgraph(g: &LevelGraph, roots: &[Word]) -> Result<LevelGraph> {
    let mut dead = BitSet::new(g.order());
    for &r in roots {
        let i = g
            .index_of(r)
            .ok_or_else(|| Error::usage(format!("root {r} is not a vertex of the graph")))?;
        dead.insert(i);
        dead.union_with(g.adjacency.row(i));
    }
    let keep: Vec<usize> = (0..g.order()).filter(|&i| !dead.contains(i)).collect();
    let mut removed = g.removed.clone();
    removed.extend_from_slice(roots);
    Ok(g.induced(&keep, removed))
}

/// Whole `G_N` restricted to even (or odd) weight, for small `N` audits.
pub fn parity_component(width: u32, odd: bool) -> Result<LevelGraph> {
    check_parity_split(width)?;
    let words = (0..1u64 << width)
        .map(|b| Word::from_raw(b as u32, width))
        .filter(|w| (w.weight() % 2 == 1) == odd)
        .collect();
    LevelGraph::on_words(width, words)
}

/// Parity separation needs `N/2` even.
pub fn check_parity_split(width: u32) -> Result<()> {
    check_width(width)?;
    if width == 2 {
        return Err(Error::usage(
            "N=2 joins words at odd distance 1; parity components are undefined",
        ));
    }
    if width > 16 {
        return Err(Error::usage(format!(
            "parity component of G_{width} is too large to materialize"
        )));
    }
    Ok(())
}
