//! Exact check of the ×4 reduction on small `G_N`.
//!
//! `G_N` splits by weight parity (distance `N/2` is even), and `x -> x ^ 1`
//! maps one component onto the other. Complementation maps level `k` onto
//! level `N - k` inside a component, leaving the middle level `N/2` fixed.
//! The ×4 reduction is exact only if that middle level adds nothing.

use std::fmt::Write as _;

use crate::bounds::{build_cover, exact_alpha, verify_cover, AlphaBudget, CoverConfig};
use crate::error::{Error, Result};
use crate::graph::{build_level_graph, parity_component, BitGraph, LevelGraph};
use crate::hamming::{distance, enumerate_level, raw_distance, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub width: u32,
    pub alpha_full: usize,
    pub alpha_even: usize,
    pub alpha_odd: usize,
    /// Even component restricted to weight `< N/2`.
    pub alpha_low: usize,
    /// The middle level `N/2` on its own.
    pub alpha_middle: usize,
    /// Edges joining an even and an odd word (always 0).
    pub cross_edges: usize,
    /// `x -> x ^ 1` is an isomorphism between the components.
    pub components_isomorphic: bool,
}

impl ReductionReport {
    /// `α(G_N) = 2·α(even)`.
    pub fn full_is_twice_even(&self) -> bool {
        self.alpha_full == 2 * self.alpha_even
    }

    /// `2·α(even) = 4·α(even, weight < N/2)`.
    pub fn even_is_twice_low(&self) -> bool {
        self.alpha_even == 2 * self.alpha_low
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let n = self.width;
        let _ = writeln!(out, "N={n}");
        let _ = writeln!(out, "alpha(G_{n}) = {}", self.alpha_full);
        let _ = writeln!(
            out,
            "alpha(even) = {}  alpha(odd) = {}",
            self.alpha_even, self.alpha_odd
        );
        let _ = writeln!(out, "alpha(even, weight<{}) = {}", n / 2, self.alpha_low);
        let _ = writeln!(out, "alpha(level {}) = {}", n / 2, self.alpha_middle);
        let _ = writeln!(
            out,
            "cross edges = {}  components isomorphic = {}",
            self.cross_edges, self.components_isomorphic
        );
        let holds = |b: bool| if b { "holds" } else { "fails" };
        let _ = writeln!(
            out,
            "alpha(G) = 2 alpha(even): {} = {} {}",
            self.alpha_full,
            2 * self.alpha_even,
            holds(self.full_is_twice_even())
        );
        let _ = writeln!(
            out,
            "2 alpha(even) = 4 alpha(weight<{}): {} = {} {}",
            n / 2,
            2 * self.alpha_even,
            4 * self.alpha_low,
            holds(self.even_is_twice_low())
        );
        out
    }
}

fn alpha(g: &BitGraph) -> Result<usize> {
    Ok(exact_alpha(g, AlphaBudget::default())?.size)
}

fn whole_graph(width: u32) -> BitGraph {
    let half = width / 2;
    BitGraph::from_predicate(1 << width, |a, b| raw_distance(a as u32, b as u32) == half)
}

/// Exact independence numbers behind the reduction, for `N ∈ {4, 8}`.
pub fn validate_reduction(width: u32) -> Result<ReductionReport> {
    if width != 4 && width != 8 {
        return Err(Error::usage(format!(
            "validate_reduction runs exact search and supports N=4 or N=8, got N={width}"
        )));
    }
    let half = width / 2;
    let full = whole_graph(width);
    let even = parity_component(width, false)?;
    let odd = parity_component(width, true)?;

    let cross_edges = (0..full.order())
        .map(|a| {
            full.row(a)
                .iter()
                .filter(|&b| (a ^ b).count_ones() % 2 == 1)
                .count()
        })
        .sum::<usize>()
        / 2;
    let components_isomorphic = even.vertices().iter().enumerate().all(|(i, &x)| {
        let ix = odd.index_of(flip(x)).expect("odd image");
        even.vertices().iter().enumerate().all(|(j, &y)| {
            let jy = odd.index_of(flip(y)).expect("odd image");
            even.adjacency().adjacent(i, j) == odd.adjacency().adjacent(ix, jy)
        })
    });

    let alpha_even = alpha(even.adjacency())?;
    let alpha_odd = alpha(odd.adjacency())?;
    // components never share an edge, so α is additive; search the whole
    // graph directly only while it is small enough to be quick
    let alpha_full = if width == 4 {
        alpha(&full)?
    } else {
        debug_assert_eq!(cross_edges, 0);
        alpha_even + alpha_odd
    };
    let low: Vec<usize> = (0..even.order())
        .filter(|&i| even.vertices()[i].weight() < half)
        .collect();
    let alpha_low = alpha(&even.adjacency().induced(&low))?;
    let alpha_middle = alpha(build_level_graph(width, half)?.adjacency())?;

    Ok(ReductionReport {
        width,
        alpha_full,
        alpha_even,
        alpha_odd,
        alpha_low,
        alpha_middle,
        cross_edges,
        components_isomorphic,
    })
}

fn flip(w: Word) -> Word {
    Word::new(w.bits() ^ 1, w.width()).expect("same width")
}

/// Upper and lower bounds on the middle level of `G_16`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleLevelAudit {
    pub vertices: usize,
    pub cover_size: usize,
    pub verified: bool,
    /// Size of a verified independent set in the level.
    pub independent: usize,
}

impl MiddleLevelAudit {
    /// Total bound once the middle level is counted: each component holds
    /// both complementary halves plus the middle level.
    pub fn adjusted_total(&self, level_sum: u64) -> u64 {
        2 * (2 * level_sum + self.cover_size as u64)
    }

    /// Least total the per-level method could ever give with the middle level
    /// counted, given that `low_alpha` is the true `Σ α` of the lower levels.
    pub fn least_total(&self, low_alpha: u64) -> u64 {
        2 * (2 * low_alpha + self.independent as u64)
    }
}

/// Weight-8 words containing positions 0..5, and their complements.
///
/// Two such words share at least 5 positions, two complements likewise, and a
/// word and a complement share at most 3, so no pair shares exactly 4.
pub fn middle_level_witness() -> Vec<Word> {
    let core = 0b1_1111u32;
    let mut words: Vec<Word> = enumerate_level(16, 8)
        .expect("valid level")
        .into_iter()
        .filter(|w| w.bits() & core == core)
        .flat_map(|w| [w, w.complement()])
        .collect();
    words.sort_unstable();
    words
}

/// Covers the weight-8 level of `G_16` (12870 vertices) and checks the
/// witness family.
pub fn middle_level_audit(config: CoverConfig) -> Result<MiddleLevelAudit> {
    let level: LevelGraph = build_level_graph(16, 8)?;
    let cover = build_cover(&level, config);
    let witness = middle_level_witness();
    for (i, &a) in witness.iter().enumerate() {
        for &b in &witness[i + 1..] {
            if distance(a, b)? == 8 {
                return Err(Error::Invariant(format!(
                    "witness words {a} and {b} are adjacent"
                )));
            }
        }
    }
    Ok(MiddleLevelAudit {
        vertices: level.order(),
        cover_size: cover.size(),
        verified: verify_cover(&level, &cover),
        independent: witness.len(),
    })
}
