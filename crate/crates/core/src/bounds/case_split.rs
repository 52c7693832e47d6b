//! Bound on the weight-6 level of `G_16`.
//!
//! Two weight-6 words at distance 8 share exactly two positions, so the
//! supports inside an independent set pairwise share 0, 1, or at least 3
//! positions. Either all pairs share at least 3 (an EKR family), or the set
//! holds a pair at distance 12 or 10, which after a permutation of positions
//! is one of the canonical pairs. Each canonical pair is handled by the
//! profile census plus one clique cover per profile class.

use rayon::prelude::*;

use crate::bounds::combinator::{subset_combinator, CombinatorEntry, CombinatorOutcome};
use crate::bounds::cover::{build_cover, cover_defect, CliqueCover, CoverConfig};
use crate::bounds::ekr::ekr_bound;
use crate::error::{Error, Result};
use crate::graph::{build_level_graph, survivor_subgraph, LevelGraph};
use crate::hamming::Word;
use crate::symmetry::{block_partition, case_types, mirror_permutation, TypeRecord};
use crate::tables::PairCase;

pub const WIDTH: u32 = 16;
pub const LEVEL: u32 = 6;
/// Minimum pairwise support intersection once distances 10 and 12 are excluded.
pub const INTERSECTION: u32 = 3;

/// How a type's cover was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverSource {
    Greedy,
    /// Image of the cover of the mirror class under the `u <-> v` swap.
    Mirrored,
}

#[derive(Debug, Clone)]
pub struct TypeBound {
    pub record: TypeRecord,
    pub b: u64,
    pub cover: CliqueCover,
    pub source: CoverSource,
}

#[derive(Debug, Clone)]
pub struct CaseAnalysis {
    pub case: PairCase,
    pub u: Word,
    pub v: Word,
    pub survivors: u64,
    pub types: Vec<TypeBound>,
    pub combinator: CombinatorOutcome,
}

#[derive(Debug, Clone)]
pub struct CaseSplit {
    pub ekr: u64,
    pub cases: Vec<CaseAnalysis>,
}

impl CaseSplit {
    pub fn value(&self) -> u64 {
        self.cases
            .iter()
            .map(|c| c.combinator.value)
            .fold(self.ekr, u64::max)
    }
}

/// Survivor graph of `{u, v, w}` in the level.
pub fn type_graph(level: &LevelGraph, u: Word, v: Word, w: Word) -> Result<LevelGraph> {
    survivor_subgraph(level, &[u, v, w])
}

fn checked(
    level: &LevelGraph,
    u: Word,
    v: Word,
    t: &TypeRecord,
    cover: CliqueCover,
) -> Result<CliqueCover> {
    let g = type_graph(level, u, v, t.representative)?;
    if let Some(defect) = cover_defect(&g, &cover) {
        return Err(Error::Pipeline {
            section: format!("type {}", t.profile),
            message: format!("cover does not verify: {defect}"),
        });
    }
    Ok(cover)
}

/// Census and verified covers for one canonical pair.
pub fn analyse_case(
    level: &LevelGraph,
    case: PairCase,
    config: CoverConfig,
) -> Result<CaseAnalysis> {
    let (u, v) = case.pair();
    let records = case_types(case)?;
    let swap = mirror_permutation(&block_partition(u, v, WIDTH)?)?;

    // Listed classes (and any class without a listed mirror) get a greedy
    // cover; the remaining classes reuse their mirror's cover.
    let needs_greedy = |t: &TypeRecord| {
        t.is_listed()
            || !records
                .iter()
                .any(|s| s.is_listed() && s.profile == t.mirror)
    };
    let greedy: Vec<(usize, CliqueCover)> = records
        .par_iter()
        .enumerate()
        .filter(|(_, t)| needs_greedy(t))
        .map(|(i, t)| {
            let g = type_graph(level, u, v, t.representative)?;
            let cover = build_cover(&g, config);
            Ok((i, checked(level, u, v, t, cover)?))
        })
        .collect::<Result<_>>()?;

    let mut types = Vec::with_capacity(records.len());
    for (i, t) in records.iter().enumerate() {
        let (cover, source) = match greedy.iter().find(|(j, _)| *j == i) {
            Some((_, c)) => (c.clone(), CoverSource::Greedy),
            None => {
                let j = records
                    .iter()
                    .position(|s| s.profile == t.mirror)
                    .expect("mirror class present");
                let src = &greedy
                    .iter()
                    .find(|(k, _)| *k == j)
                    .expect("mirror covered")
                    .1;
                let image = src.map_words(|w| swap.apply(w));
                (checked(level, u, v, t, image)?, CoverSource::Mirrored)
            }
        };
        types.push(TypeBound {
            record: t.clone(),
            b: cover.size() as u64,
            cover,
            source,
        });
    }

    let entries: Vec<CombinatorEntry> = types
        .iter()
        .map(|t| CombinatorEntry {
            a: t.record.orbit_size,
            b: t.b,
        })
        .collect();
    let combinator = subset_combinator(&entries, 2);
    Ok(CaseAnalysis {
        case,
        u,
        v,
        survivors: types.iter().map(|t| t.record.orbit_size).sum(),
        types,
        combinator,
    })
}

pub fn case_split(config: CoverConfig) -> Result<CaseSplit> {
    let level = build_level_graph(WIDTH, LEVEL)?;
    case_split_on(&level, config)
}

pub fn case_split_on(level: &LevelGraph, config: CoverConfig) -> Result<CaseSplit> {
    let ekr = ekr_bound(WIDTH, LEVEL, INTERSECTION)?;
    let cases = PairCase::ALL
        .into_iter()
        .map(|case| analyse_case(level, case, config))
        .collect::<Result<_>>()?;
    Ok(CaseSplit { ekr, cases })
}

/// Arithmetic of the original tables: `(max{Σa, max b}, combinator value)`
/// per case, the first being the combinator value before the fixed vertices
/// are added back.
pub fn reference_case_values(case: PairCase) -> (u64, u64) {
    let entries: Vec<CombinatorEntry> = case
        .reference_rows()
        .iter()
        .map(|r| CombinatorEntry { a: r.a, b: r.b })
        .collect();
    let out = subset_combinator(&entries, 2);
    let hit = out.hit_arm.map_or(0, |h| h - 3);
    ((out.avoid_arm - 2).max(hit), out.value)
}
