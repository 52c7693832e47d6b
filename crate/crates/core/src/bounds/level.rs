use std::fmt;

use crate::bounds::case_split::{case_split_on, CaseSplit};
use crate::bounds::cover::{build_cover, CliqueCover, CoverConfig};
use crate::bounds::ekr::ekr_bound;
use crate::error::{Error, Result};
use crate::graph::build_level_graph;
use crate::hamming::{binomial, check_width};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMethod {
    Trivial,
    Edgeless,
    Ekr,
    CaseSplit,
    Cover,
    Exact,
}

impl BoundMethod {
    pub fn tag(self) -> &'static str {
        match self {
            BoundMethod::Trivial => "trivial",
            BoundMethod::Edgeless => "edgeless",
            BoundMethod::Ekr => "ekr",
            BoundMethod::CaseSplit => "case-split",
            BoundMethod::Cover => "cover",
            BoundMethod::Exact => "exact",
        }
    }

    pub fn parse(tag: &str) -> Option<BoundMethod> {
        [
            BoundMethod::Trivial,
            BoundMethod::Edgeless,
            BoundMethod::Ekr,
            BoundMethod::CaseSplit,
            BoundMethod::Cover,
            BoundMethod::Exact,
        ]
        .into_iter()
        .find(|m| m.tag() == tag)
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone)]
pub enum Evidence {
    /// The level has this many vertices.
    VertexCount(u64),
    Ekr {
        n: u32,
        k: u32,
        t: u32,
    },
    Cover(CliqueCover),
    CaseSplit(Box<CaseSplit>),
}

/// Upper bound on the independence number of one level, with its evidence.
#[derive(Debug, Clone)]
pub struct BoundResult {
    pub level: u32,
    pub value: u64,
    pub method: BoundMethod,
    pub evidence: Evidence,
}

pub fn level_bound(width: u32, k: u32, config: CoverConfig) -> Result<BoundResult> {
    check_width(width)?;
    if k % 2 == 1 || k > width / 2 {
        return Err(Error::usage(format!(
            "level bound needs an even level in 0..={}, got {k}",
            width / 2
        )));
    }
    let count = binomial(width as u64, k as u64);
    let result = |value, method, evidence| BoundResult {
        level: k,
        value,
        method,
        evidence,
    };

    if k == 0 {
        return Ok(result(1, BoundMethod::Trivial, Evidence::VertexCount(1)));
    }
    // two weight-k words are at most 2k apart
    if 2 * k < width / 2 {
        return Ok(result(
            count,
            BoundMethod::Edgeless,
            Evidence::VertexCount(count),
        ));
    }
    if 4 * k == width {
        // distance N/2 = 2k means disjoint supports
        let value = ekr_bound(width, k, 1)?;
        return Ok(result(
            value,
            BoundMethod::Ekr,
            Evidence::Ekr { n: width, k, t: 1 },
        ));
    }
    let level = build_level_graph(width, k)?;
    if width == 16 && k == 6 {
        let split = case_split_on(&level, config)?;
        return Ok(result(
            split.value(),
            BoundMethod::CaseSplit,
            Evidence::CaseSplit(Box::new(split)),
        ));
    }
    let cover = build_cover(&level, config);
    Ok(result(
        cover.size() as u64,
        BoundMethod::Cover,
        Evidence::Cover(cover),
    ))
}
