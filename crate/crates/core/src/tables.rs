//! Reference type tables for the two canonical pairs of the weight-6 case split.
//!
//! Each row is a representative third vertex written as a bit string (block
//! separators `·`, position 0 leftmost) together with the orbit size `a` and
//! the clique-cover size `b` of the original hand-run decomposition. The
//! original covers are not available, so the `b` column is fixture data: it is
//! used to reproduce the original arithmetic and never feeds a verified bound.

use crate::hamming::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub representative: &'static str,
    pub a: u64,
    pub b: u64,
}

/// Which canonical pair a case split branch is anchored on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairCase {
    /// `u`, `v` at distance 12 (disjoint supports).
    D12,
    /// `u`, `v` at distance 10 (one shared position).
    D10,
}

impl PairCase {
    pub const ALL: [PairCase; 2] = [PairCase::D12, PairCase::D10];

    pub fn label(self) -> &'static str {
        match self {
            PairCase::D12 => "d12",
            PairCase::D10 => "d10",
        }
    }

    pub fn parse(s: &str) -> Option<PairCase> {
        match s {
            "d12" => Some(PairCase::D12),
            "d10" => Some(PairCase::D10),
            _ => None,
        }
    }

    pub fn distance(self) -> u32 {
        match self {
            PairCase::D12 => 12,
            PairCase::D10 => 10,
        }
    }

    /// Canonical `(u, v)` in `G_16`.
    pub fn pair(self) -> (Word, Word) {
        match self {
            PairCase::D12 => (Word::from_raw(0x003f, 16), Word::from_raw(0x0fc0, 16)),
            PairCase::D10 => (Word::from_raw(0x003f, 16), Word::from_raw(0x07e0, 16)),
        }
    }

    pub fn reference_rows(self) -> &'static [ReferenceRow] {
        match self {
            PairCase::D12 => D12_ROWS,
            PairCase::D10 => D10_ROWS,
        }
    }

    /// Reference value of the `max{Σa, max b}` arm before adding the three
    /// fixed vertices.
    pub fn reference_max_arm(self) -> u64 {
        match self {
            PairCase::D12 => 399,
            PairCase::D10 => 365,
        }
    }
}

const fn row(representative: &'static str, a: u64, b: u64) -> ReferenceRow {
    ReferenceRow {
        representative,
        a,
        b,
    }
}

pub const D12_ROWS: &[ReferenceRow] = &[
    row("000000·111000·1110", 80, 394),
    row("000000·111100·1100", 90, 426),
    row("000000·111110·1000", 24, 495),
    row("100000·100000·1111", 36, 320),
    row("100000·111000·1100", 720, 370),
    row("100000·111100·1000", 360, 399),
    row("100000·111110·0000", 36, 425),
    row("111000·111000·0000", 400, 314),
];

pub const D10_ROWS: &[ReferenceRow] = &[
    row("00000·0·10000·11111", 5, 318),
    row("00000·0·11100·11100", 100, 366),
    row("00000·0·11110·11000", 50, 394),
    row("00000·0·11111·10000", 5, 428),
    row("00000·1·00000·11111", 1, 260),
    row("00000·1·11000·11100", 100, 345),
    row("00000·1·11100·11000", 100, 365),
    row("00000·1·11110·10000", 25, 408),
    row("10000·0·10000·11110", 125, 300),
    row("10000·0·11100·11000", 500, 346),
    row("10000·0·11110·10000", 125, 373),
    row("10000·0·11111·00000", 5, 405),
    row("11000·1·11000·10000", 500, 298),
    row("11000·1·11100·00000", 100, 313),
    row("11100·0·11100·00000", 100, 302),
];

/// Level bounds of the original argument for levels 0, 2, 4, 6.
pub const REFERENCE_LEVEL_BOUNDS: [(u32, u64); 4] = [(0, 1), (2, 120), (4, 455), (6, 402)];

pub const REFERENCE_TOTAL: u64 = 3912;

pub fn reference_word(row: &ReferenceRow) -> Word {
    Word::from_bit_string(row.representative, 16).expect("reference rows are well formed")
}
