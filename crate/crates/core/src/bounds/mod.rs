//! Independence-number bounds: EKR, clique covers, exact search, and the
//! weight-6 case split.

pub mod alpha;
pub mod case_split;
pub mod combinator;
pub mod cover;
pub mod ekr;
pub mod level;

pub use alpha::{exact_alpha, AlphaBudget, AlphaResult};
pub use case_split::{case_split, CaseAnalysis, CaseSplit, CoverSource, TypeBound};
pub use combinator::{subset_combinator, CombinatorEntry, CombinatorOutcome};
pub use cover::{
    build_cover, cover_defect, greedy_clique_cover, parse_cover_file, polish_cover, verify_cover,
    write_cover_file, CliqueCover, CoverConfig, CoverDefect, CoverHeader,
};
pub use ekr::{ekr_bound, star_family};
pub use level::{level_bound, BoundMethod, BoundResult, Evidence};
