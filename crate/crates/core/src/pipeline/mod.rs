//! End-to-end bound on `χ(G_16)`: per-level bounds, the ×4 reduction, the
//! certificate directory, and an independent checker for it.

mod certificate;
mod check;
mod reduction;

pub use certificate::{
    build_certificate, cover_path, fixture_arithmetic, run_pipeline, Certificate, FixtureCase,
    FixtureReport, CERTIFICATE_FILE,
};
pub use check::{check_certificate, CheckFailure, CheckReport, SectionStatus};
pub use reduction::{
    middle_level_audit, middle_level_witness, validate_reduction, MiddleLevelAudit, ReductionReport,
};

use crate::error::{Error, Result};

/// Level sum the reference arithmetic reaches (`3912 / 4`).
pub const TARGET_LEVEL_SUM: u64 = 978;
/// Largest level sum with `4Σ < 4096`.
pub const SUFFICIENT_LEVEL_SUM: u64 = 1023;
/// Components times complement halves.
pub const REDUCTION_FACTOR: u64 = 4;

/// `ceil(vertex_count / m)`: colour classes are independent, so at least this
/// many colours are needed when every independent set has at most `m` vertices.
pub fn chi_lower(vertex_count: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::usage("independence bound must be at least 1"));
    }
    Ok(vertex_count.div_ceil(m))
}
