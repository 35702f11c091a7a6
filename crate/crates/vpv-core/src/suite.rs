//! Runs every catalog entry at its default order.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};
use crate::flags::{all_flags, Flag};
use crate::identity::{catalog, verify_identity, IdentitySpec, PairDifference, Status, VerificationReport};

pub const ORDER_SCALE_VAR: &str = "VPV_SUITE_ORDER_SCALE";

/// Reads the order multiplier from the environment, 1 when unset.
pub fn order_scale_from_env() -> Result<f64> {
    match std::env::var(ORDER_SCALE_VAR) {
        Err(_) => Ok(1.0),
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(s) if s.is_finite() && s > 0.0 => Ok(s),
            _ => arg(format!("{ORDER_SCALE_VAR} must be a positive number, got `{v}`")),
        },
    }
}

pub fn scaled_order(default: usize, scale: f64) -> usize {
    ((default as f64 * scale).round() as usize).max(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub id: String,
    pub order: usize,
    pub status: Status,
    pub failing_goldens: Vec<String>,
    pub first_difference: Option<PairDifference>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub rows: Vec<SuiteRow>,
    pub passed: usize,
    pub flagged: usize,
    pub mismatched: usize,
    pub flags: Vec<Flag>,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.mismatched == 0
    }
}

pub struct SuiteRun {
    pub reports: Vec<VerificationReport>,
    /// Wall time per entry; kept out of the summary so output is reproducible.
    pub timings: Vec<Duration>,
}

/// Verifies `entries` in parallel; results keep the input order.
pub fn run_entries(entries: &[IdentitySpec], scale: f64) -> Result<SuiteRun> {
    let results: Vec<(VerificationReport, Duration)> = entries
        .par_iter()
        .map(|spec| {
            let start = Instant::now();
            let r = verify_identity(spec, scaled_order(spec.default_order, scale))?;
            Ok((r, start.elapsed()))
        })
        .collect::<Result<_>>()?;
    let (reports, timings) = results.into_iter().unzip();
    Ok(SuiteRun { reports, timings })
}

pub fn run_suite(scale: f64) -> Result<SuiteRun> {
    run_entries(&catalog(), scale)
}

pub fn summarize(run: &SuiteRun) -> Result<SuiteSummary> {
    let rows: Vec<SuiteRow> = run
        .reports
        .iter()
        .map(|r| SuiteRow {
            id: r.id.clone(),
            order: r.order,
            status: r.status,
            failing_goldens: r
                .goldens
                .iter()
                .filter(|g| !g.matches)
                .map(|g| g.label.clone())
                .collect(),
            first_difference: r.first_difference.clone(),
        })
        .collect();
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    Ok(SuiteSummary {
        passed: count(Status::Pass),
        flagged: count(Status::Flagged),
        mismatched: count(Status::Mismatch),
        flags: all_flags(&run.reports)?,
        rows,
    })
}
