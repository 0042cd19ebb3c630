//! Recomputes the published tables and bounds and diffs them against the
//! bundled fixtures.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, bound, AnalysisError, AnalysisTable};
use crate::bundled::{self, ExpectedRow};
use crate::rules::RuleSet;

/// Tolerance for 4-decimal table cells.
pub const TABLE_TOLERANCE: f64 = 5e-5;
/// Tolerance for 6-decimal bounds.
pub const BOUND_TOLERANCE: f64 = 5e-7;

pub const COLUMNS: [&str; 10] = ["p+", "px", "p.", "po", "qP", "qT", "qD", "qoP", "qoT", "qoD"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub label: String,
    pub expected: Option<f64>,
    pub computed: Option<f64>,
    pub tolerance: f64,
}

impl Comparison {
    pub fn ok(&self) -> bool {
        match (self.expected, self.computed) {
            (Some(e), Some(c)) => (e - c).abs() <= self.tolerance,
            (None, None) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.7}"));
        write!(
            f,
            "{} expected {} computed {} {}",
            self.label,
            show(self.expected),
            show(self.computed),
            if self.ok() { "OK" } else { "MISMATCH" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reproduction {
    pub target: String,
    pub comparisons: Vec<Comparison>,
}

impl Reproduction {
    pub fn all_ok(&self) -> bool {
        self.comparisons.iter().all(Comparison::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.ok())
    }
}

/// Compares every cell of the expected rows against a fresh analysis.
pub fn compare_table(table: &AnalysisTable, expected: &[ExpectedRow]) -> Vec<Comparison> {
    let mut out = Vec::new();
    for row in expected {
        let computed = table.row(row.level).map(AnalysisTable::columns).unwrap_or([None; 10]);
        for (c, name) in COLUMNS.iter().enumerate() {
            out.push(Comparison {
                label: format!("i={} {name}", row.level),
                expected: row.values[c],
                computed: computed[c],
                tolerance: TABLE_TOLERANCE,
            });
        }
    }
    out
}

fn table_target(
    target: &str,
    rs: &RuleSet,
    k: usize,
    tsv: &str,
) -> Result<(Reproduction, AnalysisTable), AnalysisError> {
    let table = analyze(rs, k)?;
    let expected = bundled::parse_expected(tsv);
    let comparisons = compare_table(&table, &expected);
    Ok((Reproduction { target: target.to_string(), comparisons }, table))
}

/// The 5-level table of the example set.
pub fn fig2() -> Result<(Reproduction, AnalysisTable), AnalysisError> {
    table_target("fig2", &bundled::example10(), bundled::EXAMPLE10_LEVELS, bundled::FIG2_TSV)
}

/// The printed rows of the 10000-level table of the main set.
pub fn fig4() -> Result<(Reproduction, AnalysisTable), AnalysisError> {
    table_target("fig4", &bundled::main79(), bundled::MAIN79_LEVELS, bundled::FIG4_TSV)
}

pub fn bounds() -> Result<Reproduction, AnalysisError> {
    let mut comparisons = Vec::new();
    for (rs, k, want) in [
        (bundled::example10(), bundled::EXAMPLE10_LEVELS, bundled::EXAMPLE10_BOUND),
        (bundled::main79(), bundled::MAIN79_LEVELS, bundled::MAIN79_BOUND),
    ] {
        let b = bound(&analyze(&rs, k)?);
        comparisons.push(Comparison {
            label: format!("{} K={k}", rs.name()),
            expected: Some(want),
            computed: Some(b.bound),
            tolerance: BOUND_TOLERANCE,
        });
    }
    Ok(Reproduction { target: "bounds".into(), comparisons })
}
