//! Rule sets and published probability tables shipped with the crate.

use crate::rules::RuleSet;

/// Ten-rule example set (expected bound 0.313972 at K = 5).
pub const EXAMPLE10_RULES: &str = include_str!("../../../data/example10.rules");
/// 79-rule main set (expected bound 0.299871 at K = 10000).
pub const MAIN79_RULES: &str = include_str!("../../../data/main79.rules");
/// Published 4-decimal table for the example set, K = 5.
pub const FIG2_TSV: &str = include_str!("../../../data/fig2.tsv");
/// Published 4-decimal table (selected rows) for the main set, K = 10000.
pub const FIG4_TSV: &str = include_str!("../../../data/fig4.tsv");

pub const EXAMPLE10_LEVELS: usize = 5;
pub const MAIN79_LEVELS: usize = 10_000;
pub const EXAMPLE10_BOUND: f64 = 0.313972;
pub const MAIN79_BOUND: f64 = 0.299871;

pub fn example10() -> RuleSet {
    RuleSet::parse(EXAMPLE10_RULES).expect("bundled rules parse").with_name("example10")
}

pub fn main79() -> RuleSet {
    RuleSet::parse(MAIN79_RULES).expect("bundled rules parse").with_name("main79")
}

/// One row of a published table: the level and ten probabilities
/// (`p+ px p. po qP qT qD qoP qoT qoD`), `None` where the table shows `-`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedRow {
    pub level: usize,
    pub values: [Option<f64>; 10],
}

/// Parses a fixture table: `#` comments, one header line, then rows.
pub fn parse_expected(tsv: &str) -> Vec<ExpectedRow> {
    tsv.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .skip(1)
        .map(|line| {
            let mut cells = line.split('\t');
            let level = cells.next().and_then(|c| c.trim().parse().ok()).expect("fixture level");
            let mut values = [None; 10];
            for (slot, cell) in values.iter_mut().zip(cells) {
                *slot = match cell.trim() {
                    "-" => None,
                    v => Some(v.parse().expect("fixture value")),
                };
            }
            ExpectedRow { level, values }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_rule_counts() {
        assert_eq!(example10().len(), 10);
        assert_eq!(main79().len(), 79);
        assert_eq!(example10().max_len(), 3);
        assert_eq!(main79().max_len(), 7);
    }

    #[test]
    fn example_has_eight_wildcard_rules() {
        let rs = example10();
        assert_eq!(rs.rules().iter().filter(|r| r.wildcards() == 1).count(), 8);
        assert_eq!(rs.rules().iter().filter(|r| r.wildcards() == 0).count(), 2);
        assert_eq!(rs.expand().len(), 8 * 4 + 2);
    }

    #[test]
    fn fixtures_parse() {
        let fig2 = parse_expected(FIG2_TSV);
        assert_eq!(fig2.iter().map(|r| r.level).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
        assert_eq!(fig2[4].values[8], None);
        assert_eq!(fig2[1].values[4], Some(0.0142));
        let fig4 = parse_expected(FIG4_TSV);
        assert_eq!(
            fig4.iter().map(|r| r.level).collect::<Vec<_>>(),
            vec![1, 2, 2500, 5000, 7500, 9999, 10000]
        );
    }
}
