use std::fmt;

use serde::{Deserialize, Serialize};

use super::{InputSymbol, OutputSymbol, RuleSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    /// A `·`/`∘` position with no adjacent `+` is neither `⊕` nor next to a `⊗`.
    Undominated,
    /// `⊕` written on a position whose input symbol is not `∘`.
    OPlusWithoutCirc,
    /// The expansion is a prefix of (or equal to) another expanded left side.
    Prefix { other_rule: usize, other: Vec<InputSymbol> },
    /// Σ 4^-|σ| over the expansion, as `numerator / denominator`, is not 1.
    Kraft { numerator: u128, denominator: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Index of the offending source rule, if the violation is local to one.
    pub rule: Option<usize>,
    /// The wildcard-free left side the violation was found on.
    pub expansion: Vec<InputSymbol>,
    /// 1-based position within the rule.
    pub position: Option<usize>,
    pub kind: ViolationKind,
}

fn word(w: &[InputSymbol]) -> String {
    w.iter().map(|s| s.ascii()).collect()
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.rule {
            write!(f, "rule {} ", r + 1)?;
        }
        if !self.expansion.is_empty() {
            write!(f, "[{}] ", word(&self.expansion))?;
        }
        if let Some(p) = self.position {
            write!(f, "position {p}: ")?;
        }
        match &self.kind {
            ViolationKind::Undominated => {
                f.write_str("dot/circ position has no adjacent '+' and no covering ⊕/⊗")
            }
            ViolationKind::OPlusWithoutCirc => f.write_str("⊕ on a position whose input is not ∘"),
            ViolationKind::Prefix { other_rule, other } => {
                write!(f, "prefix of rule {} [{}]", other_rule + 1, word(other))
            }
            ViolationKind::Kraft { numerator, denominator } => {
                write!(f, "Kraft sum {numerator}/{denominator} != 1")
            }
        }
    }
}

/// Violations of the two correctness conditions for one wildcard-free rule,
/// as `(1-based position, kind)`.
pub fn concrete_rule_violations(
    lhs: &[InputSymbol],
    rhs: &[OutputSymbol],
) -> Vec<(usize, ViolationKind)> {
    let n = lhs.len();
    let mut out = Vec::new();
    for i in 0..n {
        let window = i.saturating_sub(1)..(i + 2).min(n);
        if matches!(lhs[i], InputSymbol::Dot | InputSymbol::Circ) {
            let plus_adjacent = window.clone().any(|j| j != i && lhs[j] == InputSymbol::Plus);
            let covered = rhs[i] == OutputSymbol::OPlus
                || rhs[window].contains(&OutputSymbol::OTimes);
            if !plus_adjacent && !covered {
                out.push((i + 1, ViolationKind::Undominated));
            }
        }
        if rhs[i] == OutputSymbol::OPlus && lhs[i] != InputSymbol::Circ {
            out.push((i + 1, ViolationKind::OPlusWithoutCirc));
        }
    }
    out
}

/// Checks both correctness conditions on every rule of the expansion.
pub fn check_correct(rs: &RuleSet) -> Vec<Violation> {
    rs.expand()
        .rules()
        .iter()
        .flat_map(|r| {
            concrete_rule_violations(&r.lhs, &r.rhs).into_iter().map(|(pos, kind)| Violation {
                rule: Some(r.source),
                expansion: r.lhs.clone(),
                position: Some(pos),
                kind,
            })
        })
        .collect()
}

/// Checks that the expanded left sides form a complete prefix code: no word
/// is a prefix of another and the Kraft sum is exactly 1.
pub fn check_complete(rs: &RuleSet) -> Vec<Violation> {
    let ers = rs.expand();
    let mut words: Vec<(&[InputSymbol], usize)> =
        ers.rules().iter().map(|r| (r.lhs.as_slice(), r.source)).collect();
    words.sort();

    let mut out = Vec::new();
    // After sorting, every word extending `a` directly follows `a`.
    for (i, &(a, ra)) in words.iter().enumerate() {
        for &(b, rb) in words[i + 1..].iter().take_while(|(b, _)| b.starts_with(a)) {
            out.push(Violation {
                rule: Some(ra),
                expansion: a.to_vec(),
                position: Some(a.len()),
                kind: ViolationKind::Prefix { other_rule: rb, other: b.to_vec() },
            });
        }
    }

    let max_len = ers.max_len() as u32;
    let denominator = 4u128.pow(max_len);
    let numerator: u128 = ers.rules().iter().map(|r| 4u128.pow(max_len - r.len() as u32)).sum();
    if numerator != denominator {
        out.push(Violation {
            rule: None,
            expansion: Vec::new(),
            position: None,
            kind: ViolationKind::Kraft { numerator, denominator },
        });
    }
    out
}
