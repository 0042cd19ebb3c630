//! Rule sets that rewrite input-label sequences into output-label sequences.
//!
//! A rule `σ -> τ` consumes `|σ|` consecutive input labels of a path and
//! writes `|τ| = |σ|` output labels. Left-hand sides may contain the
//! wildcard `?`; [`RuleSet::expand`] replaces each wildcard by all four input
//! symbols so that the expanded left-hand sides can be treated as words of a
//! prefix code over the input alphabet.

mod check;
mod parse;
mod trie;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use check::{check_complete, check_correct, concrete_rule_violations, Violation, ViolationKind};
pub use parse::ParseError;
pub use trie::MatchError;

use trie::PrefixTrie;

/// Longest admissible left-hand side. Keeps the exact Kraft arithmetic
/// (`4^len` scaled numerators) inside `u128`.
pub const MAX_RULE_LEN: usize = 32;

/// Label describing how a vertex relates to its mate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum InputSymbol {
    /// `+`: the vertex itself is in the dominating set.
    Plus,
    /// `×`: the mate (on a lower level) is in the dominating set.
    Times,
    /// `·`: mate on a lower or the same level, neither included yet.
    Dot,
    /// `∘`: mate on a higher level.
    Circ,
}

impl InputSymbol {
    /// Canonical order used by wildcard expansion.
    pub const ALL: [InputSymbol; 4] = [Self::Plus, Self::Times, Self::Dot, Self::Circ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    pub fn ascii(self) -> char {
        match self {
            Self::Plus => '+',
            Self::Times => 'x',
            Self::Dot => '.',
            Self::Circ => 'o',
        }
    }

    pub fn from_ascii(c: char) -> Option<Self> {
        Some(match c {
            '+' => Self::Plus,
            'x' => Self::Times,
            '.' => Self::Dot,
            'o' => Self::Circ,
            _ => return None,
        })
    }

    pub fn glyph(self) -> char {
        match self {
            Self::Plus => '+',
            Self::Times => '×',
            Self::Dot => '·',
            Self::Circ => '∘',
        }
    }
}

impl fmt::Display for InputSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.glyph())
    }
}

/// Label written by a rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OutputSymbol {
    /// `⊕`: the mate must be included.
    OPlus,
    /// `⊗`: the vertex itself is included.
    OTimes,
    /// `⊙`: dominated locally.
    ODot,
}

impl OutputSymbol {
    pub const ALL: [OutputSymbol; 3] = [Self::OPlus, Self::OTimes, Self::ODot];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn ascii(self) -> char {
        match self {
            Self::OPlus => 'P',
            Self::OTimes => 'T',
            Self::ODot => 'D',
        }
    }

    pub fn from_ascii(c: char) -> Option<Self> {
        Some(match c {
            'P' => Self::OPlus,
            'T' => Self::OTimes,
            'D' => Self::ODot,
            _ => return None,
        })
    }

    pub fn glyph(self) -> char {
        match self {
            Self::OPlus => '⊕',
            Self::OTimes => '⊗',
            Self::ODot => '⊙',
        }
    }
}

impl fmt::Display for OutputSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.glyph())
    }
}

/// A left-hand-side symbol: a concrete input symbol or the wildcard `?`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternSymbol {
    Input(InputSymbol),
    Wildcard,
}

impl PatternSymbol {
    pub fn matches(self, s: InputSymbol) -> bool {
        match self {
            Self::Input(x) => x == s,
            Self::Wildcard => true,
        }
    }

    pub fn ascii(self) -> char {
        match self {
            Self::Input(s) => s.ascii(),
            Self::Wildcard => '?',
        }
    }
}

impl From<InputSymbol> for PatternSymbol {
    fn from(s: InputSymbol) -> Self {
        Self::Input(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rule {
    lhs: Vec<PatternSymbol>,
    rhs: Vec<OutputSymbol>,
}

impl Rule {
    /// Builds a rule, rejecting empty or unequal sides.
    pub fn new(lhs: Vec<PatternSymbol>, rhs: Vec<OutputSymbol>) -> Option<Self> {
        (!lhs.is_empty() && lhs.len() == rhs.len() && lhs.len() <= MAX_RULE_LEN)
            .then_some(Self { lhs, rhs })
    }

    pub fn lhs(&self) -> &[PatternSymbol] {
        &self.lhs
    }

    pub fn rhs(&self) -> &[OutputSymbol] {
        &self.rhs
    }

    pub fn len(&self) -> usize {
        self.lhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lhs.is_empty()
    }

    pub fn wildcards(&self) -> usize {
        self.lhs.iter().filter(|s| matches!(s, PatternSymbol::Wildcard)).count()
    }

    /// Number of positions whose left symbol matches `x` and whose right
    /// symbol matches `y`; `PatternSymbol::Wildcard` and `None` match anything.
    pub fn sigma_tau_count(&self, x: PatternSymbol, y: Option<OutputSymbol>) -> usize {
        self.lhs
            .iter()
            .zip(&self.rhs)
            .filter(|(s, t)| {
                let left = match x {
                    PatternSymbol::Wildcard => true,
                    PatternSymbol::Input(_) => **s == x,
                };
                left && y.is_none_or(|y| **t == y)
            })
            .count()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.lhs {
            write!(f, "{}", s.ascii())?;
        }
        f.write_str(" -> ")?;
        for t in &self.rhs {
            write!(f, "{}", t.ascii())?;
        }
        Ok(())
    }
}

/// An ordered, nonempty collection of rules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSet {
    name: String,
    rules: Vec<Rule>,
}

impl RuleSet {
    pub fn new(name: impl Into<String>, rules: Vec<Rule>) -> Option<Self> {
        (!rules.is_empty()).then(|| Self { name: name.into(), rules })
    }

    /// Parses the line-oriented rule format. The name defaults to `"rules"`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse_rules(text).map(|rules| Self { name: "rules".into(), rules })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Length of the longest rule.
    pub fn max_len(&self) -> usize {
        self.rules.iter().map(Rule::len).max().unwrap_or(0)
    }

    /// Replaces every wildcard by each input symbol, in canonical order.
    pub fn expand(&self) -> ExpandedRuleSet {
        let mut rules = Vec::new();
        for (source, rule) in self.rules.iter().enumerate() {
            let holes: Vec<usize> = rule
                .lhs
                .iter()
                .enumerate()
                .filter(|(_, s)| matches!(s, PatternSymbol::Wildcard))
                .map(|(i, _)| i)
                .collect();
            let mut lhs: Vec<InputSymbol> = rule
                .lhs
                .iter()
                .map(|s| match s {
                    PatternSymbol::Input(x) => *x,
                    PatternSymbol::Wildcard => InputSymbol::Plus,
                })
                .collect();
            // Odometer over the wildcard positions; the last hole varies fastest.
            let mut digits = vec![0usize; holes.len()];
            loop {
                for (&h, &d) in holes.iter().zip(&digits) {
                    lhs[h] = InputSymbol::from_index(d);
                }
                rules.push(ExpandedRule { lhs: lhs.clone(), rhs: rule.rhs.clone(), source });
                let mut k = digits.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    digits[k] += 1;
                    if digits[k] < 4 {
                        break;
                    }
                    digits[k] = 0;
                }
                if digits.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
        ExpandedRuleSet::from_rules(self.name.clone(), rules)
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

/// A wildcard-free rule, remembering which source rule it came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExpandedRule {
    pub lhs: Vec<InputSymbol>,
    pub rhs: Vec<OutputSymbol>,
    pub source: usize,
}

impl ExpandedRule {
    pub fn len(&self) -> usize {
        self.lhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lhs.is_empty()
    }

    /// Counts positions with left symbol `x` (any if `None`) and right
    /// symbol `y` (any if `None`).
    pub fn sigma_tau_count(&self, x: Option<InputSymbol>, y: Option<OutputSymbol>) -> usize {
        self.lhs
            .iter()
            .zip(&self.rhs)
            .filter(|(s, t)| x.is_none_or(|x| **s == x) && y.is_none_or(|y| **t == y))
            .count()
    }

    pub fn to_rule(&self) -> Rule {
        Rule {
            lhs: self.lhs.iter().copied().map(PatternSymbol::Input).collect(),
            rhs: self.rhs.clone(),
        }
    }
}

impl fmt::Display for ExpandedRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_rule(), f)
    }
}

/// The expansion of a rule set, indexed by a prefix trie for matching.
#[derive(Debug, Clone)]
pub struct ExpandedRuleSet {
    name: String,
    rules: Vec<ExpandedRule>,
    max_len: usize,
    trie: PrefixTrie,
}

impl ExpandedRuleSet {
    fn from_rules(name: String, rules: Vec<ExpandedRule>) -> Self {
        let max_len = rules.iter().map(ExpandedRule::len).max().unwrap_or(0);
        let trie = PrefixTrie::build(&rules);
        Self { name, rules, max_len, trie }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rules(&self) -> &[ExpandedRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Source-rule index of every expanded rule, in order.
    pub fn origin(&self) -> impl Iterator<Item = usize> + '_ {
        self.rules.iter().map(|r| r.source)
    }

    /// Returns the unique rule whose left-hand side is a prefix of `stream`.
    pub fn match_prefix(&self, stream: &[InputSymbol]) -> Result<&ExpandedRule, MatchError> {
        self.trie.lookup(stream).map(|i| &self.rules[i])
    }

    /// Back to an (already wildcard-free) rule set.
    pub fn to_rule_set(&self) -> RuleSet {
        RuleSet {
            name: self.name.clone(),
            rules: self.rules.iter().map(ExpandedRule::to_rule).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use InputSymbol::*;
    use OutputSymbol::*;

    fn rule(lhs: &str, rhs: &str) -> Rule {
        RuleSet::parse(&format!("{lhs} -> {rhs}")).unwrap().rules[0].clone()
    }

    #[test]
    fn sigma_tau_counts() {
        let r = rule("o.+", "DTD");
        assert_eq!(r.sigma_tau_count(PatternSymbol::Wildcard, Some(ODot)), 2);
        assert_eq!(r.sigma_tau_count(Circ.into(), Some(ODot)), 1);
        assert_eq!(r.sigma_tau_count(Circ.into(), None), 1);
        assert_eq!(r.sigma_tau_count(PatternSymbol::Wildcard, None), 3);
    }

    #[test]
    fn expansion_counts() {
        let rs = RuleSet::parse("??? -> DTD\n").unwrap();
        assert_eq!(rs.expand().len(), 64);
        let rs = RuleSet::parse("+?? -> DDD\n").unwrap();
        assert_eq!(rs.expand().len(), 16);
        let rs = RuleSet::parse("x -> D\n").unwrap();
        let ers = rs.expand();
        assert_eq!(ers.len(), 1);
        assert_eq!(ers.rules()[0].lhs, vec![Times]);
    }

    #[test]
    fn expansion_order_is_canonical() {
        let ers = RuleSet::parse("+? -> DD").unwrap().expand();
        let seconds: Vec<_> = ers.rules().iter().map(|r| r.lhs[1]).collect();
        assert_eq!(seconds, vec![Plus, Times, Dot, Circ]);

        let ers = RuleSet::parse("?.? -> DTD").unwrap().expand();
        let words: Vec<String> = ers
            .rules()
            .iter()
            .map(|r| r.lhs.iter().map(|s| s.ascii()).collect())
            .collect();
        assert_eq!(&words[..5], &["+.+", "+.x", "+..", "+.o", "x.+"]);
    }

    #[test]
    fn expansion_keeps_rhs_and_origin() {
        let ers = RuleSet::parse("x -> D\no? -> PD\n").unwrap().expand();
        assert_eq!(ers.origin().collect::<Vec<_>>(), vec![0, 1, 1, 1, 1]);
        assert!(ers.rules()[1..].iter().all(|r| r.rhs == vec![OPlus, ODot]));
    }

    #[test]
    fn rule_new_rejects_bad_shapes() {
        assert!(Rule::new(vec![], vec![]).is_none());
        assert!(Rule::new(vec![Plus.into()], vec![ODot, ODot]).is_none());
        assert!(Rule::new(vec![Plus.into()], vec![ODot]).is_some());
    }
}
