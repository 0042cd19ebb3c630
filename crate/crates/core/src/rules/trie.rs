use thiserror::Error;

use super::{ExpandedRule, InputSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("no rule matches the input prefix (rule set is not complete)")]
    NoMatch,
    #[error("input ended after {0} symbols before any rule matched")]
    Exhausted(usize),
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Inner([u32; 4]),
    Leaf(u32),
}

const EMPTY: u32 = u32::MAX;

/// 4-ary trie over expanded left sides. On conflicting insertions the first
/// rule wins; conflicts are reported separately by `check_complete`.
#[derive(Debug, Clone)]
pub(super) struct PrefixTrie {
    nodes: Vec<Node>,
}

impl PrefixTrie {
    pub(super) fn build(rules: &[ExpandedRule]) -> Self {
        let mut nodes = vec![Node::Inner([EMPTY; 4])];
        'rules: for (idx, rule) in rules.iter().enumerate() {
            let mut cur = 0usize;
            for (depth, s) in rule.lhs.iter().enumerate() {
                let last = depth + 1 == rule.lhs.len();
                let children = match nodes[cur] {
                    Node::Inner(c) => c,
                    Node::Leaf(_) => continue 'rules,
                };
                let next = children[s.index()];
                if next == EMPTY {
                    let node = if last { Node::Leaf(idx as u32) } else { Node::Inner([EMPTY; 4]) };
                    nodes.push(node);
                    let id = (nodes.len() - 1) as u32;
                    if let Node::Inner(c) = &mut nodes[cur] {
                        c[s.index()] = id;
                    }
                    cur = id as usize;
                } else if last {
                    // Existing node at the end of the word: duplicate or
                    // proper prefix of an earlier rule.
                    continue 'rules;
                } else {
                    cur = next as usize;
                }
            }
        }
        Self { nodes }
    }

    pub(super) fn lookup(&self, stream: &[InputSymbol]) -> Result<usize, MatchError> {
        let mut cur = 0usize;
        for s in stream {
            match self.nodes[cur] {
                Node::Leaf(i) => return Ok(i as usize),
                Node::Inner(c) => {
                    let next = c[s.index()];
                    if next == EMPTY {
                        return Err(MatchError::NoMatch);
                    }
                    cur = next as usize;
                }
            }
        }
        match self.nodes[cur] {
            Node::Leaf(i) => Ok(i as usize),
            Node::Inner(_) => Err(MatchError::Exhausted(stream.len())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::RuleSet;
    use super::*;
    use crate::bundled;
    use InputSymbol::*;

    #[test]
    fn matches_fig1_examples() {
        let ers = bundled::example10().expand();
        let r = ers.match_prefix(&[Circ, Times, Dot, Dot]).unwrap();
        assert_eq!(r.to_string(), "ox -> PD");
        let r = ers.match_prefix(&[Times, Circ, Circ]).unwrap();
        assert_eq!(r.to_string(), "x -> D");
        let r = ers.match_prefix(&[Dot, Circ, Plus, Times]).unwrap();
        assert_eq!(r.to_string(), ".o+ -> DTD");
        assert_eq!(bundled::example10().rules()[r.source].to_string(), ".o? -> DTD");
    }

    #[test]
    fn incomplete_sets_report_no_match() {
        let ers = RuleSet::parse("+ -> D\n. -> D").unwrap().expand();
        assert_eq!(ers.match_prefix(&[Times]).unwrap_err(), MatchError::NoMatch);
        let ers = RuleSet::parse("++ -> DD").unwrap().expand();
        assert_eq!(ers.match_prefix(&[Plus]).unwrap_err(), MatchError::Exhausted(1));
    }

    #[test]
    fn first_rule_wins_on_conflict() {
        let ers = RuleSet::parse("+ -> D\n+? -> TT\n").unwrap().expand();
        assert_eq!(ers.match_prefix(&[Plus, Plus]).unwrap().source, 0);
        let ers = RuleSet::parse("+? -> TT\n+ -> D\n").unwrap().expand();
        assert_eq!(ers.match_prefix(&[Plus, Dot]).unwrap().source, 0);
    }
}
