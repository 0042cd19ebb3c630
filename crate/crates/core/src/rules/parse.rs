use thiserror::Error;

use super::{InputSymbol, OutputSymbol, PatternSymbol, Rule, MAX_RULE_LEN};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: unknown symbol {symbol:?} on the {side} side")]
    UnknownSymbol { line: usize, symbol: char, side: &'static str },
    #[error("line {line}: left side has {lhs} symbols but right side has {rhs}")]
    LengthMismatch { line: usize, lhs: usize, rhs: usize },
    #[error("line {line}: wildcard '?' is not allowed on the right side")]
    WildcardOnRhs { line: usize },
    #[error("line {line}: empty rule")]
    EmptyRule { line: usize },
    #[error("line {line}: expected `LHS -> RHS`")]
    MissingArrow { line: usize },
    #[error("line {line}: rule longer than {MAX_RULE_LEN} symbols")]
    TooLong { line: usize },
    #[error("no rules found")]
    EmptyFile,
}

pub(super) fn parse_rules(text: &str) -> Result<Vec<Rule>, ParseError> {
    let mut rules = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (left, right) = body.split_once("->").ok_or(ParseError::MissingArrow { line })?;

        let lhs = left
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '?' => Ok(PatternSymbol::Wildcard),
                _ => InputSymbol::from_ascii(c)
                    .map(PatternSymbol::Input)
                    .ok_or(ParseError::UnknownSymbol { line, symbol: c, side: "left" }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rhs = right
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '?' => Err(ParseError::WildcardOnRhs { line }),
                _ => OutputSymbol::from_ascii(c)
                    .ok_or(ParseError::UnknownSymbol { line, symbol: c, side: "right" }),
            })
            .collect::<Result<Vec<_>, _>>()?;

        if lhs.is_empty() && rhs.is_empty() {
            return Err(ParseError::EmptyRule { line });
        }
        if lhs.len() != rhs.len() {
            return Err(ParseError::LengthMismatch { line, lhs: lhs.len(), rhs: rhs.len() });
        }
        if lhs.len() > MAX_RULE_LEN {
            return Err(ParseError::TooLong { line });
        }
        rules.push(Rule { lhs, rhs });
    }
    if rules.is_empty() {
        return Err(ParseError::EmptyFile);
    }
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::super::RuleSet;
    use super::*;
    use InputSymbol::*;
    use OutputSymbol::*;

    #[test]
    fn parses_wildcard_rule() {
        let rs = RuleSet::parse("+? -> DD").unwrap();
        let r = &rs.rules()[0];
        assert_eq!(r.lhs(), &[PatternSymbol::Input(Plus), PatternSymbol::Wildcard]);
        assert_eq!(r.rhs(), &[ODot, ODot]);
    }

    #[test]
    fn parses_single_symbol_rule() {
        let rs = RuleSet::parse("x -> D").unwrap();
        assert_eq!(rs.rules()[0].lhs(), &[PatternSymbol::Input(Times)]);
        assert_eq!(rs.rules()[0].rhs(), &[ODot]);
    }

    #[test]
    fn comments_blank_lines_and_inner_spaces() {
        let rs = RuleSet::parse("# header\n\n o. x -> T D D  # trailing\n").unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs.rules()[0].to_string(), "o.x -> TDD");
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            RuleSet::parse("x -> D\n+?D -> DD").unwrap_err(),
            ParseError::UnknownSymbol { line: 2, symbol: 'D', side: "left" }
        );
        assert_eq!(
            RuleSet::parse("+? -> DDD").unwrap_err(),
            ParseError::LengthMismatch { line: 1, lhs: 2, rhs: 3 }
        );
        assert_eq!(RuleSet::parse("\n+? -> D?").unwrap_err(), ParseError::WildcardOnRhs { line: 2 });
        assert_eq!(RuleSet::parse("x -> D\n ->  ").unwrap_err(), ParseError::EmptyRule { line: 2 });
        assert_eq!(RuleSet::parse("xD").unwrap_err(), ParseError::MissingArrow { line: 1 });
        assert_eq!(RuleSet::parse("# nothing\n\n").unwrap_err(), ParseError::EmptyFile);
        assert_eq!(RuleSet::parse("x -> Q").unwrap_err(), ParseError::UnknownSymbol {
            line: 1,
            symbol: 'Q',
            side: "right"
        });
    }

    #[test]
    fn rejects_overlong_rules() {
        let lhs = "?".repeat(MAX_RULE_LEN + 1);
        let rhs = "D".repeat(MAX_RULE_LEN + 1);
        assert_eq!(
            RuleSet::parse(&format!("{lhs} -> {rhs}")).unwrap_err(),
            ParseError::TooLong { line: 1 }
        );
    }
}
