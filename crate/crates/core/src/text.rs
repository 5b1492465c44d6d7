//! Shared helpers for the line-oriented text formats.

use std::fmt;

use thiserror::Error;

/// A parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// A whitespace-separated token with its position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

impl Token<'_> {
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }
}

/// A non-blank line with comments removed.
#[derive(Debug, Clone)]
pub struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
}

/// Splits text into non-empty lines of tokens, dropping `#` comments.
pub fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let tokens = tokenize(content, idx + 1);
        if !tokens.is_empty() {
            out.push(Line {
                number: idx + 1,
                tokens,
            });
        }
    }
    out
}

fn tokenize(content: &str, line: usize) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &content[s..i],
                    line,
                    column: content[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &content[s..],
            line,
            column: content[..s].chars().count() + 1,
        });
    }
    tokens
}

/// Parses a `key=<integer>` token.
pub fn keyed_uint(token: &Token<'_>, key: &str) -> Result<u64, ParseError> {
    let value = token
        .text
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| {
            token.error(format!(
                "expected `{key}=<integer>`, found `{}`",
                token.text
            ))
        })?;
    value
        .parse()
        .map_err(|_| token.error(format!("invalid integer `{value}` for `{key}`")))
}

pub fn uint(token: &Token<'_>) -> Result<u64, ParseError> {
    token.text.parse().map_err(|_| {
        token.error(format!(
            "expected a non-negative integer, found `{}`",
            token.text
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_comments_and_blank_lines() {
        let ls = lines("# header\n\n  a  b # trailing\n\tc\n");
        assert_eq!(ls.len(), 2);
        assert_eq!(ls[0].number, 3);
        assert_eq!(ls[0].tokens[0].column, 3);
        assert_eq!(ls[0].tokens[1].text, "b");
        assert_eq!(ls[0].tokens[1].column, 6);
        assert_eq!(ls[1].tokens[0].text, "c");
    }

    #[test]
    fn keyed_values() {
        let ls = lines("n=3 mod=x");
        assert_eq!(keyed_uint(&ls[0].tokens[0], "n"), Ok(3));
        assert!(keyed_uint(&ls[0].tokens[1], "mod").is_err());
        assert!(keyed_uint(&ls[0].tokens[0], "mod").is_err());
    }
}
