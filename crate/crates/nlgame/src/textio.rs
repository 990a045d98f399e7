//! Shared plumbing for the line-oriented text formats.
//!
//! All formats use the same lexical rules: `#` starts a comment that runs to
//! the end of the line, blank lines are ignored, and fields within a line
//! are separated by whitespace. Labels never contain whitespace, `#`, or
//! `:`, which the data-model constructors already enforce.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::C64;

/// Parse failure with its position in the input text.
#[derive(Debug, Error)]
#[error("line {line}, column {col}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl FormatError {
    pub fn at(line: usize, message: impl fmt::Display) -> Self {
        FormatError { line, col: 1, message: message.to_string() }
    }

    pub fn at_col(line: usize, col: usize, message: impl fmt::Display) -> Self {
        FormatError { line, col, message: message.to_string() }
    }
}

/// Comment-stripped, blank-skipping line cursor that remembers positions.
pub struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let content = raw.split('#').next().unwrap_or("").trim();
                if content.is_empty() {
                    None
                } else {
                    Some((i + 1, content))
                }
            })
            .collect();
        Cursor { lines, pos: 0 }
    }

    pub fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    pub fn next_line(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    /// Line number to report when the input ends unexpectedly.
    pub fn eof_line(&self) -> usize {
        self.lines.last().map_or(1, |&(n, _)| n + 1)
    }

    pub fn expect_line(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        self.next_line()
            .ok_or_else(|| FormatError::at(self.eof_line(), format!("expected {what}, found end of input")))
    }

    pub fn expect_literal(&mut self, literal: &str) -> Result<(), FormatError> {
        let (line, content) = self.expect_line(&format!("{literal:?}"))?;
        if content == literal {
            Ok(())
        } else {
            Err(FormatError::at(line, format!("expected {literal:?}, found {content:?}")))
        }
    }

    /// Consumes a `key: value...` line and returns the value tokens.
    pub fn expect_keyed(&mut self, key: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        let (line, content) = self.expect_line(&format!("{key}:"))?;
        let mut tokens = content.split_whitespace();
        let head = tokens.next().unwrap_or("");
        if head.trim_end_matches(':') != key || !head.ends_with(':') {
            return Err(FormatError::at(line, format!("expected {key:?} header, found {head:?}")));
        }
        Ok((line, tokens.collect()))
    }

    pub fn done(&mut self) -> Result<(), FormatError> {
        match self.peek() {
            None => Ok(()),
            Some((line, content)) => {
                Err(FormatError::at(line, format!("unexpected trailing content {content:?}")))
            }
        }
    }
}

pub fn parse_usize(token: &str, line: usize) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| FormatError::at(line, format!("expected a nonnegative integer, found {token:?}")))
}

pub fn parse_bigint(token: &str, line: usize) -> Result<BigInt, FormatError> {
    token
        .parse()
        .map_err(|_| FormatError::at(line, format!("expected an integer, found {token:?}")))
}

pub fn parse_f64(token: &str, line: usize) -> Result<f64, FormatError> {
    token
        .parse()
        .map_err(|_| FormatError::at(line, format!("expected a number, found {token:?}")))
}

/// Parses a `re,im` pair into a complex number.
pub fn parse_complex(token: &str, line: usize) -> Result<C64, FormatError> {
    let (re, im) = token
        .split_once(',')
        .ok_or_else(|| FormatError::at(line, format!("expected re,im pair, found {token:?}")))?;
    Ok(C64::new(parse_f64(re, line)?, parse_f64(im, line)?))
}

/// Writes a complex number as a `re,im` pair. `f64` display round-trips at
/// double precision, so the encoding is lossless.
pub fn format_complex(z: C64) -> String {
    format!("{},{}", z.re, z.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cursor_strips_comments_and_blanks() {
        let mut c = Cursor::new("# header\n\n  a b # trailing\n\nend\n");
        assert_eq!(c.next_line(), Some((3, "a b")));
        assert_eq!(c.next_line(), Some((5, "end")));
        assert_eq!(c.next_line(), None);
    }

    #[test]
    fn keyed_lines_report_positions() {
        let mut c = Cursor::new("vertices: u v w\n");
        let (line, tokens) = c.expect_keyed("vertices").unwrap();
        assert_eq!(line, 1);
        assert_eq!(tokens, vec!["u", "v", "w"]);
    }

    #[test]
    fn complex_round_trip() {
        for z in [C64::new(0.0, 0.0), C64::new(1.5, -0.25), C64::new(1.0 / 3.0, 2.0_f64.sqrt())] {
            let s = format_complex(z);
            assert_eq!(parse_complex(&s, 1).unwrap(), z);
        }
    }
}
