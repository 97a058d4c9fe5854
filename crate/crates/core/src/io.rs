//! Text format for designs.
//!
//! ```text
//! # optional comments
//! 7 3
//! 0 1 3
//! 1 2 4
//! ...
//! ```
//!
//! The first content line is `v k`; every following non-blank, non-`#` line is
//! one block of `k` whitespace-separated vertex ids.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::design::{Design, DesignError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| {
                syntax(
                    line,
                    format!("expected a non-negative integer, found {tok:?}"),
                )
            })
        })
        .collect()
}

pub fn parse_design(text: &str) -> Result<Design, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing \"v k\" header"))?;
    let (v, k) = match numbers(hline, header)?.as_slice() {
        &[v, k] => (v, k),
        _ => return Err(syntax(hline, "header must be exactly \"v k\"")),
    };
    let mut blocks = Vec::new();
    for (line, text) in lines {
        blocks.push(numbers(line, text)?);
    }
    Ok(Design::with_block_size(v, k, blocks)?)
}

pub fn read_design(path: impl AsRef<Path>) -> Result<Design, ParseError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_design(&text)
}

/// Canonical text form: header, then blocks in sorted order, newline-terminated.
pub fn serialize_design(d: &Design) -> String {
    let mut out = format!("{} {}\n", d.v(), d.k());
    for block in d.blocks() {
        let line: Vec<String> = block.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FANO: &str = "# Fano plane\n7 3\n0 1 3\n1 2 4\n2 3 5\n\n3 4 6\n0 4 5\n1 5 6\n0 2 6\n";

    #[test]
    fn parses_with_comments_and_blanks() {
        let d = parse_design(FANO).unwrap();
        assert_eq!((d.v(), d.k(), d.b()), (7, 3, 7));
    }

    #[test]
    fn roundtrip() {
        let d = parse_design(FANO).unwrap();
        let text = serialize_design(&d);
        assert_eq!(parse_design(&text).unwrap(), d);
        assert!(text.starts_with("7 3\n0 1 3\n"));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        match parse_design("7 3\n0 1 x\n") {
            Err(ParseError::Syntax { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_design("7\n") {
            Err(ParseError::Syntax { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_design("# nothing\n"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn validation_errors_propagate() {
        let dup = format!("{FANO}0 1 3\n");
        assert!(matches!(
            parse_design(&dup),
            Err(ParseError::Design(DesignError::RepeatedBlock { .. }))
        ));
        let long = "15 3\n0 1 2 3\n";
        assert!(matches!(
            parse_design(long),
            Err(ParseError::Design(DesignError::UnequalBlockSize {
                found: 4,
                expected: 3,
                ..
            }))
        ));
    }
}
