//! Line-oriented helpers shared by the file formats.
//!
//! Every format is plain text: `#` starts a comment, blank lines are
//! ignored, and errors carry the 1-based line number of the offending line.

use std::path::Path;

use crate::board::{BoardKind, Cell};
use crate::error::{Error, Result};

#[derive(Clone, Copy)]
pub(crate) struct Line<'a> {
    pub no: usize,
    pub text: &'a str,
}

pub(crate) struct Source<'a> {
    pub name: String,
    lines: Vec<Line<'a>>,
    pos: usize,
}

impl<'a> Source<'a> {
    pub fn new(name: impl Into<String>, input: &'a str) -> Self {
        let lines = input
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let text = raw.split('#').next().unwrap_or("").trim();
                (!text.is_empty()).then_some(Line { no: i + 1, text })
            })
            .collect();
        Source {
            name: name.into(),
            lines,
            pos: 0,
        }
    }


    pub fn next_line(&mut self) -> Option<Line<'a>> {
        let line = self.lines.get(self.pos).copied();
        if line.is_some() {
            self.pos += 1;
        }
        line
    }

    pub fn err(&self, line: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            source_name: self.name.clone(),
            line,
            msg: msg.into(),
        }
    }

    /// Line number to blame for a missing line at end of input.
    pub fn eof_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.no)
    }

    pub fn expect_board(&mut self) -> Result<BoardKind> {
        let eof = self.eof_line();
        let line = self
            .next_line()
            .ok_or_else(|| self.err(eof, "expected `board square|triangular`"))?;
        let (no, text) = (line.no, line.text);
        match text.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["board", kind] => kind.parse().map_err(|e: String| self.err(no, e)),
            _ => Err(self.err(no, "expected `board square|triangular`")),
        }
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses every parenthesised group in `s` as a cell.
pub(crate) fn parse_cells(board: BoardKind, s: &str) -> std::result::Result<Vec<Cell>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(format!("expected `(` at `{rest}`"));
        }
        let end = rest
            .find(')')
            .ok_or_else(|| format!("unclosed cell in `{rest}`"))?;
        out.push(Cell::parse(board, &rest[..=end])?);
        rest = rest[end + 1..].trim_start_matches([',', ' ', '\t']);
    }
    Ok(out)
}

/// Parses `key=value` tokens into pairs, rejecting anything else.
pub(crate) fn key_values(tokens: &[&str]) -> std::result::Result<Vec<(String, String)>, String> {
    tokens
        .iter()
        .map(|t| {
            t.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| format!("expected key=value, got `{t}`"))
        })
        .collect()
}
