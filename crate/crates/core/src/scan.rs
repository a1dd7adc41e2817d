//! Shared line/token scanner for the text formats.

use thiserror::Error;

/// Parse failure in one of the text formats, with 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Tok<'a> {
    pub text: &'a str,
    pub line: usize,
    pub col: usize,
}

impl<'a> Tok<'a> {
    pub fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, msg)
    }
}

/// One non-empty input line, split on whitespace, `#` comments stripped.
#[derive(Debug, Clone)]
pub(crate) struct Line<'a> {
    pub no: usize,
    pub toks: Vec<Tok<'a>>,
}

impl<'a> Line<'a> {
    pub fn err(&self, msg: impl Into<String>) -> ParseError {
        let col = self.toks.last().map_or(1, |t| t.col + t.text.len());
        ParseError::new(self.no, col, msg)
    }

    /// Token at position `i`, or an error naming what was expected.
    pub fn tok(&self, i: usize, what: &str) -> Result<Tok<'a>, ParseError> {
        self.toks.get(i).copied().ok_or_else(|| self.err(format!("expected {what}")))
    }
}

/// Split input into lines of whitespace-separated tokens. `extra_breaks`
/// lists single characters that form tokens of their own (e.g. `(`).
pub(crate) fn scan_lines<'a>(input: &'a str, extra_breaks: &[char]) -> Vec<Line<'a>> {
    let mut out = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let mut toks = Vec::new();
        let mut start: Option<usize> = None;
        let flush = |toks: &mut Vec<Tok<'a>>, start: &mut Option<usize>, end: usize| {
            if let Some(s) = start.take() {
                toks.push(Tok { text: &content[s..end], line: line_no, col: s + 1 });
            }
        };
        for (pos, ch) in content.char_indices() {
            if ch.is_whitespace() {
                flush(&mut toks, &mut start, pos);
            } else if extra_breaks.contains(&ch) {
                flush(&mut toks, &mut start, pos);
                toks.push(Tok { text: &content[pos..pos + ch.len_utf8()], line: line_no, col: pos + 1 });
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        flush(&mut toks, &mut start, content.len());
        if !toks.is_empty() {
            out.push(Line { no: line_no, toks });
        }
    }
    out
}

/// Checks a generator/arc/band name: identifier-like, no format metacharacters.
pub(crate) fn check_name(t: &Tok) -> Result<String, ParseError> {
    let ok = !t.text.is_empty()
        && t.text.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && t.text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
    if ok {
        Ok(t.text.to_string())
    } else {
        Err(t.err(format!("invalid name `{}`", t.text)))
    }
}

pub(crate) fn parse_usize(t: &Tok, what: &str) -> Result<usize, ParseError> {
    t.text.parse().map_err(|_| t.err(format!("expected {what}, found `{}`", t.text)))
}
