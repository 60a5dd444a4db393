//! Line and token splitting shared by structure and morphism files.

use std::fmt;

use thiserror::Error;

/// A parse failure with a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    VersionMismatch(String),
    Lexical(String),
    UnknownSection(String),
    DuplicateSection(&'static str),
    MissingSection(&'static str),
    UnexpectedSection { section: &'static str, kind: String },
    UnknownKind(String),
    UnknownName(String),
    InvalidName { name: String, reason: &'static str },
    DuplicateName(String),
    WrongArity { section: String, expected: usize, found: usize },
    TooLarge { order: usize, max: usize },
    EmptyCarrier,
    MissingRows { expected: usize, found: usize },
    BadMapping(String),
    DuplicateMapping(String),
    MissingMapping(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => f.write_str("expected header 'agt 1'"),
            ParseErrorKind::VersionMismatch(v) => write!(f, "unsupported format version '{v}', expected 1"),
            ParseErrorKind::Lexical(msg) => f.write_str(msg),
            ParseErrorKind::UnknownSection(s) => write!(f, "unknown section '{s}'"),
            ParseErrorKind::DuplicateSection(s) => write!(f, "duplicate section '{s}'"),
            ParseErrorKind::MissingSection(s) => write!(f, "missing section '{s}'"),
            ParseErrorKind::UnexpectedSection { section, kind } => {
                write!(f, "section '{section}' is not allowed for kind {kind}")
            }
            ParseErrorKind::UnknownKind(k) => write!(f, "unknown kind '{k}'"),
            ParseErrorKind::UnknownName(n) => write!(f, "undeclared element '{n}'"),
            ParseErrorKind::InvalidName { name, reason } => write!(f, "invalid element name '{name}': {reason}"),
            ParseErrorKind::DuplicateName(n) => write!(f, "element '{n}' declared twice"),
            ParseErrorKind::WrongArity { section, expected, found } => {
                write!(f, "{section} has {found} entries, expected {expected}")
            }
            ParseErrorKind::TooLarge { order, max } => write!(f, "{order} elements exceed the limit of {max}"),
            ParseErrorKind::EmptyCarrier => f.write_str("no elements declared"),
            ParseErrorKind::MissingRows { expected, found } => write!(f, "table has {found} rows, expected {expected}"),
            ParseErrorKind::BadMapping(t) => write!(f, "'{t}' is not a source=target pair of declared names"),
            ParseErrorKind::DuplicateMapping(n) => write!(f, "element '{n}' mapped twice"),
            ParseErrorKind::MissingMapping(n) => write!(f, "no image given for '{n}'"),
        }
    }
}

pub(crate) fn error(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

impl Token<'_> {
    pub fn error(&self, kind: ParseErrorKind) -> ParseError {
        error(self.line, self.column, kind)
    }
}

/// A non-blank line with its comment stripped, split into tokens.
#[derive(Clone, Debug)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    pub fn error(&self, kind: ParseErrorKind) -> ParseError {
        let column = self.tokens.first().map_or(1, |t| t.column);
        error(self.number, column, kind)
    }

    /// `key:` prefix of a section line, with the tokens after it.
    pub fn section(&self) -> Option<(&'a str, Vec<Token<'a>>)> {
        let first = self.tokens.first()?;
        let (key, rest) = first.text.split_once(':')?;
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
            return None;
        }
        let mut tokens = Vec::with_capacity(self.tokens.len());
        if !rest.is_empty() {
            let column = first.column + key.chars().count() + 1;
            tokens.push(Token { text: rest, line: first.line, column });
        }
        tokens.extend(self.tokens[1..].iter().cloned());
        Some((key, tokens))
    }
}

/// Splits text into non-blank lines. Columns count characters from 1.
pub(crate) fn lines(text: &str) -> Result<Vec<Line<'_>>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let number = i + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let body = raw.split_once('#').map_or(raw, |(before, _)| before);
        if let Some((at, c)) = body.char_indices().find(|&(_, c)| c.is_control() && c != '\t') {
            let column = body[..at].chars().count() + 1;
            return Err(error(
                number,
                column,
                ParseErrorKind::Lexical(format!("unexpected control character {:?}", c)),
            ));
        }
        let mut tokens = Vec::new();
        let mut start: Option<(usize, usize)> = None;
        for (column, (at, c)) in (1..).zip(body.char_indices()) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some((at, column)),
                (true, Some((s, col))) => {
                    tokens.push(Token { text: &body[s..at], line: number, column: col });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((s, col)) = start {
            tokens.push(Token { text: &body[s..], line: number, column: col });
        }
        if !tokens.is_empty() {
            out.push(Line { number, tokens });
        }
    }
    Ok(out)
}

/// Checks the `agt 1` header and returns the remaining lines.
pub(crate) fn header<'a, 'b>(lines: &'b [Line<'a>]) -> Result<&'b [Line<'a>], ParseError> {
    let Some((first, rest)) = lines.split_first() else {
        return Err(error(1, 1, ParseErrorKind::MissingHeader));
    };
    match first.tokens.as_slice() {
        [magic, version] if magic.text == "agt" => {
            if version.text == "1" {
                Ok(rest)
            } else {
                Err(version.error(ParseErrorKind::VersionMismatch(version.text.to_owned())))
            }
        }
        _ => Err(first.error(ParseErrorKind::MissingHeader)),
    }
}

/// Converts bytes to text, reporting the position of the first invalid byte.
pub fn utf8(bytes: &[u8]) -> Result<&str, ParseError> {
    std::str::from_utf8(bytes).map_err(|e| {
        let valid = &bytes[..e.valid_up_to()];
        let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
        let line_start = valid.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
        let prefix = std::str::from_utf8(&valid[line_start..]).expect("prefix is valid UTF-8");
        error(line, prefix.chars().count() + 1, ParseErrorKind::Lexical("invalid UTF-8".into()))
    })
}
