use std::collections::HashMap;

use thiserror::Error;

use super::lex::{self, error, Line, ParseError, ParseErrorKind, Token};
use crate::almost::{AlmostGroupoid, AlmostParts};
use crate::brandt::{BrandtGroupoid, BrandtParts};
use crate::element::{name_problem, ElementId, MAX_ORDER};
use crate::error::Error;
use crate::table::PartialTable;
use crate::{Kind, Structure};

/// Either a malformed document or a well-formed one that does not describe
/// a valid structure.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Anchors {
    Theta(Vec<ElementId>),
    AlphaBeta(Vec<ElementId>, Vec<ElementId>),
}

/// The resolved contents of a structure file, before verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgtDocument {
    pub names: Vec<String>,
    pub units: Vec<ElementId>,
    pub anchors: Anchors,
    pub iota: Vec<ElementId>,
    pub table: PartialTable,
}

/// Section lines collected from a document, keyed by section name.
pub(super) struct Sections<'a> {
    pub found: HashMap<&'static str, (usize, Vec<Token<'a>>)>,
    pub line_count: usize,
    pub rows: Vec<Line<'a>>,
    pub table_line: Option<Line<'a>>,
}

impl<'a> Sections<'a> {
    /// Walks the lines after the header. Sections listed in `repeatable`
    /// accumulate; a `table:` section, when known, takes the next n lines
    /// where n is the number of `elements:` entries seen so far.
    pub fn collect(lines: &[Line<'a>], known: &[&'static str], repeatable: &[&str]) -> Result<Self, ParseError> {
        let mut sections = Sections { found: HashMap::new(), line_count: 0, rows: Vec::new(), table_line: None };
        let mut i = 0;
        while i < lines.len() {
            let line = &lines[i];
            i += 1;
            let Some((key, tokens)) = line.section() else {
                return Err(line.error(ParseErrorKind::Lexical("expected a 'section:' line".into())));
            };
            let Some(&key) = known.iter().find(|k| **k == key) else {
                return Err(line.error(ParseErrorKind::UnknownSection(key.to_owned())));
            };
            if key == "table" {
                if sections.table_line.is_some() {
                    return Err(line.error(ParseErrorKind::DuplicateSection("table")));
                }
                if let Some(extra) = tokens.first() {
                    return Err(
                        extra.error(ParseErrorKind::Lexical("table rows start on the line after 'table:'".into()))
                    );
                }
                let n = match sections.found.get("elements") {
                    Some((_, names)) => names.len(),
                    None => return Err(line.error(ParseErrorKind::Lexical("'table:' must follow 'elements:'".into()))),
                };
                let rows = &lines[i..lines.len().min(i + n)];
                if rows.len() < n {
                    return Err(line.error(ParseErrorKind::MissingRows { expected: n, found: rows.len() }));
                }
                sections.rows = rows.to_vec();
                sections.table_line = Some(line.clone());
                i += n;
                continue;
            }
            match sections.found.get_mut(key) {
                Some((_, existing)) if repeatable.contains(&key) => existing.extend(tokens),
                Some(_) => return Err(line.error(ParseErrorKind::DuplicateSection(key))),
                None => {
                    sections.found.insert(key, (line.number, tokens));
                }
            }
        }
        sections.line_count = lines.last().map_or(1, |l| l.number);
        Ok(sections)
    }

    pub fn take(&mut self, key: &'static str) -> Option<(usize, Vec<Token<'a>>)> {
        self.found.remove(key)
    }

    pub fn require(&mut self, key: &'static str) -> Result<(usize, Vec<Token<'a>>), ParseError> {
        let end = self.line_count + 1;
        self.take(key).ok_or_else(|| error(end, 1, ParseErrorKind::MissingSection(key)))
    }

    pub fn kind(&mut self) -> Result<(usize, Token<'a>), ParseError> {
        let (line, tokens) = self.require("kind")?;
        match tokens.as_slice() {
            [kind] => Ok((line, kind.clone())),
            _ => Err(arity(line, &tokens, "kind", 1)),
        }
    }
}

pub(super) fn arity(line: usize, tokens: &[Token<'_>], section: &str, expected: usize) -> ParseError {
    let column = tokens.get(expected).or(tokens.first()).map_or(1, |t| t.column);
    error(line, column, ParseErrorKind::WrongArity { section: section.to_owned(), expected, found: tokens.len() })
}

/// Validated declared names with their lookup.
pub(super) fn declare(
    line: usize,
    tokens: &[Token<'_>],
) -> Result<(Vec<String>, HashMap<String, ElementId>), ParseError> {
    if tokens.is_empty() {
        return Err(error(line, 1, ParseErrorKind::EmptyCarrier));
    }
    if tokens.len() > MAX_ORDER {
        return Err(tokens[MAX_ORDER].error(ParseErrorKind::TooLarge { order: tokens.len(), max: MAX_ORDER }));
    }
    let mut lookup = HashMap::with_capacity(tokens.len());
    for (i, t) in tokens.iter().enumerate() {
        if let Some(reason) = name_problem(t.text) {
            return Err(t.error(ParseErrorKind::InvalidName { name: t.text.to_owned(), reason }));
        }
        if lookup.insert(t.text.to_owned(), ElementId::new(i)).is_some() {
            return Err(t.error(ParseErrorKind::DuplicateName(t.text.to_owned())));
        }
    }
    Ok((tokens.iter().map(|t| t.text.to_owned()).collect(), lookup))
}

pub(super) fn resolve(lookup: &HashMap<String, ElementId>, t: &Token<'_>) -> Result<ElementId, ParseError> {
    lookup.get(t.text).copied().ok_or_else(|| t.error(ParseErrorKind::UnknownName(t.text.to_owned())))
}

fn map_section(
    sections: &mut Sections<'_>,
    key: &'static str,
    lookup: &HashMap<String, ElementId>,
) -> Result<Vec<ElementId>, ParseError> {
    let (line, tokens) = sections.require(key)?;
    let n = lookup.len();
    if tokens.len() != n {
        return Err(arity(line, &tokens, key, n));
    }
    tokens.iter().map(|t| resolve(lookup, t)).collect()
}

const STRUCTURE_SECTIONS: [&str; 8] = ["kind", "elements", "units", "theta", "alpha", "beta", "iota", "table"];

impl AgtDocument {
    pub fn parse(text: &str) -> Result<AgtDocument, ParseError> {
        let lines = lex::lines(text)?;
        let body = lex::header(&lines)?;
        let mut sections = Sections::collect(body, &STRUCTURE_SECTIONS, &[])?;
        let (_, kind) = sections.kind()?;
        let kind = match kind.text {
            "almost" => Kind::Almost,
            "brandt" => Kind::Brandt,
            other => return Err(kind.error(ParseErrorKind::UnknownKind(other.to_owned()))),
        };
        let unexpected: &[&'static str] = match kind {
            Kind::Almost => &["alpha", "beta"],
            Kind::Brandt => &["theta"],
        };
        for &key in unexpected {
            if let Some((line, _)) = sections.take(key) {
                return Err(error(
                    line,
                    1,
                    ParseErrorKind::UnexpectedSection { section: key, kind: kind.as_str().to_owned() },
                ));
            }
        }

        let (elements_line, element_tokens) = sections.require("elements")?;
        let (names, lookup) = declare(elements_line, &element_tokens)?;
        let n = names.len();
        let (_, unit_tokens) = sections.require("units")?;
        let units = unit_tokens.iter().map(|t| resolve(&lookup, t)).collect::<Result<Vec<_>, _>>()?;
        let anchors = match kind {
            Kind::Almost => Anchors::Theta(map_section(&mut sections, "theta", &lookup)?),
            Kind::Brandt => {
                let alpha = map_section(&mut sections, "alpha", &lookup)?;
                Anchors::AlphaBeta(alpha, map_section(&mut sections, "beta", &lookup)?)
            }
        };
        let iota = map_section(&mut sections, "iota", &lookup)?;
        if sections.table_line.is_none() {
            return Err(error(sections.line_count + 1, 1, ParseErrorKind::MissingSection("table")));
        }
        let mut table = PartialTable::undefined(n);
        for (i, row) in sections.rows.iter().enumerate() {
            if row.tokens.len() != n {
                return Err(arity(row.number, &row.tokens, &format!("table row {}", i + 1), n));
            }
            for (j, t) in row.tokens.iter().enumerate() {
                let cell = if t.text == "." { None } else { Some(resolve(&lookup, t)?) };
                table.set(ElementId::new(i), ElementId::new(j), cell);
            }
        }
        Ok(AgtDocument { names, units, anchors, iota, table })
    }

    pub fn kind(&self) -> Kind {
        match self.anchors {
            Anchors::Theta(_) => Kind::Almost,
            Anchors::AlphaBeta(..) => Kind::Brandt,
        }
    }

    /// Runs the verifying constructor for the document's kind.
    pub fn into_structure(self) -> Result<Structure, Error> {
        let AgtDocument { names, units, anchors, iota, table } = self;
        Ok(match anchors {
            Anchors::Theta(theta) => {
                Structure::Almost(AlmostGroupoid::new(AlmostParts { names, units, theta, iota, table })?)
            }
            Anchors::AlphaBeta(alpha, beta) => {
                Structure::Brandt(BrandtGroupoid::new(BrandtParts { names, units, alpha, beta, iota, table })?)
            }
        })
    }

    pub fn from_structure(s: &Structure) -> AgtDocument {
        match s {
            Structure::Almost(g) => {
                let p = g.to_parts();
                AgtDocument {
                    names: p.names,
                    units: p.units,
                    anchors: Anchors::Theta(p.theta),
                    iota: p.iota,
                    table: p.table,
                }
            }
            Structure::Brandt(b) => {
                let p = b.to_parts();
                AgtDocument {
                    names: p.names,
                    units: p.units,
                    anchors: Anchors::AlphaBeta(p.alpha, p.beta),
                    iota: p.iota,
                    table: p.table,
                }
            }
        }
    }

    /// Canonical text: fixed section order, single spaces, one row per element.
    pub fn to_text(&self) -> String {
        let name = |x: &ElementId| self.names[x.index()].as_str();
        let list = |xs: &[ElementId]| xs.iter().map(name).collect::<Vec<_>>().join(" ");
        let mut out = String::from("agt 1\n");
        out += &format!("kind: {}\n", self.kind().as_str());
        out += &format!("elements: {}\n", self.names.join(" "));
        out += &format!("units: {}\n", list(&self.units));
        match &self.anchors {
            Anchors::Theta(theta) => out += &format!("theta: {}\n", list(theta)),
            Anchors::AlphaBeta(alpha, beta) => {
                out += &format!("alpha: {}\n", list(alpha));
                out += &format!("beta: {}\n", list(beta));
            }
        }
        out += &format!("iota: {}\n", list(&self.iota));
        out += "table:\n";
        for i in 0..self.names.len() {
            let row: Vec<&str> = self.table.row(ElementId::new(i)).map(|c| c.as_ref().map_or(".", name)).collect();
            out += &row.join(" ");
            out.push('\n');
        }
        out
    }
}

/// Parses and verifies a structure file.
pub fn parse(text: &str) -> Result<Structure, LoadError> {
    Ok(AgtDocument::parse(text)?.into_structure()?)
}

/// [`parse`] for raw bytes; invalid UTF-8 is a lexical error.
pub fn parse_bytes(bytes: &[u8]) -> Result<Structure, LoadError> {
    parse(lex::utf8(bytes)?)
}

pub fn serialize(s: &Structure) -> String {
    AgtDocument::from_structure(s).to_text()
}
