//! The AGT text format and table rendering.
//!
//! ```text
//! agt 1
//! kind: almost
//! elements: u1 u2 p1 p2
//! units: u1 u2
//! theta: u1 u2 u1 u2
//! iota: u1 u2 p1 p2
//! table:
//! u1 . p1 .
//! . u2 . p2
//! p1 . u1 .
//! . p2 . u2
//! ```
//!
//! `#` starts a comment, blank lines are ignored and `.` marks an undefined
//! product. Brandt structures use `alpha:` and `beta:` in place of `theta:`.
//! Morphism files use `kind: morphism` with `map:` lines of `source=target`
//! pairs and an optional `units-map:` line.

mod agt;
mod lex;
mod morphism;
mod render;

pub use agt::{parse, parse_bytes, serialize, AgtDocument, Anchors, LoadError};
pub use lex::{utf8 as decode, ParseError, ParseErrorKind};
pub use morphism::{parse_morphism, serialize_morphism};
pub use render::render_tables;
