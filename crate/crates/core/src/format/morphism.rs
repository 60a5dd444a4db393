use std::collections::HashMap;

use super::agt::{arity, LoadError, Sections};
use super::lex::{self, error, ParseError, ParseErrorKind, Token};
use crate::element::ElementId;
use crate::morphism::MorphismPair;
use crate::structure::FiniteGroupoid;

/// Splits `a=b` where either name may itself contain `=`; the first split
/// with a source name on the left and a target name on the right wins.
fn split_pair<S, T>(src: &S, dst: &T, t: &Token<'_>) -> Result<(ElementId, ElementId), ParseError>
where
    S: FiniteGroupoid + ?Sized,
    T: FiniteGroupoid + ?Sized,
{
    let text = t.text;
    text.match_indices('=')
        .find_map(|(at, _)| Some((src.element(&text[..at])?, dst.element(&text[at + 1..])?)))
        .ok_or_else(|| t.error(ParseErrorKind::BadMapping(text.to_owned())))
}

fn mapping<S, T>(
    src: &S,
    dst: &T,
    domain: &[ElementId],
    line: usize,
    tokens: &[Token<'_>],
) -> Result<Vec<ElementId>, ParseError>
where
    S: FiniteGroupoid + ?Sized,
    T: FiniteGroupoid + ?Sized,
{
    let position: HashMap<ElementId, usize> = domain.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut image = vec![None; domain.len()];
    for t in tokens {
        let (x, y) = split_pair(src, dst, t)?;
        let Some(&i) = position.get(&x) else {
            return Err(t.error(ParseErrorKind::BadMapping(t.text.to_owned())));
        };
        if image[i].replace(y).is_some() {
            return Err(t.error(ParseErrorKind::DuplicateMapping(src.name(x).to_owned())));
        }
    }
    image
        .iter()
        .zip(domain)
        .map(|(y, &x)| y.ok_or_else(|| error(line, 1, ParseErrorKind::MissingMapping(src.name(x).to_owned()))))
        .collect()
}

/// Reads a morphism file against its source and target structures. Without
/// a `units-map:` line the units map is the carrier map on units.
pub fn parse_morphism<S, T>(text: &str, src: &S, dst: &T) -> Result<MorphismPair, LoadError>
where
    S: FiniteGroupoid + ?Sized,
    T: FiniteGroupoid + ?Sized,
{
    let lines = lex::lines(text)?;
    let body = lex::header(&lines)?;
    let mut sections = Sections::collect(body, &["kind", "map", "units-map"], &["map", "units-map"])?;
    let (_, kind) = sections.kind()?;
    if kind.text != "morphism" {
        return Err(kind.error(ParseErrorKind::UnknownKind(kind.text.to_owned())).into());
    }
    let (map_line, map_tokens) = sections.require("map")?;
    let carrier: Vec<ElementId> = (0..src.order()).map(ElementId::new).collect();
    if map_tokens.len() > carrier.len() {
        return Err(arity(map_line, &map_tokens, "map", carrier.len()).into());
    }
    let f = mapping(src, dst, &carrier, map_line, &map_tokens)?;
    let f0 = match sections.take("units-map") {
        Some((line, tokens)) => mapping(src, dst, src.units(), line, &tokens)?,
        None => src.units().iter().map(|u| f[u.index()]).collect(),
    };
    Ok(MorphismPair { f, f0 })
}

/// Canonical morphism file; the units map is written out only when it
/// differs from the carrier map on units.
pub fn serialize_morphism<S, T>(src: &S, dst: &T, m: &MorphismPair) -> String
where
    S: FiniteGroupoid + ?Sized,
    T: FiniteGroupoid + ?Sized,
{
    let pair = |x: ElementId, y: ElementId| format!("{}={}", src.name(x), dst.name(y));
    let map: Vec<String> = m.f.iter().enumerate().map(|(x, &y)| pair(ElementId::new(x), y)).collect();
    let mut out = format!("agt 1\nkind: morphism\nmap: {}\n", map.join(" "));
    let restricted = src.units().iter().map(|u| m.f[u.index()]).eq(m.f0.iter().copied());
    if !restricted {
        let units: Vec<String> = src.units().iter().zip(&m.f0).map(|(&u, &v)| pair(u, v)).collect();
        out += &format!("units-map: {}\n", units.join(" "));
    }
    out
}
