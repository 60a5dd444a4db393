use crate::element::ElementId;
use crate::error::{Error, Result};
use crate::Structure;

/// Largest carrier [`render_tables`] will lay out.
pub const RENDER_LIMIT: usize = 64;

/// Lays out a grid with a right-aligned label column and right-aligned
/// cells, a rule under the first row, and trailing spaces trimmed.
fn grid(rows: &[(String, Vec<String>)]) -> String {
    let label_width = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let columns = rows.first().map_or(0, |(_, cells)| cells.len());
    let widths: Vec<usize> =
        (0..columns).map(|j| rows.iter().map(|(_, cells)| cells[j].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for (i, (label, cells)) in rows.iter().enumerate() {
        let mut line = format!("{label:>label_width$} |");
        for (cell, &w) in cells.iter().zip(&widths) {
            line += &format!(" {cell:>w$}");
        }
        out += line.trim_end();
        out.push('\n');
        if i == 0 {
            out += &"-".repeat(label_width + 1);
            out.push('+');
            out += &"-".repeat(widths.iter().map(|w| w + 1).sum());
            out.push('\n');
        }
    }
    out
}

/// Two tables: each element with its anchor and inverse images, then the
/// multiplication grid with blanks for undefined products.
pub fn render_tables(s: &Structure) -> Result<String> {
    let g = s.groupoid();
    let n = g.order();
    if n > RENDER_LIMIT {
        return Err(Error::Bounds(format!("tables are rendered for at most {RENDER_LIMIT} elements, got {n}")));
    }
    let ids = || (0..n).map(ElementId::new);
    let row = |label: &str, f: &dyn Fn(ElementId) -> ElementId| {
        (label.to_owned(), ids().map(|x| g.name(f(x)).to_owned()).collect())
    };
    let mut maps = vec![(String::from("g"), g.names().to_vec())];
    match s {
        Structure::Almost(_) => maps.push(row("theta(g)", &|x| g.source_unit(x))),
        Structure::Brandt(_) => {
            maps.push(row("alpha(g)", &|x| g.source_unit(x)));
            maps.push(row("beta(g)", &|x| g.target_unit(x)));
        }
    }
    maps.push(row("iota(g)", &|x| g.inverse(x)));

    let mut mul = vec![(String::from("mul"), g.names().to_vec())];
    for x in ids() {
        let cells = ids().map(|y| g.product(x, y).map_or(String::new(), |z| g.name(z).to_owned())).collect();
        mul.push((g.name(x).to_owned(), cells));
    }
    Ok(format!("{}\n{}", grid(&maps), grid(&mul)))
}
