use crate::element::ElementId;
use crate::error::{Error, Result};

const UNDEFINED: u32 = u32::MAX;

/// Square composition table whose cells are either a defined product or
/// undefined.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialTable {
    size: usize,
    cells: Vec<u32>,
}

impl PartialTable {
    /// A table of the given size with every cell undefined.
    pub fn undefined(size: usize) -> Self {
        PartialTable { size, cells: vec![UNDEFINED; size * size] }
    }

    pub fn from_fn<F>(size: usize, mut cell: F) -> Self
    where
        F: FnMut(ElementId, ElementId) -> Option<ElementId>,
    {
        let mut table = PartialTable::undefined(size);
        for x in 0..size {
            for y in 0..size {
                let value = cell(ElementId::new(x), ElementId::new(y));
                table.cells[x * size + y] = value.map_or(UNDEFINED, |v| v.index() as u32);
            }
        }
        table
    }

    /// Builds a table from explicit rows; every row must have `rows.len()` entries.
    pub fn from_rows(rows: &[Vec<Option<ElementId>>]) -> Result<Self> {
        let size = rows.len();
        let mut table = PartialTable::undefined(size);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::LengthMismatch { field: "table row", expected: size, found: row.len() });
            }
            for (y, cell) in row.iter().enumerate() {
                table.set(ElementId::new(x), ElementId::new(y), *cell);
            }
        }
        Ok(table)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        match self.cells[x.index() * self.size + y.index()] {
            UNDEFINED => None,
            v => Some(ElementId::new(v as usize)),
        }
    }

    pub fn set(&mut self, x: ElementId, y: ElementId, value: Option<ElementId>) {
        self.cells[x.index() * self.size + y.index()] = value.map_or(UNDEFINED, |v| v.index() as u32);
    }

    pub fn defined_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c != UNDEFINED).count()
    }

    pub fn row(&self, x: ElementId) -> impl Iterator<Item = Option<ElementId>> + '_ {
        let start = x.index() * self.size;
        self.cells[start..start + self.size].iter().map(|&c| {
            if c == UNDEFINED {
                None
            } else {
                Some(ElementId::new(c as usize))
            }
        })
    }

    /// First defined cell whose value is not a valid element index.
    pub(crate) fn first_out_of_range(&self) -> Option<(usize, usize, usize)> {
        self.cells.iter().enumerate().find_map(|(i, &c)| {
            (c != UNDEFINED && c as usize >= self.size).then(|| (i / self.size, i % self.size, c as usize))
        })
    }
}

impl std::fmt::Debug for PartialTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut list = f.debug_list();
        for x in 0..self.size {
            let row: Vec<Option<usize>> = self.row(ElementId::new(x)).map(|c| c.map(ElementId::index)).collect();
            list.entry(&row);
        }
        list.finish()
    }
}
