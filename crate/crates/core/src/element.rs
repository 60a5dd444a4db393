use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Largest carrier any structure may have.
pub const MAX_ORDER: usize = 4096;

/// Index of an element in the carrier of its owning structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(u32);

impl ElementId {
    pub const fn new(index: usize) -> Self {
        ElementId(index as u32)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(index: usize) -> Self {
        ElementId::new(index)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Identity of a verified structure. Subsets remember which structure they
/// were drawn from; clones of a structure share its identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StructureId(u64);

impl StructureId {
    pub(crate) fn fresh() -> Self {
        static NEXT: AtomicU64 = AtomicU64::new(1);
        StructureId(NEXT.fetch_add(1, Ordering::Relaxed))
    }
}

/// Why a display name was rejected, or `None` if it is acceptable.
pub fn name_problem(name: &str) -> Option<&'static str> {
    if name.is_empty() {
        Some("name is empty")
    } else if name == "." {
        Some("'.' is reserved for undefined cells")
    } else if name.chars().any(char::is_whitespace) {
        Some("name contains whitespace")
    } else if name.contains('#') {
        Some("name contains '#'")
    } else {
        None
    }
}

/// Validates display names and builds the name-to-index lookup.
pub(crate) fn name_lookup(names: &[String]) -> Result<HashMap<String, ElementId>> {
    let mut lookup = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if let Some(reason) = name_problem(name) {
            return Err(Error::InvalidName { name: name.clone(), reason });
        }
        if lookup.insert(name.clone(), ElementId::new(i)).is_some() {
            return Err(Error::DuplicateName(name.clone()));
        }
    }
    Ok(lookup)
}
