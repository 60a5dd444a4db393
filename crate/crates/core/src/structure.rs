use std::collections::HashMap;

use crate::element::{ElementId, StructureId};
use crate::error::{Error, Result};
use crate::table::PartialTable;

/// An ordered subset of the carrier of one structure: strictly increasing,
/// no duplicates, tagged with its owner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSubset {
    owner: StructureId,
    members: Vec<ElementId>,
}

impl ElementSubset {
    /// `members` must already be sorted and deduplicated.
    pub(crate) fn from_sorted(owner: StructureId, members: Vec<ElementId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        ElementSubset { owner, members }
    }

    pub(crate) fn from_unsorted(owner: StructureId, mut members: Vec<ElementId>) -> Self {
        members.sort_unstable();
        members.dedup();
        ElementSubset { owner, members }
    }

    pub fn owner(&self) -> StructureId {
        self.owner
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &ElementSubset) -> bool {
        self.owner == other.owner && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_disjoint_from(&self, other: &ElementSubset) -> bool {
        self.first_common(other).is_none()
    }

    pub(crate) fn first_common(&self, other: &ElementSubset) -> Option<ElementId> {
        self.members.iter().copied().find(|&x| other.contains(x))
    }

    pub(crate) fn union(&self, other: &ElementSubset) -> ElementSubset {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        ElementSubset::from_unsorted(self.owner, members)
    }

    pub(crate) fn intersection(&self, other: &ElementSubset) -> ElementSubset {
        let members = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        ElementSubset::from_sorted(self.owner, members)
    }

    /// Membership as a dense bitmap over a carrier of `order` elements.
    pub(crate) fn mask(&self, order: usize) -> Vec<bool> {
        let mut mask = vec![false; order];
        for &x in &self.members {
            mask[x.index()] = true;
        }
        mask
    }
}

/// Surface shared by almost groupoids and Brandt groupoids. For an almost
/// groupoid both anchors are θ.
pub trait FiniteGroupoid {
    fn structure_id(&self) -> StructureId;
    fn names(&self) -> &[String];
    fn name_lookup(&self) -> &HashMap<String, ElementId>;
    fn units(&self) -> &[ElementId];
    fn is_unit(&self, x: ElementId) -> bool;
    /// α(x), or θ(x).
    fn source_unit(&self, x: ElementId) -> ElementId;
    /// β(x), or θ(x).
    fn target_unit(&self, x: ElementId) -> ElementId;
    fn inverse(&self, x: ElementId) -> ElementId;
    fn table(&self) -> &PartialTable;

    fn order(&self) -> usize {
        self.names().len()
    }

    fn name(&self, x: ElementId) -> &str {
        &self.names()[x.index()]
    }

    fn element(&self, name: &str) -> Option<ElementId> {
        self.name_lookup().get(name).copied()
    }

    fn product(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.table().get(x, y)
    }

    /// Position of `x` in the ordered unit list.
    fn unit_position(&self, x: ElementId) -> Option<usize> {
        self.units().binary_search(&x).ok()
    }

    fn check_index(&self, x: ElementId) -> Result<ElementId> {
        if x.index() < self.order() {
            Ok(x)
        } else {
            Err(Error::IndexOutOfRange { index: x.index(), order: self.order() })
        }
    }

    fn owns(&self, subset: &ElementSubset) -> Result<()> {
        if subset.owner() == self.structure_id() {
            Ok(())
        } else {
            Err(Error::ForeignSubset)
        }
    }

    fn subset<I>(&self, elements: I) -> Result<ElementSubset>
    where
        I: IntoIterator<Item = ElementId>,
        Self: Sized,
    {
        let members = elements.into_iter().map(|x| self.check_index(x)).collect::<Result<Vec<_>>>()?;
        Ok(ElementSubset::from_unsorted(self.structure_id(), members))
    }

    fn subset_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<ElementSubset>
    where
        Self: Sized,
    {
        let members = names
            .iter()
            .map(|n| self.element(n.as_ref()).ok_or_else(|| Error::UnknownName(n.as_ref().to_owned())))
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementSubset::from_unsorted(self.structure_id(), members))
    }

    fn whole(&self) -> ElementSubset {
        ElementSubset::from_sorted(self.structure_id(), (0..self.order()).map(ElementId::new).collect())
    }

    fn unit_set(&self) -> ElementSubset {
        ElementSubset::from_sorted(self.structure_id(), self.units().to_vec())
    }

    fn names_of(&self, subset: &ElementSubset) -> Vec<&str> {
        subset.iter().map(|x| self.name(x)).collect()
    }
}
