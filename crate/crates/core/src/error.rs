use thiserror::Error;

use crate::element::ElementId;
use crate::report::VerificationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Reasons a table fails to be a group table.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroupDefect {
    #[error("table is not square or has an entry out of range")]
    Malformed,
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(ElementId),
    #[error("associativity fails for ({0}, {1}, {2})")]
    NotAssociative(ElementId, ElementId, ElementId),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for a carrier of {order} elements")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("product {x} * {y} is undefined")]
    UndefinedProduct { x: ElementId, y: ElementId },
    #[error("element {0} is not a unit")]
    NotAUnit(ElementId),
    #[error("no element named '{0}'")]
    UnknownName(String),
    #[error("invalid element name '{name}': {reason}")]
    InvalidName { name: String, reason: &'static str },
    #[error("duplicate element name '{0}'")]
    DuplicateName(String),
    #[error("carrier must not be empty")]
    EmptyCarrier,
    #[error("carrier of {order} elements exceeds the limit of {max}")]
    TooLarge { order: usize, max: usize },
    #[error("{field} has {found} entries, expected {expected}")]
    LengthMismatch { field: &'static str, expected: usize, found: usize },
    #[error("{field} refers to index {index}, carrier has {order} elements")]
    EntryOutOfRange { field: &'static str, index: usize, order: usize },
    #[error("unit {0} listed twice")]
    DuplicateUnit(ElementId),
    #[error("structure failed verification ({} violations)", .0.violations.len())]
    Verification(Box<VerificationReport>),
    #[error("subset belongs to a different structure")]
    ForeignSubset,
    #[error("subset must not be empty")]
    EmptySubset,
    #[error("family of subsets must not be empty")]
    EmptyFamily,
    #[error("subsets are not disjoint: both contain {0}")]
    NotDisjoint(ElementId),
    #[error("member {index} of the family is not a subgroupoid")]
    NotSubgroupoid { index: usize },
    #[error("intersection is empty")]
    EmptyIntersection,
    #[error("not an almost groupoid: source and target of {witness} differ")]
    NotAlmost { witness: ElementId },
    #[error("not a group: {0}")]
    NotAGroup(GroupDefect),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parameter out of range: {0}")]
    Bounds(String),
    #[error("family spec: {0}")]
    FamilySyntax(String),
    #[error("morphism shape mismatch: {0}")]
    MorphismShape(String),
    #[error("isomorphism search is limited to {max} elements, got {order}")]
    SearchTooLarge { order: usize, max: usize },
}
