use std::fmt;

use crate::element::ElementId;

/// A law checked by one of the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    /// A cell is defined exactly for composable pairs.
    TableDomain,
    ThetaSurjective,
    /// Associativity, including the definedness biconditional.
    Ag1,
    /// Units: θ(x)·x = x·θ(x) = x.
    Ag2,
    /// Inverses: x·x⁻¹ = x⁻¹·x = θ(x).
    Ag3,
    AlphaBetaSurjective,
    IotaInjective,
    BrandtAssociativity,
    BrandtIdentities,
    BrandtInverses,

    // Consequences of the axioms.
    UnitFixed,
    UnitIdempotent,
    UnitSelfInverse,
    UnitOfProduct,
    UnitOfInverse,
    ThetaIdempotent,
    Cancellation,
    InverseOfProduct,
    DoubleInverse,
    Division,
    ThetaIota,
    IotaInvolution,
    UniqueUnits,
    PowersDefined,
    SourceOfProduct,
    TargetOfProduct,
    AnchorOfInverse,
}

impl Law {
    pub const ALMOST_AXIOMS: [Law; 5] = [Law::TableDomain, Law::ThetaSurjective, Law::Ag1, Law::Ag2, Law::Ag3];

    pub const BRANDT_AXIOMS: [Law; 6] = [
        Law::TableDomain,
        Law::AlphaBetaSurjective,
        Law::IotaInjective,
        Law::BrandtAssociativity,
        Law::BrandtIdentities,
        Law::BrandtInverses,
    ];

    pub const ALMOST_IDENTITIES: [Law; 14] = [
        Law::UnitFixed,
        Law::UnitIdempotent,
        Law::UnitSelfInverse,
        Law::UnitOfProduct,
        Law::UnitOfInverse,
        Law::ThetaIdempotent,
        Law::Cancellation,
        Law::InverseOfProduct,
        Law::DoubleInverse,
        Law::Division,
        Law::ThetaIota,
        Law::IotaInvolution,
        Law::UniqueUnits,
        Law::PowersDefined,
    ];

    pub const BRANDT_IDENTITIES: [Law; 7] = [
        Law::UnitFixed,
        Law::UnitIdempotent,
        Law::SourceOfProduct,
        Law::TargetOfProduct,
        Law::AnchorOfInverse,
        Law::IotaInvolution,
        Law::InverseOfProduct,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Law::TableDomain => "TableDomain",
            Law::ThetaSurjective => "ThetaSurjective",
            Law::Ag1 => "AG1",
            Law::Ag2 => "AG2",
            Law::Ag3 => "AG3",
            Law::AlphaBetaSurjective => "AlphaBetaSurjective",
            Law::IotaInjective => "IotaInjective",
            Law::BrandtAssociativity => "B1",
            Law::BrandtIdentities => "B2",
            Law::BrandtInverses => "B3",
            Law::UnitFixed => "UnitFixed",
            Law::UnitIdempotent => "UnitIdempotent",
            Law::UnitSelfInverse => "UnitSelfInverse",
            Law::UnitOfProduct => "UnitOfProduct",
            Law::UnitOfInverse => "UnitOfInverse",
            Law::ThetaIdempotent => "ThetaIdempotent",
            Law::Cancellation => "Cancellation",
            Law::InverseOfProduct => "InverseOfProduct",
            Law::DoubleInverse => "DoubleInverse",
            Law::Division => "Division",
            Law::ThetaIota => "ThetaIota",
            Law::IotaInvolution => "IotaInvolution",
            Law::UniqueUnits => "UniqueUnits",
            Law::PowersDefined => "PowersDefined",
            Law::SourceOfProduct => "SourceOfProduct",
            Law::TargetOfProduct => "TargetOfProduct",
            Law::AnchorOfInverse => "AnchorOfInverse",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    /// Up to three elements exhibiting the failure.
    pub witness: Vec<ElementId>,
    pub message: String,
}

/// Outcome of an exhaustive check. `laws` lists what was checked, in order;
/// violations are grouped by law and sorted by witness within each law.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub laws: Vec<Law>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn holds(&self, law: Law) -> bool {
        !self.violations.iter().any(|v| v.law == law)
    }

    pub fn violations_of(&self, law: Law) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.law == law)
    }
}

/// Collects violations for one law at a time.
pub(crate) struct ReportBuilder {
    report: VerificationReport,
}

impl ReportBuilder {
    pub(crate) fn new() -> Self {
        ReportBuilder { report: VerificationReport::default() }
    }

    pub(crate) fn law(&mut self, law: Law, mut found: Vec<Violation>) {
        found.sort_by(|a, b| a.witness.cmp(&b.witness));
        self.report.laws.push(law);
        self.report.violations.extend(found);
    }

    pub(crate) fn finish(self) -> VerificationReport {
        self.report
    }
}

pub(crate) fn violation(law: Law, witness: &[ElementId], message: String) -> Violation {
    Violation { law, witness: witness.iter().copied().take(3).collect(), message }
}
