//! Brandt groupoids: source and target maps onto a unit set, with products
//! defined when the target of the left factor is the source of the right.

use std::collections::HashMap;

use crate::almost::{associativity, check_carrier, check_map, check_table, check_units, AlmostGroupoid, AlmostParts};
use crate::constructions::from_group;
use crate::element::{name_lookup, ElementId, StructureId};
use crate::error::{Error, Result};
use crate::report::{violation, Law, ReportBuilder, VerificationReport};
use crate::structure::{ElementSubset, FiniteGroupoid};
use crate::table::PartialTable;

/// Unverified fields of a Brandt groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrandtParts {
    pub names: Vec<String>,
    pub units: Vec<ElementId>,
    pub alpha: Vec<ElementId>,
    pub beta: Vec<ElementId>,
    pub iota: Vec<ElementId>,
    pub table: PartialTable,
}

impl BrandtParts {
    pub fn order(&self) -> usize {
        self.names.len()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.order();
        check_carrier(&self.names)?;
        check_map("alpha", &self.alpha, n)?;
        check_map("beta", &self.beta, n)?;
        check_map("iota", &self.iota, n)?;
        check_units(&self.units, n)?;
        check_table(&self.table, n)
    }
}

/// Exhaustively checks the table-domain law, surjectivity of α and β onto
/// the units, injectivity of ι, and the associativity, identity, and
/// inverse axioms.
pub fn verify_brandt(parts: &BrandtParts) -> Result<VerificationReport> {
    parts.check_shape()?;
    let n = parts.order();
    let ids = || (0..n).map(ElementId::new);
    let (alpha, beta, iota, table) = (&parts.alpha, &parts.beta, &parts.iota, &parts.table);
    let src = |x: ElementId| alpha[x.index()];
    let tgt = |x: ElementId| beta[x.index()];
    let nm = |x: ElementId| parts.names[x.index()].as_str();
    let mut report = ReportBuilder::new();

    let mut found = Vec::new();
    for x in ids() {
        for y in ids() {
            let defined = table.get(x, y).is_some();
            if defined != (tgt(x) == src(y)) {
                let msg = if defined {
                    format!("{} * {} is defined but beta({0}) != alpha({1})", nm(x), nm(y))
                } else {
                    format!("{} * {} is undefined but beta({0}) = alpha({1})", nm(x), nm(y))
                };
                found.push(violation(Law::TableDomain, &[x, y], msg));
            }
        }
    }
    report.law(Law::TableDomain, found);

    let mut is_unit = vec![false; n];
    for u in &parts.units {
        is_unit[u.index()] = true;
    }
    let mut found = Vec::new();
    for (label, map) in [("alpha", alpha), ("beta", beta)] {
        let mut hit = vec![false; n];
        for x in ids() {
            let t = map[x.index()];
            hit[t.index()] = true;
            if !is_unit[t.index()] {
                found.push(violation(
                    Law::AlphaBetaSurjective,
                    &[x],
                    format!("{label}({}) = {} is not a unit", nm(x), nm(t)),
                ));
            }
        }
        for &u in &parts.units {
            if !hit[u.index()] {
                found.push(violation(
                    Law::AlphaBetaSurjective,
                    &[u],
                    format!("unit {} is not in the image of {label}", nm(u)),
                ));
            }
        }
    }
    report.law(Law::AlphaBetaSurjective, found);

    let mut found = Vec::new();
    let mut preimage: Vec<Option<ElementId>> = vec![None; n];
    for x in ids() {
        let i = iota[x.index()];
        if let Some(x0) = preimage[i.index()].replace(x) {
            found.push(violation(Law::IotaInjective, &[x0, x], format!("iota({}) = iota({})", nm(x0), nm(x))));
        }
    }
    report.law(Law::IotaInjective, found);

    report.law(Law::BrandtAssociativity, associativity(table, alpha, beta, Law::BrandtAssociativity, &parts.names));

    let mut found = Vec::new();
    for x in ids() {
        if table.get(src(x), x) != Some(x) || table.get(x, tgt(x)) != Some(x) {
            found.push(violation(
                Law::BrandtIdentities,
                &[x],
                format!("alpha({0}) * {0} or {0} * beta({0}) is not {0}", nm(x)),
            ));
        }
    }
    report.law(Law::BrandtIdentities, found);

    let mut found = Vec::new();
    for x in ids() {
        let i = iota[x.index()];
        if table.get(x, i) != Some(src(x)) || table.get(i, x) != Some(tgt(x)) {
            let msg = format!("{0} * iota({0}) != alpha({0}) or iota({0}) * {0} != beta({0})", nm(x));
            found.push(violation(Law::BrandtInverses, &[x, i], msg));
        }
    }
    report.law(Law::BrandtInverses, found);

    Ok(report.finish())
}

/// A verified Brandt groupoid.
#[derive(Clone, Debug)]
pub struct BrandtGroupoid {
    id: StructureId,
    parts: BrandtParts,
    lookup: HashMap<String, ElementId>,
    units: Vec<ElementId>,
}

impl PartialEq for BrandtGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.parts.names == other.parts.names
            && self.units == other.units
            && self.parts.alpha == other.parts.alpha
            && self.parts.beta == other.parts.beta
            && self.parts.iota == other.parts.iota
            && self.parts.table == other.parts.table
    }
}

impl Eq for BrandtGroupoid {}

impl BrandtGroupoid {
    pub fn new(parts: BrandtParts) -> Result<Self> {
        let report = verify_brandt(&parts)?;
        if !report.passed() {
            return Err(Error::Verification(Box::new(report)));
        }
        let lookup = name_lookup(&parts.names)?;
        let mut units = parts.units.clone();
        units.sort_unstable();
        Ok(BrandtGroupoid { id: StructureId::fresh(), parts, lookup, units })
    }

    pub fn to_parts(&self) -> BrandtParts {
        BrandtParts { units: self.units.clone(), ..self.parts.clone() }
    }

    pub fn alpha(&self, x: ElementId) -> Result<ElementId> {
        self.check_index(x).map(|x| self.parts.alpha[x.index()])
    }

    pub fn beta(&self, x: ElementId) -> Result<ElementId> {
        self.check_index(x).map(|x| self.parts.beta[x.index()])
    }

    pub fn iota(&self, x: ElementId) -> Result<ElementId> {
        self.check_index(x).map(|x| self.parts.iota[x.index()])
    }

    /// Whether β(x) = α(y).
    pub fn composable(&self, x: ElementId, y: ElementId) -> Result<bool> {
        Ok(self.beta(x)? == self.alpha(y)?)
    }

    pub fn mul(&self, x: ElementId, y: ElementId) -> Result<ElementId> {
        self.check_index(x)?;
        self.check_index(y)?;
        self.product(x, y).ok_or(Error::UndefinedProduct { x, y })
    }

    /// Whether the anchor map x ↦ (α(x), β(x)) hits every pair of units.
    pub fn is_transitive(&self) -> bool {
        let k = self.units.len();
        let mut hit = vec![false; k * k];
        for x in 0..self.order() {
            let a = self.unit_position(self.parts.alpha[x]).expect("alpha maps into units");
            let b = self.unit_position(self.parts.beta[x]).expect("beta maps into units");
            hit[a * k + b] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// 𝒢(u) = {x | α(x) = β(x) = u}.
    pub fn isotropy_group(&self, u: ElementId) -> Result<ElementSubset> {
        self.check_index(u)?;
        if self.unit_position(u).is_none() {
            return Err(Error::NotAUnit(u));
        }
        let members = (0..self.order())
            .map(ElementId::new)
            .filter(|&x| self.parts.alpha[x.index()] == u && self.parts.beta[x.index()] == u)
            .collect();
        Ok(ElementSubset::from_sorted(self.id, members))
    }

    /// The isotropy group at `u` as a standalone one-unit structure, keeping
    /// element names.
    pub fn isotropy_as_group(&self, u: ElementId) -> Result<AlmostGroupoid> {
        let members = self.isotropy_group(u)?;
        let local: HashMap<ElementId, usize> = members.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let table: Vec<Vec<usize>> = members
            .iter()
            .map(|x| members.iter().map(|y| local[&self.product(x, y).expect("isotropy group is closed")]).collect())
            .collect();
        let names = members.iter().map(|x| self.name(x).to_owned()).collect();
        from_group(&table, names)
    }

    /// {x | α(x) = β(x)}, a proper subset unless the groupoid is a group bundle.
    pub fn isotropy_subgroupoid(&self) -> ElementSubset {
        let members =
            (0..self.order()).filter(|&x| self.parts.alpha[x] == self.parts.beta[x]).map(ElementId::new).collect();
        ElementSubset::from_sorted(self.id, members)
    }

    /// Reinterprets the groupoid as an almost groupoid when α = β, with θ := α.
    pub fn to_almost(&self) -> Result<AlmostGroupoid> {
        if let Some(x) = (0..self.order()).find(|&x| self.parts.alpha[x] != self.parts.beta[x]) {
            return Err(Error::NotAlmost { witness: ElementId::new(x) });
        }
        let parts = self.to_parts();
        AlmostGroupoid::new(AlmostParts {
            names: parts.names,
            units: parts.units,
            theta: parts.alpha,
            iota: parts.iota,
            table: parts.table,
        })
    }

    /// The structure-function identities: units are fixed and idempotent,
    /// α(xy) = α(x), β(xy) = β(y), α∘ι = β, β∘ι = α, ι∘ι = id, and
    /// (xy)⁻¹ = y⁻¹x⁻¹.
    pub fn derived_identities(&self) -> VerificationReport {
        let p = &self.parts;
        let ids = || (0..self.order()).map(ElementId::new);
        let src = |x: ElementId| p.alpha[x.index()];
        let tgt = |x: ElementId| p.beta[x.index()];
        let inv = |x: ElementId| p.iota[x.index()];
        let nm = |x: ElementId| self.name(x);
        let pairs = || ids().flat_map(move |x| ids().filter_map(move |y| p.table.get(x, y).map(|z| (x, y, z))));
        let units = || self.units.iter().copied();
        let mut report = ReportBuilder::new();
        report.law(
            Law::UnitFixed,
            units()
                .filter(|&u| src(u) != u || tgt(u) != u || inv(u) != u)
                .map(|u| violation(Law::UnitFixed, &[u], format!("{} is not fixed by alpha, beta, iota", nm(u))))
                .collect(),
        );
        report.law(
            Law::UnitIdempotent,
            units()
                .filter(|&u| p.table.get(u, u) != Some(u))
                .map(|u| violation(Law::UnitIdempotent, &[u], format!("{0} * {0} != {0}", nm(u))))
                .collect(),
        );
        report.law(
            Law::SourceOfProduct,
            pairs()
                .filter(|&(x, _, z)| src(z) != src(x))
                .map(|(x, y, _)| {
                    violation(Law::SourceOfProduct, &[x, y], format!("alpha({} * {}) != alpha({0})", nm(x), nm(y)))
                })
                .collect(),
        );
        report.law(
            Law::TargetOfProduct,
            pairs()
                .filter(|&(_, y, z)| tgt(z) != tgt(y))
                .map(|(x, y, _)| {
                    violation(Law::TargetOfProduct, &[x, y], format!("beta({} * {}) != beta({1})", nm(x), nm(y)))
                })
                .collect(),
        );
        report.law(
            Law::AnchorOfInverse,
            ids()
                .filter(|&x| src(inv(x)) != tgt(x) || tgt(inv(x)) != src(x))
                .map(|x| violation(Law::AnchorOfInverse, &[x], format!("iota({}) does not swap the anchors", nm(x))))
                .collect(),
        );
        report.law(
            Law::IotaInvolution,
            ids()
                .filter(|&x| inv(inv(x)) != x)
                .map(|x| violation(Law::IotaInvolution, &[x], format!("iota(iota({0})) != {0}", nm(x))))
                .collect(),
        );
        report.law(
            Law::InverseOfProduct,
            pairs()
                .filter(|&(x, y, z)| p.table.get(inv(y), inv(x)) != Some(inv(z)))
                .map(|(x, y, _)| {
                    violation(
                        Law::InverseOfProduct,
                        &[x, y],
                        format!("iota({} * {}) != iota({1}) * iota({0})", nm(x), nm(y)),
                    )
                })
                .collect(),
        );
        report.finish()
    }
}

impl AlmostGroupoid {
    /// The same structure with α := β := θ.
    pub fn to_brandt(&self) -> BrandtGroupoid {
        let parts = self.to_parts();
        BrandtGroupoid::new(BrandtParts {
            names: parts.names,
            units: parts.units,
            alpha: parts.theta.clone(),
            beta: parts.theta,
            iota: parts.iota,
            table: parts.table,
        })
        .expect("almost groupoid axioms imply the Brandt axioms")
    }
}

impl FiniteGroupoid for BrandtGroupoid {
    fn structure_id(&self) -> StructureId {
        self.id
    }

    fn names(&self) -> &[String] {
        &self.parts.names
    }

    fn name_lookup(&self) -> &HashMap<String, ElementId> {
        &self.lookup
    }

    fn units(&self) -> &[ElementId] {
        &self.units
    }

    fn is_unit(&self, x: ElementId) -> bool {
        self.unit_position(x).is_some()
    }

    fn source_unit(&self, x: ElementId) -> ElementId {
        self.parts.alpha[x.index()]
    }

    fn target_unit(&self, x: ElementId) -> ElementId {
        self.parts.beta[x.index()]
    }

    fn inverse(&self, x: ElementId) -> ElementId {
        self.parts.iota[x.index()]
    }

    fn table(&self) -> &PartialTable {
        &self.parts.table
    }
}
