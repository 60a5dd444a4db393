//! Almost groupoids: a carrier with a units map θ, an inversion ι, and a
//! multiplication defined exactly on pairs with equal units.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::element::{name_lookup, ElementId, StructureId, MAX_ORDER};
use crate::error::{Error, Result};
use crate::report::{violation, Law, ReportBuilder, VerificationReport, Violation};
use crate::structure::{ElementSubset, FiniteGroupoid};
use crate::table::PartialTable;

/// Unverified fields of an almost groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostParts {
    pub names: Vec<String>,
    pub units: Vec<ElementId>,
    pub theta: Vec<ElementId>,
    pub iota: Vec<ElementId>,
    pub table: PartialTable,
}

impl AlmostParts {
    pub fn order(&self) -> usize {
        self.names.len()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.order();
        check_carrier(&self.names)?;
        check_map("theta", &self.theta, n)?;
        check_map("iota", &self.iota, n)?;
        check_units(&self.units, n)?;
        check_table(&self.table, n)
    }

    fn unit_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        for u in &self.units {
            mask[u.index()] = true;
        }
        mask
    }

    fn name(&self, x: ElementId) -> &str {
        &self.names[x.index()]
    }
}

pub(crate) fn check_carrier(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    if names.len() > MAX_ORDER {
        return Err(Error::TooLarge { order: names.len(), max: MAX_ORDER });
    }
    name_lookup(names).map(drop)
}

pub(crate) fn check_map(field: &'static str, map: &[ElementId], order: usize) -> Result<()> {
    if map.len() != order {
        return Err(Error::LengthMismatch { field, expected: order, found: map.len() });
    }
    match map.iter().find(|x| x.index() >= order) {
        Some(x) => Err(Error::EntryOutOfRange { field, index: x.index(), order }),
        None => Ok(()),
    }
}

pub(crate) fn check_units(units: &[ElementId], order: usize) -> Result<()> {
    if units.is_empty() {
        return Err(Error::LengthMismatch { field: "units", expected: 1, found: 0 });
    }
    let mut seen = vec![false; order];
    for &u in units {
        if u.index() >= order {
            return Err(Error::EntryOutOfRange { field: "units", index: u.index(), order });
        }
        if std::mem::replace(&mut seen[u.index()], true) {
            return Err(Error::DuplicateUnit(u));
        }
    }
    Ok(())
}

pub(crate) fn check_table(table: &PartialTable, order: usize) -> Result<()> {
    if table.size() != order {
        return Err(Error::LengthMismatch { field: "table", expected: order, found: table.size() });
    }
    match table.first_out_of_range() {
        Some((_, _, value)) => Err(Error::EntryOutOfRange { field: "table", index: value, order }),
        None => Ok(()),
    }
}

/// Exhaustively checks the table-domain law, surjectivity of θ onto the
/// units, and AG1–AG3. Only malformed dimensions are reported as `Err`.
pub fn verify_almost(parts: &AlmostParts) -> Result<VerificationReport> {
    parts.check_shape()?;
    let n = parts.order();
    let ids = || (0..n).map(ElementId::new);
    let (theta, iota, table) = (&parts.theta, &parts.iota, &parts.table);
    let th = |x: ElementId| theta[x.index()];
    let mut report = ReportBuilder::new();

    let mut found = Vec::new();
    for x in ids() {
        for y in ids() {
            let defined = table.get(x, y).is_some();
            let composable = th(x) == th(y);
            if defined != composable {
                let msg = if defined {
                    format!("{} * {} is defined but theta differs", parts.name(x), parts.name(y))
                } else {
                    format!("{} * {} is undefined but theta agrees", parts.name(x), parts.name(y))
                };
                found.push(violation(Law::TableDomain, &[x, y], msg));
            }
        }
    }
    report.law(Law::TableDomain, found);

    let is_unit = parts.unit_mask();
    let mut found = Vec::new();
    let mut hit = vec![false; n];
    for x in ids() {
        let t = th(x);
        hit[t.index()] = true;
        if !is_unit[t.index()] {
            let msg = format!("theta({}) = {} is not a unit", parts.name(x), parts.name(t));
            found.push(violation(Law::ThetaSurjective, &[x], msg));
        }
    }
    for &u in &parts.units {
        if !hit[u.index()] {
            found.push(violation(
                Law::ThetaSurjective,
                &[u],
                format!("unit {} is not in the image of theta", parts.name(u)),
            ));
        }
    }
    report.law(Law::ThetaSurjective, found);

    report.law(Law::Ag1, associativity(table, theta, theta, Law::Ag1, &parts.names));

    let mut found = Vec::new();
    for x in ids() {
        let t = th(x);
        if table.get(t, x) != Some(x) || table.get(x, t) != Some(x) {
            found.push(violation(Law::Ag2, &[x], format!("theta({0}) does not act as identity on {0}", parts.name(x))));
        }
    }
    report.law(Law::Ag2, found);

    let mut found = Vec::new();
    for x in ids() {
        let (t, i) = (th(x), iota[x.index()]);
        if table.get(x, i) != Some(t) || table.get(i, x) != Some(t) {
            let msg = format!("{} * iota({0}) or iota({0}) * {0} is not theta({0})", parts.name(x));
            found.push(violation(Law::Ag3, &[x, i], msg));
        }
    }
    report.law(Law::Ag3, found);

    Ok(report.finish())
}

/// Associativity with the definedness biconditional. When the table is
/// defined exactly on pairs with `target(x) = source(y)` and products keep
/// the outer anchors, both sides are defined exactly on composable chains,
/// so only chains are visited. Otherwise all n³ triples are compared.
pub(crate) fn associativity(
    table: &PartialTable,
    source: &[ElementId],
    target: &[ElementId],
    law: Law,
    names: &[String],
) -> Vec<Violation> {
    let n = table.size();
    let ids = || (0..n).map(ElementId::new);
    let anchored = ids().all(|x| {
        ids().all(|y| match table.get(x, y) {
            Some(p) => {
                target[x.index()] == source[y.index()]
                    && source[p.index()] == source[x.index()]
                    && target[p.index()] == target[y.index()]
            }
            None => target[x.index()] != source[y.index()],
        })
    });
    let mut leaving: Vec<Vec<ElementId>> = vec![Vec::new(); n];
    for x in ids() {
        leaving[source[x.index()].index()].push(x);
    }
    let all: Vec<ElementId> = ids().collect();
    let after = |x: ElementId| if anchored { &leaving[target[x.index()].index()] } else { &all };
    let mut found: Vec<Violation> = (0..n)
        .into_par_iter()
        .flat_map_iter(|x| {
            let x = ElementId::new(x);
            let mut found = Vec::new();
            for &y in after(x) {
                let xy = table.get(x, y);
                for &z in after(y) {
                    let left = xy.and_then(|p| table.get(p, z));
                    let right = table.get(y, z).and_then(|q| table.get(x, q));
                    if left != right {
                        let show = |v: Option<ElementId>| v.map_or("undefined", |e| names[e.index()].as_str());
                        let msg = format!(
                            "({} * {}) * {} = {} but {0} * ({1} * {2}) = {}",
                            names[x.index()],
                            names[y.index()],
                            names[z.index()],
                            show(left),
                            show(right)
                        );
                        found.push(violation(law, &[x, y, z], msg));
                    }
                }
            }
            found
        })
        .collect();
    found.sort_by(|a, b| a.witness.cmp(&b.witness));
    found
}

/// A verified almost groupoid. Immutable; every analysis borrows it.
#[derive(Clone, Debug)]
pub struct AlmostGroupoid {
    id: StructureId,
    parts: AlmostParts,
    lookup: HashMap<String, ElementId>,
    /// Units in ascending index order.
    units: Vec<ElementId>,
    /// Isotropy group of each unit, aligned with `units`.
    fibers: Vec<Vec<ElementId>>,
}

impl PartialEq for AlmostGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.parts.names == other.parts.names
            && self.units == other.units
            && self.parts.theta == other.parts.theta
            && self.parts.iota == other.parts.iota
            && self.parts.table == other.parts.table
    }
}

impl Eq for AlmostGroupoid {}

impl AlmostGroupoid {
    /// Verifying constructor.
    pub fn new(parts: AlmostParts) -> Result<Self> {
        let report = verify_almost(&parts)?;
        if !report.passed() {
            return Err(Error::Verification(Box::new(report)));
        }
        let lookup = name_lookup(&parts.names)?;
        let mut units = parts.units.clone();
        units.sort_unstable();
        let mut fibers = vec![Vec::new(); units.len()];
        for x in 0..parts.order() {
            let t = parts.theta[x];
            let slot = units.binary_search(&t).expect("theta maps into units");
            fibers[slot].push(ElementId::new(x));
        }
        Ok(AlmostGroupoid { id: StructureId::fresh(), parts, lookup, units, fibers })
    }

    /// The underlying fields, with units in ascending order.
    pub fn to_parts(&self) -> AlmostParts {
        AlmostParts { units: self.units.clone(), ..self.parts.clone() }
    }

    #[inline]
    pub(crate) fn th(&self, x: ElementId) -> ElementId {
        self.parts.theta[x.index()]
    }

    #[inline]
    pub(crate) fn inv(&self, x: ElementId) -> ElementId {
        self.parts.iota[x.index()]
    }

    #[inline]
    pub(crate) fn prod(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.parts.table.get(x, y)
    }

    pub(crate) fn fiber_of(&self, u: ElementId) -> &[ElementId] {
        let slot = self.unit_position(u).expect("argument is a unit");
        &self.fibers[slot]
    }

    pub fn theta(&self, x: ElementId) -> Result<ElementId> {
        self.check_index(x).map(|x| self.th(x))
    }

    pub fn iota(&self, x: ElementId) -> Result<ElementId> {
        self.check_index(x).map(|x| self.inv(x))
    }

    /// Whether θ(x) = θ(y).
    pub fn composable(&self, x: ElementId, y: ElementId) -> Result<bool> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.th(x) == self.th(y))
    }

    pub fn mul(&self, x: ElementId, y: ElementId) -> Result<ElementId> {
        self.check_index(x)?;
        self.check_index(y)?;
        self.prod(x, y).ok_or(Error::UndefinedProduct { x, y })
    }

    /// G(u) = θ⁻¹(u), sorted.
    pub fn isotropy_group(&self, u: ElementId) -> Result<ElementSubset> {
        self.check_index(u)?;
        let slot = self.unit_position(u).ok_or(Error::NotAUnit(u))?;
        Ok(ElementSubset::from_sorted(self.id, self.fibers[slot].clone()))
    }

    /// Each unit with the size of its isotropy group.
    pub fn fiber_sizes(&self) -> Vec<(ElementId, usize)> {
        self.units.iter().zip(&self.fibers).map(|(&u, f)| (u, f.len())).collect()
    }

    /// Least k ≥ 1 with aᵏ = θ(a).
    pub fn element_order(&self, a: ElementId) -> Result<usize> {
        self.check_index(a)?;
        Ok(self.order_of(a))
    }

    pub(crate) fn order_of(&self, a: ElementId) -> usize {
        let unit = self.th(a);
        let mut p = a;
        let mut k = 1;
        while p != unit {
            p = self.prod(p, a).expect("powers stay in the fiber");
            k += 1;
        }
        k
    }

    /// aⁿ with a⁰ = θ(a) and a⁻ⁿ = (a⁻¹)ⁿ.
    pub fn power(&self, a: ElementId, n: i64) -> Result<ElementId> {
        self.check_index(a)?;
        let k = self.order_of(a) as i64;
        let mut p = self.th(a);
        for _ in 0..n.rem_euclid(k) {
            p = self.prod(p, a).expect("powers stay in the fiber");
        }
        Ok(p)
    }

    /// Every isotropy group is commutative.
    pub fn is_abelian(&self) -> bool {
        self.fibers.iter().all(|fiber| fiber.iter().all(|&x| fiber.iter().all(|&y| self.prod(x, y) == self.prod(y, x))))
    }

    /// Exhaustive check of the identities that follow from AG1–AG3.
    pub fn derived_identities(&self) -> VerificationReport {
        derived_identities_of(&self.parts)
    }
}

impl FiniteGroupoid for AlmostGroupoid {
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
        self.th(x) == x
    }

    fn source_unit(&self, x: ElementId) -> ElementId {
        self.th(x)
    }

    fn target_unit(&self, x: ElementId) -> ElementId {
        self.th(x)
    }

    fn inverse(&self, x: ElementId) -> ElementId {
        self.inv(x)
    }

    fn table(&self) -> &PartialTable {
        &self.parts.table
    }
}

/// The identities of the unit, inverse, and cancellation laws, checked over
/// every element, pair, and unit. `parts` must be dimensionally valid.
pub(crate) fn derived_identities_of(parts: &AlmostParts) -> VerificationReport {
    let n = parts.order();
    let ids = || (0..n).map(ElementId::new);
    let th = |x: ElementId| parts.theta[x.index()];
    let inv = |x: ElementId| parts.iota[x.index()];
    let mul = |x: ElementId, y: ElementId| parts.table.get(x, y);
    let nm = |x: ElementId| parts.name(x);
    let defined_pairs = || ids().flat_map(move |x| ids().filter_map(move |y| mul(x, y).map(|z| (x, y, z))));
    let mut report = ReportBuilder::new();

    let units = || parts.units.iter().copied();
    report.law(
        Law::UnitFixed,
        units()
            .filter(|&u| th(u) != u)
            .map(|u| violation(Law::UnitFixed, &[u], format!("theta({0}) != {0}", nm(u))))
            .collect(),
    );
    report.law(
        Law::UnitIdempotent,
        units()
            .filter(|&u| mul(u, u) != Some(u))
            .map(|u| violation(Law::UnitIdempotent, &[u], format!("{0} * {0} != {0}", nm(u))))
            .collect(),
    );
    report.law(
        Law::UnitSelfInverse,
        units()
            .filter(|&u| inv(u) != u)
            .map(|u| violation(Law::UnitSelfInverse, &[u], format!("iota({0}) != {0}", nm(u))))
            .collect(),
    );
    report.law(
        Law::UnitOfProduct,
        defined_pairs()
            .filter(|&(x, _, z)| th(z) != th(x))
            .map(|(x, y, _)| {
                violation(Law::UnitOfProduct, &[x, y], format!("theta({} * {}) != theta({0})", nm(x), nm(y)))
            })
            .collect(),
    );
    report.law(
        Law::UnitOfInverse,
        ids()
            .filter(|&x| th(inv(x)) != th(x))
            .map(|x| violation(Law::UnitOfInverse, &[x], format!("theta(iota({0})) != theta({0})", nm(x))))
            .collect(),
    );
    report.law(
        Law::ThetaIdempotent,
        ids()
            .filter(|&x| th(th(x)) != th(x))
            .map(|x| violation(Law::ThetaIdempotent, &[x], format!("theta(theta({0})) != theta({0})", nm(x))))
            .collect(),
    );

    let mut found = Vec::new();
    let mut seen: Vec<Option<ElementId>> = vec![None; n];
    for x in ids() {
        seen.iter_mut().for_each(|s| *s = None);
        for y in ids() {
            if let Some(z) = mul(x, y) {
                if let Some(y0) = seen[z.index()].replace(y) {
                    let msg = format!("{} * {} = {} * {}", nm(x), nm(y0), nm(x), nm(y));
                    found.push(violation(Law::Cancellation, &[x, y0, y], msg));
                }
            }
        }
        seen.iter_mut().for_each(|s| *s = None);
        for y in ids() {
            if let Some(z) = mul(y, x) {
                if let Some(y0) = seen[z.index()].replace(y) {
                    let msg = format!("{} * {} = {} * {}", nm(y0), nm(x), nm(y), nm(x));
                    found.push(violation(Law::Cancellation, &[y0, y, x], msg));
                }
            }
        }
    }
    report.law(Law::Cancellation, found);

    report.law(
        Law::InverseOfProduct,
        defined_pairs()
            .filter(|&(x, y, z)| mul(inv(y), inv(x)) != Some(inv(z)))
            .map(|(x, y, _)| {
                violation(
                    Law::InverseOfProduct,
                    &[x, y],
                    format!("iota({} * {}) != iota({1}) * iota({0})", nm(x), nm(y)),
                )
            })
            .collect(),
    );
    report.law(
        Law::DoubleInverse,
        ids()
            .filter(|&x| inv(inv(x)) != x)
            .map(|x| violation(Law::DoubleInverse, &[x], format!("iota(iota({0})) != {0}", nm(x))))
            .collect(),
    );
    report.law(
        Law::Division,
        defined_pairs()
            .filter(|&(x, y, z)| mul(inv(x), z) != Some(y) || mul(z, inv(y)) != Some(x))
            .map(|(x, y, _)| violation(Law::Division, &[x, y], format!("{} * {} cannot be divided back", nm(x), nm(y))))
            .collect(),
    );
    report.law(
        Law::ThetaIota,
        ids()
            .filter(|&x| th(inv(x)) != th(x))
            .map(|x| violation(Law::ThetaIota, &[x], format!("(theta . iota)({0}) != theta({0})", nm(x))))
            .collect(),
    );
    report.law(
        Law::IotaInvolution,
        ids()
            .filter(|&x| inv(inv(x)) != x)
            .map(|x| violation(Law::IotaInvolution, &[x], format!("(iota . iota)({0}) != {0}", nm(x))))
            .collect(),
    );
    report.law(
        Law::UniqueUnits,
        defined_pairs()
            .filter(|&(x, y, z)| (z == y && x != th(y)) || (z == x && y != th(x)))
            .map(|(x, y, _)| {
                violation(Law::UniqueUnits, &[x, y], format!("{} * {} fixes a factor without a unit", nm(x), nm(y)))
            })
            .collect(),
    );
    report.law(
        Law::PowersDefined,
        ids()
            .filter(|&a| mul(a, a).and_then(|sq| mul(sq, a)).is_none())
            .map(|a| violation(Law::PowersDefined, &[a], format!("{0}^2 or {0}^3 is undefined", nm(a))))
            .collect(),
    );
    report.finish()
}
