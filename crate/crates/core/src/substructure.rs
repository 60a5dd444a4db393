//! Subgroupoids and the subsets built from them: isotropy, centralizers,
//! the center, set products, unions, intersections, and generated closures.

use crate::almost::AlmostGroupoid;
use crate::brandt::BrandtGroupoid;
use crate::element::ElementId;
use crate::error::{Error, Result};
use crate::structure::{ElementSubset, FiniteGroupoid};

/// First reason a subset fails one of the subgroupoid predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupoidViolation {
    /// `x·y` is defined but outside the subset.
    NotClosed { x: ElementId, y: ElementId, product: ElementId },
    /// `x⁻¹` is outside the subset.
    MissingInverse { x: ElementId, inverse: ElementId },
    /// A unit of the ambient structure is not a unit of the subset.
    MissingUnit(ElementId),
    /// `g·h·g⁻¹` is defined but outside the subset.
    NotNormal { g: ElementId, h: ElementId, conjugate: ElementId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupoidReport {
    pub is_subgroupoid: bool,
    pub is_wide: bool,
    pub is_normal: bool,
    /// Units of the subset: θ(H), or α(H) ∪ β(H) for Brandt groupoids.
    pub units: ElementSubset,
    pub violation: Option<SubgroupoidViolation>,
}

/// Closure, inversion, width, and normality of `subset`, shared by both
/// structure kinds. Normality quantifies over defined conjugates g·h·g⁻¹.
fn subgroupoid_report<G: FiniteGroupoid>(g: &G, subset: &ElementSubset) -> Result<SubgroupoidReport> {
    g.owns(subset)?;
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let inside = subset.mask(g.order());
    let units = ElementSubset::from_unsorted(
        g.structure_id(),
        subset.iter().flat_map(|x| [g.source_unit(x), g.target_unit(x)]).collect(),
    );
    let mut report =
        SubgroupoidReport { is_subgroupoid: false, is_wide: false, is_normal: false, units, violation: None };

    let closure = subset.iter().find_map(|x| {
        subset.iter().find_map(|y| {
            g.product(x, y).filter(|p| !inside[p.index()]).map(|product| SubgroupoidViolation::NotClosed {
                x,
                y,
                product,
            })
        })
    });
    let inverse = || {
        subset.iter().find_map(|x| {
            let inverse = g.inverse(x);
            (!inside[inverse.index()]).then_some(SubgroupoidViolation::MissingInverse { x, inverse })
        })
    };
    report.violation = closure.or_else(inverse);
    if report.violation.is_some() {
        return Ok(report);
    }
    report.is_subgroupoid = true;

    if let Some(&u) = g.units().iter().find(|&&u| !report.units.contains(u)) {
        report.violation = Some(SubgroupoidViolation::MissingUnit(u));
        return Ok(report);
    }
    report.is_wide = true;

    for h in subset.iter() {
        for c in (0..g.order()).map(ElementId::new) {
            let conjugate = g.product(c, h).and_then(|ch| g.product(ch, g.inverse(c)));
            if let Some(conjugate) = conjugate.filter(|k| !inside[k.index()]) {
                report.violation = Some(SubgroupoidViolation::NotNormal { g: c, h, conjugate });
                return Ok(report);
            }
        }
    }
    report.is_normal = true;
    Ok(report)
}

impl AlmostGroupoid {
    /// Checks closure under defined products and inversion, then width
    /// (θ(H) = G₀) and normality.
    pub fn is_almost_subgroupoid(&self, subset: &ElementSubset) -> Result<SubgroupoidReport> {
        subgroupoid_report(self, subset)
    }

    /// The union of all isotropy groups; for an almost groupoid this is the
    /// whole carrier.
    pub fn isotropy_subgroupoid(&self) -> ElementSubset {
        let members = self.units().iter().flat_map(|&u| self.fiber_of(u).iter().copied()).collect();
        ElementSubset::from_unsorted(self.structure_id(), members)
    }

    /// H ⊔ K over a pairwise-disjoint family of subgroupoids.
    pub fn disjoint_union_subgroupoids(&self, family: &[&ElementSubset]) -> Result<ElementSubset> {
        let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
        for (index, h) in family.iter().enumerate() {
            if !self.is_almost_subgroupoid(h)?.is_subgroupoid {
                return Err(Error::NotSubgroupoid { index });
            }
        }
        let mut union = (*first).clone();
        for h in rest {
            if let Some(x) = union.first_common(h) {
                return Err(Error::NotDisjoint(x));
            }
            union = union.union(h);
        }
        Ok(union)
    }

    /// C(a) = {g ∈ G(θ(a)) | g·a = a·g}.
    pub fn centralizer(&self, a: ElementId) -> Result<ElementSubset> {
        self.check_index(a)?;
        let members =
            self.fiber_of(self.th(a)).iter().copied().filter(|&g| self.prod(g, a) == self.prod(a, g)).collect();
        Ok(ElementSubset::from_sorted(self.structure_id(), members))
    }

    /// Z(G): elements commuting with everything sharing their unit.
    pub fn center(&self) -> ElementSubset {
        let members = (0..self.order())
            .map(ElementId::new)
            .filter(|&a| self.fiber_of(self.th(a)).iter().all(|&x| self.prod(x, a) == self.prod(a, x)))
            .collect();
        ElementSubset::from_sorted(self.structure_id(), members)
    }

    /// HK = {h·k | h ∈ H, k ∈ K, θ(h) = θ(k)}.
    pub fn set_product(&self, h: &ElementSubset, k: &ElementSubset) -> Result<ElementSubset> {
        self.owns(h)?;
        self.owns(k)?;
        let members = h.iter().flat_map(|x| k.iter().filter_map(move |y| self.prod(x, y))).collect();
        Ok(ElementSubset::from_unsorted(self.structure_id(), members))
    }

    /// Whether HK = KH as sets.
    pub fn hk_commutes(&self, h: &ElementSubset, k: &ElementSubset) -> Result<bool> {
        Ok(self.set_product(h, k)? == self.set_product(k, h)?)
    }

    /// Intersection of a non-empty family of subgroupoids.
    pub fn intersect_subgroupoids(&self, family: &[&ElementSubset]) -> Result<ElementSubset> {
        let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
        for (index, h) in family.iter().enumerate() {
            if !self.is_almost_subgroupoid(h)?.is_subgroupoid {
                return Err(Error::NotSubgroupoid { index });
            }
        }
        let meet = rest.iter().fold((*first).clone(), |acc, h| acc.intersection(h));
        if meet.is_empty() {
            return Err(Error::EmptyIntersection);
        }
        Ok(meet)
    }

    /// ⟨S⟩, the least subset containing `seeds` closed under defined products
    /// and inversion, computed as a worklist fixed point.
    pub fn generated_subgroupoid(&self, seeds: &ElementSubset) -> Result<ElementSubset> {
        self.owns(seeds)?;
        if seeds.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut inside = vec![false; self.order()];
        let mut members: Vec<ElementId> = Vec::new();
        let mut pending: Vec<ElementId> = Vec::new();
        let mut admit = |x: ElementId, members: &mut Vec<ElementId>, pending: &mut Vec<ElementId>| {
            if !std::mem::replace(&mut inside[x.index()], true) {
                members.push(x);
                pending.push(x);
            }
        };
        for x in seeds.iter() {
            admit(x, &mut members, &mut pending);
        }
        while let Some(x) = pending.pop() {
            admit(self.inv(x), &mut members, &mut pending);
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                if let Some(p) = self.prod(x, y) {
                    admit(p, &mut members, &mut pending);
                }
                if let Some(p) = self.prod(y, x) {
                    admit(p, &mut members, &mut pending);
                }
                i += 1;
            }
        }
        Ok(ElementSubset::from_unsorted(self.structure_id(), members))
    }

    /// ⟨a⟩ = {aⁿ | n ∈ ℤ}, the orbit of θ(a) under right multiplication by a.
    pub fn cyclic_subgroupoid(&self, a: ElementId) -> Result<ElementSubset> {
        self.check_index(a)?;
        let unit = self.th(a);
        let mut members = vec![unit];
        let mut p = self.prod(unit, a).expect("a is composable with its unit");
        while p != unit {
            members.push(p);
            p = self.prod(p, a).expect("powers stay in the fiber");
        }
        Ok(ElementSubset::from_unsorted(self.structure_id(), members))
    }
}

impl BrandtGroupoid {
    /// Closure under defined products and inversion; wide when
    /// α(H) = β(H) = 𝒢₀.
    pub fn is_brandt_subgroupoid(&self, subset: &ElementSubset) -> Result<SubgroupoidReport> {
        // Inverse-closed subsets have α(H) = β(H), so the combined unit set
        // computed by the shared check equals each.
        subgroupoid_report(self, subset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_group, null_almost_groupoid, symmetric_group_s3, z6_example};

    fn names<'a>(g: &'a AlmostGroupoid, s: &ElementSubset) -> Vec<&'a str> {
        g.names_of(s)
    }

    #[test]
    fn units_alone_form_a_normal_wide_subgroupoid() {
        let g = z6_example();
        let report = g.is_almost_subgroupoid(&g.unit_set()).unwrap();
        assert!(report.is_subgroupoid && report.is_wide && report.is_normal);
        let whole = g.is_almost_subgroupoid(&g.whole()).unwrap();
        assert!(whole.is_normal);
    }

    #[test]
    fn missing_square_breaks_closure() {
        let g = z6_example();
        let h = g.subset_by_names(&["u1", "p3"]).unwrap();
        let report = g.is_almost_subgroupoid(&h).unwrap();
        assert!(!report.is_subgroupoid && !report.is_wide && !report.is_normal);
        let p3 = g.element("p3").unwrap();
        let p11 = g.element("p11").unwrap();
        assert_eq!(report.violation, Some(SubgroupoidViolation::NotClosed { x: p3, y: p3, product: p11 }));
    }

    #[test]
    fn empty_and_foreign_subsets_are_rejected() {
        let g = z6_example();
        let other = z6_example();
        let empty = g.subset(std::iter::empty()).unwrap();
        assert_eq!(g.is_almost_subgroupoid(&empty), Err(Error::EmptySubset));
        assert_eq!(g.is_almost_subgroupoid(&other.whole()), Err(Error::ForeignSubset));
        assert_eq!(g.generated_subgroupoid(&empty), Err(Error::EmptySubset));
    }

    #[test]
    fn disjoint_union_of_two_fibers() {
        let g = z6_example();
        let u1 = g.element("u1").unwrap();
        let u3 = g.element("u3").unwrap();
        let (h, k) = (g.isotropy_group(u1).unwrap(), g.isotropy_group(u3).unwrap());
        let union = g.disjoint_union_subgroupoids(&[&h, &k]).unwrap();
        assert_eq!(names(&g, &union), ["u1", "u3", "p3", "p5", "p7", "p11"]);
        let report = g.is_almost_subgroupoid(&union).unwrap();
        assert!(report.is_subgroupoid && !report.is_wide);
        assert_eq!(g.names_of(&report.units), ["u1", "u3"]);

        let overlapping = g.subset_by_names(&["u1"]).unwrap();
        assert_eq!(g.disjoint_union_subgroupoids(&[&h, &overlapping]), Err(Error::NotDisjoint(u1)));
        let not_sub = g.subset_by_names(&["u2", "p4"]).unwrap();
        assert_eq!(g.disjoint_union_subgroupoids(&[&h, &not_sub]), Err(Error::NotSubgroupoid { index: 1 }));
    }

    #[test]
    fn all_fibers_union_to_a_wide_subgroupoid() {
        let g = z6_example();
        let fibers: Vec<_> = g.units().iter().map(|&u| g.isotropy_group(u).unwrap()).collect();
        let refs: Vec<_> = fibers.iter().collect();
        let union = g.disjoint_union_subgroupoids(&refs).unwrap();
        assert_eq!(union, g.whole());
        assert!(g.is_almost_subgroupoid(&union).unwrap().is_wide);
    }

    #[test]
    fn s3_centralizer_and_center() {
        let s3 = symmetric_group_s3();
        let t = s3.element("(12)").unwrap();
        assert_eq!(names(&s3, &s3.centralizer(t).unwrap()), ["e", "(12)"]);
        assert_eq!(names(&s3, &s3.center()), ["e"]);
        assert!(s3.is_almost_subgroupoid(&s3.center()).unwrap().is_normal);
        // A non-normal subgroup: closed and wide but not conjugation-stable.
        let report = s3.is_almost_subgroupoid(&s3.centralizer(t).unwrap()).unwrap();
        assert!(report.is_wide && !report.is_normal);
        assert!(matches!(report.violation, Some(SubgroupoidViolation::NotNormal { .. })));
    }

    #[test]
    fn set_products_on_the_example() {
        let g = z6_example();
        let units = g.unit_set();
        assert_eq!(g.set_product(&units, &units).unwrap(), units);
        let u1 = g.element("u1").unwrap();
        let fiber = g.isotropy_group(u1).unwrap();
        assert_eq!(g.set_product(&fiber, &fiber).unwrap(), fiber);
        assert_eq!(g.set_product(&g.center(), &units).unwrap(), g.center());
    }

    #[test]
    fn intersections() {
        let g = z6_example();
        let u1 = g.element("u1").unwrap();
        let u3 = g.element("u3").unwrap();
        let (h, k) = (g.isotropy_group(u1).unwrap(), g.isotropy_group(u3).unwrap());
        let hk = g.disjoint_union_subgroupoids(&[&h, &k]).unwrap();
        assert_eq!(g.intersect_subgroupoids(&[&h, &hk]).unwrap(), h);
        assert_eq!(g.intersect_subgroupoids(&[&g.center(), &g.unit_set()]).unwrap(), g.unit_set());
        assert_eq!(g.intersect_subgroupoids(&[&h, &k]), Err(Error::EmptyIntersection));
        assert_eq!(g.intersect_subgroupoids(&[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn generated_and_cyclic() {
        let g = z6_example();
        let u = g.element("u4").unwrap();
        assert_eq!(g.generated_subgroupoid(&g.subset([u]).unwrap()).unwrap().members(), &[u]);
        let s = g.subset_by_names(&["p3"]).unwrap();
        assert_eq!(names(&g, &g.generated_subgroupoid(&s).unwrap()), ["u1", "p3", "p11"]);
        let s = g.subset_by_names(&["p3", "p5"]).unwrap();
        assert_eq!(names(&g, &g.generated_subgroupoid(&s).unwrap()), ["u1", "u3", "p3", "p5", "p7", "p11"]);
        let p4 = g.element("p4").unwrap();
        assert_eq!(names(&g, &g.cyclic_subgroupoid(p4).unwrap()), ["u2", "p4", "p12"]);
        assert_eq!(g.cyclic_subgroupoid(u).unwrap().members(), &[u]);

        let z6 = cyclic_group(6).unwrap();
        assert_eq!(z6.cyclic_subgroupoid(ElementId::new(1)).unwrap(), z6.whole());
    }

    #[test]
    fn null_structure_substructures() {
        let g = null_almost_groupoid(4).unwrap();
        assert_eq!(g.center(), g.whole());
        assert_eq!(g.isotropy_subgroupoid(), g.whole());
        assert!(g.is_almost_subgroupoid(&g.whole()).unwrap().is_normal);
    }
}
