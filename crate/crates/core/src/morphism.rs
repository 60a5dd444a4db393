//! Structure-preserving maps between finite groupoids and a backtracking
//! isomorphism search.

use std::fmt;

use crate::almost::AlmostGroupoid;
use crate::brandt::BrandtGroupoid;
use crate::element::ElementId;
use crate::error::{Error, Result};
use crate::structure::FiniteGroupoid;

/// Largest carrier accepted by [`find_isomorphism`].
pub const SEARCH_LIMIT: usize = 64;

/// A carrier map `f` together with a units map `f0`. `f0[i]` is the image of
/// the i-th source unit in ascending index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismPair {
    pub f: Vec<ElementId>,
    pub f0: Vec<ElementId>,
}

impl MorphismPair {
    pub fn identity<G: FiniteGroupoid + ?Sized>(g: &G) -> MorphismPair {
        MorphismPair { f: (0..g.order()).map(ElementId::new).collect(), f0: g.units().to_vec() }
    }

    /// A pair whose units map is `f` restricted to the source units.
    pub fn from_carrier_map<G: FiniteGroupoid + ?Sized>(src: &G, f: Vec<ElementId>) -> Result<MorphismPair> {
        if f.len() != src.order() {
            return Err(Error::MorphismShape(format!(
                "carrier map has {} entries, source has {} elements",
                f.len(),
                src.order()
            )));
        }
        let f0 = src.units().iter().map(|u| f[u.index()]).collect();
        Ok(MorphismPair { f, f0 })
    }

    /// `then ∘ self`, where `mid` is the target of `self` and the source of `then`.
    pub fn compose<M: FiniteGroupoid + ?Sized>(&self, mid: &M, then: &MorphismPair) -> Result<MorphismPair> {
        let via = |x: ElementId| then.f.get(x.index()).copied();
        let f = self
            .f
            .iter()
            .map(|&x| via(x).ok_or_else(|| Error::MorphismShape(format!("{x} is outside the second map's domain"))))
            .collect::<Result<Vec<_>>>()?;
        let f0 = self
            .f0
            .iter()
            .map(|&u| {
                mid.unit_position(u)
                    .and_then(|i| then.f0.get(i).copied())
                    .ok_or_else(|| Error::MorphismShape(format!("{u} is not a unit of the intermediate structure")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MorphismPair { f, f0 })
    }
}

/// Which anchor equation failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    Source,
    Target,
}

/// The first failure found by a morphism check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismWitness {
    /// The units map sends a unit to a non-unit.
    UnitImage { unit: ElementId, image: ElementId },
    /// The anchor of f(x) differs from the units map applied to the anchor of x.
    Anchor { x: ElementId, anchor: Anchor },
    /// f(x·y) differs from f(x)·f(y); `found` is `None` if the latter is undefined.
    Product { x: ElementId, y: ElementId, expected: ElementId, found: Option<ElementId> },
}

impl MorphismWitness {
    /// Renders the witness with element names.
    pub fn describe<S, T>(&self, src: &S, dst: &T) -> String
    where
        S: FiniteGroupoid + ?Sized,
        T: FiniteGroupoid + ?Sized,
    {
        match *self {
            MorphismWitness::UnitImage { unit, image } => {
                format!("units map sends {} to non-unit {}", src.name(unit), dst.name(image))
            }
            MorphismWitness::Anchor { x, anchor } => {
                let which = match anchor {
                    Anchor::Source => "source",
                    Anchor::Target => "target",
                };
                format!("{which} unit of f({}) is not the image of its {which} unit", src.name(x))
            }
            MorphismWitness::Product { x, y, expected, found } => {
                let found = found.map_or("undefined", |z| dst.name(z));
                format!("f({} * {}) = {} but f({0}) * f({1}) = {}", src.name(x), src.name(y), dst.name(expected), found)
            }
        }
    }
}

impl fmt::Display for MorphismWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismWitness::UnitImage { unit, image } => write!(f, "unit {unit} maps to non-unit {image}"),
            MorphismWitness::Anchor { x, anchor } => write!(f, "{anchor:?} anchor fails at {x}"),
            MorphismWitness::Product { x, y, .. } => write!(f, "product fails at ({x}, {y})"),
        }
    }
}

/// Outcome of a morphism check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCheck {
    pub witness: Option<MorphismWitness>,
}

impl MorphismCheck {
    pub fn is_morphism(&self) -> bool {
        self.witness.is_none()
    }
}

fn check_shape<S, T>(src: &S, dst: &T, m: &MorphismPair) -> Result<()>
where
    S: FiniteGroupoid + ?Sized,
    T: FiniteGroupoid + ?Sized,
{
    if m.f.len() != src.order() {
        return Err(Error::MorphismShape(format!(
            "carrier map has {} entries, source has {} elements",
            m.f.len(),
            src.order()
        )));
    }
    if m.f0.len() != src.units().len() {
        return Err(Error::MorphismShape(format!(
            "units map has {} entries, source has {} units",
            m.f0.len(),
            src.units().len()
        )));
    }
    if let Some(bad) = m.f.iter().chain(&m.f0).find(|y| y.index() >= dst.order()) {
        return Err(Error::MorphismShape(format!("image {bad} is outside the target of order {}", dst.order())));
    }
    Ok(())
}

/// Checks the anchor equations per element, then the product equation per
/// composable pair, both in index order.
fn check_morphism<S, T>(src: &S, dst: &T, m: &MorphismPair) -> Result<MorphismCheck>
where
    S: FiniteGroupoid + ?Sized,
    T: FiniteGroupoid + ?Sized,
{
    check_shape(src, dst, m)?;
    let fail = |w| Ok(MorphismCheck { witness: Some(w) });
    for (&unit, &image) in src.units().iter().zip(&m.f0) {
        if !dst.is_unit(image) {
            return fail(MorphismWitness::UnitImage { unit, image });
        }
    }
    let f0 = |u: ElementId| m.f0[src.unit_position(u).expect("anchors are units")];
    for x in (0..src.order()).map(ElementId::new) {
        let fx = m.f[x.index()];
        if dst.source_unit(fx) != f0(src.source_unit(x)) {
            return fail(MorphismWitness::Anchor { x, anchor: Anchor::Source });
        }
        if dst.target_unit(fx) != f0(src.target_unit(x)) {
            return fail(MorphismWitness::Anchor { x, anchor: Anchor::Target });
        }
    }
    let n = src.order();
    for x in (0..n).map(ElementId::new) {
        for y in (0..n).map(ElementId::new) {
            if let Some(xy) = src.product(x, y) {
                let expected = m.f[xy.index()];
                let found = dst.product(m.f[x.index()], m.f[y.index()]);
                if found != Some(expected) {
                    return fail(MorphismWitness::Product { x, y, expected, found });
                }
            }
        }
    }
    Ok(MorphismCheck { witness: None })
}

/// f(xy) = f(x)f(y) on composable pairs and θ'∘f = f0∘θ.
pub fn is_almost_morphism(src: &AlmostGroupoid, dst: &AlmostGroupoid, m: &MorphismPair) -> Result<MorphismCheck> {
    check_morphism(src, dst, m)
}

/// f(xy) = f(x)f(y) on composable pairs, α'∘f = f0∘α and β'∘f = f0∘β.
pub fn is_brandt_morphism(src: &BrandtGroupoid, dst: &BrandtGroupoid, m: &MorphismPair) -> Result<MorphismCheck> {
    check_morphism(src, dst, m)
}

/// Morphism check for any pair of structures through their anchor maps.
pub fn check_groupoid_morphism<S, T>(src: &S, dst: &T, m: &MorphismPair) -> Result<MorphismCheck>
where
    S: FiniteGroupoid + ?Sized,
    T: FiniteGroupoid + ?Sized,
{
    check_morphism(src, dst, m)
}

fn is_bijection(map: &[ElementId], codomain: &[ElementId]) -> bool {
    let mut image = map.to_vec();
    image.sort_unstable();
    image.dedup();
    image.len() == map.len() && image == codomain
}

/// Whether both maps of a pair are bijections. Callers check the morphism
/// conditions separately.
pub fn is_isomorphism<S, T>(src: &S, dst: &T, m: &MorphismPair) -> bool
where
    S: FiniteGroupoid + ?Sized,
    T: FiniteGroupoid + ?Sized,
{
    let carrier: Vec<ElementId> = (0..dst.order()).map(ElementId::new).collect();
    m.f.len() == src.order()
        && m.f0.len() == src.units().len()
        && is_bijection(&m.f, &carrier)
        && is_bijection(&m.f0, dst.units())
}

/// Smallest k ≥ 1 with x^k a unit, for loops (source = target); 0 otherwise.
fn loop_order<G: FiniteGroupoid + ?Sized>(g: &G, x: ElementId) -> usize {
    let u = g.source_unit(x);
    if g.target_unit(x) != u {
        return 0;
    }
    let (mut power, mut k) = (x, 1);
    while power != u {
        power = g.product(power, x).expect("loops compose with themselves");
        k += 1;
    }
    k
}

/// Per-unit invariant: sorted loop orders at the unit and the number of
/// arrows leaving it.
fn unit_signature<G: FiniteGroupoid + ?Sized>(g: &G, orders: &[usize], u: ElementId) -> (Vec<usize>, usize) {
    let mut loops = Vec::new();
    let mut out = 0;
    for x in (0..g.order()).map(ElementId::new) {
        if g.source_unit(x) == u {
            out += 1;
            if g.target_unit(x) == u {
                loops.push(orders[x.index()]);
            }
        }
    }
    loops.sort_unstable();
    (loops, out)
}

struct Search<'a, S: ?Sized, T: ?Sized> {
    src: &'a S,
    dst: &'a T,
    src_orders: Vec<usize>,
    dst_orders: Vec<usize>,
    forward: Vec<Option<ElementId>>,
    backward: Vec<Option<ElementId>>,
    trail: Vec<ElementId>,
}

impl<S, T> Search<'_, S, T>
where
    S: FiniteGroupoid + ?Sized,
    T: FiniteGroupoid + ?Sized,
{
    fn undo_to(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            let y = self.forward[x.index()].take().expect("trail entries are assigned");
            self.backward[y.index()] = None;
        }
    }

    fn image(&self, x: ElementId) -> Option<ElementId> {
        self.forward[x.index()]
    }

    /// Assigns x ↦ y and every assignment it forces. On failure the caller
    /// rolls back with `undo_to`.
    fn assign(&mut self, x: ElementId, y: ElementId) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match (self.image(x), self.backward[y.index()]) {
                (Some(fx), _) if fx == y => continue,
                (Some(_), _) | (None, Some(_)) => return false,
                (None, None) => {}
            }
            if self.src_orders[x.index()] != self.dst_orders[y.index()] || self.src.is_unit(x) != self.dst.is_unit(y) {
                return false;
            }
            // Units are placed before anything else, so anchor images are known.
            let anchors_match = |a: ElementId, b: ElementId| self.image(a).map_or(a == x, |fa| fa == b);
            if !anchors_match(self.src.source_unit(x), self.dst.source_unit(y))
                || !anchors_match(self.src.target_unit(x), self.dst.target_unit(y))
            {
                return false;
            }
            self.forward[x.index()] = Some(y);
            self.backward[y.index()] = Some(x);
            self.trail.push(x);
            queue.push((self.src.inverse(x), self.dst.inverse(y)));
            for &z in &self.trail {
                let fz = self.forward[z.index()].expect("trail entries are assigned");
                for (a, b, fa, fb) in [(x, z, y, fz), (z, x, fz, y)] {
                    if let Some(ab) = self.src.product(a, b) {
                        match self.dst.product(fa, fb) {
                            Some(image) => queue.push((ab, image)),
                            None => return false,
                        }
                    }
                }
            }
        }
        true
    }

    fn candidates(&self, x: ElementId) -> Vec<ElementId> {
        (0..self.dst.order())
            .map(ElementId::new)
            .filter(|&y| self.backward[y.index()].is_none() && self.dst.is_unit(y) == self.src.is_unit(x))
            .filter(|&y| self.src_orders[x.index()] == self.dst_orders[y.index()])
            .collect()
    }

    fn solve(
        &mut self,
        unit_sigs: &[(ElementId, (Vec<usize>, usize))],
        dst_sigs: &[(ElementId, (Vec<usize>, usize))],
    ) -> bool {
        let next_unit = unit_sigs.iter().find(|(u, _)| self.image(*u).is_none());
        if let Some((u, sig)) = next_unit {
            let options: Vec<ElementId> = dst_sigs
                .iter()
                .filter(|(v, s)| s == sig && self.backward[v.index()].is_none())
                .map(|(v, _)| *v)
                .collect();
            for v in options {
                let mark = self.trail.len();
                if self.assign(*u, v) && self.solve(unit_sigs, dst_sigs) {
                    return true;
                }
                self.undo_to(mark);
            }
            return false;
        }
        let Some(x) = (0..self.src.order()).map(ElementId::new).find(|&x| self.image(x).is_none()) else {
            return true;
        };
        for y in self.candidates(x) {
            let mark = self.trail.len();
            if self.assign(x, y) && self.solve(unit_sigs, dst_sigs) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Searches for an isomorphism, trying units and then elements in ascending
/// index order, each against candidates in ascending index order. Returns
/// `Ok(None)` when none exists.
pub fn find_isomorphism<S, T>(src: &S, dst: &T) -> Result<Option<MorphismPair>>
where
    S: FiniteGroupoid + ?Sized,
    T: FiniteGroupoid + ?Sized,
{
    for order in [src.order(), dst.order()] {
        if order > SEARCH_LIMIT {
            return Err(Error::SearchTooLarge { order, max: SEARCH_LIMIT });
        }
    }
    if src.order() != dst.order() || src.units().len() != dst.units().len() {
        return Ok(None);
    }
    let src_orders: Vec<usize> = (0..src.order()).map(|x| loop_order(src, ElementId::new(x))).collect();
    let dst_orders: Vec<usize> = (0..dst.order()).map(|x| loop_order(dst, ElementId::new(x))).collect();
    let src_sigs: Vec<_> = src.units().iter().map(|&u| (u, unit_signature(src, &src_orders, u))).collect();
    let dst_sigs: Vec<_> = dst.units().iter().map(|&v| (v, unit_signature(dst, &dst_orders, v))).collect();
    let multiset = |sigs: &[(ElementId, (Vec<usize>, usize))]| {
        let mut all: Vec<_> = sigs.iter().map(|(_, s)| s.clone()).collect();
        all.sort();
        all
    };
    if multiset(&src_sigs) != multiset(&dst_sigs) {
        return Ok(None);
    }
    let mut search = Search {
        src,
        dst,
        src_orders,
        dst_orders,
        forward: vec![None; src.order()],
        backward: vec![None; dst.order()],
        trail: Vec::new(),
    };
    if !search.solve(&src_sigs, &dst_sigs) {
        return Ok(None);
    }
    let f: Vec<ElementId> = search.forward.into_iter().map(|y| y.expect("search assigns every element")).collect();
    let m = MorphismPair::from_carrier_map(src, f)?;
    debug_assert!(check_morphism(src, dst, &m)?.is_morphism());
    Ok(Some(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclic_group, klein_four, pair_groupoid, symmetric_group_s3, z6_example, z_bundle};

    fn id(i: usize) -> ElementId {
        ElementId::new(i)
    }

    #[test]
    fn identity_is_an_isomorphism() {
        let g = z6_example();
        let id = MorphismPair::identity(&g);
        assert!(is_almost_morphism(&g, &g, &id).unwrap().is_morphism());
        assert!(is_isomorphism(&g, &g, &id));
    }

    #[test]
    fn constant_map_to_non_unit() {
        let g = z_bundle(2, 3).unwrap();
        let x = g.element("(0,1)").unwrap();
        // With f0 = f on units the unit images are not units.
        let m = MorphismPair::from_carrier_map(&g, vec![x; 6]).unwrap();
        let check = is_almost_morphism(&g, &g, &m).unwrap();
        assert_eq!(check.witness, Some(MorphismWitness::UnitImage { unit: g.units()[0], image: x }));
        // Sending both units to theta(x) satisfies the anchor law; products fail.
        let m = MorphismPair { f: vec![x; 6], f0: vec![g.units()[0]; 2] };
        let check = is_almost_morphism(&g, &g, &m).unwrap();
        let y = g.element("(0,2)").unwrap();
        assert_eq!(check.witness, Some(MorphismWitness::Product { x: id(0), y: id(0), expected: x, found: Some(y) }));
        // A units map that disagrees with the anchors of the images.
        let m = MorphismPair { f: vec![x; 6], f0: g.units().to_vec() };
        let check = is_almost_morphism(&g, &g, &m).unwrap();
        assert_eq!(check.witness, Some(MorphismWitness::Anchor { x: id(3), anchor: Anchor::Source }));
    }

    #[test]
    fn shape_errors() {
        let g = cyclic_group(2).unwrap();
        let m = MorphismPair { f: vec![ElementId::new(0)], f0: vec![ElementId::new(0)] };
        assert!(matches!(is_almost_morphism(&g, &g, &m), Err(Error::MorphismShape(_))));
        let m = MorphismPair { f: vec![ElementId::new(0), ElementId::new(5)], f0: vec![ElementId::new(0)] };
        assert!(matches!(is_almost_morphism(&g, &g, &m), Err(Error::MorphismShape(_))));
    }

    #[test]
    fn pair_groupoid_injection_is_a_morphism() {
        let (b2, b3) = (pair_groupoid(2).unwrap(), pair_groupoid(3).unwrap());
        // Points 1, 2 go to 1, 3.
        let point = [1usize, 3];
        let f = (0..4).map(|e| b3.element(&format!("({},{})", point[e / 2], point[e % 2])).unwrap()).collect();
        let m = MorphismPair::from_carrier_map(&b2, f).unwrap();
        assert!(is_brandt_morphism(&b2, &b3, &m).unwrap().is_morphism());
        assert!(!is_isomorphism(&b2, &b3, &m));
    }

    #[test]
    fn swapping_units_breaks_anchors() {
        let b = pair_groupoid(2).unwrap();
        let mut m = MorphismPair::identity(&b);
        m.f.swap(0, 3);
        m.f0.swap(0, 1);
        let check = is_brandt_morphism(&b, &b, &m).unwrap();
        assert!(matches!(check.witness, Some(MorphismWitness::Anchor { .. })));
    }

    #[test]
    fn composition() {
        let g = z6_example();
        let found = find_isomorphism(&g, &g).unwrap().unwrap();
        let twice = found.compose(&g, &found).unwrap();
        assert!(is_almost_morphism(&g, &g, &twice).unwrap().is_morphism());
    }

    #[test]
    fn search_finds_identity_first() {
        let s3 = symmetric_group_s3();
        assert_eq!(find_isomorphism(&s3, &s3).unwrap(), Some(MorphismPair::identity(&s3)));
        let g = z6_example();
        assert_eq!(find_isomorphism(&g, &g).unwrap(), Some(MorphismPair::identity(&g)));
        let b = pair_groupoid(3).unwrap();
        assert_eq!(find_isomorphism(&b, &b).unwrap(), Some(MorphismPair::identity(&b)));
    }

    #[test]
    fn search_verdicts() {
        let zb = z_bundle(1, 6).unwrap();
        let z6 = cyclic_group(6).unwrap();
        let m = find_isomorphism(&zb, &z6).unwrap().expect("both are cyclic of order 6");
        assert!(is_almost_morphism(&zb, &z6, &m).unwrap().is_morphism());
        assert!(is_isomorphism(&zb, &z6, &m));
        assert_eq!(find_isomorphism(&z_bundle(1, 4).unwrap(), &klein_four()).unwrap(), None);
        assert_eq!(find_isomorphism(&cyclic_group(6).unwrap(), &symmetric_group_s3()).unwrap(), None);
        assert!(matches!(
            find_isomorphism(&cyclic_group(65).unwrap(), &cyclic_group(65).unwrap()),
            Err(Error::SearchTooLarge { order: 65, max: 64 })
        ));
    }
}
