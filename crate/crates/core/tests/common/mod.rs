//! Brute-force oracles over raw tables. Nothing here calls the library's
//! analysis routines; structures are only read through their basic maps.

#![allow(dead_code)]

use amg_core::constructions::{
    cyclic_group, direct_product, disjoint_union, klein_four, matrix_bundle, null_almost_groupoid, pair_groupoid,
    rstar_groupoid, symmetric_group_s3, z6_example, z_bundle,
};
use amg_core::{AlmostGroupoid, BrandtGroupoid, ElementId, FiniteGroupoid};

/// Plain-vector copy of a structure's maps and table.
#[derive(Clone, Debug)]
pub struct Raw {
    pub n: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub inverse: Vec<usize>,
    pub mul: Vec<Vec<Option<usize>>>,
    pub units: Vec<usize>,
}

impl Raw {
    pub fn of<G: FiniteGroupoid + ?Sized>(g: &G) -> Raw {
        let n = g.order();
        let id = ElementId::new;
        Raw {
            n,
            source: (0..n).map(|x| g.source_unit(id(x)).index()).collect(),
            target: (0..n).map(|x| g.target_unit(id(x)).index()).collect(),
            inverse: (0..n).map(|x| g.inverse(id(x)).index()).collect(),
            mul: (0..n).map(|x| (0..n).map(|y| g.product(id(x), id(y)).map(ElementId::index)).collect()).collect(),
            units: (0..n).filter(|&x| g.source_unit(id(x)).index() == x).collect(),
        }
    }

    pub fn fiber(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.source[x] == u && self.target[x] == u).collect()
    }
}

pub fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

pub fn mask_of(elements: impl IntoIterator<Item = usize>) -> u64 {
    elements.into_iter().fold(0, |m, x| m | 1 << x)
}

/// Non-empty, closed under defined products and under inversion.
pub fn is_subgroupoid(raw: &Raw, mask: u64) -> bool {
    mask != 0
        && members(mask).all(|x| {
            mask >> raw.inverse[x] & 1 == 1 && members(mask).all(|y| raw.mul[x][y].is_none_or(|p| mask >> p & 1 == 1))
        })
}

/// Every subgroupoid, as bitmasks, by trying all 2^n subsets.
pub fn all_subgroupoids(raw: &Raw) -> Vec<u64> {
    assert!(raw.n <= 16, "enumeration is exponential");
    (1u64..1 << raw.n).filter(|&m| is_subgroupoid(raw, m)).collect()
}

/// Units touched by a subset.
pub fn units_of(raw: &Raw, mask: u64) -> u64 {
    members(mask).fold(0, |m, x| m | 1 << raw.source[x] | 1 << raw.target[x])
}

pub fn is_wide(raw: &Raw, mask: u64) -> bool {
    let all = mask_of(raw.units.iter().copied());
    units_of(raw, mask) == all
}

/// Union over units of the centers of the isotropy groups.
pub fn center_by_fibers(raw: &Raw) -> Vec<usize> {
    let mut out = Vec::new();
    for &u in &raw.units {
        let fiber = raw.fiber(u);
        out.extend(fiber.iter().copied().filter(|&z| fiber.iter().all(|&x| raw.mul[z][x] == raw.mul[x][z])));
    }
    out.sort_unstable();
    out
}

/// `{h·k | h ∈ H, k ∈ K, defined}`.
pub fn set_product(raw: &Raw, h: u64, k: u64) -> u64 {
    members(h).flat_map(|x| members(k).filter_map(move |y| raw.mul[x][y])).fold(0, |m, p| m | 1 << p)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Whether a bijection f preserves anchors and products, with the units
/// map taken as f on units.
pub fn preserves(a: &Raw, b: &Raw, f: &[usize]) -> bool {
    (0..a.n).all(|x| b.source[f[x]] == f[a.source[x]] && b.target[f[x]] == f[a.target[x]])
        && (0..a.n).all(|x| (0..a.n).all(|y| a.mul[x][y].is_none_or(|p| b.mul[f[x]][f[y]] == Some(f[p]))))
}

/// Tries every bijection; only for tiny carriers.
pub fn naive_isomorphic(a: &Raw, b: &Raw) -> bool {
    assert!(a.n <= 7, "naive search is factorial");
    a.n == b.n && a.units.len() == b.units.len() && permutations(a.n).iter().any(|f| preserves(a, b, f))
}

/// Built-in almost groupoids with at most `max` elements, labelled.
pub fn builtin_almost(max: usize) -> Vec<(String, AlmostGroupoid)> {
    let mut out: Vec<(String, AlmostGroupoid)> = Vec::new();
    let mut push = |label: String, g: AlmostGroupoid| {
        if g.order() <= max {
            out.push((label, g));
        }
    };
    for n in 1..=max.min(16) {
        push(format!("group-zn {n}"), cyclic_group(n).unwrap());
        push(format!("null {n}"), null_almost_groupoid(n).unwrap());
    }
    push("group-s3".into(), symmetric_group_s3());
    push("group-klein4".into(), klein_four());
    for m in 1..=4 {
        for n in 1..=8 {
            if m * n <= max {
                push(format!("zbundle {m} {n}"), z_bundle(m, n).unwrap());
            }
        }
    }
    for p in [2, 3, 5, 7] {
        push(format!("matrix {p}"), matrix_bundle(p).unwrap());
    }
    push("z6".into(), z6_example());
    for k in 1..=3 {
        if let Ok(g) = pair_groupoid(k).unwrap().to_almost() {
            push(format!("pair {k} as almost"), g);
        }
    }
    let small = [
        ("group-zn 2", cyclic_group(2).unwrap()),
        ("null 2", null_almost_groupoid(2).unwrap()),
        ("zbundle 2 2", z_bundle(2, 2).unwrap()),
    ];
    for (la, a) in &small {
        for (lb, b) in &small {
            push(format!("product {la} {lb}"), direct_product(a, b).unwrap());
            push(format!("union {la} {lb}"), disjoint_union(a, b).unwrap());
        }
    }
    push("union group-s3 group-zn 3".into(), disjoint_union(&symmetric_group_s3(), &cyclic_group(3).unwrap()).unwrap());
    out
}

pub fn builtin_brandt() -> Vec<(String, BrandtGroupoid)> {
    let mut out: Vec<(String, BrandtGroupoid)> =
        (1..=4).map(|k| (format!("pair {k}"), pair_groupoid(k).unwrap())).collect();
    for (p, a) in [(3, 1), (3, 2), (5, 1), (5, 2), (5, 4)] {
        out.push((format!("rstar {p} {a}"), rstar_groupoid(p, a).unwrap()));
    }
    out
}

pub fn names<G: FiniteGroupoid + ?Sized>(g: &G, elements: impl IntoIterator<Item = usize>) -> Vec<String> {
    elements.into_iter().map(|x| g.name(ElementId::new(x)).to_owned()).collect()
}
