//! Built-in families of almost groupoids and Brandt groupoids, and the
//! product and disjoint-union combinators.
//!
//! Naming conventions are part of the file-format contract:
//! `group-zn` uses `0..n-1`, `null` uses `u1..uk`, `zbundle` uses `(a,c)`,
//! `matrix` uses `A(a,k)`, `z6` uses `u1..u6, p1..p12`, `pair` and `rstar`
//! use `(x,y)`, products use `(x,y)` over the factor names.

use std::collections::HashSet;
use std::fmt;

use crate::almost::{AlmostGroupoid, AlmostParts};
use crate::brandt::{BrandtGroupoid, BrandtParts};
use crate::element::{ElementId, MAX_ORDER};
use crate::error::{Error, GroupDefect, Result};
use crate::structure::FiniteGroupoid;
use crate::table::PartialTable;
use crate::Structure;

fn id(i: usize) -> ElementId {
    ElementId::new(i)
}

fn bounds(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Bounds(msg()))
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn require_prime(p: u64, max: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    bounds(p <= max, || format!("prime {p} exceeds {max}"))
}

fn inverse_mod(a: usize, p: usize) -> usize {
    (1..p).find(|&b| a * b % p == 1).expect("nonzero residues are invertible mod a prime")
}

/// A group given by its full multiplication table, as an almost groupoid
/// over its identity.
pub fn from_group(table: &[Vec<usize>], names: Vec<String>) -> Result<AlmostGroupoid> {
    let n = table.len();
    if n == 0 || names.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&c| c >= n)) {
        return Err(Error::NotAGroup(GroupDefect::Malformed));
    }
    let m = |x: usize, y: usize| table[x][y];
    let e = (0..n)
        .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
        .ok_or(Error::NotAGroup(GroupDefect::NoIdentity))?;
    let iota = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| m(x, y) == e && m(y, x) == e)
                .map(id)
                .ok_or(Error::NotAGroup(GroupDefect::NoInverse(id(x))))
        })
        .collect::<Result<Vec<_>>>()?;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(m(x, y), z) != m(x, m(y, z)) {
                    return Err(Error::NotAGroup(GroupDefect::NotAssociative(id(x), id(y), id(z))));
                }
            }
        }
    }
    AlmostGroupoid::new(AlmostParts {
        names,
        units: vec![id(e)],
        theta: vec![id(e); n],
        iota,
        table: PartialTable::from_fn(n, |x, y| Some(id(m(x.index(), y.index())))),
    })
}

/// ℤₙ under addition, elements named `0..n-1`.
pub fn cyclic_group(n: usize) -> Result<AlmostGroupoid> {
    bounds((1..=MAX_ORDER).contains(&n), || format!("group order {n} not in 1..={MAX_ORDER}"))?;
    let table: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    from_group(&table, (0..n).map(|x| x.to_string()).collect())
}

/// The symmetric group on three letters with (στ)(i) = σ(τ(i)).
pub fn symmetric_group_s3() -> AlmostGroupoid {
    let perms: [([usize; 3], &str); 6] = [
        ([0, 1, 2], "e"),
        ([1, 0, 2], "(12)"),
        ([2, 1, 0], "(13)"),
        ([0, 2, 1], "(23)"),
        ([1, 2, 0], "(123)"),
        ([2, 0, 1], "(132)"),
    ];
    let index = |p: [usize; 3]| perms.iter().position(|(q, _)| *q == p).expect("S3 is closed");
    let table: Vec<Vec<usize>> =
        perms.iter().map(|(s, _)| perms.iter().map(|(t, _)| index([s[t[0]], s[t[1]], s[t[2]]])).collect()).collect();
    from_group(&table, perms.iter().map(|(_, n)| n.to_string()).collect()).expect("S3 table is a group")
}

/// ℤ₂ × ℤ₂ with elements `e a b c`.
pub fn klein_four() -> AlmostGroupoid {
    let table: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
    from_group(&table, ["e", "a", "b", "c"].map(String::from).to_vec()).expect("Klein table is a group")
}

/// k units and nothing else: θ = ι = id, u·u = u.
pub fn null_almost_groupoid(k: usize) -> Result<AlmostGroupoid> {
    bounds((1..=MAX_ORDER).contains(&k), || format!("null size {k} not in 1..={MAX_ORDER}"))?;
    AlmostGroupoid::new(AlmostParts {
        names: (1..=k).map(|i| format!("u{i}")).collect(),
        units: (0..k).map(id).collect(),
        theta: (0..k).map(id).collect(),
        iota: (0..k).map(id).collect(),
        table: PartialTable::from_fn(k, |x, y| (x == y).then_some(x)),
    })
}

/// m copies of ℤₙ over an unstructured base of m points: elements (a,c),
/// θ(a,c) = (a,0), (a,c)·(a,c') = (a,c+c'), ι(a,c) = (a,-c).
pub fn z_bundle(m: usize, n: usize) -> Result<AlmostGroupoid> {
    bounds(m >= 1 && n >= 1 && m.saturating_mul(n) <= MAX_ORDER, || {
        format!("zbundle {m} {n}: need m,n >= 1 and m*n <= {MAX_ORDER}")
    })?;
    let at = |a: usize, c: usize| id(a * n + c);
    let split = |x: ElementId| (x.index() / n, x.index() % n);
    AlmostGroupoid::new(AlmostParts {
        names: (0..m).flat_map(|a| (0..n).map(move |c| format!("({a},{c})"))).collect(),
        units: (0..m).map(|a| at(a, 0)).collect(),
        theta: (0..m * n).map(|x| at(split(id(x)).0, 0)).collect(),
        iota: (0..m * n)
            .map(|x| {
                let (a, c) = split(id(x));
                at(a, (n - c) % n)
            })
            .collect(),
        table: PartialTable::from_fn(m * n, |x, y| {
            let ((a, c), (b, d)) = (split(x), split(y));
            (a == b).then(|| at(a, (c + d) % n))
        }),
    })
}

/// The matrices A(a,k) = [[a, ka], [0, 1]] over 𝔽ₚ with a ≠ 0: θ(A(a,k)) =
/// A(1,k) and A(a₁,k)·A(a₂,k) = A(a₁a₂,k).
pub fn matrix_bundle(p: u64) -> Result<AlmostGroupoid> {
    require_prime(p, 61)?;
    let p = p as usize;
    let q = p - 1;
    // Fibers are contiguous: index = k·(p-1) + (a-1).
    let at = |a: usize, k: usize| id(k * q + (a - 1));
    let split = |x: ElementId| (x.index() % q + 1, x.index() / q);
    let n = p * q;
    AlmostGroupoid::new(AlmostParts {
        names: (0..n)
            .map(|x| {
                let (a, k) = split(id(x));
                format!("A({a},{k})")
            })
            .collect(),
        units: (0..p).map(|k| at(1, k)).collect(),
        theta: (0..n).map(|x| at(1, split(id(x)).1)).collect(),
        iota: (0..n)
            .map(|x| {
                let (a, k) = split(id(x));
                at(inverse_mod(a, p), k)
            })
            .collect(),
        table: PartialTable::from_fn(n, |x, y| {
            let ((a1, k1), (a2, k2)) = (split(x), split(y));
            (k1 == k2).then(|| at(a1 * a2 % p, k1))
        }),
    })
}

/// The order-18 almost groupoid on H × ℤ₆ with H = {0, 2, 4}:
/// θ(a,b) = (0, b−a), (a,b)·(c,d) = (a+c, b+c) when b−a = d−c, and
/// ι(a,b) = (−a, b−2a).
pub fn z6_example() -> AlmostGroupoid {
    // u1..u6 = (0,0)..(0,5); p1..p6 = (2,0)..(2,5); p7..p12 = (4,0)..(4,5).
    let at = |a: usize, b: usize| id(a / 2 * 6 + b % 6);
    let split = |x: ElementId| (x.index() / 6 * 2, x.index() % 6);
    let names = (1..=6).map(|i| format!("u{i}")).chain((1..=12).map(|j| format!("p{j}"))).collect();
    let diff = |a: usize, b: usize| (b + 6 - a) % 6;
    AlmostGroupoid::new(AlmostParts {
        names,
        units: (0..6).map(id).collect(),
        theta: (0..18)
            .map(|x| {
                let (a, b) = split(id(x));
                at(0, diff(a, b))
            })
            .collect(),
        iota: (0..18)
            .map(|x| {
                let (a, b) = split(id(x));
                at((6 - a) % 6, (b + 12 - 2 * a) % 6)
            })
            .collect(),
        table: PartialTable::from_fn(18, |x, y| {
            let ((a, b), (c, d)) = (split(x), split(y));
            (diff(a, b) == diff(c, d)).then(|| at((a + c) % 6, (b + c) % 6))
        }),
    })
    .expect("the H x Z6 structure satisfies AG1-AG3")
}

/// X × X for X = {1..k} with (x,y)·(y,z) = (x,z).
pub fn pair_groupoid(k: usize) -> Result<BrandtGroupoid> {
    bounds((1..=64).contains(&k), || format!("pair size {k} not in 1..=64"))?;
    let at = |x: usize, y: usize| id(x * k + y);
    let split = |e: ElementId| (e.index() / k, e.index() % k);
    let n = k * k;
    BrandtGroupoid::new(BrandtParts {
        names: (1..=k).flat_map(|x| (1..=k).map(move |y| format!("({x},{y})"))).collect(),
        units: (0..k).map(|x| at(x, x)).collect(),
        alpha: (0..n).map(|e| at(split(id(e)).0, split(id(e)).0)).collect(),
        beta: (0..n).map(|e| at(split(id(e)).1, split(id(e)).1)).collect(),
        iota: (0..n).map(|e| at(split(id(e)).1, split(id(e)).0)).collect(),
        table: PartialTable::from_fn(n, |e, f| {
            let ((x, y), (z, w)) = (split(e), split(f));
            (y == z).then(|| at(x, w))
        }),
    })
}

/// 𝔽ₚ* × 𝔽ₚ* with b = a⁻¹: α(x,y) = (x,ax), β(x,y) = (by,y),
/// (x,y)·(by,u) = (x,u), ι(x,y) = (by,ax).
pub fn rstar_groupoid(p: u64, a: u64) -> Result<BrandtGroupoid> {
    require_prime(p, 31)?;
    bounds(!a.is_multiple_of(p), || format!("a = {a} is zero mod {p}"))?;
    bounds(a < p, || format!("a = {a} must be a residue in 1..{p}"))?;
    let (p, a) = (p as usize, a as usize);
    let b = inverse_mod(a, p);
    let q = p - 1;
    let at = |x: usize, y: usize| id((x - 1) * q + (y - 1));
    let split = |e: ElementId| (e.index() / q + 1, e.index() % q + 1);
    let n = q * q;
    BrandtGroupoid::new(BrandtParts {
        names: (1..p).flat_map(|x| (1..p).map(move |y| format!("({x},{y})"))).collect(),
        units: (1..p).map(|x| at(x, a * x % p)).collect(),
        alpha: (0..n)
            .map(|e| {
                let (x, _) = split(id(e));
                at(x, a * x % p)
            })
            .collect(),
        beta: (0..n)
            .map(|e| {
                let (_, y) = split(id(e));
                at(b * y % p, y)
            })
            .collect(),
        iota: (0..n)
            .map(|e| {
                let (x, y) = split(id(e));
                at(b * y % p, a * x % p)
            })
            .collect(),
        table: PartialTable::from_fn(n, |e, f| {
            let ((x, y), (z, u)) = (split(e), split(f));
            (z == b * y % p).then(|| at(x, u))
        }),
    })
}

/// Componentwise product; (x₁,x₂)·(y₁,y₂) is defined when both components are.
pub fn direct_product(g1: &AlmostGroupoid, g2: &AlmostGroupoid) -> Result<AlmostGroupoid> {
    let (n1, n2) = (g1.order(), g2.order());
    bounds(n1 * n2 <= MAX_ORDER, || format!("product order {} exceeds {MAX_ORDER}", n1 * n2))?;
    let at = |x: ElementId, y: ElementId| id(x.index() * n2 + y.index());
    let split = |e: ElementId| (id(e.index() / n2), id(e.index() % n2));
    let n = n1 * n2;
    let ids = || (0..n).map(id);
    AlmostGroupoid::new(AlmostParts {
        names: ids()
            .map(|e| {
                let (x, y) = split(e);
                format!("({},{})", g1.name(x), g2.name(y))
            })
            .collect(),
        units: g1.units().iter().flat_map(|&u| g2.units().iter().map(move |&v| at(u, v))).collect(),
        theta: ids()
            .map(|e| {
                let (x, y) = split(e);
                at(g1.th(x), g2.th(y))
            })
            .collect(),
        iota: ids()
            .map(|e| {
                let (x, y) = split(e);
                at(g1.inv(x), g2.inv(y))
            })
            .collect(),
        table: PartialTable::from_fn(n, |e, f| {
            let ((x1, x2), (y1, y2)) = (split(e), split(f));
            Some(at(g1.prod(x1, y1)?, g2.prod(x2, y2)?))
        }),
    })
}

/// Tagged union with no composable pairs across the two sides. Names get
/// `L:`/`R:` prefixes only when the two carriers share a name.
pub fn disjoint_union(g1: &AlmostGroupoid, g2: &AlmostGroupoid) -> Result<AlmostGroupoid> {
    let (n1, n2) = (g1.order(), g2.order());
    bounds(n1 + n2 <= MAX_ORDER, || format!("union order {} exceeds {MAX_ORDER}", n1 + n2))?;
    let left: HashSet<&str> = g1.names().iter().map(String::as_str).collect();
    let collide = g2.names().iter().any(|n| left.contains(n.as_str()));
    let names = if collide {
        g1.names().iter().map(|n| format!("L:{n}")).chain(g2.names().iter().map(|n| format!("R:{n}"))).collect()
    } else {
        g1.names().iter().chain(g2.names()).cloned().collect()
    };
    let shift = |x: ElementId| id(x.index() + n1);
    let side = |e: ElementId| if e.index() < n1 { (0, e) } else { (1, id(e.index() - n1)) };
    let n = n1 + n2;
    AlmostGroupoid::new(AlmostParts {
        names,
        units: g1.units().iter().copied().chain(g2.units().iter().map(|&u| shift(u))).collect(),
        theta: (0..n1).map(|x| g1.th(id(x))).chain((0..n2).map(|x| shift(g2.th(id(x))))).collect(),
        iota: (0..n1).map(|x| g1.inv(id(x))).chain((0..n2).map(|x| shift(g2.inv(id(x))))).collect(),
        table: PartialTable::from_fn(n, |e, f| match (side(e), side(f)) {
            ((0, x), (0, y)) => g1.prod(x, y),
            ((1, x), (1, y)) => g2.prod(x, y).map(shift),
            _ => None,
        }),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupFamily {
    Cyclic(usize),
    S3,
    Klein4,
}

/// A named family with parameters, in the prefix grammar of `amg gen`:
/// `group-zn N`, `group-s3`, `group-klein4`, `null K`, `zbundle M N`,
/// `matrix P`, `z6`, `pair K`, `rstar P A`, `product F1 F2`, `union F1 F2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Group(GroupFamily),
    NullAlmost(usize),
    ZBundle { m: usize, n: usize },
    MatrixBundle { p: u64 },
    Z6Example,
    PairGroupoid(usize),
    RStarGroupoid { p: u64, a: u64 },
    DirectProduct(Box<FamilySpec>, Box<FamilySpec>),
    DisjointUnion(Box<FamilySpec>, Box<FamilySpec>),
}

impl FamilySpec {
    pub fn parse<S: AsRef<str>>(tokens: &[S]) -> Result<FamilySpec> {
        let tokens: Vec<&str> = tokens.iter().map(AsRef::as_ref).collect();
        let (spec, rest) = Self::parse_prefix(&tokens)?;
        match rest.first() {
            None => Ok(spec),
            Some(extra) => Err(Error::FamilySyntax(format!("unexpected trailing argument '{extra}'"))),
        }
    }

    fn parse_prefix<'a, 'b>(tokens: &'a [&'b str]) -> Result<(FamilySpec, &'a [&'b str])> {
        let (head, rest) = tokens.split_first().ok_or_else(|| Error::FamilySyntax("missing family name".into()))?;
        fn num<T: std::str::FromStr>(family: &str, rest: &[&str], i: usize) -> Result<T> {
            let token =
                rest.get(i).ok_or_else(|| Error::FamilySyntax(format!("{family}: missing parameter {}", i + 1)))?;
            token.parse().map_err(|_| Error::FamilySyntax(format!("{family}: '{token}' is not a non-negative integer")))
        }
        let spec = match *head {
            "group-zn" => (FamilySpec::Group(GroupFamily::Cyclic(num(head, rest, 0)?)), &rest[1..]),
            "group-s3" => (FamilySpec::Group(GroupFamily::S3), rest),
            "group-klein4" => (FamilySpec::Group(GroupFamily::Klein4), rest),
            "null" => (FamilySpec::NullAlmost(num(head, rest, 0)?), &rest[1..]),
            "zbundle" => (FamilySpec::ZBundle { m: num(head, rest, 0)?, n: num(head, rest, 1)? }, &rest[2..]),
            "matrix" => (FamilySpec::MatrixBundle { p: num(head, rest, 0)? }, &rest[1..]),
            "z6" => (FamilySpec::Z6Example, rest),
            "pair" => (FamilySpec::PairGroupoid(num(head, rest, 0)?), &rest[1..]),
            "rstar" => (FamilySpec::RStarGroupoid { p: num(head, rest, 0)?, a: num(head, rest, 1)? }, &rest[2..]),
            "product" | "union" => {
                let (left, rest) = Self::parse_prefix(rest)?;
                let (right, rest) = Self::parse_prefix(rest)?;
                let spec = if *head == "product" {
                    FamilySpec::DirectProduct(Box::new(left), Box::new(right))
                } else {
                    FamilySpec::DisjointUnion(Box::new(left), Box::new(right))
                };
                (spec, rest)
            }
            other => return Err(Error::FamilySyntax(format!("unknown family '{other}'"))),
        };
        Ok(spec)
    }

    pub fn build(&self) -> Result<Structure> {
        let almost = |spec: &FamilySpec| match spec.build()? {
            Structure::Almost(g) => Ok(g),
            Structure::Brandt(_) => Err(Error::FamilySyntax(format!("'{spec}' is not an almost groupoid"))),
        };
        Ok(match self {
            FamilySpec::Group(GroupFamily::Cyclic(n)) => Structure::Almost(cyclic_group(*n)?),
            FamilySpec::Group(GroupFamily::S3) => Structure::Almost(symmetric_group_s3()),
            FamilySpec::Group(GroupFamily::Klein4) => Structure::Almost(klein_four()),
            FamilySpec::NullAlmost(k) => Structure::Almost(null_almost_groupoid(*k)?),
            FamilySpec::ZBundle { m, n } => Structure::Almost(z_bundle(*m, *n)?),
            FamilySpec::MatrixBundle { p } => Structure::Almost(matrix_bundle(*p)?),
            FamilySpec::Z6Example => Structure::Almost(z6_example()),
            FamilySpec::PairGroupoid(k) => Structure::Brandt(pair_groupoid(*k)?),
            FamilySpec::RStarGroupoid { p, a } => Structure::Brandt(rstar_groupoid(*p, *a)?),
            FamilySpec::DirectProduct(l, r) => Structure::Almost(direct_product(&almost(l)?, &almost(r)?)?),
            FamilySpec::DisjointUnion(l, r) => Structure::Almost(disjoint_union(&almost(l)?, &almost(r)?)?),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Group(GroupFamily::Cyclic(n)) => write!(f, "group-zn {n}"),
            FamilySpec::Group(GroupFamily::S3) => f.write_str("group-s3"),
            FamilySpec::Group(GroupFamily::Klein4) => f.write_str("group-klein4"),
            FamilySpec::NullAlmost(k) => write!(f, "null {k}"),
            FamilySpec::ZBundle { m, n } => write!(f, "zbundle {m} {n}"),
            FamilySpec::MatrixBundle { p } => write!(f, "matrix {p}"),
            FamilySpec::Z6Example => f.write_str("z6"),
            FamilySpec::PairGroupoid(k) => write!(f, "pair {k}"),
            FamilySpec::RStarGroupoid { p, a } => write!(f, "rstar {p} {a}"),
            FamilySpec::DirectProduct(l, r) => write!(f, "product {l} {r}"),
            FamilySpec::DisjointUnion(l, r) => write!(f, "union {l} {r}"),
        }
    }
}
