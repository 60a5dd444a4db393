//! The acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line, with its runtime against its ceiling.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use amg_core::constructions::{
    cyclic_group, matrix_bundle, null_almost_groupoid, pair_groupoid, rstar_groupoid, symmetric_group_s3, z6_example,
    z_bundle,
};
use amg_core::format::{self, LoadError};
use amg_core::{
    find_isomorphism, is_almost_morphism, is_brandt_morphism, is_isomorphism, verify_almost, verify_brandt, ElementId,
    Error, FiniteGroupoid, MorphismPair, MorphismWitness, Structure,
};
use common::{
    all_subgroupoids, builtin_almost, center_by_fibers, is_subgroupoid, is_wide, mask_of, members, set_product, Raw,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{FIXTURES}/{name}")).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

fn names_of<G: FiniteGroupoid>(g: &G, s: &amg_core::ElementSubset) -> Vec<String> {
    g.names_of(s).into_iter().map(str::to_owned).collect()
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn z6_golden_values() {
    let g = z6_example();
    let el = |n: &str| g.element(n).unwrap_or_else(|| panic!("no element {n}"));
    let name = |x: ElementId| g.name(x).to_owned();
    assert_eq!(g.order(), 18);
    assert_eq!(g.units().len(), 6);
    assert_eq!(name(g.theta(el("p7")).unwrap()), "u3");
    assert_eq!(name(g.iota(el("p4")).unwrap()), "p12");
    assert_eq!(name(g.iota(el("u6")).unwrap()), "u6");
    assert_eq!(names_of(&g, &g.isotropy_group(el("u3")).unwrap()), strings(&["u3", "p5", "p7"]));
    assert_eq!(names_of(&g, &g.isotropy_group(el("u1")).unwrap()), strings(&["u1", "p3", "p11"]));
    assert_eq!(name(g.mul(el("u6"), el("p10")).unwrap()), "p10");
    assert_eq!(name(g.mul(el("p4"), el("p4")).unwrap()), "p12");
    assert_eq!(name(g.mul(el("p8"), el("p6")).unwrap()), "u4");
    assert!(!g.composable(el("p1"), el("p10")).unwrap());
    assert!(matches!(g.mul(el("p1"), el("p10")), Err(Error::UndefinedProduct { .. })));
    let c_p1 = g.centralizer(el("p1")).unwrap();
    assert_eq!(names_of(&g, &c_p1), strings(&["u5", "p1", "p9"]));
    assert_eq!(c_p1, g.isotropy_group(el("u5")).unwrap());
    assert_eq!(g.centralizer(el("u1")).unwrap(), g.isotropy_group(el("u1")).unwrap());
    assert_eq!(g.isotropy_subgroupoid(), g.whole());
    assert_eq!(g.center(), g.whole());
}

fn z6_golden_tables() {
    let g = z6_example();
    let golden = fixture("z6_example.tables.txt");
    let rendered = format::render_tables(&Structure::Almost(g.clone())).unwrap();
    assert_eq!(rendered, golden);
    // Count the defined cells of the golden grid independently: each
    // non-blank cell is one token after the row label's bar.
    let grid = golden.split("\n\n").nth(1).expect("two tables");
    let defined: usize = grid.lines().skip(2).map(|l| l.split_once('|').unwrap().1.split_whitespace().count()).sum();
    assert_eq!(defined, 54);
    assert_eq!(g.table().defined_count(), 54);
    let first = golden.split("\n\n").next().unwrap();
    let columns = first.lines().next().unwrap().split_once('|').unwrap().1.split_whitespace().count();
    assert_eq!(columns, 18);
}

fn axiom_suites() {
    let mut almost = Vec::new();
    for m in 1..=3 {
        for n in 1..=8 {
            almost.push(z_bundle(m, n).unwrap());
        }
    }
    for p in [2, 3, 5, 7] {
        almost.push(matrix_bundle(p).unwrap());
    }
    for k in 1..=5 {
        almost.push(null_almost_groupoid(k).unwrap());
    }
    for n in 1..=8 {
        almost.push(cyclic_group(n).unwrap());
    }
    almost.push(symmetric_group_s3());
    for g in &almost {
        assert!(verify_almost(&g.to_parts()).unwrap().passed());
        assert!(g.derived_identities().passed());
    }
    let mut brandt: Vec<_> = (1..=5).map(|k| pair_groupoid(k).unwrap()).collect();
    brandt.push(rstar_groupoid(5, 2).unwrap());
    for b in &brandt {
        assert!(verify_brandt(&b.to_parts()).unwrap().passed());
        assert!(b.derived_identities().passed());
    }
}

fn pair_is_not_almost() {
    assert!(pair_groupoid(1).unwrap().to_almost().is_ok());
    for k in 2..=16 {
        let b = pair_groupoid(k).unwrap();
        match b.to_almost() {
            Err(Error::NotAlmost { witness }) => {
                assert_ne!(b.alpha(witness).unwrap(), b.beta(witness).unwrap());
                let name = b.name(witness);
                let (x, y) = name.trim_matches(|c| c == '(' || c == ')').split_once(',').unwrap();
                assert_ne!(x, y, "witness {name} must be off the diagonal");
            }
            other => panic!("pair_groupoid({k}) converted: {other:?}"),
        }
    }
}

fn morphism_suite() {
    for n in 2..=8 {
        let (src, dst) = (z_bundle(2, n).unwrap(), cyclic_group(n).unwrap());
        // (a,c) ↦ c; both units go to 0.
        let f = (0..2 * n).map(|x| dst.element(&(x % n).to_string()).unwrap()).collect();
        let projection = MorphismPair { f, f0: vec![dst.element("0").unwrap(); 2] };
        assert!(is_almost_morphism(&src, &dst, &projection).unwrap().is_morphism(), "projection n={n}");
        assert!(!is_isomorphism(&src, &dst, &projection));

        let mut mutated = projection.clone();
        let unit = src.element("(1,0)").unwrap();
        mutated.f[unit.index()] = dst.element("1").unwrap();
        let witness = is_almost_morphism(&src, &dst, &mutated).unwrap().witness;
        assert!(
            matches!(witness, Some(MorphismWitness::Product { x, y, .. }) if x == unit && y == unit),
            "{witness:?}"
        );

        for g in [&src, &dst] {
            let id = MorphismPair::identity(g);
            assert!(is_almost_morphism(g, g, &id).unwrap().is_morphism());
            assert!(is_isomorphism(g, g, &id));
            let mut bad = id.clone();
            let u = g.units()[0];
            bad.f[u.index()] = ElementId::new((u.index() + 1) % g.order());
            assert!(is_almost_morphism(g, g, &bad).unwrap().witness.is_some() || g.order() == 1);
        }
    }
    for k in 1..=4 {
        let b = pair_groupoid(k).unwrap();
        let id = MorphismPair::identity(&b);
        assert!(is_brandt_morphism(&b, &b, &id).unwrap().is_morphism());
        assert!(is_isomorphism(&b, &b, &id));
        if k > 1 {
            let mut bad = id.clone();
            bad.f[0] = ElementId::new(1);
            assert!(is_brandt_morphism(&b, &b, &bad).unwrap().witness.is_some());
        }
    }
}

fn substructure_oracles() {
    for (label, g) in builtin_almost(12) {
        let raw = Raw::of(&g);
        let subs = all_subgroupoids(&raw);
        let meet = |seed: u64| subs.iter().filter(|&&h| h & seed == seed).fold(u64::MAX >> (64 - raw.n), |m, &h| m & h);
        let n = raw.n;
        let mut seeds: Vec<u64> = (0..n).map(|x| 1 << x).collect();
        seeds.extend((0..n).flat_map(|x| (x + 1..n).map(move |y| 1 << x | 1 << y)));
        for seed in seeds {
            let s = g.subset(members(seed).map(ElementId::new)).unwrap();
            let generated = mask_of(g.generated_subgroupoid(&s).unwrap().iter().map(ElementId::index));
            assert_eq!(generated, meet(seed), "{label}: seed {seed:#b}");
        }
        for a in (0..n).map(ElementId::new) {
            let cyclic = g.cyclic_subgroupoid(a).unwrap();
            let fiber = g.isotropy_group(g.theta(a).unwrap()).unwrap();
            assert!(cyclic.is_subset_of(&fiber), "{label}");
            assert_eq!(fiber.len() % cyclic.len(), 0, "{label}");
        }
    }
}

fn center_and_products() {
    let structures = builtin_almost(12);
    for (label, g) in &structures {
        let raw = Raw::of(g);
        let center: Vec<usize> = g.center().iter().map(ElementId::index).collect();
        assert_eq!(center, center_by_fibers(&raw), "{label}");
        let report = g.is_almost_subgroupoid(&g.center()).unwrap();
        assert!(report.is_subgroupoid && report.is_wide && report.is_normal, "{label}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let pools: Vec<(&String, &amg_core::AlmostGroupoid, Raw, Vec<u64>)> = structures
        .iter()
        .map(|(label, g)| {
            let raw = Raw::of(g);
            let subs = all_subgroupoids(&raw);
            (label, g, raw, subs)
        })
        .collect();
    let mut commuting = 0;
    let mut attempts = 0;
    while commuting < 100 {
        attempts += 1;
        assert!(attempts < 100_000, "could not sample 100 commuting wide pairs");
        let (label, g, raw, subs) = &pools[rng.gen_range(0..pools.len())];
        let wide: Vec<u64> = subs.iter().copied().filter(|&m| is_wide(raw, m)).collect();
        let (h, k) = (wide[rng.gen_range(0..wide.len())], wide[rng.gen_range(0..wide.len())]);
        if set_product(raw, h, k) != set_product(raw, k, h) {
            continue;
        }
        commuting += 1;
        let (hs, ks) =
            (g.subset(members(h).map(ElementId::new)).unwrap(), g.subset(members(k).map(ElementId::new)).unwrap());
        assert!(g.hk_commutes(&hs, &ks).unwrap());
        let hk = g.set_product(&hs, &ks).unwrap();
        let report = g.is_almost_subgroupoid(&hk).unwrap();
        assert!(report.is_subgroupoid && report.is_wide, "{label}: H={h:#b} K={k:#b}");
    }

    for _ in 0..500 {
        let (label, g, raw, subs) = &pools[rng.gen_range(0..pools.len())];
        let count = rng.gen_range(2..=3);
        let family: Vec<u64> = (0..count).map(|_| subs[rng.gen_range(0..subs.len())]).collect();
        let meet = family.iter().fold(u64::MAX, |m, &h| m & h);
        let sets: Vec<_> = family.iter().map(|&h| g.subset(members(h).map(ElementId::new)).unwrap()).collect();
        let refs: Vec<_> = sets.iter().collect();
        match g.intersect_subgroupoids(&refs) {
            Ok(i) => {
                assert_eq!(mask_of(i.iter().map(ElementId::index)), meet, "{label}");
                assert!(g.is_almost_subgroupoid(&i).unwrap().is_subgroupoid, "{label}");
                assert!(is_subgroupoid(raw, meet));
            }
            Err(Error::EmptyIntersection) => assert_eq!(meet, 0, "{label}"),
            Err(e) => panic!("{label}: {e}"),
        }
    }
}

fn isotropy_groups_isomorphic() {
    let mut structures: Vec<_> = (1..=4).map(|k| pair_groupoid(k).unwrap()).collect();
    structures.push(rstar_groupoid(5, 2).unwrap());
    for b in &structures {
        let groups: Vec<_> = b.units().iter().map(|&u| b.isotropy_as_group(u).unwrap()).collect();
        for g in &groups {
            for h in &groups {
                let m = find_isomorphism(g, h).unwrap().expect("isotropy groups are isomorphic");
                assert!(is_almost_morphism(g, h, &m).unwrap().is_morphism());
                assert!(is_isomorphism(g, h, &m));
            }
        }
    }
}

fn round_trip_and_fuzz() {
    let mut goldens = 0;
    for entry in std::fs::read_dir(FIXTURES).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "agt") {
            let text = std::fs::read_to_string(&path).unwrap();
            let parsed = format::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(format::serialize(&parsed), text, "{}", path.display());
            goldens += 1;
        }
    }
    assert!(goldens >= 1);

    let golden = fixture("z6_example.agt").into_bytes();
    let original = format::parse(std::str::from_utf8(&golden).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut parse_errors, mut invalid, mut verified) = (0, 0, 0);
    for _ in 0..10_000 {
        let mut bytes = golden.clone();
        let at = rng.gen_range(0..bytes.len());
        let mut b: u8 = rng.gen();
        while b == bytes[at] {
            b = rng.gen();
        }
        bytes[at] = b;
        match panic::catch_unwind(|| format::parse_bytes(&bytes)) {
            Ok(Ok(s)) => {
                assert!(s.verify().passed());
                verified += 1;
            }
            Ok(Err(LoadError::Parse(e))) => {
                assert!(e.line >= 1 && e.column >= 1);
                parse_errors += 1;
            }
            Ok(Err(LoadError::Invalid(_))) => invalid += 1,
            Err(_) => panic!("parser panicked on mutation at byte {at} -> {b:#04x}"),
        }
    }
    assert_eq!(parse_errors + invalid + verified, 10_000);
    assert!(format::parse_bytes(&golden).unwrap() == original);
}

type Criterion = (&'static str, Duration, fn());

fn main() {
    let criteria: [Criterion; 9] = [
        ("z6_example golden values", Duration::from_secs(1), z6_golden_values),
        ("z6_example tables match golden file", Duration::from_secs(1), z6_golden_tables),
        ("axiom suites on built-in families", Duration::from_secs(5), axiom_suites),
        ("pair groupoids are not almost groupoids", Duration::from_secs(1), pair_is_not_almost),
        ("projection and identity morphisms", Duration::from_secs(1), morphism_suite),
        ("generated and cyclic subgroupoids vs brute force", Duration::from_secs(30), substructure_oracles),
        ("center, commuting products, intersections", Duration::from_secs(30), center_and_products),
        ("isotropy groups pairwise isomorphic", Duration::from_secs(5), isotropy_groups_isomorphic),
        ("format round trip and mutation fuzz", Duration::from_secs(30), round_trip_and_fuzz),
    ];
    // Keep panic messages for failing criteria, but only ours.
    panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (i, (name, ceiling, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(()) if elapsed <= *ceiling => "PASS",
            Ok(()) => "FAIL (over time)",
            Err(_) => "FAIL",
        };
        if verdict != "PASS" {
            failed += 1;
        }
        println!("criterion {}: {verdict} [{name}] {:.3}s / {}s", i + 1, elapsed.as_secs_f64(), ceiling.as_secs());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
