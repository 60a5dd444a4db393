//! `amg`: verify, analyze, generate and export finite almost groupoids and
//! Brandt groupoids stored in the AGT text format.

use std::fmt::Write as _;
use std::io::{self, IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use amg_core::format::{self, AgtDocument, LoadError};
use amg_core::morphism::check_groupoid_morphism;
use amg_core::substructure::{SubgroupoidReport, SubgroupoidViolation};
use amg_core::{
    find_isomorphism, is_isomorphism, AlmostGroupoid, ElementId, ElementSubset, Error, FamilySpec, FiniteGroupoid,
    Structure, VerificationReport,
};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "amg", version, about = "Finite almost groupoids and Brandt groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a structure file.
    Verify {
        file: PathBuf,
        /// Also check the identities that follow from the axioms.
        #[arg(long)]
        laws: bool,
    },
    /// Kind, order, units, fiber sizes and flags.
    Info { file: PathBuf },
    /// Write a built-in family in canonical form.
    Gen {
        /// Family and parameters, e.g. `zbundle 2 6` or `product z6 null 2`.
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Elements of the isotropy group at a unit.
    Isotropy { file: PathBuf, unit: String },
    /// The center of an almost groupoid.
    Center { file: PathBuf },
    /// Elements of the isotropy group of ELEM that commute with it.
    Centralizer { file: PathBuf, elem: String },
    /// The subgroupoid generated by the given elements.
    Closure {
        file: PathBuf,
        #[arg(required = true, num_args = 1..)]
        elems: Vec<String>,
    },
    /// Whether the given elements form a subgroupoid, and whether it is wide and normal.
    Subcheck {
        file: PathBuf,
        #[arg(required = true, num_args = 1..)]
        elems: Vec<String>,
    },
    /// The set product HK.
    Product {
        file: PathBuf,
        /// Elements of H, separated by spaces or commas.
        #[arg(long = "h", required = true, num_args = 1..)]
        h: Vec<String>,
        /// Elements of K, separated by spaces or commas.
        #[arg(long = "k", required = true, num_args = 1..)]
        k: Vec<String>,
    },
    /// Intersection of subgroupoids.
    Intersect {
        file: PathBuf,
        /// Subgroupoids separated by ';', elements by spaces or commas.
        #[arg(long, required = true)]
        sets: String,
    },
    /// Check a map file against source and target structures.
    Morphcheck { src: PathBuf, dst: PathBuf, map: PathBuf },
    /// Search for an isomorphism between two structures.
    Iso { src: PathBuf, dst: PathBuf },
    /// Print a structure in canonical form, or as tables.
    Export {
        file: PathBuf,
        #[arg(long)]
        tables: bool,
    },
}

/// Exit status 1 carries a failed predicate or verification, either as a
/// report on stdout or a one-line diagnostic; 2 a usage, input or parse
/// problem.
enum Failure {
    Report(String),
    Predicate(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(report) => {
                Failure::Predicate(format!("structure failed verification: {}", first_violation(&report)))
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn first_violation(report: &VerificationReport) -> String {
    report.violations.first().map_or_else(String::new, |v| format!("{}: {}", v.law, v.message))
}

struct Style {
    color: bool,
}

impl Style {
    fn from_env() -> Style {
        let color = match std::env::var("AMG_COLOR").as_deref() {
            Ok("1") => true,
            Ok("0") => false,
            _ => io::stdout().is_terminal(),
        };
        Style { color }
    }

    fn verdict(&self, ok: bool) -> String {
        match (ok, self.color) {
            (true, true) => "\x1b[32mOK\x1b[0m".into(),
            (false, true) => "\x1b[31mFAIL\x1b[0m".into(),
            (true, false) => "OK".into(),
            (false, false) => "FAIL".into(),
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    let mut bytes = Vec::new();
    let result = if path.as_os_str() == "-" {
        io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::read(path).map(|b| bytes = b)
    };
    result.map_err(|e| Failure::Usage(format!("cannot read '{}': {e}", path.display())))?;
    Ok(bytes)
}

fn load_error(path: &Path, e: LoadError) -> Failure {
    match e {
        LoadError::Parse(p) => Failure::Usage(format!("{}:{}:{}: {}", path.display(), p.line, p.column, p.kind)),
        LoadError::Invalid(Error::Verification(report)) => Failure::Predicate(format!(
            "{}: structure failed verification: {}",
            path.display(),
            first_violation(&report)
        )),
        LoadError::Invalid(other) => Failure::Usage(format!("{}: {other}", path.display())),
    }
}

fn load(path: &Path) -> Result<Structure, Failure> {
    format::parse_bytes(&read_input(path)?).map_err(|e| load_error(path, e))
}

fn load_almost(path: &Path, command: &str) -> Result<AlmostGroupoid, Failure> {
    match load(path)? {
        Structure::Almost(g) => Ok(g),
        Structure::Brandt(_) => Err(Failure::Usage(format!(
            "{command} needs an almost groupoid; '{}' is a Brandt groupoid",
            path.display()
        ))),
    }
}

/// Names given as separate arguments or joined by commas or whitespace.
fn split_names(args: &[String]) -> Vec<&str> {
    args.iter().flat_map(|a| a.split(|c: char| c == ',' || c.is_whitespace())).filter(|s| !s.is_empty()).collect()
}

fn subset<G: FiniteGroupoid>(g: &G, names: &[&str]) -> Result<ElementSubset, Failure> {
    if names.is_empty() {
        return Err(Failure::Usage("empty element list".into()));
    }
    Ok(g.subset_by_names(names)?)
}

fn element<G: FiniteGroupoid + ?Sized>(g: &G, name: &str) -> Result<ElementId, Failure> {
    g.element(name).ok_or_else(|| Failure::Usage(format!("no element named '{name}'")))
}

fn name_line<G: FiniteGroupoid + ?Sized>(g: &G, subset: &ElementSubset) -> String {
    let names: Vec<&str> = subset.iter().map(|x| g.name(x)).collect();
    names.join(" ") + "\n"
}

fn report_lines(out: &mut String, heading: &str, report: &VerificationReport, style: &Style) {
    let laws: Vec<String> =
        report.laws.iter().map(|&law| format!("{law} {}", style.verdict(report.holds(law)))).collect();
    let _ = writeln!(out, "{heading}: {}", laws.join(", "));
    for v in &report.violations {
        let _ = writeln!(out, "  {}: {}", v.law, v.message);
    }
}

fn verify(file: &Path, laws: bool, style: &Style) -> Outcome {
    let text = read_input(file)?;
    let doc = format::decode(&text).and_then(AgtDocument::parse).map_err(|e| load_error(file, LoadError::Parse(e)))?;
    let kind = doc.kind();
    let mut out = format!("kind: {}\norder: {}\n", kind.as_str(), doc.names.len());
    match doc.into_structure() {
        Ok(s) => {
            report_lines(&mut out, "axioms", &s.verify(), style);
            let mut ok = true;
            if laws {
                let derived = s.derived_identities();
                report_lines(&mut out, "identities", &derived, style);
                ok = derived.passed();
            }
            out += if ok { "verdict: verified\n" } else { "verdict: failed\n" };
            if ok {
                Ok(out)
            } else {
                Err(Failure::Report(out))
            }
        }
        Err(Error::Verification(report)) => {
            report_lines(&mut out, "axioms", &report, style);
            out += "verdict: failed\n";
            Err(Failure::Report(out))
        }
        Err(other) => Err(Failure::Usage(format!("{}: {other}", file.display()))),
    }
}

/// Every isotropy group is abelian.
fn commutative<G: FiniteGroupoid + ?Sized>(g: &G) -> bool {
    let loops: Vec<ElementId> =
        (0..g.order()).map(ElementId::new).filter(|&x| g.source_unit(x) == g.target_unit(x)).collect();
    loops
        .iter()
        .all(|&x| loops.iter().all(|&y| g.source_unit(x) != g.source_unit(y) || g.product(x, y) == g.product(y, x)))
}

fn info(file: &Path) -> Outcome {
    let s = load(file)?;
    let g = s.groupoid();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut out = format!("kind: {}\norder: {}\nunits: {}\n", s.kind().as_str(), g.order(), g.units().len());
    let sizes: Vec<String> = match &s {
        Structure::Almost(a) => a.fiber_sizes().iter().map(|&(u, n)| format!("{}:{n}", g.name(u))).collect(),
        Structure::Brandt(b) => b
            .units()
            .iter()
            .map(|&u| format!("{}:{}", g.name(u), b.isotropy_group(u).expect("units have isotropy groups").len()))
            .collect(),
    };
    let _ = writeln!(out, "fiber sizes: {}", sizes.join(" "));
    let _ = writeln!(out, "abelian: {}", yes_no(commutative(g)));
    if let Structure::Brandt(b) = &s {
        let _ = writeln!(out, "transitive: {}", yes_no(b.is_transitive()));
    }
    Ok(out)
}

fn gen(family: &[String], output: Option<&Path>) -> Outcome {
    let spec = FamilySpec::parse(family)?;
    let text = format::serialize(&spec.build()?);
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Failure::Usage(format!("cannot write '{}': {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn isotropy(file: &Path, unit: &str) -> Outcome {
    let s = load(file)?;
    let u = element(s.groupoid(), unit)?;
    let group = match &s {
        Structure::Almost(g) => g.isotropy_group(u),
        Structure::Brandt(b) => b.isotropy_group(u),
    }
    .map_err(|e| match e {
        Error::NotAUnit(_) => Failure::Usage(format!("'{unit}' is not a unit")),
        other => other.into(),
    })?;
    Ok(name_line(s.groupoid(), &group))
}

fn describe_violation<G: FiniteGroupoid>(g: &G, v: SubgroupoidViolation) -> String {
    let n = |x| g.name(x);
    match v {
        SubgroupoidViolation::NotClosed { x, y, product } => format!("{} * {} = {} is outside", n(x), n(y), n(product)),
        SubgroupoidViolation::MissingInverse { x, inverse } => format!("inverse {} of {} is outside", n(inverse), n(x)),
        SubgroupoidViolation::MissingUnit(u) => format!("unit {} is not covered", n(u)),
        SubgroupoidViolation::NotNormal { g: c, h, conjugate } => {
            format!("{} * {} * iota({0}) = {} is outside", n(c), n(h), n(conjugate))
        }
    }
}

fn subcheck_report<G: FiniteGroupoid>(g: &G, r: &SubgroupoidReport) -> Outcome {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut out = format!(
        "subgroupoid: {}\nwide: {}\nnormal: {}\n",
        yes_no(r.is_subgroupoid),
        yes_no(r.is_wide),
        yes_no(r.is_normal)
    );
    let _ = write!(out, "units: {}", name_line(g, &r.units));
    if let Some(v) = r.violation {
        let _ = writeln!(out, "witness: {}", describe_violation(g, v));
    }
    if r.is_subgroupoid {
        Ok(out)
    } else {
        Err(Failure::Report(out))
    }
}

fn subcheck(file: &Path, elems: &[String]) -> Outcome {
    let names = split_names(elems);
    match load(file)? {
        Structure::Almost(g) => subcheck_report(&g, &g.is_almost_subgroupoid(&subset(&g, &names)?)?),
        Structure::Brandt(b) => subcheck_report(&b, &b.is_brandt_subgroupoid(&subset(&b, &names)?)?),
    }
}

fn intersect(file: &Path, sets: &str) -> Outcome {
    let g = load_almost(file, "intersect")?;
    let family =
        sets.split(';').map(|part| subset(&g, &split_names(&[part.to_owned()]))).collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&ElementSubset> = family.iter().collect();
    match g.intersect_subgroupoids(&refs) {
        Ok(meet) => Ok(name_line(&g, &meet)),
        Err(Error::NotSubgroupoid { index }) => {
            Err(Failure::Predicate(format!("set {} is not a subgroupoid", index + 1)))
        }
        Err(Error::EmptyIntersection) => Err(Failure::Predicate("intersection is empty".into())),
        Err(e) => Err(e.into()),
    }
}

fn morphcheck(src: &Path, dst: &Path, map: &Path) -> Outcome {
    let (s, t) = (load(src)?, load(dst)?);
    let text = read_input(map)?;
    let parsed = format::decode(&text)
        .map_err(LoadError::Parse)
        .and_then(|text| format::parse_morphism(text, s.groupoid(), t.groupoid()))
        .map_err(|e| load_error(map, e))?;
    // Mixed kinds are compared through the Brandt presentation of the almost side.
    let (sb, tb);
    let (sg, tg): (&dyn FiniteGroupoid, &dyn FiniteGroupoid) = if s.kind() == t.kind() {
        (s.groupoid(), t.groupoid())
    } else {
        sb = s.to_brandt();
        tb = t.to_brandt();
        (&sb, &tb)
    };
    let check = check_groupoid_morphism(sg, tg, &parsed)?;
    match &check.witness {
        None => {
            let iso = if is_isomorphism(sg, tg, &parsed) { "yes" } else { "no" };
            Ok(format!("morphism: yes\nisomorphism: {iso}\n"))
        }
        Some(w) => Err(Failure::Report(format!("morphism: no\nwitness: {}\n", w.describe(sg, tg)))),
    }
}

fn iso(src: &Path, dst: &Path) -> Outcome {
    let (s, t) = (load(src)?, load(dst)?);
    match find_isomorphism(s.groupoid(), t.groupoid())? {
        Some(m) => Ok(format!("isomorphic\n{}", format::serialize_morphism(s.groupoid(), t.groupoid(), &m))),
        None => Err(Failure::Report("not isomorphic\n".into())),
    }
}

fn export(file: &Path, tables: bool) -> Outcome {
    let s = load(file)?;
    if tables {
        Ok(format::render_tables(&s)?)
    } else {
        Ok(format::serialize(&s))
    }
}

fn run(command: Command) -> Outcome {
    let style = Style::from_env();
    match command {
        Command::Verify { file, laws } => verify(&file, laws, &style),
        Command::Info { file } => info(&file),
        Command::Gen { family, output } => gen(&family, output.as_deref()),
        Command::Isotropy { file, unit } => isotropy(&file, &unit),
        Command::Center { file } => {
            let g = load_almost(&file, "center")?;
            Ok(name_line(&g, &g.center()))
        }
        Command::Centralizer { file, elem } => {
            let g = load_almost(&file, "centralizer")?;
            let a = element(&g, &elem)?;
            Ok(name_line(&g, &g.centralizer(a)?))
        }
        Command::Closure { file, elems } => {
            let g = load_almost(&file, "closure")?;
            let seeds = subset(&g, &split_names(&elems))?;
            Ok(name_line(&g, &g.generated_subgroupoid(&seeds)?))
        }
        Command::Subcheck { file, elems } => subcheck(&file, &elems),
        Command::Product { file, h, k } => {
            let g = load_almost(&file, "product")?;
            let (h, k) = (subset(&g, &split_names(&h))?, subset(&g, &split_names(&k))?);
            Ok(name_line(&g, &g.set_product(&h, &k)?))
        }
        Command::Intersect { file, sets } => intersect(&file, &sets),
        Command::Morphcheck { src, dst, map } => morphcheck(&src, &dst, &map),
        Command::Iso { src, dst } => iso(&src, &dst),
        Command::Export { file, tables } => export(&file, tables),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("usage error");
            eprintln!("amg: {}", line.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let (stdout, code) = match run(cli.command) {
        Ok(out) => (out, 0),
        Err(Failure::Report(out)) => (out, 1),
        Err(Failure::Predicate(msg)) => {
            eprintln!("amg: {msg}");
            (String::new(), 1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("amg: {msg}");
            (String::new(), 2)
        }
    };
    let mut handle = io::stdout().lock();
    if handle.write_all(stdout.as_bytes()).and_then(|_| handle.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
