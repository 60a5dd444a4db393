use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn amg(args: &[&str]) -> Output {
    amg_with_input(args, None)
}

fn amg_with_input(args: &[&str], input: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_amg"))
        .args(args)
        .env_remove("AMG_COLOR")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut stdin = child.stdin.take().unwrap();
    stdin.write_all(input.unwrap_or_default()).unwrap();
    drop(stdin);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Exit 2 with exactly one line on stderr and nothing on stdout.
fn assert_usage_error(o: &Output) {
    assert_eq!(code(o), 2, "stderr: {}", stderr(o));
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("amg: "), "{err}");
    assert!(o.stdout.is_empty());
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_reproduces_the_fixtures() {
    for (file, family) in [
        ("z6_example.agt", vec!["z6"]),
        ("pair_3.agt", vec!["pair", "3"]),
        ("rstar_5_2.agt", vec!["rstar", "5", "2"]),
        ("matrix_3.agt", vec!["matrix", "3"]),
        ("zbundle_2_3.agt", vec!["zbundle", "2", "3"]),
    ] {
        let mut args = vec!["gen"];
        args.extend(&family);
        let out = amg(&args);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out), std::fs::read_to_string(fixture(file)).unwrap(), "{file}");
    }
}

#[test]
fn gen_then_verify_through_stdin() {
    let generated = amg(&["gen", "z6"]);
    let out = amg_with_input(&["verify", "-"], Some(&generated.stdout));
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("AG1 OK, AG2 OK, AG3 OK"), "{text}");
    assert!(text.ends_with("verdict: verified\n"));
    let laws = amg_with_input(&["verify", "--laws", "-"], Some(&generated.stdout));
    assert!(stdout(&laws).contains("identities: "));
}

#[test]
fn gen_writes_files() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("u.agt");
    let out = amg(&["gen", "union", "null", "2", "product", "group-zn", "2", "group-zn", "3", "-o", path(&target)]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let info = stdout(&amg(&["info", path(&target)]));
    assert!(info.contains("order: 8\nunits: 3\n"), "{info}");
}

#[test]
fn example_queries() {
    let z6 = fixture("z6_example.agt");
    let z6 = path(&z6);
    let run = |args: &[&str]| {
        let out = amg(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
        stdout(&out)
    };
    assert_eq!(run(&["centralizer", z6, "p1"]), "u5 p1 p9\n");
    assert_eq!(run(&["isotropy", z6, "u3"]), "u3 p5 p7\n");
    assert_eq!(run(&["closure", z6, "p4"]), "u2 p4 p12\n");
    assert_eq!(run(&["center", z6]).split_whitespace().count(), 18);
    assert_eq!(run(&["product", z6, "--h", "u1,p3", "--k", "p11"]), "u1 p11\n");
    assert_eq!(run(&["intersect", z6, "--sets", "u1 p3 p11;u1"]), "u1\n");
    let info = run(&["info", z6]);
    assert!(info.contains("fiber sizes: u1:3 u2:3 u3:3 u4:3 u5:3 u6:3\nabelian: yes\n"), "{info}");
}

#[test]
fn predicates_exit_one() {
    let z6 = fixture("z6_example.agt");
    let z6 = path(&z6);
    let yes = amg(&["subcheck", z6, "u1", "p3", "p11"]);
    assert_eq!(code(&yes), 0);
    assert!(stdout(&yes).starts_with("subgroupoid: yes\n"));
    let no = amg(&["subcheck", z6, "p4"]);
    assert_eq!(code(&no), 1);
    assert!(stdout(&no).contains("witness: p4 * p4 = p12 is outside"));
    let empty = amg(&["intersect", z6, "--sets", "u1 p3 p11;u2"]);
    assert_eq!(code(&empty), 1);
    assert_eq!(stderr(&empty).lines().count(), 1);
}

#[test]
fn isomorphism_verdicts() {
    let dir = TempDir::new().unwrap();
    let file = |name: &str, family: &[&str]| {
        let p = dir.path().join(name);
        let mut args = vec!["gen"];
        args.extend(family);
        args.extend(["-o", path(&p)]);
        assert_eq!(code(&amg(&args)), 0);
        p
    };
    let bundle = file("b.agt", &["zbundle", "1", "4"]);
    let klein = file("k.agt", &["group-klein4"]);
    let z4 = file("z.agt", &["group-zn", "4"]);

    let out = amg(&["iso", path(&bundle), path(&klein)]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "not isomorphic\n");

    let out = amg(&["iso", path(&bundle), path(&z4)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let map_text = text.strip_prefix("isomorphic\n").expect("verdict line");
    let map = dir.path().join("m.txt");
    std::fs::write(&map, map_text).unwrap();
    let check = amg(&["morphcheck", path(&bundle), path(&z4), path(&map)]);
    assert_eq!((code(&check), stdout(&check).as_str()), (0, "morphism: yes\nisomorphism: yes\n"));

    std::fs::write(&map, map_text.replace("(0,1)=1", "(0,1)=2")).unwrap();
    let check = amg(&["morphcheck", path(&bundle), path(&z4), path(&map)]);
    assert_eq!(code(&check), 1);
    assert!(stdout(&check).contains("witness: "));
}

#[test]
fn export_tables_match_the_golden_file() {
    let out = amg(&["export", "--tables", path(&fixture("z6_example.agt"))]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), std::fs::read_to_string(fixture("z6_example.tables.txt")).unwrap());
    let canonical = amg(&["export", path(&fixture("pair_3.agt"))]);
    assert_eq!(stdout(&canonical), std::fs::read_to_string(fixture("pair_3.agt")).unwrap());
}

#[test]
fn failed_verification_exits_one() {
    let text = "agt 1\nkind: almost\nelements: e a\nunits: e\ntheta: e e\niota: e a\ntable:\ne a\na a\n";
    let out = amg_with_input(&["verify", "-"], Some(text.as_bytes()));
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("verdict: failed"), "{}", stdout(&out));
}

#[test]
fn errors_are_one_line_with_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.agt");
    let out = amg(&["verify", path(&missing)]);
    assert_usage_error(&out);
    assert!(stderr(&out).contains("missing.agt"));

    assert_usage_error(&amg(&["bogus"]));
    assert_usage_error(&amg(&["verify"]));
    assert_usage_error(&amg(&["gen", "zbundle", "99", "99"]));
    assert_usage_error(&amg(&["gen", "nonsense"]));
    assert_usage_error(&amg(&["centralizer", path(&fixture("pair_3.agt")), "(1,1)"]));
    assert_usage_error(&amg(&["centralizer", path(&fixture("z6_example.agt")), "nope"]));
    let bad = amg_with_input(&["verify", "-"], Some(b"agt 1\nkind: almost\nelements: a a\n"));
    assert_usage_error(&bad);
    assert!(stderr(&bad).contains("-:3:13:"), "{}", stderr(&bad));
    assert_usage_error(&amg_with_input(&["info", "-"], Some(b"\xff\xfe")));
}

#[test]
fn output_is_deterministic() {
    let z6 = fixture("z6_example.agt");
    for args in
        [vec!["verify", "--laws", path(&z6)], vec!["center", path(&z6)], vec!["gen", "product", "z6", "group-s3"]]
    {
        let first = amg(&args).stdout;
        for _ in 0..3 {
            assert_eq!(amg(&args).stdout, first, "{args:?}");
        }
    }
}

#[test]
fn color_is_opt_in() {
    let z6 = fixture("z6_example.agt");
    let plain = amg(&["verify", path(&z6)]);
    assert!(!plain.stdout.contains(&0x1b));
    let colored =
        Command::new(env!("CARGO_BIN_EXE_amg")).args(["verify", path(&z6)]).env("AMG_COLOR", "1").output().unwrap();
    assert!(colored.stdout.contains(&0x1b));
    let off =
        Command::new(env!("CARGO_BIN_EXE_amg")).args(["verify", path(&z6)]).env("AMG_COLOR", "0").output().unwrap();
    assert_eq!(off.stdout, plain.stdout);
}
