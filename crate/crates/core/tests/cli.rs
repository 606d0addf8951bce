use std::fs;
use std::path::PathBuf;

use simplext::cli::{run_command, CommandOutput, EXIT_INPUT, EXIT_OK};
use simplext::intervals::is_simple;
use simplext::io::{parse_structure, split_report};

struct Fixture {
    _dir: tempfile::TempDir,
    path: PathBuf,
}

fn fixture(text: &str) -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("input.txt");
    fs::write(&path, text).unwrap();
    Fixture { _dir: dir, path }
}

fn run(args: &[&str], f: Option<&Fixture>) -> CommandOutput {
    let mut argv: Vec<String> = vec!["simplext".into()];
    argv.extend(args.iter().map(|a| a.to_string()));
    if let Some(f) = f {
        argv.insert(2, f.path.display().to_string());
    }
    run_command(argv)
}

fn field<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    out.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(' '))
}

#[test]
fn check_reports_simplicity() {
    let f = fixture("class permutation n=4\nperm 2 4 1 3\n");
    let out = run(&["check"], Some(&f));
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "simple\n");

    let f = fixture("class permutation n=4\nperm 2 1 4 3\n");
    let out = run(&["check"], Some(&f));
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("not simple\ninterval "), "{}", out.stdout);
}

#[test]
fn extend_report_is_consistent() {
    let f = fixture("class tournament n=3\narc 0 1\narc 1 2\narc 0 2\n");
    let out = run(&["extend"], Some(&f));
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let (block, rest) = split_report(&out.stdout);
    let (ext, _) = parse_structure(block).unwrap();
    assert!(is_simple(&ext));
    assert_eq!(field(rest, "simple"), Some("true"));
    assert_eq!(field(rest, "bound"), Some("2"));
    let added: usize = field(rest, "added_count").unwrap().parse().unwrap();
    assert_eq!(ext.n(), 3 + added);
    assert!(added <= 2);
}

#[test]
fn extend_with_explicit_variant() {
    let f = fixture("class poset n=3\n");
    let out = run(&["extend", "--variant", "updown"], Some(&f));
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(field(&out.stdout, "simple").is_some());

    let out = run(&["extend", "--variant", "t1"], Some(&f));
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("does not apply"));
}

#[test]
fn decompose_and_tree() {
    let f = fixture("class graph n=4\nedge 0 1\nedge 2 3\n");
    let out = run(&["decompose"], Some(&f));
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("degenerate false\nquotient\nclass graph n=2\n"), "{}", out.stdout);
    assert_eq!(out.stdout.matches("block ").count(), 2);

    let out = run(&["tree"], Some(&f));
    assert_eq!(out.code, EXIT_OK);
    assert!(!out.stdout.trim().is_empty());
}

#[test]
fn search_min_finds_the_triangle_optimum() {
    let f = fixture("class graph n=3\nedge 0 1\nedge 1 2\nedge 0 2\n");
    let out = run(&["search-min", "--max-add", "2"], Some(&f));
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.starts_with("minimal_added 2\nclass graph n=5\n"), "{}", out.stdout);
}

#[test]
fn bound_command() {
    let out = run(&["bound", "permutation", "13"], None);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "7\n"));
    let out = run(&["bound", "shape", "3"], None);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn input_errors_exit_with_one() {
    let f = fixture("class graph n=3\nedge 0 9\n");
    let out = run(&["check"], Some(&f));
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);

    let out = run(&["check", "/nonexistent/input.txt"], None);
    assert_eq!(out.code, EXIT_INPUT);

    let out = run(&["frobnicate"], None);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn selftest_single_criterion() {
    let out = run(&["selftest", "--criterion", "7"], None);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("[PASS]"));
    let out = run(&["selftest", "--criterion", "12"], None);
    assert_eq!(out.code, EXIT_INPUT);
}
