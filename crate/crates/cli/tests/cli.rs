use std::path::PathBuf;
use std::process::{Command, Output};

use brace_algebra::workspace::Workspace;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn brace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn brace_axiom_on_workspace_maps() {
    let ws = fixture("braces.json");
    let o = brace(&[
        "check",
        "brace-axiom",
        "--workspace",
        &ws,
        "--x",
        "f",
        "--xs",
        "g1,g2",
        "--ys",
        "h1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "PASS brace-axiom seed=0 case=0 x=f xs=g1,g2 ys=h1 terms=2\n"
    );
}

#[test]
fn intertwining_on_workspace_maps() {
    let ws = fixture("braces.json");
    let o = brace(&[
        "check",
        "thm2",
        "--workspace",
        &ws,
        "--f",
        "f",
        "--gs",
        "g1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("PASS thm2 "));
}

#[test]
fn non_associative_product_fails_with_a_triple() {
    let ws = fixture("nonassociative.json");
    let o = brace(&[
        "check",
        "ainfty",
        "--workspace",
        &ws,
        "--maps",
        "mu2",
        "--max-arity",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("FAIL ainfty "));
    let cx: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(cx["witness"]["in"].as_array().unwrap().len(), 3);
    assert_ne!(cx["witness"]["lhs"], cx["witness"]["rhs"]);
    assert_eq!(cx["instance"]["maps"][0]["name"], "mu2");
    assert!(lines.next().is_none());
}

#[test]
fn antisymmetrized_algebra_is_a_lie_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("as.json");
    let out = out.to_str().unwrap();
    let o = brace(&[
        "antisymmetrize",
        "--workspace",
        &fixture("algebra.json"),
        "--map",
        "mu2",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let ws = Workspace::load(out).unwrap();
    assert!(ws.get("mu2").is_some() && ws.get("as_mu2").is_some());
    let o = brace(&["check", "linfty", "--workspace", out, "--maps", "as_mu2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = brace(&["check", "corollary", "--workspace", out, "--maps", "mu2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn corollary_rejects_a_non_a_infinity_family() {
    let o = brace(&[
        "check",
        "corollary",
        "--workspace",
        &fixture("nonassociative.json"),
        "--maps",
        "mu2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
}

#[test]
fn input_errors_exit_with_two() {
    let ws = fixture("braces.json");
    for args in [
        vec!["check", "lemma45"],
        vec!["check", "thm2", "--workspace", &ws, "--f", "nope"],
        vec!["check", "thm2", "--workspace", &ws],
        vec!["check", "thm2", "--f", "f"],
        vec![
            "check",
            "thm2",
            "--workspace",
            "/nonexistent/ws.json",
            "--f",
            "f",
        ],
        vec!["fuzz", "--checks", "thm2,bogus"],
        vec!["fuzz", "--max-dim", "40"],
        vec!["fuzz", "--max-arity-out", "12"],
        vec!["fuzz", "--degree-range", "3..1"],
        vec!["fuzz", "--cases", "ten"],
        vec!["--beta-convention", "sideways", "fuzz"],
        vec!["frobnicate"],
    ] {
        let o = brace(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stdout(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn load_errors_name_the_entry() {
    let o = brace(&["fmt", "--workspace", &fixture("bad_degree.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(
        err.contains("map \"m\"") && err.contains("entry [b, a]"),
        "{err}"
    );
}

#[test]
fn minimal_workspace_loads_empty() {
    let o = brace(&["fmt", "--workspace", &fixture("minimal.json")]);
    assert_eq!(o.status.code(), Some(0));
    let ws = Workspace::parse(&stdout(&o)).unwrap();
    assert_eq!(ws.space().dim(), 1);
    assert!(ws.maps().is_empty());
}

#[test]
fn zero_cases_is_an_empty_pass() {
    let o = brace(&["fuzz", "--seed", "5", "--cases", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn fuzz_lines_follow_case_order() {
    let o = brace(&[
        "fuzz",
        "--seed",
        "2",
        "--cases",
        "6",
        "--checks",
        "thm2,lemma44",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let heads: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split(' ').take(4).collect::<Vec<_>>().join(" "))
        .collect();
    let expected: Vec<String> = ["thm2", "lemma44"]
        .iter()
        .flat_map(|c| (0..6).map(move |i| format!("PASS {c} seed=2 case={i}")))
        .collect();
    assert_eq!(heads, expected);
}

#[test]
fn failures_replay_from_their_report_line() {
    let args = [
        "--beta-convention",
        "omit-leading-slot",
        "fuzz",
        "--seed",
        "1",
        "--cases",
        "20",
        "--checks",
        "brace-axiom",
    ];
    let o = brace(&args);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    let at = lines.iter().position(|l| l.starts_with("FAIL")).unwrap();
    let case = lines[at]
        .split(' ')
        .find_map(|w| w.strip_prefix("case="))
        .unwrap();
    let replay = brace(&[
        "--beta-convention",
        "omit-leading-slot",
        "fuzz",
        "--seed",
        "1",
        "--case",
        case,
        "--checks",
        "brace-axiom",
    ]);
    assert_eq!(replay.status.code(), Some(1));
    assert_eq!(
        stdout(&replay),
        format!("{}\n{}\n", lines[at], lines[at + 1])
    );
}

#[test]
fn elapsed_time_goes_to_stderr_only() {
    let o = brace(&["fuzz", "--seed", "3", "--cases", "2", "--checks", "lemma42"]);
    assert!(stderr(&o).starts_with("elapsed: "));
    assert!(!stdout(&o).contains("elapsed"));
}

#[test]
fn fmt_writes_a_canonical_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("canon.json");
    let out = out.to_str().unwrap();
    let o = brace(&["fmt", "--workspace", &fixture("braces.json"), "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read_to_string(out).unwrap();
    let again = brace(&["fmt", "--workspace", out]);
    assert_eq!(stdout(&again), first);
    let original = Workspace::load(fixture("braces.json")).unwrap();
    assert_eq!(
        Workspace::parse(&first).unwrap().to_canonical_string(),
        original.to_canonical_string()
    );
    assert!(first.find("\"a\"").unwrap() < first.find("\"b\"").unwrap());
}

#[test]
fn sweeps_run_without_a_workspace() {
    for name in ["lemma42", "lemma44"] {
        let o = brace(&["check", name, "--seed", "9"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).starts_with(&format!("PASS {name} seed=9 case=0 ")));
    }
}
