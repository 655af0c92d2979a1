//! Acceptance suite: one PASS/FAIL line per criterion, exact equality
//! throughout. Exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use brace_algebra::multimap::{GradedVector, MultiMap, Scalar};
use brace_algebra::workspace::Workspace;
use brace_algebra::{BetaConvention, Settings};
use brace_cli::checks::{
    fuzz_case, block_expansion_sweep, relocation_sweep, congruence_sweep, CheckName, Options, Report,
};
use brace_cli::random::GenConfig;

const SEED: u64 = 1;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn brace(args: &[&str]) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_brace"))
        .args(args)
        .output()
        .expect("binary runs");
    (o.status.code(), String::from_utf8(o.stdout).unwrap())
}

/// Runs `cases` fuzz cases and returns the first failing report, if any.
fn fuzz(check: CheckName, cases: u64, opts: &Options) -> Result<String, String> {
    let mut failed: Option<Report> = None;
    for case in 0..cases {
        let r = fuzz_case(check, SEED, case, opts);
        if !r.outcome.passed {
            failed = Some(r);
            break;
        }
    }
    match failed {
        None => Ok(format!("{cases}/{cases} cases, seed {SEED}")),
        Some(r) => Err(r.render()),
    }
}

fn criterion_1(opts: &Options) -> Result<String, String> {
    fuzz(CheckName::BraceAxiom, 200, opts)
}

fn criterion_2(opts: &Options) -> Result<String, String> {
    fuzz(CheckName::UnshuffleAxiom, 100, opts)
}

fn criterion_3(opts: &Options) -> Result<String, String> {
    fuzz(CheckName::SymmetrizedAxiom, 100, opts)
}

fn criterion_4(opts: &Options) -> Result<String, String> {
    fuzz(CheckName::Intertwining, 100, opts)
}

fn criterion_5(opts: &Options) -> Result<String, String> {
    let opts = Options {
        gen: GenConfig {
            max_dim: 2,
            ..opts.gen.clone()
        },
        settings: opts.settings,
    };
    fuzz(CheckName::Factorization, 50, &opts)
}

fn outcome(o: brace_cli::checks::Outcome) -> Result<String, String> {
    if o.passed {
        Ok(o.params)
    } else {
        Err(format!(
            "{} {}",
            o.params,
            o.counterexample.unwrap_or_default()
        ))
    }
}

fn criterion_6(opts: &Options) -> Result<String, String> {
    outcome(block_expansion_sweep(5, &opts.settings.caps))
}

fn criterion_7(opts: &Options) -> Result<String, String> {
    outcome(relocation_sweep(SEED, 5, 3, 20, opts).map_err(|e| e.to_string())?)
}

fn criterion_8(opts: &Options) -> Result<String, String> {
    outcome(congruence_sweep(SEED, 4, 1000, opts).map_err(|e| e.to_string())?)
}

fn criterion_9(opts: &Options) -> Result<String, String> {
    fuzz(CheckName::SplitSymmetrization, 100, opts)
}

fn basis_args(ws: &Workspace, tuple: &[usize]) -> Vec<GradedVector> {
    tuple
        .iter()
        .map(|&i| GradedVector::basis(ws.space(), i).unwrap())
        .collect()
}

/// Direct product oracle: `(xy)z = x(yz)` on every basis triple.
fn associative(ws: &Workspace, mu: &MultiMap) -> bool {
    let space = ws.space();
    space.tuples(3).all(|t| {
        let [x, y, z] = <[GradedVector; 3]>::try_from(basis_args(ws, &t)).unwrap();
        let left = mu
            .eval(&[mu.eval(&[x.clone(), y.clone()]).unwrap(), z.clone()])
            .unwrap();
        let right = mu.eval(&[x, mu.eval(&[y, z]).unwrap()]).unwrap();
        left == right
    })
}

/// Direct Jacobi oracle for a degree-zero bracket on a degree-zero space.
fn jacobi(ws: &Workspace, bracket: &MultiMap) -> bool {
    let space = ws.space();
    space.tuples(3).all(|t| {
        let [x, y, z] = <[GradedVector; 3]>::try_from(basis_args(ws, &t)).unwrap();
        let b = |u: &GradedVector, v: &GradedVector| bracket.eval(&[u.clone(), v.clone()]).unwrap();
        let sum = b(&x, &b(&y, &z))
            .add(&b(&y, &b(&z, &x)))
            .unwrap()
            .add(&b(&z, &b(&x, &y)))
            .unwrap();
        sum.is_zero()
    })
}

fn criterion_10(_: &Options) -> Result<String, String> {
    let algebra = fixture("algebra.json");
    let ws = Workspace::load(&algebra).map_err(|e| e.to_string())?;
    let mu = ws.require("mu2").map_err(|e| e.to_string())?;
    if !associative(&ws, mu) {
        return Err("fixture algebra is not associative".into());
    }
    let (code, out) = brace(&[
        "check",
        "ainfty",
        "--workspace",
        &algebra,
        "--maps",
        "mu2",
        "--max-arity",
        "3",
    ]);
    if code != Some(0) {
        return Err(format!("ainfty on the algebra: {out}"));
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let anti = dir.path().join("as.json");
    let anti = anti.to_str().unwrap();
    let (code, _) = brace(&[
        "antisymmetrize",
        "--workspace",
        &algebra,
        "--map",
        "mu2",
        "--out",
        anti,
    ]);
    if code != Some(0) {
        return Err("antisymmetrize failed".into());
    }
    let ws_as = Workspace::load(anti).map_err(|e| e.to_string())?;
    let bracket = ws_as.require("as_mu2").map_err(|e| e.to_string())?;
    let ab = GradedVector::basis(ws_as.space(), 0).unwrap();
    let bb = GradedVector::basis(ws_as.space(), 1).unwrap();
    let commutator = bracket.eval(&[ab.clone(), bb.clone()]).unwrap();
    if commutator.coeff(1) != Scalar::from_integer(1.into()) || !jacobi(&ws_as, bracket) {
        return Err(format!(
            "as(mu2) is not the commutator Lie bracket: [a,b] = {commutator}"
        ));
    }
    let (code, out) = brace(&[
        "check",
        "linfty",
        "--workspace",
        anti,
        "--maps",
        "as_mu2",
        "--max-arity",
        "3",
    ]);
    if code != Some(0) {
        return Err(format!("linfty on as(mu2): {out}"));
    }

    let bad = fixture("nonassociative.json");
    let ws_bad = Workspace::load(&bad).map_err(|e| e.to_string())?;
    if associative(&ws_bad, ws_bad.require("mu2").unwrap()) {
        return Err("non-associative fixture is associative".into());
    }
    let (code, out) = brace(&[
        "check",
        "ainfty",
        "--workspace",
        &bad,
        "--maps",
        "mu2",
        "--max-arity",
        "3",
    ]);
    let mut lines = out.lines();
    let verdict = lines.next().unwrap_or_default();
    let cx: serde_json::Value =
        serde_json::from_str(lines.next().unwrap_or("null")).unwrap_or_default();
    if code != Some(1)
        || !verdict.starts_with("FAIL ainfty")
        || cx["witness"]["in"].as_array().map(Vec::len) != Some(3)
    {
        return Err(format!("non-associative mu2 was not rejected: {out}"));
    }
    Ok(format!("witness {}", cx["witness"]))
}

fn criterion_11(opts: &Options) -> Result<String, String> {
    let flipped = Options {
        gen: opts.gen.clone(),
        settings: Settings {
            beta: BetaConvention::OmitLeadingSlot,
            ..opts.settings
        },
    };
    let failures: Vec<u64> = (0..20)
        .filter(|&case| {
            !fuzz_case(CheckName::BraceAxiom, SEED, case, &flipped)
                .outcome
                .passed
        })
        .collect();
    if failures.is_empty() {
        Err("omitting the leading slot went unnoticed for 20 cases".into())
    } else {
        Ok(format!("failing cases {failures:?} of 20, seed {SEED}"))
    }
}

fn criterion_12(_: &Options) -> Result<String, String> {
    let args = ["fuzz", "--seed", "12", "--cases", "25", "--checks", "all"];
    let (c1, first) = brace(&args);
    let (c2, second) = brace(&args);
    if c1 != Some(0) || c1 != c2 || first != second || first.is_empty() {
        return Err("fuzz reports differ between identical runs".into());
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let once = dir.path().join("once.json");
    let once = once.to_str().unwrap();
    let twice = dir.path().join("twice.json");
    let twice = twice.to_str().unwrap();
    let src = fixture("braces.json");
    brace(&["fmt", "--workspace", &src, "--out", once]);
    brace(&["fmt", "--workspace", once, "--out", twice]);
    let a = std::fs::read(once).map_err(|e| e.to_string())?;
    let b = std::fs::read(twice).map_err(|e| e.to_string())?;
    if a != b {
        return Err("fmt is not byte-stable".into());
    }
    let original = Workspace::load(&src).map_err(|e| e.to_string())?;
    let reread = Workspace::load(once).map_err(|e| e.to_string())?;
    if original.maps() != reread.maps() {
        return Err("fmt changed the workspace".into());
    }
    Ok(format!(
        "{} report bytes identical; fmt stable at {} bytes",
        first.len(),
        a.len()
    ))
}

type Criterion = fn(&Options) -> Result<String, String>;

fn main() -> ExitCode {
    let opts = Options::default();
    let criteria: [(&str, Criterion); 12] = [
        ("brace axiom", criterion_1),
        ("symmetric brace axiom, antisymmetric maps", criterion_2),
        ("symmetrized brace axiom", criterion_3),
        ("antisymmetrization intertwines braces", criterion_4),
        ("antisymmetrization factorization", criterion_5),
        ("unshuffle block expansion", criterion_6),
        ("block relocation parities", criterion_7),
        ("inversion congruences", criterion_8),
        ("split symmetrization", criterion_9),
        ("associative to Lie pipeline", criterion_10),
        ("beta convention sensitivity", criterion_11),
        ("CLI determinism", criterion_12),
    ];
    let mut all = true;
    for (i, (label, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = run(&opts);
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {} {label}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                all = false;
                println!("FAIL criterion {} {label}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
