//! Argument parsing and command dispatch for the `brace` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use brace_algebra::multimap::antisymmetrize;
use brace_algebra::workspace::Workspace;
use brace_algebra::{BetaConvention, Error, Result, Settings};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::checks::{
    fuzz_case, parse_check_list, run_check, CheckName, Options, Report, Selection,
};
use crate::random::{parse_degree_range, GenConfig};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "brace",
    version,
    about = "Exact checks of brace algebra identities"
)]
struct Cli {
    /// Sign convention for the β exponent of the brace.
    #[arg(long, global = true, value_enum, default_value_t = Beta::Standard)]
    beta_convention: Beta,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Beta {
    Standard,
    OmitLeadingSlot,
}

impl From<Beta> for BetaConvention {
    fn from(b: Beta) -> Self {
        match b {
            Beta::Standard => BetaConvention::Standard,
            Beta::OmitLeadingSlot => BetaConvention::OmitLeadingSlot,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one named check on workspace maps.
    Check(CheckArgs),
    /// Run checks on seeded random instances.
    Fuzz(FuzzArgs),
    /// Add the antisymmetrization of a map to a workspace.
    Antisymmetrize(AntisymmetrizeArgs),
    /// Rewrite a workspace file in canonical form.
    Fmt(FmtArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Check name.
    name: String,
    #[arg(long)]
    workspace: Option<PathBuf>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long, value_delimiter = ',')]
    xs: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    ys: Vec<String>,
    #[arg(long)]
    f: Option<String>,
    #[arg(long, value_delimiter = ',')]
    gs: Vec<String>,
    /// Structure components, one per arity.
    #[arg(long, value_delimiter = ',')]
    maps: Vec<String>,
    /// Split point for lemma41 and lemma51; every split when absent.
    #[arg(long)]
    n: Option<usize>,
    /// Highest arity of the structure relations checked.
    #[arg(long)]
    max_arity: Option<usize>,
    /// Seed for the sampled sweeps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    cases: u64,
    /// Run only this case index.
    #[arg(long)]
    case: Option<u64>,
    /// `all` or a comma-separated list of check names.
    #[arg(long, default_value = "all")]
    checks: String,
    #[arg(long)]
    max_dim: Option<usize>,
    #[arg(long)]
    max_arity: Option<usize>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    max_r: Option<usize>,
    /// Degree interval, `lo..hi` or `lo..=hi` (both inclusive).
    #[arg(long, allow_hyphen_values = true)]
    degree_range: Option<String>,
    #[arg(long)]
    max_arity_out: Option<usize>,
}

#[derive(Debug, Args)]
struct AntisymmetrizeArgs {
    #[arg(long)]
    workspace: PathBuf,
    #[arg(long)]
    map: String,
    #[arg(long)]
    out: PathBuf,
    /// Name of the new map; defaults to `as_<map>`.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Debug, Args)]
struct FmtArgs {
    #[arg(long)]
    workspace: PathBuf,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Runs the CLI and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let settings = Settings {
        beta: cli.beta_convention.into(),
        ..Settings::default()
    };
    let started = Instant::now();
    let result = match cli.command {
        Command::Check(a) => check(a, settings, out),
        Command::Fuzz(a) => fuzz(a, settings, out),
        Command::Antisymmetrize(a) => antisymmetrize_cmd(a, settings, out),
        Command::Fmt(a) => fmt_cmd(a, out),
    };
    match result {
        Ok(code) => {
            let _ = writeln!(err, "elapsed: {:.3}s", started.elapsed().as_secs_f64());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Input(format!("write failed: {e}"))
}

fn emit(reports: &[Report], out: &mut dyn Write) -> Result<u8> {
    let mut code = EXIT_PASS;
    for r in reports {
        out.write_all(r.render().as_bytes()).map_err(io_error)?;
        if !r.outcome.passed {
            code = EXIT_FAIL;
        }
    }
    Ok(code)
}

fn check(a: CheckArgs, settings: Settings, out: &mut dyn Write) -> Result<u8> {
    let name: CheckName = a.name.parse()?;
    let ws = a.workspace.as_ref().map(Workspace::load).transpose()?;
    let sel = Selection {
        x: a.x,
        xs: a.xs,
        ys: a.ys,
        f: a.f,
        gs: a.gs,
        maps: a.maps,
        n: a.n,
        max_arity: a.max_arity,
    };
    let opts = Options {
        gen: GenConfig::default(),
        settings,
    };
    let report = run_check(name, ws.as_ref(), &sel, a.seed, &opts)?;
    emit(&[report], out)
}

fn fuzz(a: FuzzArgs, settings: Settings, out: &mut dyn Write) -> Result<u8> {
    let checks = parse_check_list(&a.checks)?;
    let defaults = GenConfig::default();
    let gen = GenConfig {
        max_dim: a.max_dim.unwrap_or(defaults.max_dim),
        degrees: match &a.degree_range {
            Some(text) => parse_degree_range(text)?,
            None => defaults.degrees,
        },
        max_arity: a.max_arity.unwrap_or(defaults.max_arity),
        max_n: a.max_n.unwrap_or(defaults.max_n),
        max_r: a.max_r.unwrap_or(defaults.max_r),
        max_arity_out: a.max_arity_out.unwrap_or(defaults.max_arity_out),
    };
    gen.validate(&settings.caps)?;
    let opts = Options { gen, settings };
    let cases: Vec<u64> = match a.case {
        Some(i) => vec![i],
        None => (0..a.cases).collect(),
    };
    let jobs: Vec<(CheckName, u64)> = checks
        .iter()
        .flat_map(|&c| cases.iter().map(move |&i| (c, i)))
        .collect();
    let reports: Vec<Report> = jobs
        .par_iter()
        .map(|&(c, i)| fuzz_case(c, a.seed, i, &opts))
        .collect();
    emit(&reports, out)
}

fn antisymmetrize_cmd(
    a: AntisymmetrizeArgs,
    settings: Settings,
    out: &mut dyn Write,
) -> Result<u8> {
    let mut ws = Workspace::load(&a.workspace)?;
    let f = ws.require(&a.map)?;
    let anti = antisymmetrize(f, &settings.caps)?;
    let name = a.name.unwrap_or_else(|| format!("as_{}", a.map));
    ws.insert(name.clone(), anti)?;
    std::fs::write(&a.out, ws.to_canonical_string())
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", a.out.display())))?;
    writeln!(out, "wrote {name} to {}", a.out.display()).map_err(io_error)?;
    Ok(EXIT_PASS)
}

fn fmt_cmd(a: FmtArgs, out: &mut dyn Write) -> Result<u8> {
    let ws = Workspace::load(&a.workspace)?;
    let text = ws.to_canonical_string();
    match a.out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes()).map_err(io_error)?,
    }
    Ok(EXIT_PASS)
}
