//! Named identity checks over random instances, exhaustive sweeps, or maps
//! from a workspace.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use brace_algebra::brace::{brace_axiom_sides, split_symmetrization_sides};
use brace_algebra::graded::{
    enumerate_permutations, inversion_congruences, pi_hat, unshuffle_block_expansion, weak_compositions,
    Degree, InsertionPattern, Permutation, SignRule, UnshuffleSpec,
};
use brace_algebra::homotopy::{antisymmetrize_structure, first_failure, Flavor, StructureFamily};
use brace_algebra::multimap::{factorization_sides, GradedSpace, MultiMap};
use brace_algebra::symbrace::{symbrace_axiom_sides, intertwining_sides, BraceFlavor};
use brace_algebra::workspace::{map_json, space_doc, Workspace, WorkspaceDoc};
use brace_algebra::{Comparison, Error, Result, Settings};
use serde_json::{json, Value};

use crate::random::{Gen, GenConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    BraceAxiom,
    UnshuffleAxiom,
    SymmetrizedAxiom,
    Intertwining,
    Factorization,
    BlockExpansion,
    Relocation,
    InversionCongruences,
    SplitSymmetrization,
    Ainfty,
    Linfty,
    Corollary,
}

impl CheckName {
    pub const ALL: [CheckName; 12] = [
        CheckName::BraceAxiom,
        CheckName::UnshuffleAxiom,
        CheckName::SymmetrizedAxiom,
        CheckName::Intertwining,
        CheckName::Factorization,
        CheckName::BlockExpansion,
        CheckName::Relocation,
        CheckName::InversionCongruences,
        CheckName::SplitSymmetrization,
        CheckName::Ainfty,
        CheckName::Linfty,
        CheckName::Corollary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::BraceAxiom => "brace-axiom",
            CheckName::UnshuffleAxiom => "symbrace-axiom-ex33",
            CheckName::SymmetrizedAxiom => "thm1",
            CheckName::Intertwining => "thm2",
            CheckName::Factorization => "lemma41",
            CheckName::BlockExpansion => "lemma42",
            CheckName::Relocation => "lemma43",
            CheckName::InversionCongruences => "lemma44",
            CheckName::SplitSymmetrization => "lemma51",
            CheckName::Ainfty => "ainfty",
            CheckName::Linfty => "linfty",
            CheckName::Corollary => "corollary",
        }
    }

    /// Index of this check's random stream.
    fn stream(self) -> u64 {
        CheckName::ALL.iter().position(|&c| c == self).unwrap() as u64
    }

    /// Sign identities that need no maps.
    pub fn is_combinatorial(self) -> bool {
        matches!(
            self,
            CheckName::BlockExpansion | CheckName::Relocation | CheckName::InversionCongruences
        )
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown check {s:?}")))
    }
}

/// `all` or a comma-separated list of check names.
pub fn parse_check_list(text: &str) -> Result<Vec<CheckName>> {
    if text == "all" {
        return Ok(CheckName::ALL.to_vec());
    }
    let mut out = Vec::new();
    for part in text.split(',') {
        let check = part.trim().parse()?;
        if !out.contains(&check) {
            out.push(check);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub params: String,
    pub counterexample: Option<Value>,
}

impl Outcome {
    fn pass(params: String) -> Self {
        Outcome {
            passed: true,
            params,
            counterexample: None,
        }
    }

    fn fail(params: String, counterexample: Value) -> Self {
        Outcome {
            passed: false,
            params,
            counterexample: Some(counterexample),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub check: CheckName,
    pub seed: u64,
    pub case: u64,
    pub outcome: Outcome,
}

impl Report {
    /// The verdict line, followed by the counterexample JSON on failure.
    pub fn render(&self) -> String {
        let verdict = if self.outcome.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{verdict} {} seed={} case={}",
            self.check, self.seed, self.case
        );
        if !self.outcome.params.is_empty() {
            line.push(' ');
            line.push_str(&self.outcome.params);
        }
        line.push('\n');
        if let Some(cx) = &self.outcome.counterexample {
            line.push_str(&cx.to_string());
            line.push('\n');
        }
        line
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub gen: GenConfig,
    pub settings: Settings,
}

fn signature(m: &MultiMap) -> String {
    format!("{}:{}", m.arity(), m.degree())
}

fn signatures(ms: &[MultiMap]) -> String {
    format!(
        "[{}]",
        ms.iter().map(signature).collect::<Vec<_>>().join(",")
    )
}

fn space_param(space: &GradedSpace) -> String {
    let degrees: Vec<String> = space.basis().iter().map(|b| b.degree.to_string()).collect();
    format!("degrees=[{}]", degrees.join(","))
}

fn instance_json(space: &Arc<GradedSpace>, named: &[(String, &MultiMap)]) -> Value {
    let doc = WorkspaceDoc {
        space: space_doc(space),
        maps: named
            .iter()
            .map(|(n, m)| brace_algebra::workspace::map_doc(n, m))
            .collect(),
    };
    serde_json::to_value(doc).expect("workspace documents serialize")
}

fn comparison_outcome(
    params: String,
    space: &Arc<GradedSpace>,
    named: &[(String, &MultiMap)],
    c: &Comparison,
) -> Outcome {
    let params = format!("{params} terms={}", c.lhs.len());
    match c.witness() {
        None => Outcome::pass(params),
        Some(tuple) => {
            let names: Vec<&str> = tuple.iter().map(|&i| space.name(i)).collect();
            let value = |m: &MultiMap| {
                let v = m.get(&tuple);
                let terms: BTreeMap<&str, String> = v
                    .coeffs()
                    .iter()
                    .map(|(&j, c)| (space.name(j), brace_algebra::workspace::format_rational(c)))
                    .collect();
                json!(terms)
            };
            Outcome::fail(
                params,
                json!({
                    "instance": instance_json(space, named),
                    "witness": {"in": names, "lhs": value(&c.lhs), "rhs": value(&c.rhs)},
                    "lhs": map_json("lhs", &c.lhs),
                    "rhs": map_json("rhs", &c.rhs),
                }),
            )
        }
    }
}

fn error_outcome(params: String, err: &Error) -> Outcome {
    Outcome::fail(params, json!({"error": err.to_string()}))
}

fn named<'m>(prefix: &str, maps: &'m [MultiMap]) -> Vec<(String, &'m MultiMap)> {
    maps.iter()
        .enumerate()
        .map(|(i, m)| (format!("{prefix}{}", i + 1), m))
        .collect()
}

/// A list length in `0..=max`, rarely empty.
fn list_len(g: &mut Gen, max: usize) -> usize {
    if max == 0 || g.range(0..=7) == 0 {
        0
    } else {
        g.range(1..=max)
    }
}

/// Arities `(outer, inner list, argument list)` for a nested identity,
/// keeping every evaluated map within `max_arity_out`.
fn nested_shape(g: &mut Gen, max_inner_arity: usize) -> (usize, Vec<usize>, Vec<usize>) {
    let cfg = g.config().clone();
    for _ in 0..64 {
        let outer = g.range(1..=cfg.max_arity);
        let n = list_len(g, cfg.max_n.min(outer));
        let inner: Vec<usize> = (0..n).map(|_| g.range(1..=cfg.max_arity)).collect();
        let mid = inner.iter().sum::<usize>() + outer - n;
        if mid > cfg.max_arity_out {
            continue;
        }
        let r = list_len(g, cfg.max_r.min(mid));
        let args: Vec<usize> = (0..r)
            .map(|_| g.range(1..=max_inner_arity.min(cfg.max_arity)))
            .collect();
        if args.iter().sum::<usize>() + mid - r <= cfg.max_arity_out {
            return (outer, inner, args);
        }
    }
    (1, Vec::new(), Vec::new())
}

/// Runs one random case of `check`.
pub fn fuzz_case(check: CheckName, seed: u64, case: u64, opts: &Options) -> Report {
    let mut g = Gen::new(&opts.gen, seed, check.stream(), case);
    let outcome = match run_random(check, &mut g, opts) {
        Ok(o) => o,
        Err(e) => error_outcome(String::new(), &e),
    };
    Report {
        check,
        seed,
        case,
        outcome,
    }
}

fn run_random(check: CheckName, g: &mut Gen, opts: &Options) -> Result<Outcome> {
    let settings = &opts.settings;
    let caps = &settings.caps;
    match check {
        CheckName::BraceAxiom => {
            let space = g.space();
            let (ax, xa, ya) = nested_shape(g, usize::MAX);
            let x = g.map(&space, ax);
            let xs: Vec<MultiMap> = xa.iter().map(|&a| g.map(&space, a)).collect();
            let ys: Vec<MultiMap> = ya.iter().map(|&a| g.map(&space, a)).collect();
            let params = format!(
                "{} x={} xs={} ys={}",
                space_param(&space),
                signature(&x),
                signatures(&xs),
                signatures(&ys)
            );
            let c = brace_axiom_sides(&x, &xs, &ys, settings)?;
            let mut names = vec![("x".to_string(), &x)];
            names.extend(named("x", &xs));
            names.extend(named("y", &ys));
            Ok(comparison_outcome(params, &space, &names, &c))
        }
        CheckName::UnshuffleAxiom | CheckName::SymmetrizedAxiom => {
            let space = g.space();
            let (af, ga, xa) = nested_shape(g, usize::MAX);
            let anti = check == CheckName::UnshuffleAxiom;
            let draw = |g: &mut Gen, a: usize| {
                if anti {
                    g.antisymmetric_map(&space, a, caps)
                } else {
                    Ok(g.map(&space, a))
                }
            };
            let f = draw(g, af)?;
            let gs: Vec<MultiMap> = ga.iter().map(|&a| draw(g, a)).collect::<Result<_>>()?;
            let xs: Vec<MultiMap> = xa.iter().map(|&a| draw(g, a)).collect::<Result<_>>()?;
            let flavor = if anti {
                BraceFlavor::Unshuffle
            } else {
                BraceFlavor::Symmetrized
            };
            let params = format!(
                "{} f={} gs={} xs={}",
                space_param(&space),
                signature(&f),
                signatures(&gs),
                signatures(&xs)
            );
            let c = symbrace_axiom_sides(&f, &gs, &xs, flavor, settings)?;
            let mut names = vec![("f".to_string(), &f)];
            names.extend(named("g", &gs));
            names.extend(named("x", &xs));
            Ok(comparison_outcome(params, &space, &names, &c))
        }
        CheckName::Intertwining => {
            let space = g.space();
            let (af, ga, _) = nested_shape(g, 1);
            let f = g.map(&space, af);
            let gs: Vec<MultiMap> = ga.iter().map(|&a| g.map(&space, a)).collect();
            let params = format!(
                "{} f={} gs={}",
                space_param(&space),
                signature(&f),
                signatures(&gs)
            );
            let c = intertwining_sides(&f, &gs, settings)?;
            let mut names = vec![("f".to_string(), &f)];
            names.extend(named("g", &gs));
            Ok(comparison_outcome(params, &space, &names, &c))
        }
        CheckName::Factorization => {
            let dim = g.config().max_dim.min(2);
            let space = g.space_of_dim(dim);
            let k = g.range(1..=4.min(g.config().max_arity_out));
            let f = g.map(&space, k);
            factorization_all_splits(&space, &f, caps)
        }
        CheckName::SplitSymmetrization => {
            let space = g.space();
            let cfg = g.config().clone();
            let mut shape = (1, Vec::new());
            for _ in 0..64 {
                let af = g.range(1..=4.min(cfg.max_arity_out));
                let total = g.range(0..=af);
                let args: Vec<usize> = (0..total).map(|_| g.range(1..=cfg.max_arity)).collect();
                if args.iter().sum::<usize>() + af - total <= cfg.max_arity_out {
                    shape = (af, args);
                    break;
                }
            }
            let f = g.map(&space, shape.0);
            let args: Vec<MultiMap> = shape.1.iter().map(|&a| g.map(&space, a)).collect();
            split_symmetrization_all_splits(&space, &f, &args, settings)
        }
        CheckName::BlockExpansion => {
            let total = g.range(0..=5);
            let blocks = random_composition(g, total);
            let degrees: Vec<Degree> = (0..total).map(|_| g.degree()).collect();
            Ok(block_expansion_instance(&blocks, &degrees, caps))
        }
        CheckName::Relocation => {
            let r = g.range(0..=5);
            let n = g.range(0..=r.min(3));
            let pi = g.permutation(r);
            let sigma = g.permutation(n);
            let free = g.range(0..=r - n);
            let mut blocks = random_composition_of_len(g, r - free, n);
            if n == 0 {
                blocks.clear();
            }
            let used: usize = blocks.iter().sum();
            let slots = random_weak_composition(g, r - used, n + 1);
            let degrees: Vec<Degree> = (0..r).map(|_| g.degree()).collect();
            Ok(relocation_instance(&pi, &sigma, &blocks, &slots, &degrees))
        }
        CheckName::InversionCongruences => {
            let n = g.range(0..=4);
            let sigma = g.permutation(n);
            let v: Vec<i64> = (0..n).map(|_| g.int_range(-1000..=1000)).collect();
            let w: Vec<i64> = (0..n).map(|_| g.int_range(-1000..=1000)).collect();
            congruence_instance(&sigma, &v, &w)
        }
        CheckName::Ainfty | CheckName::Corollary => {
            let fam = g.a_infinity_family();
            let max = g.config().max_arity_out;
            if check == CheckName::Ainfty {
                structure_outcome(&fam, max, settings, "", &BTreeMap::new())
            } else {
                corollary_outcome(&fam, max, settings, "", &BTreeMap::new())
            }
        }
        CheckName::Linfty => {
            let fam = g.l_infinity_family(caps)?;
            structure_outcome(
                &fam,
                g.config().max_arity_out.min(4),
                settings,
                "",
                &BTreeMap::new(),
            )
        }
    }
}

fn random_composition(g: &mut Gen, total: usize) -> Vec<usize> {
    let mut blocks = Vec::new();
    let mut left = total;
    while left > 0 {
        let b = g.range(1..=left);
        blocks.push(b);
        left -= b;
    }
    blocks
}

/// `parts` positive sizes summing to `total` (requires `total ≥ parts`).
fn random_composition_of_len(g: &mut Gen, total: usize, parts: usize) -> Vec<usize> {
    if parts == 0 {
        return Vec::new();
    }
    let total = total.max(parts);
    let mut out: Vec<usize> = random_weak_composition(g, total - parts, parts);
    for b in &mut out {
        *b += 1;
    }
    out
}

fn random_weak_composition(g: &mut Gen, total: usize, parts: usize) -> Vec<usize> {
    let mut out = vec![0; parts];
    for _ in 0..total {
        let i = g.range(0..=parts - 1);
        out[i] += 1;
    }
    out
}

fn factorization_all_splits(
    space: &Arc<GradedSpace>,
    f: &MultiMap,
    caps: &brace_algebra::Caps,
) -> Result<Outcome> {
    let params = format!("{} f={}", space_param(space), signature(f));
    for n in 0..=f.arity() {
        let (lhs, rhs) = factorization_sides(f, n, caps)?;
        let c = Comparison { lhs, rhs };
        if !c.holds() {
            return Ok(comparison_outcome(
                format!("{params} n={n}"),
                space,
                &[("f".into(), f)],
                &c,
            ));
        }
    }
    Ok(Outcome::pass(params))
}

fn split_symmetrization_all_splits(
    space: &Arc<GradedSpace>,
    f: &MultiMap,
    args: &[MultiMap],
    settings: &Settings,
) -> Result<Outcome> {
    let params = format!(
        "{} f={} args={}",
        space_param(space),
        signature(f),
        signatures(args)
    );
    for n in 0..=args.len() {
        let c = split_symmetrization_sides(f, n, args, settings)?;
        if !c.holds() {
            let mut names = vec![("f".to_string(), f)];
            names.extend(named("x", args));
            return Ok(comparison_outcome(
                format!("{params} n={n}"),
                space,
                &names,
                &c,
            ));
        }
    }
    Ok(Outcome::pass(params))
}

/// Whether the unshuffle-times-block expansion lists every permutation
/// exactly once with its own sign, for both sign rules.
fn block_expansion_instance(blocks: &[usize], degrees: &[Degree], caps: &brace_algebra::Caps) -> Outcome {
    let params = format!("blocks={blocks:?} degrees={degrees:?}");
    for rule in [SignRule::Antisymmetric, SignRule::Koszul] {
        let spec = UnshuffleSpec::new(blocks.to_vec());
        let verdict = (|| -> Result<Option<String>> {
            let expansion = unshuffle_block_expansion(&spec, degrees, rule, caps)?;
            let mut seen = BTreeMap::new();
            for (perm, sign) in expansion {
                let expected = rule.sign(&perm, degrees)?;
                if sign != expected {
                    return Ok(Some(format!("{perm} has sign {sign}, expected {expected}")));
                }
                if seen.insert(perm.clone(), sign).is_some() {
                    return Ok(Some(format!("{perm} appears twice")));
                }
            }
            let group: usize = (1..=degrees.len()).product();
            if seen.len() != group {
                return Ok(Some(format!(
                    "{} permutations, expected {group}",
                    seen.len()
                )));
            }
            Ok(None)
        })();
        let problem = match verdict {
            Ok(None) => continue,
            Ok(Some(p)) => p,
            Err(e) => e.to_string(),
        };
        return Outcome::fail(
            params,
            json!({"blocks": blocks, "degrees": degrees, "rule": format!("{rule:?}"), "problem": problem}),
        );
    }
    Outcome::pass(params)
}

/// Rebuilds the relocated string independently and compares it and both
/// parities against π̂.
fn relocation_instance(
    pi: &Permutation,
    sigma: &Permutation,
    blocks: &[usize],
    slots: &[usize],
    degrees: &[Degree],
) -> Outcome {
    let params =
        format!("pi={pi} sigma={sigma} blocks={blocks:?} slots={slots:?} degrees={degrees:?}");
    let fail = |problem: String| {
        Outcome::fail(
            params.clone(),
            json!({"pi": pi.images(), "sigma": sigma.images(), "blocks": blocks,
                   "slots": slots, "degrees": degrees, "problem": problem}),
        )
    };
    let hat = match pi_hat(
        pi,
        sigma,
        blocks,
        &InsertionPattern::new(slots.to_vec()),
        degrees,
    ) {
        Ok(h) => h,
        Err(e) => return fail(e.to_string()),
    };
    let x_pi = pi.images();
    let a_total: usize = blocks.iter().sum();
    let mut strings = Vec::new();
    let mut start = 0;
    for &a in blocks {
        strings.push(&x_pi[start..start + a]);
        start += a;
    }
    let mut free = x_pi[a_total..].iter();
    let mut expected: Vec<usize> = Vec::new();
    for (m, &k) in slots.iter().enumerate() {
        if m > 0 {
            expected.extend_from_slice(strings[sigma.image(m) - 1]);
        }
        expected.extend(free.by_ref().take(k));
    }
    if hat.perm.images() != expected.as_slice() {
        return fail(format!(
            "relocated string {} differs from {expected:?}",
            hat.perm
        ));
    }
    for (rule, alpha, label) in [
        (SignRule::Koszul, hat.alpha1, "alpha1"),
        (SignRule::Antisymmetric, hat.alpha2, "alpha2"),
    ] {
        let (Ok(before), Ok(after)) = (rule.sign(pi, degrees), rule.sign(&hat.perm, degrees))
        else {
            return fail("sign evaluation failed".into());
        };
        if (before != after) != alpha {
            return fail(format!(
                "{label} = {alpha} but the signs are {before} and {after}"
            ));
        }
    }
    Outcome::pass(params)
}

fn congruence_instance(sigma: &Permutation, v: &[i64], w: &[i64]) -> Result<Outcome> {
    let params = format!("sigma={sigma} v={v:?} w={w:?}");
    Ok(if inversion_congruences(sigma, v, w)? {
        Outcome::pass(params)
    } else {
        Outcome::fail(params, json!({"sigma": sigma.images(), "v": v, "w": w}))
    })
}

/// Every block list with `N ≤ max_total` and at most `N + 1` blocks, empty
/// blocks included, each with every degree vector over `{0, 1}`.
pub fn block_expansion_sweep(max_total: usize, caps: &brace_algebra::Caps) -> Outcome {
    let mut specs = 0;
    for total in 0..=max_total {
        for parts in 1..=total + 1 {
            for blocks in weak_compositions(total, parts) {
                specs += 1;
                for bits in 0..(1u32 << total) {
                    let degrees: Vec<Degree> =
                        (0..total).map(|i| ((bits >> i) & 1) as Degree).collect();
                    let o = block_expansion_instance(&blocks, &degrees, caps);
                    if !o.passed {
                        return o;
                    }
                }
            }
        }
    }
    Outcome::pass(format!("max_total={max_total} specs={specs}"))
}

/// Every `π ∈ S_r` (`r ≤ max_r`), `σ ∈ S_n` (`n ≤ max_n`) and block/slot
/// shape, each with `samples` random degree vectors.
pub fn relocation_sweep(
    seed: u64,
    max_r: usize,
    max_n: usize,
    samples: usize,
    opts: &Options,
) -> Result<Outcome> {
    let caps = &opts.settings.caps;
    let mut g = Gen::new(&opts.gen, seed, CheckName::Relocation.stream(), u64::MAX);
    let mut instances = 0usize;
    for r in 0..=max_r {
        let pis = enumerate_permutations(r, caps)?;
        for n in 0..=max_n.min(r) {
            let sigmas = enumerate_permutations(n, caps)?;
            // Blocks a_i ≥ 1 and slots k_j ≥ 0 with Σa + Σk = r.
            let mut shapes = Vec::new();
            for parts in weak_compositions(r - n, 2 * n + 1) {
                let blocks: Vec<usize> = parts[..n].iter().map(|a| a + 1).collect();
                shapes.push((blocks, parts[n..].to_vec()));
            }
            for pi in &pis {
                for sigma in &sigmas {
                    for (blocks, slots) in &shapes {
                        for _ in 0..samples {
                            let degrees: Vec<Degree> = (0..r).map(|_| g.degree()).collect();
                            let o = relocation_instance(pi, sigma, blocks, slots, &degrees);
                            instances += 1;
                            if !o.passed {
                                return Ok(o);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(format!(
        "max_r={max_r} max_n={max_n} samples={samples} instances={instances}"
    )))
}

/// Every `σ ∈ S_n` (`n ≤ max_n`) with `samples` random integer vectors.
pub fn congruence_sweep(seed: u64, max_n: usize, samples: usize, opts: &Options) -> Result<Outcome> {
    let caps = &opts.settings.caps;
    let mut g = Gen::new(&opts.gen, seed, CheckName::InversionCongruences.stream(), u64::MAX);
    let mut instances = 0usize;
    for n in 0..=max_n {
        for sigma in enumerate_permutations(n, caps)? {
            for _ in 0..samples {
                let v: Vec<i64> = (0..n)
                    .map(|_| g.int_range(-1_000_000..=1_000_000))
                    .collect();
                let w: Vec<i64> = (0..n)
                    .map(|_| g.int_range(-1_000_000..=1_000_000))
                    .collect();
                let o = congruence_instance(&sigma, &v, &w)?;
                instances += 1;
                if !o.passed {
                    return Ok(o);
                }
            }
        }
    }
    Ok(Outcome::pass(format!(
        "max_n={max_n} samples={samples} instances={instances}"
    )))
}

/// `labels` names components by arity; unnamed ones become `m<arity>`.
fn structure_outcome(
    fam: &StructureFamily,
    max_arity: usize,
    settings: &Settings,
    params: &str,
    labels: &BTreeMap<usize, String>,
) -> Result<Outcome> {
    let space = fam.space();
    let mut params = params.to_string();
    if params.is_empty() {
        let sigs: Vec<String> = fam.components().map(signature).collect();
        params = format!("{} components=[{}]", space_param(space), sigs.join(","));
    }
    match first_failure(fam, max_arity, settings)? {
        None => Ok(Outcome::pass(format!(
            "{params} verified_up_to_arity={max_arity}"
        ))),
        Some((arity, residual)) => {
            let params = format!("{params} max_arity={max_arity}");
            let names: Vec<(String, &MultiMap)> = fam
                .components()
                .map(|m| {
                    let label = labels.get(&m.arity()).cloned();
                    (label.unwrap_or_else(|| format!("m{}", m.arity())), m)
                })
                .collect();
            let zero = MultiMap::zero(space, arity, residual.degree())?;
            let c = Comparison {
                lhs: residual,
                rhs: zero,
            };
            let mut o = comparison_outcome(params, space, &names, &c);
            if let Some(Value::Object(cx)) = o.counterexample.as_mut() {
                cx.insert("arity".into(), json!(arity));
                cx.insert("flavor".into(), json!(format!("{:?}", fam.flavor())));
            }
            Ok(o)
        }
    }
}

fn corollary_outcome(
    fam: &StructureFamily,
    max_arity: usize,
    settings: &Settings,
    params: &str,
    labels: &BTreeMap<usize, String>,
) -> Result<Outcome> {
    if first_failure(fam, max_arity, settings)?.is_some() {
        return Err(Error::Input(format!(
            "family is not A-infinity through arity {max_arity}"
        )));
    }
    let labels = labels
        .iter()
        .map(|(&k, n)| (k, format!("as_{n}")))
        .collect();
    structure_outcome(
        &antisymmetrize_structure(fam, settings)?,
        max_arity,
        settings,
        params,
        &labels,
    )
}

/// Map names for a workspace check.
#[derive(Debug, Clone, Default)]
pub struct Selection {
    pub x: Option<String>,
    pub xs: Vec<String>,
    pub ys: Vec<String>,
    pub f: Option<String>,
    pub gs: Vec<String>,
    pub maps: Vec<String>,
    pub n: Option<usize>,
    pub max_arity: Option<usize>,
}

fn lookup(ws: &Workspace, names: &[String]) -> Result<Vec<MultiMap>> {
    names.iter().map(|n| ws.require(n).cloned()).collect()
}

fn one(name: &Option<String>, flag: &str) -> Result<String> {
    name.clone()
        .ok_or_else(|| Error::Input(format!("{flag} is required for this check")))
}

fn list(names: &[String]) -> String {
    names.join(",")
}

/// Runs `check` once on named workspace maps. Combinatorial checks run
/// their sweeps instead.
pub fn run_check(
    check: CheckName,
    ws: Option<&Workspace>,
    sel: &Selection,
    seed: u64,
    opts: &Options,
) -> Result<Report> {
    let settings = &opts.settings;
    let outcome = match check {
        CheckName::BlockExpansion => block_expansion_sweep(5, &settings.caps),
        CheckName::Relocation => relocation_sweep(seed, 5, 3, 20, opts)?,
        CheckName::InversionCongruences => congruence_sweep(seed, 4, 1000, opts)?,
        _ => {
            let ws = ws.ok_or_else(|| Error::Input(format!("{check} needs --workspace")))?;
            run_on_workspace(check, ws, sel, settings)?
        }
    };
    Ok(Report {
        check,
        seed,
        case: 0,
        outcome,
    })
}

fn run_on_workspace(
    check: CheckName,
    ws: &Workspace,
    sel: &Selection,
    settings: &Settings,
) -> Result<Outcome> {
    let space = ws.space();
    let with_names = |pairs: Vec<(&String, &MultiMap)>| -> Vec<(String, MultiMap)> {
        pairs
            .into_iter()
            .map(|(n, m)| (n.clone(), m.clone()))
            .collect()
    };
    match check {
        CheckName::BraceAxiom => {
            let x_name = one(&sel.x, "--x")?;
            let x = ws.require(&x_name)?.clone();
            let xs = lookup(ws, &sel.xs)?;
            let ys = lookup(ws, &sel.ys)?;
            let params = format!("x={x_name} xs={} ys={}", list(&sel.xs), list(&sel.ys));
            let c = brace_axiom_sides(&x, &xs, &ys, settings)?;
            let mut names = vec![(x_name.clone(), x.clone())];
            names.extend(with_names(sel.xs.iter().zip(xs.iter()).collect()));
            names.extend(with_names(sel.ys.iter().zip(ys.iter()).collect()));
            let refs: Vec<(String, &MultiMap)> =
                names.iter().map(|(n, m)| (n.clone(), m)).collect();
            Ok(comparison_outcome(params, space, &refs, &c))
        }
        CheckName::UnshuffleAxiom | CheckName::SymmetrizedAxiom => {
            let f_name = one(&sel.f, "--f")?;
            let f = ws.require(&f_name)?.clone();
            let gs = lookup(ws, &sel.gs)?;
            let xs = lookup(ws, &sel.xs)?;
            let flavor = if check == CheckName::SymmetrizedAxiom {
                BraceFlavor::Symmetrized
            } else {
                BraceFlavor::Unshuffle
            };
            let params = format!("f={f_name} gs={} xs={}", list(&sel.gs), list(&sel.xs));
            let c = symbrace_axiom_sides(&f, &gs, &xs, flavor, settings)?;
            let mut names = vec![(f_name.clone(), f.clone())];
            names.extend(with_names(sel.gs.iter().zip(gs.iter()).collect()));
            names.extend(with_names(sel.xs.iter().zip(xs.iter()).collect()));
            let refs: Vec<(String, &MultiMap)> =
                names.iter().map(|(n, m)| (n.clone(), m)).collect();
            Ok(comparison_outcome(params, space, &refs, &c))
        }
        CheckName::Intertwining => {
            let f_name = one(&sel.f, "--f")?;
            let f = ws.require(&f_name)?.clone();
            let gs = lookup(ws, &sel.gs)?;
            let params = format!("f={f_name} gs={}", list(&sel.gs));
            let c = intertwining_sides(&f, &gs, settings)?;
            let mut names = vec![(f_name.clone(), f.clone())];
            names.extend(with_names(sel.gs.iter().zip(gs.iter()).collect()));
            let refs: Vec<(String, &MultiMap)> =
                names.iter().map(|(n, m)| (n.clone(), m)).collect();
            Ok(comparison_outcome(params, space, &refs, &c))
        }
        CheckName::Factorization => {
            let f_name = one(&sel.f, "--f")?;
            let f = ws.require(&f_name)?;
            let splits: Vec<usize> = match sel.n {
                Some(n) => vec![n],
                None => (0..=f.arity()).collect(),
            };
            for n in splits {
                let (lhs, rhs) = factorization_sides(f, n, &settings.caps)?;
                let c = Comparison { lhs, rhs };
                if !c.holds() {
                    return Ok(comparison_outcome(
                        format!("f={f_name} n={n}"),
                        space,
                        &[(f_name.clone(), f)],
                        &c,
                    ));
                }
            }
            Ok(Outcome::pass(format!("f={f_name}")))
        }
        CheckName::SplitSymmetrization => {
            let f_name = one(&sel.f, "--f")?;
            let f = ws.require(&f_name)?;
            let args = lookup(ws, &sel.gs)?;
            let splits: Vec<usize> = match sel.n {
                Some(n) => vec![n],
                None => (0..=args.len()).collect(),
            };
            let params = format!("f={f_name} gs={}", list(&sel.gs));
            for n in splits {
                let c = split_symmetrization_sides(f, n, &args, settings)?;
                if !c.holds() {
                    let mut names = vec![(f_name.clone(), f)];
                    names.extend(sel.gs.iter().cloned().zip(args.iter()));
                    return Ok(comparison_outcome(
                        format!("{params} n={n}"),
                        space,
                        &names,
                        &c,
                    ));
                }
            }
            Ok(Outcome::pass(params))
        }
        CheckName::Ainfty | CheckName::Linfty | CheckName::Corollary => {
            if sel.maps.is_empty() {
                return Err(Error::Input("--maps is required for this check".into()));
            }
            let maps = lookup(ws, &sel.maps)?;
            let max_arity = sel.max_arity.unwrap_or(3);
            let flavor = if check == CheckName::Linfty {
                Flavor::LInfinity
            } else {
                Flavor::AInfinity
            };
            let labels: BTreeMap<usize, String> = maps
                .iter()
                .zip(&sel.maps)
                .map(|(m, n)| (m.arity(), n.clone()))
                .collect();
            let fam = StructureFamily::new(space, flavor, maps)?;
            let params = format!("maps={}", list(&sel.maps));
            if check == CheckName::Corollary {
                corollary_outcome(&fam, max_arity, settings, &params, &labels)
            } else {
                structure_outcome(&fam, max_arity, settings, &params, &labels)
            }
        }
        CheckName::BlockExpansion | CheckName::Relocation | CheckName::InversionCongruences => {
            unreachable!("handled by run_check")
        }
    }
}
