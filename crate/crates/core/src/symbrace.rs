//! Symmetric braces `f⟨g_1, …, g_n⟩`: the antisymmetric-map construction
//! and the ε-symmetrization of the insertion brace.

use std::borrow::Borrow;
use std::collections::HashMap;

use crate::brace::{brace_signature, brace_unchecked, check_same_space, refs, signed_brace_sum};
use crate::error::{Error, Result};
use crate::graded::{
    enumerate_unshuffles, is_odd, koszul_sign, weak_compositions, Degree, Permutation, Sign,
    SignRule, UnshuffleSpec,
};
use crate::multimap::{
    add_signed, antisymmetrize, is_antisymmetric, tensor_block_eval_basis, Coeffs, MultiMap,
};
use crate::{Comparison, Settings};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymBraceContext {
    pub f_arity: usize,
    pub g_arities: Vec<usize>,
    pub g_degrees: Vec<Degree>,
}

impl SymBraceContext {
    pub fn new(f_arity: usize, g_arities: Vec<usize>, g_degrees: Vec<Degree>) -> Result<Self> {
        if g_degrees.len() != g_arities.len() {
            return Err(Error::input("one degree per inserted map is required"));
        }
        if g_arities.len() > f_arity {
            return Err(Error::input(format!(
                "cannot insert {} maps into a map of arity {f_arity}",
                g_arities.len()
            )));
        }
        Ok(SymBraceContext {
            f_arity,
            g_arities,
            g_degrees,
        })
    }

    pub fn n(&self) -> usize {
        self.g_arities.len()
    }

    /// Size of the trailing block of bare arguments, `N − n`.
    pub fn free_block(&self) -> usize {
        self.f_arity - self.n()
    }

    pub fn result_arity(&self) -> usize {
        self.g_arities.iter().sum::<usize>() + self.free_block()
    }
}

/// δ mod 2 where
/// `δ = Σ_i (N − i) q_i + Σ_{j<i} q_i a_j + Σ_{j<i} a_i a_j + Σ_i (n − i) a_i`.
pub fn delta_parity(ctx: &SymBraceContext) -> bool {
    let n = ctx.n() as i64;
    let big_n = ctx.f_arity as i64;
    let a = |i: usize| ctx.g_arities[i - 1] as i64;
    let q = |i: usize| ctx.g_degrees[i - 1];
    let mut delta: i64 = 0;
    for i in 1..=ctx.n() {
        delta += (big_n - i as i64) * q(i) + (n - i as i64) * a(i);
        for j in 1..i {
            delta += q(i) * a(j) + a(i) * a(j);
        }
    }
    is_odd(delta)
}

fn require_antisymmetric(f: &MultiMap, gs: &[&MultiMap]) -> Result<()> {
    for (pos, m) in std::iter::once(f).chain(gs.iter().copied()).enumerate() {
        if !is_antisymmetric(m) {
            let what = if pos == 0 {
                "f".to_string()
            } else {
                format!("g_{pos}")
            };
            return Err(Error::input(format!("{what} is not antisymmetric")));
        }
    }
    Ok(())
}

fn symbrace_unchecked(f: &MultiMap, gs: &[&MultiMap], settings: &Settings) -> Result<MultiMap> {
    check_same_space(f, gs)?;
    let ctx = SymBraceContext::new(
        f.arity(),
        gs.iter().map(|g| g.arity()).collect(),
        gs.iter().map(|g| g.degree()).collect(),
    )?;
    let mut blocks = ctx.g_arities.clone();
    blocks.push(ctx.free_block());
    let gammas = enumerate_unshuffles(&UnshuffleSpec::new(blocks), &settings.caps)?;
    let mut slots = vec![0; ctx.n() + 1];
    slots[ctx.n()] = ctx.free_block();
    let delta = Sign::from_parity(delta_parity(&ctx));
    let (arity, degree) = brace_signature(f, gs);
    let space = f.space().clone();
    MultiMap::from_fn(&space, arity as usize, degree, |tuple| {
        let degrees = space.degrees_of(tuple);
        let mut out = Coeffs::new();
        for gamma in &gammas {
            let term = tensor_block_eval_basis(f, gs, &slots, &gamma.permute(tuple));
            if !term.is_empty() {
                add_signed(
                    &mut out,
                    &term,
                    delta * SignRule::Antisymmetric.sign(gamma, &degrees)?,
                );
            }
        }
        Ok(out)
    })
}

/// `f⟨g_1, …, g_n⟩(x_1, …, x_r) =
/// (−1)^δ Σ_γ χ(γ) f(g_1 ⊗ ⋯ ⊗ g_n ⊗ 1^{N−n})(x_γ(1), …, x_γ(r))`
/// over `(a_1|…|a_n|N−n)`-unshuffles γ, for antisymmetric `f` and `g_i`.
pub fn symbrace_eval<G: Borrow<MultiMap>>(f: &MultiMap, gs: &[G]) -> Result<MultiMap> {
    symbrace_eval_with(f, gs, &Settings::default())
}

pub fn symbrace_eval_with<G: Borrow<MultiMap>>(
    f: &MultiMap,
    gs: &[G],
    settings: &Settings,
) -> Result<MultiMap> {
    let gs = refs(gs);
    require_antisymmetric(f, &gs)?;
    symbrace_unchecked(f, &gs, settings)
}

/// `f⟨g_1, …, g_n⟩ = Σ_{σ ∈ S_n} ε(σ) f{g_σ(1), …, g_σ(n)}`.
pub fn symmetrize_brace<G: Borrow<MultiMap>>(f: &MultiMap, gs: &[G]) -> Result<MultiMap> {
    symmetrize_brace_with(f, gs, &Settings::default())
}

pub fn symmetrize_brace_with<G: Borrow<MultiMap>>(
    f: &MultiMap,
    gs: &[G],
    settings: &Settings,
) -> Result<MultiMap> {
    let gs = refs(gs);
    check_same_space(f, &gs)?;
    if gs.len() > f.arity() {
        return Err(Error::input(format!(
            "cannot insert {} maps into a map of arity {}",
            gs.len(),
            f.arity()
        )));
    }
    signed_brace_sum(f, &gs, settings)
}

/// Which symmetric brace an identity check exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraceFlavor {
    /// The unshuffle construction on antisymmetric maps.
    Unshuffle,
    /// The ε-symmetrized insertion brace.
    Symmetrized,
}

/// Evaluates one flavor with overflow yielding zero and memoized
/// insertion braces for the symmetrized flavor.
struct Engine<'s> {
    flavor: BraceFlavor,
    settings: &'s Settings,
    brace_cache: HashMap<Vec<usize>, MultiMap>,
}

impl<'s> Engine<'s> {
    fn new(flavor: BraceFlavor, settings: &'s Settings) -> Self {
        Engine {
            flavor,
            settings,
            brace_cache: HashMap::new(),
        }
    }

    /// `pool[f]⟨pool[args]⟩`; ids index into `pool`.
    fn eval(&mut self, pool: &[&MultiMap], f: usize, args: &[usize]) -> Result<MultiMap> {
        let fm = pool[f];
        let gs: Vec<&MultiMap> = args.iter().map(|&i| pool[i]).collect();
        if gs.len() > fm.arity() {
            let (arity, degree) = brace_signature(fm, &gs);
            return MultiMap::zero(fm.space(), arity.max(1) as usize, degree);
        }
        match self.flavor {
            BraceFlavor::Unshuffle => symbrace_unchecked(fm, &gs, self.settings),
            BraceFlavor::Symmetrized => {
                let (arity, degree) = brace_signature(fm, &gs);
                let parities: Vec<Degree> = gs.iter().map(|g| g.brace_parity() as Degree).collect();
                let mut out = MultiMap::zero(fm.space(), arity as usize, degree)?;
                for sigma in crate::graded::enumerate_permutations(args.len(), &self.settings.caps)?
                {
                    let sign = koszul_sign(&sigma, &parities)?;
                    let mut key = vec![f];
                    key.extend(sigma.permute(args));
                    if !self.brace_cache.contains_key(&key) {
                        let ordered: Vec<&MultiMap> = key[1..].iter().map(|&i| pool[i]).collect();
                        let value = brace_unchecked(fm, &ordered, self.settings.beta)?;
                        self.brace_cache.insert(key.clone(), value);
                    }
                    out.add_assign_signed(&self.brace_cache[&key], sign)?;
                }
                Ok(out)
            }
        }
    }
}

fn check_flavor_inputs(flavor: BraceFlavor, f: &MultiMap, gs: &[&MultiMap]) -> Result<()> {
    check_same_space(f, gs)?;
    if flavor == BraceFlavor::Unshuffle {
        require_antisymmetric(f, gs)?;
    }
    if gs.len() > f.arity() {
        return Err(Error::input(format!(
            "cannot insert {} maps into a map of arity {}",
            gs.len(),
            f.arity()
        )));
    }
    Ok(())
}

/// True iff swapping adjacent `g_i, g_{i+1}` multiplies `f⟨…⟩` by
/// `(−1)^{|g_i||g_{i+1}|}` in brace-algebra parities.
pub fn graded_symmetry_check<G: Borrow<MultiMap>>(
    f: &MultiMap,
    gs: &[G],
    flavor: BraceFlavor,
    settings: &Settings,
) -> Result<bool> {
    let gs = refs(gs);
    check_flavor_inputs(flavor, f, &gs)?;
    let mut pool = vec![f];
    pool.extend(gs.iter().copied());
    let mut engine = Engine::new(flavor, settings);
    let ids: Vec<usize> = (1..=gs.len()).collect();
    let base = engine.eval(&pool, 0, &ids)?;
    for i in 0..gs.len().saturating_sub(1) {
        let mut swapped = ids.clone();
        swapped.swap(i, i + 1);
        let value = engine.eval(&pool, 0, &swapped)?;
        let odd = gs[i].brace_parity() && gs[i + 1].brace_parity();
        let expected = if odd { base.negate() } else { base.clone() };
        if value != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both sides of
/// `f⟨g_1, …, g_n⟩⟨x_1, …, x_r⟩ = Σ_γ ε · f⟨g_1⟨x_γ…⟩, …, g_n⟨x_γ…⟩, x_γ…⟩`
/// over `(n+1)`-unshuffles γ of the `x`s.
pub fn symbrace_axiom_sides<G: Borrow<MultiMap>, H: Borrow<MultiMap>>(
    f: &MultiMap,
    gs: &[G],
    xs: &[H],
    flavor: BraceFlavor,
    settings: &Settings,
) -> Result<Comparison> {
    let gs = refs(gs);
    let xs = refs(xs);
    check_flavor_inputs(flavor, f, &gs)?;
    check_same_space(f, &xs)?;
    if flavor == BraceFlavor::Unshuffle {
        require_antisymmetric(f, &xs)?;
    }
    let (n, r) = (gs.len(), xs.len());

    // Pool layout: f, g_1..g_n, x_1..x_r, then the inner results.
    let mut pool: Vec<&MultiMap> = vec![f];
    pool.extend(gs.iter().copied());
    pool.extend(xs.iter().copied());
    let g_id = |i: usize| 1 + i;
    let x_id = |j: usize| 1 + n + j;

    let mut engine = Engine::new(flavor, settings);
    let g_ids: Vec<usize> = (0..n).map(g_id).collect();
    let inner = engine.eval(&pool, 0, &g_ids)?;
    if r > inner.arity() {
        return Err(Error::input(format!(
            "f⟨g_1..g_{n}⟩ has arity {} and cannot take {r} maps",
            inner.arity()
        )));
    }
    let lhs = {
        let mut lhs_pool = vec![&inner];
        lhs_pool.extend(xs.iter().copied());
        let mut lhs_engine = Engine::new(flavor, settings);
        let ids: Vec<usize> = (1..=r).collect();
        lhs_engine.eval(&lhs_pool, 0, &ids)?
    };

    // Every nested g_i⟨x_S⟩ for increasing index lists S.
    let mut nested_keys: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        for size in 0..=r {
            for subset in itertools::Itertools::combinations(0..r, size) {
                nested_keys.push((i, subset));
            }
        }
    }
    let mut nested_values = Vec::with_capacity(nested_keys.len());
    for (i, subset) in &nested_keys {
        let ids: Vec<usize> = subset.iter().map(|&j| x_id(j)).collect();
        nested_values.push(engine.eval(&pool, g_id(*i), &ids)?);
    }
    let base = pool.len();
    pool.extend(nested_values.iter());
    let nested_id: HashMap<(usize, Vec<usize>), usize> = nested_keys
        .into_iter()
        .enumerate()
        .map(|(k, key)| (key, base + k))
        .collect();

    let parities: Vec<Degree> = gs
        .iter()
        .chain(xs.iter())
        .map(|m| m.brace_parity() as Degree)
        .collect();

    let mut rhs = MultiMap::zero(lhs.space(), lhs.arity(), lhs.degree())?;
    for blocks in weak_compositions(r, n + 1) {
        let spec = UnshuffleSpec::new(blocks.clone());
        let offsets = spec.offsets();
        for gamma in enumerate_unshuffles(&spec, &settings.caps)? {
            let x_order: Vec<usize> = gamma.images().iter().map(|&j| j - 1).collect();
            let mut arrangement = Vec::with_capacity(n + r);
            let mut args = Vec::with_capacity(n + blocks[n]);
            for i in 0..n {
                let block = &x_order[offsets[i]..offsets[i] + blocks[i]];
                arrangement.push(i + 1);
                arrangement.extend(block.iter().map(|&j| n + j + 1));
                args.push(nested_id[&(i, block.to_vec())]);
            }
            let free = &x_order[offsets[n]..];
            arrangement.extend(free.iter().map(|&j| n + j + 1));
            args.extend(free.iter().map(|&j| x_id(j)));
            if args.iter().any(|&id| pool[id].is_zero()) {
                continue;
            }
            let sign = koszul_sign(&Permutation::new(arrangement)?, &parities)?;
            let term = engine.eval(&pool, 0, &args)?;
            rhs.add_assign_signed(&term, sign)?;
        }
    }
    Ok(Comparison { lhs, rhs })
}

pub fn symbrace_axiom_check<G: Borrow<MultiMap>, H: Borrow<MultiMap>>(
    f: &MultiMap,
    gs: &[G],
    xs: &[H],
    flavor: BraceFlavor,
) -> Result<bool> {
    Ok(symbrace_axiom_sides(f, gs, xs, flavor, &Settings::default())?.holds())
}

/// Both sides of
/// `Σ_σ ε(σ) as(f{g_σ(1), …, g_σ(n)}) = as(f)⟨as(g_1), …, as(g_n)⟩`.
pub fn intertwining_sides<G: Borrow<MultiMap>>(
    f: &MultiMap,
    gs: &[G],
    settings: &Settings,
) -> Result<Comparison> {
    let gs = refs(gs);
    check_same_space(f, &gs)?;
    if gs.len() > f.arity() {
        return Err(Error::input(format!(
            "cannot insert {} maps into a map of arity {}",
            gs.len(),
            f.arity()
        )));
    }
    let lhs = antisymmetrize(&signed_brace_sum(f, &gs, settings)?, &settings.caps)?;
    let as_f = antisymmetrize(f, &settings.caps)?;
    let as_gs: Vec<MultiMap> = gs
        .iter()
        .map(|g| antisymmetrize(g, &settings.caps))
        .collect::<Result<_>>()?;
    let rhs = symbrace_unchecked(&as_f, &refs(&as_gs), settings)?;
    Ok(Comparison { lhs, rhs })
}

pub fn intertwining_check<G: Borrow<MultiMap>>(f: &MultiMap, gs: &[G]) -> Result<bool> {
    Ok(intertwining_sides(f, gs, &Settings::default())?.holds())
}
