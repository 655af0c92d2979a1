//! The insertion brace `f{g_1, …, g_n}` on `⊕_k Hom(V^{⊗k}, V)`.

use std::borrow::Borrow;
use std::collections::HashMap;

use crate::arrangement::FormalSum;
use crate::error::{Error, Result};
use crate::graded::{
    enumerate_permutations, is_odd, weak_compositions, Degree, InsertionPattern, Sign, SignRule,
};
use crate::multimap::{tensor_block_eval_basis, Coeffs, MultiMap};
use crate::{Comparison, Settings};

/// Where the `[a_i − 1][k_j + a_j]` sum of β starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BetaConvention {
    /// `0 ≤ j < i` with `a_0 = 0`, so the leading slot `k_0` contributes.
    #[default]
    Standard,
    /// `1 ≤ j < i`: drops the `k_0` term. Kept only to show that the
    /// identity checks detect the difference.
    OmitLeadingSlot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceContext {
    pub f_arity: usize,
    pub g_arities: Vec<usize>,
    pub g_degrees: Vec<Degree>,
    pub slots: InsertionPattern,
}

impl BraceContext {
    pub fn new(
        f_arity: usize,
        g_arities: Vec<usize>,
        g_degrees: Vec<Degree>,
        slots: InsertionPattern,
    ) -> Result<Self> {
        let n = g_arities.len();
        if g_degrees.len() != n {
            return Err(Error::input("one degree per inserted map is required"));
        }
        if n > f_arity {
            return Err(Error::input(format!(
                "cannot insert {n} maps into a map of arity {f_arity}"
            )));
        }
        if slots.slots().len() != n + 1 || slots.total() != f_arity - n {
            return Err(Error::input(format!(
                "slot pattern {:?} must have {} entries summing to {}",
                slots.slots(),
                n + 1,
                f_arity - n
            )));
        }
        Ok(BraceContext {
            f_arity,
            g_arities,
            g_degrees,
            slots,
        })
    }

    pub fn n(&self) -> usize {
        self.g_arities.len()
    }

    /// `r = Σ a_i + N − n`.
    pub fn result_arity(&self) -> usize {
        self.g_arities.iter().sum::<usize>() + self.f_arity - self.n()
    }
}

pub fn beta_parity(ctx: &BraceContext) -> bool {
    beta_parity_with(ctx, BetaConvention::Standard)
}

/// β mod 2 where
/// `β = Σ_{j<i} [a_i − 1][k_j + a_j] + Σ_i (N − i) q_i + Σ_{j<i} q_i a_j`.
#[allow(clippy::needless_range_loop)]
pub fn beta_parity_with(ctx: &BraceContext, convention: BetaConvention) -> bool {
    let a = |i: usize| {
        if i == 0 {
            0
        } else {
            ctx.g_arities[i - 1] as i64
        }
    };
    let q = |i: usize| ctx.g_degrees[i - 1];
    let k = ctx.slots.slots();
    let big_n = ctx.f_arity as i64;
    let first_j = match convention {
        BetaConvention::Standard => 0,
        BetaConvention::OmitLeadingSlot => 1,
    };
    let mut beta: i64 = 0;
    for i in 1..=ctx.n() {
        for j in first_j..i {
            beta += (a(i) - 1) * (k[j] as i64 + a(j));
        }
        beta += (big_n - i as i64) * q(i);
        for j in 1..i {
            beta += q(i) * a(j);
        }
    }
    is_odd(beta)
}

pub(crate) fn refs<G: Borrow<MultiMap>>(gs: &[G]) -> Vec<&MultiMap> {
    gs.iter().map(Borrow::borrow).collect()
}

/// `(Σ a_i + N − n, p + Σ q_i)`; the arity may be non-positive only for
/// inadmissible shapes, which callers reject first.
pub(crate) fn brace_signature(f: &MultiMap, gs: &[&MultiMap]) -> (i64, Degree) {
    let arity =
        gs.iter().map(|g| g.arity() as i64).sum::<i64>() + f.arity() as i64 - gs.len() as i64;
    let degree = f.degree() + gs.iter().map(|g| g.degree()).sum::<Degree>();
    (arity, degree)
}

pub(crate) fn check_same_space(f: &MultiMap, gs: &[&MultiMap]) -> Result<()> {
    if gs.iter().any(|g| g.space() != f.space()) {
        return Err(Error::input("all maps must share one graded space"));
    }
    Ok(())
}

pub(crate) fn brace_unchecked(
    f: &MultiMap,
    gs: &[&MultiMap],
    beta: BetaConvention,
) -> Result<MultiMap> {
    check_same_space(f, gs)?;
    let n = gs.len();
    let big_n = f.arity();
    let (arity, degree) = brace_signature(f, gs);
    let g_arities: Vec<usize> = gs.iter().map(|g| g.arity()).collect();
    let g_degrees: Vec<Degree> = gs.iter().map(|g| g.degree()).collect();
    let patterns: Vec<(InsertionPattern, Sign)> = InsertionPattern::all(n + 1, big_n - n)
        .into_iter()
        .map(|slots| {
            let ctx = BraceContext {
                f_arity: big_n,
                g_arities: g_arities.clone(),
                g_degrees: g_degrees.clone(),
                slots,
            };
            let sign = Sign::from_parity(beta_parity_with(&ctx, beta));
            (ctx.slots, sign)
        })
        .collect();
    MultiMap::from_fn(f.space(), arity as usize, degree, |tuple| {
        let mut out = Coeffs::new();
        for (slots, sign) in &patterns {
            let term = tensor_block_eval_basis(f, gs, slots.slots(), tuple);
            crate::multimap::add_signed(&mut out, &term, *sign);
        }
        Ok(out)
    })
}

/// Like [`brace_eval_with`], but inserting more maps than `f` has inputs
/// yields the zero map of the would-be signature.
pub(crate) fn brace_or_zero(
    f: &MultiMap,
    gs: &[&MultiMap],
    beta: BetaConvention,
) -> Result<MultiMap> {
    if gs.len() > f.arity() {
        let (arity, degree) = brace_signature(f, gs);
        return MultiMap::zero(f.space(), arity.max(1) as usize, degree);
    }
    brace_unchecked(f, gs, beta)
}

/// `f{g_1, …, g_n} = Σ_{k_0+⋯+k_n = N−n} (−1)^β f(1^{k_0} ⊗ g_1 ⊗ ⋯ ⊗ g_n ⊗ 1^{k_n})`.
pub fn brace_eval<G: Borrow<MultiMap>>(f: &MultiMap, gs: &[G]) -> Result<MultiMap> {
    brace_eval_with(f, gs, BetaConvention::Standard)
}

pub fn brace_eval_with<G: Borrow<MultiMap>>(
    f: &MultiMap,
    gs: &[G],
    beta: BetaConvention,
) -> Result<MultiMap> {
    let gs = refs(gs);
    if gs.len() > f.arity() {
        return Err(Error::input(format!(
            "cannot insert {} maps into a map of arity {}",
            gs.len(),
            f.arity()
        )));
    }
    brace_unchecked(f, &gs, beta)
}

pub fn brace_parities<G: Borrow<MultiMap>>(maps: &[G]) -> Vec<Degree> {
    maps.iter()
        .map(|m| m.borrow().brace_parity() as Degree)
        .collect()
}

/// Both sides of the nested brace relation
/// `x{x_1, …, x_n}{y_1, …, y_r} = Σ ε · x{…, y, x_l{y, …, y}, y, …}`.
pub fn brace_axiom_sides<G: Borrow<MultiMap>, H: Borrow<MultiMap>>(
    x: &MultiMap,
    xs: &[G],
    ys: &[H],
    settings: &Settings,
) -> Result<Comparison> {
    let xs = refs(xs);
    let ys = refs(ys);
    let beta = settings.beta;
    let (n, r) = (xs.len(), ys.len());
    check_same_space(x, &xs)?;
    check_same_space(x, &ys)?;
    if n > x.arity() {
        return Err(Error::input(format!(
            "x of arity {} cannot take {n} maps",
            x.arity()
        )));
    }
    let inner = brace_unchecked(x, &xs, beta)?;
    if r > inner.arity() {
        return Err(Error::input(format!(
            "x{{x_1..x_{n}}} has arity {} and cannot take {r} maps",
            inner.arity()
        )));
    }
    let lhs = brace_unchecked(&inner, &ys, beta)?;

    let x_par: Vec<bool> = xs.iter().map(|m| m.brace_parity()).collect();
    let y_par: Vec<bool> = ys.iter().map(|m| m.brace_parity()).collect();

    let mut nested: HashMap<(usize, usize, usize), MultiMap> = HashMap::new();
    for (l, xl) in xs.iter().enumerate() {
        for start in 0..=r {
            for end in start..=r {
                nested.insert((l, start, end), brace_or_zero(xl, &ys[start..end], beta)?);
            }
        }
    }

    let mut rhs = MultiMap::zero(lhs.space(), lhs.arity(), lhs.degree())?;
    // Gaps (i_1, j_1 − i_1, i_2 − j_1, …, r − j_n) of 0 ≤ i_1 ≤ j_1 ≤ ⋯ ≤ j_n ≤ r.
    'terms: for gaps in weak_compositions(r, 2 * n + 1) {
        let mut list: Vec<&MultiMap> = Vec::with_capacity(r + n);
        let mut pos = 0;
        let mut odd_before = false;
        let mut odd = false;
        for l in 0..=n {
            let free = gaps[2 * l];
            for j in pos..pos + free {
                list.push(ys[j]);
                odd_before ^= y_par[j];
            }
            pos += free;
            if l == n {
                break;
            }
            let count = gaps[2 * l + 1];
            odd ^= x_par[l] && odd_before;
            let inner = &nested[&(l, pos, pos + count)];
            if inner.is_zero() {
                continue 'terms;
            }
            list.push(inner);
            for &p in &y_par[pos..pos + count] {
                odd_before ^= p;
            }
            pos += count;
        }
        let term = brace_or_zero(x, &list, beta)?;
        rhs.add_assign_signed(&term, Sign::from_parity(odd))?;
    }
    Ok(Comparison { lhs, rhs })
}

pub fn brace_axiom_check<G: Borrow<MultiMap>, H: Borrow<MultiMap>>(
    x: &MultiMap,
    xs: &[G],
    ys: &[H],
) -> Result<bool> {
    Ok(brace_axiom_sides(x, xs, ys, &Settings::default())?.holds())
}

/// Applies `f̃_n`: every ε-signed permutation of the first `n` positions,
/// then every ε-signed interleaving of them among the rest.
pub fn f_tilde_expand(
    sum: &FormalSum,
    n: usize,
    degrees: &[Degree],
    settings: &Settings,
) -> Result<FormalSum> {
    sum.permute_head(n, degrees, SignRule::Koszul, &settings.caps)?
        .interleave(n, degrees, SignRule::Koszul)
}

/// `Σ_t sign_t · f{args in order_t}`.
pub fn eval_brace_sum(
    f: &MultiMap,
    args: &[&MultiMap],
    sum: &FormalSum,
    beta: BetaConvention,
) -> Result<MultiMap> {
    let (arity, degree) = brace_signature(f, args);
    if args.len() > f.arity() || arity < 1 {
        return Err(Error::input(format!(
            "map of arity {} cannot take {} maps",
            f.arity(),
            args.len()
        )));
    }
    let mut out = MultiMap::zero(f.space(), arity as usize, degree)?;
    let mut cache: HashMap<Vec<usize>, MultiMap> = HashMap::new();
    for term in sum.terms() {
        if !cache.contains_key(&term.order) {
            let ordered: Vec<&MultiMap> = term.order.iter().map(|&i| args[i]).collect();
            cache.insert(term.order.clone(), brace_unchecked(f, &ordered, beta)?);
        }
        out.add_assign_signed(&cache[&term.order], term.sign)?;
    }
    Ok(out)
}

/// Both sides of `Σ_{ρ ∈ S_{n+m}} ε(ρ) f{x_ρ(1), …, x_ρ(n+m)} = f̃_n ∘ Θ_m(x)`.
pub fn split_symmetrization_sides<G: Borrow<MultiMap>>(
    f: &MultiMap,
    n: usize,
    args: &[G],
    settings: &Settings,
) -> Result<Comparison> {
    let args = refs(args);
    check_same_space(f, &args)?;
    let total = args.len();
    if n > total {
        return Err(Error::input(format!(
            "split n = {n} exceeds {total} arguments"
        )));
    }
    if total > f.arity() {
        return Err(Error::input(format!(
            "map of arity {} cannot take {total} maps",
            f.arity()
        )));
    }
    let degrees = brace_parities(&args);

    let mut direct = FormalSum::identity(total);
    direct = direct.permute_head(total, &degrees, SignRule::Koszul, &settings.caps)?;
    let lhs = eval_brace_sum(f, &args, &direct, settings.beta)?;

    let theta = FormalSum::identity(total).permute_tail(
        total - n,
        &degrees,
        SignRule::Koszul,
        &settings.caps,
    )?;
    let composite = f_tilde_expand(&theta, n, &degrees, settings)?;
    let rhs = eval_brace_sum(f, &args, &composite, settings.beta)?;
    Ok(Comparison { lhs, rhs })
}

/// ε-signed sum `Σ_σ ε(σ) f{g_σ(1), …, g_σ(n)}` with brace-algebra parities.
pub(crate) fn signed_brace_sum(
    f: &MultiMap,
    gs: &[&MultiMap],
    settings: &Settings,
) -> Result<MultiMap> {
    let (arity, degree) = brace_signature(f, gs);
    if gs.len() > f.arity() {
        return MultiMap::zero(f.space(), arity.max(1) as usize, degree);
    }
    let parities = brace_parities(gs);
    let mut out = MultiMap::zero(f.space(), arity as usize, degree)?;
    for sigma in enumerate_permutations(gs.len(), &settings.caps)? {
        let sign = SignRule::Koszul.sign(&sigma, &parities)?;
        let term = brace_unchecked(f, &sigma.permute(gs), settings.beta)?;
        out.add_assign_signed(&term, sign)?;
    }
    Ok(out)
}
