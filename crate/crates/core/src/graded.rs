//! Permutations, unshuffles and graded (Koszul) signs.
//!
//! Permutations are stored in one-line notation with 1-based images, so
//! position `i` holds `σ(i)`. Permuting a sequence `(x_1, …, x_n)` by `σ`
//! produces `(x_σ(1), …, x_σ(n))`; every sign in this module is the sign
//! picked up by that rearrangement.

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use itertools::Itertools;

use crate::error::{Error, Result};

/// Integer grading of a homogeneous element.
pub type Degree = i64;

#[inline]
pub fn is_odd(d: Degree) -> bool {
    d.rem_euclid(2) == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Which graded sign a permutation carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignRule {
    /// ε: the plain Koszul sign.
    Koszul,
    /// χ = sgn · ε.
    Antisymmetric,
}

impl SignRule {
    pub fn sign(self, perm: &Permutation, degrees: &[Degree]) -> Result<Sign> {
        match self {
            SignRule::Koszul => koszul_sign(perm, degrees),
            SignRule::Antisymmetric => antisym_koszul_sign(perm, degrees),
        }
    }
}

/// Factorial-growth guards for the enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub permutations: usize,
    pub unshuffles: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            permutations: 8,
            unshuffles: 8,
        }
    }
}

impl Caps {
    pub fn check_permutations(&self, n: usize) -> Result<()> {
        if n > self.permutations {
            return Err(Error::Resource {
                what: "permutation group",
                requested: n,
                cap: self.permutations,
            });
        }
        Ok(())
    }

    pub fn check_unshuffles(&self, n: usize) -> Result<()> {
        if n > self.unshuffles {
            return Err(Error::Resource {
                what: "unshuffle set",
                requested: n,
                cap: self.unshuffles,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::input(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Swaps positions `i` and `i + 1` (1-based).
    pub fn adjacent_transposition(n: usize, i: usize) -> Self {
        assert!(
            i >= 1 && i < n,
            "transposition ({i}, {}) out of range",
            i + 1
        );
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::input(format!(
                "cannot compose permutations of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    pub fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n)
            .tuple_combinations()
            .filter(move |&(i, j)| self.images[i] > self.images[j])
            .map(|(i, j)| (i + 1, j + 1))
    }

    /// sgn(σ).
    pub fn sign(&self) -> Sign {
        Sign::from_parity(self.inversions().count() % 2 == 1)
    }

    /// `(x_σ(1), …, x_σ(n))`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.len(), "permute: length mismatch");
        self.images.iter().map(|&i| items[i - 1].clone()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.images.iter().join(","))
    }
}

fn check_len(perm: &Permutation, degrees: &[Degree]) -> Result<()> {
    if perm.len() != degrees.len() {
        return Err(Error::input(format!(
            "permutation of length {} paired with {} degrees",
            perm.len(),
            degrees.len()
        )));
    }
    Ok(())
}

/// ε(σ): bubble-sorts the arrangement `(σ(1), …, σ(n))` back to the
/// identity, charging `(−1)^{|x||y|}` for each adjacent swap of `x` and `y`.
pub fn koszul_sign(perm: &Permutation, degrees: &[Degree]) -> Result<Sign> {
    check_len(perm, degrees)?;
    let mut arrangement = perm.images.clone();
    let mut odd = false;
    let n = arrangement.len();
    for pass in 0..n {
        let mut swapped = false;
        for i in 0..n.saturating_sub(pass + 1) {
            let (a, b) = (arrangement[i], arrangement[i + 1]);
            if a > b {
                if is_odd(degrees[a - 1]) && is_odd(degrees[b - 1]) {
                    odd = !odd;
                }
                arrangement.swap(i, i + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Ok(Sign::from_parity(odd))
}

/// χ(σ) = sgn(σ) · ε(σ).
pub fn antisym_koszul_sign(perm: &Permutation, degrees: &[Degree]) -> Result<Sign> {
    Ok(perm.sign() * koszul_sign(perm, degrees)?)
}

/// All of S_n in lexicographic order.
pub fn enumerate_permutations(n: usize, caps: &Caps) -> Result<Vec<Permutation>> {
    caps.check_permutations(n)?;
    Ok((1..=n)
        .permutations(n)
        .map(|images| Permutation { images })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnshuffleSpec {
    blocks: Vec<usize>,
}

impl UnshuffleSpec {
    pub fn new(blocks: Vec<usize>) -> Self {
        UnshuffleSpec { blocks }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn total(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// `N! / (a_1! ⋯ a_m!)`.
    pub fn count(&self) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        self.blocks
            .iter()
            .fold(fact(self.total()), |acc, &a| acc / fact(a))
    }

    /// Start offsets of each block (0-based).
    pub fn offsets(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, &a| {
                let start = *acc;
                *acc += a;
                Some(start)
            })
            .collect()
    }
}

/// Slot sizes `(k_0, …, k_n)` of identity runs around inserted maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InsertionPattern {
    slots: Vec<usize>,
}

impl InsertionPattern {
    pub fn new(slots: Vec<usize>) -> Self {
        InsertionPattern { slots }
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    pub fn total(&self) -> usize {
        self.slots.iter().sum()
    }

    /// Every pattern with `parts` slots summing to `total`, lexicographic.
    pub fn all(parts: usize, total: usize) -> Vec<InsertionPattern> {
        weak_compositions(total, parts)
            .into_iter()
            .map(InsertionPattern::new)
            .collect()
    }
}

/// Weak compositions of `total` into `parts` non-negative parts, lexicographic.
pub fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

/// All γ ∈ S_N increasing on each block, in lexicographic order.
pub fn enumerate_unshuffles(spec: &UnshuffleSpec, caps: &Caps) -> Result<Vec<Permutation>> {
    let total = spec.total();
    caps.check_unshuffles(total)?;

    fn go(
        blocks: &[usize],
        remaining: &[usize],
        prefix: &mut Vec<usize>,
        out: &mut Vec<Permutation>,
    ) {
        let Some((&size, rest)) = blocks.split_first() else {
            out.push(Permutation {
                images: prefix.clone(),
            });
            return;
        };
        for chosen in remaining.iter().copied().combinations(size) {
            let left: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|v| !chosen.contains(v))
                .collect();
            let len = prefix.len();
            prefix.extend_from_slice(&chosen);
            go(rest, &left, prefix, out);
            prefix.truncate(len);
        }
    }

    let all: Vec<usize> = (1..=total).collect();
    let mut out = Vec::new();
    go(&spec.blocks, &all, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Composes every unshuffle γ with every block-wise permutation
/// `π_1 ⊕ ⋯ ⊕ π_m`, giving `γ ∘ (π_1 ⊕ ⋯ ⊕ π_m)` with the sign
/// `s(γ) · ∏ s(π_b)`. Each `s(π_b)` is taken over the degrees the block
/// holds after γ has acted.
pub fn unshuffle_block_expansion(
    spec: &UnshuffleSpec,
    degrees: &[Degree],
    rule: SignRule,
    caps: &Caps,
) -> Result<Vec<(Permutation, Sign)>> {
    if degrees.len() != spec.total() {
        return Err(Error::input(format!(
            "{} degrees for an unshuffle of {} elements",
            degrees.len(),
            spec.total()
        )));
    }
    for &a in spec.blocks() {
        caps.check_permutations(a)?;
    }
    let block_perms: Vec<Vec<Permutation>> = spec
        .blocks()
        .iter()
        .map(|&a| enumerate_permutations(a, caps))
        .collect::<Result<_>>()?;
    let offsets = spec.offsets();

    let mut out = Vec::new();
    for gamma in enumerate_unshuffles(spec, caps)? {
        let gamma_sign = rule.sign(&gamma, degrees)?;
        let after_gamma = gamma.permute(degrees);
        for choice in cartesian(&block_perms) {
            let mut sign = gamma_sign;
            let mut images = Vec::with_capacity(gamma.len());
            for (b, pi) in choice.iter().enumerate() {
                let off = offsets[b];
                let block_degrees = &after_gamma[off..off + pi.len()];
                sign *= rule.sign(pi, block_degrees)?;
                images.extend(pi.images().iter().map(|&i| off + i));
            }
            let block_sum = Permutation { images };
            out.push((gamma.compose(&block_sum)?, sign));
        }
    }
    Ok(out)
}

/// Cartesian product of the lists; a single empty choice when there are none.
pub(crate) fn cartesian<T>(lists: &[Vec<T>]) -> Vec<Vec<&T>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |item| {
                    let mut next = prefix.clone();
                    next.push(item);
                    next
                })
            })
            .collect()
    })
}

/// π̂ together with the parities `α_1`, `α_2` relating its signs to π's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiHat {
    pub perm: Permutation,
    pub alpha1: bool,
    pub alpha2: bool,
}

/// Relocates blocks of `x_π(1), …, x_π(r)`: the first `A = Σ a_i` entries
/// split into strings `X_1, …, X_n` of lengths `a_i`, which are laid out in
/// the order `X_σ(1), …, X_σ(n)` with the free strings of lengths `k_0, …, k_n`
/// (taken from the remaining entries) interleaved around them.
#[allow(clippy::needless_range_loop)]
pub fn pi_hat(
    pi: &Permutation,
    sigma: &Permutation,
    blocks: &[usize],
    slots: &InsertionPattern,
    degrees: &[Degree],
) -> Result<PiHat> {
    let n = sigma.len();
    let r = pi.len();
    let k = slots.slots();
    if blocks.len() != n || k.len() != n + 1 {
        return Err(Error::input(format!(
            "σ ∈ S_{n} needs {n} blocks and {} slots, got {} and {}",
            n + 1,
            blocks.len(),
            k.len()
        )));
    }
    let a_total: usize = blocks.iter().sum();
    if a_total + slots.total() != r {
        return Err(Error::input(format!(
            "blocks and slots cover {} positions but π ∈ S_{r}",
            a_total + slots.total()
        )));
    }
    if degrees.len() != r {
        return Err(Error::input(format!(
            "{} degrees for π ∈ S_{r}",
            degrees.len()
        )));
    }

    // Start of X_j inside x_π(1..A) (0-based).
    let block_start: Vec<usize> = blocks
        .iter()
        .scan(0, |acc, &a| {
            let s = *acc;
            *acc += a;
            Some(s)
        })
        .collect();

    let mut images = Vec::with_capacity(r);
    let mut free_used = 0;
    for m in 0..=n {
        if m >= 1 {
            let b = sigma.image(m) - 1;
            for off in 0..blocks[b] {
                images.push(pi.image(block_start[b] + off + 1));
            }
        }
        for _ in 0..k[m] {
            free_used += 1;
            images.push(pi.image(a_total + free_used));
        }
    }
    let perm = Permutation::new(images)?;

    let x_deg = |pos: usize| degrees[pi.image(pos) - 1];
    let block_degree = |b: usize| -> Degree {
        (0..blocks[b])
            .map(|off| x_deg(block_start[b] + off + 1))
            .sum()
    };

    let mut alpha1 = 0i64;
    let mut alpha2 = 0i64;
    for (i, j) in sigma.inversions() {
        let (bi, bj) = (sigma.image(i) - 1, sigma.image(j) - 1);
        alpha1 += block_degree(bi).rem_euclid(2) * block_degree(bj).rem_euclid(2);
        alpha2 += (blocks[bi] * blocks[bj]) as i64;
    }
    // Free strings k_0 … k_{i-1} precede X_σ(i) in the target layout.
    let mut free_degree = 0i64;
    let mut free_count = 0usize;
    let mut free_pos = a_total;
    for i in 1..=n {
        for _ in 0..k[i - 1] {
            free_pos += 1;
            free_degree += x_deg(free_pos);
        }
        free_count += k[i - 1];
        let b = sigma.image(i) - 1;
        alpha1 += block_degree(b).rem_euclid(2) * free_degree.rem_euclid(2);
        alpha2 += (blocks[b] * free_count) as i64;
    }
    alpha2 += alpha1;

    Ok(PiHat {
        perm,
        alpha1: alpha1 % 2 == 1,
        alpha2: alpha2 % 2 == 1,
    })
}

/// Evaluates both mod-2 congruences relating sums over a permutation's
/// inversions to sums over index pairs.
pub fn inversion_congruences(sigma: &Permutation, v: &[i64], w: &[i64]) -> Result<bool> {
    let n = sigma.len();
    if v.len() != n || w.len() != n {
        return Err(Error::input(format!(
            "σ ∈ S_{n} with vectors of lengths {} and {}",
            v.len(),
            w.len()
        )));
    }
    let vs = |i: usize| v[sigma.image(i) - 1];
    let ws = |i: usize| w[sigma.image(i) - 1];
    let below = || (1..=n).flat_map(move |i| (1..i).map(move |j| (i, j)));

    let mut first: i64 = 0;
    for (i, j) in below() {
        first += v[i - 1] * w[j - 1] + vs(i) * ws(j);
    }
    let mut second_lhs: i64 = 0;
    for (i, j) in sigma.inversions() {
        first += ws(i) * vs(j) + vs(i) * ws(j);
        second_lhs += vs(i) + vs(j);
    }
    let second_rhs: i64 = (1..=n).map(|i| (i as i64 - 1) * (v[i - 1] + vs(i))).sum();

    Ok(first.rem_euclid(2) == 0 && (second_lhs - second_rhs).rem_euclid(2) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    /// Inversion-count formula, independent of the bubble sort.
    fn koszul_by_inversions(perm: &Permutation, degrees: &[Degree]) -> Sign {
        let odd = perm
            .inversions()
            .filter(|&(i, j)| {
                is_odd(degrees[perm.image(i) - 1]) && is_odd(degrees[perm.image(j) - 1])
            })
            .count();
        Sign::from_parity(odd % 2 == 1)
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(
            koszul_sign(&p(&[1, 2, 3]), &[3, -1, 0]).unwrap(),
            Sign::Plus
        );
        assert_eq!(koszul_sign(&p(&[2, 1]), &[1, 1]).unwrap(), Sign::Minus);
        assert_eq!(koszul_sign(&p(&[2, 1]), &[1, 2]).unwrap(), Sign::Plus);
        assert_eq!(koszul_sign(&p(&[2, 3, 1]), &[1, 1, 1]).unwrap(), Sign::Plus);
    }

    #[test]
    fn antisym_examples() {
        assert_eq!(
            antisym_koszul_sign(&p(&[1, 2]), &[1, 0]).unwrap(),
            Sign::Plus
        );
        assert_eq!(
            antisym_koszul_sign(&p(&[2, 1]), &[1, 1]).unwrap(),
            Sign::Plus
        );
        assert_eq!(
            antisym_koszul_sign(&p(&[2, 1]), &[0, 0]).unwrap(),
            Sign::Minus
        );
    }

    #[test]
    fn length_mismatch_is_input_error() {
        assert!(matches!(
            koszul_sign(&p(&[2, 1]), &[1]),
            Err(Error::Input(_))
        ));
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0]).is_err());
    }

    #[test]
    fn koszul_matches_inversion_formula() {
        let caps = Caps::default();
        for n in 0..=5 {
            for perm in enumerate_permutations(n, &caps).unwrap() {
                for degrees in (0..n)
                    .map(|_| -2..=2i64)
                    .multi_cartesian_product()
                    .take(200)
                {
                    assert_eq!(
                        koszul_sign(&perm, &degrees).unwrap(),
                        koszul_by_inversions(&perm, &degrees)
                    );
                }
            }
        }
    }

    #[test]
    fn koszul_is_multiplicative() {
        let caps = Caps::default();
        for n in 0..=4 {
            let perms = enumerate_permutations(n, &caps).unwrap();
            let degree_vectors: Vec<Vec<i64>> = if n == 0 {
                vec![vec![]]
            } else {
                (0..n)
                    .map(|_| -1..=2i64)
                    .multi_cartesian_product()
                    .collect()
            };
            for d in &degree_vectors {
                for s in &perms {
                    for t in &perms {
                        let st = s.compose(t).unwrap();
                        let lhs = koszul_sign(&st, d).unwrap();
                        let rhs =
                            koszul_sign(s, d).unwrap() * koszul_sign(t, &s.permute(d)).unwrap();
                        assert_eq!(lhs, rhs, "σ={s} τ={t} d={d:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn even_and_odd_degree_extremes() {
        let caps = Caps::default();
        for perm in enumerate_permutations(5, &caps).unwrap() {
            let even = [0, 2, -2, 4, 0];
            let odd = [1, -1, 3, 1, 1];
            assert_eq!(koszul_sign(&perm, &even).unwrap(), Sign::Plus);
            assert_eq!(antisym_koszul_sign(&perm, &even).unwrap(), perm.sign());
            assert_eq!(koszul_sign(&perm, &odd).unwrap(), perm.sign());
            assert_eq!(antisym_koszul_sign(&perm, &odd).unwrap(), Sign::Plus);
        }
    }

    #[test]
    fn permutation_enumeration() {
        let caps = Caps::default();
        let zero = enumerate_permutations(0, &caps).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].is_empty());
        assert_eq!(enumerate_permutations(3, &caps).unwrap().len(), 6);
        let four = enumerate_permutations(4, &caps).unwrap();
        assert_eq!(four.len(), 24);
        assert!(four[0].is_identity());
        assert!(four.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(
            enumerate_permutations(9, &caps),
            Err(Error::Resource {
                requested: 9,
                cap: 8,
                ..
            })
        ));
    }

    #[test]
    fn unshuffle_examples() {
        let caps = Caps::default();
        let count =
            |b: &[usize]| enumerate_unshuffles(&UnshuffleSpec::new(b.to_vec()), &caps).unwrap();
        assert_eq!(count(&[1, 1]).len(), 2);
        assert_eq!(count(&[2, 1]).len(), 3);
        let empty_first = count(&[0, 2]);
        assert_eq!(empty_first.len(), 1);
        assert!(empty_first[0].is_identity());
        assert!(enumerate_unshuffles(&UnshuffleSpec::new(vec![5, 4]), &caps).is_err());
    }

    #[test]
    fn unshuffles_are_increasing_per_block_and_counted_by_multinomial() {
        let caps = Caps::default();
        for total in 0..=6 {
            for parts in 1..=3 {
                for blocks in weak_compositions(total, parts) {
                    let spec = UnshuffleSpec::new(blocks.clone());
                    let all = enumerate_unshuffles(&spec, &caps).unwrap();
                    assert_eq!(all.len() as u128, spec.count(), "blocks {blocks:?}");
                    for gamma in &all {
                        for (off, a) in spec.offsets().into_iter().zip(&blocks) {
                            let block = &gamma.images()[off..off + a];
                            assert!(block.windows(2).all(|w| w[0] < w[1]));
                        }
                    }
                    let distinct: std::collections::HashSet<_> = all.iter().collect();
                    assert_eq!(distinct.len(), all.len());
                }
            }
        }
    }

    #[test]
    fn pi_hat_trivial_single_block() {
        let caps = Caps::default();
        for pi in enumerate_permutations(3, &caps).unwrap() {
            let hat = pi_hat(
                &pi,
                &Permutation::identity(1),
                &[3],
                &InsertionPattern::new(vec![0, 0]),
                &[1, 0, 1],
            )
            .unwrap();
            assert_eq!(hat.perm, pi);
            assert!(!hat.alpha1 && !hat.alpha2);
        }
    }

    #[test]
    fn pi_hat_swap_example() {
        let hat = pi_hat(
            &Permutation::identity(2),
            &p(&[2, 1]),
            &[1, 1],
            &InsertionPattern::new(vec![0, 0, 0]),
            &[0, 0],
        )
        .unwrap();
        assert_eq!(hat.perm, p(&[2, 1]));
        // Oracle: direct sign computation.
        let id = Permutation::identity(2);
        let eps = koszul_sign(&hat.perm, &[0, 0]).unwrap() * koszul_sign(&id, &[0, 0]).unwrap();
        let chi = antisym_koszul_sign(&hat.perm, &[0, 0]).unwrap()
            * antisym_koszul_sign(&id, &[0, 0]).unwrap();
        assert_eq!(hat.alpha1, eps.is_minus());
        assert_eq!(hat.alpha2, chi.is_minus());
        assert!(!hat.alpha1 && hat.alpha2);
    }

    #[test]
    fn pi_hat_arity_mismatch() {
        let err = pi_hat(
            &Permutation::identity(3),
            &Permutation::identity(1),
            &[1],
            &InsertionPattern::new(vec![0, 0]),
            &[0, 0, 0],
        );
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn inversion_congruence_examples() {
        assert!(inversion_congruences(&p(&[1]), &[7], &[-3]).unwrap());
        assert!(inversion_congruences(&p(&[2, 1]), &[1, 0], &[1, 1]).unwrap());
        assert!(inversion_congruences(&p(&[2, 1]), &[1], &[1, 1]).is_err());
    }

    #[test]
    fn weak_composition_counts() {
        assert_eq!(weak_compositions(0, 0), vec![Vec::<usize>::new()]);
        assert!(weak_compositions(1, 0).is_empty());
        assert_eq!(weak_compositions(2, 3).len(), 6);
        assert_eq!(weak_compositions(3, 1), vec![vec![3]]);
    }
}
