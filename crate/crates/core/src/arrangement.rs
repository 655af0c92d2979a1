//! Formal signed sums of argument rearrangements.
//!
//! A [`FormalSum`] records, for a fixed list of `len` arguments, a list of
//! orderings of those arguments (0-based positions) with a sign each. The
//! operators below act on every term, reading the degree of whatever
//! argument currently sits in each position.

use crate::error::{Error, Result};
use crate::graded::{
    enumerate_permutations, is_odd, Caps, Degree, InsertionPattern, Permutation, Sign, SignRule,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub sign: Sign,
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum {
    len: usize,
    terms: Vec<Term>,
}

impl FormalSum {
    pub fn identity(len: usize) -> Self {
        FormalSum {
            len,
            terms: vec![Term {
                sign: Sign::Plus,
                order: (0..len).collect(),
            }],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    fn check_degrees(&self, degrees: &[Degree]) -> Result<()> {
        if degrees.len() != self.len {
            return Err(Error::input(format!(
                "{} degrees for a sum over {} arguments",
                degrees.len(),
                self.len
            )));
        }
        Ok(())
    }

    fn check_split(&self, part: usize) -> Result<()> {
        if part > self.len {
            return Err(Error::input(format!(
                "cannot split {} arguments at {part}",
                self.len
            )));
        }
        Ok(())
    }

    fn permute_range(
        &self,
        start: usize,
        count: usize,
        degrees: &[Degree],
        rule: SignRule,
        caps: &Caps,
    ) -> Result<Self> {
        let perms = enumerate_permutations(count, caps)?;
        let mut terms = Vec::with_capacity(self.terms.len() * perms.len());
        for term in &self.terms {
            let window = &term.order[start..start + count];
            let window_degrees: Vec<Degree> = window.iter().map(|&i| degrees[i]).collect();
            for pi in &perms {
                let mut order = term.order.clone();
                order[start..start + count].clone_from_slice(&pi.permute(window));
                terms.push(Term {
                    sign: term.sign * rule.sign(pi, &window_degrees)?,
                    order,
                });
            }
        }
        Ok(FormalSum {
            len: self.len,
            terms,
        })
    }

    /// Θ_m: every signed permutation of the last `m` positions.
    pub fn permute_tail(
        &self,
        m: usize,
        degrees: &[Degree],
        rule: SignRule,
        caps: &Caps,
    ) -> Result<Self> {
        self.check_degrees(degrees)?;
        self.check_split(m)?;
        self.permute_range(self.len - m, m, degrees, rule, caps)
    }

    /// Ψ_n: every signed permutation of the first `n` positions.
    pub fn permute_head(
        &self,
        n: usize,
        degrees: &[Degree],
        rule: SignRule,
        caps: &Caps,
    ) -> Result<Self> {
        self.check_degrees(degrees)?;
        self.check_split(n)?;
        self.permute_range(0, n, degrees, rule, caps)
    }

    /// Φ_{nm}: deals the last `m` positions around the first `n`, keeping
    /// both groups in order, over every slot pattern `(k_0, …, k_n)`.
    pub fn interleave(&self, n: usize, degrees: &[Degree], rule: SignRule) -> Result<Self> {
        self.check_degrees(degrees)?;
        self.check_split(n)?;
        let m = self.len - n;
        let patterns = InsertionPattern::all(n + 1, m);
        let mut terms = Vec::with_capacity(self.terms.len() * patterns.len());
        for term in &self.terms {
            let (ys, zs) = term.order.split_at(n);
            let y_degrees: Vec<Degree> = ys.iter().map(|&i| degrees[i]).collect();
            let z_degrees: Vec<Degree> = zs.iter().map(|&i| degrees[i]).collect();
            for pattern in &patterns {
                let mut order = Vec::with_capacity(self.len);
                let mut z = 0;
                for (j, &k) in pattern.slots().iter().enumerate() {
                    order.extend_from_slice(&zs[z..z + k]);
                    z += k;
                    if j < n {
                        order.push(ys[j]);
                    }
                }
                let odd = interleave_parity(&y_degrees, &z_degrees, pattern, rule);
                terms.push(Term {
                    sign: term.sign * Sign::from_parity(odd),
                    order,
                });
            }
        }
        Ok(FormalSum {
            len: self.len,
            terms,
        })
    }

    /// Net integer coefficient of each ordering.
    pub fn collect(&self) -> std::collections::BTreeMap<Vec<usize>, i64> {
        let mut out = std::collections::BTreeMap::new();
        for t in &self.terms {
            *out.entry(t.order.clone()).or_insert(0) += t.sign.to_i64();
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Each ordering as a permutation of `1..=len`.
    pub fn permutations(&self) -> impl Iterator<Item = (Sign, Permutation)> + '_ {
        self.terms.iter().map(|t| {
            let images = t.order.iter().map(|&i| i + 1).collect();
            (
                t.sign,
                Permutation::new(images).expect("orders are permutations"),
            )
        })
    }
}

/// Parity η of interleaving `y_1, …, y_n` among `z_1, …, z_m` by the slot
/// pattern `(k_0, …, k_n)`: each `y_i` crosses the `z`s of slots
/// `0, …, i − 1`. Under the antisymmetric rule every crossing also counts
/// once, which totals `Σ_{i=0}^{n} (n − i) k_i`.
pub fn interleave_parity(
    y_degrees: &[Degree],
    z_degrees: &[Degree],
    pattern: &InsertionPattern,
    rule: SignRule,
) -> bool {
    let n = y_degrees.len();
    let slots = pattern.slots();
    let mut crossed: usize = 0;
    let mut crossed_degree: Degree = 0;
    let mut odd = false;
    for i in 0..n {
        for &d in &z_degrees[crossed..crossed + slots[i]] {
            crossed_degree += d;
        }
        crossed += slots[i];
        if is_odd(y_degrees[i]) && is_odd(crossed_degree) {
            odd = !odd;
        }
    }
    if rule == SignRule::Antisymmetric {
        let count: usize = slots.iter().enumerate().map(|(i, &k)| (n - i) * k).sum();
        odd ^= count % 2 == 1;
    }
    odd
}
