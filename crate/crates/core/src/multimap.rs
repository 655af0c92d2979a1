//! Graded vector spaces and homogeneous multilinear maps over ℚ.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arrangement::FormalSum;
use crate::error::{Error, Result};
use crate::graded::{
    enumerate_permutations, is_odd, Caps, Degree, InsertionPattern, Sign, SignRule,
};

pub type Scalar = BigRational;

/// Sparse coefficients on basis indices; never stores zeros.
pub type Coeffs = BTreeMap<usize, Scalar>;

pub(crate) fn add_coeff(target: &mut Coeffs, index: usize, value: Scalar) {
    if value.is_zero() {
        return;
    }
    match target.entry(index) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += value;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

pub(crate) fn add_signed(target: &mut Coeffs, source: &Coeffs, sign: Sign) {
    for (&i, v) in source {
        add_coeff(
            target,
            i,
            if sign.is_minus() {
                -v.clone()
            } else {
                v.clone()
            },
        );
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub name: String,
    pub degree: Degree,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, degree: Degree) -> Self {
        BasisElement {
            name: name.into(),
            degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    basis: Vec<BasisElement>,
}

impl GradedSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Arc<Self>> {
        if basis.is_empty() {
            return Err(Error::input(
                "a graded space needs at least one basis element",
            ));
        }
        let mut names = HashSet::new();
        for b in &basis {
            if b.name.is_empty() {
                return Err(Error::input("basis element names must be non-empty"));
            }
            if !names.insert(b.name.as_str()) {
                return Err(Error::input(format!(
                    "duplicate basis element '{}'",
                    b.name
                )));
            }
        }
        Ok(Arc::new(GradedSpace { basis }))
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_pairs<S: Into<String>>(
        pairs: impl IntoIterator<Item = (S, Degree)>,
    ) -> Result<Arc<Self>> {
        Self::new(
            pairs
                .into_iter()
                .map(|(n, d)| BasisElement::new(n, d))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, index: usize) -> Degree {
        self.basis[index].degree
    }

    pub fn name(&self, index: usize) -> &str {
        &self.basis[index].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn has_degree(&self, degree: Degree) -> bool {
        self.basis.iter().any(|b| b.degree == degree)
    }

    pub fn tuple_degree(&self, tuple: &[usize]) -> Degree {
        tuple.iter().map(|&i| self.degree(i)).sum()
    }

    pub fn degrees_of(&self, tuple: &[usize]) -> Vec<Degree> {
        tuple.iter().map(|&i| self.degree(i)).collect()
    }

    /// Every basis tuple of the given length, lexicographic.
    pub fn tuples(&self, arity: usize) -> impl Iterator<Item = Vec<usize>> {
        let dim = self.dim();
        let product = (0..arity).map(move |_| 0..dim).multi_cartesian_product();
        let empty = (arity == 0).then(Vec::new);
        empty.into_iter().chain(product)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVector {
    space: Arc<GradedSpace>,
    coeffs: Coeffs,
}

impl GradedVector {
    pub fn zero(space: &Arc<GradedSpace>) -> Self {
        GradedVector {
            space: space.clone(),
            coeffs: Coeffs::new(),
        }
    }

    pub fn basis(space: &Arc<GradedSpace>, index: usize) -> Result<Self> {
        Self::from_terms(space, [(index, Scalar::one())])
    }

    pub fn from_terms(
        space: &Arc<GradedSpace>,
        terms: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<Self> {
        let mut coeffs = Coeffs::new();
        for (i, c) in terms {
            if i >= space.dim() {
                return Err(Error::input(format!(
                    "basis index {i} out of range for dimension {}",
                    space.dim()
                )));
            }
            add_coeff(&mut coeffs, i, c);
        }
        Ok(GradedVector {
            space: space.clone(),
            coeffs,
        })
    }

    pub(crate) fn from_coeffs(space: &Arc<GradedSpace>, coeffs: Coeffs) -> Self {
        GradedVector {
            space: space.clone(),
            coeffs,
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> Scalar {
        self.coeffs
            .get(&index)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero homogeneous vector.
    pub fn degree(&self) -> Option<Degree> {
        let degrees: BTreeSet<Degree> = self.coeffs.keys().map(|&i| self.space.degree(i)).collect();
        (degrees.len() == 1).then(|| *degrees.iter().next().unwrap())
    }

    /// Splits into homogeneous components keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<Degree, GradedVector> {
        let mut parts: BTreeMap<Degree, GradedVector> = BTreeMap::new();
        for (&i, c) in &self.coeffs {
            let part = parts
                .entry(self.space.degree(i))
                .or_insert_with(|| GradedVector::zero(&self.space));
            add_coeff(&mut part.coeffs, i, c.clone());
        }
        parts
    }

    pub fn scale(&self, c: &Scalar) -> GradedVector {
        let mut out = GradedVector::zero(&self.space);
        for (&i, v) in &self.coeffs {
            add_coeff(&mut out.coeffs, i, v * c);
        }
        out
    }

    pub fn add(&self, other: &GradedVector) -> Result<GradedVector> {
        if self.space != other.space {
            return Err(Error::input("vectors live in different spaces"));
        }
        let mut out = self.clone();
        add_signed(&mut out.coeffs, &other.coeffs, Sign::Plus);
        Ok(out)
    }
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms = self
            .coeffs
            .iter()
            .map(|(&i, c)| format!("{c}*{}", self.space.name(i)));
        write!(f, "{}", terms.format(" + "))
    }
}

/// Arguments fed to a multilinear map, each nonzero and homogeneous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgSequence {
    items: Vec<GradedVector>,
    degrees: Vec<Degree>,
}

impl ArgSequence {
    pub fn new(items: Vec<GradedVector>) -> Result<Self> {
        let mut degrees = Vec::with_capacity(items.len());
        if let Some(first) = items.first() {
            if items.iter().any(|v| v.space != first.space) {
                return Err(Error::input("arguments live in different spaces"));
            }
        }
        for (i, v) in items.iter().enumerate() {
            let d = v.degree().ok_or_else(|| {
                Error::input(format!("argument {} is zero or not homogeneous", i + 1))
            })?;
            degrees.push(d);
        }
        Ok(ArgSequence { items, degrees })
    }

    /// Basis elements of `space`, one per index.
    pub fn from_basis(space: &Arc<GradedSpace>, tuple: &[usize]) -> Result<Self> {
        Self::new(
            tuple
                .iter()
                .map(|&i| GradedVector::basis(space, i))
                .collect::<Result<_>>()?,
        )
    }

    pub fn items(&self) -> &[GradedVector] {
        &self.items
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn rearranged(&self, sum: &FormalSum) -> Vec<(Sign, ArgSequence)> {
        sum.terms()
            .iter()
            .map(|t| {
                let items = t.order.iter().map(|&i| self.items[i].clone()).collect();
                let degrees = t.order.iter().map(|&i| self.degrees[i]).collect();
                (t.sign, ArgSequence { items, degrees })
            })
            .collect()
    }
}

/// A homogeneous multilinear map `V^{⊗k} → V` of internal degree `p`,
/// stored as a table from basis tuples to output vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMap {
    space: Arc<GradedSpace>,
    arity: usize,
    degree: Degree,
    entries: BTreeMap<Vec<usize>, Coeffs>,
}

impl MultiMap {
    pub fn zero(space: &Arc<GradedSpace>, arity: usize, degree: Degree) -> Result<Self> {
        if arity == 0 {
            return Err(Error::input("multilinear maps must have arity at least 1"));
        }
        Ok(MultiMap {
            space: space.clone(),
            arity,
            degree,
            entries: BTreeMap::new(),
        })
    }

    /// Materializes a map from its values on basis tuples. Tuples whose
    /// output degree is absent from the space are skipped.
    pub(crate) fn from_fn(
        space: &Arc<GradedSpace>,
        arity: usize,
        degree: Degree,
        mut value: impl FnMut(&[usize]) -> Result<Coeffs>,
    ) -> Result<Self> {
        let mut map = MultiMap::zero(space, arity, degree)?;
        for tuple in space.tuples(arity) {
            if !space.has_degree(degree + space.tuple_degree(&tuple)) {
                continue;
            }
            let out = value(&tuple)?;
            debug_assert!(out
                .keys()
                .all(|&j| space.degree(j) == degree + space.tuple_degree(&tuple)));
            if !out.is_empty() {
                map.entries.insert(tuple, out);
            }
        }
        Ok(map)
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Internal degree `p`.
    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn signature(&self) -> (usize, Degree) {
        (self.arity, self.degree)
    }

    /// Parity of the brace-algebra degree `p − k + 1`.
    pub fn brace_parity(&self) -> bool {
        is_odd(self.degree + self.arity as Degree + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], &Coeffs)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `coeff · e_output` to the value on `inputs`.
    pub fn add_entry(&mut self, inputs: &[usize], output: usize, coeff: Scalar) -> Result<()> {
        self.check_entry(inputs, output)?;
        let slot = self.entries.entry(inputs.to_vec()).or_default();
        add_coeff(slot, output, coeff);
        if slot.is_empty() {
            self.entries.remove(inputs);
        }
        Ok(())
    }

    /// Overwrites the coefficient of `e_output` on `inputs`.
    pub fn set_entry(&mut self, inputs: &[usize], output: usize, coeff: Scalar) -> Result<()> {
        self.check_entry(inputs, output)?;
        let slot = self.entries.entry(inputs.to_vec()).or_default();
        slot.remove(&output);
        add_coeff(slot, output, coeff);
        if slot.is_empty() {
            self.entries.remove(inputs);
        }
        Ok(())
    }

    fn check_entry(&self, inputs: &[usize], output: usize) -> Result<()> {
        let dim = self.space.dim();
        if inputs.len() != self.arity {
            return Err(Error::input(format!(
                "entry with {} inputs for a map of arity {}",
                inputs.len(),
                self.arity
            )));
        }
        if inputs.iter().chain([&output]).any(|&i| i >= dim) {
            return Err(Error::input(format!(
                "basis index out of range for dimension {dim}"
            )));
        }
        let expected = self.degree + self.space.tuple_degree(inputs);
        if self.space.degree(output) != expected {
            return Err(Error::input(format!(
                "output {} has degree {} but inputs ({}) force degree {expected}",
                self.space.name(output),
                self.space.degree(output),
                inputs.iter().map(|&i| self.space.name(i)).join(","),
            )));
        }
        Ok(())
    }

    /// Re-checks the homogeneity invariant on every stored entry.
    pub fn validate(&self) -> Result<()> {
        for (inputs, out) in &self.entries {
            if out.is_empty() || out.values().any(Zero::is_zero) {
                return Err(Error::input("stored zero coefficient"));
            }
            for &o in out.keys() {
                self.check_entry(inputs, o)?;
            }
        }
        Ok(())
    }

    pub(crate) fn value(&self, tuple: &[usize]) -> Option<&Coeffs> {
        self.entries.get(tuple)
    }

    /// Value on a basis tuple.
    pub fn get(&self, tuple: &[usize]) -> GradedVector {
        GradedVector::from_coeffs(&self.space, self.value(tuple).cloned().unwrap_or_default())
    }

    /// Multilinear extension of the table.
    pub fn eval(&self, args: &[GradedVector]) -> Result<GradedVector> {
        if args.len() != self.arity {
            return Err(Error::input(format!(
                "map of arity {} applied to {} arguments",
                self.arity,
                args.len()
            )));
        }
        if args.iter().any(|v| v.space != self.space) {
            return Err(Error::input("argument from a different space"));
        }
        let sparse: Vec<Vec<(usize, Scalar)>> = args
            .iter()
            .map(|v| v.coeffs.iter().map(|(&i, c)| (i, c.clone())).collect())
            .collect();
        Ok(GradedVector::from_coeffs(
            &self.space,
            self.eval_sparse(&sparse),
        ))
    }

    pub(crate) fn eval_sparse(&self, args: &[Vec<(usize, Scalar)>]) -> Coeffs {
        let mut out = Coeffs::new();
        if args.iter().any(Vec::is_empty) {
            return out;
        }
        let mut key = vec![0; args.len()];
        let mut cursor = vec![0; args.len()];
        loop {
            let mut coeff = Scalar::one();
            for (slot, &c) in cursor.iter().enumerate() {
                let (idx, ref v) = args[slot][c];
                key[slot] = idx;
                if !v.is_one() {
                    coeff *= v;
                }
            }
            if let Some(values) = self.entries.get(&key) {
                for (&o, v) in values {
                    add_coeff(&mut out, o, v * &coeff);
                }
            }
            // Odometer increment.
            let mut slot = args.len();
            loop {
                if slot == 0 {
                    return out;
                }
                slot -= 1;
                cursor[slot] += 1;
                if cursor[slot] < args[slot].len() {
                    break;
                }
                cursor[slot] = 0;
            }
        }
    }

    fn check_same_signature(&self, other: &MultiMap) -> Result<()> {
        if self.space != other.space || self.signature() != other.signature() {
            return Err(Error::input(format!(
                "cannot add a map of (arity, degree) = {:?} to one of {:?}",
                other.signature(),
                self.signature()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiMap) -> Result<MultiMap> {
        let mut out = self.clone();
        out.add_assign_signed(other, Sign::Plus)?;
        Ok(out)
    }

    pub(crate) fn add_assign_signed(&mut self, other: &MultiMap, sign: Sign) -> Result<()> {
        self.check_same_signature(other)?;
        for (k, v) in &other.entries {
            let slot = self.entries.entry(k.clone()).or_default();
            add_signed(slot, v, sign);
            if slot.is_empty() {
                self.entries.remove(k);
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> MultiMap {
        let mut out = MultiMap {
            space: self.space.clone(),
            arity: self.arity,
            degree: self.degree,
            entries: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.entries {
            out.entries
                .insert(k.clone(), v.iter().map(|(&i, x)| (i, x * c)).collect());
        }
        out
    }

    pub fn negate(&self) -> MultiMap {
        self.scale(&-Scalar::one())
    }

    /// Exact comparison; maps with different signatures are unequal.
    pub fn equals(&self, other: &MultiMap) -> bool {
        self == other
    }

    /// Some basis tuple on which the two maps differ.
    pub fn first_difference(&self, other: &MultiMap) -> Option<Vec<usize>> {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .find(|k| self.entries.get(*k) != other.entries.get(*k))
            .cloned()
    }
}

impl fmt::Display for MultiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[arity {}, degree {}]", self.arity, self.degree)?;
        for (k, v) in &self.entries {
            let args = k.iter().map(|&i| self.space.name(i)).join(",");
            write!(
                f,
                " ({args})->{}",
                GradedVector::from_coeffs(&self.space, v.clone())
            )?;
        }
        Ok(())
    }
}

fn check_block_shape(f: &MultiMap, gs: &[&MultiMap], slots: &InsertionPattern) -> Result<usize> {
    let n = gs.len();
    if slots.slots().len() != n + 1 {
        return Err(Error::input(format!(
            "{} inserted maps need {} slots, got {}",
            n,
            n + 1,
            slots.slots().len()
        )));
    }
    if f.arity != n + slots.total() {
        return Err(Error::input(format!(
            "outer map of arity {} cannot take {} maps and {} identity slots",
            f.arity,
            n,
            slots.total()
        )));
    }
    if gs.iter().any(|g| g.space != f.space) {
        return Err(Error::input("inserted map from a different space"));
    }
    Ok(gs.iter().map(|g| g.arity).sum::<usize>() + slots.total())
}

/// `f(1^{k_0} ⊗ g_1 ⊗ ⋯ ⊗ g_n ⊗ 1^{k_n})` on a basis tuple. A map of
/// degree `q` moving past an argument of degree `d` contributes `(−1)^{qd}`.
pub(crate) fn tensor_block_eval_basis(
    f: &MultiMap,
    gs: &[&MultiMap],
    slots: &[usize],
    tuple: &[usize],
) -> Coeffs {
    let space = &f.space;
    let mut args: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(f.arity);
    let mut pos = 0;
    let mut degree_before: Degree = 0;
    let mut odd = false;
    for (j, &k) in slots.iter().enumerate() {
        for &x in &tuple[pos..pos + k] {
            args.push(vec![(x, Scalar::one())]);
            degree_before += space.degree(x);
        }
        pos += k;
        if let Some(g) = gs.get(j) {
            let inputs = &tuple[pos..pos + g.arity];
            if is_odd(g.degree) && is_odd(degree_before) {
                odd = !odd;
            }
            let Some(out) = g.entries.get(inputs) else {
                return Coeffs::new();
            };
            args.push(out.iter().map(|(&i, c)| (i, c.clone())).collect());
            degree_before += space.tuple_degree(inputs);
            pos += g.arity;
        }
    }
    let mut out = f.eval_sparse(&args);
    if odd {
        for v in out.values_mut() {
            *v = -v.clone();
        }
    }
    out
}

/// Evaluates `f(1^{k_0} ⊗ g_1 ⊗ 1^{k_1} ⊗ ⋯ ⊗ g_n ⊗ 1^{k_n})` on `args`
/// under the Koszul convention.
pub fn tensor_block_eval(
    f: &MultiMap,
    gs: &[&MultiMap],
    slots: &InsertionPattern,
    args: &[GradedVector],
) -> Result<GradedVector> {
    let r = check_block_shape(f, gs, slots)?;
    if args.len() != r {
        return Err(Error::input(format!(
            "block evaluation needs {r} arguments, got {}",
            args.len()
        )));
    }
    if args.iter().any(|v| v.space != f.space) {
        return Err(Error::input("argument from a different space"));
    }
    let mut out = Coeffs::new();
    let supports: Vec<Vec<(usize, Scalar)>> = args
        .iter()
        .map(|v| v.coeffs.iter().map(|(&i, c)| (i, c.clone())).collect())
        .collect();
    for choice in crate::graded::cartesian(&supports) {
        let tuple: Vec<usize> = choice.iter().map(|(i, _)| *i).collect();
        let coeff: Scalar = choice.iter().map(|(_, c)| c.clone()).product();
        for (o, v) in tensor_block_eval_basis(f, gs, slots.slots(), &tuple) {
            add_coeff(&mut out, o, v * &coeff);
        }
    }
    Ok(GradedVector::from_coeffs(&f.space, out))
}

/// `as(f)(v_1, …, v_k) = Σ_{σ ∈ S_k} χ(σ) f(v_σ(1), …, v_σ(k))`.
///
/// The sum is enumerated on each sorted basis tuple; the remaining tuples
/// are rearrangements of a sorted one and pick up the corresponding χ.
pub fn antisymmetrize(f: &MultiMap, caps: &Caps) -> Result<MultiMap> {
    let k = f.arity;
    let perms = enumerate_permutations(k, caps)?;
    let space = &f.space;
    let mut out = MultiMap::zero(space, k, f.degree)?;
    for sorted in (0..space.dim()).combinations_with_replacement(k) {
        if !space.has_degree(f.degree + space.tuple_degree(&sorted)) {
            continue;
        }
        let degrees = space.degrees_of(&sorted);
        let mut value = Coeffs::new();
        for sigma in &perms {
            if let Some(v) = f.entries.get(&sigma.permute(&sorted)) {
                add_signed(
                    &mut value,
                    v,
                    SignRule::Antisymmetric.sign(sigma, &degrees)?,
                );
            }
        }
        if value.is_empty() {
            continue;
        }
        for tau in &perms {
            let tuple = tau.permute(&sorted);
            if out.entries.contains_key(&tuple) {
                continue;
            }
            let mut signed = Coeffs::new();
            add_signed(
                &mut signed,
                &value,
                SignRule::Antisymmetric.sign(tau, &degrees)?,
            );
            out.entries.insert(tuple, signed);
        }
    }
    Ok(out)
}

/// True iff `f(…, x_{i+1}, x_i, …) = χ(τ_i) f(…, x_i, x_{i+1}, …)` for every
/// adjacent transposition and every basis tuple.
pub fn is_antisymmetric(f: &MultiMap) -> bool {
    let space = &f.space;
    for (tuple, value) in &f.entries {
        for i in 0..f.arity.saturating_sub(1) {
            let mut swapped = tuple.clone();
            swapped.swap(i, i + 1);
            let both_odd = is_odd(space.degree(tuple[i])) && is_odd(space.degree(tuple[i + 1]));
            let chi = Sign::Minus * Sign::from_parity(both_odd);
            let mut expected = Coeffs::new();
            add_signed(&mut expected, value, chi);
            if f.entries.get(&swapped) != Some(&expected) {
                return false;
            }
        }
    }
    true
}

/// Θ_m: all χ-signed permutations of the last `m` arguments.
pub fn theta_expand(args: &ArgSequence, m: usize, caps: &Caps) -> Result<Vec<(Sign, ArgSequence)>> {
    let sum = FormalSum::identity(args.len()).permute_tail(
        m,
        args.degrees(),
        SignRule::Antisymmetric,
        caps,
    )?;
    Ok(args.rearranged(&sum))
}

/// Ψ_n: all χ-signed permutations of the first `n` arguments.
pub fn psi_expand(args: &ArgSequence, n: usize, caps: &Caps) -> Result<Vec<(Sign, ArgSequence)>> {
    let sum = FormalSum::identity(args.len()).permute_head(
        n,
        args.degrees(),
        SignRule::Antisymmetric,
        caps,
    )?;
    Ok(args.rearranged(&sum))
}

/// Φ_{nm}: every interleaving of the first `n` arguments, in order, among
/// the remaining `m`, signed by χ of the interleaving.
pub fn phi_expand(args: &ArgSequence, n: usize) -> Result<Vec<(Sign, ArgSequence)>> {
    let sum =
        FormalSum::identity(args.len()).interleave(n, args.degrees(), SignRule::Antisymmetric)?;
    Ok(args.rearranged(&sum))
}

/// Both sides of `as(f) = f ∘ Φ_{nm} ∘ Ψ_n ∘ Θ_m` for the split `n + m = k`.
pub fn factorization_sides(f: &MultiMap, n: usize, caps: &Caps) -> Result<(MultiMap, MultiMap)> {
    let k = f.arity;
    if n > k {
        return Err(Error::input(format!("split n = {n} exceeds arity {k}")));
    }
    let m = k - n;
    let space = f.space.clone();
    let composite = MultiMap::from_fn(&space, k, f.degree, |tuple| {
        let degrees = space.degrees_of(tuple);
        let sum = FormalSum::identity(k)
            .permute_tail(m, &degrees, SignRule::Antisymmetric, caps)?
            .permute_head(n, &degrees, SignRule::Antisymmetric, caps)?
            .interleave(n, &degrees, SignRule::Antisymmetric)?;
        let mut out = Coeffs::new();
        for term in sum.terms() {
            let args: Vec<usize> = term.order.iter().map(|&i| tuple[i]).collect();
            if let Some(v) = f.entries.get(&args) {
                add_signed(&mut out, v, term.sign);
            }
        }
        Ok(out)
    })?;
    Ok((composite, antisymmetrize(f, caps)?))
}
