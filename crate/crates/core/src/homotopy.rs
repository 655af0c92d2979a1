//! A∞ and L∞ structures as families of maps `μ_k` of arity `k` and
//! degree `k − 2`, checked arity by arity.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::brace::brace_unchecked;
use crate::error::{Error, Result};
use crate::multimap::{antisymmetrize, is_antisymmetric, GradedSpace, MultiMap};
use crate::symbrace::symbrace_eval_with;
use crate::Settings;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    AInfinity,
    LInfinity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFamily {
    space: Arc<GradedSpace>,
    flavor: Flavor,
    components: BTreeMap<usize, MultiMap>,
}

impl StructureFamily {
    /// Absent arities are zero.
    pub fn new(
        space: &Arc<GradedSpace>,
        flavor: Flavor,
        components: Vec<MultiMap>,
    ) -> Result<Self> {
        let mut by_arity = BTreeMap::new();
        for m in components {
            let k = m.arity();
            if m.space() != space {
                return Err(Error::input(format!(
                    "component of arity {k} lives on a different space"
                )));
            }
            if m.degree() != k as i64 - 2 {
                return Err(Error::input(format!(
                    "component of arity {k} must have degree {}, found {}",
                    k as i64 - 2,
                    m.degree()
                )));
            }
            if flavor == Flavor::LInfinity && !is_antisymmetric(&m) {
                return Err(Error::input(format!(
                    "component of arity {k} is not antisymmetric"
                )));
            }
            if by_arity.insert(k, m).is_some() {
                return Err(Error::input(format!("two components of arity {k}")));
            }
        }
        Ok(StructureFamily {
            space: space.clone(),
            flavor,
            components: by_arity,
        })
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn component(&self, arity: usize) -> Option<&MultiMap> {
        self.components.get(&arity)
    }

    pub fn components(&self) -> impl Iterator<Item = &MultiMap> {
        self.components.values()
    }
}

/// `Σ_{i+j−1=r} μ_i{μ_j}` (or `l_i⟨l_j⟩`) for each `r ≤ max_arity`.
pub fn residuals(
    s: &StructureFamily,
    max_arity: usize,
    settings: &Settings,
) -> Result<Vec<(usize, MultiMap)>> {
    let mut out = Vec::with_capacity(max_arity);
    for r in 1..=max_arity {
        let mut total = MultiMap::zero(&s.space, r, r as i64 - 3)?;
        for i in 1..=r {
            let j = r + 1 - i;
            let (Some(outer), Some(inner)) = (s.component(i), s.component(j)) else {
                continue;
            };
            let term = match s.flavor {
                Flavor::AInfinity => brace_unchecked(outer, &[inner], settings.beta)?,
                Flavor::LInfinity => symbrace_eval_with(outer, &[inner], settings)?,
            };
            total = total.add(&term)?;
        }
        out.push((r, total));
    }
    Ok(out)
}

/// First output arity whose residual is nonzero.
pub fn first_failure(
    s: &StructureFamily,
    max_arity: usize,
    settings: &Settings,
) -> Result<Option<(usize, MultiMap)>> {
    Ok(residuals(s, max_arity, settings)?
        .into_iter()
        .find(|(_, m)| !m.is_zero()))
}

fn require(s: &StructureFamily, flavor: Flavor) -> Result<()> {
    if s.flavor != flavor {
        return Err(Error::input(format!(
            "expected a {flavor:?} family, found {:?}",
            s.flavor
        )));
    }
    Ok(())
}

/// `μ{μ} = 0` through output arity `max_arity`.
pub fn a_infinity_check(s: &StructureFamily, max_arity: usize) -> Result<bool> {
    a_infinity_check_with(s, max_arity, &Settings::default())
}

pub fn a_infinity_check_with(
    s: &StructureFamily,
    max_arity: usize,
    settings: &Settings,
) -> Result<bool> {
    require(s, Flavor::AInfinity)?;
    Ok(first_failure(s, max_arity, settings)?.is_none())
}

/// `l⟨l⟩ = 0` through output arity `max_arity`.
pub fn l_infinity_check(s: &StructureFamily, max_arity: usize) -> Result<bool> {
    l_infinity_check_with(s, max_arity, &Settings::default())
}

pub fn l_infinity_check_with(
    s: &StructureFamily,
    max_arity: usize,
    settings: &Settings,
) -> Result<bool> {
    require(s, Flavor::LInfinity)?;
    Ok(first_failure(s, max_arity, settings)?.is_none())
}

/// `l_k = as(μ_k)` componentwise.
pub fn antisymmetrize_structure(
    s: &StructureFamily,
    settings: &Settings,
) -> Result<StructureFamily> {
    require(s, Flavor::AInfinity)?;
    let components = s
        .components()
        .map(|m| antisymmetrize(m, &settings.caps))
        .collect::<Result<Vec<_>>>()?;
    StructureFamily::new(&s.space, Flavor::LInfinity, components)
}

/// For an A∞ family, whether `as(μ)` is L∞. A family that is not A∞ is an
/// input error.
pub fn corollary_check(s: &StructureFamily, max_arity: usize) -> Result<bool> {
    corollary_check_with(s, max_arity, &Settings::default())
}

pub fn corollary_check_with(
    s: &StructureFamily,
    max_arity: usize,
    settings: &Settings,
) -> Result<bool> {
    if !a_infinity_check_with(s, max_arity, settings)? {
        return Err(Error::input(format!(
            "family is not A-infinity through arity {max_arity}"
        )));
    }
    l_infinity_check_with(&antisymmetrize_structure(s, settings)?, max_arity, settings)
}
