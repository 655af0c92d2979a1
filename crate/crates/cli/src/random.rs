//! Deterministic random instances.
//!
//! Each case draws from its own SplitMix64 stream seeded by
//! `(seed, stream, case)`, so a case can be replayed on its own.

use std::ops::RangeInclusive;
use std::sync::Arc;

use brace_algebra::graded::{Degree, Permutation};
use brace_algebra::homotopy::{Flavor, StructureFamily};
use brace_algebra::multimap::{antisymmetrize, GradedSpace, GradedVector, MultiMap, Scalar};
use brace_algebra::{Caps, Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

/// Size limits for generated instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub max_dim: usize,
    pub degrees: RangeInclusive<Degree>,
    pub max_arity: usize,
    pub max_n: usize,
    pub max_r: usize,
    /// Largest arity of any map an identity evaluates.
    pub max_arity_out: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_dim: 3,
            degrees: -2..=2,
            max_arity: 3,
            max_n: 2,
            max_r: 3,
            max_arity_out: 5,
        }
    }
}

pub const MAX_DIM: usize = 6;
pub const MAX_ARITY_OUT: usize = 7;
pub const MAX_ABS_DEGREE: Degree = 64;

impl GenConfig {
    pub fn validate(&self, caps: &Caps) -> Result<()> {
        let fail = |msg: String| Err(Error::Input(msg));
        if self.max_dim == 0 || self.max_dim > MAX_DIM {
            return fail(format!("--max-dim must be in 1..={MAX_DIM}"));
        }
        if self.max_arity == 0 || self.max_arity > self.max_arity_out {
            return fail("--max-arity must be in 1..=--max-arity-out".into());
        }
        if self.max_arity_out > MAX_ARITY_OUT {
            return fail(format!("--max-arity-out must be at most {MAX_ARITY_OUT}"));
        }
        if self.degrees.is_empty() {
            return fail("empty degree range".into());
        }
        if self.degrees.start().abs() > MAX_ABS_DEGREE || self.degrees.end().abs() > MAX_ABS_DEGREE
        {
            return fail(format!("degrees must lie within ±{MAX_ABS_DEGREE}"));
        }
        caps.check_permutations(self.max_n + self.max_r)?;
        caps.check_permutations(self.max_arity_out)?;
        caps.check_unshuffles(self.max_arity_out)?;
        Ok(())
    }
}

/// `lo..hi` or `lo..=hi`, both inclusive.
pub fn parse_degree_range(text: &str) -> Result<RangeInclusive<Degree>> {
    let bad = || Error::Parse(format!("invalid degree range {text:?}, expected lo..hi"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: Degree = lo.trim().parse().map_err(|_| bad())?;
    let hi: Degree = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn mix(seed: u64, stream: u64, case: u64) -> u64 {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let a: u64 = rng.gen();
    let mut rng = SplitMix64::seed_from_u64(a ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let b: u64 = rng.gen();
    b ^ case.wrapping_mul(0xbf58_476d_1ce4_e5b9)
}

fn int(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

pub struct Gen<'c> {
    rng: SplitMix64,
    cfg: &'c GenConfig,
}

impl<'c> Gen<'c> {
    pub fn new(cfg: &'c GenConfig, seed: u64, stream: u64, case: u64) -> Self {
        Gen {
            rng: SplitMix64::seed_from_u64(mix(seed, stream, case)),
            cfg,
        }
    }

    pub fn config(&self) -> &GenConfig {
        self.cfg
    }

    pub fn range(&mut self, range: RangeInclusive<usize>) -> usize {
        self.rng.gen_range(range)
    }

    pub fn int_range(&mut self, range: RangeInclusive<i64>) -> i64 {
        self.rng.gen_range(range)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    pub fn degree(&mut self) -> Degree {
        self.rng.gen_range(self.cfg.degrees.clone())
    }

    pub fn permutation(&mut self, n: usize) -> Permutation {
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(&mut self.rng);
        Permutation::new(images).expect("shuffled identity")
    }

    pub fn space_of_dim(&mut self, dim: usize) -> Arc<GradedSpace> {
        let pairs: Vec<(String, Degree)> =
            (0..dim).map(|i| (format!("v{i}"), self.degree())).collect();
        GradedSpace::from_pairs(pairs).expect("generated names are distinct")
    }

    pub fn space(&mut self) -> Arc<GradedSpace> {
        let dim = self.range(1..=self.cfg.max_dim);
        self.space_of_dim(dim)
    }

    /// Picks `p` among degrees that admit an entry, then fills each
    /// admissible slot with probability 1/2 from `{−2, −1, 1, 2}`.
    pub fn map(&mut self, space: &Arc<GradedSpace>, arity: usize) -> MultiMap {
        let mut reachable: Vec<Degree> = space
            .tuples(arity)
            .flat_map(|t| {
                let td = space.tuple_degree(&t);
                (0..space.dim()).map(move |o| space.degree(o) - td)
            })
            .collect();
        reachable.sort_unstable();
        reachable.dedup();
        let p = *reachable
            .choose(&mut self.rng)
            .expect("spaces are non-empty");
        let mut f = MultiMap::zero(space, arity, p).expect("arity is positive");
        let slots: Vec<(Vec<usize>, usize)> = space
            .tuples(arity)
            .flat_map(|t| {
                let target = p + space.tuple_degree(&t);
                (0..space.dim())
                    .filter(move |&o| space.degree(o) == target)
                    .map(move |o| (t.clone(), o))
            })
            .collect();
        for (tuple, out) in &slots {
            if self.coin() {
                let c = *[-2, -1, 1, 2].choose(&mut self.rng).unwrap();
                f.add_entry(tuple, *out, int(c)).expect("admissible slot");
            }
        }
        if f.is_zero() {
            let (tuple, out) = slots.choose(&mut self.rng).expect("p was reachable");
            f.add_entry(tuple, *out, int(1)).expect("admissible slot");
        }
        f
    }

    /// `as` of a random map, retried up to eight times while zero.
    pub fn antisymmetric_map(
        &mut self,
        space: &Arc<GradedSpace>,
        arity: usize,
        caps: &Caps,
    ) -> Result<MultiMap> {
        let mut last = None;
        for _ in 0..8 {
            let a = antisymmetrize(&self.map(space, arity), caps)?;
            if !a.is_zero() {
                return Ok(a);
            }
            last = Some(a);
        }
        Ok(last.expect("at least one attempt"))
    }

    /// An A∞ family from a small catalogue, moved by a random
    /// degree-preserving change of basis.
    pub fn a_infinity_family(&mut self) -> StructureFamily {
        let d = self.degree();
        let (space, components) = match self.range(0..=7) {
            0 => {
                let s = GradedSpace::from_pairs([("e", 0)]).unwrap();
                let mu = table(&s, 2, &[(&[0, 0], 0)]);
                (s, vec![mu])
            }
            1 => {
                let s = GradedSpace::from_pairs([("a", 0), ("b", 0)]).unwrap();
                let mu = table(&s, 2, &[(&[0, 0], 0), (&[0, 1], 1)]);
                (s, vec![mu])
            }
            2 => {
                let s = GradedSpace::from_pairs([("e11", 0), ("e12", 0), ("e22", 0)]).unwrap();
                let mu = table(
                    &s,
                    2,
                    &[(&[0, 0], 0), (&[0, 1], 1), (&[1, 2], 1), (&[2, 2], 2)],
                );
                (s, vec![mu])
            }
            3 => {
                let s = GradedSpace::from_pairs([("1", 0), ("t", d)]).unwrap();
                let mu = table(&s, 2, &[(&[0, 0], 0), (&[0, 1], 1), (&[1, 0], 1)]);
                (s, vec![mu])
            }
            4 => {
                let s = GradedSpace::from_pairs([("1", 0), ("t", d), ("t2", 2 * d)]).unwrap();
                let mu = table(
                    &s,
                    2,
                    &[
                        (&[0, 0], 0),
                        (&[0, 1], 1),
                        (&[1, 0], 1),
                        (&[0, 2], 2),
                        (&[2, 0], 2),
                        (&[1, 1], 2),
                    ],
                );
                (s, vec![mu])
            }
            5 => {
                let s = GradedSpace::from_pairs([("x", d), ("y", d - 1)]).unwrap();
                let d1 = table(&s, 1, &[(&[0], 1)]);
                (s, vec![d1])
            }
            6 => {
                let s = GradedSpace::from_pairs([("u", 0), ("x", d), ("y", d - 1)]).unwrap();
                let d1 = table(&s, 1, &[(&[1], 2)]);
                let mu = table(
                    &s,
                    2,
                    &[
                        (&[0, 0], 0),
                        (&[0, 1], 1),
                        (&[1, 0], 1),
                        (&[0, 2], 2),
                        (&[2, 0], 2),
                    ],
                );
                (s, vec![d1, mu])
            }
            _ => {
                let s = GradedSpace::from_pairs([("x", d), ("y", 3 * d + 1)]).unwrap();
                let mu3 = table(&s, 3, &[(&[0, 0, 0], 1)]);
                (s, vec![mu3])
            }
        };
        let components = self.transport(&space, components);
        StructureFamily::new(&space, Flavor::AInfinity, components)
            .expect("catalogue families are valid")
    }

    /// An L∞ family: a classical Lie algebra, a square-zero differential,
    /// or the antisymmetrization of an A∞ family.
    pub fn l_infinity_family(&mut self, caps: &Caps) -> Result<StructureFamily> {
        let pick = self.range(0..=3);
        let (space, components) = match pick {
            0 => {
                let s = GradedSpace::from_pairs([("x", 0), ("y", 0), ("z", 0)]).unwrap();
                (
                    s.clone(),
                    vec![antisymmetrize(&table(&s, 2, &[(&[0, 1], 2)]), caps)?],
                )
            }
            1 => {
                let s = GradedSpace::from_pairs([("e", 0), ("f", 0), ("h", 0)]).unwrap();
                let mut half = MultiMap::zero(&s, 2, 0)?;
                half.add_entry(&[2, 0], 0, int(2))?;
                half.add_entry(&[2, 1], 1, int(-2))?;
                half.add_entry(&[0, 1], 2, int(1))?;
                (s, vec![antisymmetrize(&half, caps)?])
            }
            2 => {
                let d = self.degree();
                let s = GradedSpace::from_pairs([("a", d - 1), ("b", d), ("c", d + 1)]).unwrap();
                (s.clone(), vec![table(&s, 1, &[(&[2], 1)])])
            }
            _ => {
                let a = self.a_infinity_family();
                let comps = a
                    .components()
                    .map(|m| antisymmetrize(m, caps))
                    .collect::<Result<Vec<_>>>()?;
                return StructureFamily::new(a.space(), Flavor::LInfinity, comps);
            }
        };
        let components = self.transport(&space, components);
        StructureFamily::new(&space, Flavor::LInfinity, components)
    }

    /// Conjugates every map by a random product of elementary
    /// degree-preserving basis changes.
    fn transport(&mut self, space: &Arc<GradedSpace>, maps: Vec<MultiMap>) -> Vec<MultiMap> {
        let dim = space.dim();
        let mut phi = identity(dim);
        let mut phi_inv = identity(dim);
        for _ in 0..3 {
            let i = self.range(0..=dim - 1);
            let j = self.range(0..=dim - 1);
            if i != j && space.degree(i) == space.degree(j) {
                // Shear e_j ↦ e_j + c e_i.
                let c = int(*[-1, 1, 2].choose(&mut self.rng).unwrap());
                let mut e = identity(dim);
                e[i][j] = c.clone();
                let mut e_inv = identity(dim);
                e_inv[i][j] = -c;
                phi = multiply(&phi, &e);
                phi_inv = multiply(&e_inv, &phi_inv);
            } else {
                let s = [int(-1), int(2), Scalar::new(1.into(), 2.into())]
                    .choose(&mut self.rng)
                    .unwrap()
                    .clone();
                let mut e = identity(dim);
                e[i][i] = s.clone();
                let mut e_inv = identity(dim);
                e_inv[i][i] = s.recip();
                phi = multiply(&phi, &e);
                phi_inv = multiply(&e_inv, &phi_inv);
            }
        }
        let columns: Vec<GradedVector> = (0..dim)
            .map(|c| {
                GradedVector::from_terms(space, (0..dim).map(|r| (r, phi[r][c].clone()))).unwrap()
            })
            .collect();
        maps.into_iter()
            .map(|m| {
                let mut out = MultiMap::zero(space, m.arity(), m.degree()).unwrap();
                for tuple in space.tuples(m.arity()) {
                    let args: Vec<GradedVector> =
                        tuple.iter().map(|&t| columns[t].clone()).collect();
                    let value = m.eval(&args).unwrap();
                    for (r, row) in phi_inv.iter().enumerate() {
                        let c: Scalar = value.coeffs().iter().map(|(&j, v)| &row[j] * v).sum();
                        if c != int(0) {
                            out.add_entry(&tuple, r, c).unwrap();
                        }
                    }
                }
                out
            })
            .collect()
    }
}

fn table(space: &Arc<GradedSpace>, arity: usize, rows: &[(&[usize], usize)]) -> MultiMap {
    let degree = arity as Degree - 2;
    let mut m = MultiMap::zero(space, arity, degree).unwrap();
    for (ins, out) in rows {
        m.add_entry(ins, *out, int(1)).unwrap();
    }
    m
}

type Matrix = Vec<Vec<Scalar>>;

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| int((i == j) as i64)).collect())
        .collect()
}

fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}
