use std::sync::Arc;

use brace_algebra::brace::{brace_axiom_sides, split_symmetrization_sides};
use brace_algebra::graded::Degree;
use brace_algebra::multimap::{antisymmetrize, GradedSpace, MultiMap, Scalar};
use brace_algebra::symbrace::{
    graded_symmetry_check, symbrace_axiom_sides, intertwining_sides, BraceFlavor,
};
use brace_algebra::{BetaConvention, Caps, Settings};
use proptest::prelude::*;

fn space_strategy() -> impl Strategy<Value = Arc<GradedSpace>> {
    prop::collection::vec(-2i64..=2, 1..=3).prop_map(|degrees| {
        GradedSpace::from_pairs(
            degrees
                .iter()
                .enumerate()
                .map(|(i, &d)| (format!("v{i}"), d)),
        )
        .unwrap()
    })
}

/// Fills degree-consistent entries with coefficients in {−2, −1, 1, 2}.
fn build(space: &Arc<GradedSpace>, arity: usize, degree: Degree, bits: &[u8]) -> MultiMap {
    let mut f = MultiMap::zero(space, arity, degree).unwrap();
    let mut k = 0;
    for tuple in space.tuples(arity) {
        for out in 0..space.dim() {
            if space.degree(out) != degree + space.tuple_degree(&tuple) {
                continue;
            }
            let b = bits[k % bits.len()];
            k += 1;
            let c = [0, 0, 0, -2, -1, 1, 2, 0][(b % 8) as usize];
            if c != 0 {
                f.add_entry(&tuple, out, Scalar::from_integer(c.into()))
                    .unwrap();
            }
        }
    }
    f
}

/// Picks a degree for which the map has at least one admissible entry.
fn reachable_degree(space: &Arc<GradedSpace>, arity: usize, pick: u8) -> Degree {
    let mut options: Vec<Degree> = Vec::new();
    for tuple in space.tuples(arity) {
        for out in 0..space.dim() {
            options.push(space.degree(out) - space.tuple_degree(&tuple));
        }
    }
    options.sort();
    options.dedup();
    options[pick as usize % options.len()]
}

#[derive(Debug, Clone)]
struct MapSpec {
    arity: usize,
    degree_pick: u8,
    bits: Vec<u8>,
}

fn map_spec(max_arity: usize) -> impl Strategy<Value = MapSpec> {
    (
        1..=max_arity,
        any::<u8>(),
        prop::collection::vec(any::<u8>(), 1..40),
    )
        .prop_map(|(arity, degree_pick, bits)| MapSpec {
            arity,
            degree_pick,
            bits,
        })
}

fn realize(space: &Arc<GradedSpace>, spec: &MapSpec) -> MultiMap {
    let degree = reachable_degree(space, spec.arity, spec.degree_pick);
    build(space, spec.arity, degree, &spec.bits)
}

fn realize_as(space: &Arc<GradedSpace>, spec: &MapSpec) -> MultiMap {
    antisymmetrize(&realize(space, spec), &Caps::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn brace_axiom_holds(
        space in space_strategy(),
        x in map_spec(3),
        xs in prop::collection::vec(map_spec(3), 0..=2),
        ys in prop::collection::vec(map_spec(2), 0..=3),
    ) {
        let x = realize(&space, &x);
        let xs: Vec<MultiMap> = xs.iter().map(|s| realize(&space, s)).collect();
        let ys: Vec<MultiMap> = ys.iter().map(|s| realize(&space, s)).collect();
        prop_assume!(xs.len() <= x.arity());
        let inner_arity = xs.iter().map(|m| m.arity()).sum::<usize>() + x.arity() - xs.len();
        prop_assume!(ys.len() <= inner_arity);
        let c = brace_axiom_sides(&x, &xs, &ys, &Settings::default()).unwrap();
        prop_assert!(c.holds(), "lhs {} rhs {}", c.lhs, c.rhs);
    }

    #[test]
    fn unshuffle_brace_axiom_holds(
        space in space_strategy(),
        f in map_spec(3),
        gs in prop::collection::vec(map_spec(2), 0..=2),
        xs in prop::collection::vec(map_spec(2), 0..=2),
    ) {
        let f = realize_as(&space, &f);
        let gs: Vec<MultiMap> = gs.iter().map(|s| realize_as(&space, s)).collect();
        let xs: Vec<MultiMap> = xs.iter().map(|s| realize_as(&space, s)).collect();
        prop_assume!(gs.len() <= f.arity());
        let inner_arity = gs.iter().map(|m| m.arity()).sum::<usize>() + f.arity() - gs.len();
        prop_assume!(xs.len() <= inner_arity);
        let c = symbrace_axiom_sides(&f, &gs, &xs, BraceFlavor::Unshuffle, &Settings::default()).unwrap();
        prop_assert!(c.holds(), "lhs {} rhs {}", c.lhs, c.rhs);
    }

    #[test]
    fn symmetrized_axiom_holds(
        space in space_strategy(),
        f in map_spec(3),
        gs in prop::collection::vec(map_spec(2), 0..=2),
        xs in prop::collection::vec(map_spec(2), 0..=2),
    ) {
        let f = realize(&space, &f);
        let gs: Vec<MultiMap> = gs.iter().map(|s| realize(&space, s)).collect();
        let xs: Vec<MultiMap> = xs.iter().map(|s| realize(&space, s)).collect();
        prop_assume!(gs.len() <= f.arity());
        let inner_arity = gs.iter().map(|m| m.arity()).sum::<usize>() + f.arity() - gs.len();
        prop_assume!(xs.len() <= inner_arity);
        let c = symbrace_axiom_sides(&f, &gs, &xs, BraceFlavor::Symmetrized, &Settings::default()).unwrap();
        prop_assert!(c.holds(), "lhs {} rhs {}", c.lhs, c.rhs);
    }

    #[test]
    fn both_symmetric_braces_are_graded_symmetric(
        space in space_strategy(),
        f in map_spec(3),
        gs in prop::collection::vec(map_spec(2), 0..=3),
    ) {
        let plain = realize(&space, &f);
        let gs_plain: Vec<MultiMap> = gs.iter().map(|s| realize(&space, s)).collect();
        prop_assume!(gs.len() <= plain.arity());
        let settings = Settings::default();
        prop_assert!(graded_symmetry_check(&plain, &gs_plain, BraceFlavor::Symmetrized, &settings).unwrap());
        let anti = realize_as(&space, &f);
        let gs_anti: Vec<MultiMap> = gs.iter().map(|s| realize_as(&space, s)).collect();
        prop_assert!(graded_symmetry_check(&anti, &gs_anti, BraceFlavor::Unshuffle, &settings).unwrap());
    }

    #[test]
    fn antisymmetrization_intertwines_braces(
        space in space_strategy(),
        f in map_spec(3),
        gs in prop::collection::vec(map_spec(3), 0..=2),
    ) {
        let f = realize(&space, &f);
        let gs: Vec<MultiMap> = gs.iter().map(|s| realize(&space, s)).collect();
        prop_assume!(gs.len() <= f.arity());
        let c = intertwining_sides(&f, &gs, &Settings::default()).unwrap();
        prop_assert!(c.holds(), "lhs {} rhs {}", c.lhs, c.rhs);
    }

    #[test]
    fn tilde_decomposition_matches_direct_sum(
        space in space_strategy(),
        f in map_spec(4),
        args in prop::collection::vec(map_spec(2), 0..=4),
        split in any::<prop::sample::Index>(),
    ) {
        let f = realize(&space, &f);
        let args: Vec<MultiMap> = args.iter().map(|s| realize(&space, s)).collect();
        prop_assume!(args.len() <= f.arity());
        let n = split.index(args.len() + 1);
        let c = split_symmetrization_sides(&f, n, &args, &Settings::default()).unwrap();
        prop_assert!(c.holds());
    }
}

#[test]
fn omitting_the_leading_slot_breaks_the_axiom() {
    let space = GradedSpace::from_pairs([("e", 0)]).unwrap();
    let mut mu = MultiMap::zero(&space, 2, 0).unwrap();
    mu.add_entry(&[0, 0], 0, Scalar::from_integer(1.into()))
        .unwrap();
    let omitted = Settings {
        beta: BetaConvention::OmitLeadingSlot,
        ..Settings::default()
    };
    let xs = [mu.clone()];
    let ys = [mu.clone(), mu.clone()];
    assert!(brace_axiom_sides(&mu, &xs, &ys, &Settings::default())
        .unwrap()
        .holds());
    assert!(!brace_axiom_sides(&mu, &xs, &ys, &omitted).unwrap().holds());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetrization_intertwines_two_insertions(space in space_strategy(), f in map_spec(3), g1 in map_spec(3), g2 in map_spec(3)) {
        let f = realize(&space, &f);
        prop_assume!(f.arity() >= 2);
        let gs = vec![realize(&space, &g1), realize(&space, &g2)];
        let c = intertwining_sides(&f, &gs, &Settings::default()).unwrap();
        prop_assert!(c.holds());
    }
}
