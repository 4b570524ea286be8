//! Randomized and exhaustive property checks across the modules.

mod common;

use std::collections::HashSet;

use hopf_nilring::abelian::{enumerate_subgroups, isomorphism_type, subgroup_generated};
use hopf_nilring::correspondence::{conjugate_alpha, theorem32_check};
use hopf_nilring::holomorph::{
    enumerate_regular_subgroups, holomorph_elements, is_regular, is_regular_by_fixed_points,
    regular_subgroup_from_ring, ring_from_regular_subgroup, tau,
};
use hopf_nilring::nilring::{
    cyclic_structure, enumerate_structures, ideals, nilpotency_index, primitive_structure, validate,
};
use hopf_nilring::{AffineMap, Caps, Context, Elem, Error, GroupSpec, RingStructure};
use proptest::prelude::*;

const CAP: u64 = 10_000;

fn spec_strategy(max_order: u64) -> impl Strategy<Value = GroupSpec> {
    (
        prop::sample::select(vec![2u64, 3, 5, 7]),
        prop::collection::vec(1u32..=4, 1..=4),
    )
        .prop_filter_map("order too large", move |(p, mut exps)| {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            let spec = GroupSpec::new(p, exps).ok()?;
            (spec.order() <= max_order).then_some(spec)
        })
}

fn elem_in(spec: &GroupSpec) -> impl Strategy<Value = Elem> {
    spec.moduli()
        .iter()
        .map(|&m| 0..m)
        .collect::<Vec<_>>()
        .prop_map(Elem)
}

fn spec_and_elems(max_order: u64, k: usize) -> impl Strategy<Value = (GroupSpec, Vec<Elem>)> {
    spec_strategy(max_order).prop_flat_map(move |s| {
        let e = prop::collection::vec(elem_in(&s), k);
        (Just(s), e)
    })
}

/// A primitive or cyclic-family structure with room for random elements.
fn structure_strategy() -> impl Strategy<Value = RingStructure> {
    prop_oneof![
        (prop::sample::select(vec![2u64, 3, 5]), 2u32..=5)
            .prop_filter("order", |(p, n)| p.pow(*n) <= 3125)
            .prop_map(|(p, n)| primitive_structure(p, n).unwrap()),
        (prop::sample::select(vec![3u64, 5, 7]), 2u32..=6)
            .prop_filter("order", |(p, n)| p.pow(*n) <= 20_000)
            .prop_flat_map(|(p, n)| (Just(p), Just(n), 0..p.pow(n - 1)))
            .prop_map(|(p, n, d)| cyclic_structure(p, n, d).unwrap()),
    ]
}

fn structure_and_elems(k: usize) -> impl Strategy<Value = (RingStructure, Vec<Elem>)> {
    structure_strategy().prop_flat_map(move |a| {
        let e = prop::collection::vec(elem_in(a.spec()), k);
        (Just(a), e)
    })
}

/// Three elements of one holomorph, drawn from the full element list.
fn affine_triple() -> impl Strategy<Value = (AffineMap, AffineMap, AffineMap)> {
    let specs = vec![
        GroupSpec::elementary(2, 2).unwrap(),
        GroupSpec::new(2, vec![2, 1]).unwrap(),
        GroupSpec::elementary(2, 3).unwrap(),
        GroupSpec::elementary(3, 2).unwrap(),
        GroupSpec::cyclic(3, 3).unwrap(),
    ];
    prop::sample::select(specs).prop_flat_map(|s| {
        let hol = holomorph_elements(&s, &Caps::default()).unwrap();
        (
            prop::sample::select(hol.clone()),
            prop::sample::select(hol.clone()),
            prop::sample::select(hol),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_an_abelian_group_law((s, v) in spec_and_elems(1 << 20, 3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(s.add(a, b)?, s.add(b, a)?);
        prop_assert_eq!(s.add(&s.add(a, b)?, c)?, s.add(a, &s.add(b, c)?)?);
        prop_assert_eq!(s.add(a, &s.zero())?, a.clone());
        prop_assert!(s.add(a, &s.neg(a)?)?.is_zero());
        prop_assert_eq!(s.sub(a, b)?, s.add(a, &s.neg(b)?)?);
        let order = s.order_of(a)?;
        prop_assert!(s.scalar_mul(order as i64, a)?.is_zero());
        prop_assert_eq!(s.order() % order, 0);
    }

    #[test]
    fn isomorphism_type_recovers_exponents(s in spec_strategy(4096)) {
        prop_assert_eq!(isomorphism_type(&s)?, s.exponents().to_vec());
    }

    #[test]
    fn generated_subgroup_is_closed_and_idempotent((s, v) in spec_and_elems(4096, 3)) {
        let h = subgroup_generated(&s, &v)?;
        prop_assert_eq!(s.order() % h.size() as u64, 0);
        for g in &v {
            prop_assert!(h.contains(g));
        }
        prop_assert_eq!(subgroup_generated(&s, h.generators())?, h.clone());
        prop_assert!(h.generators().len() <= s.rank());
        for x in h.elements().iter().take(32) {
            for y in h.elements().iter().take(32) {
                prop_assert!(h.contains(&s.sub(x, y)?));
            }
        }
    }

    #[test]
    fn affine_maps_form_a_group(
(f, g, h) in affine_triple()) {
        prop_assert_eq!(f.compose(&g)?.compose(&h)?, f.compose(&g.compose(&h)?)?);
        prop_assert!(f.compose(&f.inverse())?.is_identity());
        prop_assert!(f.inverse().compose(&f)?.is_identity());
        let perm = f.to_permutation();
        let distinct: HashSet<usize> = perm.iter().copied().collect();
        prop_assert_eq!(distinct.len(), perm.len());
    }

    #[test]
    fn ring_laws_hold((a, v) in structure_and_elems(3)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let s = a.spec();
        prop_assert_eq!(a.mul(x, y)?, a.mul(y, x)?);
        prop_assert_eq!(a.mul(&a.mul(x, y)?, z)?, a.mul(x, &a.mul(y, z)?)?);
        prop_assert_eq!(a.mul(x, &s.add(y, z)?)?, s.add(&a.mul(x, y)?, &a.mul(x, z)?)?);
        prop_assert_eq!(a.circle(&a.circle(x, y)?, z)?, a.circle(x, &a.circle(y, z)?)?);
        let inv = a.circle_inverse(x)?;
        prop_assert!(a.circle(x, &inv)?.is_zero());
        prop_assert!(a.circle(&inv, x)?.is_zero());
    }

    #[test]
    fn tau_is_a_homomorphism((a, v) in structure_and_elems(3)) {
        let (g, h, x) = (&v[0], &v[1], &v[2]);
        let tg = tau(&a, g)?;
        prop_assert_eq!(tau(&a, &a.circle(g, h)?)?, tg.compose(&tau(&a, h)?)?);
        prop_assert_eq!(tg.apply(x)?, a.circle(g, x)?);
    }

    #[test]
    fn families_validate_with_known_index(a in structure_strategy()) {
        prop_assert!(validate(&a).is_empty());
        let idx = nilpotency_index(&a)?;
        prop_assert!(idx as u32 <= a.spec().log_order() + 1);
        if a.spec().rank() > 1 {
            prop_assert_eq!(idx as u32, a.spec().rank() as u32 + 1);
        }
    }

    #[test]
    fn structures_survive_json(a in structure_strategy()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: RingStructure = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn regularity_criteria_agree(
        (s, picks) in prop::sample::select(vec![
            GroupSpec::elementary(2, 2).unwrap(),
            GroupSpec::cyclic(2, 2).unwrap(),
            GroupSpec::cyclic(3, 2).unwrap(),
            GroupSpec::cyclic(2, 3).unwrap(),
        ])
        .prop_flat_map(|s| (Just(s), prop::collection::vec(any::<prop::sample::Index>(), 1..=3)))
    ) {
        let hol = holomorph_elements(&s, &Caps::default())?;
        let gens: Vec<AffineMap> = picks.iter().map(|i| i.get(&hol).clone()).collect();
        let group = close(&gens);
        prop_assert_eq!(
            is_regular(&s, &group)?,
            is_regular_by_fixed_points(&s, &group, CAP)?
        );
    }
}

fn close(gens: &[AffineMap]) -> Vec<AffineMap> {
    let spec = gens[0].spec().clone();
    let mut seen: HashSet<AffineMap> = HashSet::new();
    let mut queue = vec![AffineMap::identity(&spec)];
    seen.insert(queue[0].clone());
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.compose(g).unwrap();
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    let mut out: Vec<AffineMap> = seen.into_iter().collect();
    out.sort();
    out
}

fn small_specs() -> Vec<GroupSpec> {
    [
        (2, vec![1]),
        (2, vec![1, 1]),
        (2, vec![2]),
        (2, vec![2, 1]),
        (2, vec![3]),
        (2, vec![1, 1, 1]),
        (3, vec![1, 1]),
        (3, vec![2]),
        (5, vec![1]),
        (5, vec![2]),
    ]
    .into_iter()
    .map(|(p, e)| GroupSpec::new(p, e).unwrap())
    .collect()
}

#[test]
fn subgroup_lattice_is_closed_under_join_and_meet() {
    for s in small_specs() {
        let list = enumerate_subgroups(&s, CAP).unwrap();
        for a in &list {
            for b in &list {
                assert!(list.contains(&a.join(b)), "{s}");
                assert!(list.contains(&a.meet(b)), "{s}");
            }
        }
    }
}

#[test]
fn ideals_never_outnumber_gamma_subgroups() {
    for s in small_specs() {
        for a in enumerate_structures(&s, &Caps::default()).unwrap() {
            let ctx = Context::new(a.clone(), CAP).unwrap();
            let r = theorem32_check(&ctx, &Caps::default()).unwrap();
            assert!(r.ideals.len() as u64 <= r.gamma_subgroup_count, "{a}");
            assert_eq!(
                r.strong_ftgt,
                r.ideals.len() as u64 == r.gamma_subgroup_count
            );
            let o = common::Oracle::from_ring(&a);
            assert_eq!(
                r.gamma_subgroup_count as usize,
                o.circle_subgroup_count(),
                "{a}"
            );
        }
    }
}

#[test]
fn conjugation_closed_form_everywhere() {
    for s in small_specs() {
        for a in enumerate_structures(&s, &Caps::default()).unwrap() {
            let ctx = Context::new(a.clone(), CAP).unwrap();
            for gamma in ctx.elements() {
                for g in ctx.elements() {
                    let h = conjugate_alpha(&ctx, gamma, g).unwrap();
                    assert_eq!(h, s.add(g, &a.mul(gamma, g).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn cyclic_groups_have_every_subgroup_an_ideal() {
    let z9 = GroupSpec::cyclic(3, 2).unwrap();
    let mut structures = enumerate_structures(&z9, &Caps::default()).unwrap();
    structures.extend((0..9).map(|d| cyclic_structure(3, 3, d).unwrap()));
    assert_eq!(structures.len(), 3 + 9);
    for a in structures {
        let subgroups = enumerate_subgroups(a.spec(), CAP).unwrap();
        let found = ideals(&a, CAP).unwrap();
        assert_eq!(found.len(), subgroups.len(), "{a}");
        assert!(subgroups.iter().all(|j| a.is_ideal(j)), "{a}");
        let r = theorem32_check(&Context::new(a.clone(), CAP).unwrap(), &Caps::default()).unwrap();
        assert!(r.strong_ftgt, "{a}");
    }
}

#[test]
fn odd_cyclic_structures_are_the_family() {
    for (p, n) in [(3u64, 2u32), (3, 3), (5, 2)] {
        let s = GroupSpec::cyclic(p, n).unwrap();
        let mut family: Vec<RingStructure> = (0..p.pow(n - 1))
            .map(|d| cyclic_structure(p, n, d).unwrap())
            .collect();
        family.sort();
        assert_eq!(enumerate_structures(&s, &Caps::default()).unwrap(), family);
    }
}

/// Hol(Z/8) also contains regular subgroups that are not abelian; the ring
/// correspondence covers exactly the abelian ones.
#[test]
fn z8_regular_subgroups() {
    let s = GroupSpec::cyclic(2, 3).unwrap();
    let caps = Caps::default();
    let structures = enumerate_structures(&s, &caps).unwrap();
    assert_eq!(structures.len(), 4);
    let regular = enumerate_regular_subgroups(&s, &caps).unwrap();
    let (oracle_all, oracle_abelian) =
        common::regular_subgroups_two_generated(&common::holomorph_permutations(&s));
    assert_eq!(regular.len(), oracle_all);
    let abelian: Vec<_> = regular.iter().filter(|t| t.is_abelian()).collect();
    assert_eq!(abelian.len(), oracle_abelian);
    assert_eq!(abelian.len(), structures.len());
    assert!(regular.len() > abelian.len());
    for t in &regular {
        match ring_from_regular_subgroup(t, CAP) {
            Ok(a) => {
                assert!(t.is_abelian());
                assert_eq!(&regular_subgroup_from_ring(&a, CAP).unwrap(), t);
            }
            Err(Error::NonAbelianRegularSubgroup) => assert!(!t.is_abelian()),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn tau_image_is_regular_and_abelian() {
    for s in small_specs() {
        for a in enumerate_structures(&s, &Caps::default()).unwrap() {
            let t = regular_subgroup_from_ring(&a, CAP).unwrap();
            assert_eq!(t.size() as u64, s.order());
            assert!(t.is_abelian());
            assert!(is_regular(&s, t.elements()).unwrap());
            assert!(is_regular_by_fixed_points(&s, t.elements(), CAP).unwrap());
        }
    }
}
