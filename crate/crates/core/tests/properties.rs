use std::collections::{BTreeSet, HashSet, VecDeque};

use proptest::prelude::*;
use wilson_core::catalog;
use wilson_core::green::{green_relations, idempotents, regular_elements, FiniteMonoid};
use wilson_core::incidence::Pbd;
use wilson_core::morphism::{MorphismChecker, PartialMap};
use wilson_core::PointSet;

fn to_set(s: PointSet) -> BTreeSet<usize> {
    s.iter().collect()
}

proptest! {
    #[test]
    fn point_set_algebra(a in prop::collection::btree_set(0usize..128, 0..40),
                         b in prop::collection::btree_set(0usize..128, 0..40)) {
        let (x, y): (PointSet, PointSet) = (a.iter().collect(), b.iter().collect());
        prop_assert_eq!(to_set(x.union(y)), a.union(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(to_set(x.intersection(y)), a.intersection(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(to_set(x.difference(y)), a.difference(&b).copied().collect::<BTreeSet<_>>());
        prop_assert_eq!(x.len(), a.len());
        prop_assert_eq!(x.is_subset(y), a.is_subset(&b));
        prop_assert_eq!(x.min(), a.first().copied());
        prop_assert_eq!(x.to_vec(), a.iter().copied().collect::<Vec<_>>());
        let c = x.complement(128);
        prop_assert!(c.is_disjoint(x));
        prop_assert_eq!(c.len() + x.len(), 128);
    }
}

/// Subsystems by brute force over every subset.
fn subsystem_oracle(x: &Pbd) -> HashSet<PointSet> {
    let v = x.v();
    (0u32..1 << v)
        .map(|bits| (0..v).filter(|p| bits >> p & 1 == 1).collect::<PointSet>())
        .filter(|s| {
            x.blocks()
                .iter()
                .all(|b| b.intersection(*s).len() < 2 || b.is_subset(*s))
        })
        .collect()
}

/// Wilson's definition, checked against the brute-force subsystem list.
fn is_morphism_oracle(f: &PartialMap, subs: &HashSet<PointSet>) -> bool {
    let undefined = f.undefined_set();
    subs.iter()
        .all(|s| subs.contains(&f.preimage(*s).union(undefined)))
}

fn small_designs() -> Vec<Pbd> {
    [
        "sts3",
        "complete4",
        "near-pencil5",
        "hall6",
        "fano",
        "ag23",
        "mld4-2",
        "mld5-2",
    ]
    .iter()
    .map(|n| catalog::lookup(n).unwrap())
    .collect()
}

fn design_and_map() -> impl Strategy<Value = (usize, Vec<Option<usize>>)> {
    let n = small_designs().len();
    (0..n).prop_flat_map(|i| {
        let v = small_designs()[i].v();
        (Just(i), prop::collection::vec(prop::option::of(0..v), v))
    })
}

/// Maps that are more often morphisms: permutations and partial constants,
/// mixed with arbitrary maps.
fn structured_map(v: usize) -> impl Strategy<Value = Vec<Option<usize>>> {
    prop_oneof![
        Just((0..v).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|p| p.into_iter().map(Some).collect()),
        (prop::collection::vec(any::<bool>(), v), 0..v)
            .prop_map(move |(dom, c)| { dom.into_iter().map(|d| d.then_some(c)).collect() }),
        prop::collection::vec(prop::option::of(0..v), v),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn morphism_forms_agree_with_the_definition((i, vals) in design_and_map()) {
        let x = &small_designs()[i];
        let f = PartialMap::new(x.v(), &vals).unwrap();
        let c = MorphismChecker::new(x, x);
        let want = is_morphism_oracle(&f, &subsystem_oracle(x));
        prop_assert_eq!(c.is_morphism(&f).unwrap(), want);
        prop_assert_eq!(c.is_morphism_by_definition(&f).unwrap(), want);
        prop_assert_eq!(c.is_morphism_blockwise(&f).unwrap(), want);
    }

    #[test]
    fn morphism_forms_agree_on_structured_maps(
        (i, vals) in (0..small_designs().len())
            .prop_flat_map(|i| (Just(i), structured_map(small_designs()[i].v())))
    ) {
        let x = &small_designs()[i];
        let f = PartialMap::new(x.v(), &vals).unwrap();
        let c = MorphismChecker::new(x, x);
        let want = is_morphism_oracle(&f, &subsystem_oracle(x));
        prop_assert_eq!(c.is_morphism(&f).unwrap(), want);
        prop_assert_eq!(c.is_morphism_blockwise(&f).unwrap(), want);
    }
}

/// The monoid generated by some partial maps together with the identity.
fn close(n: usize, gens: &[PartialMap]) -> Vec<PartialMap> {
    let mut seen: HashSet<PartialMap> = HashSet::new();
    let mut queue = VecDeque::from([PartialMap::identity(n)]);
    let mut out = Vec::new();
    while let Some(f) = queue.pop_front() {
        if !seen.insert(f.clone()) {
            continue;
        }
        for g in gens {
            queue.push_back(g.after(&f).unwrap());
        }
        out.push(f);
    }
    out
}

fn generators() -> impl Strategy<Value = (usize, Vec<Vec<Option<usize>>>)> {
    (2usize..=4).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(prop::option::of(0..n), n), 1..4),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn green_structure_of_partial_map_monoids((n, gens) in generators()) {
        let gens: Vec<PartialMap> = gens.iter().map(|g| PartialMap::new(n, g).unwrap()).collect();
        let maps = close(n, &gens);
        let m = FiniteMonoid::from_maps(&maps).unwrap();
        let p = green_relations(&m).unwrap();

        // idempotents are exactly the maps fixing their image pointwise
        let idem: HashSet<usize> = idempotents(&m).into_iter().collect();
        for (i, f) in maps.iter().enumerate() {
            prop_assert_eq!(idem.contains(&i), f.image().is_subset(f.fixed_points()));
        }

        let regular: HashSet<usize> = regular_elements(&m).unwrap().into_iter().collect();
        for class in p.classes() {
            // a class is regular iff it holds an idempotent, and then every
            // element is regular
            let has_idempotent = class.elements.iter().any(|a| idem.contains(a));
            prop_assert_eq!(class.is_regular(), has_idempotent);
            prop_assert!(class.elements.iter().all(|a| regular.contains(a) == has_idempotent));
            // stability: every R-class meets every L-class inside a J-class
            let rs: HashSet<usize> = class.elements.iter().map(|&a| p.r_class_of(a)).collect();
            let ls: HashSet<usize> = class.elements.iter().map(|&a| p.l_class_of(a)).collect();
            let cells: HashSet<(usize, usize)> = class
                .elements
                .iter()
                .map(|&a| (p.r_class_of(a), p.l_class_of(a)))
                .collect();
            prop_assert_eq!(cells.len(), rs.len() * ls.len());
        }

        // R and L against the ideals they generate, by brute force
        let right = |a: usize| -> BTreeSet<usize> { (0..m.len()).map(|x| m.mul(a, x)).collect() };
        let left = |a: usize| -> BTreeSet<usize> { (0..m.len()).map(|x| m.mul(x, a)).collect() };
        for a in 0..m.len().min(40) {
            for b in 0..m.len().min(40) {
                prop_assert_eq!(p.same_r(a, b), right(a) == right(b));
                prop_assert_eq!(p.same_l(a, b), left(a) == left(b));
            }
        }
    }
}
