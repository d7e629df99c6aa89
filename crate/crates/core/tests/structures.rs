use std::collections::HashSet;

use wilson_core::catalog;
use wilson_core::green::is_prime_ideal;
use wilson_core::incidence::Pbd;
use wilson_core::mld::{
    collapse_ideal, mld_design, mld_image_realizable, mld_is_open, mld_is_regular,
    mld_is_subsystem, mld_kernel_realizable, mld_membership,
};
use wilson_core::morphism::{is_open, MorphismChecker, PartialMap, Partition, UNDEF};
use wilson_core::wmonoid::{constant_ideal, enumerate_wilson, WilsonMonoid};
use wilson_core::PointSet;

fn subsets(v: usize) -> impl Iterator<Item = PointSet> {
    (0u32..1 << v).map(move |bits| (0..v).filter(|p| bits >> p & 1 == 1).collect())
}

fn partial_maps(v: usize) -> impl Iterator<Item = PartialMap> {
    (0..(v + 1).pow(v as u32)).map(move |mut code| {
        let table = (0..v)
            .map(|_| {
                let d = code % (v + 1);
                code /= v + 1;
                if d == v {
                    UNDEF
                } else {
                    d as u8
                }
            })
            .collect();
        PartialMap::from_table(v, table)
    })
}

fn subsystem_oracle(x: &Pbd, s: PointSet) -> bool {
    x.blocks()
        .iter()
        .all(|b| b.intersection(s).len() < 2 || b.is_subset(s))
}

#[test]
fn one_big_block_closed_forms_match_brute_force() {
    for (l, d) in [(3, 1), (3, 2), (4, 1), (4, 2)] {
        let m = mld_design(l, d).unwrap();
        let x = &m.design;
        let v = m.v();
        for s in subsets(v) {
            assert_eq!(
                mld_is_subsystem(&m, s),
                subsystem_oracle(x, s),
                "({l},{d}) {s}"
            );
            let open = subsystem_oracle(x, PointSet::full(v).difference(s));
            assert_eq!(mld_is_open(&m, s), open, "({l},{d}) {s}");
            assert_eq!(is_open(x, s), open);
        }

        let c = MorphismChecker::new(x, x);
        let mut kernels: HashSet<Partition> = HashSet::new();
        for f in partial_maps(v) {
            let member = c.is_morphism(&f).unwrap();
            assert_eq!(mld_membership(&m, &f), member, "({l},{d}) {f}");
            let k = f.kernel();
            if is_open(x, k.domain()) {
                kernels.insert(k);
            }
        }

        let w = enumerate_wilson(x).unwrap();
        let images: HashSet<PointSet> = w.elements().iter().map(|f| f.image()).collect();
        for s in subsets(v) {
            assert_eq!(
                mld_image_realizable(&m, s),
                images.contains(&s),
                "({l},{d}) {s}"
            );
        }

        let realized: HashSet<Partition> = w.elements().iter().map(|f| f.kernel()).collect();
        for k in &kernels {
            let witness = mld_kernel_realizable(&m, k).unwrap();
            assert_eq!(witness.is_some(), realized.contains(k), "({l},{d}) {k:?}");
            if let Some(f) = witness {
                assert_eq!(&f.kernel(), k);
                assert!(w.index_of(&f).is_some());
            }
        }

        let p = w.green().unwrap();
        let regular: HashSet<usize> = p.regular_elements().into_iter().collect();
        for (i, f) in w.elements().iter().enumerate() {
            assert_eq!(
                mld_is_regular(&m, f).unwrap(),
                regular.contains(&i),
                "({l},{d}) {f}"
            );
        }
    }
}

fn r_and_l_follow_image_and_kernel(w: &WilsonMonoid) {
    let p = w.green().unwrap();
    let regular = p.regular_elements();
    let elems = w.elements();
    for &a in &regular {
        for &b in &regular {
            assert_eq!(p.same_r(a, b), elems[a].image() == elems[b].image());
            assert_eq!(p.same_l(a, b), elems[a].kernel() == elems[b].kernel());
        }
    }
}

/// For `M(l, d)` and `I = {f : |f(L)| <= 1}`: `I` is a prime ideal and
/// `W \ I` is a submonoid of regular elements made of whole J-classes.
#[test]
fn collapse_ideal_complement_is_a_regular_submonoid() {
    for (l, d) in [(3, 1), (3, 2), (4, 1), (4, 2)] {
        let m = mld_design(l, d).unwrap();
        let w = enumerate_wilson(&m.design).unwrap();
        let p = w.green().unwrap();
        let ideal_list = collapse_ideal(&m, &w);
        assert!(is_prime_ideal(w.monoid(), &ideal_list).unwrap());
        let ideal: HashSet<usize> = ideal_list.into_iter().collect();
        let rest: Vec<usize> = (0..w.len()).filter(|a| !ideal.contains(a)).collect();
        let regular: HashSet<usize> = p.regular_elements().into_iter().collect();
        assert!(rest.iter().all(|a| regular.contains(a)));
        for &a in &rest {
            for &b in &rest {
                assert!(!ideal.contains(&w.compose(a, b)), "({l},{d})");
            }
        }
        for c in p.classes() {
            let inside = c.elements.iter().filter(|a| ideal.contains(a)).count();
            assert!(inside == 0 || inside == c.elements.len());
        }
    }
}

#[test]
fn fano_green_structure() {
    let w = enumerate_wilson(&catalog::lookup("fano").unwrap()).unwrap();
    r_and_l_follow_image_and_kernel(&w);
}

#[test]
fn affine_plane_green_structure() {
    let w = enumerate_wilson(&catalog::lookup("ag23").unwrap()).unwrap();
    r_and_l_follow_image_and_kernel(&w);
}

#[test]
fn subsystem_free_sts13_is_small() {
    let x = catalog::cyclic_sts13();
    let w = wilson_core::wmonoid::enumerate_wilson_capped(&x, 13).unwrap();
    assert!(wilson_core::wmonoid::is_small_monoid(&w).unwrap());
    // units and constants only
    let ideal = constant_ideal(&w).unwrap().len();
    assert_eq!(w.units().len() + ideal, w.len());
}
