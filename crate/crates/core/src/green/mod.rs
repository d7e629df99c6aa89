//! Green's relations and ideal structure of finite monoids.

mod group;
mod monoid;
mod relations;

pub use group::{identify_group, GroupInfo};
pub use monoid::{FiniteMonoid, GREEN_CAP, TABLE_CAP};
pub use relations::{egg_box, green_relations, maximal_subgroup, EggBoxClass, JClass, JClassPoset};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Monoids up to this size get the direct `sts = s` regularity scan.
pub const DIRECT_REGULARITY_CAP: usize = 5000;

pub fn idempotents(m: &FiniteMonoid) -> Vec<usize> {
    (0..m.len()).filter(|&a| m.is_idempotent(a)).collect()
}

/// Elements `s` with `sts = s` for some `t`, by direct search.
pub fn regular_elements(m: &FiniteMonoid) -> Result<Vec<usize>> {
    if m.len() > DIRECT_REGULARITY_CAP {
        return Err(Error::TooLarge {
            what: "monoid for the direct regularity scan",
            size: m.len(),
            cap: DIRECT_REGULARITY_CAP,
        });
    }
    Ok((0..m.len())
        .into_par_iter()
        .filter(|&s| (0..m.len()).any(|t| m.mul(m.mul(s, t), s) == s))
        .collect())
}

/// The idempotent order: `e <= f` iff `e = ef = fe`.
pub fn idempotent_leq(m: &FiniteMonoid, e: usize, f: usize) -> bool {
    m.mul(e, f) == e && m.mul(f, e) == e
}

fn check_ideal(m: &FiniteMonoid, ideal: &[usize]) -> Result<()> {
    if m.is_ideal(ideal) {
        Ok(())
    } else {
        Err(Error::NotAnIdeal)
    }
}

/// The Rees quotient `M / I`. Its elements are the elements outside `I` in
/// increasing order, followed by the zero (the image of `I`).
pub fn rees_quotient(m: &FiniteMonoid, ideal: &[usize]) -> Result<FiniteMonoid> {
    check_ideal(m, ideal)?;
    let mut new_index = vec![usize::MAX; m.len()];
    let mut inside = vec![false; m.len()];
    for &a in ideal {
        inside[a] = true;
    }
    let kept: Vec<usize> = (0..m.len()).filter(|&a| !inside[a]).collect();
    let zero = kept.len();
    for (i, &a) in kept.iter().enumerate() {
        new_index[a] = i;
    }
    for &a in ideal {
        new_index[a] = zero;
    }
    let identity = new_index[m.identity()];
    let m = m.clone();
    FiniteMonoid::from_fn(zero + 1, identity, move |a, b| {
        if a == zero || b == zero {
            zero
        } else {
            new_index[m.mul(kept[a], kept[b])]
        }
    })
}

/// A proper ideal whose complement is a submonoid.
pub fn is_prime_ideal(m: &FiniteMonoid, ideal: &[usize]) -> Result<bool> {
    check_ideal(m, ideal)?;
    let mut inside = vec![false; m.len()];
    for &a in ideal {
        inside[a] = true;
    }
    if inside[m.identity()] {
        return Ok(false);
    }
    let rest: Vec<usize> = (0..m.len()).filter(|&a| !inside[a]).collect();
    Ok(rest
        .par_iter()
        .all(|&a| rest.iter().all(|&b| !inside[m.mul(a, b)])))
}

/// True iff every element of `set` has `s^k = s^(k+1)` for some `k`.
pub fn is_aperiodic_set(m: &FiniteMonoid, set: &[usize]) -> bool {
    set.iter().all(|&s| m.index_period(s).1 == 1)
}

/// True iff the submonoid generated by the idempotents in `subset` is
/// aperiodic.
pub fn idempotent_generated_aperiodic(m: &FiniteMonoid, subset: &[usize]) -> bool {
    let seeds: Vec<usize> = subset
        .iter()
        .copied()
        .filter(|&a| m.is_idempotent(a))
        .collect();
    is_aperiodic_set(m, &m.submonoid(&seeds))
}

/// True iff the submonoid generated by all of `subset` is aperiodic.
pub fn is_aperiodic_generated(m: &FiniteMonoid, subset: &[usize]) -> bool {
    is_aperiodic_set(m, &m.submonoid(subset))
}

/// The 0-minimal ideals: `J ∪ {0}` for each J-class `J` whose only strictly
/// lower class is the zero.
pub fn find_zero_minimal_ideals(m: &FiniteMonoid, p: &JClassPoset) -> Result<Vec<Vec<usize>>> {
    let zero = m.zero().ok_or(Error::NoZero)?;
    let zc = p.j_class_of(zero);
    Ok((0..p.classes().len())
        .filter(|&c| c != zc && p.covers(c) == [zc])
        .map(|c| {
            let mut ideal = p.classes()[c].elements.clone();
            ideal.push(zero);
            ideal.sort_unstable();
            ideal
        })
        .collect())
}

/// The unique 0-minimal ideal when it exists and is 0-simple (its nonzero
/// part is a regular J-class).
pub fn zero_simple_minimal_ideal(m: &FiniteMonoid, p: &JClassPoset) -> Option<Vec<usize>> {
    let ideals = find_zero_minimal_ideals(m, p).ok()?;
    let [ideal] = ideals.as_slice() else {
        return None;
    };
    let any = *ideal.iter().find(|&&a| Some(a) != m.zero())?;
    p.classes()[p.j_class_of(any)]
        .is_regular()
        .then(|| ideal.clone())
}

/// The disjoint union of its unit group and a unique 0-minimal ideal that
/// is 0-simple.
pub fn is_small(m: &FiniteMonoid, p: &JClassPoset) -> bool {
    match zero_simple_minimal_ideal(m, p) {
        Some(ideal) => m.units().len() + ideal.len() == m.len(),
        None => false,
    }
}

/// True iff `s ↦ (s·a)_{a ∈ I}` and `s ↦ (a·s)_{a ∈ I}` are both one-to-one.
pub fn acts_faithfully(m: &FiniteMonoid, ideal: &[usize]) -> bool {
    let distinct = |rows: Vec<Vec<u32>>| {
        let mut rows = rows;
        rows.sort_unstable();
        rows.dedup();
        rows.len() == m.len()
    };
    let left: Vec<Vec<u32>> = (0..m.len())
        .into_par_iter()
        .map(|s| ideal.iter().map(|&a| m.mul(s, a) as u32).collect())
        .collect();
    let right: Vec<Vec<u32>> = (0..m.len())
        .into_par_iter()
        .map(|s| ideal.iter().map(|&a| m.mul(a, s) as u32).collect())
        .collect();
    distinct(left) && distinct(right)
}

/// A unique 0-minimal ideal that is 0-simple, on which the monoid acts
/// faithfully from both sides.
pub fn is_ggm(m: &FiniteMonoid, p: &JClassPoset) -> bool {
    zero_simple_minimal_ideal(m, p).is_some_and(|ideal| acts_faithfully(m, &ideal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::PartialMap;

    fn all_partial_maps(n: usize) -> Vec<PartialMap> {
        let mut out = Vec::new();
        for code in 0..(n + 1).pow(n as u32) {
            let mut c = code;
            let vals: Vec<Option<usize>> = (0..n)
                .map(|_| {
                    let d = c % (n + 1);
                    c /= n + 1;
                    (d < n).then_some(d)
                })
                .collect();
            out.push(PartialMap::new(n, &vals).unwrap());
        }
        out
    }

    #[test]
    fn full_partial_map_monoid_on_three_points() {
        let maps = all_partial_maps(3);
        let m = FiniteMonoid::from_maps(&maps).unwrap();
        let p = green_relations(&m).unwrap();
        assert_eq!(p.classes().len(), 4);
        for c in p.classes() {
            let rank = maps[c.elements[0]].rank();
            assert!(c.elements.iter().all(|&a| maps[a].rank() == rank));
        }
        for a in 0..maps.len() {
            for b in 0..maps.len() {
                assert_eq!(p.same_r(a, b), maps[a].image() == maps[b].image());
                assert_eq!(p.same_l(a, b), maps[a].kernel() == maps[b].kernel());
            }
        }
        assert_eq!(regular_elements(&m).unwrap().len(), maps.len());
        assert_eq!(p.regular_elements().len(), maps.len());
        assert!(is_ggm(&m, &p));
    }

    #[test]
    fn trivial_monoid() {
        let m = FiniteMonoid::from_table(1, vec![0], 0).unwrap();
        let p = green_relations(&m).unwrap();
        assert_eq!(p.classes().len(), 1);
        assert_eq!(
            find_zero_minimal_ideals(&m, &p).unwrap(),
            Vec::<Vec<usize>>::new()
        );
        assert!(!is_small(&m, &p));
    }

    #[test]
    fn aperiodicity() {
        let c2 = FiniteMonoid::from_fn(2, 0, |a, b| (a + b) % 2).unwrap();
        assert!(!is_aperiodic_generated(&c2, &[0, 1]));
        // the only idempotent is the identity
        assert!(idempotent_generated_aperiodic(&c2, &[0, 1]));
        // right-zero band {1, 2} with identity 0
        let band = FiniteMonoid::from_fn(3, 0, |a, b| {
            if a == 0 {
                b
            } else if b == 0 {
                a
            } else {
                b
            }
        })
        .unwrap();
        assert!(idempotent_generated_aperiodic(&band, &[1, 2]));
    }

    #[test]
    fn quotients_and_prime_ideals() {
        let maps = all_partial_maps(2);
        let m = FiniteMonoid::from_maps(&maps).unwrap();
        let whole: Vec<usize> = (0..m.len()).collect();
        assert_eq!(rees_quotient(&m, &whole).unwrap().len(), 1);
        assert!(!is_prime_ideal(&m, &whole).unwrap());
        let low: Vec<usize> = (0..m.len()).filter(|&a| maps[a].rank() <= 1).collect();
        let q = rees_quotient(&m, &low).unwrap();
        // the two permutations and a zero
        assert_eq!(q.len(), 3);
        assert!(is_prime_ideal(&m, &low).unwrap());
        assert_eq!(
            rees_quotient(&m, &[m.identity()]).unwrap_err(),
            Error::NotAnIdeal
        );
    }
}
