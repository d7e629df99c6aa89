//! Bitset of points.
//!
//! Points are dense indices `0..v`. Every analysis in this crate works on
//! subsets of a ground set of at most [`MAX_POINTS`] points, so a single
//! `u128` word is enough and set algebra is a handful of instructions.

use std::fmt;

use serde::{Serialize, Serializer};

/// Largest ground set a [`PointSet`] can hold.
pub const MAX_POINTS: usize = 128;

/// A set of points, stored as a bitmask.
///
/// Equality is order independent; [`PointSet::to_vec`] gives the canonical
/// sorted form.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(u128);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        PointSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// The ground set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(
            n <= MAX_POINTS,
            "ground set of {n} points exceeds {MAX_POINTS}"
        );
        if n == MAX_POINTS {
            PointSet(u128::MAX)
        } else {
            PointSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(p: usize) -> Self {
        debug_assert!(p < MAX_POINTS);
        PointSet(1u128 << p)
    }

    pub fn contains(self, p: usize) -> bool {
        p < MAX_POINTS && self.0 >> p & 1 == 1
    }

    pub fn insert(&mut self, p: usize) {
        debug_assert!(p < MAX_POINTS);
        self.0 |= 1u128 << p;
    }

    pub fn remove(&mut self, p: usize) {
        self.0 &= !(1u128 << p);
    }

    pub fn with(self, p: usize) -> Self {
        PointSet(self.0 | 1u128 << p)
    }

    pub fn without(self, p: usize) -> Self {
        PointSet(self.0 & !(1u128 << p))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: PointSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: PointSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: PointSet) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: PointSet) -> Self {
        PointSet(self.0 & !other.0)
    }

    /// Complement inside the ground set `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        PointSet::full(n).difference(self)
    }

    /// Smallest member, if any.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Points {
        Points(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Total order used for canonical listings: by size, then by the sorted
    /// member list.
    pub fn canonical_cmp(&self, other: &PointSet) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PointSet::EMPTY;
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for PointSet {
    type Item = usize;
    type IntoIter = Points;

    fn into_iter(self) -> Points {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`PointSet`].
#[derive(Clone)]
pub struct Points(u128);

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// All subsets of `set` with exactly `k` members, in colex order.
pub fn k_subsets(set: PointSet, k: usize) -> Vec<PointSet> {
    let members = set.to_vec();
    let mut out = Vec::new();
    if k > members.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| members[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + members.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every subset of `set` (including the empty set and `set` itself).
pub fn subsets(set: PointSet) -> impl Iterator<Item = PointSet> {
    // Standard submask walk; yields `set` first and the empty set last.
    let bits = set.0;
    let mut cur = Some(bits);
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == 0 { None } else { Some((c - 1) & bits) };
        Some(PointSet(c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_algebra() {
        let a: PointSet = [0, 2, 5].iter().collect();
        let b: PointSet = [2, 3].iter().collect();
        assert_eq!(a.union(b).to_vec(), vec![0, 2, 3, 5]);
        assert_eq!(a.intersection(b).to_vec(), vec![2]);
        assert_eq!(a.difference(b).to_vec(), vec![0, 5]);
        assert_eq!(a.complement(6).to_vec(), vec![1, 3, 4]);
        assert!(PointSet::singleton(2).is_subset(a));
        assert_eq!(a.min(), Some(0));
        assert_eq!(PointSet::EMPTY.min(), None);
        assert_eq!(format!("{a}"), "{0,2,5}");
    }

    #[test]
    fn full_set_edges() {
        assert_eq!(PointSet::full(0), PointSet::EMPTY);
        assert_eq!(PointSet::full(128).len(), 128);
        assert!(PointSet::full(128).contains(127));
    }

    #[test]
    fn k_subsets_counts() {
        let s = PointSet::full(6);
        assert_eq!(k_subsets(s, 0).len(), 1);
        assert_eq!(k_subsets(s, 2).len(), 15);
        assert_eq!(k_subsets(s, 3).len(), 20);
        assert_eq!(k_subsets(s, 6).len(), 1);
        assert!(k_subsets(s, 7).is_empty());
        let mut all = k_subsets(s, 3);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 20);
        assert_eq!(subsets(PointSet::full(5)).count(), 32);
    }
}
