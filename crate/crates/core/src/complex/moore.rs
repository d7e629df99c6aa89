use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};

/// An intersection-closed family of subsets of `0..v` containing `V`.
///
/// Members are kept in canonical order: by size, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MooreFamily {
    v: usize,
    members: Vec<PointSet>,
}

impl MooreFamily {
    /// Validate a family: it must contain the ground set and be closed under
    /// pairwise intersection.
    pub fn new(v: usize, members: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        if v > MAX_POINTS {
            return Err(Error::TooLarge {
                what: "point count",
                size: v,
                cap: MAX_POINTS,
            });
        }
        let m = Self::from_closed(v, members.into_iter().collect());
        let all = PointSet::full(v);
        if let Some(bad) = m.members.iter().find(|s| !s.is_subset(all)) {
            return Err(Error::BadParams(format!(
                "member {bad} is not inside 0..{v}"
            )));
        }
        if m.members.last() != Some(&all) {
            return Err(Error::BadParams(
                "family does not contain the ground set".into(),
            ));
        }
        let set: HashSet<PointSet> = m.members.iter().copied().collect();
        for (i, a) in m.members.iter().enumerate() {
            for b in &m.members[i + 1..] {
                let c = a.intersection(*b);
                if !set.contains(&c) {
                    return Err(Error::BadParams(format!("{a} ∩ {b} = {c} is missing")));
                }
            }
        }
        Ok(m)
    }

    /// Wrap a family already known to be a Moore family.
    pub(crate) fn from_closed(v: usize, mut members: Vec<PointSet>) -> Self {
        members.sort_by(PointSet::canonical_cmp);
        members.dedup();
        MooreFamily { v, members }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: PointSet) -> bool {
        self.members
            .binary_search_by(|m| m.canonical_cmp(&s))
            .is_ok()
    }

    /// The smallest member.
    pub fn bottom(&self) -> PointSet {
        self.members[0]
    }

    /// Smallest member containing `x`.
    pub fn closure(&self, x: PointSet) -> PointSet {
        self.members
            .iter()
            .filter(|m| x.is_subset(**m))
            .fold(PointSet::full(self.v), |acc, m| acc.intersection(*m))
    }

    pub fn lattice(&self) -> LatticeView<'_> {
        LatticeView::new(self)
    }
}

/// The Hasse diagram of a Moore family ordered by inclusion.
#[derive(Clone, Debug)]
pub struct LatticeView<'a> {
    moore: &'a MooreFamily,
    /// `covers[i]` lists the members covering member `i`.
    covers: Vec<Vec<usize>>,
}

impl<'a> LatticeView<'a> {
    pub fn new(moore: &'a MooreFamily) -> Self {
        let m = moore.members();
        let covers = (0..m.len())
            .map(|i| {
                let above: Vec<usize> = (i + 1..m.len())
                    .filter(|&j| m[i].is_proper_subset(m[j]))
                    .collect();
                above
                    .iter()
                    .copied()
                    .filter(|&j| !above.iter().any(|&k| k != j && m[k].is_proper_subset(m[j])))
                    .collect()
            })
            .collect();
        LatticeView { moore, covers }
    }

    pub fn moore(&self) -> &MooreFamily {
        self.moore
    }

    /// Indices of the members covering member `i`.
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    pub fn index_of(&self, s: PointSet) -> Option<usize> {
        self.moore
            .members()
            .binary_search_by(|m| m.canonical_cmp(&s))
            .ok()
    }

    /// Members covering the bottom.
    pub fn atoms(&self) -> Vec<PointSet> {
        self.covers[0]
            .iter()
            .map(|&j| self.moore.members()[j])
            .collect()
    }

    /// (shortest, longest) number of cover steps from member `i` to the top,
    /// for every `i`.
    fn path_lengths(&self) -> Vec<(usize, usize)> {
        let n = self.covers.len();
        let mut len = vec![(0usize, 0usize); n];
        // canonical order is a linear extension of inclusion
        for i in (0..n).rev() {
            if let Some((lo, hi)) = self.covers[i].iter().map(|&j| len[j]).fold(
                None,
                |acc: Option<(usize, usize)>, (a, b)| match acc {
                    None => Some((a, b)),
                    Some((x, y)) => Some((x.min(a), y.max(b))),
                },
            ) {
                len[i] = (lo + 1, hi + 1);
            }
        }
        len
    }

    /// Length of a longest chain from bottom to top.
    pub fn height(&self) -> usize {
        self.path_lengths()[0].1
    }

    /// True iff every maximal chain from bottom to top has the same length.
    pub fn is_graded(&self) -> bool {
        let (lo, hi) = self.path_lengths()[0];
        lo == hi
    }

    /// True iff `chain` starts at the bottom, ends at the top and each step
    /// is a cover.
    pub fn is_maximal_chain(&self, chain: &[PointSet]) -> bool {
        let Some(idx) = chain
            .iter()
            .map(|s| self.index_of(*s))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        idx.first() == Some(&0)
            && idx.last() == Some(&(self.covers.len() - 1))
            && idx.windows(2).all(|w| self.covers[w[0]].contains(&w[1]))
    }

    /// Every maximal chain, by depth-first search. Exponential; intended for
    /// small lattices.
    pub fn maximal_chains(&self) -> Vec<Vec<PointSet>> {
        let mut out = Vec::new();
        let mut stack = vec![0usize];
        self.dfs(&mut stack, &mut out);
        out
    }

    fn dfs(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<PointSet>>) {
        let top = *stack.last().unwrap();
        if self.covers[top].is_empty() {
            out.push(stack.iter().map(|&i| self.moore.members()[i]).collect());
            return;
        }
        for &j in &self.covers[top] {
            stack.push(j);
            self.dfs(stack, out);
            stack.pop();
        }
    }

    pub fn stats(&self) -> LatticeStats {
        let (lo, hi) = self.path_lengths()[0];
        LatticeStats {
            members: self.moore.len(),
            height: hi,
            graded: lo == hi,
            atoms: self.covers[0].len(),
        }
    }
}

/// True iff all maximal chains of the lattice have equal length.
pub fn is_graded_lattice(l: &LatticeView) -> bool {
    l.is_graded()
}

/// Summary numbers for a lattice report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeStats {
    pub members: usize,
    pub height: usize,
    pub graded: bool,
    pub atoms: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> PointSet {
        v.iter().collect()
    }

    #[test]
    fn validation() {
        assert!(MooreFamily::new(3, [s(&[0, 1, 2])]).is_ok());
        assert!(MooreFamily::new(3, [s(&[0, 1])]).is_err());
        assert!(MooreFamily::new(3, [s(&[0, 1]), s(&[1, 2]), s(&[0, 1, 2])]).is_err());
        let m = MooreFamily::new(3, [s(&[0, 1]), s(&[1, 2]), s(&[1]), s(&[0, 1, 2])]).unwrap();
        assert_eq!(m.closure(s(&[0])), s(&[0, 1]));
        assert_eq!(m.closure(PointSet::EMPTY), s(&[1]));
        assert_eq!(m.closure(s(&[0, 2])), s(&[0, 1, 2]));
        assert!(m.contains(s(&[1, 2])));
        assert!(!m.contains(s(&[2])));
    }

    #[test]
    fn lattice_shape() {
        // the pentagon N5: 0 < a < b < 1, 0 < c < 1
        let m = MooreFamily::new(
            3,
            [PointSet::EMPTY, s(&[0]), s(&[0, 1]), s(&[2]), s(&[0, 1, 2])],
        )
        .unwrap();
        let l = m.lattice();
        assert!(!l.is_graded());
        assert_eq!(l.height(), 3);
        assert_eq!(l.atoms(), vec![s(&[0]), s(&[2])]);
        assert_eq!(l.maximal_chains().len(), 2);
        assert!(l.is_maximal_chain(&[PointSet::EMPTY, s(&[2]), s(&[0, 1, 2])]));
        assert!(!l.is_maximal_chain(&[PointSet::EMPTY, s(&[0, 1, 2])]));

        let two = MooreFamily::new(2, [PointSet::EMPTY, s(&[0, 1])]).unwrap();
        assert!(is_graded_lattice(&two.lattice()));
        assert_eq!(
            two.lattice().stats(),
            LatticeStats {
                members: 2,
                height: 1,
                graded: true,
                atoms: 1
            }
        );
    }
}
