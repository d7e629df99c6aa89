//! Simplicial complexes, Moore families, flats, truncation and erection.

mod closure;
mod format;
mod geometry;
mod moore;

pub use closure::{
    epsilon, epsilon_by_closure, epsilon_by_scan, flats, is_boolean_representable, transversals,
    RuleSystem, SCAN_LIMIT,
};
pub use format::{read_complex, read_moore, write_complex, write_moore};
pub use geometry::{
    graphic_matroid_k5, is_subsystem_free, k5_edge, matroid_from_pbd, pbd_from_matroid, relax,
    subsystems, K5_EDGES,
};
pub use moore::{is_graded_lattice, LatticeStats, LatticeView, MooreFamily};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::pointset::{subsets, PointSet, MAX_POINTS};

/// A simplicial complex on `0..v`, stored by its facets.
///
/// The facet list is an antichain in canonical order (by size, then
/// lexicographically); a set is a face iff it lies inside some facet. The
/// empty complex `{∅}` has the single facet `∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    v: usize,
    facets: Vec<PointSet>,
}

impl SimplicialComplex {
    /// Build from any generating family of faces; only the maximal ones are
    /// kept.
    pub fn from_faces(v: usize, faces: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        if v > MAX_POINTS {
            return Err(Error::TooLarge {
                what: "point count",
                size: v,
                cap: MAX_POINTS,
            });
        }
        let all = PointSet::full(v);
        let mut gens: Vec<PointSet> = faces.into_iter().collect();
        if let Some(bad) = gens.iter().find(|f| !f.is_subset(all)) {
            return Err(Error::BadParams(format!("face {bad} is not inside 0..{v}")));
        }
        // larger sets first, so a set is kept iff no kept set contains it
        gens.sort_by(|a, b| b.canonical_cmp(a));
        gens.dedup();
        let mut facets: Vec<PointSet> = Vec::new();
        for g in gens {
            if !facets.iter().any(|f| g.is_subset(*f)) {
                facets.push(g);
            }
        }
        if facets.is_empty() {
            facets.push(PointSet::EMPTY);
        }
        facets.sort_by(PointSet::canonical_cmp);
        Ok(SimplicialComplex { v, facets })
    }

    /// The complex `P≤k(V)` of all sets with at most `k` points.
    pub fn uniform(v: usize, k: usize) -> Result<Self> {
        Self::from_faces(v, crate::pointset::k_subsets(PointSet::full(v), k.min(v)))
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn points(&self) -> PointSet {
        PointSet::full(self.v)
    }

    pub fn facets(&self) -> &[PointSet] {
        &self.facets
    }

    pub fn contains(&self, s: PointSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    /// Size of a largest face.
    pub fn rank(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    /// Size of a largest face inside `x`.
    pub fn rank_of(&self, x: PointSet) -> usize {
        self.facets
            .iter()
            .map(|f| f.intersection(x).len())
            .max()
            .unwrap_or(0)
    }

    /// True iff all facets have the same size.
    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.len() == self.facets[0].len())
    }

    /// True iff every pair of points is a face.
    pub fn is_simple(&self) -> bool {
        (0..self.v).all(|p| (p + 1..self.v).all(|q| self.contains(PointSet::from_iter([p, q]))))
    }

    /// Every face, in canonical order.
    pub fn faces(&self) -> Vec<PointSet> {
        let set = self.face_set();
        let mut out: Vec<PointSet> = set.into_iter().collect();
        out.sort_by(PointSet::canonical_cmp);
        out
    }

    pub(crate) fn face_set(&self) -> HashSet<PointSet> {
        let mut set = HashSet::new();
        for f in &self.facets {
            set.extend(subsets(*f));
        }
        set
    }

    /// Exhaustive exchange-property check: for faces `I`, `J` with
    /// `|I| = |J| + 1` some `i` in `I \ J` has `J ∪ {i}` a face.
    pub fn is_matroid(&self) -> bool {
        let faces = self.faces();
        let set: HashSet<PointSet> = faces.iter().copied().collect();
        let by_size = |k: usize| faces.iter().copied().filter(move |f| f.len() == k);
        (1..=self.rank()).all(|k| {
            by_size(k).all(|i| {
                by_size(k - 1).all(|j| i.difference(j).iter().any(|p| set.contains(&j.with(p))))
            })
        })
    }

    /// The `k`-truncation: faces with at most `k` points.
    pub fn truncate(&self, k: usize) -> SimplicialComplex {
        let gens = self.facets.iter().flat_map(|f| {
            if f.len() <= k {
                vec![*f]
            } else {
                crate::pointset::k_subsets(*f, k)
            }
        });
        Self::from_faces(self.v, gens.collect::<Vec<_>>()).expect("subsets of valid faces")
    }
}
