//! Flats, erection and transversals.
//!
//! Both the flats of a complex and its erection family are the closed sets
//! of a rule system. Each face `I` gives a rule "if `I ⊆ X` then
//! `Bad(I) ⊆ X`", where `Bad(I)` is the set of points `p ∉ I` with
//! `I ∪ {p}` not a face. Flats use every face; the erection family uses the
//! faces of size at most `rank - 1`.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;

use super::{MooreFamily, SimplicialComplex};
use crate::pointset::PointSet;

/// Subsets of `0..v` above which a full `2^v` scan is not attempted.
pub const SCAN_LIMIT: usize = 22;

/// Implications `premise ⊆ X ⇒ conclusion ⊆ X`.
#[derive(Clone, Debug)]
pub struct RuleSystem {
    v: usize,
    rules: Vec<(PointSet, PointSet)>,
}

impl RuleSystem {
    /// Rules from the faces of `s` with at most `max_face` points.
    pub fn from_complex(s: &SimplicialComplex, max_face: usize) -> Self {
        let faces: HashSet<PointSet> = s.face_set();
        let all = s.points();
        let mut rules: Vec<(PointSet, PointSet)> = faces
            .iter()
            .filter(|f| f.len() <= max_face)
            .filter_map(|&f| {
                let bad: PointSet = all
                    .difference(f)
                    .iter()
                    .filter(|&p| !faces.contains(&f.with(p)))
                    .collect();
                (!bad.is_empty()).then_some((f, bad))
            })
            .collect();
        rules.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        RuleSystem { v: s.v(), rules }
    }

    pub fn rules(&self) -> &[(PointSet, PointSet)] {
        &self.rules
    }

    pub fn is_closed(&self, x: PointSet) -> bool {
        self.rules
            .iter()
            .all(|(i, bad)| !i.is_subset(x) || bad.is_subset(x))
    }

    /// Smallest closed set containing `x`.
    pub fn closure(&self, x: PointSet) -> PointSet {
        let mut cur = x;
        loop {
            let next = self
                .rules
                .iter()
                .filter(|(i, _)| i.is_subset(cur))
                .fold(cur, |acc, (_, bad)| acc.union(*bad));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// All closed sets, by breadth-first search from `closure(∅)` along
    /// `F ↦ closure(F ∪ {p})`.
    pub fn closed_sets_by_search(&self) -> MooreFamily {
        let start = self.closure(PointSet::EMPTY);
        let mut seen: HashSet<PointSet> = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        let all = PointSet::full(self.v);
        while let Some(f) = queue.pop_front() {
            for p in all.difference(f) {
                let g = self.closure(f.with(p));
                if seen.insert(g) {
                    queue.push_back(g);
                }
            }
        }
        MooreFamily::from_closed(self.v, seen.into_iter().collect())
    }

    /// All closed sets, by testing every subset. Needs `v <= SCAN_LIMIT`.
    pub fn closed_sets_by_scan(&self) -> MooreFamily {
        assert!(self.v <= SCAN_LIMIT, "subset scan over {} points", self.v);
        let members: Vec<PointSet> = (0u64..1 << self.v)
            .into_par_iter()
            .map(|m| PointSet::from_bits(m as u128))
            .filter(|&x| self.is_closed(x))
            .collect();
        MooreFamily::from_closed(self.v, members)
    }
}

/// The lattice of flats: sets `X` such that every face inside `X` stays a
/// face after adding any point outside `X`.
pub fn flats(s: &SimplicialComplex) -> MooreFamily {
    RuleSystem::from_complex(s, s.v()).closed_sets_by_search()
}

fn erection_rules(s: &SimplicialComplex) -> RuleSystem {
    RuleSystem::from_complex(s, s.rank().saturating_sub(1))
}

/// The erection family: sets `X` such that every face of size below the
/// rank inside `X` stays a face after adding any point outside `X`.
///
/// Uses a full subset scan when `v <= SCAN_LIMIT` and closure search
/// otherwise.
pub fn epsilon(s: &SimplicialComplex) -> MooreFamily {
    if s.v() <= SCAN_LIMIT {
        epsilon_by_scan(s)
    } else {
        epsilon_by_closure(s)
    }
}

pub fn epsilon_by_scan(s: &SimplicialComplex) -> MooreFamily {
    erection_rules(s).closed_sets_by_scan()
}

pub fn epsilon_by_closure(s: &SimplicialComplex) -> MooreFamily {
    erection_rules(s).closed_sets_by_search()
}

/// Transversals of the successive differences of chains in `f`, up to
/// `max_size` points.
///
/// `X` is a transversal iff it has an ordering `x_1, .., x_k` with
/// `x_i ∉ Cl(x_1, .., x_{i-1})` for every `i`; equivalently, iff some `x`
/// in `X` lies outside `Cl(X \ {x})` and `X \ {x}` is a transversal. The
/// families are built level by level from that recursion.
pub fn transversals(f: &MooreFamily, max_size: usize) -> SimplicialComplex {
    let all = PointSet::full(f.v());
    let mut level: HashSet<PointSet> = HashSet::from([PointSet::EMPTY]);
    let mut maximal: Vec<PointSet> = Vec::new();
    for _ in 0..max_size {
        let mut next = HashSet::new();
        for &y in &level {
            let cl = f.closure(y);
            let free = all.difference(cl);
            if free.is_empty() {
                maximal.push(y);
            }
            next.extend(free.iter().map(|p| y.with(p)));
        }
        if next.is_empty() {
            break;
        }
        // sets of the previous level with no extension were recorded above
        level = next;
    }
    maximal.extend(level);
    SimplicialComplex::from_faces(f.v(), maximal).expect("subsets of the ground set")
}

/// True iff the faces of `s` are exactly the transversals of its flats.
pub fn is_boolean_representable(s: &SimplicialComplex) -> bool {
    transversals(&flats(s), s.rank() + 1) == *s
}
