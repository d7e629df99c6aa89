//! Passing between designs and rank-3 matroids, and the matroid examples.

use std::collections::{HashSet, VecDeque};

use super::{flats, MooreFamily, SimplicialComplex};
use crate::error::{Error, Result};
use crate::incidence::Pbd;
use crate::pointset::{k_subsets, PointSet};

/// The simple rank-3 matroid of a design: every set of at most two points
/// plus every triple not inside a block.
///
/// The single-block system has no independent triple and gives `P≤2(V)`.
pub fn matroid_from_pbd(x: &Pbd) -> SimplicialComplex {
    let v = x.v();
    let mut facets = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            let l = x.line(a, b);
            facets.extend(
                (b + 1..v)
                    .filter(|&c| !l.contains(c))
                    .map(|c| PointSet::from_iter([a, b, c])),
            );
        }
    }
    if facets.is_empty() {
        facets = k_subsets(x.points(), 2);
    }
    SimplicialComplex::from_faces(v, facets).expect("points in range")
}

/// The design whose blocks are the closures of pairs of a simple rank-3
/// matroid.
pub fn pbd_from_matroid(m: &SimplicialComplex) -> Result<Pbd> {
    if m.rank() != 3 || !m.is_simple() || !m.is_matroid() {
        return Err(Error::NotSimpleRank3Matroid);
    }
    let v = m.v();
    let mut blocks: HashSet<PointSet> = HashSet::new();
    for a in 0..v {
        for b in a + 1..v {
            let pair = PointSet::from_iter([a, b]);
            // Cl{a,b} = {a,b} ∪ {c : {a,b,c} dependent}
            let cl: PointSet = (0..v)
                .filter(|&c| pair.contains(c) || !m.contains(pair.with(c)))
                .collect();
            blocks.insert(cl);
        }
    }
    Pbd::from_sets(v, blocks.into_iter().collect())
}

/// All subsystems: sets containing the block through any two of their
/// points. Found by search from the empty set along `F ↦ closure(F ∪ {p})`.
pub fn subsystems(x: &Pbd) -> MooreFamily {
    let all = x.points();
    let mut seen: HashSet<PointSet> = HashSet::from([PointSet::EMPTY]);
    let mut queue = VecDeque::from([PointSet::EMPTY]);
    while let Some(f) = queue.pop_front() {
        for p in all.difference(f) {
            let g = x.pair_closure(f.with(p));
            if seen.insert(g) {
                queue.push_back(g);
            }
        }
    }
    MooreFamily::from_closed(x.v(), seen.into_iter().collect())
}

/// True iff the only subsystems are ∅, the points, the blocks and `V`.
///
/// A subsystem outside that list contains three non-collinear points, and
/// the closure of such a triple is never a block; so the test is that every
/// non-collinear triple generates the whole design.
pub fn is_subsystem_free(x: &Pbd) -> bool {
    let v = x.v();
    let all = x.points();
    (0..v).all(|a| {
        (a + 1..v).all(|b| {
            let l = x.line(a, b);
            (b + 1..v)
                .filter(|&c| !l.contains(c))
                .all(|c| x.pair_closure(PointSet::from_iter([a, b, c])) == all)
        })
    })
}

/// Edges of K5 in the order used as points of the graphic matroid: edge
/// `i` joins the two vertices `K5_EDGES[i]` (vertices `0..5`).
pub const K5_EDGES: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

/// Point index of the edge joining two vertices of K5.
pub fn k5_edge(a: usize, b: usize) -> usize {
    let e = (a.min(b), a.max(b));
    K5_EDGES
        .iter()
        .position(|&x| x == e)
        .expect("distinct vertices below 5")
}

fn is_forest(edges: PointSet) -> bool {
    let mut parent = [0usize, 1, 2, 3, 4];
    fn find(parent: &mut [usize; 5], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    edges.iter().all(|e| {
        let (a, b) = K5_EDGES[e];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
        ra != rb
    })
}

/// The graphic matroid of K5 on its 10 edges: independent sets are the
/// forests, bases the 125 spanning trees.
pub fn graphic_matroid_k5() -> SimplicialComplex {
    let trees = k_subsets(PointSet::full(10), 4)
        .into_iter()
        .filter(|s| is_forest(*s));
    SimplicialComplex::from_faces(10, trees.collect::<Vec<_>>()).expect("points in range")
}

/// Add `x` as a new basis. Requires `x` to be a circuit (dependent, every
/// proper subset independent) and a hyperplane (a flat of rank one less
/// than the matroid).
pub fn relax(m: &SimplicialComplex, x: PointSet) -> Result<SimplicialComplex> {
    let circuit = !m.contains(x) && x.iter().all(|p| m.contains(x.without(p)));
    let hyperplane = m.rank_of(x) + 1 == m.rank() && flats(m).contains(x);
    if !(circuit && hyperplane) {
        return Err(Error::NotCircuitHyperplane(x.to_vec()));
    }
    SimplicialComplex::from_faces(m.v(), m.facets().iter().copied().chain([x]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{complete_graph, fano, near_pencil};

    #[test]
    fn fano_matroid() {
        let m = matroid_from_pbd(&fano());
        assert_eq!(m.facets().len(), 28);
        assert_eq!(m.rank(), 3);
        assert!(m.is_matroid());
        assert_eq!(pbd_from_matroid(&m).unwrap(), fano());
    }

    #[test]
    fn complete_graph_gives_uniform() {
        let m = matroid_from_pbd(&complete_graph(5).unwrap());
        assert_eq!(m, SimplicialComplex::uniform(5, 3).unwrap());
        assert_eq!(pbd_from_matroid(&m).unwrap(), complete_graph(5).unwrap());
    }

    #[test]
    fn near_pencil_bases() {
        let m = matroid_from_pbd(&near_pencil(3).unwrap());
        assert!(!m.contains(PointSet::from_iter([1, 2, 3])));
        assert!(k_subsets(PointSet::full(4), 3)
            .iter()
            .filter(|t| t.contains(0))
            .all(|t| m.contains(*t)));
    }

    #[test]
    fn not_rank3() {
        assert_eq!(
            pbd_from_matroid(&SimplicialComplex::uniform(4, 2).unwrap()),
            Err(Error::NotSimpleRank3Matroid)
        );
    }

    #[test]
    fn fano_subsystems() {
        let s = subsystems(&fano());
        assert_eq!(s.len(), 16);
        assert!(is_subsystem_free(&fano()));
    }

    #[test]
    fn k5() {
        let g = graphic_matroid_k5();
        assert_eq!(g.rank(), 4);
        assert_eq!(g.facets().len(), 125);
        assert_eq!(k5_edge(3, 2), 7);
    }
}
