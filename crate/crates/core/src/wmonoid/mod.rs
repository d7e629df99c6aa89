//! The Wilson monoid of a design: all of its self-morphisms under
//! composition, with the partial constants forming its 0-minimal ideal.

mod search;

pub use search::MorphismSearch;

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::subsystems;
use crate::error::{Error, Result};
use crate::green::{self, FiniteMonoid, JClassPoset};
use crate::incidence::Pbd;
use crate::morphism::{is_open_morphism, open_sets, MorphismChecker, PartialMap};
use crate::pointset::PointSet;

/// Largest design enumerated in full unless a larger cap is passed.
pub const DEFAULT_CAP: usize = 9;

/// Closure under composition is checked on every pair up to this size and
/// on a random sample beyond it.
pub const FULL_CLOSURE_CAP: usize = 5000;

const CLOSURE_SAMPLES: usize = 200_000;

/// Largest structure matrix (in rows) whose translational hull is counted.
pub const HULL_ROW_CAP: usize = 8;

/// All self-morphisms of a design, sorted.
#[derive(Debug)]
pub struct WilsonMonoid {
    design: Pbd,
    elements: Vec<PartialMap>,
    identity: usize,
    empty: usize,
    monoid: OnceLock<FiniteMonoid>,
    poset: OnceLock<Result<JClassPoset>>,
}

pub fn enumerate_wilson(x: &Pbd) -> Result<WilsonMonoid> {
    enumerate_wilson_capped(x, DEFAULT_CAP)
}

/// As [`enumerate_wilson`] with an explicit bound on the number of points.
pub fn enumerate_wilson_capped(x: &Pbd, cap: usize) -> Result<WilsonMonoid> {
    enumerate_wilson_seeded(x, cap, 0)
}

/// As [`enumerate_wilson_capped`], seeding the sampled closure check used
/// for monoids above [`FULL_CLOSURE_CAP`].
pub fn enumerate_wilson_seeded(x: &Pbd, cap: usize, seed: u64) -> Result<WilsonMonoid> {
    if x.v() > cap {
        return Err(Error::TooLarge {
            what: "design for full enumeration",
            size: x.v(),
            cap,
        });
    }
    WilsonMonoid::from_elements(x.clone(), MorphismSearch::new(x, x).collect(), seed)
}

impl WilsonMonoid {
    /// Wrap a list of self-morphisms, checking closure (in full up to
    /// [`FULL_CLOSURE_CAP`] elements, sampled with `seed` beyond).
    pub fn from_elements(design: Pbd, mut elements: Vec<PartialMap>, seed: u64) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let v = design.v();
        let find = |f: &PartialMap| elements.binary_search(f).map_err(|_| Error::NotInMonoid);
        let identity = find(&PartialMap::identity(v))?;
        let empty = find(&PartialMap::empty(v, v))?;
        let w = WilsonMonoid {
            design,
            elements,
            identity,
            empty,
            monoid: OnceLock::new(),
            poset: OnceLock::new(),
        };
        if w.len() <= FULL_CLOSURE_CAP {
            let m = FiniteMonoid::from_maps(&w.elements).map_err(|_| Error::NotInMonoid)?;
            let _ = w.monoid.set(m);
        } else {
            w.check_closure_sampled(CLOSURE_SAMPLES, seed)?;
        }
        Ok(w)
    }

    fn check_closure_sampled(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = self.len();
        let pairs: Vec<(usize, usize)> = (0..samples)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect();
        let ok = pairs.par_iter().all(|&(a, b)| {
            self.index_of(&self.elements[a].after_unchecked(&self.elements[b]))
                .is_some()
        });
        if ok {
            Ok(())
        } else {
            Err(Error::NotInMonoid)
        }
    }

    pub fn design(&self) -> &Pbd {
        &self.design
    }

    pub fn elements(&self) -> &[PartialMap] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Index of the nowhere-defined map, the zero of the monoid.
    pub fn empty(&self) -> usize {
        self.empty
    }

    pub fn index_of(&self, f: &PartialMap) -> Option<usize> {
        self.elements.binary_search(f).ok()
    }

    /// `a ∘ b` (apply `b` first).
    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.monoid().mul(a, b)
    }

    /// The abstract monoid; element `i` is `elements()[i]`.
    pub fn monoid(&self) -> &FiniteMonoid {
        self.monoid.get_or_init(|| {
            FiniteMonoid::from_maps(&self.elements).expect("enumerated monoid is closed")
        })
    }

    pub fn green(&self) -> Result<&JClassPoset> {
        self.poset
            .get_or_init(|| green::green_relations(self.monoid()))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.elements[i].is_total() && self.elements[i].rank() == self.design.v())
            .collect()
    }
}

/// Indices of the maps with at most one image point.
pub fn constant_ideal(w: &WilsonMonoid) -> Result<Vec<usize>> {
    let ideal: Vec<usize> = (0..w.len())
        .filter(|&i| w.elements[i].rank() <= 1)
        .collect();
    if !w.monoid().is_ideal(&ideal) {
        return Err(Error::NotAnIdeal);
    }
    Ok(ideal)
}

/// A structure matrix over the trivial group: `entry(c, r)` pairs column
/// `c` with row `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReesMatrix {
    pub rows: Vec<usize>,
    pub columns: Vec<PointSet>,
    /// `entries[c][r]`.
    pub entries: Vec<Vec<bool>>,
}

impl ReesMatrix {
    /// Rows are points, columns are the nonempty open sets, and the entry is
    /// 1 when the point lies in the open set.
    pub fn from_design(x: &Pbd) -> Self {
        let rows: Vec<usize> = x.points().to_vec();
        let columns: Vec<PointSet> = open_sets(x).into_iter().filter(|o| !o.is_empty()).collect();
        let entries = columns
            .iter()
            .map(|o| rows.iter().map(|&p| o.contains(p)).collect())
            .collect();
        ReesMatrix {
            rows,
            columns,
            entries,
        }
    }

    pub fn from_entries(entries: Vec<Vec<bool>>) -> Result<Self> {
        let r = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|c| c.len() != r) {
            return Err(Error::SizeMismatch("ragged structure matrix".into()));
        }
        Ok(ReesMatrix {
            rows: (0..r).collect(),
            columns: Vec::new(),
            entries,
        })
    }

    pub fn num_rows(&self) -> usize {
        self.entries.first().map_or(self.rows.len(), Vec::len)
    }

    pub fn num_columns(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, column: usize, row: usize) -> bool {
        self.entries[column][row]
    }

    fn column_mask(&self, c: usize) -> u128 {
        self.entries[c]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e)
            .fold(0, |m, (r, _)| m | 1 << r)
    }

    /// No repeated rows, no repeated columns.
    pub fn is_reduced(&self) -> bool {
        let cols: HashSet<&Vec<bool>> = self.entries.iter().collect();
        let rows: HashSet<Vec<bool>> = (0..self.num_rows())
            .map(|r| self.entries.iter().map(|c| c[r]).collect())
            .collect();
        cols.len() == self.num_columns() && rows.len() == self.num_rows()
    }
}

/// The structure matrix of the partial constants of `W(x)`, after checking
/// the product law `(p',O')(p,O) = (p',O)` when `p ∈ O'` and `0` otherwise
/// against composition of the actual maps.
pub fn rees_structure(x: &Pbd) -> Result<ReesMatrix> {
    let r = ReesMatrix::from_design(x);
    let v = x.v();
    let checker = MorphismChecker::new(x, x);
    let consts: Vec<Vec<PartialMap>> = r
        .columns
        .iter()
        .map(|&o| {
            r.rows
                .iter()
                .map(|&p| PartialMap::constant(v, v, p, o))
                .collect()
        })
        .collect();
    for f in consts.iter().flatten() {
        if !checker.is_morphism(f)? {
            return Err(Error::CharacterizationMismatch(format!(
                "partial constant {f} is not a morphism"
            )));
        }
    }
    let empty = PartialMap::empty(v, v);
    let bad = (0..r.num_columns()).into_par_iter().find_any(|&c| {
        (0..r.num_rows()).any(|i| {
            (0..r.num_columns()).any(|c2| {
                (0..r.num_rows()).any(|i2| {
                    let got = consts[c2][i2].after_unchecked(&consts[c][i]);
                    let want = if r.entry(c2, i) {
                        &consts[c][i2]
                    } else {
                        &empty
                    };
                    &got != want
                })
            })
        })
    });
    match bad {
        Some(c) => Err(Error::CharacterizationMismatch(format!(
            "product law fails for column {}",
            r.columns[c]
        ))),
        None => Ok(r),
    }
}

/// Number of linked pairs of the 0-simple semigroup with structure matrix
/// `r` over the trivial group.
///
/// For a reduced matrix a linked pair is fixed by its partial row map `λ`;
/// `λ` extends to one exactly when, for every column, the rows sent into
/// that column's support form the support of some column or nothing.
pub fn translational_hull_size(r: &ReesMatrix) -> Result<usize> {
    if !r.is_reduced() {
        return Err(Error::NotReduced);
    }
    let n = r.num_rows();
    if n > HULL_ROW_CAP {
        return Err(Error::TooLarge {
            what: "structure matrix rows",
            size: n,
            cap: HULL_ROW_CAP,
        });
    }
    let masks: Vec<u128> = (0..r.num_columns()).map(|c| r.column_mask(c)).collect();
    let mut allowed = vec![false; 1 << n];
    allowed[0] = true;
    for &m in &masks {
        allowed[m as usize] = true;
    }
    let total = (n + 1).pow(n as u32);
    let count = (0..total)
        .into_par_iter()
        .filter(|&code| {
            let mut c = code;
            let lambda: Vec<usize> = (0..n)
                .map(|_| {
                    let d = c % (n + 1);
                    c /= n + 1;
                    d
                })
                .collect();
            masks.iter().all(|&m| {
                let pulled = (0..n)
                    .filter(|&row| lambda[row] < n && m >> lambda[row] & 1 == 1)
                    .fold(0usize, |s, row| s | 1 << row);
                allowed[pulled]
            })
        })
        .count();
    Ok(count)
}

/// Unique 0-minimal ideal, 0-simple, acted on faithfully from both sides.
pub fn is_ggm(w: &WilsonMonoid) -> Result<bool> {
    Ok(green::is_ggm(w.monoid(), w.green()?))
}

/// Units plus a unique 0-minimal ideal that is 0-simple, and nothing else.
pub fn is_small_monoid(w: &WilsonMonoid) -> Result<bool> {
    Ok(green::is_small(w.monoid(), w.green()?))
}

fn proper_subsystems(x: &Pbd) -> Vec<PointSet> {
    let mut ys: Vec<PointSet> = subsystems(x)
        .members()
        .iter()
        .copied()
        .filter(|y| y.len() > 1 && y.len() < x.v())
        .collect();
    ys.sort_by(PointSet::canonical_cmp);
    ys
}

/// An open idempotent self-morphism whose image is a subsystem `Y` with
/// `1 < |Y| < v`. Subsystems are tried smallest first; for each, the search
/// runs over retractions fixing `Y` with values in `Y` or undefined.
pub fn find_split_idempotent(x: &Pbd) -> Result<Option<PartialMap>> {
    for y in proper_subsystems(x) {
        let inside: Vec<Option<usize>> = y.iter().map(Some).chain([None]).collect();
        let mut search = MorphismSearch::new(x, x).restrict_all(&inside);
        for p in y.iter() {
            search = search.restrict(p, &[Some(p)]);
        }
        let hit = search.find_first(|f| is_open_morphism(f, x, x).unwrap_or(false));
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// Indices of the split idempotents of `w`: open idempotents whose image is
/// a proper subsystem with more than one point.
pub fn split_idempotents(w: &WilsonMonoid) -> Result<Vec<usize>> {
    let x = &w.design;
    let checker = MorphismChecker::new(x, x);
    let mut out = Vec::new();
    for e in green::idempotents(w.monoid()) {
        let f = &w.elements[e];
        let k = f.rank();
        if k > 1 && k < x.v() && x.is_subsystem(f.image()) && checker.is_open_morphism(f)? {
            out.push(e);
        }
    }
    Ok(out)
}

/// Checks that every idempotent and every regular element of `w` has a
/// subsystem as its image.
pub fn image_of_idempotent_is_subsystem(w: &WilsonMonoid) -> Result<()> {
    let m = w.monoid();
    let mut candidates = green::idempotents(m);
    candidates.extend(w.green()?.regular_elements());
    match candidates
        .into_iter()
        .find(|&i| !w.design.is_subsystem(w.elements[i].image()))
    {
        Some(i) => Err(Error::CharacterizationMismatch(format!(
            "image of {} is not a subsystem",
            w.elements[i]
        ))),
        None => Ok(()),
    }
}

/// The automorphism group of a design, sorted.
pub fn automorphisms(x: &Pbd) -> Vec<PartialMap> {
    MorphismSearch::new(x, x).bijections().collect()
}

/// Evidence that no self-morphism has a single block as its image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockImageReport {
    pub open_sizes: Vec<usize>,
    pub subsystem_sizes: Vec<usize>,
    /// Fiber sizes `d` with `|b|·d` an open size and `|undefined| + d` a
    /// subsystem size.
    pub feasible_degrees: Vec<usize>,
    pub blocks_searched: usize,
    /// Morphisms found with image exactly a block.
    pub found: Vec<PartialMap>,
}

/// For a design with constant block size, count the uniform-fiber
/// obstruction and then search every block `b` exhaustively for a
/// morphism with values in `b` and image `b`.
pub fn search_block_image_morphisms(x: &Pbd) -> Result<BlockImageReport> {
    let k = x
        .uniform_block_size()
        .ok_or_else(|| Error::NotUniform(x.block_sizes()))?;
    let v = x.v();
    let subs = subsystems(x);
    let mut subsystem_sizes: Vec<usize> = subs.members().iter().map(|s| s.len()).collect();
    subsystem_sizes.sort_unstable();
    subsystem_sizes.dedup();
    let mut open_sizes: Vec<usize> = subsystem_sizes.iter().map(|s| v - s).collect();
    open_sizes.sort_unstable();
    let feasible_degrees = (1..=v / k)
        .filter(|&d| open_sizes.contains(&(k * d)) && subsystem_sizes.contains(&(v - k * d + d)))
        .collect();
    let mut found = Vec::new();
    for &b in x.blocks() {
        let values: Vec<Option<usize>> = b.iter().map(Some).chain([None]).collect();
        found.extend(
            MorphismSearch::new(x, x)
                .restrict_all(&values)
                .collect_filtered(|f| f.image() == b),
        );
    }
    found.sort();
    Ok(BlockImageReport {
        open_sizes,
        subsystem_sizes,
        feasible_degrees,
        blocks_searched: x.num_blocks(),
        found,
    })
}

/// Summary of a Wilson monoid for reports.
#[derive(Clone, Debug, Serialize)]
pub struct MonoidReport {
    pub size: usize,
    pub units: usize,
    pub ideal: usize,
    pub reduced: bool,
    pub ggm: bool,
    pub small: bool,
    pub wilson_type: bool,
    pub regular_j_classes: usize,
    pub j_classes: usize,
    pub hull: Option<usize>,
}

pub fn monoid_report(w: &WilsonMonoid) -> Result<MonoidReport> {
    let r = rees_structure(&w.design)?;
    let p = w.green()?;
    let hull = if r.num_rows() <= HULL_ROW_CAP {
        Some(translational_hull_size(&r)?)
    } else {
        None
    };
    Ok(MonoidReport {
        size: w.len(),
        units: w.units().len(),
        ideal: constant_ideal(w)?.len(),
        reduced: r.is_reduced(),
        ggm: is_ggm(w)?,
        small: is_small_monoid(w)?,
        wilson_type: !split_idempotents(w)?.is_empty(),
        regular_j_classes: p.regular_classes().len(),
        j_classes: p.classes().len(),
        hull,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{complete_graph, fano, near_pencil};

    fn sts3() -> Pbd {
        Pbd::trivial(3).unwrap()
    }

    #[test]
    fn trivial_system() {
        let w = enumerate_wilson(&sts3()).unwrap();
        assert_eq!(w.len(), 19);
        assert_eq!(w.units().len(), 6);
        assert_eq!(constant_ideal(&w).unwrap().len(), 13);
        assert!(is_small_monoid(&w).unwrap());
        assert!(is_ggm(&w).unwrap());
        let r = rees_structure(&sts3()).unwrap();
        assert_eq!((r.num_rows(), r.num_columns()), (3, 4));
        assert_eq!(translational_hull_size(&r).unwrap(), 19);
    }

    #[test]
    fn complete_graph_gives_all_partial_maps() {
        let x = complete_graph(4).unwrap();
        let w = enumerate_wilson(&x).unwrap();
        assert_eq!(w.len(), 625);
        assert!(is_ggm(&w).unwrap());
        assert!(find_split_idempotent(&x).unwrap().is_some());
    }

    #[test]
    fn one_by_one_hull() {
        let r = ReesMatrix::from_entries(vec![vec![true]]).unwrap();
        assert_eq!(translational_hull_size(&r).unwrap(), 2);
        let dup = ReesMatrix::from_entries(vec![vec![true], vec![true]]).unwrap();
        assert_eq!(translational_hull_size(&dup), Err(Error::NotReduced));
    }

    #[test]
    fn near_pencil_hull_matches_monoid() {
        let x = near_pencil(3).unwrap();
        let w = enumerate_wilson(&x).unwrap();
        let r = rees_structure(&x).unwrap();
        assert!(r.is_reduced());
        assert_eq!(translational_hull_size(&r).unwrap(), w.len());
        image_of_idempotent_is_subsystem(&w).unwrap();
    }

    #[test]
    fn too_large() {
        let x = Pbd::trivial(10).unwrap();
        assert!(matches!(enumerate_wilson(&x), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn fano_split_idempotent_is_a_projection() {
        let x = fano();
        let e = find_split_idempotent(&x)
            .unwrap()
            .expect("projection onto a line");
        assert_eq!(e.rank(), 3);
        assert!(x.is_block(e.image()));
        assert_eq!(e.after(&e).unwrap(), e);
    }
}
