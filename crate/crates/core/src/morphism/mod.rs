//! Wilson morphisms between designs.
//!
//! A partial map `f: X -> Y` is a morphism when the Wilson preimage
//! `f⁻¹(F) ∪ (points where f is undefined)` of every subsystem `F` of `Y`
//! is a subsystem of `X`. Two equivalent tests are provided: the open-set
//! form (open domain, and preimages of open sets are open) and the blockwise
//! form (open domain, and each block is either collapsed to at most one
//! point or mapped injectively into a block).

mod map;

pub use map::{PartialMap, Partition, UNDEF};

use std::collections::HashSet;

use crate::complex::subsystems;
use crate::error::{Error, Result};
use crate::incidence::{sts19_layout, AffineSpace, Gdd, LatinSquare, Pbd, ProjectiveSpace};
use crate::pointset::PointSet;

/// `f⁻¹(b)` together with the points where `f` is undefined.
pub fn wilson_preimage(f: &PartialMap, b: PointSet) -> PointSet {
    f.preimage(b).union(f.undefined_set())
}

/// Complements of subsystems, in canonical order.
pub fn open_sets(x: &Pbd) -> Vec<PointSet> {
    let all = x.points();
    let mut opens: Vec<PointSet> = subsystems(x)
        .members()
        .iter()
        .map(|s| all.difference(*s))
        .collect();
    opens.sort_by(PointSet::canonical_cmp);
    opens
}

/// True iff `s` is the complement of a subsystem.
pub fn is_open(x: &Pbd, s: PointSet) -> bool {
    x.is_subsystem(x.points().difference(s))
}

/// Precomputed data for testing many maps between one pair of designs.
pub struct MorphismChecker<'a> {
    x: &'a Pbd,
    y: &'a Pbd,
    x_subsystems: SubsystemLookup,
    y_subsystems: Vec<PointSet>,
    y_opens: Vec<PointSet>,
}

enum SubsystemLookup {
    Table(Vec<bool>),
    Set(HashSet<PointSet>),
}

impl SubsystemLookup {
    fn new(x: &Pbd) -> Self {
        let members = subsystems(x);
        if x.v() <= 16 {
            let mut t = vec![false; 1 << x.v()];
            for s in members.members() {
                t[s.bits() as usize] = true;
            }
            SubsystemLookup::Table(t)
        } else {
            SubsystemLookup::Set(members.members().iter().copied().collect())
        }
    }

    fn contains(&self, s: PointSet) -> bool {
        match self {
            SubsystemLookup::Table(t) => t[s.bits() as usize],
            SubsystemLookup::Set(h) => h.contains(&s),
        }
    }
}

impl<'a> MorphismChecker<'a> {
    pub fn new(x: &'a Pbd, y: &'a Pbd) -> Self {
        let y_subsystems = subsystems(y).members().to_vec();
        let y_opens = y_subsystems
            .iter()
            .map(|s| y.points().difference(*s))
            .collect();
        MorphismChecker {
            x,
            y,
            x_subsystems: SubsystemLookup::new(x),
            y_subsystems,
            y_opens,
        }
    }

    fn check_shape(&self, f: &PartialMap) -> Result<()> {
        if f.source_size() != self.x.v() || f.target_size() != self.y.v() {
            return Err(Error::SizeMismatch(format!(
                "map {} -> {} between designs on {} and {} points",
                f.source_size(),
                f.target_size(),
                self.x.v(),
                self.y.v()
            )));
        }
        Ok(())
    }

    fn x_open(&self, s: PointSet) -> bool {
        self.x_subsystems.contains(self.x.points().difference(s))
    }

    /// Open-set form: the domain is open and `f⁻¹(O)` is open for every
    /// open `O` of the target.
    pub fn is_morphism(&self, f: &PartialMap) -> Result<bool> {
        self.check_shape(f)?;
        Ok(self.x_open(f.domain()) && self.y_opens.iter().all(|o| self.x_open(f.preimage(*o))))
    }

    /// Definition: the Wilson preimage of every subsystem is a subsystem.
    pub fn is_morphism_by_definition(&self, f: &PartialMap) -> Result<bool> {
        self.check_shape(f)?;
        Ok(self
            .y_subsystems
            .iter()
            .all(|s| self.x_subsystems.contains(wilson_preimage(f, *s))))
    }

    /// Blockwise form: the domain is open, and on every block `B` either
    /// `|f(B)| <= 1`, or `f` is defined and one-to-one on `B` with `f(B)`
    /// inside a block.
    pub fn is_morphism_blockwise(&self, f: &PartialMap) -> Result<bool> {
        self.check_shape(f)?;
        Ok(self.x_open(f.domain()) && self.x.blocks().iter().all(|b| self.block_ok(f, *b)))
    }

    fn block_ok(&self, f: &PartialMap, b: PointSet) -> bool {
        let img = f.image_of(b);
        if img.len() <= 1 {
            return true;
        }
        if !f.is_injective_on(b) {
            return false;
        }
        let mut it = img.iter();
        let (p, q) = (it.next().unwrap(), it.next().unwrap());
        img.is_subset(self.y.line(p, q))
    }

    /// A morphism is open when it maps subsystems onto subsystems;
    /// equivalently, every block goes to at most one point or onto a block.
    /// Both tests are run and must agree.
    pub fn is_open_morphism(&self, f: &PartialMap) -> Result<bool> {
        if !self.is_morphism_blockwise(f)? {
            return Err(Error::NotAMorphism);
        }
        let blockwise = self.x.blocks().iter().all(|b| {
            let img = f.image_of(*b);
            img.len() <= 1 || self.y.is_block(img)
        });
        let by_subsystems = subsystems(self.x)
            .members()
            .iter()
            .all(|s| self.y.is_subsystem(f.image_of(*s)));
        if blockwise != by_subsystems {
            return Err(Error::CharacterizationMismatch(format!(
                "open morphism test: blockwise {blockwise}, subsystem images {by_subsystems} for {f}"
            )));
        }
        Ok(blockwise)
    }
}

pub fn is_morphism(f: &PartialMap, x: &Pbd, y: &Pbd) -> Result<bool> {
    MorphismChecker::new(x, y).is_morphism(f)
}

pub fn is_morphism_by_definition(f: &PartialMap, x: &Pbd, y: &Pbd) -> Result<bool> {
    MorphismChecker::new(x, y).is_morphism_by_definition(f)
}

pub fn is_morphism_blockwise(f: &PartialMap, x: &Pbd, y: &Pbd) -> Result<bool> {
    MorphismChecker::new(x, y).is_morphism_blockwise(f)
}

pub fn is_open_morphism(f: &PartialMap, x: &Pbd, y: &Pbd) -> Result<bool> {
    MorphismChecker::new(x, y).is_open_morphism(f)
}

/// `g ∘ f`: apply `f` first.
pub fn compose(g: &PartialMap, f: &PartialMap) -> Result<PartialMap> {
    g.after(f)
}

/// The partition of the domain of `f` by image value.
pub fn kernel(f: &PartialMap) -> Partition {
    f.kernel()
}

/// The common fiber size of a self-morphism of a design with constant block
/// size. Unequal fibers are reported as an error.
pub fn degree(f: &PartialMap, x: &Pbd) -> Result<usize> {
    x.uniform_block_size()
        .ok_or_else(|| Error::NotUniform(x.block_sizes()))?;
    if !is_morphism_blockwise(f, x, x)? {
        return Err(Error::NotAMorphism);
    }
    let sizes: Vec<usize> = f.kernel().classes().iter().map(|c| c.len()).collect();
    match sizes.first() {
        None => Err(Error::EmptyImage),
        Some(&d) if sizes.iter().all(|&s| s == d) => Ok(d),
        Some(_) => Err(Error::NonUniformFibers(sizes)),
    }
}

/// The GDD carried by the preimage of a block, with its points renumbered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberGdd {
    /// The GDD on `0..labels.len()`.
    pub gdd: Gdd,
    /// `labels[i]` is the point of the source design numbered `i`.
    pub labels: Vec<usize>,
}

/// For a morphism `f: X -> Y` and a block `b` of `Y`: the points `Z = f⁻¹(b)`,
/// grouped by fiber, with the blocks of `X` inside `Z` that meet each fiber
/// at most once.
pub fn fiber_gdd(f: &PartialMap, x: &Pbd, y: &Pbd, b: PointSet) -> Result<FiberGdd> {
    if !is_morphism_blockwise(f, x, y)? {
        return Err(Error::NotAMorphism);
    }
    if !y.is_block(b) {
        return Err(Error::BadParams(format!(
            "{b} is not a block of the target"
        )));
    }
    let z = f.preimage(b);
    if z.is_empty() {
        return Err(Error::EmptyFiber);
    }
    let groups: Vec<PointSet> = b
        .intersection(f.image())
        .iter()
        .map(|t| f.preimage(PointSet::singleton(t)))
        .collect();
    let blocks: Vec<PointSet> = x
        .blocks()
        .iter()
        .copied()
        .filter(|bl| bl.is_subset(z) && groups.iter().all(|g| bl.intersection(*g).len() <= 1))
        .collect();
    let labels = z.to_vec();
    let mut index = vec![usize::MAX; x.v()];
    for (i, &p) in labels.iter().enumerate() {
        index[p] = i;
    }
    let relabel = |s: &PointSet| s.iter().map(|p| index[p]).collect::<PointSet>();
    let gdd = Gdd::new(
        labels.len(),
        groups.iter().map(relabel).collect(),
        blocks.iter().map(relabel).collect(),
    )?;
    Ok(FiberGdd { gdd, labels })
}

/// The morphism from the Wilson-type STS(19) onto the trivial three-point
/// system: rows go to 0, columns to 1, symbols to 2, and the hub point is
/// left undefined.
pub fn canonical_sts19_morphism(l: &LatinSquare) -> Result<PartialMap> {
    if l.order() != 6 {
        return Err(Error::BadParams(format!(
            "need a Latin square of order 6, got {}",
            l.order()
        )));
    }
    let values: Vec<Option<usize>> = (0..19)
        .map(|p| {
            if sts19_layout::ROWS.contains(&p) {
                Some(0)
            } else if sts19_layout::COLS.contains(&p) {
                Some(1)
            } else if sts19_layout::SYMBOLS.contains(&p) {
                Some(2)
            } else {
                None
            }
        })
        .collect();
    PartialMap::new(3, &values)
}

/// The partial self-map of PG(n, q) induced by a square matrix: a point is
/// sent to the image of its coordinate vector, and is undefined where that
/// image is zero.
pub fn projective_matrix_map(space: &ProjectiveSpace, matrix: &[Vec<usize>]) -> Result<PartialMap> {
    let dim = space.n + 1;
    if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
        return Err(Error::SizeMismatch(format!(
            "expected a {dim}x{dim} matrix"
        )));
    }
    let f = &space.field;
    let values: Vec<Option<usize>> = space
        .coords
        .iter()
        .map(|c| {
            let img: Vec<usize> = matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(c)
                        .fold(0, |acc, (&m, &x)| f.add(acc, f.mul(m, x)))
                })
                .collect();
            space.point_of(&img)
        })
        .collect();
    PartialMap::new(space.coords.len(), &values)
}

/// The total self-map `x ↦ Mx + w` of AG(n, q).
pub fn affine_map(
    space: &AffineSpace,
    matrix: &[Vec<usize>],
    shift: &[usize],
) -> Result<PartialMap> {
    let n = space.n;
    if matrix.len() != n || matrix.iter().any(|r| r.len() != n) || shift.len() != n {
        return Err(Error::SizeMismatch(format!(
            "expected a {n}x{n} matrix and a shift of length {n}"
        )));
    }
    let f = &space.field;
    let v = space.design.v();
    let values: Vec<Option<usize>> = (0..v)
        .map(|p| {
            let c = space.coords(p);
            let img: Vec<usize> = matrix
                .iter()
                .zip(shift)
                .map(|(row, &s)| {
                    row.iter()
                        .zip(&c)
                        .fold(s, |acc, (&m, &x)| f.add(acc, f.mul(m, x)))
                })
                .collect();
            Some(space.point_of(&img))
        })
        .collect();
    PartialMap::new(v, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{fano, near_pencil};

    #[test]
    fn preimages() {
        let e = PartialMap::empty(4, 4);
        assert_eq!(wilson_preimage(&e, PointSet::EMPTY), PointSet::full(4));
        let id = PartialMap::identity(4);
        assert_eq!(
            wilson_preimage(&id, PointSet::from_iter([1, 2])).to_vec(),
            vec![1, 2]
        );
        let f = PartialMap::new(4, &[Some(0), Some(0), None, Some(1)]).unwrap();
        assert_eq!(wilson_preimage(&f, PointSet::EMPTY).to_vec(), vec![2]);
    }

    #[test]
    fn fano_basics() {
        let x = fano();
        let id = PartialMap::identity(7);
        assert!(is_morphism(&id, &x, &x).unwrap());
        assert!(is_open_morphism(&id, &x, &x).unwrap());
        assert_eq!(degree(&id, &x).unwrap(), 1);
        let all = PartialMap::constant(7, 7, 3, x.points());
        assert_eq!(degree(&all, &x).unwrap(), 7);
        assert_eq!(open_sets(&x).len(), 16);
        // a constant with a non-open domain
        let bad = PartialMap::constant(7, 7, 0, PointSet::singleton(0));
        assert!(!is_morphism(&bad, &x, &x).unwrap());
        assert!(matches!(
            degree(&PartialMap::empty(7, 7), &x),
            Err(Error::EmptyImage)
        ));
    }

    #[test]
    fn non_open_idempotent() {
        let x = near_pencil(3).unwrap();
        let f = PartialMap::new(4, &[Some(1), Some(1), Some(2), Some(3)]).unwrap();
        assert!(is_morphism(&f, &x, &x).unwrap());
        assert!(is_morphism_blockwise(&f, &x, &x).unwrap());
        assert!(!is_open_morphism(&f, &x, &x).unwrap());
        let g = PartialMap::new(4, &[Some(0), Some(1), Some(1), Some(1)]).unwrap();
        assert!(is_morphism_blockwise(&g, &x, &x).unwrap());
        let two_to_one = PartialMap::new(4, &[Some(0), Some(1), Some(1), Some(2)]).unwrap();
        assert!(!is_morphism_blockwise(&two_to_one, &x, &x).unwrap());
        assert!(!is_morphism(&two_to_one, &x, &x).unwrap());
        let h = PartialMap::identity(3);
        assert!(matches!(
            is_morphism(&h, &x, &x),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn rank_two_linear_map_on_fano() {
        let space = ProjectiveSpace::new(2, 2).unwrap();
        let m = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]];
        let f = projective_matrix_map(&space, &m).unwrap();
        let x = &space.design;
        assert!(is_morphism(&f, x, x).unwrap());
        assert_eq!(f.domain().len(), 6);
        assert_eq!(degree(&f, x).unwrap(), 2);
        let b = f.image();
        assert!(x.is_block(b));
        let fg = fiber_gdd(&f, x, x, b).unwrap();
        assert_eq!(fg.gdd.transversal_design_params(), Some((3, 2)));
    }

    #[test]
    fn affine_maps_of_the_nine_point_plane() {
        let space = AffineSpace::new(2, 3).unwrap();
        let x = &space.design;
        let shift = affine_map(&space, &[vec![1, 0], vec![0, 1]], &[1, 2]).unwrap();
        assert!(is_morphism(&shift, x, x).unwrap());
        assert_eq!(shift.rank(), 9);
        let fold = affine_map(&space, &[vec![1, 1], vec![0, 0]], &[0, 0]).unwrap();
        assert!(is_open_morphism(&fold, x, x).unwrap());
        assert_eq!(degree(&fold, x).unwrap(), 3);
    }
}
