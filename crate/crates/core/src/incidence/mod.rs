//! Pairwise balanced designs, group divisible designs and Latin squares.
//!
//! A [`Pbd`] is validated on construction: every pair of distinct points lies
//! in exactly one block, blocks have at least two points, and the three
//! degenerate shapes (at most one point, no block at all, a single block
//! equal to the whole point set) are rejected. The whole-set case can be
//! admitted through [`Pbd::new_allow_degenerate`], which exists because the
//! three-point system with one block is a useful morphism target.

mod construct;
mod format;
mod gdd;

pub use construct::*;
pub use format::{read_gdd, read_pbd, read_pbd_allow_degenerate, write_gdd, write_pbd, DesignFile};
pub use gdd::{gdd_to_pbd, pbd_to_gdd, td3_from_latin, Gdd, LatinSquare};

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};

const NO_LINE: u16 = u16::MAX;

/// A validated pairwise balanced design on the points `0..v`.
///
/// Blocks are kept in canonical order (lexicographic on sorted members),
/// so two designs are equal exactly when their block families are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pbd {
    v: usize,
    blocks: Vec<PointSet>,
    /// `line[p * v + q]` is the index of the block through `p` and `q`.
    line: Vec<u16>,
}

/// Validate a raw block list as a PBD on `v` points.
pub fn validate_pbd<B, I>(v: usize, raw_blocks: I) -> Result<Pbd>
where
    I: IntoIterator<Item = B>,
    B: IntoIterator<Item = usize>,
{
    Pbd::new(v, raw_blocks)
}

/// Compare two block lists by their sorted member lists.
pub(crate) fn lex_cmp(a: &PointSet, b: &PointSet) -> std::cmp::Ordering {
    a.iter().cmp(b.iter())
}

impl Pbd {
    pub fn new<B, I>(v: usize, raw_blocks: I) -> Result<Pbd>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = usize>,
    {
        Self::build(v, collect_blocks(v, raw_blocks)?, false)
    }

    /// Like [`Pbd::new`] but also admits the single-block system `(V, {V})`
    /// for `v >= 2`.
    pub fn new_allow_degenerate<B, I>(v: usize, raw_blocks: I) -> Result<Pbd>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = usize>,
    {
        Self::build(v, collect_blocks(v, raw_blocks)?, true)
    }

    pub fn from_sets(v: usize, blocks: Vec<PointSet>) -> Result<Pbd> {
        Self::new(v, blocks)
    }

    /// The trivial design with one block on `v >= 2` points.
    pub fn trivial(v: usize) -> Result<Pbd> {
        Self::new_allow_degenerate(v, [(0..v).collect::<Vec<_>>()])
    }

    fn build(v: usize, mut blocks: Vec<PointSet>, allow_degenerate: bool) -> Result<Pbd> {
        if v <= 1 {
            return Err(Error::DegenerateCase("fewer than two points"));
        }
        if blocks.is_empty() {
            return Err(Error::DegenerateCase("no blocks"));
        }
        if blocks.len() == 1 && blocks[0] == PointSet::full(v) && !allow_degenerate {
            return Err(Error::DegenerateCase("single block equal to the point set"));
        }
        blocks.sort_by(lex_cmp);
        let mut line = vec![NO_LINE; v * v];
        let mut first_double: Option<(usize, usize)> = None;
        for (bi, b) in blocks.iter().enumerate() {
            let members = b.to_vec();
            for (i, &p) in members.iter().enumerate() {
                for &q in &members[i + 1..] {
                    if line[p * v + q] != NO_LINE && first_double.is_none_or(|d| (p, q) < d) {
                        first_double = Some((p, q));
                    }
                    line[p * v + q] = bi as u16;
                    line[q * v + p] = bi as u16;
                }
            }
        }
        if let Some((p, q)) = first_double {
            return Err(Error::PairDoubleCovered(p, q));
        }
        for p in 0..v {
            for q in p + 1..v {
                if line[p * v + q] == NO_LINE {
                    return Err(Error::PairUncovered(p, q));
                }
            }
        }
        Ok(Pbd { v, blocks, line })
    }

    /// Number of points.
    pub fn v(&self) -> usize {
        self.v
    }

    pub fn points(&self) -> PointSet {
        PointSet::full(self.v)
    }

    pub fn blocks(&self) -> &[PointSet] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks as sorted member lists.
    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.to_vec()).collect()
    }

    /// Index of the block through two distinct points.
    pub fn line_index(&self, p: usize, q: usize) -> usize {
        debug_assert!(p != q);
        self.line[p * self.v + q] as usize
    }

    /// The block through two distinct points.
    pub fn line(&self, p: usize, q: usize) -> PointSet {
        self.blocks[self.line_index(p, q)]
    }

    pub fn blocks_through(&self, p: usize) -> impl Iterator<Item = PointSet> + '_ {
        self.blocks.iter().copied().filter(move |b| b.contains(p))
    }

    /// Distinct block sizes, ascending.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// The common block size, if all blocks have the same size.
    pub fn uniform_block_size(&self) -> Option<usize> {
        match self.block_sizes().as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    /// True for the single-block system only constructible via the escape
    /// hatch.
    pub fn is_degenerate(&self) -> bool {
        self.blocks.len() == 1
    }

    /// True iff every block has three points.
    pub fn is_sts(&self) -> bool {
        self.uniform_block_size() == Some(3)
    }

    pub fn is_block(&self, s: PointSet) -> bool {
        s.len() >= 2 && {
            let mut it = s.iter();
            let p = it.next().unwrap();
            let q = it.next().unwrap();
            self.line(p, q) == s
        }
    }

    /// True iff the three distinct points lie in a common block.
    pub fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        self.line(a, b).contains(c)
    }

    /// Apply a relabeling `p -> perm[p]` of the points.
    pub fn relabel(&self, perm: &[usize]) -> Result<Pbd> {
        if perm.len() != self.v {
            return Err(Error::SizeMismatch(format!(
                "relabeling of length {} for {} points",
                perm.len(),
                self.v
            )));
        }
        let blocks: Vec<PointSet> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|p| perm[p]).collect())
            .collect();
        Self::build(self.v, blocks, self.is_degenerate())
    }

    /// Smallest set containing `seed` that contains the block through any two
    /// of its points.
    pub fn pair_closure(&self, seed: PointSet) -> PointSet {
        let mut closed = PointSet::EMPTY;
        let mut pending = seed;
        while let Some(p) = pending.min() {
            pending.remove(p);
            for q in closed.iter() {
                let l = self.line(p, q);
                pending = pending.union(l.difference(closed).without(p));
            }
            closed.insert(p);
        }
        closed
    }

    /// True iff `s` contains the block through any two of its points.
    pub fn is_subsystem(&self, s: PointSet) -> bool {
        let members = s.to_vec();
        members.iter().enumerate().all(|(i, &p)| {
            members[i + 1..]
                .iter()
                .all(|&q| self.line(p, q).is_subset(s))
        })
    }
}

fn collect_blocks<B, I>(v: usize, raw_blocks: I) -> Result<Vec<PointSet>>
where
    I: IntoIterator<Item = B>,
    B: IntoIterator<Item = usize>,
{
    if v > MAX_POINTS {
        return Err(Error::TooLarge {
            what: "point count",
            size: v,
            cap: MAX_POINTS,
        });
    }
    let mut out = Vec::new();
    for raw in raw_blocks {
        let members: Vec<usize> = raw.into_iter().collect();
        if let Some(&p) = members.iter().find(|&&p| p >= v) {
            return Err(Error::PointOutOfRange { point: p, size: v });
        }
        let set: PointSet = members.iter().collect();
        if set.len() < 2 {
            return Err(Error::BlockTooSmall(set.to_vec()));
        }
        out.push(set);
    }
    Ok(out)
}

impl std::fmt::Debug for Pbd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pbd")
            .field("v", &self.v)
            .field("blocks", &self.block_lists())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_validates() {
        let lines = [
            [0, 1, 3],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 0],
            [5, 6, 1],
            [6, 0, 2],
        ];
        let x = validate_pbd(7, lines).unwrap();
        assert_eq!(x.num_blocks(), 7);
        assert_eq!(x.uniform_block_size(), Some(3));
        assert_eq!(x.blocks()[0].to_vec(), vec![0, 1, 3]);
    }

    #[test]
    fn degenerate_and_uncovered() {
        assert_eq!(
            validate_pbd(3, [vec![0, 1, 2]]).unwrap_err(),
            Error::DegenerateCase("single block equal to the point set")
        );
        assert_eq!(
            validate_pbd(4, [vec![0, 1, 2], vec![0, 3]]).unwrap_err(),
            Error::PairUncovered(1, 3)
        );
        assert!(matches!(
            validate_pbd(1, Vec::<Vec<usize>>::new()),
            Err(Error::DegenerateCase(_))
        ));
        assert!(matches!(
            validate_pbd(4, Vec::<Vec<usize>>::new()),
            Err(Error::DegenerateCase(_))
        ));
        assert_eq!(
            validate_pbd(3, [vec![0, 1, 2], vec![0, 1]]).unwrap_err(),
            Error::PairDoubleCovered(0, 1)
        );
        assert_eq!(
            validate_pbd(3, [vec![0], vec![1, 2]]).unwrap_err(),
            Error::BlockTooSmall(vec![0])
        );
        assert!(matches!(
            validate_pbd(3, [vec![0, 5]]).unwrap_err(),
            Error::PointOutOfRange { point: 5, size: 3 }
        ));
    }

    #[test]
    fn escape_hatch() {
        let y = Pbd::trivial(3).unwrap();
        assert!(y.is_degenerate());
        assert_eq!(y.line(0, 2).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn pair_closure_on_fano() {
        let lines = [
            [0, 1, 3],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 0],
            [5, 6, 1],
            [6, 0, 2],
        ];
        let x = validate_pbd(7, lines).unwrap();
        assert_eq!(
            x.pair_closure(PointSet::from_iter([0, 1])).to_vec(),
            vec![0, 1, 3]
        );
        assert_eq!(x.pair_closure(PointSet::from_iter([0, 1, 2])), x.points());
        assert!(x.is_subsystem(PointSet::from_iter([1, 2, 4])));
        assert!(!x.is_subsystem(PointSet::from_iter([1, 2])));
    }
}
