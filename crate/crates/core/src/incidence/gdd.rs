use super::{lex_cmp, Pbd};
use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};

/// A group divisible design: a partition of the points into groups plus a
/// block family, with every pair of distinct points in exactly one group or
/// exactly one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gdd {
    v: usize,
    groups: Vec<PointSet>,
    blocks: Vec<PointSet>,
}

impl Gdd {
    pub fn new(v: usize, groups: Vec<PointSet>, blocks: Vec<PointSet>) -> Result<Gdd> {
        if v > MAX_POINTS {
            return Err(Error::TooLarge {
                what: "point count",
                size: v,
                cap: MAX_POINTS,
            });
        }
        let all = PointSet::full(v);
        let mut seen = PointSet::EMPTY;
        for g in &groups {
            if g.is_empty() || !g.is_subset(all) {
                return Err(Error::BadParams(format!(
                    "group {g} is empty or out of range"
                )));
            }
            if let Some(p) = g.intersection(seen).min() {
                return Err(Error::BadParams(format!("point {p} lies in two groups")));
            }
            seen = seen.union(*g);
        }
        if let Some(p) = all.difference(seen).min() {
            return Err(Error::BadParams(format!("point {p} lies in no group")));
        }
        for b in &blocks {
            if !b.is_subset(all) {
                return Err(Error::BadParams(format!("block {b} out of range")));
            }
            if b.len() < 2 {
                return Err(Error::BlockTooSmall(b.to_vec()));
            }
        }
        let mut cover = vec![0u8; v * v];
        let mut mark = |s: &PointSet| {
            let m = s.to_vec();
            for (i, &p) in m.iter().enumerate() {
                for &q in &m[i + 1..] {
                    cover[p * v + q] += 1;
                }
            }
        };
        groups.iter().for_each(&mut mark);
        blocks.iter().for_each(&mut mark);
        for p in 0..v {
            for q in p + 1..v {
                match cover[p * v + q] {
                    1 => {}
                    0 => return Err(Error::GddAxiomViolation(p, q, "pair in no group or block")),
                    _ => {
                        return Err(Error::GddAxiomViolation(
                            p,
                            q,
                            "pair in more than one group or block",
                        ))
                    }
                }
            }
        }
        let mut groups = groups;
        let mut blocks = blocks;
        groups.sort_by(lex_cmp);
        blocks.sort_by(lex_cmp);
        Ok(Gdd { v, groups, blocks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn groups(&self) -> &[PointSet] {
        &self.groups
    }

    pub fn blocks(&self) -> &[PointSet] {
        &self.blocks
    }

    /// True iff every block meets every group in exactly one point.
    pub fn every_block_transversal(&self) -> bool {
        self.blocks.iter().all(|b| {
            b.len() == self.groups.len()
                && self.groups.iter().all(|g| b.intersection(*g).len() == 1)
        })
    }

    /// `Some((k, m))` if this is a TD(k, m): `k` groups of size `m`, all
    /// blocks transversals of size `k`.
    pub fn transversal_design_params(&self) -> Option<(usize, usize)> {
        let k = self.groups.len();
        let m = self.groups.first()?.len();
        (self.groups.iter().all(|g| g.len() == m) && self.every_block_transversal())
            .then_some((k, m))
    }

    /// Relabel points `p -> map[p]` onto `0..new_v`.
    pub fn relabel(&self, map: &[usize], new_v: usize) -> Result<Gdd> {
        let apply = |s: &PointSet| s.iter().map(|p| map[p]).collect::<PointSet>();
        Gdd::new(
            new_v,
            self.groups.iter().map(apply).collect(),
            self.blocks.iter().map(apply).collect(),
        )
    }
}

/// The PBD obtained by promoting every group with at least two points to a
/// block.
pub fn gdd_to_pbd(g: &Gdd) -> Result<Pbd> {
    let blocks = g
        .blocks
        .iter()
        .chain(g.groups.iter().filter(|gr| gr.len() >= 2))
        .copied()
        .collect();
    Pbd::from_sets(g.v, blocks)
}

/// View a PBD with a distinguished family of pairwise disjoint blocks as a
/// GDD: the distinguished blocks become groups and every uncovered point
/// becomes a singleton group.
pub fn pbd_to_gdd(x: &Pbd, distinguished: &[PointSet]) -> Result<Gdd> {
    let mut covered = PointSet::EMPTY;
    for d in distinguished {
        if !x.is_block(*d) {
            return Err(Error::BadParams(format!("{d} is not a block")));
        }
        if !d.is_disjoint(covered) {
            return Err(Error::BadParams("distinguished blocks overlap".into()));
        }
        covered = covered.union(*d);
    }
    let mut groups = distinguished.to_vec();
    groups.extend(
        x.points()
            .difference(covered)
            .iter()
            .map(PointSet::singleton),
    );
    let blocks = x
        .blocks()
        .iter()
        .copied()
        .filter(|b| !distinguished.contains(b))
        .collect();
    Gdd::new(x.v(), groups, blocks)
}

/// An `m x m` array over the symbols `0..m` in which every symbol occurs
/// once in each row and each column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    /// Validate a row-major list of rows.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<LatinSquare> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::NotLatin("empty square".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::NotLatin(format!("row {i} has length {}", row.len())));
            }
            let set: PointSet = row.iter().collect();
            if set != PointSet::full(m) {
                return Err(Error::NotLatin(format!(
                    "row {i} is not a permutation of 0..{m}"
                )));
            }
        }
        for j in 0..m {
            let set: PointSet = rows.iter().map(|r| r[j]).collect();
            if set != PointSet::full(m) {
                return Err(Error::NotLatin(format!(
                    "column {j} is not a permutation of 0..{m}"
                )));
            }
        }
        Ok(LatinSquare {
            order: m,
            cells: rows.concat(),
        })
    }

    /// The Cayley table of the cyclic group of order `m`.
    pub fn cyclic(m: usize) -> LatinSquare {
        assert!((1..=MAX_POINTS).contains(&m));
        let cells = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i + j) % m))
            .collect();
        LatinSquare { order: m, cells }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.order + col]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(|r| r.to_vec()).collect()
    }
}

/// The transversal design TD(3, m) of a Latin square.
///
/// Row `i` is point `i`, column `j` is point `m + j` and symbol `s` is point
/// `2m + s`; the three groups are these three ranges and the blocks are the
/// triples `{i, m + j, 2m + L(i, j)}`.
pub fn td3_from_latin(l: &LatinSquare) -> Result<Gdd> {
    let m = l.order();
    if m < 2 {
        return Err(Error::BadParams("Latin square of order < 2".into()));
    }
    let groups = (0..3).map(|g| (g * m..(g + 1) * m).collect()).collect();
    let blocks = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| PointSet::from_iter([i, m + j, 2 * m + l.get(i, j)]))
        .collect();
    Gdd::new(3 * m, groups, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latin_validation() {
        assert!(LatinSquare::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(LatinSquare::new(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(LatinSquare::new(vec![vec![0, 1], vec![1]]).is_err());
        let c = LatinSquare::cyclic(5);
        assert_eq!(LatinSquare::new(c.rows()).unwrap(), c);
    }

    #[test]
    fn td_small() {
        let g = td3_from_latin(&LatinSquare::cyclic(2)).unwrap();
        assert_eq!(g.v(), 6);
        assert_eq!(g.blocks().len(), 4);
        assert_eq!(g.transversal_design_params(), Some((3, 2)));
        let x = gdd_to_pbd(&g).unwrap();
        assert_eq!(x.num_blocks(), 7);
        assert_eq!(x.block_sizes(), vec![2, 3]);
        assert_eq!(pbd_to_gdd(&x, g.groups()).unwrap(), g);
    }

    #[test]
    fn gdd_rejects_double_cover() {
        let groups = vec![PointSet::from_iter([0, 1]), PointSet::singleton(2)];
        let blocks = vec![PointSet::from_iter([0, 1, 2])];
        assert!(matches!(
            Gdd::new(3, groups, blocks),
            Err(Error::GddAxiomViolation(0, 1, _))
        ));
    }
}
