//! Named constructions.

use super::{gdd_to_pbd, td3_from_latin, LatinSquare, Pbd};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pointset::{PointSet, MAX_POINTS};

/// The 2-PBD on `n >= 3` points: every pair is a block.
pub fn complete_graph(n: usize) -> Result<Pbd> {
    if n < 3 {
        return Err(Error::DegenerateCase(
            "complete graph on fewer than 3 points",
        ));
    }
    Pbd::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| [i, j])))
}

/// The near pencil on `n + 1` points: the block `{1, .., n}` and every pair
/// `{0, i}`.
pub fn near_pencil(n: usize) -> Result<Pbd> {
    if n < 3 {
        return Err(Error::DegenerateCase("near pencil needs n >= 3"));
    }
    let mut blocks: Vec<Vec<usize>> = vec![(1..=n).collect()];
    blocks.extend((1..=n).map(|i| vec![0, i]));
    Pbd::new(n + 1, blocks)
}

/// Build a design from a "line through two points" rule. Each pair not yet
/// covered gets the line returned by `line_of`.
fn from_line_rule(v: usize, line_of: impl Fn(usize, usize) -> PointSet) -> Result<Pbd> {
    let mut covered = vec![false; v * v];
    let mut blocks = Vec::new();
    for p in 0..v {
        for q in p + 1..v {
            if covered[p * v + q] {
                continue;
            }
            let l = line_of(p, q);
            for a in l.iter() {
                for b in l.iter() {
                    covered[a * v + b] = true;
                }
            }
            blocks.push(l);
        }
    }
    Pbd::from_sets(v, blocks)
}

/// The projective space PG(n, q) with its coordinates.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    pub n: usize,
    pub field: Field,
    /// Normalized homogeneous coordinates (first nonzero entry is 1) of each
    /// point, listed in lexicographic order.
    pub coords: Vec<Vec<usize>>,
    pub design: Pbd,
}

impl ProjectiveSpace {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParams(format!("projective dimension {n} < 2")));
        }
        let field = Field::new(q)?;
        let v = (0..=n).try_fold(0usize, |acc, _| acc.checked_mul(q)?.checked_add(1));
        if !v.is_some_and(|v| v <= MAX_POINTS) {
            return Err(Error::TooLarge {
                what: "projective space",
                size: v.unwrap_or(usize::MAX),
                cap: MAX_POINTS,
            });
        }
        let dim = n + 1;
        let mut coords = Vec::new();
        for lead in 0..dim {
            let free = dim - lead - 1;
            for mut code in 0..q.pow(free as u32) {
                let mut c = vec![0; dim];
                c[lead] = 1;
                for k in (lead + 1..dim).rev() {
                    c[k] = code % q;
                    code /= q;
                }
                coords.push(c);
            }
        }
        coords.sort();
        let index = |c: &[usize]| coords.binary_search_by(|x| x.as_slice().cmp(c)).unwrap();
        let normalize = |c: Vec<usize>| -> Vec<usize> {
            let lead = c.iter().find(|&&x| x != 0).copied().unwrap();
            let s = field.inv(lead);
            c.into_iter().map(|x| field.mul(s, x)).collect()
        };
        let design = from_line_rule(coords.len(), |a, b| {
            let mut l = PointSet::singleton(a);
            for t in 0..q {
                let c: Vec<usize> = coords[b]
                    .iter()
                    .zip(&coords[a])
                    .map(|(&y, &x)| field.add(y, field.mul(t, x)))
                    .collect();
                l.insert(index(&normalize(c)));
            }
            l
        })?;
        Ok(ProjectiveSpace {
            n,
            field,
            coords,
            design,
        })
    }

    /// Index of the point with the given (not necessarily normalized)
    /// nonzero coordinate vector.
    pub fn point_of(&self, c: &[usize]) -> Option<usize> {
        let lead = *c.iter().find(|&&x| x != 0)?;
        let s = self.field.inv(lead);
        let norm: Vec<usize> = c.iter().map(|&x| self.field.mul(s, x)).collect();
        self.coords.binary_search(&norm).ok()
    }
}

/// PG(n, q): one-dimensional subspaces of GF(q)^{n+1} as points, two-dimensional
/// subspaces as blocks.
pub fn projective_space(n: usize, q: usize) -> Result<Pbd> {
    Ok(ProjectiveSpace::new(n, q)?.design)
}

/// The affine space AG(n, q) with its coordinates.
#[derive(Clone, Debug)]
pub struct AffineSpace {
    pub n: usize,
    pub field: Field,
    pub design: Pbd,
}

impl AffineSpace {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParams(format!("affine dimension {n} < 2")));
        }
        let field = Field::new(q)?;
        let v = q
            .checked_pow(n as u32)
            .filter(|&v| v <= MAX_POINTS)
            .ok_or(Error::TooLarge {
                what: "affine space",
                size: q.saturating_pow(n as u32),
                cap: MAX_POINTS,
            })?;
        let design = from_line_rule(v, |a, b| {
            let (x, y) = (digits(a, q, n), digits(b, q, n));
            let dir: Vec<usize> = y
                .iter()
                .zip(&x)
                .map(|(&yi, &xi)| field.sub(yi, xi))
                .collect();
            (0..q)
                .map(|t| {
                    let c: Vec<usize> = x
                        .iter()
                        .zip(&dir)
                        .map(|(&xi, &di)| field.add(xi, field.mul(t, di)))
                        .collect();
                    undigits(&c, q)
                })
                .collect()
        })?;
        Ok(AffineSpace { n, field, design })
    }

    /// Coordinates of a point; point `p` has base-q digits `p_0, p_1, ..`
    /// (least significant first).
    pub fn coords(&self, p: usize) -> Vec<usize> {
        digits(p, self.field.order(), self.n)
    }

    pub fn point_of(&self, c: &[usize]) -> usize {
        undigits(c, self.field.order())
    }
}

fn digits(mut p: usize, q: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = p % q;
            p /= q;
            d
        })
        .collect()
}

fn undigits(c: &[usize], q: usize) -> usize {
    c.iter().rev().fold(0, |acc, &d| acc * q + d)
}

/// AG(n, q): the vectors of GF(q)^n as points and the cosets of
/// one-dimensional subspaces as blocks.
pub fn affine_space(n: usize, q: usize) -> Result<Pbd> {
    Ok(AffineSpace::new(n, q)?.design)
}

/// Hall's six-point {2,3}-PBD.
///
/// The classical labels 1..6 become 0..5, so the triples
/// `{1,2,3}, {1,5,6}, {3,4,5}` are `{0,1,2}, {0,4,5}, {2,3,4}` here; the
/// remaining six pairs are blocks of size two.
pub fn hall_plane6() -> Pbd {
    let triples = [[0, 1, 2], [0, 4, 5], [2, 3, 4]];
    from_line_rule(6, |a, b| {
        triples
            .iter()
            .map(PointSet::from_iter)
            .find(|t| t.contains(a) && t.contains(b))
            .unwrap_or_else(|| PointSet::from_iter([a, b]))
    })
    .expect("fixed design")
}

/// Remove `block` from `x` and insert a copy of `replacement`, where
/// `embedding[i]` is the point of `block` playing the role of point `i` of
/// `replacement`.
pub fn break_block(
    x: &Pbd,
    block: PointSet,
    replacement: &Pbd,
    embedding: &[usize],
) -> Result<Pbd> {
    if !x.blocks().contains(&block) {
        return Err(Error::BadParams(format!(
            "{block} is not a block of the design"
        )));
    }
    if replacement.is_degenerate() {
        return Err(Error::DegenerateCase(
            "replacement must have at least two blocks",
        ));
    }
    let image: PointSet = embedding.iter().collect();
    if embedding.len() != replacement.v() || image.len() != embedding.len() || image != block {
        return Err(Error::SizeMismatch(format!(
            "embedding of {} points is not a bijection onto the {}-point block",
            embedding.len(),
            block.len()
        )));
    }
    let mut blocks: Vec<PointSet> = x.blocks().iter().copied().filter(|b| *b != block).collect();
    blocks.extend(
        replacement
            .blocks()
            .iter()
            .map(|b| b.iter().map(|p| embedding[p]).collect::<PointSet>()),
    );
    Pbd::from_sets(x.v(), blocks).map_err(|e| Error::ResultNotPbd(Box::new(e)))
}

/// The Fano plane as PG(2, 2).
pub fn fano() -> Pbd {
    projective_space(2, 2).expect("fixed design")
}

/// The {3,7}-PBD on 21 points obtained from the Cayley table of Z_7.
pub fn pbd_z7() -> Pbd {
    gdd_to_pbd(&td3_from_latin(&LatinSquare::cyclic(7)).expect("fixed design"))
        .expect("fixed design")
}

/// Replace every block of size `k` by a copy of `replacement` (which has `k`
/// points), embedding in increasing order.
fn break_all(x: &Pbd, k: usize, replacement: &Pbd) -> Result<Pbd> {
    let big: Vec<PointSet> = x
        .blocks()
        .iter()
        .copied()
        .filter(|b| b.len() == k)
        .collect();
    big.into_iter().try_fold(x.clone(), |acc, b| {
        break_block(&acc, b, replacement, &b.to_vec())
    })
}

/// The STS(21) built from the Z_7 design by breaking its three 7-point
/// blocks into Fano planes.
pub fn sts21() -> Pbd {
    break_all(&pbd_z7(), 7, &fano()).expect("fixed design")
}

/// Point layout of [`wilson_sts19`].
pub mod sts19_layout {
    /// Rows are points `0..6`.
    pub const ROWS: std::ops::Range<usize> = 0..6;
    /// Columns are points `6..12`.
    pub const COLS: std::ops::Range<usize> = 6..12;
    /// Symbols are points `12..18`.
    pub const SYMBOLS: std::ops::Range<usize> = 12..18;
    /// The added point shared by the three Fano subsystems.
    pub const HUB: usize = 18;
}

/// An STS(19) of Wilson type from a Latin square of order 6.
///
/// Start from TD(3, 6) on rows, columns and symbols, add the hub point to
/// each group to get three 7-point blocks, and break each of those into a
/// Fano plane.
pub fn wilson_sts19(l: &LatinSquare) -> Result<Pbd> {
    if l.order() != 6 {
        return Err(Error::BadParams(format!(
            "need a Latin square of order 6, got {}",
            l.order()
        )));
    }
    let td = td3_from_latin(l)?;
    let hub = sts19_layout::HUB;
    let mut blocks: Vec<PointSet> = td.blocks().to_vec();
    blocks.extend(td.groups().iter().map(|g| g.with(hub)));
    let x = Pbd::from_sets(19, blocks)?;
    break_all(&x, 7, &fano())
}

/// Develop base blocks modulo `v` and validate the result.
pub fn cyclic_sts(v: usize, base_blocks: &[Vec<usize>]) -> Result<Pbd> {
    let mut blocks: Vec<PointSet> = base_blocks
        .iter()
        .flat_map(|b| (0..v).map(move |t| b.iter().map(|&x| (x + t) % v).collect::<PointSet>()))
        .collect();
    blocks.sort_by(super::lex_cmp);
    blocks.dedup();
    Pbd::from_sets(v, blocks).map_err(|e| Error::ResultNotPbd(Box::new(e)))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The congruence conditions a K-PBD on `v` points must satisfy:
/// `v - 1 = 0 mod gcd{k - 1}` and `v(v - 1) = 0 mod gcd{k(k - 1)}`.
pub fn necessary_conditions(k: &[usize], v: usize) -> bool {
    assert!(
        !k.is_empty() && k.iter().all(|&x| x >= 2),
        "block sizes must be >= 2"
    );
    let alpha = k.iter().fold(0, |g, &x| gcd(g, x - 1));
    let beta = k.iter().fold(0, |g, &x| gcd(g, x * (x - 1)));
    v >= 1 && (v - 1).is_multiple_of(alpha) && (v * (v - 1)).is_multiple_of(beta)
}

/// Whether a (v, k, 1)-design may have a proper subsystem of order `u`:
/// this needs `u < v` and `v >= (k - 1)u + 1`.
pub fn subsystem_bound_check(x: &Pbd, u: usize) -> Result<bool> {
    let k = x
        .uniform_block_size()
        .ok_or_else(|| Error::NotUniform(x.block_sizes()))?;
    Ok(u < x.v() && x.v() > (k - 1) * u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let k3 = complete_graph(3).unwrap();
        assert_eq!(k3.block_lists(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(complete_graph(4).unwrap().num_blocks(), 6);
        assert!(complete_graph(2).is_err());
        let np = near_pencil(3).unwrap();
        assert_eq!(
            np.block_lists(),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2, 3]]
        );
        assert_eq!(near_pencil(4).unwrap().num_blocks(), 5);
    }

    #[test]
    fn geometries() {
        let f = fano();
        assert_eq!(
            (f.v(), f.num_blocks(), f.uniform_block_size()),
            (7, 7, Some(3))
        );
        let p32 = projective_space(3, 2).unwrap();
        assert_eq!((p32.v(), p32.num_blocks()), (15, 35));
        let p23 = projective_space(2, 3).unwrap();
        assert_eq!(
            (p23.v(), p23.num_blocks(), p23.uniform_block_size()),
            (13, 13, Some(4))
        );
        let p24 = projective_space(2, 4).unwrap();
        assert_eq!((p24.v(), p24.uniform_block_size()), (21, Some(5)));
        let ag = affine_space(2, 3).unwrap();
        assert_eq!(
            (ag.v(), ag.num_blocks(), ag.uniform_block_size()),
            (9, 12, Some(3))
        );
        assert_eq!(affine_space(2, 2).unwrap(), complete_graph(4).unwrap());
        assert_eq!(affine_space(3, 2).unwrap().num_blocks(), 28);
        assert_eq!(affine_space(2, 4).unwrap().num_blocks(), 20);
        assert_eq!(affine_space(2, 9).unwrap().num_blocks(), 90);
        assert!(matches!(
            projective_space(2, 6),
            Err(Error::UnsupportedField(6))
        ));
    }

    #[test]
    fn hall_plane() {
        let h = hall_plane6();
        // three triples cover 9 of the 15 pairs, leaving 6 pair blocks
        assert_eq!(h.num_blocks(), 9);
        assert_eq!(h.blocks().iter().filter(|b| b.len() == 2).count(), 6);
        // {2,4,6} in classical labels
        assert!(h.is_subsystem(PointSet::from_iter([1, 3, 5])));
    }

    #[test]
    fn wilson_constructions() {
        let z = pbd_z7();
        assert_eq!((z.v(), z.block_sizes()), (21, vec![3, 7]));
        assert_eq!(z.num_blocks(), 52);
        let s = sts21();
        assert!(s.is_sts());
        assert_eq!(s.num_blocks(), 70);
        let s19 = wilson_sts19(&LatinSquare::cyclic(6)).unwrap();
        assert!(s19.is_sts());
        assert_eq!(s19.num_blocks(), 57);
    }

    #[test]
    fn break_block_errors() {
        let z = pbd_z7();
        let seven = z.blocks().iter().copied().find(|b| b.len() == 7).unwrap();
        assert!(matches!(
            break_block(&z, seven, &fano(), &[0, 1, 2]),
            Err(Error::SizeMismatch(_))
        ));
        let tri = z.blocks().iter().copied().find(|b| b.len() == 3).unwrap();
        let trivial = Pbd::trivial(3).unwrap();
        assert!(matches!(
            break_block(&z, tri, &trivial, &tri.to_vec()),
            Err(Error::DegenerateCase(_))
        ));
    }

    #[test]
    fn cyclic() {
        assert_eq!(cyclic_sts(7, &[vec![0, 1, 3]]).unwrap().num_blocks(), 7);
        assert_eq!(
            cyclic_sts(13, &[vec![0, 1, 4], vec![0, 2, 7]])
                .unwrap()
                .num_blocks(),
            26
        );
        assert!(matches!(
            cyclic_sts(9, &[vec![0, 1, 3]]),
            Err(Error::ResultNotPbd(_))
        ));
    }

    #[test]
    fn congruences() {
        assert!(necessary_conditions(&[3], 7));
        assert!(!necessary_conditions(&[3], 8));
        assert!(necessary_conditions(&[3, 7], 21));
        assert!(necessary_conditions(&[3], 9));
    }

    #[test]
    fn subsystem_bound() {
        let s13 = cyclic_sts(13, &[vec![0, 1, 4], vec![0, 2, 7]]).unwrap();
        assert!(!subsystem_bound_check(&s13, 7).unwrap());
        let s15 = projective_space(3, 2).unwrap();
        assert!(subsystem_bound_check(&s15, 7).unwrap());
        let p23 = projective_space(2, 3).unwrap();
        assert!(subsystem_bound_check(&p23, 4).unwrap());
        assert!(matches!(
            subsystem_bound_check(&hall_plane6(), 2),
            Err(Error::NotUniform(_))
        ));
    }
}
