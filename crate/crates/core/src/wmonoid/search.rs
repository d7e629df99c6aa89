//! Backtracking search for morphisms between two designs.
//!
//! Points are assigned in an order that finishes blocks early. After each
//! assignment every block through the new point is checked against the
//! blockwise morphism conditions restricted to its assigned points: two
//! undefined points force the whole block undefined, and two distinct
//! values force the block to be mapped one-to-one into a single target
//! block. A complete assignment passing these checks is a morphism.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::incidence::Pbd;
use crate::morphism::{PartialMap, UNDEF};
use crate::pointset::PointSet;

/// Number of valid prefixes to aim for before splitting work across threads.
const PARALLEL_PREFIXES: usize = 64;

#[derive(Clone, Debug)]
pub struct MorphismSearch<'a> {
    x: &'a Pbd,
    y: &'a Pbd,
    order: Vec<usize>,
    choices: Vec<Vec<u8>>,
    blocks_of: Vec<Vec<PointSet>>,
    injective: bool,
}

impl<'a> MorphismSearch<'a> {
    /// Search over every partial map from the points of `x` to those of `y`.
    pub fn new(x: &'a Pbd, y: &'a Pbd) -> Self {
        let all: Vec<u8> = (0..y.v() as u8).chain([UNDEF]).collect();
        let blocks_of = (0..x.v()).map(|p| x.blocks_through(p).collect()).collect();
        MorphismSearch {
            x,
            y,
            order: block_order(x),
            choices: vec![all; x.v()],
            blocks_of,
            injective: false,
        }
    }

    /// Limit the values allowed at `p`.
    pub fn restrict(mut self, p: usize, values: &[Option<usize>]) -> Self {
        self.choices[p] = values
            .iter()
            .map(|v| v.map_or(UNDEF, |t| t as u8))
            .collect();
        self
    }

    /// Limit every point to `values`.
    pub fn restrict_all(mut self, values: &[Option<usize>]) -> Self {
        for p in 0..self.x.v() {
            self = self.restrict(p, values);
        }
        self
    }

    /// Only maps that are defined everywhere and one-to-one.
    pub fn bijections(mut self) -> Self {
        self.injective = true;
        for c in &mut self.choices {
            c.retain(|&t| t != UNDEF);
        }
        self
    }

    fn block_ok(&self, table: &[u8], assigned: PointSet, b: PointSet) -> bool {
        let (mut undef, mut defined, mut repeat) = (0, 0, false);
        let mut vals = PointSet::EMPTY;
        for q in b.intersection(assigned) {
            match table[q] {
                UNDEF => undef += 1,
                t => {
                    defined += 1;
                    repeat |= vals.contains(t as usize);
                    vals.insert(t as usize);
                }
            }
        }
        if undef >= 2 && defined > 0 {
            return false;
        }
        if vals.len() >= 2 {
            if undef > 0 || repeat {
                return false;
            }
            let mut it = vals.iter();
            let (a, c) = (it.next().unwrap(), it.next().unwrap());
            return vals.is_subset(self.y.line(a, c));
        }
        true
    }

    fn extend_ok(&self, table: &[u8], assigned: PointSet, p: usize) -> bool {
        if self.injective {
            let t = table[p];
            if assigned.iter().any(|q| q != p && table[q] == t) {
                return false;
            }
        }
        self.blocks_of[p]
            .iter()
            .all(|b| self.block_ok(table, assigned, *b))
    }

    fn prefixes(&self) -> Vec<(Vec<u8>, PointSet, usize)> {
        let mut level = vec![(vec![UNDEF; self.x.v()], PointSet::EMPTY, 0usize)];
        while level.len() < PARALLEL_PREFIXES
            && level.first().is_some_and(|l| l.2 < self.order.len())
        {
            let mut next = Vec::new();
            for (table, assigned, depth) in level {
                let p = self.order[depth];
                let assigned = assigned.with(p);
                for &t in &self.choices[p] {
                    let mut table = table.clone();
                    table[p] = t;
                    if self.extend_ok(&table, assigned, p) {
                        next.push((table, assigned, depth + 1));
                    }
                }
            }
            level = next;
        }
        level
    }

    fn dfs<F>(
        &self,
        table: &mut Vec<u8>,
        assigned: PointSet,
        depth: usize,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[u8]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(table);
        }
        let p = self.order[depth];
        let assigned = assigned.with(p);
        for &t in &self.choices[p] {
            table[p] = t;
            if self.extend_ok(table, assigned, p) {
                self.dfs(table, assigned, depth + 1, visit)?;
            }
        }
        table[p] = UNDEF;
        ControlFlow::Continue(())
    }

    fn to_map(&self, table: &[u8]) -> PartialMap {
        PartialMap::from_table(self.y.v(), table.to_vec())
    }

    /// Every morphism accepted by `keep`, sorted.
    pub fn collect_filtered<K>(&self, keep: K) -> Vec<PartialMap>
    where
        K: Fn(&PartialMap) -> bool + Sync,
    {
        let mut out: Vec<PartialMap> = self
            .prefixes()
            .into_par_iter()
            .flat_map_iter(|(mut table, assigned, depth)| {
                let mut found = Vec::new();
                let _ = self.dfs(&mut table, assigned, depth, &mut |t| {
                    let f = self.to_map(t);
                    if keep(&f) {
                        found.push(f);
                    }
                    ControlFlow::Continue(())
                });
                found
            })
            .collect();
        out.sort();
        out
    }

    /// Every morphism, sorted.
    pub fn collect(&self) -> Vec<PartialMap> {
        self.collect_filtered(|_| true)
    }

    pub fn count(&self) -> usize {
        self.prefixes()
            .into_par_iter()
            .map(|(mut table, assigned, depth)| {
                let mut n = 0usize;
                let _ = self.dfs(&mut table, assigned, depth, &mut |_| {
                    n += 1;
                    ControlFlow::Continue(())
                });
                n
            })
            .sum()
    }

    /// The first morphism (in search order) accepted by `pred`.
    pub fn find_first<P>(&self, pred: P) -> Option<PartialMap>
    where
        P: Fn(&PartialMap) -> bool + Sync,
    {
        self.prefixes()
            .into_par_iter()
            .find_map_first(|(mut table, assigned, depth)| {
                let mut hit = None;
                let _ = self.dfs(&mut table, assigned, depth, &mut |t| {
                    let f = self.to_map(t);
                    if pred(&f) {
                        hit = Some(f);
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                hit
            })
    }
}

/// Greedy point order: next is the point on the most blocks already holding
/// two assigned points, then on the most blocks holding one.
fn block_order(x: &Pbd) -> Vec<usize> {
    let mut order = Vec::with_capacity(x.v());
    let mut assigned = PointSet::EMPTY;
    for _ in 0..x.v() {
        let best = x
            .points()
            .difference(assigned)
            .iter()
            .max_by_key(|&p| {
                let (mut two, mut one) = (0, 0);
                for b in x.blocks_through(p) {
                    match b.intersection(assigned).len() {
                        0 => {}
                        1 => one += 1,
                        _ => two += 1,
                    }
                }
                (two, one, std::cmp::Reverse(p))
            })
            .expect("points remain");
        order.push(best);
        assigned.insert(best);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{complete_graph, fano, near_pencil};
    use crate::morphism::is_morphism;

    #[test]
    fn brute_force_agrees_on_small_designs() {
        for x in [
            near_pencil(3).unwrap(),
            complete_graph(3).unwrap(),
            Pbd::trivial(3).unwrap(),
        ] {
            let found = MorphismSearch::new(&x, &x).collect();
            let n = x.v();
            let mut brute = Vec::new();
            for code in 0..(n + 1).pow(n as u32) {
                let mut c = code;
                let table: Vec<u8> = (0..n)
                    .map(|_| {
                        let d = c % (n + 1);
                        c /= n + 1;
                        if d == n {
                            UNDEF
                        } else {
                            d as u8
                        }
                    })
                    .collect();
                let f = PartialMap::from_table(n, table);
                if is_morphism(&f, &x, &x).unwrap() {
                    brute.push(f);
                }
            }
            brute.sort();
            assert_eq!(found, brute);
        }
    }

    #[test]
    fn fano_automorphisms() {
        let x = fano();
        assert_eq!(MorphismSearch::new(&x, &x).bijections().count(), 168);
    }
}
