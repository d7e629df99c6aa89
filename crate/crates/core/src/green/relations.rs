use fixedbitset::FixedBitSet;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use super::group::{identify_group, GroupInfo};
use super::monoid::{FiniteMonoid, GREEN_CAP};
use crate::error::{Error, Result};

/// One J-class with its R/L structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JClass {
    /// Element indices, sorted.
    pub elements: Vec<usize>,
    pub idempotents: Vec<usize>,
    pub r_classes: usize,
    pub l_classes: usize,
}

impl JClass {
    /// A J-class is regular iff it contains an idempotent.
    pub fn is_regular(&self) -> bool {
        !self.idempotents.is_empty()
    }
}

/// Green's R, L and J relations of a finite monoid and the order on J-classes.
#[derive(Clone, Debug)]
pub struct JClassPoset {
    r_of: Vec<usize>,
    l_of: Vec<usize>,
    j_of: Vec<usize>,
    classes: Vec<JClass>,
    below: Vec<FixedBitSet>,
    covers: Vec<Vec<usize>>,
}

fn scc_labels(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
    for _ in 0..n {
        g.add_node(());
    }
    for (a, b) in edges {
        if a != b {
            g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut comps = tarjan_scc(&g);
    // number components by their smallest element
    for c in &mut comps {
        c.sort_unstable();
    }
    comps.sort_unstable_by_key(|c| c[0]);
    for (i, c) in comps.iter().enumerate() {
        for v in c {
            label[v.index()] = i;
        }
    }
    label
}

fn count_distinct(labels: impl Iterator<Item = usize>) -> usize {
    let mut v: Vec<usize> = labels.collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Compute R, L and J classes from the right and left Cayley graphs over a
/// generating set: strongly connected components of `a -> ag`, of
/// `a -> ga`, and of both together.
pub fn green_relations(m: &FiniteMonoid) -> Result<JClassPoset> {
    let n = m.len();
    if n > GREEN_CAP {
        return Err(Error::TooLarge {
            what: "monoid",
            size: n,
            cap: GREEN_CAP,
        });
    }
    let gens = m.generators().to_vec();
    let right: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| gens.iter().map(move |&g| (a, g)))
        .map(|(a, g)| (a, m.mul(a, g)))
        .collect();
    let left: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| gens.iter().map(move |&g| (a, g)))
        .map(|(a, g)| (a, m.mul(g, a)))
        .collect();
    let r_of = scc_labels(n, right.iter().copied());
    let l_of = scc_labels(n, left.iter().copied());
    let j_of = scc_labels(n, right.iter().chain(left.iter()).copied());
    let k = j_of.iter().max().map_or(0, |&x| x + 1);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for a in 0..n {
        members[j_of[a]].push(a);
    }
    let classes: Vec<JClass> = members
        .into_iter()
        .map(|elements| JClass {
            idempotents: elements
                .iter()
                .copied()
                .filter(|&a| m.is_idempotent(a))
                .collect(),
            r_classes: count_distinct(elements.iter().map(|&a| r_of[a])),
            l_classes: count_distinct(elements.iter().map(|&a| l_of[a])),
            elements,
        })
        .collect();

    // the class graph; reachability gives the J-order
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(a, b) in right.iter().chain(left.iter()) {
        let (x, y) = (j_of[a], j_of[b]);
        if x != y {
            succ[x].push(y);
        }
    }
    for s in &mut succ {
        s.sort_unstable();
        s.dedup();
    }
    let mut below: Vec<Option<FixedBitSet>> = vec![None; k];
    fn fill(c: usize, succ: &[Vec<usize>], below: &mut Vec<Option<FixedBitSet>>, k: usize) {
        if below[c].is_some() {
            return;
        }
        let mut set = FixedBitSet::with_capacity(k);
        for &d in &succ[c] {
            fill(d, succ, below, k);
            set.insert(d);
            set.union_with(below[d].as_ref().unwrap());
        }
        below[c] = Some(set);
    }
    for c in 0..k {
        fill(c, &succ, &mut below, k);
    }
    let below: Vec<FixedBitSet> = below.into_iter().map(Option::unwrap).collect();
    let covers = (0..k).map(|c| maximal_in(&below, &below[c])).collect();
    Ok(JClassPoset {
        r_of,
        l_of,
        j_of,
        classes,
        below,
        covers,
    })
}

/// Maximal elements of `set` under the order `below`.
fn maximal_in(below: &[FixedBitSet], set: &FixedBitSet) -> Vec<usize> {
    let mut shadow = FixedBitSet::with_capacity(set.len());
    for d in set.ones() {
        shadow.union_with(&below[d]);
    }
    set.ones().filter(|&d| !shadow.contains(d)).collect()
}

impl JClassPoset {
    pub fn classes(&self) -> &[JClass] {
        &self.classes
    }

    pub fn r_class_of(&self, a: usize) -> usize {
        self.r_of[a]
    }

    pub fn l_class_of(&self, a: usize) -> usize {
        self.l_of[a]
    }

    pub fn j_class_of(&self, a: usize) -> usize {
        self.j_of[a]
    }

    pub fn same_r(&self, a: usize, b: usize) -> bool {
        self.r_of[a] == self.r_of[b]
    }

    pub fn same_l(&self, a: usize, b: usize) -> bool {
        self.l_of[a] == self.l_of[b]
    }

    pub fn same_j(&self, a: usize, b: usize) -> bool {
        self.j_of[a] == self.j_of[b]
    }

    /// True iff class `lower` is strictly below class `upper`.
    pub fn strictly_below(&self, lower: usize, upper: usize) -> bool {
        self.below[upper].contains(lower)
    }

    /// Classes immediately below `c` in the order on all J-classes.
    pub fn covers(&self, c: usize) -> &[usize] {
        &self.covers[c]
    }

    /// Classes immediately below `c` among the regular classes only.
    pub fn regular_covers(&self, c: usize) -> Vec<usize> {
        let k = self.classes.len();
        let regular = |d: usize| self.classes[d].is_regular();
        let restrict = |s: &FixedBitSet| {
            let mut t = FixedBitSet::with_capacity(k);
            t.extend(s.ones().filter(|&d| regular(d)));
            t
        };
        let below: Vec<FixedBitSet> = self.below.iter().map(restrict).collect();
        maximal_in(&below, &below[c])
    }

    pub fn regular_classes(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| self.classes[c].is_regular())
            .collect()
    }

    /// Minimal classes: nothing strictly below.
    pub fn minimal_classes(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| self.below[c].is_clear())
            .collect()
    }

    /// Elements of the maximal subgroup `H_e` for the first idempotent `e`
    /// of class `c`.
    pub fn group_h_class(&self, c: usize) -> Result<(usize, Vec<usize>)> {
        let e = *self.classes[c]
            .idempotents
            .first()
            .ok_or(Error::NotRegularClass(c))?;
        let h = self.classes[c]
            .elements
            .iter()
            .copied()
            .filter(|&a| self.same_r(a, e) && self.same_l(a, e))
            .collect();
        Ok((e, h))
    }

    /// Elements `s` such that `sts = s` for some `t`: those whose R-class
    /// holds an idempotent.
    pub fn regular_elements(&self) -> Vec<usize> {
        let mut good = vec![false; self.r_of.len()];
        for c in &self.classes {
            for &e in &c.idempotents {
                good[self.r_of[e]] = true;
            }
        }
        (0..self.r_of.len())
            .filter(|&a| good[self.r_of[a]])
            .collect()
    }
}

/// The maximal subgroup of a regular J-class.
pub fn maximal_subgroup(m: &FiniteMonoid, p: &JClassPoset, class: usize) -> Result<GroupInfo> {
    let (e, h) = p.group_h_class(class)?;
    Ok(identify_group(m, e, &h))
}

/// Per-class summary for egg-box output.
#[derive(Clone, Debug, Serialize)]
pub struct EggBoxClass {
    pub index: usize,
    pub size: usize,
    pub regular: bool,
    pub r_classes: usize,
    pub l_classes: usize,
    pub idempotents: usize,
    pub subgroup_order: Option<usize>,
    pub subgroup: Option<String>,
    pub covers: Vec<usize>,
}

pub fn egg_box(m: &FiniteMonoid, p: &JClassPoset) -> Vec<EggBoxClass> {
    (0..p.classes.len())
        .map(|c| {
            let class = &p.classes[c];
            let group = maximal_subgroup(m, p, c).ok();
            EggBoxClass {
                index: c,
                size: class.elements.len(),
                regular: class.is_regular(),
                r_classes: class.r_classes,
                l_classes: class.l_classes,
                idempotents: class.idempotents.len(),
                subgroup_order: group.as_ref().map(|g| g.order),
                subgroup: group.map(|g| g.name),
                covers: p.covers[c].clone(),
            }
        })
        .collect()
}
