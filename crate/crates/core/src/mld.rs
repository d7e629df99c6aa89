//! The one-big-block family `M(l, d)`: a block `L = {0..l}` of size `l`
//! plus `d` outside points `D = {l..l+d}`, each joined to every other point
//! by a block of size two.
//!
//! Point labels are shifted down by one from the usual 1-based ones, so the
//! last outside point is `l + d - 1`.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::{self, JClassPoset};
use crate::incidence::Pbd;
use crate::morphism::{PartialMap, Partition};
use crate::pointset::PointSet;
use crate::wmonoid::{enumerate_wilson, WilsonMonoid};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MldDesign {
    pub l: usize,
    pub d: usize,
    pub design: Pbd,
}

impl MldDesign {
    /// The big block.
    pub fn big_block(&self) -> PointSet {
        PointSet::full(self.l)
    }

    /// The outside points.
    pub fn outside(&self) -> PointSet {
        PointSet::full(self.l + self.d).difference(self.big_block())
    }

    pub fn v(&self) -> usize {
        self.l + self.d
    }
}

pub fn mld_design(l: usize, d: usize) -> Result<MldDesign> {
    if l < 3 || d < 1 {
        return Err(Error::BadParams(format!(
            "need l >= 3 and d >= 1, got l = {l}, d = {d}"
        )));
    }
    let v = l + d;
    let mut blocks: Vec<Vec<usize>> = vec![(0..l).collect()];
    for j in l..v {
        blocks.extend((0..j).map(|i| vec![i, j]));
    }
    Ok(MldDesign {
        l,
        d,
        design: Pbd::new(v, blocks)?,
    })
}

pub fn mld_is_subsystem(m: &MldDesign, x: PointSet) -> bool {
    let big = m.big_block();
    big.is_subset(x) || big.intersection(x).len() <= 1
}

pub fn mld_is_open(m: &MldDesign, x: PointSet) -> bool {
    x.is_subset(m.outside()) || m.big_block().intersection(x).len() + 1 >= m.l
}

fn permutes(f: &PartialMap, s: PointSet) -> bool {
    f.is_injective_on(s) && f.image_of(s) == s
}

/// Membership in the Wilson monoid of `M(l, d)`, by the closed form.
pub fn mld_membership(m: &MldDesign, f: &PartialMap) -> bool {
    if f.source_size() != m.v() || f.target_size() != m.v() {
        return false;
    }
    let big = m.big_block();
    if big.is_subset(f.domain()) {
        f.image_of(big).len() == 1 || permutes(f, big)
    } else {
        mld_is_open(m, f.domain()) && f.image_of(big).len() <= 1
    }
}

/// Whether some monoid element has image exactly `x`.
pub fn mld_image_realizable(m: &MldDesign, x: PointSet) -> bool {
    m.big_block().is_subset(x) || x.len() <= m.d + 1
}

/// Whether some monoid element has kernel `partition` (whose domain must be
/// open). When it does, the witness returned is the idempotent sending each
/// point to the least point of its class.
pub fn mld_kernel_realizable(m: &MldDesign, partition: &Partition) -> Result<Option<PartialMap>> {
    let y = partition.domain();
    if !mld_is_open(m, y) {
        return Err(Error::DomainNotOpen(y.to_vec()));
    }
    let big = m.big_block();
    let meets_big: Vec<PointSet> = partition
        .classes()
        .iter()
        .copied()
        .filter(|c| !c.intersection(big).is_empty())
        .collect();
    let ok = if big.is_subset(y) {
        meets_big.len() == 1 || meets_big.iter().all(|c| c.intersection(big).len() == 1)
    } else {
        meets_big.len() <= 1
    };
    if !ok {
        return Ok(None);
    }
    let mut values = vec![None; m.v()];
    for c in partition.classes() {
        let rep = (*c).min().expect("classes are nonempty");
        for p in c.iter() {
            values[p] = Some(rep);
        }
    }
    Ok(Some(PartialMap::new(m.v(), &values)?))
}

pub fn mld_is_regular(m: &MldDesign, f: &PartialMap) -> Result<bool> {
    if !mld_membership(m, f) {
        return Err(Error::NotInMonoid);
    }
    let big = m.big_block();
    Ok((big.is_subset(f.domain()) && permutes(f, big)) || f.image().intersection(big).len() <= 1)
}

/// A regular J-class of the monoid by its role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MldClass {
    /// Image meets the big block in at most one point and has this size.
    Small(usize),
    /// Image contains the big block and this many outside points.
    Big(usize),
}

impl std::fmt::Display for MldClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MldClass::Small(i) => write!(f, "J{i}"),
            MldClass::Big(i) => write!(f, "JL{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Clause {
    fn check(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Clause {
            name: name.into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            detail: detail.into(),
        }
    }

    fn skipped(name: &str, why: &str) -> Self {
        Clause {
            name: name.into(),
            verdict: Verdict::Skipped,
            detail: why.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularClassEntry {
    pub label: String,
    pub size: usize,
    pub subgroup_order: usize,
    pub subgroup: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GreenReport {
    pub l: usize,
    pub d: usize,
    pub monoid_size: usize,
    pub j_classes: usize,
    pub regular_classes: Vec<RegularClassEntry>,
    pub clauses: Vec<Clause>,
}

impl GreenReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.verdict != Verdict::Fail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexityReport {
    pub l: usize,
    pub d: usize,
    pub monoid_size: usize,
    pub ideal_size: usize,
    pub clauses: Vec<Clause>,
}

impl ComplexityReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.verdict != Verdict::Fail)
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn class_label(m: &MldDesign, f: &PartialMap) -> MldClass {
    let im = f.image();
    if m.big_block().is_subset(im) {
        MldClass::Big(im.len() - m.l)
    } else {
        MldClass::Small(im.len())
    }
}

/// The monoid, its Green structure, and the regular classes keyed by role.
struct Analysed {
    m: MldDesign,
    w: WilsonMonoid,
    labels: Vec<(MldClass, usize)>,
}

impl Analysed {
    fn new(l: usize, d: usize) -> Result<Self> {
        let m = mld_design(l, d)?;
        let w = enumerate_wilson(&m.design)?;
        let p = w.green()?;
        let labels = p
            .regular_classes()
            .into_iter()
            .map(|c| {
                (
                    class_label(&m, &w.elements()[p.classes()[c].elements[0]]),
                    c,
                )
            })
            .collect();
        Ok(Analysed { m, w, labels })
    }

    fn poset(&self) -> &JClassPoset {
        self.w.green().expect("computed in new")
    }

    fn class(&self, label: MldClass) -> Option<usize> {
        self.labels
            .iter()
            .find(|(l, _)| *l == label)
            .map(|&(_, c)| c)
    }

    fn names(&self, classes: &[usize]) -> BTreeSet<String> {
        classes
            .iter()
            .map(|&c| match self.labels.iter().find(|&&(_, k)| k == c) {
                Some((l, _)) => l.to_string(),
                None => format!("class {c} (not regular)"),
            })
            .collect()
    }
}

/// Check the Green's-relations structure of `W(l, d)` clause by clause.
pub fn verify_greenw(l: usize, d: usize) -> Result<GreenReport> {
    let a = Analysed::new(l, d)?;
    let (m, w, p) = (&a.m, &a.w, a.poset());
    let elems = w.elements();
    let regular = p.regular_elements();
    let mut clauses = Vec::new();

    let r_ok = same_partition(&regular, |f| p.r_class_of(f), |f| elems[f].image());
    clauses.push(Clause::check(
        "R by image",
        r_ok,
        format!("{} regular elements", regular.len()),
    ));
    let l_ok = same_partition(&regular, |f| p.l_class_of(f), |f| elems[f].kernel());
    clauses.push(Clause::check("L by kernel", l_ok, ""));

    // roster: every expected class present once and equal to its defining set
    let expected: Vec<MldClass> = (0..=d + 1)
        .map(MldClass::Small)
        .chain((0..=d).map(MldClass::Big))
        .collect();
    let mut got: Vec<MldClass> = a.labels.iter().map(|&(l, _)| l).collect();
    got.sort();
    let mut want = expected.clone();
    want.sort();
    let mut roster_ok = got == want && got.len() == 2 * d + 3;
    let mut roster_detail = format!("{} regular classes", got.len());
    let regular_set: HashSet<usize> = regular.iter().copied().collect();
    for &(label, c) in &a.labels {
        let mut defined: Vec<usize> = (0..w.len())
            .filter(|&f| {
                let im = elems[f].image();
                match label {
                    MldClass::Small(i) => {
                        im.intersection(m.big_block()).len() <= 1 && im.len() == i
                    }
                    MldClass::Big(i) => {
                        regular_set.contains(&f) && m.big_block().is_subset(im) && im.len() == l + i
                    }
                }
            })
            .collect();
        defined.sort_unstable();
        if defined != p.classes()[c].elements {
            roster_ok = false;
            roster_detail = format!("class {label} differs from its defining set");
        }
    }
    clauses.push(Clause::check(
        "regular class roster",
        roster_ok,
        roster_detail,
    ));

    let mut entries = Vec::new();
    let mut groups_ok = true;
    let mut group_detail = String::new();
    let mut sorted_labels = a.labels.clone();
    sorted_labels.sort();
    for &(label, c) in &sorted_labels {
        let g = green::maximal_subgroup(w.monoid(), p, c)?;
        let want = match label {
            MldClass::Small(i) => factorial(i),
            MldClass::Big(i) => factorial(l) * factorial(i),
        };
        if g.order != want {
            groups_ok = false;
            group_detail = format!("{label}: subgroup order {} != {want}", g.order);
        }
        entries.push(RegularClassEntry {
            label: label.to_string(),
            size: p.classes()[c].elements.len(),
            subgroup_order: g.order,
            subgroup: g.name,
        });
    }
    clauses.push(Clause::check("maximal subgroups", groups_ok, group_detail));

    if !roster_ok {
        for name in [
            "chains",
            "covers of big-image classes",
            "covers of small-image classes",
            "maximal classes below the units",
        ] {
            clauses.push(Clause::skipped(name, "class roster failed"));
        }
        return Ok(GreenReport {
            l,
            d,
            monoid_size: w.len(),
            j_classes: p.classes().len(),
            regular_classes: entries,
            clauses,
        });
    }
    let small = |i| a.class(MldClass::Small(i)).expect("roster");
    let big = |i| a.class(MldClass::Big(i)).expect("roster");

    let chains_ok = (1..=d + 1).all(|i| p.strictly_below(small(i - 1), small(i)))
        && (1..=d).all(|i| p.strictly_below(big(i - 1), big(i)));
    clauses.push(Clause::check("chains", chains_ok, ""));

    let mut covers_ok = true;
    let mut covers_detail = String::new();
    for i in 0..=d {
        let got = a.names(&p.regular_covers(big(i)));
        let mut want: BTreeSet<String> = BTreeSet::from([MldClass::Small(i + 1).to_string()]);
        if i > 0 {
            want.insert(MldClass::Big(i - 1).to_string());
        }
        if got != want {
            covers_ok = false;
            covers_detail = format!("{} covers {:?}", MldClass::Big(i), got);
        }
    }
    clauses.push(Clause::check(
        "covers of big-image classes",
        covers_ok,
        covers_detail,
    ));

    let mut small_ok = p.regular_covers(small(0)).is_empty();
    let mut small_detail = String::new();
    for i in 1..=d + 1 {
        let got = a.names(&p.regular_covers(small(i)));
        if got != BTreeSet::from([MldClass::Small(i - 1).to_string()]) {
            small_ok = false;
            small_detail = format!("{} covers {:?}", MldClass::Small(i), got);
        }
    }
    let minimal: Vec<usize> = p
        .regular_classes()
        .into_iter()
        .filter(|&c| p.regular_covers(c).is_empty())
        .collect();
    if minimal != [small(0)] {
        small_ok = false;
        small_detail = format!("minimal regular classes {:?}", a.names(&minimal));
    }
    clauses.push(Clause::check(
        "covers of small-image classes",
        small_ok,
        small_detail,
    ));

    let units = p.j_class_of(w.identity());
    let top_ok = units == big(d);
    let got = a.names(p.covers(units));
    let want = BTreeSet::from([
        MldClass::Big(d - 1).to_string(),
        MldClass::Small(d + 1).to_string(),
    ]);
    clauses.push(Clause::check(
        "maximal classes below the units",
        top_ok && got == want,
        format!("{got:?}"),
    ));

    Ok(GreenReport {
        l,
        d,
        monoid_size: w.len(),
        j_classes: p.classes().len(),
        regular_classes: entries,
        clauses,
    })
}

/// True iff the two labelings induce the same partition of `items`.
fn same_partition<A, B>(items: &[usize], a: impl Fn(usize) -> A, b: impl Fn(usize) -> B) -> bool
where
    A: Eq + std::hash::Hash,
    B: Eq + std::hash::Hash,
{
    let pairs: HashSet<(A, B)> = items.iter().map(|&i| (a(i), b(i))).collect();
    let left: HashSet<&A> = pairs.iter().map(|(x, _)| x).collect();
    let right: HashSet<&B> = pairs.iter().map(|(_, y)| y).collect();
    pairs.len() == left.len() && pairs.len() == right.len()
}

/// Identity map restricted to `s`.
fn partial_identity(v: usize, s: PointSet) -> PartialMap {
    let values: Vec<Option<usize>> = (0..v).map(|p| s.contains(p).then_some(p)).collect();
    PartialMap::new(v, &values).expect("in range")
}

/// Check the four ingredients of the complexity computation for `W(l, d)`:
/// the quotient by the ideal `K` generated by the big-image class with
/// `d - 1` outside points is small and its idempotents generate an
/// aperiodic monoid; the local monoid at the identity on all but the last
/// point is `W(l, d - 1)`; `K = KeK`; and the full transformation monoid on
/// `d + 1` points embeds.
pub fn verify_complexity_lemmas(l: usize, d: usize) -> Result<ComplexityReport> {
    let a = Analysed::new(l, d)?;
    let (m, w, p) = (&a.m, &a.w, a.poset());
    let mon = w.monoid();
    let v = m.v();
    let elems = w.elements();
    let mut clauses = Vec::new();

    let generator = a
        .class(MldClass::Big(d - 1))
        .ok_or_else(|| Error::BadParams("missing class".into()))?;
    let k = mon.ideal_generated(&p.classes()[generator].elements);
    let in_k: HashSet<usize> = k.iter().copied().collect();

    // (a) the quotient
    let q = green::rees_quotient(mon, &k)?;
    let qp = green::green_relations(&q)?;
    let kept: Vec<usize> = (0..w.len()).filter(|f| !in_k.contains(f)).collect();
    let top_small = a.class(MldClass::Small(d + 1)).expect("regular class");
    let mut want_ideal: Vec<usize> = p.classes()[top_small]
        .elements
        .iter()
        .map(|f| kept.binary_search(f).expect("outside K"))
        .chain([kept.len()])
        .collect();
    want_ideal.sort_unstable();
    let zero_minimal = green::zero_simple_minimal_ideal(&q, &qp);
    let small = green::is_small(&q, &qp);
    let aperiodic = green::idempotent_generated_aperiodic(&q, &(0..q.len()).collect::<Vec<_>>());
    clauses.push(Clause::check(
        "quotient is small",
        small && zero_minimal.as_deref() == Some(&want_ideal[..]) && aperiodic,
        format!(
            "quotient size {}, small {small}, idempotent-generated part aperiodic {aperiodic}",
            q.len()
        ),
    ));

    // (b) and (c) need a smaller member of the family
    let last = v - 1;
    let e_map = partial_identity(v, PointSet::full(v).without(last));
    let e = w.index_of(&e_map).ok_or(Error::NotInMonoid)?;
    if d == 1 {
        clauses.push(Clause::skipped("local monoid", "needs d > 1"));
        clauses.push(Clause::skipped("K = KeK", "needs d > 1"));
    } else {
        let eke: BTreeSet<usize> = k.iter().map(|&f| mon.mul(mon.mul(e, f), e)).collect();
        let smaller = enumerate_wilson(&mld_design(l, d - 1)?.design)?;
        let restrict = |f: &PartialMap| PartialMap::from_table(v - 1, f.table()[..v - 1].to_vec());
        let avoid = PointSet::full(v).without(last);
        let inside = eke
            .iter()
            .all(|&f| elems[f].domain().is_subset(avoid) && elems[f].image().is_subset(avoid));
        let image: Vec<Option<usize>> = eke
            .iter()
            .map(|&f| smaller.index_of(&restrict(&elems[f])))
            .collect();
        let onto: BTreeSet<usize> = image.iter().flatten().copied().collect();
        let bijective = image.iter().all(Option::is_some)
            && onto.len() == smaller.len()
            && eke.len() == smaller.len();
        let eke_list: Vec<usize> = eke.iter().copied().collect();
        let homomorphic = bijective
            && eke_list.iter().enumerate().all(|(i, &f)| {
                eke_list.iter().enumerate().all(|(j, &g)| {
                    let fg = mon.mul(f, g);
                    let pos = eke_list.binary_search(&fg);
                    pos.is_ok_and(|k| {
                        image[k] == Some(smaller.compose(image[i].unwrap(), image[j].unwrap()))
                    })
                })
            });
        let e_class_ok = p.j_class_of(e) == generator;
        clauses.push(Clause::check(
            "local monoid",
            inside && bijective && homomorphic && e_class_ok,
            format!("|eKe| = {}, |W(l,d-1)| = {}", eke.len(), smaller.len()),
        ));

        let ke: BTreeSet<usize> = k.iter().map(|&f| mon.mul(f, e)).collect();
        let mut kek = vec![false; w.len()];
        for &x in &ke {
            for &g in &k {
                kek[mon.mul(x, g)] = true;
            }
        }
        let missing = k.iter().find(|&&f| !kek[f]);
        let extra = (0..w.len()).find(|&f| kek[f] && !in_k.contains(&f));
        clauses.push(Clause::check(
            "K = KeK",
            missing.is_none() && extra.is_none(),
            match (missing, extra) {
                (Some(f), _) => format!("{} in K but not KeK", elems[*f]),
                (_, Some(f)) => format!("{} in KeK but not K", elems[f]),
                _ => format!("|K| = {}", k.len()),
            },
        ));
    }

    // (d) full transformations of {j} ∪ D, with the big block following j
    let j = 0;
    let base: Vec<usize> = std::iter::once(j).chain(m.outside().iter()).collect();
    let n = base.len();
    let lift = |t: &[usize]| {
        let values: Vec<Option<usize>> = (0..v)
            .map(|x| {
                Some(if x < l {
                    base[t[0]]
                } else {
                    base[t[x - l + 1]]
                })
            })
            .collect();
        PartialMap::new(v, &values).expect("in range")
    };
    let transformations: Vec<Vec<usize>> = (0..n.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let x = c % n;
                    c /= n;
                    x
                })
                .collect()
        })
        .collect();
    let lifted: Vec<Option<usize>> = transformations
        .iter()
        .map(|t| w.index_of(&lift(t)))
        .collect();
    let members = lifted.iter().all(Option::is_some);
    let injective = lifted.iter().collect::<HashSet<_>>().len() == lifted.len();
    let multiplicative = members
        && transformations.iter().zip(&lifted).all(|(s, ls)| {
            transformations.iter().zip(&lifted).all(|(t, lt)| {
                let st: Vec<usize> = (0..n).map(|x| s[t[x]]).collect();
                w.index_of(&lift(&st)) == Some(mon.mul(ls.unwrap(), lt.unwrap()))
            })
        });
    clauses.push(Clause::check(
        "full transformations embed",
        members && injective && multiplicative,
        format!("{} transformations of {n} points", transformations.len()),
    ));

    Ok(ComplexityReport {
        l,
        d,
        monoid_size: w.len(),
        ideal_size: k.len(),
        clauses,
    })
}

/// The monoid `W(l, d)` as an abstract monoid, with `I = {|f(L)| <= 1}`.
pub fn collapse_ideal(m: &MldDesign, w: &WilsonMonoid) -> Vec<usize> {
    (0..w.len())
        .filter(|&f| w.elements()[f].image_of(m.big_block()).len() <= 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::near_pencil;

    #[test]
    fn small_designs() {
        let m = mld_design(3, 1).unwrap();
        assert_eq!(
            m.design,
            near_pencil(3).unwrap().relabel(&[3, 0, 1, 2]).unwrap()
        );
        assert_eq!(mld_design(3, 2).unwrap().design.num_blocks(), 8);
        assert!(mld_design(2, 1).is_err());
        assert!(mld_design(3, 0).is_err());
    }

    #[test]
    fn predicates() {
        let m = mld_design(3, 2).unwrap();
        assert!(mld_is_subsystem(&m, m.big_block()));
        assert!(!mld_is_subsystem(&m, PointSet::from_iter([0, 1])));
        assert!(mld_is_subsystem(&m, PointSet::from_iter([0, 3, 4])));
        assert!(mld_is_open(&m, m.outside()));
        assert!(mld_is_open(&m, PointSet::from_iter([0, 1])));
        assert!(!mld_is_open(&m, PointSet::from_iter([0])));
        // L to one point, D to another: a member that is not regular
        let f = PartialMap::new(5, &[Some(0), Some(0), Some(0), Some(1), Some(1)]).unwrap();
        assert!(mld_membership(&m, &f));
        assert!(!mld_is_regular(&m, &f).unwrap());
    }

    #[test]
    fn kernels() {
        let m = mld_design(4, 1).unwrap();
        let all = PointSet::full(5);
        let split = Partition::new(
            all,
            vec![
                PointSet::from_iter([0, 1]),
                PointSet::from_iter([2, 3]),
                PointSet::singleton(4),
            ],
        )
        .unwrap();
        assert_eq!(mld_kernel_realizable(&m, &split).unwrap(), None);
        let lumped = Partition::new(all, vec![PointSet::full(4), PointSet::singleton(4)]).unwrap();
        let e = mld_kernel_realizable(&m, &lumped).unwrap().unwrap();
        assert_eq!(e.after(&e).unwrap(), e);
        assert_eq!(e.kernel(), lumped);
        let bad = Partition::discrete(PointSet::singleton(0));
        assert!(matches!(
            mld_kernel_realizable(&m, &bad),
            Err(Error::DomainNotOpen(_))
        ));
    }

    #[test]
    fn greenw_smallest_case() {
        let r = verify_greenw(3, 1).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.regular_classes.len(), 5);
    }
}
