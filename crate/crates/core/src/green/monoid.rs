use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::morphism::PartialMap;

/// Monoids up to this size get a full multiplication table.
pub const TABLE_CAP: usize = 4096;

/// Largest monoid accepted for Green's-relations analysis.
pub const GREEN_CAP: usize = 2_000_000;

type ProductFn = dyn Fn(usize, usize) -> usize + Send + Sync;

#[derive(Clone)]
enum Product {
    Table(Arc<Vec<u32>>),
    Func(Arc<ProductFn>),
}

/// A finite monoid on the indices `0..len()`.
#[derive(Clone)]
pub struct FiniteMonoid {
    n: usize,
    identity: usize,
    product: Product,
    generators: OnceLock<Vec<usize>>,
    zero: OnceLock<Option<usize>>,
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMonoid")
            .field("len", &self.n)
            .field("identity", &self.identity)
            .finish()
    }
}

impl FiniteMonoid {
    /// From a row-major table: `table[a * n + b] = ab`. Identity laws are
    /// checked in full, associativity on generator triples.
    pub fn from_table(n: usize, table: Vec<u32>, identity: usize) -> Result<Self> {
        if table.len() != n * n || identity >= n || table.iter().any(|&t| t as usize >= n) {
            return Err(Error::SizeMismatch(format!(
                "multiplication table for {n} elements"
            )));
        }
        let m = Self::raw(n, identity, Product::Table(Arc::new(table)));
        m.check_laws()?;
        Ok(m)
    }

    /// From a product function; tabulated when `n <= TABLE_CAP`.
    pub fn from_fn<F>(n: usize, identity: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize + Send + Sync + 'static,
    {
        if n <= TABLE_CAP {
            let table: Vec<u32> = (0..n * n)
                .into_par_iter()
                .map(|k| f(k / n, k % n) as u32)
                .collect();
            return Self::from_table(n, table, identity);
        }
        if identity >= n {
            return Err(Error::SizeMismatch(format!(
                "identity {identity} of {n} elements"
            )));
        }
        let m = Self::raw(n, identity, Product::Func(Arc::new(f)));
        m.check_laws()?;
        Ok(m)
    }

    /// The monoid of a composition-closed list of partial self-maps, with
    /// `ab = a ∘ b` (apply `b` first). The list must contain the identity.
    pub fn from_maps(maps: &[PartialMap]) -> Result<Self> {
        let n = maps.len();
        let size = maps.first().map_or(0, |f| f.source_size());
        let index: HashMap<PartialMap, usize> = maps
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let identity = *index
            .get(&PartialMap::identity(size))
            .ok_or_else(|| Error::BadParams("map list has no identity".into()))?;
        if n <= TABLE_CAP {
            let table: Vec<Option<u32>> = (0..n * n)
                .into_par_iter()
                .map(|k| {
                    index
                        .get(&maps[k / n].after_unchecked(&maps[k % n]))
                        .map(|&i| i as u32)
                })
                .collect();
            if table.iter().any(Option::is_none) {
                return Err(Error::BadParams(
                    "map list is not closed under composition".into(),
                ));
            }
            return Self::from_table(n, table.into_iter().map(Option::unwrap).collect(), identity);
        }
        let maps = maps.to_vec();
        Self::from_fn(n, identity, move |a, b| {
            index[&maps[a].after_unchecked(&maps[b])]
        })
    }

    fn raw(n: usize, identity: usize, product: Product) -> Self {
        FiniteMonoid {
            n,
            identity,
            product,
            generators: OnceLock::new(),
            zero: OnceLock::new(),
        }
    }

    fn check_laws(&self) -> Result<()> {
        let e = self.identity;
        if let Some(a) = (0..self.n).find(|&a| self.mul(e, a) != a || self.mul(a, e) != a) {
            return Err(Error::BadParams(format!(
                "element {a} breaks the identity law"
            )));
        }
        let g = self.generators();
        for &a in g {
            for &b in g {
                for &c in g {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::BadParams(format!("({a}{b}){c} != {a}({b}{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.product {
            Product::Table(t) => t[a * self.n + b] as usize,
            Product::Func(f) => f(a, b),
        }
    }

    /// `a^k`.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// A generating set chosen greedily: elements are scanned in index
    /// order and kept when not yet generated by the earlier ones.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut inside = vec![false; self.n];
            inside[self.identity] = true;
            let mut members = vec![self.identity];
            let mut gens: Vec<usize> = Vec::new();
            for x in 0..self.n {
                if inside[x] {
                    continue;
                }
                gens.push(x);
                // close up: new words all contain x
                let mut queue: Vec<usize> = Vec::new();
                for &m in &members {
                    let y = self.mul(m, x);
                    if !inside[y] {
                        inside[y] = true;
                        queue.push(y);
                    }
                }
                while let Some(y) = queue.pop() {
                    members.push(y);
                    for &g in &gens {
                        let z = self.mul(y, g);
                        if !inside[z] {
                            inside[z] = true;
                            queue.push(z);
                        }
                    }
                }
            }
            gens
        })
    }

    /// The zero element, if there is one.
    pub fn zero(&self) -> Option<usize> {
        *self.zero.get_or_init(|| {
            let gens = self.generators();
            (0..self.n).find(|&z| {
                gens.iter()
                    .all(|&g| self.mul(z, g) == z && self.mul(g, z) == z)
            })
        })
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    /// True iff `set` is a nonempty two-sided ideal.
    pub fn is_ideal(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &a in set {
            inside[a] = true;
        }
        let gens = self.generators();
        !set.is_empty()
            && set.iter().all(|&a| {
                gens.iter()
                    .all(|&g| inside[self.mul(a, g)] && inside[self.mul(g, a)])
            })
    }

    /// The submonoid generated by `seeds`, sorted.
    pub fn submonoid(&self, seeds: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[self.identity] = true;
        let mut stack = vec![self.identity];
        let mut out = Vec::new();
        while let Some(a) = stack.pop() {
            out.push(a);
            for &s in seeds {
                let b = self.mul(a, s);
                if !inside[b] {
                    inside[b] = true;
                    stack.push(b);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The two-sided ideal generated by `seeds`, sorted.
    pub fn ideal_generated(&self, seeds: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        let mut stack: Vec<usize> = Vec::new();
        for &s in seeds {
            if !inside[s] {
                inside[s] = true;
                stack.push(s);
            }
        }
        let gens = self.generators();
        let mut out = Vec::new();
        while let Some(a) = stack.pop() {
            out.push(a);
            for &g in gens {
                for b in [self.mul(a, g), self.mul(g, a)] {
                    if !inside[b] {
                        inside[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The index and period of `a`: the least `i >= 1`, `p >= 1` with
    /// `a^(i+p) = a^i`.
    pub fn index_period(&self, a: usize) -> (usize, usize) {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut x = a;
        for k in 1.. {
            if let Some(&i) = seen.get(&x) {
                return (i, k - i);
            }
            seen.insert(x, k);
            x = self.mul(x, a);
        }
        unreachable!()
    }

    /// Elements with a two-sided inverse: those with some power equal to
    /// the identity.
    pub fn units(&self) -> Vec<usize> {
        (0..self.n)
            .into_par_iter()
            .filter(|&a| {
                let (i, p) = self.index_period(a);
                i == 1 && self.pow(a, p) == self.identity
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cyclic_group(n: usize) -> FiniteMonoid {
        FiniteMonoid::from_fn(n, 0, move |a, b| (a + b) % n).unwrap()
    }

    #[test]
    fn cyclic() {
        let c = cyclic_group(6);
        assert_eq!(c.mul(4, 5), 3);
        assert_eq!(c.generators(), &[1]);
        assert_eq!(c.zero(), None);
        assert_eq!(c.units().len(), 6);
        assert_eq!(c.submonoid(&[2]), vec![0, 2, 4]);
    }

    #[test]
    fn bad_tables() {
        // 1 is not an identity
        assert!(FiniteMonoid::from_table(2, vec![0, 0, 0, 0], 1).is_err());
        assert!(FiniteMonoid::from_table(2, vec![0, 1, 1], 0).is_err());
    }

    #[test]
    fn partial_maps_on_one_point() {
        let maps = vec![PartialMap::identity(1), PartialMap::empty(1, 1)];
        let m = FiniteMonoid::from_maps(&maps).unwrap();
        assert_eq!(m.zero(), Some(1));
        assert!(m.is_ideal(&[1]));
        assert!(!m.is_ideal(&[0]));
        assert_eq!(m.ideal_generated(&[0]), vec![0, 1]);
    }
}
