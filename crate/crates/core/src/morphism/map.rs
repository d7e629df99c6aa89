use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};

/// Table entry for a point where the map is undefined.
pub const UNDEF: u8 = u8::MAX;

/// A partial map from `0..source_size` to `0..target_size`.
///
/// Text form: `map v=4 -> w=3: 0 _ 2 2`, with `_` for undefined points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    source_size: usize,
    target_size: usize,
    table: Vec<u8>,
}

impl PartialMap {
    pub fn new(target_size: usize, values: &[Option<usize>]) -> Result<Self> {
        if values.len() > MAX_POINTS || target_size > MAX_POINTS {
            return Err(Error::TooLarge {
                what: "map size",
                size: values.len().max(target_size),
                cap: MAX_POINTS,
            });
        }
        let table = values
            .iter()
            .map(|v| match *v {
                None => Ok(UNDEF),
                Some(t) if t < target_size => Ok(t as u8),
                Some(t) => Err(Error::PointOutOfRange {
                    point: t,
                    size: target_size,
                }),
            })
            .collect::<Result<_>>()?;
        Ok(PartialMap {
            source_size: values.len(),
            target_size,
            table,
        })
    }

    /// Build from a raw table; entries must be below `target_size` or
    /// [`UNDEF`].
    pub fn from_table(target_size: usize, table: Vec<u8>) -> Self {
        debug_assert!(table
            .iter()
            .all(|&t| t == UNDEF || (t as usize) < target_size));
        PartialMap {
            source_size: table.len(),
            target_size,
            table,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_table(n, (0..n as u8).collect())
    }

    /// The nowhere-defined map.
    pub fn empty(source_size: usize, target_size: usize) -> Self {
        Self::from_table(target_size, vec![UNDEF; source_size])
    }

    /// The partial constant with domain `domain` and value `p`.
    pub fn constant(source_size: usize, target_size: usize, p: usize, domain: PointSet) -> Self {
        let table = (0..source_size)
            .map(|i| if domain.contains(i) { p as u8 } else { UNDEF })
            .collect();
        Self::from_table(target_size, table)
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn get(&self, p: usize) -> Option<usize> {
        match self.table[p] {
            UNDEF => None,
            t => Some(t as usize),
        }
    }

    pub fn domain(&self) -> PointSet {
        (0..self.source_size)
            .filter(|&p| self.table[p] != UNDEF)
            .collect()
    }

    /// Points where the map is undefined.
    pub fn undefined_set(&self) -> PointSet {
        (0..self.source_size)
            .filter(|&p| self.table[p] == UNDEF)
            .collect()
    }

    pub fn image(&self) -> PointSet {
        self.table
            .iter()
            .filter(|&&t| t != UNDEF)
            .map(|&t| t as usize)
            .collect()
    }

    pub fn image_of(&self, s: PointSet) -> PointSet {
        s.iter().filter_map(|p| self.get(p)).collect()
    }

    /// Ordinary preimage.
    pub fn preimage(&self, s: PointSet) -> PointSet {
        (0..self.source_size)
            .filter(|&p| self.table[p] != UNDEF && s.contains(self.table[p] as usize))
            .collect()
    }

    /// Number of image points.
    pub fn rank(&self) -> usize {
        self.image().len()
    }

    pub fn is_total(&self) -> bool {
        self.table.iter().all(|&t| t != UNDEF)
    }

    /// Points fixed by the map.
    pub fn fixed_points(&self) -> PointSet {
        (0..self.source_size)
            .filter(|&p| self.table[p] as usize == p)
            .collect()
    }

    /// True iff defined everywhere on `s` and one-to-one there.
    pub fn is_injective_on(&self, s: PointSet) -> bool {
        let mut seen = PointSet::EMPTY;
        s.iter().all(|p| match self.get(p) {
            Some(t) if !seen.contains(t) => {
                seen.insert(t);
                true
            }
            _ => false,
        })
    }

    /// `self ∘ f`: apply `f` first.
    pub fn after(&self, f: &PartialMap) -> Result<PartialMap> {
        if f.target_size != self.source_size {
            return Err(Error::SizeMismatch(format!(
                "cannot compose a map on {} points after a map into {} points",
                self.source_size, f.target_size
            )));
        }
        Ok(self.after_unchecked(f))
    }

    pub(crate) fn after_unchecked(&self, f: &PartialMap) -> PartialMap {
        let table = f
            .table
            .iter()
            .map(|&t| {
                if t == UNDEF {
                    UNDEF
                } else {
                    self.table[t as usize]
                }
            })
            .collect();
        PartialMap {
            source_size: f.source_size,
            target_size: self.target_size,
            table,
        }
    }

    /// The partition of the domain by image value.
    pub fn kernel(&self) -> Partition {
        let mut classes: Vec<PointSet> = Vec::new();
        let mut by_value = vec![None::<usize>; self.target_size];
        for p in 0..self.source_size {
            if let Some(t) = self.get(p) {
                match by_value[t] {
                    Some(i) => classes[i].insert(p),
                    None => {
                        by_value[t] = Some(classes.len());
                        classes.push(PointSet::singleton(p));
                    }
                }
            }
        }
        Partition {
            domain: self.domain(),
            classes,
        }
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "map v={} -> w={}:", self.source_size, self.target_size)?;
        for &t in &self.table {
            if t == UNDEF {
                write!(f, " _")?;
            } else {
                write!(f, " {t}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PartialMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::parse(1, msg.to_string());
        let rest = s
            .trim()
            .strip_prefix("map")
            .ok_or_else(|| bad("expected `map`"))?;
        let (head, values) = rest.split_once(':').ok_or_else(|| bad("expected `:`"))?;
        let (src, dst) = head.split_once("->").ok_or_else(|| bad("expected `->`"))?;
        let size = |t: &str, key: &str| -> Result<usize> {
            t.trim()
                .strip_prefix(key)
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| bad(&format!("expected {key}<n>")))
        };
        let (n, m) = (size(src, "v=")?, size(dst, "w=")?);
        let vals = values
            .split_whitespace()
            .map(|t| {
                if t == "_" {
                    Ok(None)
                } else {
                    t.parse().map(Some).map_err(|_| bad("bad value"))
                }
            })
            .collect::<Result<Vec<Option<usize>>>>()?;
        if vals.len() != n {
            return Err(bad(&format!("expected {n} values, found {}", vals.len())));
        }
        PartialMap::new(m, &vals)
    }
}

impl Serialize for PartialMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A partition of a subset of the points into nonempty classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    domain: PointSet,
    classes: Vec<PointSet>,
}

impl Partition {
    pub fn new(domain: PointSet, mut classes: Vec<PointSet>) -> Result<Self> {
        let mut seen = PointSet::EMPTY;
        for c in &classes {
            if c.is_empty() || !c.is_disjoint(seen) {
                return Err(Error::BadParams(
                    "partition classes must be nonempty and disjoint".into(),
                ));
            }
            seen = seen.union(*c);
        }
        if seen != domain {
            return Err(Error::BadParams(
                "partition classes do not cover the domain".into(),
            ));
        }
        classes.sort_by_key(|c| (*c).min());
        Ok(Partition { domain, classes })
    }

    pub fn discrete(domain: PointSet) -> Self {
        Partition {
            domain,
            classes: domain.iter().map(PointSet::singleton).collect(),
        }
    }

    pub fn domain(&self) -> PointSet {
        self.domain
    }

    /// Classes ordered by their smallest point.
    pub fn classes(&self) -> &[PointSet] {
        &self.classes
    }

    pub fn class_of(&self, p: usize) -> Option<PointSet> {
        self.classes.iter().copied().find(|c| c.contains(p))
    }

    /// The partition restricted to `s` (empty classes dropped).
    pub fn restrict(&self, s: PointSet) -> Partition {
        let classes = self
            .classes
            .iter()
            .map(|c| c.intersection(s))
            .filter(|c| !c.is_empty())
            .collect();
        Partition {
            domain: self.domain.intersection(s),
            classes,
        }
    }
}
