//! The `.pbd` text format.
//!
//! ```text
//! v=7
//! # optional, GDDs only
//! groups=0 1 | 2 3 | 4 5 6
//! 0 1 3
//! 1 2 4
//! ```
//!
//! The first non-comment line is `v=<n>`. An optional `groups=` line lists
//! the groups separated by `|`. Every other nonempty line is one block of
//! space-separated 0-based points. `#` starts a comment.

use super::{Gdd, Pbd};
use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};

/// Raw contents of a design file, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignFile {
    pub v: usize,
    pub groups: Option<Vec<Vec<usize>>>,
    pub blocks: Vec<Vec<usize>>,
}

fn parse_points(line_no: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("expected a point index, found {t:?}")))
        })
        .collect()
}

impl DesignFile {
    pub fn parse(text: &str) -> Result<DesignFile> {
        let mut v = None;
        let mut groups = None;
        let mut blocks = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if v.is_none() {
                let n = line
                    .strip_prefix("v=")
                    .ok_or_else(|| Error::parse(line_no, "first line must be v=<n>"))?
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line_no, "v= needs a nonnegative integer"))?;
                if n > MAX_POINTS {
                    return Err(Error::TooLarge {
                        what: "point count",
                        size: n,
                        cap: MAX_POINTS,
                    });
                }
                v = Some(n);
            } else if let Some(rest) = line.strip_prefix("groups=") {
                if groups.is_some() || !blocks.is_empty() {
                    return Err(Error::parse(line_no, "groups= must come right after v="));
                }
                groups = Some(
                    rest.split('|')
                        .map(|g| parse_points(line_no, g))
                        .collect::<Result<Vec<_>>>()?,
                );
            } else if line.contains('=') {
                return Err(Error::parse(line_no, format!("unknown header {line:?}")));
            } else {
                blocks.push(parse_points(line_no, line)?);
            }
        }
        let v = v.ok_or_else(|| Error::parse(1, "missing v= line"))?;
        Ok(DesignFile { v, groups, blocks })
    }
}

fn block_line(b: &PointSet) -> String {
    b.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical text of a PBD.
pub fn write_pbd(x: &Pbd) -> String {
    let mut out = format!("v={}\n", x.v());
    for b in x.blocks() {
        out.push_str(&block_line(b));
        out.push('\n');
    }
    out
}

/// Canonical text of a GDD.
pub fn write_gdd(g: &Gdd) -> String {
    let groups: Vec<String> = g.groups().iter().map(block_line).collect();
    let mut out = format!("v={}\ngroups={}\n", g.v(), groups.join(" | "));
    for b in g.blocks() {
        out.push_str(&block_line(b));
        out.push('\n');
    }
    out
}

/// Parse and validate a PBD. Files with a `groups=` line are GDDs and are
/// rejected here; see [`read_gdd`].
pub fn read_pbd(text: &str) -> Result<Pbd> {
    let f = DesignFile::parse(text)?;
    reject_groups(&f)?;
    Pbd::new(f.v, f.blocks)
}

/// Like [`read_pbd`] but admits the single-block system.
pub fn read_pbd_allow_degenerate(text: &str) -> Result<Pbd> {
    let f = DesignFile::parse(text)?;
    reject_groups(&f)?;
    Pbd::new_allow_degenerate(f.v, f.blocks)
}

fn reject_groups(f: &DesignFile) -> Result<()> {
    match &f.groups {
        Some(_) => Err(Error::parse(
            2,
            "file describes a GDD (groups= line); read it as a GDD",
        )),
        None => Ok(()),
    }
}

pub fn read_gdd(text: &str) -> Result<Gdd> {
    let f = DesignFile::parse(text)?;
    let groups = f
        .groups
        .ok_or_else(|| Error::parse(2, "missing groups= line"))?;
    let check = |s: &Vec<usize>| -> Result<PointSet> {
        match s.iter().find(|&&p| p >= f.v) {
            Some(&p) => Err(Error::PointOutOfRange {
                point: p,
                size: f.v,
            }),
            None => Ok(s.iter().collect()),
        }
    };
    Gdd::new(
        f.v,
        groups.iter().map(check).collect::<Result<_>>()?,
        f.blocks.iter().map(check).collect::<Result<_>>()?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{fano, td3_from_latin, LatinSquare};

    #[test]
    fn round_trip_pbd() {
        let x = fano();
        let text = write_pbd(&x);
        assert!(text.starts_with("v=7\n0 1 2\n"));
        assert_eq!(read_pbd(&text).unwrap(), x);
    }

    #[test]
    fn reader_accepts_any_order_and_comments() {
        let text = "# near pencil\nv=4\n\n3 2 1  # big block\n0 3\n0 1\n2 0\n";
        let x = read_pbd(text).unwrap();
        assert_eq!(
            x.block_lists(),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2, 3]]
        );
    }

    #[test]
    fn round_trip_gdd() {
        let g = td3_from_latin(&LatinSquare::cyclic(3)).unwrap();
        let text = write_gdd(&g);
        assert!(text.contains("groups=0 1 2 | 3 4 5 | 6 7 8"));
        assert_eq!(read_gdd(&text).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            read_pbd("0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_pbd("v=3\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_pbd("v=3\nfoo=1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_pbd("v=3\n0 1 2\n"),
            Err(Error::DegenerateCase(_))
        ));
        assert!(read_pbd_allow_degenerate("v=3\n0 1 2\n")
            .unwrap()
            .is_degenerate());
    }
}
