//! Line format for complexes and Moore families.
//!
//! ```text
//! kind=complex      # or kind=moore
//! v=4
//! 0 1 2
//! {}                # the empty set
//! ```
//!
//! A complex lists its facets, a Moore family its members.

use super::{MooreFamily, SimplicialComplex};
use crate::error::{Error, Result};
use crate::pointset::{PointSet, MAX_POINTS};

fn set_line(s: &PointSet) -> String {
    if s.is_empty() {
        "{}".to_string()
    } else {
        s.iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn write(kind: &str, v: usize, sets: &[PointSet]) -> String {
    let mut out = format!("kind={kind}\nv={v}\n");
    for s in sets {
        out.push_str(&set_line(s));
        out.push('\n');
    }
    out
}

pub fn write_complex(s: &SimplicialComplex) -> String {
    write("complex", s.v(), s.facets())
}

pub fn write_moore(m: &MooreFamily) -> String {
    write("moore", m.v(), m.members())
}

fn read(kind: &str, text: &str) -> Result<(usize, Vec<PointSet>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let (n, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    if header != format!("kind={kind}") {
        return Err(Error::parse(n, format!("expected kind={kind}")));
    }
    let (n, vline) = lines
        .next()
        .ok_or_else(|| Error::parse(n + 1, "missing v= line"))?;
    let v = vline
        .strip_prefix("v=")
        .and_then(|t| t.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::parse(n, "expected v=<n>"))?;
    if v > MAX_POINTS {
        return Err(Error::TooLarge {
            what: "point count",
            size: v,
            cap: MAX_POINTS,
        });
    }
    let mut sets = Vec::new();
    for (n, line) in lines {
        if line == "{}" {
            sets.push(PointSet::EMPTY);
            continue;
        }
        let mut s = PointSet::EMPTY;
        for t in line.split_whitespace() {
            let p: usize = t
                .parse()
                .map_err(|_| Error::parse(n, format!("bad point {t:?}")))?;
            if p >= v {
                return Err(Error::PointOutOfRange { point: p, size: v });
            }
            s.insert(p);
        }
        sets.push(s);
    }
    Ok((v, sets))
}

pub fn read_complex(text: &str) -> Result<SimplicialComplex> {
    let (v, sets) = read("complex", text)?;
    SimplicialComplex::from_faces(v, sets)
}

pub fn read_moore(text: &str) -> Result<MooreFamily> {
    let (v, sets) = read("moore", text)?;
    MooreFamily::new(v, sets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{flats, matroid_from_pbd};
    use crate::incidence::fano;

    #[test]
    fn round_trips() {
        let m = matroid_from_pbd(&fano());
        assert_eq!(read_complex(&write_complex(&m)).unwrap(), m);
        let l = flats(&m);
        let text = write_moore(&l);
        assert!(text.starts_with("kind=moore\nv=7\n{}\n0\n"));
        assert_eq!(read_moore(&text).unwrap(), l);
        assert!(read_moore(&write_complex(&m)).is_err());
    }
}
