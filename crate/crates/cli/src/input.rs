use std::fs;

use anyhow::{Context, Result};
use wilson_core::catalog;
use wilson_core::incidence::{read_pbd_allow_degenerate, write_pbd, LatinSquare, Pbd};

/// A design named on the command line, either a `.pbd` path or
/// `catalog:<name>`.
pub struct NamedDesign {
    pub name: String,
    pub design: Pbd,
}

impl NamedDesign {
    pub fn canonical_text(&self) -> String {
        write_pbd(&self.design)
    }
}

pub fn load_design(source: &str) -> Result<NamedDesign> {
    if let Some(name) = source.strip_prefix("catalog:") {
        return Ok(NamedDesign {
            name: name.to_string(),
            design: catalog::lookup(name)?,
        });
    }
    let text = fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    let design = read_pbd_allow_degenerate(&text).with_context(|| format!("parsing {source}"))?;
    Ok(NamedDesign {
        name: source.to_string(),
        design,
    })
}

/// Catalog designs by name, defaulting to `default` when `names` is empty.
pub fn catalog_designs(names: &[String], default: &[&str]) -> Result<Vec<NamedDesign>> {
    let names: Vec<String> = if names.is_empty() {
        default.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    names
        .iter()
        .map(|n| {
            if n.contains('/') || n.ends_with(".pbd") {
                load_design(n)
            } else {
                load_design(&format!("catalog:{}", n.trim_start_matches("catalog:")))
            }
        })
        .collect()
}

/// `cyclicN`, or rows separated by `;` with space-separated entries.
pub fn parse_latin(text: &str) -> Result<LatinSquare> {
    if let Some(n) = text.strip_prefix("cyclic") {
        let m: usize = n
            .parse()
            .with_context(|| format!("bad order in {text:?}"))?;
        anyhow::ensure!(m >= 1, "Latin square order must be positive");
        return Ok(LatinSquare::cyclic(m));
    }
    let rows = text
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .with_context(|| format!("bad entry {t:?}"))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LatinSquare::new(rows)?)
}

/// Base blocks written as `0,1,4;0,2,7`.
pub fn parse_base_blocks(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split(';')
        .map(|b| {
            b.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .with_context(|| format!("bad point {t:?}"))
                })
                .collect()
        })
        .collect()
}
