use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde_json::json;
use wilson_core::incidence::{
    affine_space, complete_graph, cyclic_sts, hall_plane6, near_pencil, pbd_z7, projective_space,
    sts21, td3_from_latin, wilson_sts19, write_gdd, write_pbd, Pbd,
};
use wilson_core::mld::mld_design;

use crate::input::{parse_base_blocks, parse_latin};
use crate::report::{digest, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Complete,
    NearPencil,
    Projective,
    Affine,
    Hall6,
    Td3,
    PbdZ,
    Sts21,
    Sts19,
    CyclicSts,
    Mld,
    Trivial,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    pub family: Family,
    /// Point count (complete, near-pencil, trivial, pbd-z) or dimension
    /// (projective, affine).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// `cyclicN` or rows like `0 1;1 0`.
    #[arg(long)]
    pub latin: Option<String>,
    #[arg(long)]
    pub v: Option<usize>,
    /// Base blocks like `0,1,4;0,2,7`.
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Where to write the design; without it the design goes to stdout and
    /// the report to stderr.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: Family) -> Result<T> {
    match value {
        Some(v) => Ok(v),
        None => bail!("{family:?} needs --{flag}"),
    }
}

/// The design text for the requested family. GDD families come back with a
/// `groups=` line.
fn build(a: &ConstructArgs) -> Result<(String, usize, usize)> {
    let pbd = |x: Pbd| (write_pbd(&x), x.v(), x.num_blocks());
    let f = a.family;
    Ok(match f {
        Family::Complete => pbd(complete_graph(need(a.n, "n", f)?)?),
        Family::NearPencil => pbd(near_pencil(need(a.n, "n", f)?)?),
        Family::Projective => pbd(projective_space(need(a.n, "n", f)?, need(a.q, "q", f)?)?),
        Family::Affine => pbd(affine_space(need(a.n, "n", f)?, need(a.q, "q", f)?)?),
        Family::Hall6 => pbd(hall_plane6()),
        Family::PbdZ => {
            if a.n.is_some_and(|n| n != 7) {
                bail!("pbd-z is only available for n = 7");
            }
            pbd(pbd_z7())
        }
        Family::Sts21 => pbd(sts21()),
        Family::Sts19 => {
            let l = parse_latin(a.latin.as_deref().unwrap_or("cyclic6"))?;
            pbd(wilson_sts19(&l)?)
        }
        Family::Td3 => {
            let l = parse_latin(need(a.latin.as_deref(), "latin", f)?)?;
            let g = td3_from_latin(&l)?;
            (write_gdd(&g), g.v(), g.blocks().len())
        }
        Family::CyclicSts => {
            let base = parse_base_blocks(need(a.base.as_deref(), "base", f)?)?;
            pbd(cyclic_sts(need(a.v, "v", f)?, &base)?)
        }
        Family::Mld => pbd(mld_design(need(a.l, "l", f)?, need(a.d, "d", f)?)?.design),
        Family::Trivial => pbd(Pbd::trivial(need(a.n, "n", f)?)?),
    })
}

pub fn run(a: &ConstructArgs) -> Result<Outcome> {
    let (text, v, blocks) = build(a)?;
    let path = match &a.out {
        Some(p) => {
            fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            Some(p.display().to_string())
        }
        None => {
            print!("{text}");
            None
        }
    };
    let mut o = Outcome::new(json!({
        "family": a.family.to_possible_value().map(|v| v.get_name().to_string()),
        "v": v,
        "blocks": blocks,
        "path": path,
    }))
    .with_digest(digest(&text));
    o.note(format!(
        "constructed a design on {v} points with {blocks} blocks"
    ));
    Ok(o)
}
