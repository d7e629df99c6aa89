use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde_json::{json, Map, Value};
use wilson_core::complex::{
    epsilon, is_graded_lattice, is_subsystem_free, matroid_from_pbd, subsystems, transversals,
};
use wilson_core::green::egg_box;
use wilson_core::incidence::Pbd;
use wilson_core::wmonoid::{enumerate_wilson_seeded, monoid_report, DEFAULT_CAP};

use crate::input::load_design;
use crate::report::{digest, Outcome};

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// A `.pbd` file or `catalog:<name>`.
    pub input: String,
    #[arg(long)]
    pub subsystems: bool,
    #[arg(long)]
    pub epsilon: bool,
    /// Purity, matroid and gradedness of the boolean representable complex.
    #[arg(long)]
    pub brsc: bool,
    /// Enumerate the Wilson monoid and summarize it.
    #[arg(long)]
    pub monoid: bool,
    #[arg(long)]
    pub eggbox: bool,
    /// Write the monoid elements, one partial map per line.
    #[arg(long)]
    pub elements: Option<PathBuf>,
    /// Largest point count enumerated in full.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

fn size_histogram(sizes: impl Iterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for s in sizes {
        *h.entry(s).or_insert(0) += 1;
    }
    h
}

fn design_summary(x: &Pbd) -> Value {
    json!({
        "v": x.v(),
        "blocks": x.num_blocks(),
        "block_sizes": size_histogram(x.blocks().iter().map(|b| b.len())),
        "sts": x.is_sts(),
    })
}

fn subsystem_section(x: &Pbd) -> Value {
    let subs = subsystems(x);
    let proper: Vec<_> = subs
        .members()
        .iter()
        .filter(|s| s.len() > 2 && s.len() < x.v())
        .collect();
    json!({
        "count": subs.len(),
        "sizes": size_histogram(subs.members().iter().map(|s| s.len())),
        "subsystem_free": is_subsystem_free(x),
        "proper": proper,
    })
}

fn epsilon_section(x: &Pbd) -> Value {
    let eps = epsilon(&matroid_from_pbd(x));
    let subs = subsystems(x);
    json!({
        "stats": eps.lattice().stats(),
        "equals_subsystems": eps.members() == subs.members(),
    })
}

fn brsc_section(x: &Pbd) -> Value {
    let eps = epsilon(&matroid_from_pbd(x));
    let c = transversals(&eps, x.v());
    json!({
        "bases": c.facets(),
        "rank": c.rank(),
        "pure": c.is_pure(),
        "matroid": c.is_matroid(),
        "graded": is_graded_lattice(&eps.lattice()),
    })
}

pub fn run(a: &AnalyzeArgs, seed: u64) -> Result<Outcome> {
    let named = load_design(&a.input)?;
    let x = &named.design;
    let any = a.subsystems || a.epsilon || a.brsc || a.monoid || a.eggbox || a.elements.is_some();
    let mut out = Map::new();
    out.insert("design".into(), design_summary(x));
    let mut summary = vec![format!(
        "{}: {} points, {} blocks",
        named.name,
        x.v(),
        x.num_blocks()
    )];
    if a.subsystems || !any {
        out.insert("subsystems".into(), subsystem_section(x));
    }
    if a.epsilon || !any {
        out.insert("epsilon".into(), epsilon_section(x));
    }
    if a.brsc || !any {
        let b = brsc_section(x);
        summary.push(format!("brsc: pure={} matroid={}", b["pure"], b["matroid"]));
        out.insert("brsc".into(), b);
    }
    if a.monoid || a.eggbox || a.elements.is_some() {
        let w = enumerate_wilson_seeded(x, a.cap, seed)?;
        if a.monoid {
            let r = monoid_report(&w)?;
            summary.push(format!(
                "monoid: {} elements, {} units, ideal {}, small={}",
                r.size, r.units, r.ideal, r.small
            ));
            out.insert("monoid".into(), serde_json::to_value(r)?);
        }
        if a.eggbox {
            let p = w.green()?;
            out.insert(
                "eggbox".into(),
                serde_json::to_value(egg_box(w.monoid(), p))?,
            );
        }
        if let Some(path) = &a.elements {
            let text: String = w.elements().iter().map(|f| format!("{f}\n")).collect();
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            out.insert("elements_path".into(), json!(path.display().to_string()));
        }
    }
    let mut o = Outcome::new(Value::Object(out)).with_digest(digest(&named.canonical_text()));
    for s in summary {
        o.note(s);
    }
    Ok(o)
}
