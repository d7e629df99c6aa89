use anyhow::{ensure, Result};
use clap::{Args, ValueEnum};
use serde_json::json;
use wilson_core::wmonoid::{enumerate_wilson_seeded, search_block_image_morphisms};

use crate::input::load_design;
use crate::report::{digest, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Query {
    /// Elements of W(X) lying in non-regular J-classes.
    NonRegular,
    /// Morphisms whose image is a single block.
    BlockImage,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    pub query: Query,
    /// Steiner triple system files (or `catalog:<name>`).
    #[arg(required = true)]
    pub inputs: Vec<String>,
    #[arg(long, default_value_t = 13)]
    pub cap: usize,
    /// Witnesses reported per design.
    #[arg(long, default_value_t = 10)]
    pub limit: usize,
}

pub fn run(a: &ScanArgs, seed: u64) -> Result<Outcome> {
    let mut cases = Vec::new();
    let mut texts = String::new();
    let mut notes = Vec::new();
    for input in &a.inputs {
        let nd = load_design(input)?;
        ensure!(nd.design.is_sts(), "{input} is not a Steiner triple system");
        texts.push_str(&nd.canonical_text());
        match a.query {
            Query::NonRegular => {
                let w = enumerate_wilson_seeded(&nd.design, a.cap, seed)?;
                let p = w.green()?;
                let regular = p.regular_elements();
                let mut is_regular = vec![false; w.len()];
                regular.iter().for_each(|&i| is_regular[i] = true);
                let non_regular: Vec<_> = (0..w.len()).filter(|&i| !is_regular[i]).collect();
                notes.push(format!(
                    "{input}: {} elements, {} non-regular",
                    w.len(),
                    non_regular.len()
                ));
                cases.push(json!({
                    "design": nd.name,
                    "monoid": w.len(),
                    "non_regular": non_regular.len(),
                    "witnesses": non_regular
                        .iter()
                        .take(a.limit)
                        .map(|&i| w.elements()[i].to_string())
                        .collect::<Vec<_>>(),
                }));
            }
            Query::BlockImage => {
                let r = search_block_image_morphisms(&nd.design)?;
                notes.push(format!(
                    "{input}: {} blocks searched, {} block-image morphisms",
                    r.blocks_searched,
                    r.found.len()
                ));
                let mut v = serde_json::to_value(&r)?;
                v["design"] = json!(nd.name);
                v["found"] = json!(r
                    .found
                    .iter()
                    .take(a.limit)
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>());
                v["found_count"] = json!(r.found.len());
                cases.push(v);
            }
        }
    }
    let mut o = Outcome::new(json!({ "query": a.query.to_possible_value().map(|v| v.get_name().to_string()), "cases": cases }))
        .with_digest(digest(&texts));
    notes.into_iter().for_each(|n| o.note(n));
    Ok(o)
}
