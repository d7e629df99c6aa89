use std::time::Instant;

use anyhow::Result;
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use wilson_core::catalog;
use wilson_core::complex::{epsilon, matroid_from_pbd, subsystems};
use wilson_core::incidence::Pbd;
use wilson_core::mld::{verify_complexity_lemmas, verify_greenw};
use wilson_core::morphism::{degree, MorphismChecker, PartialMap, UNDEF};
use wilson_core::wmonoid::{
    enumerate_wilson_seeded, rees_structure, translational_hull_size, DEFAULT_CAP,
};

use crate::input::{catalog_designs, NamedDesign};
use crate::report::{digest, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    ErectionEquivalence,
    MorphismEquivalence,
    Greenw,
    ComplexityLemmas,
    Hull,
    BibdUniform,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: Suite,
    /// Designs to check (catalog names or `.pbd` paths); each suite has a
    /// default list.
    #[arg(long = "design")]
    pub designs: Vec<String>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Largest point count for the exhaustive morphism check.
    #[arg(long, default_value_t = 7)]
    pub max_v: usize,
    /// Largest point count enumerated in full.
    #[arg(long)]
    pub cap: Option<usize>,
}

pub fn run(a: &VerifyArgs, seed: u64) -> Result<Outcome> {
    let start = Instant::now();
    let mut o = match a.suite {
        Suite::ErectionEquivalence => erection(a)?,
        Suite::MorphismEquivalence => morphism_equivalence(a)?,
        Suite::Greenw => greenw(a, &[(3, 1), (3, 2), (4, 2)])?,
        Suite::ComplexityLemmas => complexity(a, &[(3, 2)])?,
        Suite::Hull => hull(a, seed)?,
        Suite::BibdUniform => bibd_uniform(a, seed)?,
    };
    o.note(format!("finished in {:.2?}", start.elapsed()));
    Ok(o)
}

fn designs_digest(ds: &[NamedDesign]) -> String {
    digest(&ds.iter().map(|d| d.canonical_text()).collect::<String>())
}

fn erection(a: &VerifyArgs) -> Result<Outcome> {
    let ds: Vec<NamedDesign> = if a.designs.is_empty() {
        catalog::all()
            .into_iter()
            .filter(|(_, x)| !x.is_degenerate())
            .map(|(name, design)| NamedDesign { name, design })
            .collect()
    } else {
        catalog_designs(&a.designs, &[])?
    };
    let rows: Vec<(Value, bool)> = ds
        .iter()
        .map(|nd| {
            if nd.design.is_degenerate() {
                return skipped(nd, "a single block has no rank-3 matroid");
            }
            let eps = epsilon(&matroid_from_pbd(&nd.design));
            let subs = subsystems(&nd.design);
            let equal = eps.members() == subs.members();
            let witness = eps
                .members()
                .iter()
                .find(|s| !subs.contains(**s))
                .or_else(|| subs.members().iter().find(|s| !eps.contains(**s)));
            (
                json!({
                    "design": nd.name,
                    "v": nd.design.v(),
                    "members": eps.len(),
                    "equal": equal,
                    "witness": witness,
                }),
                equal,
            )
        })
        .collect();
    finish("erection-equivalence", &ds, rows)
}

fn skipped(nd: &NamedDesign, reason: &str) -> (Value, bool) {
    (json!({ "design": nd.name, "skipped": reason }), true)
}

fn finish(suite: &str, ds: &[NamedDesign], rows: Vec<(Value, bool)>) -> Result<Outcome> {
    let passed = rows.iter().all(|r| r.1);
    let failed: Vec<&Value> = rows.iter().filter(|r| !r.1).map(|r| &r.0).collect();
    let mut o = Outcome::new(json!({
        "suite": suite,
        "cases": rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
    }))
    .with_digest(designs_digest(ds))
    .with_verdict(passed);
    o.note(format!(
        "{suite}: {} of {} cases pass",
        rows.len() - failed.len(),
        rows.len()
    ));
    for f in failed {
        o.note(format!("  failed: {f}"));
    }
    Ok(o)
}

/// The partial map numbered `code` in base `v + 1`, digit `v` meaning
/// undefined.
fn decode(v: usize, mut code: usize) -> PartialMap {
    let table = (0..v)
        .map(|_| {
            let d = code % (v + 1);
            code /= v + 1;
            if d == v {
                UNDEF
            } else {
                d as u8
            }
        })
        .collect();
    PartialMap::from_table(v, table)
}

fn morphism_equivalence(a: &VerifyArgs) -> Result<Outcome> {
    let ds: Vec<NamedDesign> = if a.designs.is_empty() {
        catalog::all()
            .into_iter()
            .filter(|(_, x)| x.v() <= a.max_v)
            .map(|(name, design)| NamedDesign { name, design })
            .collect()
    } else {
        catalog_designs(&a.designs, &[])?
    };
    let mut rows = Vec::new();
    for nd in &ds {
        let x = &nd.design;
        let v = x.v();
        let checker = MorphismChecker::new(x, x);
        let total = (v + 1).pow(v as u32);
        let verdicts = |f: &PartialMap| -> (bool, bool, bool) {
            (
                checker.is_morphism(f).unwrap(),
                checker.is_morphism_by_definition(f).unwrap(),
                checker.is_morphism_blockwise(f).unwrap(),
            )
        };
        let (morphisms, discrepancies) = (0..total)
            .into_par_iter()
            .map(|code| {
                let (a, b, c) = verdicts(&decode(v, code));
                (usize::from(a), usize::from(a != b || a != c))
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        let witness = (discrepancies > 0).then(|| {
            (0..total)
                .into_par_iter()
                .map(|code| decode(v, code))
                .find_first(|f| {
                    let (a, b, c) = verdicts(f);
                    a != b || a != c
                })
        });
        rows.push((
            json!({
                "design": nd.name,
                "v": v,
                "maps": total,
                "morphisms": morphisms,
                "discrepancies": discrepancies,
                "witness": witness.flatten(),
            }),
            discrepancies == 0,
        ));
    }
    finish("morphism-equivalence", &ds, rows)
}

fn params(a: &VerifyArgs, default: &[(usize, usize)]) -> Vec<(usize, usize)> {
    match (a.l, a.d) {
        (None, None) => default.to_vec(),
        (l, d) => vec![(l.unwrap_or(3), d.unwrap_or(1))],
    }
}

fn params_digest(ps: &[(usize, usize)]) -> String {
    digest(&format!("{ps:?}"))
}

fn greenw(a: &VerifyArgs, default: &[(usize, usize)]) -> Result<Outcome> {
    let ps = params(a, default);
    let mut reports = Vec::new();
    let mut o_notes = Vec::new();
    let mut passed = true;
    for &(l, d) in &ps {
        let r = verify_greenw(l, d)?;
        passed &= r.passed();
        o_notes.push(format!(
            "greenw ({l},{d}): {} elements, {} regular J-classes, {}",
            r.monoid_size,
            r.regular_classes.len(),
            if r.passed() { "pass" } else { "FAIL" }
        ));
        reports.push(serde_json::to_value(&r)?);
    }
    let mut o = Outcome::new(json!({ "suite": "greenw", "cases": reports }))
        .with_digest(params_digest(&ps))
        .with_verdict(passed);
    o_notes.into_iter().for_each(|n| o.note(n));
    Ok(o)
}

fn complexity(a: &VerifyArgs, default: &[(usize, usize)]) -> Result<Outcome> {
    let ps = params(a, default);
    let mut reports = Vec::new();
    let mut passed = true;
    let mut notes = Vec::new();
    for &(l, d) in &ps {
        let r = verify_complexity_lemmas(l, d)?;
        passed &= r.passed();
        notes.push(format!(
            "complexity lemmas ({l},{d}): {}",
            if r.passed() { "pass" } else { "FAIL" }
        ));
        reports.push(serde_json::to_value(&r)?);
    }
    let mut o = Outcome::new(json!({ "suite": "complexity-lemmas", "cases": reports }))
        .with_digest(params_digest(&ps))
        .with_verdict(passed);
    notes.into_iter().for_each(|n| o.note(n));
    Ok(o)
}

fn hull(a: &VerifyArgs, seed: u64) -> Result<Outcome> {
    let ds = catalog_designs(&a.designs, &["sts3", "fano", "near-pencil3", "complete4"])?;
    let cap = a.cap.unwrap_or(DEFAULT_CAP);
    let mut rows = Vec::new();
    for nd in &ds {
        let w = enumerate_wilson_seeded(&nd.design, cap, seed)?;
        let r = rees_structure(&nd.design)?;
        let h = translational_hull_size(&r)?;
        rows.push((
            json!({
                "design": nd.name,
                "monoid": w.len(),
                "rows": r.num_rows(),
                "columns": r.num_columns(),
                "reduced": r.is_reduced(),
                "hull": h,
            }),
            h == w.len(),
        ));
    }
    finish("hull", &ds, rows)
}

/// Every element with nonempty image is an open map with equal fibers.
fn uniform_fibers(x: &Pbd, elements: &[PartialMap]) -> (usize, Option<String>) {
    let checker = MorphismChecker::new(x, x);
    let bad: Vec<String> = elements
        .par_iter()
        .filter(|f| f.rank() > 0)
        .filter_map(|f| {
            let problem = match (checker.is_open_morphism(f), degree(f, x)) {
                (Ok(true), Ok(d)) if f.domain().len() == d * f.rank() => return None,
                (Ok(true), Ok(d)) => format!("|Dom| != {d}·|Im|"),
                (Ok(false), _) => "not open".to_string(),
                (Err(e), _) | (_, Err(e)) => e.to_string(),
            };
            Some(format!("{f}: {problem}"))
        })
        .collect();
    let checked = elements.iter().filter(|f| f.rank() > 0).count();
    (checked, bad.into_iter().next())
}

/// Default enumeration bound for the uniform-fiber suite.
const BIBD_CAP: usize = 15;

fn bibd_uniform(a: &VerifyArgs, seed: u64) -> Result<Outcome> {
    let ds = catalog_designs(&a.designs, &["sts3", "fano", "ag23", "sts13"])?;
    let mut rows = Vec::new();
    for nd in &ds {
        let x = &nd.design;
        if x.uniform_block_size().is_none_or(|k| k < 3) {
            rows.push(skipped(nd, "needs constant block size at least 3"));
            continue;
        }
        let cap = a.cap.unwrap_or(BIBD_CAP);
        let w = enumerate_wilson_seeded(x, cap, seed)?;
        let (checked, witness) = uniform_fibers(x, w.elements());
        rows.push((
            json!({
                "design": nd.name,
                "monoid": w.len(),
                "checked": checked,
                "witness": witness,
            }),
            witness.is_none(),
        ));
    }
    finish("bibd-uniform", &ds, rows)
}
