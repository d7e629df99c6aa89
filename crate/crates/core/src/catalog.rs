//! Named designs used by the command line and the test suites.

use crate::error::{Error, Result};
use crate::incidence::{
    affine_space, complete_graph, cyclic_sts, fano, hall_plane6, near_pencil, pbd_z7,
    projective_space, sts21, wilson_sts19, LatinSquare, Pbd,
};
use crate::mld::mld_design;

/// Base blocks of the cyclic STS(13).
pub const STS13_BASE: [[usize; 3]; 2] = [[0, 1, 4], [0, 2, 7]];

pub fn cyclic_sts13() -> Pbd {
    cyclic_sts(13, &STS13_BASE.map(|b| b.to_vec())).expect("valid difference family")
}

/// Parameters of the one-big-block designs in the catalog.
pub const MLD_PARAMS: [(usize, usize); 5] = [(3, 1), (3, 2), (4, 1), (4, 2), (5, 2)];

/// Every catalog name, in a fixed order.
pub fn names() -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    out.push("sts3".into());
    out.extend((3..=6).map(|n| format!("complete{n}")));
    out.extend((3..=5).map(|n| format!("near-pencil{n}")));
    out.extend(
        [
            "fano", "ag23", "hall6", "pbd-z7", "sts13", "sts19", "sts21", "pg32",
        ]
        .map(String::from),
    );
    out.extend(MLD_PARAMS.iter().map(|(l, d)| format!("mld{l}-{d}")));
    out
}

/// Look a design up by catalog name.
pub fn lookup(name: &str) -> Result<Pbd> {
    let unknown = || Error::BadParams(format!("unknown catalog design {name:?}"));
    let number = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|s| s.parse::<usize>().ok())
    };
    if let Some(n) = number("complete") {
        return complete_graph(n);
    }
    if let Some(n) = number("near-pencil") {
        return near_pencil(n);
    }
    if let Some(rest) = name.strip_prefix("mld") {
        let (l, d) = rest.split_once('-').ok_or_else(unknown)?;
        let parse = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        return Ok(mld_design(parse(l)?, parse(d)?)?.design);
    }
    match name {
        "sts3" => Pbd::trivial(3),
        "fano" => Ok(fano()),
        "ag23" => affine_space(2, 3),
        "hall6" => Ok(hall_plane6()),
        "pbd-z7" => Ok(pbd_z7()),
        "sts13" => Ok(cyclic_sts13()),
        "sts19" => wilson_sts19(&LatinSquare::cyclic(6)),
        "sts21" => Ok(sts21()),
        "pg32" => projective_space(3, 2),
        _ => Err(unknown()),
    }
}

/// All catalog designs with their names.
pub fn all() -> Vec<(String, Pbd)> {
    names()
        .into_iter()
        .map(|n| {
            let x = lookup(&n).expect("catalog names resolve");
            (n, x)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        let sizes: Vec<(String, usize)> = all().into_iter().map(|(n, x)| (n, x.v())).collect();
        assert_eq!(sizes.len(), names().len());
        assert!(sizes.contains(&("sts19".to_string(), 19)));
        assert!(sizes.contains(&("pg32".to_string(), 15)));
        assert_eq!(cyclic_sts13().num_blocks(), 26);
        assert!(lookup("nonsense").is_err());
        assert!(lookup("mld2-1").is_err());
    }
}
