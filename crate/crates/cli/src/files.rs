//! JSON group and involution descriptors.
//!
//! Group: `{"basis": [names], "commutators": {"[gs,gt]": word}, "ucs": [starts]}`
//! with `s` after `t` in the basis and every word in normal form over later
//! generators. Involution: `{"images": {name: word}}`; images of generators
//! that are stored commutators may be omitted.

use std::collections::BTreeMap;
use std::path::Path;

use forge_core::nilgroup::{GroupElem, GroupInvolution, PcGroup};
use serde::Deserialize;

use crate::report::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub basis: Vec<String>,
    #[serde(default)]
    pub commutators: BTreeMap<String, String>,
    pub ucs: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionFile {
    pub images: BTreeMap<String, String>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::config(format!("cannot read {}: {}", path.display(), e)))
}

fn index(basis: &[String], name: &str) -> Result<usize, CliError> {
    basis.iter().position(|b| b == name).ok_or_else(|| CliError::config(format!("unknown generator {}", name)))
}

/// `g_a^e * g_b^f * …` with strictly increasing indices.
fn normal_word(basis: &[String], w: &str) -> Result<GroupElem, CliError> {
    let mut exps = vec![0i64; basis.len()];
    let w = w.trim();
    if w == "1" {
        return Ok(GroupElem::from_exps(exps));
    }
    let mut last = None;
    for part in w.split('*') {
        let (name, e) = match part.trim().split_once('^') {
            Some((n, e)) => {
                let e = e.trim().trim_start_matches('(').trim_end_matches(')');
                (n.trim(), e.parse::<i64>().map_err(|_| CliError::config(format!("bad exponent in {}", w)))?)
            }
            None => (part.trim(), 1),
        };
        let k = index(basis, name)?;
        if last.is_some_and(|l| l >= k) {
            return Err(CliError::config(format!("commutator value {} is not in normal form", w)));
        }
        last = Some(k);
        exps[k] = e;
    }
    Ok(GroupElem::from_exps(exps))
}

pub fn parse_group(text: &str) -> Result<PcGroup, CliError> {
    let f: GroupFile = serde_json::from_str(text).map_err(|e| CliError::config(format!("group file: {}", e)))?;
    let mut comms = Vec::new();
    for (key, val) in &f.commutators {
        let inner = key
            .trim()
            .strip_prefix('[')
            .and_then(|k| k.strip_suffix(']'))
            .ok_or_else(|| CliError::config(format!("commutator key {} is not of the form [gs,gt]", key)))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| CliError::config(format!("commutator key {} lacks a comma", key)))?;
        let (s, t) = (index(&f.basis, a.trim())?, index(&f.basis, b.trim())?);
        if s <= t {
            return Err(CliError::config(format!("commutator key {} must list the later generator first", key)));
        }
        comms.push((s, t, normal_word(&f.basis, val)?));
    }
    PcGroup::new(f.basis, &comms, f.ucs).map_err(CliError::config)
}

pub fn parse_involution(g: &PcGroup, text: &str) -> Result<GroupInvolution, CliError> {
    let f: InvolutionFile = serde_json::from_str(text).map_err(|e| CliError::config(format!("involution file: {}", e)))?;
    let mut given = BTreeMap::new();
    for (name, word) in &f.images {
        let k = g.index_of(name).ok_or_else(|| CliError::config(format!("unknown generator {}", name)))?;
        let w = g.parse_word(word).ok_or_else(|| CliError::config(format!("cannot parse word {}", word)))?;
        given.insert(k, w);
    }
    GroupInvolution::from_partial(g, &given).map_err(CliError::config)
}

pub fn load_group(path: &Path) -> Result<PcGroup, CliError> {
    parse_group(&read(path)?)
}

pub fn load_involution(g: &PcGroup, path: &Path) -> Result<GroupInvolution, CliError> {
    parse_involution(g, &read(path)?)
}

pub fn load_text(path: &Path) -> Result<String, CliError> {
    read(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEIS: &str = r#"{"basis": ["x", "y", "z"], "commutators": {"[y,x]": "z"}, "ucs": [2, 0]}"#;

    #[test]
    fn heisenberg_round_trip() {
        assert_eq!(parse_group(HEIS).unwrap(), PcGroup::heisenberg());
    }

    #[test]
    fn class_three_matches_builtin() {
        let text = r#"{"basis": ["x", "y", "z", "u", "w"],
            "commutators": {"[y,x]": "z", "[z,x]": "u", "[z,y]": "w"}, "ucs": [3, 2, 0]}"#;
        assert_eq!(parse_group(text).unwrap(), PcGroup::free_nilpotent_rank2_class3());
    }

    #[test]
    fn rejects_bad_keys_and_words() {
        let bad = [
            r#"{"basis": ["x", "y", "z"], "commutators": {"[x,y]": "z"}, "ucs": [2, 0]}"#,
            r#"{"basis": ["x", "y", "z"], "commutators": {"[y,x]": "q"}, "ucs": [2, 0]}"#,
            r#"{"basis": ["x", "y", "z"], "commutators": {"y,x": "z"}, "ucs": [2, 0]}"#,
            r#"{"basis": ["x", "y", "z"], "commutators": {"[y,x]": "z"}, "ucs": [0, 2]}"#,
            r#"{"basis": ["x", "y", "z"], "commutators": {"[y,x]": "z"}}"#,
        ];
        for b in bad {
            assert_eq!(parse_group(b).unwrap_err().code, 2, "{}", b);
        }
    }

    #[test]
    fn involution_completes_commutator_images() {
        let g = parse_group(HEIS).unwrap();
        let inv = parse_involution(&g, r#"{"images": {"x": "y", "y": "x"}}"#).unwrap();
        assert_eq!(inv.apply(&g, &g.generator(2)), g.generator(2));
        assert!(parse_involution(&g, r#"{"images": {"x": "x*y", "y": "y"}}"#).is_err());
    }
}
