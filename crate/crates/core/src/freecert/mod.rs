//! Evidence that a pair of units generates a free group: bounded relation
//! search with exact arithmetic, and valuation checks driven by a criterion
//! data file.

mod criterion;
mod modimage;
mod search;
mod valuation;

pub use criterion::{check_criterion, CriterionDescriptor, CriterionOutcome, EntryRef, ValuationConstraint};
pub use modimage::ModImage;
pub use search::{
    evaluate_word, relation_search, relation_search_with, render_word, search, ClearedMonoid, ModularMonoid, Oracle,
    SearchOutcome, WordMonoid, LETTERS,
};
pub use valuation::Valuation;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::BaseField;
use crate::heisenspec::{lookup_pair, HeisError, Specializer};
use crate::symbolalg::{regular_rep, SymElem, SymError, SymbolAlgebra};

#[derive(Debug, Error)]
pub enum CertError {
    #[error(transparent)]
    Heis(#[from] HeisError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("malformed criterion: {0}")]
    MalformedCriterion(String),
    #[error("unknown method: {0}")]
    UnknownMethod(String),
    #[error("witness {0} does not re-evaluate to 1")]
    UnsoundWitness(String),
}

pub const DEFAULT_BOUND: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    RelationSearch,
    PingpongGl14,
}

impl Method {
    pub fn parse(s: &str) -> Result<Self, CertError> {
        match s {
            "relation-search" => Ok(Method::RelationSearch),
            "pingpong-gl14" => Ok(Method::PingpongGl14),
            _ => Err(CertError::UnknownMethod(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Verdict {
    NoRelationUpTo(usize),
    RelationFound,
    Certified,
    Inconclusive,
}

impl From<Verdict> for String {
    fn from(v: Verdict) -> String {
        match v {
            Verdict::NoRelationUpTo(l) => format!("no-relation-up-to-{}", l),
            Verdict::RelationFound => "relation-found".into(),
            Verdict::Certified => "certified".into(),
            Verdict::Inconclusive => "inconclusive".into(),
        }
    }
}

impl TryFrom<String> for Verdict {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        match s.as_str() {
            "relation-found" => Ok(Verdict::RelationFound),
            "certified" => Ok(Verdict::Certified),
            "inconclusive" => Ok(Verdict::Inconclusive),
            _ => s
                .strip_prefix("no-relation-up-to-")
                .and_then(|l| l.parse().ok())
                .map(Verdict::NoRelationUpTo)
                .ok_or_else(|| format!("unknown verdict {}", s)),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertReport {
    pub pair: String,
    pub method: Method,
    pub p: u64,
    pub q: u64,
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Oracle>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub words_per_length: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<CriterionOutcome>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug)]
pub struct CertParams {
    pub p: u64,
    /// Symbol algebra degree; `None` uses the pair's own.
    pub q: Option<u64>,
    pub bound: usize,
    pub threads: usize,
    pub oracle: Oracle,
    pub criterion: Option<CriterionDescriptor>,
}

impl Default for CertParams {
    fn default() -> Self {
        CertParams { p: 0, q: None, bound: DEFAULT_BOUND, threads: threads_from_env(), oracle: Oracle::Auto, criterion: None }
    }
}

/// Worker count from `FORGE_THREADS`, else the available parallelism.
pub fn threads_from_env() -> usize {
    std::env::var("FORGE_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Planted non-free pairs `{u, u^k}` with `u = 1 + i`, refuted at length `k + 1`.
pub const SANITY_PAIRS: [(&str, i64); 3] = [("sanity-equal", 1), ("sanity-square", 2), ("sanity-cube", 3)];

/// Specialized images of a catalog pair (or a sanity pair) in `S_q`. With
/// `generators`, a pair `{g, h⁻¹gh}` yields `(g, h)` instead.
pub fn pair_images(pair_id: &str, p: u64, q: Option<u64>, generators: bool) -> Result<(SymElem, SymElem, u64), CertError> {
    if let Some((_, k)) = SANITY_PAIRS.iter().find(|(id, _)| *id == pair_id) {
        let q = q.unwrap_or(2);
        let alg = SymbolAlgebra::with_params(p, q)?;
        let u = SymElem::one(&alg).add(&SymElem::i(&alg))?;
        let uk = u.pow(*k)?;
        return Ok((u, uk, q));
    }
    let base = BaseField::new(p).map_err(SymError::from)?;
    let pair = lookup_pair(pair_id, base)?;
    let q = q.unwrap_or(pair.default_q);
    let alg = SymbolAlgebra::with_params(p, q)?;
    let sp = Specializer::with_x_power(&alg, pair.x_power);
    let elems = match (&pair.generators, generators) {
        (Some(g), true) => g,
        _ => &pair.elems,
    };
    Ok((sp.eval(&elems[0])?, sp.eval(&elems[1])?, q))
}

pub fn certify_pair(pair_id: &str, method: Method, params: &CertParams) -> Result<CertReport, CertError> {
    let start = Instant::now();
    let (a, b, q) = pair_images(pair_id, params.p, params.q, method == Method::PingpongGl14)?;
    let mut report = CertReport {
        pair: pair_id.to_string(),
        method,
        p: params.p,
        q,
        bound: None,
        oracle: None,
        verdict: Verdict::Inconclusive,
        witness: None,
        words_per_length: Vec::new(),
        criterion: None,
        elapsed_ms: 0,
    };
    match method {
        Method::RelationSearch => {
            let (out, used) = relation_search_with(&a, &b, params.bound, params.threads, params.oracle)?;
            report.bound = Some(params.bound);
            report.oracle = Some(used);
            report.words_per_length = out.visited.clone();
            match out.witness {
                Some(w) => {
                    let text = render_word(&w);
                    if !evaluate_word(&a, &b, &w)?.is_one() {
                        return Err(CertError::UnsoundWitness(text));
                    }
                    report.verdict = Verdict::RelationFound;
                    report.witness = Some(text);
                }
                None => report.verdict = Verdict::NoRelationUpTo(params.bound),
            }
        }
        Method::PingpongGl14 => {
            let crit = params.criterion.clone().unwrap_or_else(CriterionDescriptor::untranscribed);
            let ma = regular_rep(&a);
            let mb = regular_rep(&b);
            let outcome = check_criterion(&ma, &mb, &Valuation::new(a.algebra()), &crit)?;
            report.verdict = if outcome.certified { Verdict::Certified } else { Verdict::Inconclusive };
            report.criterion = Some(outcome);
        }
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sanity_pairs_refuted() {
        for (id, k) in SANITY_PAIRS {
            let params = CertParams { bound: 5, threads: 2, ..CertParams::default() };
            let r = certify_pair(id, Method::RelationSearch, &params).unwrap();
            assert_eq!(r.verdict, Verdict::RelationFound);
            let w = r.witness.unwrap();
            assert_eq!(w.split('*').count() as i64, k + 1, "{}", id);
        }
    }

    #[test]
    fn symmetric_pair_short_search() {
        let params = CertParams { bound: 3, threads: 2, ..CertParams::default() };
        let r = certify_pair("main-1-symmetric", Method::RelationSearch, &params).unwrap();
        assert_eq!(r.verdict, Verdict::NoRelationUpTo(3));
        assert_eq!(r.words_per_length, vec![4, 12, 36]);
    }

    #[test]
    fn untranscribed_criterion_is_inconclusive() {
        let r = certify_pair("main-1-unitary", Method::PingpongGl14, &CertParams::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(!r.criterion.unwrap().transcribed);
    }

    #[test]
    fn report_serializes() {
        let params = CertParams { bound: 2, threads: 1, ..CertParams::default() };
        let r = certify_pair("sanity-equal", Method::RelationSearch, &params).unwrap();
        let js = serde_json::to_value(&r).unwrap();
        assert_eq!(js["verdict"], "relation-found");
        assert_eq!(js["witness"], "A*B^-1");
        assert_eq!(js["method"], "relation-search");
    }
}
