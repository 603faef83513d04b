//! `forge pairs`: build a catalog pair and verify it end to end.

use forge_core::freecert::{certify_pair, threads_from_env, CertParams, Method, Verdict};
use forge_core::heisenspec::{anchors, lookup_pair, Anchor, PairKind, PairSpec, Specializer};
use forge_core::symbolalg::{AlgInvolution, ClearedElem, SymElem, SymbolAlgebra};
use serde_json::json;

use super::{cert_error, heis_error, oracle, star_name, validate_field, ElemJson};
use crate::report::{Check, CliError, Report, Status};
use crate::{KindArg, PairsArgs};

fn pair_id(a: &PairsArgs) -> String {
    match (&a.pair, a.case, a.kind) {
        (Some(id), _, _) => id.clone(),
        (None, Some(c), Some(k)) => {
            format!("main-{}-{}", c, if k == KindArg::Symmetric { "symmetric" } else { "unitary" })
        }
        _ => unreachable!("clap enforces --pair or --case with --kind"),
    }
}

fn strip_power(id: &str) -> (&str, &str) {
    match id.rfind("-pow") {
        Some(k) => (&id[..k], &id[k..]),
        None => (id, ""),
    }
}

/// Anchors belonging to the pair at this degree and power.
fn own_anchors(pair: &PairSpec, q: u64, all: Vec<Anchor>) -> Vec<Anchor> {
    let (base, power) = strip_power(&pair.id);
    let prefix = format!("{}-", base);
    all.into_iter()
        .filter(|a| {
            let (abase, apower) = strip_power(&a.id);
            a.q == q && a.x_power == pair.x_power && apower == power && abase.starts_with(&prefix)
        })
        .collect()
}

fn star_ok(kind: PairKind, w: &SymElem, ws: &SymElem) -> bool {
    match kind {
        PairKind::Symmetric => ws == w,
        PairKind::Unitary => {
            let alg = w.algebra();
            let (c, cs) = (ClearedElem::from_elem(w), ClearedElem::from_elem(ws));
            c.mul(&cs, alg).is_one() && cs.mul(&c, alg).is_one()
        }
    }
}

pub fn run(a: &PairsArgs) -> Result<Report, CliError> {
    let id = pair_id(a);
    let base = validate_field(a.p, a.q.unwrap_or(2))?;
    let pair = lookup_pair(&id, base).map_err(heis_error)?;
    let q = a.q.unwrap_or(pair.default_q);
    validate_field(a.p, q)?;
    let mut report = Report::new("pairs", a);
    let alg = SymbolAlgebra::with_params(a.p, q).map_err(CliError::config)?;
    let sp = Specializer::with_x_power(&alg, pair.x_power);
    report.push(Check::new(
        "pair",
        Status::Info,
        json!({
            "id": pair.id,
            "kind": pair.kind.name(),
            "involution": star_name(pair.star),
            "x_power": pair.x_power,
            "p": a.p,
            "q": q,
            "elements": pair.elems.iter().map(|e| e.render()).collect::<Vec<_>>(),
        }),
    ));

    let mut images = Vec::new();
    for (k, e) in pair.elems.iter().enumerate() {
        match sp.eval(e) {
            Ok(w) => images.push(w),
            Err(err) => {
                report.push(Check::verdict(format!("image-{}", k), false, json!({ "error": err.to_string(), "element": e.render() })));
                return Ok(report);
            }
        }
    }
    report.push(Check::new(
        "images",
        Status::Info,
        images.iter().map(ElemJson::new).collect::<Vec<_>>(),
    ));

    let inv = AlgInvolution::for_case(&alg, pair.star).map_err(CliError::internal)?;
    for (k, w) in images.iter().enumerate() {
        let ws = inv.apply(w).map_err(CliError::internal)?;
        let law = if pair.kind == PairKind::Symmetric { "w* = w" } else { "w w* = w* w = 1" };
        let ok = star_ok(pair.kind, w, &ws);
        let mut details = json!({ "law": law });
        if !ok {
            details["w_star"] = json!(ws.render());
        }
        report.push(Check::verdict(format!("star-{}", k), ok, details));
    }

    let mine = own_anchors(&pair, q, anchors(a.p).map_err(heis_error)?);
    if mine.is_empty() {
        report.push(Check::new("closed-form", Status::Info, json!({ "note": format!("no closed form recorded at q = {}", q) })));
    }
    for anchor in mine {
        let got = sp.eval(&anchor.expr).map_err(heis_error)?;
        let matched = got == anchor.expected;
        let status = match (matched, anchor.erratum) {
            (true, _) => Status::Pass,
            (false, Some(_)) => Status::Warn,
            (false, None) => Status::Fail,
        };
        let mut details = json!({
            "expr": anchor.expr.render(),
            "expected": anchor.expected.render(),
            "displayed": anchor.displayed,
        });
        if !matched {
            details["image"] = json!(got.render());
        }
        if let Some(e) = anchor.erratum {
            details["erratum"] = json!(e);
        }
        report.push(Check::new(format!("closed-form/{}", anchor.id), status, details));
    }

    let params = CertParams {
        p: a.p,
        q: Some(q),
        bound: a.len,
        threads: threads_from_env(),
        oracle: oracle(a.oracle),
        criterion: None,
    };
    let cert = certify_pair(&pair.id, Method::RelationSearch, &params).map_err(cert_error)?;
    let ok = cert.verdict == Verdict::NoRelationUpTo(a.len);
    let mut details = serde_json::to_value(&cert).expect("certificate serializes");
    details.as_object_mut().map(|m| m.remove("elapsed_ms"));
    report.push(Check::verdict("relation-search", ok, details));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use forge_core::exactfield::BaseField;

    use super::*;

    #[test]
    fn anchors_are_selected_by_prefix_and_power() {
        let base = BaseField::rationals();
        let all = anchors(0).unwrap();
        let ids = |id: &str, q: u64| -> Vec<String> {
            own_anchors(&lookup_pair(id, base).unwrap(), q, all.clone()).into_iter().map(|a| a.id).collect()
        };
        assert_eq!(ids("main-1-symmetric", 2), ["main-1-symmetric-u", "main-1-symmetric-v"]);
        assert_eq!(ids("main-1-unitary", 3), ["main-1-unitary-u-q3", "main-1-unitary-v-q3"]);
        assert!(ids("normal-2-pow1", 2).iter().all(|s| s.starts_with("normal-2-") && s.ends_with("-pow1")));
        assert!(!ids("normal-2", 2).iter().any(|s| s.contains("pow")));
        assert_eq!(ids("main-3-unitary", 2), ["main-3-unitary-v"]);
    }
}
