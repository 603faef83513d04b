//! `forge selftest`: every battery at a small size.

use forge_core::battery::{
    closed_forms, eigenbasis_battery, extraction_instances, run_extraction, specialization_hom, star_laws,
    symbol_laws, Outcome, LAW_CONFIGS,
};
use forge_core::freecert::{pair_images, relation_search, threads_from_env, SANITY_PAIRS};
use forge_core::mnseries::{check_pullback, fixing_involution, homomorphism_suite, transport_instances, CrossedProductCtx};
use serde_json::json;

use crate::report::{Check, CliError, Report, Status};
use crate::SelftestArgs;

const SEARCH_BOUND: usize = 4;

fn outcome(o: Outcome) -> Check {
    Check::verdict(o.name.clone(), o.passed, &o)
}

pub fn run(a: &SelftestArgs) -> Result<Report, CliError> {
    let mut report = Report::new("selftest", a);
    let n = a.samples;
    for (p, q) in LAW_CONFIGS {
        report.push(outcome(symbol_laws(p, q, n, a.seed).map_err(CliError::internal)?));
        report.push(outcome(specialization_hom(p, q, n, a.seed).map_err(CliError::internal)?));
    }
    for r in closed_forms(0).map_err(CliError::internal)? {
        let status = match (r.matched, &r.erratum) {
            (true, _) => Status::Pass,
            (false, Some(_)) => Status::Warn,
            (false, None) => Status::Fail,
        };
        report.push(Check::new(format!("closed-form/{}", r.id), status, &r));
    }
    report.push(outcome(star_laws(0, &[2, 3]).map_err(CliError::internal)?));
    for inst in extraction_instances().map_err(CliError::internal)? {
        let check = match run_extraction(&inst) {
            Ok((e, ok)) => Check::verdict(
                format!("extract/{}", inst.name),
                ok,
                json!({ "case": e.case_tag, "route": e.route }),
            ),
            Err(err) => Check::verdict(format!("extract/{}", inst.name), false, json!({ "error": err.to_string() })),
        };
        report.push(check);
    }
    report.push(outcome(eigenbasis_battery(n, 6, a.seed)));

    let threads = threads_from_env();
    let (u, v, _) = pair_images("main-1-symmetric", 0, None, false).map_err(CliError::internal)?;
    let out = relation_search(&u, &v, SEARCH_BOUND, threads).map_err(CliError::internal)?;
    report.push(Check::verdict("search/main-1-symmetric", out.witness.is_none(), json!({ "bound": SEARCH_BOUND })));
    for (id, k) in SANITY_PAIRS {
        let (s, t, _) = pair_images(id, 0, None, false).map_err(CliError::internal)?;
        let predicted = k as usize + 1;
        let out = relation_search(&s, &t, predicted, threads).map_err(CliError::internal)?;
        let len = out.witness.as_ref().map(|w| w.len());
        report.push(Check::verdict(format!("search/{}", id), len == Some(predicted), json!({ "witness_length": len, "predicted": predicted })));
    }

    let ctx = CrossedProductCtx::free_mod_gamma3();
    let frontier = ctx.group().parse_word("x^3").expect("frontier word");
    let suite = homomorphism_suite(&ctx, a.seed, n, &frontier);
    report.push(Check::verdict("phi-homomorphism", suite.passed() && !suite.vacuous(), &suite));
    let inv = fixing_involution();
    for inst in transport_instances(&ctx).map_err(CliError::internal)? {
        let c = check_pullback(&ctx, &inv, &inst, &frontier).map_err(CliError::internal)?;
        report.push(Check::verdict(format!("pullback/{}", c.name), c.passed() && !c.vacuous(), &c));
    }
    Ok(report)
}
