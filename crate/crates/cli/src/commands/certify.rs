//! `forge certify`: relation search or valuation ping-pong on one pair.

use forge_core::freecert::{certify_pair, threads_from_env, CertParams, CriterionDescriptor, Method, Verdict, SANITY_PAIRS};

use super::{cert_error, oracle, validate_field};
use crate::files::load_text;
use crate::report::{Check, CliError, Report, Status};
use crate::CertifyArgs;

pub fn run(a: &CertifyArgs) -> Result<Report, CliError> {
    let method = Method::parse(&a.method).map_err(CliError::config)?;
    validate_field(a.p, a.q.unwrap_or(2))?;
    let criterion = match &a.criterion {
        Some(path) => Some(CriterionDescriptor::from_json(&load_text(path)?).map_err(CliError::config)?),
        None => None,
    };
    let params = CertParams {
        p: a.p,
        q: a.q,
        bound: a.bound,
        threads: threads_from_env(),
        oracle: oracle(a.oracle),
        criterion,
    };
    let cert = certify_pair(&a.pair, method, &params).map_err(cert_error)?;
    let planted = SANITY_PAIRS.iter().any(|(id, _)| *id == a.pair);
    let status = match (&cert.verdict, planted) {
        (Verdict::RelationFound, true) => Status::Pass,
        (Verdict::RelationFound, false) => Status::Fail,
        (_, true) => Status::Fail,
        (Verdict::Inconclusive, false) => Status::Warn,
        _ => Status::Pass,
    };
    let mut report = Report::new("certify", a);
    if planted {
        report.warn(format!("{} is a planted non-free pair; a relation is the expected outcome", a.pair));
    }
    let mut details = serde_json::to_value(&cert).expect("certificate serializes");
    details.as_object_mut().map(|m| m.remove("elapsed_ms"));
    report.push(Check::new("certificate", status, details));
    Ok(report)
}
