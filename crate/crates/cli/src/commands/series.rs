//! `forge series`: homomorphism suite and symmetric pullbacks over `F₂/γ₃`.

use forge_core::mnseries::{check_pullback, fixing_involution, homomorphism_suite, transport_instances, CrossedProductCtx, MnError};

use crate::report::{Check, CliError, Report, Status};
use crate::SeriesArgs;

fn series_error(e: MnError) -> CliError {
    match e {
        MnError::FrontierUnreachable(_) => CliError::config(e),
        other => CliError::internal(other),
    }
}

pub fn run(a: &SeriesArgs) -> Result<Report, CliError> {
    let mut ctx = CrossedProductCtx::free_mod_gamma3();
    if a.corrupt_tau {
        ctx = ctx.with_corrupt_tau();
    }
    let frontier = ctx
        .group()
        .parse_word(&a.frontier)
        .ok_or_else(|| CliError::config(format!("frontier {} is not a word in x, y, c", a.frontier)))?;
    let mut report = Report::new("series", a);
    if a.corrupt_tau {
        report.warn("two-cocycle deliberately corrupted");
    }

    let suite = homomorphism_suite(&ctx, a.seed, a.samples, &frontier);
    let status = if !suite.passed() {
        Status::Fail
    } else if suite.vacuous() {
        Status::Warn
    } else {
        Status::Pass
    };
    if suite.passed() && suite.vacuous() {
        report.warn("vacuous: frontier lies below every sampled product, nothing was compared");
    }
    report.push(Check::new("phi-homomorphism", status, &suite));

    let inv = fixing_involution();
    for inst in transport_instances(&ctx).map_err(series_error)? {
        let c = check_pullback(&ctx, &inv, &inst, &frontier).map_err(series_error)?;
        let status = if !c.passed() {
            Status::Fail
        } else if c.vacuous() {
            Status::Warn
        } else {
            Status::Pass
        };
        if c.passed() && c.vacuous() {
            report.warn(format!("vacuous: pullback {} compared no coefficients", c.name));
        }
        report.push(Check::new(format!("pullback/{}", c.name), status, &c));
    }
    Ok(report)
}
