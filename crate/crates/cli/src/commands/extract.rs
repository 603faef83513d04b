//! `forge extract`: star-invariant Heisenberg subgroup from group files.

use forge_core::nilgroup::{check_postconditions, star_invariant_heisenberg, NilError};
use serde_json::json;

use crate::files::{load_group, load_involution};
use crate::report::{Check, CliError, Report, Status};
use crate::ExtractArgs;

pub fn run(a: &ExtractArgs) -> Result<Report, CliError> {
    let g = load_group(&a.group)?;
    let inv = load_involution(&g, &a.involution)?;
    let e = star_invariant_heisenberg(&g, &inv).map_err(|err| match err {
        NilError::NoPair => CliError::internal(err),
        other => CliError::config(other),
    })?;
    let mut report = Report::new("extract", a);
    let z = g.commutator(&e.x, &e.y);
    report.push(Check::new(
        "extraction",
        Status::Info,
        json!({
            "x": g.render(&e.x),
            "y": g.render(&e.y),
            "z": g.render(&z),
            "eps_x": e.eps_x,
            "eps_y": e.eps_y,
            "case": e.case_tag,
            "route": e.route,
            "lifts": e.lifts.iter().map(|(h, eps, c)| json!({
                "h": g.render(h), "eps": eps, "correction": g.render(c),
            })).collect::<Vec<_>>(),
        }),
    ));
    let pc = check_postconditions(&g, &inv, &e.x, &e.y, e.eps_x, e.eps_y);
    let x_star = g.render(&inv.apply(&g, &e.x));
    let y_star = g.render(&inv.apply(&g, &e.y));
    report.push(Check::verdict("z-nontrivial", pc.z_nontrivial, json!({ "z": g.render(&z) })));
    report.push(Check::verdict("x-commutes-z", pc.x_commutes_z, json!({ "commutator": g.render(&g.commutator(&e.x, &z)) })));
    report.push(Check::verdict("y-commutes-z", pc.y_commutes_z, json!({ "commutator": g.render(&g.commutator(&e.y, &z)) })));
    report.push(Check::verdict(
        "x-star",
        pc.x_star,
        json!({ "x_star": x_star, "expected": g.render(&g.pow(&e.x, e.eps_x)) }),
    ));
    report.push(Check::verdict(
        "y-star",
        pc.y_star,
        json!({ "y_star": y_star, "expected": g.render(&g.pow(&e.y, e.eps_y)) }),
    ));
    Ok(report)
}
