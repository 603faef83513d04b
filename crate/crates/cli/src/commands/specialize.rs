//! `forge specialize`: images in the symbol algebra.

use forge_core::heisenspec::{lookup_pair, HLaurent, HeisError, Specializer};
use forge_core::symbolalg::SymbolAlgebra;
use serde_json::json;

use super::{heis_error, validate_field, ElemJson};
use crate::report::{Check, CliError, Report};
use crate::SpecializeArgs;

pub fn run(a: &SpecializeArgs) -> Result<Report, CliError> {
    let base = validate_field(a.p, a.q)?;
    let alg = SymbolAlgebra::with_params(a.p, a.q).map_err(CliError::config)?;
    let mut report = Report::new("specialize", a);
    if let Some(expr) = &a.expr {
        let f = HLaurent::parse(base, expr).map_err(heis_error)?;
        let sp = Specializer::with_x_power(&alg, a.x_power);
        let img = sp.specialize(&f).map_err(heis_error)?;
        report.push(Check::verdict("image", true, json!({ "input": f.render(), "image": ElemJson::new(&img) })));
        return Ok(report);
    }
    let id = a.pair.as_deref().expect("clap enforces --expr or --pair");
    let pair = lookup_pair(id, base).map_err(heis_error)?;
    let sp = Specializer::with_x_power(&alg, pair.x_power * a.x_power);
    let mut named = vec![("element-0", &pair.elems[0]), ("element-1", &pair.elems[1])];
    if let Some(g) = &pair.generators {
        named.push(("generator-0", &g[0]));
        named.push(("generator-1", &g[1]));
    }
    for (name, e) in named {
        let details = match sp.eval(e) {
            Ok(img) => (true, json!({ "input": e.render(), "image": ElemJson::new(&img) })),
            Err(HeisError::Kernel) => (false, json!({ "input": e.render(), "error": HeisError::Kernel.to_string() })),
            Err(other) => return Err(heis_error(other)),
        };
        report.push(Check::verdict(name, details.0, details.1));
    }
    Ok(report)
}
