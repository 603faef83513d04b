//! One module per subcommand, plus the shared validation helpers.

pub mod certify;
pub mod extract;
pub mod pairs;
pub mod selftest;
pub mod series;
pub mod specialize;

use forge_core::exactfield::BaseField;
use forge_core::freecert::{CertError, Oracle};
use forge_core::heisenspec::HeisError;
use forge_core::symbolalg::{InvolutionCase, SymElem};
use serde::Serialize;

use crate::report::CliError;
use crate::OracleArg;

/// Rejects a non-prime characteristic, `q < 2`, and `p | q`.
pub fn validate_field(p: u64, q: u64) -> Result<BaseField, CliError> {
    let base = BaseField::new(p).map_err(CliError::config)?;
    if q < 2 {
        return Err(CliError::config(format!("degree q = {} must be at least 2", q)));
    }
    if p != 0 && q % p == 0 {
        return Err(CliError::config(format!("characteristic {} divides q = {}", p, q)));
    }
    Ok(base)
}

pub fn oracle(o: OracleArg) -> Oracle {
    match o {
        OracleArg::Auto => Oracle::Auto,
        OracleArg::Exact => Oracle::Exact,
        OracleArg::Modular => Oracle::Modular,
    }
}

pub fn heis_error(e: HeisError) -> CliError {
    CliError::config(e)
}

pub fn cert_error(e: CertError) -> CliError {
    match e {
        CertError::UnsoundWitness(_) => CliError::internal(e),
        CertError::Heis(h) => heis_error(h),
        other => CliError::config(other),
    }
}

pub fn star_name(c: InvolutionCase) -> &'static str {
    match c {
        InvolutionCase::Fix => "x* = x, y* = y",
        InvolutionCase::Invert => "x* = x^-1, y* = y^-1",
        InvolutionCase::Mixed => "x* = x, y* = y^-1",
    }
}

/// Rendered element alongside its `(r, s, coefficient)` triples.
#[derive(Serialize)]
pub struct ElemJson {
    pub text: String,
    pub triples: Vec<(usize, usize, String)>,
}

impl ElemJson {
    pub fn new(e: &SymElem) -> Self {
        ElemJson { text: e.render(), triples: e.to_string_triples() }
    }
}
