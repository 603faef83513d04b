//! Exact coefficient arithmetic: prime fields, cyclotomic extensions `P(θ)`,
//! and rational functions over `P(θ)` in the variables `a, b, λ, X`.

mod cyclo;
mod parse;
mod poly;
mod prime;
mod ratfunc;

pub use cyclo::{cyclo_min_poly, CyclePoly, FieldDescriptor, FieldRef};
pub use parse::parse_ratfunc;
pub use poly::{Mono, Poly, Var, NVARS};
pub use prime::{is_prime, rational_residue, BaseField, PrimeField, PrimeModulus, Rationals};
pub use ratfunc::RatFunc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("root of unity order not coprime to characteristic")]
    NotCoprime { p: u64, q: u64 },
    #[error("root of unity order must be positive")]
    ZeroOrder,
    #[error("factor search over F_{p} for order {q} exceeds the search budget")]
    SearchTooLarge { p: u64, q: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation outside localization")]
    OutsideLocalization,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// The coefficient field used by the algebra layers.
pub type Field = FieldRef<BaseField>;
/// Rational functions over [`Field`].
pub type Rf = RatFunc<BaseField>;

/// `P(θ)` for characteristic `p` (0 for the rationals) and root order `q`.
pub fn field(p: u64, q: u64) -> Result<Field, FieldError> {
    FieldDescriptor::new(BaseField::new(p)?, q)
}
