//! Symbol algebras `S_F(a, b, θ)` over `F = P(θ)(a, b)`: `i^m = a`, `j^m = b`,
//! `ji = θij`. Quaternion algebras are the case `m = 2`, `θ = −1`.

mod cleared;
mod involution;
mod kernel;
mod rep;

pub use cleared::ClearedElem;
pub use involution::{AlgInvolution, InvolutionCase};
pub use kernel::{dense_mul, CoeffOps, CyclePolyOps, RfOps};
pub use rep::{fi_matrix_mul, from_fi, quat_split_rep, regular_rep, to_fi, FiMatrix};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactfield::{parse_ratfunc, Field, FieldError, Rf, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("symbol algebra mismatch")]
    AlgebraMismatch,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("operation requires a quaternion algebra (m = 2), got m = {0}")]
    NotQuaternion(usize),
    #[error("symbol algebra degree must be at least 2")]
    DegreeTooSmall,
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, PartialEq, Eq)]
pub struct SymbolAlgebra {
    field: Field,
    m: usize,
}

pub type AlgRef = Arc<SymbolAlgebra>;

impl SymbolAlgebra {
    /// The algebra of degree `m = q` over the given field.
    pub fn new(field: &Field) -> Result<AlgRef, SymError> {
        let m = field.order() as usize;
        if m < 2 {
            return Err(SymError::DegreeTooSmall);
        }
        Ok(Arc::new(SymbolAlgebra { field: field.clone(), m }))
    }

    /// Shorthand for `P(θ)` of characteristic `p` with `θ` of order `q`.
    pub fn with_params(p: u64, q: u64) -> Result<AlgRef, SymError> {
        Self::new(&crate::exactfield::field(p, q)?)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn theta(&self) -> Rf {
        Rf::theta(&self.field)
    }

    pub fn a(&self) -> Rf {
        Rf::var(&self.field, Var::A)
    }

    pub fn b(&self) -> Rf {
        Rf::var(&self.field, Var::B)
    }

    pub fn scalar_parse(&self, s: &str) -> Result<Rf, SymError> {
        Ok(parse_ratfunc(&self.field, s)?)
    }
}

#[derive(Clone)]
pub struct SymElem {
    alg: AlgRef,
    coeffs: Vec<Rf>,
}

impl PartialEq for SymElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg) && self.coeffs == other.coeffs
    }
}

impl Eq for SymElem {}

impl fmt::Debug for SymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for SymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl SymElem {
    pub fn zero(alg: &AlgRef) -> Self {
        let z = Rf::zero(&alg.field);
        SymElem { alg: alg.clone(), coeffs: vec![z; alg.m * alg.m] }
    }

    pub fn scalar(alg: &AlgRef, c: Rf) -> Self {
        let mut e = Self::zero(alg);
        e.coeffs[0] = c;
        e
    }

    pub fn one(alg: &AlgRef) -> Self {
        Self::scalar(alg, Rf::one(&alg.field))
    }

    pub fn from_i64(alg: &AlgRef, c: i64) -> Self {
        Self::scalar(alg, Rf::from_i64(&alg.field, c))
    }

    /// `c · i^r j^s`; exponents are reduced with `i^m = a`, `j^m = b`.
    pub fn term(alg: &AlgRef, r: i64, s: i64, c: Rf) -> Result<Self, SymError> {
        let m = alg.m as i64;
        let (qr, rr) = (r.div_euclid(m), r.rem_euclid(m));
        let (qs, rs) = (s.div_euclid(m), s.rem_euclid(m));
        let c = c.mul(&alg.a().pow(qr)?).mul(&alg.b().pow(qs)?);
        let mut e = Self::zero(alg);
        e.coeffs[(rr * m + rs) as usize] = c;
        Ok(e)
    }

    pub fn i(alg: &AlgRef) -> Self {
        Self::term(alg, 1, 0, Rf::one(&alg.field)).expect("basis element")
    }

    pub fn j(alg: &AlgRef) -> Self {
        Self::term(alg, 0, 1, Rf::one(&alg.field)).expect("basis element")
    }

    /// Builds an element from `(r, s, coefficient)` triples; repeated cells add.
    pub fn from_triples(alg: &AlgRef, ts: &[(usize, usize, Rf)]) -> Result<Self, SymError> {
        let mut e = Self::zero(alg);
        for (r, s, c) in ts {
            if *r >= alg.m || *s >= alg.m || c.field() != alg.field() {
                return Err(SymError::AlgebraMismatch);
            }
            let k = r * alg.m + s;
            e.coeffs[k] = e.coeffs[k].add(c);
        }
        Ok(e)
    }

    pub fn algebra(&self) -> &AlgRef {
        &self.alg
    }

    pub fn coeff(&self, r: usize, s: usize) -> &Rf {
        &self.coeffs[r * self.alg.m + s]
    }

    pub fn coeffs(&self) -> &[Rf] {
        &self.coeffs
    }

    /// Nonzero `(r, s, coefficient)` triples in cell order.
    pub fn triples(&self) -> Vec<(usize, usize, Rf)> {
        let m = self.alg.m;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k / m, k % m, c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// `Some(c)` when the element lies in the center `F`.
    pub fn as_scalar(&self) -> Option<&Rf> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), SymError> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(SymError::AlgebraMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, SymError> {
        self.check(o)?;
        Ok(SymElem {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x.add(y)).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SymError> {
        self.check(o)?;
        Ok(SymElem {
            alg: self.alg.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x.sub(y)).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        SymElem { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(|x| x.neg()).collect() }
    }

    pub fn scale(&self, c: &Rf) -> Self {
        SymElem { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SymError> {
        self.check(o)?;
        let ring = RfOps::new(&self.alg);
        Ok(SymElem {
            alg: self.alg.clone(),
            coeffs: dense_mul(&ring, self.alg.m, &self.coeffs, &o.coeffs),
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self, SymError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(&self.alg);
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Two-sided inverse via the regular representation over `F(i)`.
    pub fn inv(&self) -> Result<Self, SymError> {
        rep::sym_inv(self)
    }

    pub fn div(&self, o: &Self) -> Result<Self, SymError> {
        self.mul(&o.inv()?)
    }

    /// Canonical text: `c_00 + c_10*i + ...` with each coefficient parenthesized.
    pub fn render(&self) -> String {
        let ts = self.triples();
        if ts.is_empty() {
            return "0".into();
        }
        ts.iter()
            .map(|(r, s, c)| {
                let basis = basis_name(*r, *s);
                if basis.is_empty() {
                    c.render()
                } else {
                    format!("{}*{}", c.render(), basis)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Serialized form: `(r, s, coefficient)` string triples.
    pub fn to_string_triples(&self) -> Vec<(usize, usize, String)> {
        self.triples().into_iter().map(|(r, s, c)| (r, s, c.render())).collect()
    }

    pub fn from_string_triples(alg: &AlgRef, ts: &[(usize, usize, String)]) -> Result<Self, SymError> {
        let parsed: Result<Vec<_>, SymError> = ts
            .iter()
            .map(|(r, s, c)| Ok((*r, *s, alg.scalar_parse(c)?)))
            .collect();
        Self::from_triples(alg, &parsed?)
    }
}

fn basis_name(r: usize, s: usize) -> String {
    let part = |n: &str, e: usize| match e {
        0 => String::new(),
        1 => n.to_string(),
        _ => format!("{}^{}", n, e),
    };
    let (pi, pj) = (part("i", r), part("j", s));
    match (pi.is_empty(), pj.is_empty()) {
        (true, _) => pj,
        (_, true) => pi,
        _ => format!("{}*{}", pi, pj),
    }
}
