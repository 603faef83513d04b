//! Group algebra of the Heisenberg group over a prime field, its involutions,
//! and specialization onto symbol algebras (`x ↦ i`, `y ↦ j`, `z ↦ θ`).
//!
//! Monomials are `x^a y^b z^c` with `z = [y, x]` central and `yx = xyz`.

mod expr;
mod pairs;

pub use expr::{LocExpr, Specializer};
pub use pairs::{anchors, build_normal_pair, build_pair, catalog_ids, lookup_pair, Anchor, NormalCase, PairKind, PairSpec};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactfield::{BaseField, FieldError, PrimeField};
use crate::symbolalg::{InvolutionCase, SymError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeisError {
    #[error("image in specialization kernel")]
    Kernel,
    #[error("monomial {0} is outside the subgroup generated by x^{1}, y")]
    NotInSubgroup(String, i64),
    #[error("unimplemented: {0}")]
    Unimplemented(String),
    #[error("unknown pair id: {0}")]
    UnknownPair(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("negative power of a non-monomial")]
    NotUnit,
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Exponent vector `(a, b, c)` of `x^a y^b z^c`.
pub type HMono = [i64; 3];

fn mono_mul(u: &HMono, v: &HMono) -> HMono {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2] + u[1] * v[0]]
}

/// Sign data `(ε_x, ε_y, ε_z)` with `x* = x^{ε_x}`, `y* = y^{ε_y}`, `z* = z^{ε_z}`.
pub fn star_signs(case: InvolutionCase) -> [i64; 3] {
    match case {
        InvolutionCase::Fix => [1, 1, -1],
        InvolutionCase::Invert => [-1, -1, -1],
        InvolutionCase::Mixed => [1, -1, 1],
    }
}

/// A finitely supported element of `P[Γ]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HLaurent {
    base: BaseField,
    terms: BTreeMap<HMono, BigRational>,
}

impl HLaurent {
    pub fn zero(base: BaseField) -> Self {
        HLaurent { base, terms: BTreeMap::new() }
    }

    pub fn monomial(base: BaseField, m: HMono, c: i64) -> Self {
        let mut f = Self::zero(base);
        let c = base.from_i64(c);
        if !c.is_zero() {
            f.terms.insert(m, c);
        }
        f
    }

    pub fn from_terms(base: BaseField, ts: impl IntoIterator<Item = (HMono, BigRational)>) -> Self {
        let mut f = Self::zero(base);
        for (m, c) in ts {
            f.add_term(m, &c);
        }
        f
    }

    pub fn one(base: BaseField) -> Self {
        Self::monomial(base, [0, 0, 0], 1)
    }

    pub fn constant(base: BaseField, c: i64) -> Self {
        Self::monomial(base, [0, 0, 0], c)
    }

    pub fn x(base: BaseField) -> Self {
        Self::monomial(base, [1, 0, 0], 1)
    }

    pub fn y(base: BaseField) -> Self {
        Self::monomial(base, [0, 1, 0], 1)
    }

    pub fn z(base: BaseField) -> Self {
        Self::monomial(base, [0, 0, 1], 1)
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn terms(&self) -> &BTreeMap<HMono, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: HMono, c: &BigRational) {
        let c = self.base.add(&self.base.zero(), c);
        let cur = self.terms.remove(&m).unwrap_or_else(BigRational::zero);
        let s = self.base.add(&cur, &c);
        if !s.is_zero() {
            self.terms.insert(m, s);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, self.base.neg(c))).collect();
        HLaurent { base: self.base, terms }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = self.base.from_i64(c);
        let ts: Vec<_> = self.terms.iter().map(|(m, v)| (*m, self.base.mul(v, &c))).collect();
        Self::from_terms(self.base, ts)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.base);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(mono_mul(m1, m2), &self.base.mul(c1, c2));
            }
        }
        out
    }

    pub fn as_monomial(&self) -> Option<(HMono, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c))
        } else {
            None
        }
    }

    /// Powers; negative exponents only for units `c·x^a y^b z^c`.
    pub fn pow(&self, e: i64) -> Result<Self, HeisError> {
        let base = if e < 0 {
            let (m, c) = self.as_monomial().ok_or(HeisError::NotUnit)?;
            let ci = self.base.inv(c).ok_or(HeisError::NotUnit)?;
            // (x^a y^b z^c)^{-1} = x^{-a} y^{-b} z^{-c + ab}
            let inv = [-m[0], -m[1], -m[2] + m[0] * m[1]];
            Self::from_terms(self.base, [(inv, ci)])
        } else {
            self.clone()
        };
        let mut acc = Self::one(self.base);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Coefficient-linear anti-automorphism with the given sign pattern.
    pub fn star(&self, case: InvolutionCase) -> Self {
        let [ex, ey, ez] = star_signs(case);
        let ts: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| ([ex * m[0], ey * m[1], ez * m[2] + ex * m[0] * ey * m[1]], c.clone()))
            .collect();
        Self::from_terms(self.base, ts)
    }

    /// Replaces `x` by `x^n` (an injective endomorphism of `Γ`, sending `z ↦ z^n`).
    pub fn power_x(&self, n: i64) -> Self {
        let ts: Vec<_> = self.terms.iter().map(|(m, c)| ([m[0] * n, m[1], m[2] * n], c.clone())).collect();
        Self::from_terms(self.base, ts)
    }

    pub fn parse(base: BaseField, s: &str) -> Result<Self, HeisError> {
        let mut p = Parser { s: s.as_bytes(), pos: 0, base };
        let f = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(HeisError::Parse(format!("unexpected input at offset {}", p.pos)));
        }
        Ok(f)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (name, e) in ["x", "y", "z"].iter().zip(m.iter()) {
                match *e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{}^{}", name, e)),
                }
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let coef = if mag.is_integer() { mag.numer().to_string() } else { format!("({})", mag) };
            let body = if factors.is_empty() {
                coef
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", coef, factors.join("*"))
            };
            match (k, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{}", body)),
                (_, false) => out.push_str(&format!(" + {}", body)),
                (_, true) => out.push_str(&format!(" - {}", body)),
            }
        }
        out
    }
}

impl fmt::Debug for HLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HLaurent({})", self.render())
    }
}

impl fmt::Display for HLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    base: BaseField,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> HeisError {
        HeisError::Parse(format!("{} at offset {}", msg, self.pos))
    }

    fn sum(&mut self) -> Result<HLaurent, HeisError> {
        let mut acc = HLaurent::zero(self.base);
        let mut sign = 1;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -1;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let t = self.product()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<HLaurent, HeisError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<HLaurent, HeisError> {
        let f = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return f.pow(e);
        }
        Ok(f)
    }

    fn exponent(&mut self) -> Result<i64, HeisError> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let n = self.integer()?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
        }
        let n: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -n } else { n })
    }

    fn integer(&mut self) -> Result<BigInt, HeisError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<HLaurent, HeisError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(HLaurent::x(self.base))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(HLaurent::y(self.base))
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(HLaurent::z(self.base))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = self.base.from_bigint(&n);
                Ok(HLaurent::from_terms(self.base, [([0, 0, 0], c)]))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> BaseField {
        BaseField::rationals()
    }

    #[test]
    fn relation_and_basics() {
        let (x, y) = (HLaurent::x(q()), HLaurent::y(q()));
        assert_eq!(y.mul(&x), HLaurent::monomial(q(), [1, 1, 1], 1));
        let one = HLaurent::one(q());
        let lhs = one.add(&x).mul(&one.add(&y));
        assert_eq!(lhs, HLaurent::parse(q(), "1 + x + y + x*y").unwrap());
        assert_eq!(x.mul(&x.pow(-1).unwrap()), one);
    }

    #[test]
    fn monomial_inverse() {
        let m = HLaurent::parse(q(), "2*y^3*x^-2*z").unwrap();
        assert_eq!(m.mul(&m.pow(-1).unwrap()), HLaurent::one(q()));
        assert!(HLaurent::parse(q(), "(1+x)^-1").is_err());
    }

    #[test]
    fn star_cases() {
        let xy = HLaurent::parse(q(), "x*y").unwrap();
        assert_eq!(xy.star(InvolutionCase::Fix), HLaurent::parse(q(), "y*x").unwrap());
        assert_eq!(HLaurent::z(q()).star(InvolutionCase::Fix), HLaurent::parse(q(), "z^-1").unwrap());
        assert_eq!(HLaurent::y(q()).star(InvolutionCase::Mixed), HLaurent::parse(q(), "y^-1").unwrap());
        assert_eq!(HLaurent::z(q()).star(InvolutionCase::Mixed), HLaurent::z(q()));
        let f = HLaurent::parse(q(), "1 + 3*x*y^5 - y^-5*x + z^2*x^-1").unwrap();
        let g = HLaurent::parse(q(), "y^2 - 7*x*z").unwrap();
        for c in [InvolutionCase::Fix, InvolutionCase::Invert, InvolutionCase::Mixed] {
            assert_eq!(f.star(c).star(c), f);
            assert_eq!(f.mul(&g).star(c), g.star(c).mul(&f.star(c)));
        }
    }

    #[test]
    fn parse_render_round_trip() {
        let f = HLaurent::parse(q(), "1 + x*y^5 - y^-5*x").unwrap();
        assert_eq!(HLaurent::parse(q(), &f.render()).unwrap(), f);
        let g = HLaurent::parse(BaseField::new(3).unwrap(), "4*x + 3*y").unwrap();
        assert_eq!(g.render(), "x");
    }

    #[test]
    fn power_substitution_is_multiplicative() {
        let f = HLaurent::parse(q(), "1 + x + y^-1*x^2").unwrap();
        let g = HLaurent::parse(q(), "y - z*x").unwrap();
        assert_eq!(f.mul(&g).power_x(4), f.power_x(4).mul(&g.power_x(4)));
    }
}
