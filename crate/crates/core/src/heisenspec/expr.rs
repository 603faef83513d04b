//! Unevaluated products and inverses of group-algebra elements, and their
//! evaluation in a symbol algebra.

use std::fmt;

use crate::exactfield::{Rf, RatFunc};
use crate::symbolalg::{AlgRef, InvolutionCase, SymElem, SymError};

use super::{HLaurent, HeisError};

#[derive(Clone, PartialEq)]
pub enum LocExpr {
    Leaf(HLaurent),
    Product(Vec<LocExpr>),
    Inverse(Box<LocExpr>),
}

impl LocExpr {
    pub fn leaf(f: HLaurent) -> Self {
        LocExpr::Leaf(f)
    }

    pub fn product(parts: Vec<LocExpr>) -> Self {
        LocExpr::Product(parts)
    }

    pub fn inverse(self) -> Self {
        LocExpr::Inverse(Box::new(self))
    }

    pub fn mul(&self, o: &LocExpr) -> Self {
        LocExpr::Product(vec![self.clone(), o.clone()])
    }

    /// `v⁻¹ u v`.
    pub fn conj(&self, v: &LocExpr) -> Self {
        LocExpr::Product(vec![v.clone().inverse(), self.clone(), v.clone()])
    }

    /// Pushes the involution through the tree: products reverse, inverses stay.
    pub fn star(&self, case: InvolutionCase) -> Self {
        match self {
            LocExpr::Leaf(f) => LocExpr::Leaf(f.star(case)),
            LocExpr::Product(ps) => LocExpr::Product(ps.iter().rev().map(|p| p.star(case)).collect()),
            LocExpr::Inverse(e) => LocExpr::Inverse(Box::new(e.star(case))),
        }
    }

    pub fn leaves(&self) -> Vec<&HLaurent> {
        match self {
            LocExpr::Leaf(f) => vec![f],
            LocExpr::Product(ps) => ps.iter().flat_map(|p| p.leaves()).collect(),
            LocExpr::Inverse(e) => e.leaves(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            LocExpr::Leaf(f) => format!("({})", f.render()),
            LocExpr::Product(ps) => ps.iter().map(|p| p.render()).collect::<Vec<_>>().join("·"),
            LocExpr::Inverse(e) => match **e {
                LocExpr::Leaf(_) => format!("{}^-1", e.render()),
                _ => format!("[{}]^-1", e.render()),
            },
        }
    }
}

impl fmt::Debug for LocExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for LocExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The specialization `x^N ↦ i`, `y ↦ j`, `z^N ↦ θ` on the subgroup
/// `⟨x^N, y⟩`; `N = 1` is the plain map.
#[derive(Clone, Debug)]
pub struct Specializer {
    alg: AlgRef,
    x_power: i64,
}

impl Specializer {
    pub fn new(alg: &AlgRef) -> Self {
        Specializer { alg: alg.clone(), x_power: 1 }
    }

    pub fn with_x_power(alg: &AlgRef, x_power: i64) -> Self {
        assert!(x_power >= 1, "x power must be positive");
        Specializer { alg: alg.clone(), x_power }
    }

    pub fn algebra(&self) -> &AlgRef {
        &self.alg
    }

    /// `x^a y^b z^c ↦ θ^c a^{⌊a/m⌋} b^{⌊b/m⌋} i^{a mod m} j^{b mod m}`.
    pub fn specialize(&self, f: &HLaurent) -> Result<SymElem, HeisError> {
        let alg = &self.alg;
        if f.base() != *alg.field().prime() {
            return Err(HeisError::Sym(SymError::AlgebraMismatch));
        }
        let n = self.x_power;
        let mut out = SymElem::zero(alg);
        for (m, c) in f.terms() {
            if m[0] % n != 0 || m[2] % n != 0 {
                let mono = HLaurent::from_terms(f.base(), [(*m, c.clone())]);
                return Err(HeisError::NotInSubgroup(mono.render(), n));
            }
            let coef: Rf = RatFunc::from_elem(alg.field(), c.clone()).mul(&Rf::theta_pow(alg.field(), m[2] / n));
            out = out.add(&SymElem::term(alg, m[0] / n, m[1], coef)?)?;
        }
        Ok(out)
    }

    /// Bottom-up, left-to-right evaluation.
    pub fn eval(&self, e: &LocExpr) -> Result<SymElem, HeisError> {
        match e {
            LocExpr::Leaf(f) => self.specialize(f),
            LocExpr::Product(ps) => {
                let mut acc = SymElem::one(&self.alg);
                for p in ps {
                    acc = acc.mul(&self.eval(p)?)?;
                }
                Ok(acc)
            }
            LocExpr::Inverse(inner) => {
                let v = self.eval(inner)?;
                v.inv().map_err(|err| match err {
                    SymError::NotInvertible => HeisError::Kernel,
                    other => HeisError::Sym(other),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::BaseField;
    use crate::symbolalg::SymbolAlgebra;

    fn h(s: &str) -> HLaurent {
        HLaurent::parse(BaseField::rationals(), s).unwrap()
    }

    #[test]
    fn anchors() {
        let alg = SymbolAlgebra::with_params(0, 3).unwrap();
        let sp = Specializer::new(&alg);
        assert_eq!(sp.specialize(&h("x")).unwrap(), SymElem::i(&alg));
        assert_eq!(sp.specialize(&h("z")).unwrap(), SymElem::scalar(&alg, alg.theta()));
        let yx = sp.specialize(&h("y*x")).unwrap();
        assert_eq!(yx, SymElem::j(&alg).mul(&SymElem::i(&alg)).unwrap());
        let ij = SymElem::i(&alg).mul(&SymElem::j(&alg)).unwrap();
        assert_eq!(yx, ij.scale(&alg.theta()));
        assert!(sp.specialize(&h("1")).unwrap().is_one());
    }

    #[test]
    fn unitary_quotient_at_three() {
        let alg = SymbolAlgebra::with_params(0, 3).unwrap();
        let sp = Specializer::new(&alg);
        let e = LocExpr::leaf(h("1 - z*x")).mul(&LocExpr::leaf(h("1 - z^-1*x")).inverse());
        let th = alg.theta();
        let num = SymElem::one(&alg).sub(&SymElem::i(&alg).scale(&th)).unwrap();
        let den = SymElem::one(&alg).sub(&SymElem::i(&alg).scale(&th.pow(2).unwrap())).unwrap();
        assert_eq!(sp.eval(&e).unwrap(), num.mul(&den.inv().unwrap()).unwrap());
    }

    #[test]
    fn kernel_error() {
        let alg = SymbolAlgebra::with_params(0, 2).unwrap();
        let sp = Specializer::new(&alg);
        let e = LocExpr::leaf(h("x - x")).inverse();
        assert_eq!(sp.eval(&e), Err(HeisError::Kernel));
    }

    #[test]
    fn power_specialization() {
        let alg = SymbolAlgebra::with_params(0, 2).unwrap();
        let sp = Specializer::with_x_power(&alg, 4);
        assert_eq!(sp.specialize(&h("x^4")).unwrap(), SymElem::i(&alg));
        assert!(sp.specialize(&h("x^2")).is_err());
        assert_eq!(sp.specialize(&h("z^4")).unwrap(), SymElem::from_i64(&alg, -1));
    }

    #[test]
    fn star_reverses_products() {
        let e = LocExpr::leaf(h("x")).mul(&LocExpr::leaf(h("y")));
        let s = e.star(InvolutionCase::Fix);
        assert_eq!(s, LocExpr::leaf(h("y")).mul(&LocExpr::leaf(h("x"))));
    }
}
