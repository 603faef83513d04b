//! `F_0`-linear anti-automorphisms of order two on a symbol algebra.
//!
//! An involution is fixed by the images of `i` and `j` and by `θ ↦ θ^e`.
//! On the center it sends `a ↦ (i*)^m` and `b ↦ (j*)^m`, both of which must
//! be scalars; `Σ c_{rs} i^r j^s` goes to `Σ σ(c_{rs}) (j*)^s (i*)^r`.

use std::collections::BTreeMap;

use crate::exactfield::{Rf, Var};

use super::{AlgRef, SymElem, SymError};

/// The three sign patterns on `(x, y)` carried over to `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvolutionCase {
    /// `i* = i`, `j* = j`, `θ* = θ^{-1}`.
    Fix,
    /// `i* = i^{-1}`, `j* = j^{-1}`, `θ* = θ^{-1}`.
    Invert,
    /// `i* = i`, `j* = j^{-1}`, `θ* = θ`.
    Mixed,
}

impl InvolutionCase {
    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            1 => Some(InvolutionCase::Fix),
            2 => Some(InvolutionCase::Invert),
            3 => Some(InvolutionCase::Mixed),
            _ => None,
        }
    }

    pub fn tag(self) -> u8 {
        match self {
            InvolutionCase::Fix => 1,
            InvolutionCase::Invert => 2,
            InvolutionCase::Mixed => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AlgInvolution {
    alg: AlgRef,
    image_i: SymElem,
    image_j: SymElem,
    theta_exp: i64,
    bindings: BTreeMap<Var, Rf>,
}

impl AlgInvolution {
    /// Validates the data: scalar `(i*)^m`, `(j*)^m`, order two on `i` and `j`,
    /// and compatibility with `ji = θij`.
    pub fn new(image_i: SymElem, image_j: SymElem, theta_exp: i64) -> Result<Self, SymError> {
        let alg = image_i.algebra().clone();
        if image_j.algebra() != &alg {
            return Err(SymError::AlgebraMismatch);
        }
        let m = alg.degree() as i64;
        let q = alg.field().order() as i64;
        if theta_exp.rem_euclid(q) != 1 && theta_exp.rem_euclid(q) != (q - 1) {
            return Err(SymError::InvalidInvolution("θ must map to θ or θ^{-1}".into()));
        }
        let ai = image_i.pow(m)?;
        let bj = image_j.pow(m)?;
        let sa = ai
            .as_scalar()
            .cloned()
            .ok_or_else(|| SymError::InvalidInvolution("(i*)^m is not central".into()))?;
        let sb = bj
            .as_scalar()
            .cloned()
            .ok_or_else(|| SymError::InvalidInvolution("(j*)^m is not central".into()))?;
        let mut bindings = BTreeMap::new();
        bindings.insert(Var::A, sa);
        bindings.insert(Var::B, sb);
        let inv = AlgInvolution { alg: alg.clone(), image_i, image_j, theta_exp, bindings };
        // ji = θij  ⟹  i* j* = θ* j* i*
        let lhs = inv.image_i.mul(&inv.image_j)?;
        let rhs = inv.image_j.mul(&inv.image_i)?.scale(&Rf::theta_pow(alg.field(), theta_exp));
        if lhs != rhs {
            return Err(SymError::InvalidInvolution("images violate ji = θij".into()));
        }
        if inv.apply(&inv.image_i)? != SymElem::i(&alg) || inv.apply(&inv.image_j)? != SymElem::j(&alg) {
            return Err(SymError::InvalidInvolution("not of order two on generators".into()));
        }
        Ok(inv)
    }

    pub fn for_case(alg: &AlgRef, case: InvolutionCase) -> Result<Self, SymError> {
        let i = SymElem::i(alg);
        let j = SymElem::j(alg);
        match case {
            InvolutionCase::Fix => Self::new(i, j, -1),
            InvolutionCase::Invert => Self::new(i.inv()?, j.inv()?, -1),
            InvolutionCase::Mixed => Self::new(i, j.inv()?, 1),
        }
    }

    pub fn algebra(&self) -> &AlgRef {
        &self.alg
    }

    pub fn image_i(&self) -> &SymElem {
        &self.image_i
    }

    pub fn image_j(&self) -> &SymElem {
        &self.image_j
    }

    pub fn theta_exp(&self) -> i64 {
        self.theta_exp
    }

    /// Action on the center `F`.
    pub fn apply_scalar(&self, c: &Rf) -> Result<Rf, SymError> {
        Ok(c.substitute(&self.bindings)?.galois(self.theta_exp))
    }

    pub fn apply(&self, u: &SymElem) -> Result<SymElem, SymError> {
        let alg = &self.alg;
        let m = alg.degree();
        let mut ipow = vec![SymElem::one(alg)];
        let mut jpow = vec![SymElem::one(alg)];
        for k in 1..m {
            ipow.push(ipow[k - 1].mul(&self.image_i)?);
            jpow.push(jpow[k - 1].mul(&self.image_j)?);
        }
        let mut out = SymElem::zero(alg);
        for (r, s, c) in u.triples() {
            let sc = self.apply_scalar(&c)?;
            let t = jpow[s].mul(&ipow[r])?.scale(&sc);
            out = out.add(&t)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::SymbolAlgebra;
    use super::*;

    #[test]
    fn fix_case_on_ij() {
        let h = SymbolAlgebra::with_params(0, 3).unwrap();
        let inv = AlgInvolution::for_case(&h, InvolutionCase::Fix).unwrap();
        let ij = SymElem::i(&h).mul(&SymElem::j(&h)).unwrap();
        assert_eq!(inv.apply(&ij).unwrap(), ij.scale(&h.theta()));
        assert!(inv.apply(&SymElem::one(&h)).unwrap().is_one());
    }

    #[test]
    fn mixed_case_on_j() {
        let h = SymbolAlgebra::with_params(0, 2).unwrap();
        let inv = AlgInvolution::for_case(&h, InvolutionCase::Mixed).unwrap();
        let j = SymElem::j(&h);
        assert_eq!(inv.apply(&j).unwrap(), j.scale(&h.b().inv().unwrap()));
    }

    #[test]
    fn all_cases_validate() {
        for q in 2..=5 {
            let h = SymbolAlgebra::with_params(0, q).unwrap();
            for c in [InvolutionCase::Fix, InvolutionCase::Invert, InvolutionCase::Mixed] {
                AlgInvolution::for_case(&h, c).unwrap();
            }
        }
    }

    #[test]
    fn rejects_wrong_theta_action() {
        let h = SymbolAlgebra::with_params(0, 3).unwrap();
        let e = AlgInvolution::new(SymElem::i(&h), SymElem::j(&h), 1);
        assert!(e.is_err());
    }

    #[test]
    fn anti_multiplicative_and_order_two() {
        let h = SymbolAlgebra::with_params(0, 3).unwrap();
        let u = SymElem::one(&h).add(&SymElem::i(&h).scale(&h.b())).unwrap();
        let v = SymElem::j(&h).add(&SymElem::term(&h, 1, 2, h.theta()).unwrap()).unwrap();
        for c in [InvolutionCase::Fix, InvolutionCase::Invert, InvolutionCase::Mixed] {
            let inv = AlgInvolution::for_case(&h, c).unwrap();
            let lhs = inv.apply(&u.mul(&v).unwrap()).unwrap();
            let rhs = inv.apply(&v).unwrap().mul(&inv.apply(&u).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{:?}", c);
            assert_eq!(inv.apply(&inv.apply(&u).unwrap()).unwrap(), u);
        }
    }
}
