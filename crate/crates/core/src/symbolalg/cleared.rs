//! Units written as `N / D` with `N` in the polynomial symbol basis and `D`
//! a central polynomial, multiplied without any gcd work.

use crate::exactfield::{BaseField, CyclePoly, Poly, Rf};

use super::kernel::{dense_mul, CyclePolyOps};
use super::rep::{clear_denominators, reduced_charpoly};
use super::{AlgRef, SymElem, SymError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClearedElem {
    num: Vec<CyclePoly<BaseField>>,
    den: CyclePoly<BaseField>,
}

impl ClearedElem {
    pub fn one(alg: &AlgRef) -> Self {
        let fd = alg.field();
        let m = alg.degree();
        let mut num = vec![CyclePoly::zero(fd); m * m];
        num[0] = CyclePoly::from_poly(fd, Poly::one(fd.prime()));
        let den = num[0].clone();
        ClearedElem { num, den }
    }

    pub fn from_elem(u: &SymElem) -> Self {
        let (num, delta) = clear_denominators(u);
        ClearedElem { num, den: CyclePoly::from_poly(u.algebra().field(), delta) }
    }

    /// `u⁻¹ = −δ V / c_m` where `u = U/δ`, `c_m` is the constant term of the
    /// reduced characteristic polynomial of `U` and `V = U^{m−1} + c_1 U^{m−2} + … + c_{m−1}`.
    pub fn inverse_of(u: &SymElem) -> Result<Self, SymError> {
        let alg = u.algebra();
        let fd = alg.field();
        let m = alg.degree();
        if u.is_zero() {
            return Err(SymError::NotInvertible);
        }
        let (big_u, delta) = clear_denominators(u);
        let cs = reduced_charpoly(&big_u, alg);
        let cn = cs[m].clone();
        if cn.is_zero() {
            return Err(SymError::NotInvertible);
        }
        let ring = CyclePolyOps::new(alg);
        let mut v = vec![CyclePoly::zero(fd); m * m];
        v[0] = CyclePoly::from_poly(fd, Poly::one(fd.prime()));
        for c in cs.iter().take(m).skip(1) {
            v = dense_mul(&ring, m, &v, &big_u);
            v[0] = v[0].add(c, fd);
        }
        let minus_delta = delta.neg(fd.prime());
        let num = v.into_iter().map(|c| c.scale(&minus_delta, fd)).collect();
        Ok(ClearedElem { num, den: cn })
    }

    pub fn numerator(&self) -> &[CyclePoly<BaseField>] {
        &self.num
    }

    pub fn denominator(&self) -> &CyclePoly<BaseField> {
        &self.den
    }

    pub fn mul(&self, o: &Self, alg: &AlgRef) -> Self {
        let ring = CyclePolyOps::new(alg);
        ClearedElem {
            num: dense_mul(&ring, alg.degree(), &self.num, &o.num),
            den: self.den.mul(&o.den, alg.field()),
        }
    }

    /// `N = D · 1`.
    pub fn is_one(&self) -> bool {
        self.num[0] == self.den && self.num[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_elem(&self, alg: &AlgRef) -> Result<SymElem, SymError> {
        let fd = alg.field();
        let d = Rf::from_cycle_poly(fd, self.den.clone()).inv()?;
        let coeffs = self
            .num
            .iter()
            .map(|c| if c.is_zero() { Rf::zero(fd) } else { Rf::from_cycle_poly(fd, c.clone()).mul(&d) })
            .collect();
        Ok(SymElem { alg: alg.clone(), coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::super::SymbolAlgebra;
    use super::*;

    #[test]
    fn round_trip_and_inverse() {
        for q in [2, 3] {
            let h = SymbolAlgebra::with_params(0, q).unwrap();
            let u = SymElem::one(&h).add(&SymElem::i(&h).scale(&h.scalar_parse("(1-a)^-1").unwrap())).unwrap();
            let u = u.add(&SymElem::j(&h)).unwrap();
            let c = ClearedElem::from_elem(&u);
            assert_eq!(c.to_elem(&h).unwrap(), u);
            let ci = ClearedElem::inverse_of(&u).unwrap();
            assert!(c.mul(&ci, &h).is_one());
            assert!(ci.mul(&c, &h).is_one());
            assert_eq!(ci.to_elem(&h).unwrap(), u.inv().unwrap());
            assert!(!c.is_one());
        }
    }
}
