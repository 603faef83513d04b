//! The discrete valuation of `F(i)` at the prime `1 − θi` (residue map
//! `i ↦ θ⁻¹`, hence `a ↦ 1`).
//!
//! Elements of `F(i)` are rational functions in `X = i` and `b`; substituting
//! `X = θ⁻¹(1 − T)` makes the uniformizer equal to `T`, and the valuation is
//! the `T`-adic order of numerator minus that of denominator. `T` is carried
//! by the otherwise unused variable `a`.

use std::collections::BTreeMap;

use crate::exactfield::{BaseField, CyclePoly, Poly, Rf, Var};
use crate::symbolalg::AlgRef;

#[derive(Clone, Debug)]
pub struct Valuation {
    alg: AlgRef,
    shift: BTreeMap<Var, Rf>,
}

fn low_degree(p: &Poly<BaseField>, v: Var) -> Option<u32> {
    p.terms().map(|(m, _)| m.0[v.index()]).min()
}

fn low_degree_cycle(p: &CyclePoly<BaseField>, v: Var) -> Option<u32> {
    p.coords.iter().filter_map(|c| low_degree(c, v)).min()
}

impl Valuation {
    pub fn new(alg: &AlgRef) -> Self {
        let fd = alg.field();
        let t = Rf::var(fd, Var::A);
        let x = Rf::theta_pow(fd, -1).mul(&Rf::one(fd).sub(&t));
        let mut shift = BTreeMap::new();
        shift.insert(Var::X, x);
        Valuation { alg: alg.clone(), shift }
    }

    /// `1 − θX`.
    pub fn uniformizer(&self) -> Rf {
        let fd = self.alg.field();
        Rf::one(fd).sub(&Rf::theta(fd).mul(&Rf::var(fd, Var::X)))
    }

    /// `ν(w)`, or `None` for `w = 0`.
    pub fn nu(&self, w: &Rf) -> Option<i64> {
        if w.is_zero() {
            return None;
        }
        assert!(!w.uses(Var::A), "valuation expects an element of F(i) in X and b");
        let s = w.substitute(&self.shift).expect("substitution of a polynomial never leaves the localization");
        let num = low_degree_cycle(s.numerator(), Var::A).unwrap_or(0) as i64;
        let den = low_degree(s.denominator(), Var::A).unwrap_or(0) as i64;
        Some(num - den)
    }

    /// Residue `w(θ⁻¹) ∈ P(θ)(b)` of an element with `ν(w) ≥ 0`.
    pub fn residue(&self, w: &Rf) -> Option<Rf> {
        match self.nu(w) {
            None => Some(Rf::zero(self.alg.field())),
            Some(v) if v < 0 => None,
            Some(_) => {
                let mut at = BTreeMap::new();
                at.insert(Var::X, Rf::theta_pow(self.alg.field(), -1));
                w.substitute(&at).ok()
            }
        }
    }
}
