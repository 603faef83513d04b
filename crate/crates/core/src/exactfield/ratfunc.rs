//! Rational functions over `P(θ)`.
//!
//! Canonical form: numerator in `P(θ)[vars]` (θ-coordinates), denominator in
//! `P[vars]`, monic under the graded order, coprime to every numerator
//! coordinate. Zero is `0/1`. Two values are equal exactly when their canonical
//! forms coincide.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::cyclo::{CyclePoly, FieldDescriptor, FieldRef};
use super::poly::{Mono, Poly, Var};
use super::prime::PrimeField;
use super::FieldError;

#[derive(Clone)]
pub struct RatFunc<F: PrimeField> {
    field: FieldRef<F>,
    num: CyclePoly<F>,
    den: Poly<F>,
}

impl<F: PrimeField> PartialEq for RatFunc<F> {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num
            && self.den == other.den
            && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl<F: PrimeField> Eq for RatFunc<F> {}

impl<F: PrimeField> std::hash::Hash for RatFunc<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl<F: PrimeField> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<F: PrimeField> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<F: PrimeField> RatFunc<F> {
    /// Builds `num/den` and brings it to canonical form.
    pub fn new(field: &FieldRef<F>, num: CyclePoly<F>, den: Poly<F>) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::canonical(field.clone(), num, den))
    }

    fn canonical(field: FieldRef<F>, num: CyclePoly<F>, den: Poly<F>) -> Self {
        let f = field.prime();
        if num.is_zero() {
            return RatFunc { num: CyclePoly::zero(&field), den: Poly::one(f), field };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.content_with(&den, &field);
            if g.is_one(f) {
                (num, den)
            } else {
                (
                    num.exact_div(&g, &field).expect("gcd divides numerator"),
                    den.exact_div(&g, f).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if f.is_one(&lc) {
            return RatFunc { field, num, den };
        }
        let li = f.inv(&lc).expect("nonzero leading coefficient");
        let num = num.scale_elem(&li, &field);
        let den = den.scale(&li, f);
        RatFunc { field, num, den }
    }

    pub fn field(&self) -> &FieldRef<F> {
        &self.field
    }

    pub fn numerator(&self) -> &CyclePoly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<F> {
        &self.den
    }

    pub fn zero(field: &FieldRef<F>) -> Self {
        RatFunc {
            num: CyclePoly::zero(field),
            den: Poly::one(field.prime()),
            field: field.clone(),
        }
    }

    pub fn one(field: &FieldRef<F>) -> Self {
        Self::from_poly(field, Poly::one(field.prime()))
    }

    pub fn from_i64(field: &FieldRef<F>, c: i64) -> Self {
        Self::from_poly(field, Poly::from_i64(field.prime(), c))
    }

    pub fn from_elem(field: &FieldRef<F>, c: F::Elem) -> Self {
        Self::from_poly(field, Poly::constant(field.prime(), c))
    }

    pub fn from_poly(field: &FieldRef<F>, p: Poly<F>) -> Self {
        RatFunc {
            num: CyclePoly::from_poly(field, p),
            den: Poly::one(field.prime()),
            field: field.clone(),
        }
    }

    /// A polynomial over `P(θ)`; already canonical since the denominator is 1.
    pub fn from_cycle_poly(field: &FieldRef<F>, p: CyclePoly<F>) -> Self {
        RatFunc { num: p, den: Poly::one(field.prime()), field: field.clone() }
    }

    pub fn var(field: &FieldRef<F>, v: Var) -> Self {
        Self::from_poly(field, Poly::var(field.prime(), v))
    }

    pub fn theta(field: &FieldRef<F>) -> Self {
        Self::theta_pow(field, 1)
    }

    pub fn theta_pow(field: &FieldRef<F>, e: i64) -> Self {
        Self::from_cycle_poly(field, CyclePoly::theta_pow(field, e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        let f = self.field.prime();
        self.den.is_one(f) && self.num.as_base().map(|p| p.is_one(f)).unwrap_or(false)
    }

    /// `Some(p)` when the value is a polynomial over `P`.
    pub fn as_base_poly(&self) -> Option<&Poly<F>> {
        if self.den.is_one(self.field.prime()) {
            self.num.as_base()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one(self.field.prime())
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    pub fn add(&self, o: &Self) -> Self {
        let fd = &self.field;
        let f = fd.prime();
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::canonical(fd.clone(), self.num.add(&o.num, fd), self.den.clone());
        }
        let g = self.den.gcd(&o.den, f);
        let d1 = self.den.exact_div(&g, f).expect("gcd divides");
        let d2 = o.den.exact_div(&g, f).expect("gcd divides");
        let num = self.num.scale(&d2, fd).add(&o.num.scale(&d1, fd), fd);
        let den = d1.mul(&o.den, f);
        Self::canonical(fd.clone(), num, den)
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            field: self.field.clone(),
            num: self.num.neg(&self.field),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let fd = &self.field;
        let f = fd.prime();
        if self.is_zero() || o.is_zero() {
            return Self::zero(fd);
        }
        // cross-cancel against the opposite denominators first
        let (n1, d2) = cancel(&self.num, &o.den, fd);
        let (n2, d1) = cancel(&o.num, &self.den, fd);
        let num = n1.mul(&n2, fd);
        let den = d1.mul(&d2, f);
        if fd.degree() == 1 {
            // over P the cross-cancelled product is already reduced
            let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero");
            let li = f.inv(&lc).expect("nonzero");
            return RatFunc { field: fd.clone(), num: num.scale_elem(&li, fd), den: den.scale(&li, f) };
        }
        Self::canonical(fd.clone(), num, den)
    }

    pub fn scale_poly(&self, p: &Poly<F>) -> Self {
        Self::canonical(self.field.clone(), self.num.scale(p, &self.field), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let fd = &self.field;
        let (norm, cof) = self.num.norm_and_cofactor(fd);
        Ok(Self::canonical(fd.clone(), cof.scale(&self.den, fd), norm))
    }

    pub fn div(&self, o: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Image under the field automorphism `θ ↦ θ^e`, fixing all variables.
    pub fn galois(&self, e: i64) -> Self {
        if self.field.degree() == 1 {
            return self.clone();
        }
        Self::canonical(self.field.clone(), self.num.galois(e, &self.field), self.den.clone())
    }

    /// Simultaneous substitution of variables; unbound variables stay put.
    /// `λ` bound to `θ` reduces through the minimal polynomial.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RatFunc<F>>) -> Result<Self, FieldError> {
        let fd = &self.field;
        let mut cache: BTreeMap<(Var, u32), RatFunc<F>> = BTreeMap::new();
        let mut eval = |p: &Poly<F>| -> RatFunc<F> {
            let mut acc = RatFunc::zero(fd);
            for (m, c) in p.terms() {
                let mut t = RatFunc::from_elem(fd, c.clone());
                let mut rest = [0u32; 4];
                for v in Var::ALL {
                    let e = m.exp(v);
                    if e == 0 {
                        continue;
                    }
                    match bindings.get(&v) {
                        Some(val) => {
                            let pw = cache
                                .entry((v, e))
                                .or_insert_with(|| val.pow(e as i64).expect("non-negative power"));
                            t = t.mul(pw);
                        }
                        None => rest[v.index()] = e,
                    }
                }
                let mono = Mono(rest);
                if !mono.is_one() {
                    t = t.mul(&RatFunc::from_poly(fd, Poly::monomial(fd.prime(), mono, fd.prime().one())));
                }
                acc = acc.add(&t);
            }
            acc
        };
        let den = eval(&self.den);
        if den.is_zero() {
            return Err(FieldError::OutsideLocalization);
        }
        let mut num = RatFunc::zero(fd);
        for (k, c) in self.num.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            num = num.add(&eval(c).mul(&RatFunc::theta_pow(fd, k as i64)));
        }
        num.div(&den)
    }

    pub fn substitute_one(&self, v: Var, value: &RatFunc<F>) -> Result<Self, FieldError> {
        let mut b = BTreeMap::new();
        b.insert(v, value.clone());
        self.substitute(&b)
    }

    /// Canonical text: `(N)` or `(N)/(D)`; parses back to the same value.
    pub fn render(&self) -> String {
        let f = self.field.prime();
        let n = self.num.render(&self.field);
        if self.den.is_one(f) {
            format!("({})", n)
        } else {
            format!("({})/({})", n, self.den.render(f))
        }
    }
}

/// Removes the common factor of `num` and `den`.
fn cancel<F: PrimeField>(
    num: &CyclePoly<F>,
    den: &Poly<F>,
    fd: &FieldDescriptor<F>,
) -> (CyclePoly<F>, Poly<F>) {
    let f = fd.prime();
    if den.is_constant() {
        return (num.clone(), den.clone());
    }
    let g = num.content_with(den, fd);
    if g.is_one(f) {
        return (num.clone(), den.clone());
    }
    (
        num.exact_div(&g, fd).expect("gcd divides"),
        den.exact_div(&g, f).expect("gcd divides"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::prime::{BaseField, PrimeModulus, Rationals};

    fn q_field(q: u64) -> FieldRef<Rationals> {
        FieldDescriptor::new(Rationals, q).unwrap()
    }

    #[test]
    fn division_cancels_common_factor() {
        let fd = q_field(2);
        let a = RatFunc::var(&fd, Var::A);
        let one = RatFunc::one(&fd);
        let r = a.mul(&a).sub(&one).div(&a.sub(&one)).unwrap();
        assert_eq!(r, a.add(&one));
        assert!(r.is_polynomial());
    }

    #[test]
    fn inverse_over_extension() {
        let fd = q_field(5);
        let a = RatFunc::var(&fd, Var::A);
        let th = RatFunc::theta(&fd);
        let f = a.add(&th.mul(&th)).sub(&RatFunc::var(&fd, Var::B).mul(&th));
        assert!(f.mul(&f.inv().unwrap()).is_one());
    }

    #[test]
    fn theta_square_plus_one_vanishes_mod_three() {
        let fd = FieldDescriptor::new(PrimeModulus::new(3).unwrap(), 4).unwrap();
        let th = RatFunc::theta(&fd);
        assert!(th.mul(&th).add(&RatFunc::one(&fd)).is_zero());
    }

    #[test]
    fn substitution_at_pole_fails() {
        let fd = q_field(2);
        let a = RatFunc::var(&fd, Var::A);
        let one = RatFunc::one(&fd);
        let f = one.div(&one.sub(&a)).unwrap();
        let err = f.substitute_one(Var::A, &one).unwrap_err();
        assert_eq!(err.to_string(), "evaluation outside localization");
        let g = one.sub(&a.mul(&a)).div(&one.sub(&a)).unwrap();
        assert_eq!(g.substitute_one(Var::A, &one).unwrap(), RatFunc::from_i64(&fd, 2));
    }

    #[test]
    fn lambda_to_theta() {
        let fd = q_field(3);
        let l = RatFunc::var(&fd, Var::Lambda);
        let sq = l.mul(&l);
        let th = RatFunc::theta(&fd);
        assert_eq!(sq.substitute_one(Var::Lambda, &th).unwrap(), th.mul(&th));
        // λ^3 ↦ 1
        assert!(sq.mul(&l).substitute_one(Var::Lambda, &th).unwrap().is_one());
    }

    #[test]
    fn galois_is_field_automorphism() {
        let fd = q_field(5);
        let a = RatFunc::var(&fd, Var::A);
        let th = RatFunc::theta(&fd);
        let f = a.add(&th).div(&a.sub(&th.mul(&th))).unwrap();
        let g = RatFunc::var(&fd, Var::B).mul(&th).add(&RatFunc::one(&fd));
        assert_eq!(f.mul(&g).galois(2), f.galois(2).mul(&g.galois(2)));
        assert_eq!(th.galois(-1), RatFunc::theta_pow(&fd, 4));
    }

    #[test]
    fn base_field_char_three() {
        let fd = FieldDescriptor::new(BaseField::new(3).unwrap(), 2).unwrap();
        let a = RatFunc::var(&fd, Var::A);
        let three = RatFunc::from_i64(&fd, 3);
        assert!(three.is_zero());
        assert!(a.add(&a).add(&a).is_zero());
    }
}
