//! Prime fields: the rationals and `F_p`.
//!
//! Elements do not carry their field. Every operation goes through a field
//! object (`Rationals` is zero-sized, `PrimeModulus` holds `p`), so the same
//! polynomial code serves both characteristics.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FieldError;

pub trait PrimeField: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    /// 0 for the rationals, `p` otherwise.
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Decimal rendering; `F_p` elements print as their least non-negative residue.
    fn render(&self, a: &Self::Elem) -> String;

    /// `Some(v)` when `a` equals the image of a (small) negative integer `-v`.
    /// Used only to print `- 3*a` instead of `+ -3*a`.
    fn negative_part(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Image in `F_m` for the modulus used by [`PrimeField::residue_modulus`];
    /// `None` when the image is undefined.
    fn residue(&self, a: &Self::Elem) -> Option<u64>;

    /// Prime used for modular shortcuts: `p` itself, or a large prime in characteristic 0.
    fn residue_modulus(&self) -> u64 {
        match self.characteristic() {
            0 => LARGE_PRIME,
            p => p,
        }
    }
}

/// `2^31 − 1`.
pub const LARGE_PRIME: u64 = 2_147_483_647;

/// `a mod m`, or `None` when the denominator is divisible by `m`.
pub fn rational_residue(a: &BigRational, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let n = a.numer().mod_floor(&mb).to_u64()?;
    let d = a.denom().mod_floor(&mb).to_u64()?;
    let di = PrimeModulus { p: m }.inv(&d)?;
    Some(n * di % m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl PrimeField for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn negative_part(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            Some(-a)
        } else {
            None
        }
    }
    fn residue(&self, a: &BigRational) -> Option<u64> {
        rational_residue(a, LARGE_PRIME)
    }
}

/// `F_p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: u64,
}

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 2 || p >= (1 << 32) || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeModulus { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl PrimeField for PrimeModulus {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().unwrap_or(0)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn negative_part(&self, _a: &u64) -> Option<u64> {
        None
    }
    fn residue(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
}

/// A prime field chosen at run time: `p = 0` gives the rationals, otherwise
/// `F_p` with residues stored as integers in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseField {
    p: u64,
}

impl BaseField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p != 0 && (p >= (1 << 32) || !is_prime(p)) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(BaseField { p })
    }

    pub fn rationals() -> Self {
        BaseField { p: 0 }
    }

    fn reduce(&self, v: BigRational) -> BigRational {
        if self.p == 0 {
            return v;
        }
        let m = BigInt::from(self.p);
        let n = v.numer().mod_floor(&m);
        let d = v.denom().mod_floor(&m);
        let di = PrimeModulus { p: self.p }
            .inv(&d.to_u64().unwrap_or(0))
            .expect("denominator prime to p");
        BigRational::from_integer((n * BigInt::from(di)).mod_floor(&m))
    }
}

impl PrimeField for BaseField {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        self.reduce(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        self.reduce(BigRational::from_integer(v.clone()))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if self.p == 0 { a + b } else { self.reduce(a + b) }
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if self.p == 0 { a - b } else { self.reduce(a - b) }
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if self.p == 0 { a * b } else { self.reduce(a * b) }
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        if self.p == 0 { -a } else { self.reduce(-a) }
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            return None;
        }
        if self.p == 0 {
            return Some(a.recip());
        }
        let f = PrimeModulus { p: self.p };
        f.inv(&a.to_integer().to_u64()?)
            .map(|x| BigRational::from_integer(BigInt::from(x)))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn render(&self, a: &BigRational) -> String {
        Rationals.render(a)
    }
    fn negative_part(&self, a: &BigRational) -> Option<BigRational> {
        if self.p == 0 {
            Rationals.negative_part(a)
        } else {
            None
        }
    }
    fn residue(&self, a: &BigRational) -> Option<u64> {
        rational_residue(a, self.residue_modulus())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_roundtrip() {
        let f = PrimeModulus::new(7).unwrap();
        for a in 1..7 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeModulus::new(9).is_err());
        assert!(PrimeModulus::new(1).is_err());
        assert!(BaseField::new(4).is_err());
        assert!(BaseField::new(0).is_ok());
    }

    #[test]
    fn base_field_reduces_mod_p() {
        let f = BaseField::new(5).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(f.render(&a), "4");
        let ai = f.inv(&f.from_i64(2)).unwrap();
        assert_eq!(f.mul(&ai, &f.from_i64(2)), f.one());
    }
}
