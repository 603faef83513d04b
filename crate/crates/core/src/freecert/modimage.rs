//! Images of characteristic-zero symbol algebras in matrix-free form over
//! `F_ℓ`: `a ↦ α`, `b ↦ β`, `θ ↦ ω` with `ω` a root of the minimal
//! polynomial of `θ` modulo a prime `ℓ ≡ 1 (mod q)`.
//!
//! The map is a ring homomorphism on elements whose denominators survive, so
//! a word equal to 1 has image 1; words whose image is 1 are then confirmed
//! with exact arithmetic.

use crate::exactfield::{is_prime, rational_residue, BaseField, CyclePoly, Poly, PrimeField, PrimeModulus, Var};
use crate::symbolalg::{dense_mul, AlgRef, ClearedElem, CoeffOps};

#[derive(Clone, Debug)]
pub struct ModImage {
    ell: u64,
    omega_pows: Vec<u64>,
    alpha: u64,
    beta: u64,
    m: usize,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl ModImage {
    /// The `k`-th evaluation point; `None` in positive characteristic.
    pub fn new(alg: &AlgRef, k: usize) -> Option<Self> {
        let fd = alg.field();
        if fd.characteristic() != 0 {
            return None;
        }
        let q = fd.order();
        let mut ell = ((1u64 << 31) - 2) / q * q + 1;
        let mut seen = 0;
        loop {
            if is_prime(ell) {
                if seen == k {
                    break;
                }
                seen += 1;
            }
            ell -= q;
        }
        let coeffs: Vec<u64> = fd.min_poly().iter().map(|c| rational_residue(c, ell)).collect::<Option<_>>()?;
        let eval = |w: u64| coeffs.iter().rev().fold(0u64, |acc, c| (acc * w + c) % ell);
        let omega = (2..ell).map(|g| pow_mod(g, (ell - 1) / q, ell)).find(|&w| eval(w) == 0)?;
        let m = alg.degree();
        let omega_pows = (0..m as u64).map(|t| pow_mod(omega, t, ell)).collect();
        let alpha = (1_000_003 + 7_919 * k as u64) % ell;
        let beta = (2_000_029 + 104_729 * k as u64) % ell;
        Some(ModImage { ell, omega_pows, alpha, beta, m })
    }

    fn eval_poly(&self, p: &Poly<BaseField>) -> Option<u64> {
        let mut acc = 0u64;
        for (mono, c) in p.terms() {
            if mono.0[Var::Lambda.index()] != 0 || mono.0[Var::X.index()] != 0 {
                return None;
            }
            let c = rational_residue(c, self.ell)?;
            let t = c * pow_mod(self.alpha, mono.0[Var::A.index()] as u64, self.ell) % self.ell
                * pow_mod(self.beta, mono.0[Var::B.index()] as u64, self.ell)
                % self.ell;
            acc = (acc + t) % self.ell;
        }
        Some(acc)
    }

    fn eval_cycle(&self, c: &CyclePoly<BaseField>) -> Option<u64> {
        let mut acc = 0u64;
        for (coord, w) in c.coords.iter().zip(&self.omega_pows) {
            acc = (acc + self.eval_poly(coord)? * w) % self.ell;
        }
        Some(acc)
    }

    /// Image of `N / D`; `None` when `D` vanishes at the point.
    pub fn image(&self, e: &ClearedElem) -> Option<Vec<u64>> {
        let d = self.eval_cycle(e.denominator())?;
        let dinv = PrimeModulus::new(self.ell).ok()?.inv(&d)?;
        e.numerator().iter().map(|c| self.eval_cycle(c).map(|v| v * dinv % self.ell)).collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        dense_mul(self, self.m, x, y)
    }

    pub fn is_one(&self, x: &[u64]) -> bool {
        x[0] == 1 && x[1..].iter().all(|&c| c == 0)
    }
}

impl CoeffOps for ModImage {
    type C = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn neg(&self, x: &u64) -> u64 {
        (self.ell - x) % self.ell
    }
    fn is_zero(&self, c: &u64) -> bool {
        *c == 0
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        (x + y) % self.ell
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        x * y % self.ell
    }
    fn twist(&self, c: &u64, t: usize, ea: u32, eb: u32) -> u64 {
        let mut out = c * self.omega_pows[t] % self.ell;
        if ea == 1 {
            out = out * self.alpha % self.ell;
        }
        if eb == 1 {
            out = out * self.beta % self.ell;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolalg::{SymElem, SymbolAlgebra};

    #[test]
    fn image_is_multiplicative() {
        for q in [2, 3, 5] {
            let h = SymbolAlgebra::with_params(0, q).unwrap();
            let img = ModImage::new(&h, 0).unwrap();
            let u = SymElem::one(&h).add(&SymElem::i(&h).scale(&h.scalar_parse("(1 - a)^-1").unwrap())).unwrap();
            let v = SymElem::j(&h).add(&SymElem::term(&h, 1, 1, h.theta()).unwrap()).unwrap();
            let uv = u.mul(&v).unwrap();
            let (iu, iv, iuv) = (
                img.image(&ClearedElem::from_elem(&u)).unwrap(),
                img.image(&ClearedElem::from_elem(&v)).unwrap(),
                img.image(&ClearedElem::from_elem(&uv)).unwrap(),
            );
            assert_eq!(img.mul(&iu, &iv), iuv);
            let ui = img.image(&ClearedElem::inverse_of(&u).unwrap()).unwrap();
            assert!(img.is_one(&img.mul(&iu, &ui)));
        }
    }

    #[test]
    fn positive_characteristic_has_no_image() {
        let h = SymbolAlgebra::with_params(3, 2).unwrap();
        assert!(ModImage::new(&h, 0).is_none());
    }
}
