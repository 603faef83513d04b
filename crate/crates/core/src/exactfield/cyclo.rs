//! Cyclotomic extensions `P(θ)` and polynomials over them.
//!
//! An element of `P(θ)[vars]` is stored as its coordinate vector on the power
//! basis `1, θ, …, θ^{d-1}`, each coordinate a polynomial over `P`.

use std::sync::Arc;

use super::poly::{Mono, Poly, Var};
use super::prime::PrimeField;
use super::FieldError;

/// Upper bound on `p^d` for the brute-force factor search.
const SEARCH_LIMIT: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldDescriptor<F: PrimeField> {
    prime: F,
    q: u64,
    /// Monic, low degree first; `min_poly[d] = 1`.
    min_poly: Vec<F::Elem>,
}

pub type FieldRef<F> = Arc<FieldDescriptor<F>>;

impl<F: PrimeField> FieldDescriptor<F> {
    pub fn new(prime: F, q: u64) -> Result<FieldRef<F>, FieldError> {
        let min_poly = cyclo_min_poly(&prime, q)?;
        let fd = FieldDescriptor { prime, q, min_poly };
        fd.check_primitive()?;
        Ok(Arc::new(fd))
    }

    pub fn prime(&self) -> &F {
        &self.prime
    }

    pub fn characteristic(&self) -> u64 {
        self.prime.characteristic()
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[F::Elem] {
        &self.min_poly
    }

    /// Coordinates of `θ^e`, any integer `e`.
    pub fn theta_pow(&self, e: i64) -> Vec<F::Elem> {
        let f = &self.prime;
        let d = self.degree();
        let e = e.rem_euclid(self.q as i64) as usize;
        let mut v = vec![f.zero(); d];
        v[0] = f.one();
        for _ in 0..e {
            // multiply by θ
            let top = v[d - 1].clone();
            for k in (1..d).rev() {
                v[k] = f.sub(&v[k - 1], &f.mul(&top, &self.min_poly[k]));
            }
            v[0] = f.neg(&f.mul(&top, &self.min_poly[0]));
        }
        v
    }

    fn check_primitive(&self) -> Result<(), FieldError> {
        let f = &self.prime;
        let one = {
            let mut v = vec![f.zero(); self.degree()];
            v[0] = f.one();
            v
        };
        for j in 1..self.q {
            if self.theta_pow(j as i64) == one {
                return Err(FieldError::Internal(format!(
                    "θ^{} = 1 for a claimed primitive {}-th root",
                    j, self.q
                )));
            }
        }
        Ok(())
    }

    /// `θ^q = 1` and `θ^j ≠ 1` for `0 < j < q`, computed by repeated multiplication.
    pub fn is_primitive_root(&self) -> bool {
        let f = &self.prime;
        let d = self.degree();
        let mut one = vec![f.zero(); d];
        one[0] = f.one();
        let mut v = one.clone();
        for j in 1..=self.q {
            v = self.mul_const(&v, &self.theta_pow(1));
            if (v == one) != (j == self.q) {
                return false;
            }
        }
        true
    }

    /// Product of two constants of `P(θ)`.
    pub fn mul_const(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.prime;
        let d = self.degree();
        let mut prod = vec![f.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        for k in (d..prod.len()).rev() {
            let c = prod[k].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..d {
                prod[k - d + j] = f.sub(&prod[k - d + j], &f.mul(&c, &self.min_poly[j]));
            }
        }
        prod.truncate(d);
        prod
    }
}

/// Minimal polynomial of a primitive `q`-th root of unity over the prime field,
/// low degree first. In positive characteristic the factor of `Φ_q` is the least
/// monic irreducible one under lexicographic order on `(c_{d-1}, …, c_0)`.
pub fn cyclo_min_poly<F: PrimeField>(fld: &F, q: u64) -> Result<Vec<F::Elem>, FieldError> {
    if q == 0 {
        return Err(FieldError::ZeroOrder);
    }
    let p = fld.characteristic();
    if p > 0 && q % p == 0 {
        return Err(FieldError::NotCoprime { p, q });
    }
    let phi = cyclotomic(fld, q);
    if p == 0 {
        return Ok(phi);
    }
    let d = multiplicative_order(p, q);
    let total = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > SEARCH_LIMIT {
        return Err(FieldError::SearchTooLarge { p, q });
    }
    // candidate index n encodes (c_{d-1}, …, c_0) in base p, most significant first
    for n in 0..total {
        let mut cand = vec![fld.zero(); d + 1];
        cand[d] = fld.one();
        let mut rest = n;
        for k in 0..d {
            cand[k] = fld.from_i64((rest % p as u128) as i64);
            rest /= p as u128;
        }
        if upoly_rem(fld, &phi, &cand).iter().all(|c| fld.is_zero(c)) {
            return Ok(cand);
        }
    }
    Err(FieldError::Internal(format!("no factor of Φ_{} found mod {}", q, p)))
}

fn multiplicative_order(p: u64, q: u64) -> usize {
    if q == 1 {
        return 1;
    }
    let mut x = p % q;
    let mut k = 1;
    while x != 1 {
        x = x * p % q;
        k += 1;
    }
    k
}

/// `Φ_q` by dividing `λ^q − 1` by `Φ_e` for proper divisors `e`.
fn cyclotomic<F: PrimeField>(fld: &F, q: u64) -> Vec<F::Elem> {
    let mut num = vec![fld.zero(); q as usize + 1];
    num[0] = fld.neg(&fld.one());
    num[q as usize] = fld.one();
    for e in 1..q {
        if q % e == 0 {
            num = upoly_div_monic(fld, &num, &cyclotomic(fld, e));
        }
    }
    num
}

fn upoly_rem<F: PrimeField>(fld: &F, a: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    for k in (d..r.len()).rev() {
        let c = r[k].clone();
        if fld.is_zero(&c) {
            continue;
        }
        for j in 0..=d {
            r[k - d + j] = fld.sub(&r[k - d + j], &fld.mul(&c, &m[j]));
        }
    }
    r.truncate(d.min(r.len()));
    r
}

fn upoly_div_monic<F: PrimeField>(fld: &F, a: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    let d = m.len() - 1;
    let mut r = a.to_vec();
    let mut quot = vec![fld.zero(); a.len() - d];
    for k in (d..r.len()).rev() {
        let c = r[k].clone();
        quot[k - d] = c.clone();
        if fld.is_zero(&c) {
            continue;
        }
        for j in 0..=d {
            r[k - d + j] = fld.sub(&r[k - d + j], &fld.mul(&c, &m[j]));
        }
    }
    quot
}

/// A polynomial over `P(θ)` in θ-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclePoly<F: PrimeField> {
    pub coords: Vec<Poly<F>>,
}

impl<F: PrimeField> CyclePoly<F> {
    pub fn zero(fd: &FieldDescriptor<F>) -> Self {
        CyclePoly { coords: vec![Poly::zero(); fd.degree()] }
    }

    pub fn from_poly(fd: &FieldDescriptor<F>, p: Poly<F>) -> Self {
        let mut c = Self::zero(fd);
        c.coords[0] = p;
        c
    }

    pub fn from_const(fd: &FieldDescriptor<F>, c: &[F::Elem]) -> Self {
        let f = fd.prime();
        CyclePoly {
            coords: c.iter().map(|x| Poly::constant(f, x.clone())).collect(),
        }
    }

    pub fn theta_pow(fd: &FieldDescriptor<F>, e: i64) -> Self {
        Self::from_const(fd, &fd.theta_pow(e))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// `Some(p)` when every θ-coordinate but the first vanishes.
    pub fn as_base(&self) -> Option<&Poly<F>> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self, fd: &FieldDescriptor<F>) -> Self {
        let f = fd.prime();
        CyclePoly {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.add(b, f)).collect(),
        }
    }

    pub fn sub(&self, o: &Self, fd: &FieldDescriptor<F>) -> Self {
        let f = fd.prime();
        CyclePoly {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.sub(b, f)).collect(),
        }
    }

    pub fn neg(&self, fd: &FieldDescriptor<F>) -> Self {
        let f = fd.prime();
        CyclePoly { coords: self.coords.iter().map(|a| a.neg(f)).collect() }
    }

    pub fn scale(&self, p: &Poly<F>, fd: &FieldDescriptor<F>) -> Self {
        let f = fd.prime();
        CyclePoly { coords: self.coords.iter().map(|a| a.mul(p, f)).collect() }
    }

    pub fn scale_elem(&self, c: &F::Elem, fd: &FieldDescriptor<F>) -> Self {
        let f = fd.prime();
        CyclePoly { coords: self.coords.iter().map(|a| a.scale(c, f)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, fd: &FieldDescriptor<F>) -> Self {
        let f = fd.prime();
        let one = f.one();
        CyclePoly { coords: self.coords.iter().map(|a| a.mul_term(m, &one, f)).collect() }
    }

    pub fn mul(&self, o: &Self, fd: &FieldDescriptor<F>) -> Self {
        let f = fd.prime();
        let d = fd.degree();
        if d == 1 {
            return CyclePoly { coords: vec![self.coords[0].mul(&o.coords[0], f)] };
        }
        let mut prod = vec![Poly::zero(); 2 * d - 1];
        for (i, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add(&x.mul(y, f), f);
            }
        }
        let mp = fd.min_poly();
        for k in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                if !f.is_zero(&mp[j]) {
                    prod[k - d + j] = prod[k - d + j].sub(&c.scale(&mp[j], f), f);
                }
            }
        }
        prod.truncate(d);
        CyclePoly { coords: prod }
    }

    /// Monic gcd of all coordinates with `g`.
    pub fn content_with(&self, g: &Poly<F>, fd: &FieldDescriptor<F>) -> Poly<F> {
        let f = fd.prime();
        let mut acc = g.monic(f);
        for c in &self.coords {
            if acc.is_one(f) {
                break;
            }
            if !c.is_zero() {
                acc = acc.gcd(c, f);
            }
        }
        acc
    }

    pub fn exact_div(&self, p: &Poly<F>, fd: &FieldDescriptor<F>) -> Option<Self> {
        let f = fd.prime();
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            coords.push(c.exact_div(p, f)?);
        }
        Some(CyclePoly { coords })
    }

    /// Image under `θ ↦ θ^e`.
    pub fn galois(&self, e: i64, fd: &FieldDescriptor<F>) -> Self {
        let mut out = Self::zero(fd);
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = Self::theta_pow(fd, e * k as i64).scale(c, fd);
            out = out.add(&t, fd);
        }
        out
    }

    pub fn uses(&self, v: Var) -> bool {
        self.coords.iter().any(|c| c.uses(v))
    }

    /// Matrix of multiplication by `self` on the θ power basis, column `k` = `self·θ^k`.
    fn mult_matrix(&self, fd: &FieldDescriptor<F>) -> Vec<Vec<Poly<F>>> {
        let d = fd.degree();
        let mut m = vec![vec![Poly::zero(); d]; d];
        let mut col = self.clone();
        let theta = Self::theta_pow(fd, 1);
        for k in 0..d {
            for r in 0..d {
                m[r][k] = col.coords[r].clone();
            }
            if k + 1 < d {
                col = col.mul(&theta, fd);
            }
        }
        m
    }

    /// `(N(self), N(self)/self)` with `N` the norm from `P(θ)[vars]` to `P[vars]`.
    pub fn norm_and_cofactor(&self, fd: &FieldDescriptor<F>) -> (Poly<F>, Self) {
        let f = fd.prime();
        let d = fd.degree();
        if d == 1 {
            return (self.coords[0].clone(), Self::from_poly(fd, Poly::one(f)));
        }
        let m = self.mult_matrix(fd);
        let det = determinant(&m, f);
        // adj(M)·e0: entry r is the cofactor C_{0,r}
        let mut coords = Vec::with_capacity(d);
        for r in 0..d {
            let minor = minor_matrix(&m, 0, r);
            let c = determinant(&minor, f);
            coords.push(if r % 2 == 0 { c } else { c.neg(f) });
        }
        (det, CyclePoly { coords })
    }

    pub fn render(&self, fd: &FieldDescriptor<F>) -> String {
        let f = fd.prime();
        let parts: Vec<(usize, &Poly<F>)> =
            self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if parts.is_empty() {
            return "0".into();
        }
        if parts.len() == 1 && parts[0].0 == 0 {
            return parts[0].1.render(f);
        }
        parts
            .iter()
            .map(|(k, c)| match k {
                0 => format!("({})", c.render(f)),
                1 => format!("({})*theta", c.render(f)),
                _ => format!("({})*theta^{}", c.render(f), k),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn minor_matrix<T: Clone>(m: &[Vec<T>], skip_r: usize, skip_c: usize) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != skip_r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(c, _)| *c != skip_c)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Laplace expansion; the matrices here are at most `φ(q) × φ(q)`.
fn determinant<F: PrimeField>(m: &[Vec<Poly<F>>], f: &F) -> Poly<F> {
    let n = m.len();
    match n {
        0 => Poly::one(f),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1], f).sub(&m[0][1].mul(&m[1][0], f), f),
        _ => {
            let mut acc = Poly::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let t = m[0][c].mul(&determinant(&minor_matrix(m, 0, c), f), f);
                acc = if c % 2 == 0 { acc.add(&t, f) } else { acc.sub(&t, f) };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::prime::{PrimeModulus, Rationals};

    fn render_min<F: PrimeField>(f: &F, q: u64) -> Vec<String> {
        cyclo_min_poly(f, q).unwrap().iter().map(|c| f.render(c)).collect()
    }

    #[test]
    fn rational_cyclotomics() {
        assert_eq!(render_min(&Rationals, 4), ["1", "0", "1"]);
        assert_eq!(render_min(&Rationals, 2), ["1", "1"]);
        assert_eq!(render_min(&Rationals, 3), ["1", "1", "1"]);
        assert_eq!(render_min(&Rationals, 6), ["1", "-1", "1"]);
        assert_eq!(render_min(&Rationals, 5), ["1", "1", "1", "1", "1"]);
    }

    #[test]
    fn quadratic_factor_mod_three() {
        let f = PrimeModulus::new(3).unwrap();
        assert_eq!(render_min(&f, 4), ["1", "0", "1"]);
    }

    #[test]
    fn splits_mod_five() {
        // 5 ≡ 1 mod 4: λ^2+1 = (λ+2)(λ+3) over F_5, and λ+2 is the lesser factor
        let f = PrimeModulus::new(5).unwrap();
        assert_eq!(render_min(&f, 4), ["2", "1"]);
    }

    #[test]
    fn rejects_order_divisible_by_p() {
        let f = PrimeModulus::new(3).unwrap();
        let e = cyclo_min_poly(&f, 6).unwrap_err();
        assert_eq!(e.to_string(), "root of unity order not coprime to characteristic");
    }

    #[test]
    fn descriptors_have_primitive_theta() {
        for q in 1..=8 {
            assert!(FieldDescriptor::new(Rationals, q).unwrap().is_primitive_root());
        }
        for (p, q) in [(3, 2), (3, 4), (5, 3), (7, 4), (2, 3), (2, 5)] {
            let fd = FieldDescriptor::new(PrimeModulus::new(p).unwrap(), q).unwrap();
            assert!(fd.is_primitive_root(), "p={} q={}", p, q);
        }
    }

    #[test]
    fn norm_cofactor_identity() {
        let fd = FieldDescriptor::new(Rationals, 5).unwrap();
        let f = fd.prime();
        let a = Poly::var(f, Var::A);
        // N = a + θ + 2θ^3
        let mut n = CyclePoly::from_poly(&fd, a);
        n = n.add(&CyclePoly::theta_pow(&fd, 1), &fd);
        n = n.add(&CyclePoly::theta_pow(&fd, 3).scale_elem(&f.from_i64(2), &fd), &fd);
        let (norm, cof) = n.norm_and_cofactor(&fd);
        assert_eq!(n.mul(&cof, &fd), CyclePoly::from_poly(&fd, norm));
    }
}
