//! Matrix representations over the maximal subfield `F(i)`.
//!
//! `F(i) = F[t]/(t^m − a)` is modelled as rational functions in `X` and `b`
//! with `a = X^m` and `i = X`. Coefficients of symbol-algebra elements must
//! therefore not use `X` themselves.

use crate::exactfield::{BaseField, CyclePoly, Mono, Poly, PrimeField, Rf, Var};

use super::kernel::{CoeffOps, CyclePolyOps};

use super::cleared::ClearedElem;
use super::{AlgRef, SymElem, SymError};

/// Square matrix over `F(i)`.
pub type FiMatrix = Vec<Vec<Rf>>;

fn relabel_poly(p: &Poly<BaseField>, m: u32, f: &BaseField) -> Poly<BaseField> {
    Poly::from_terms(
        f,
        p.terms().map(|(mono, c)| {
            let e = mono.0;
            (Mono([0, e[1], e[2], e[3] + m * e[0]]), c.clone())
        }),
    )
}

/// Image of a scalar of `F` in `F(i)`: `a ↦ X^m`.
pub fn to_fi(c: &Rf, alg: &AlgRef) -> Rf {
    if !c.uses(Var::A) {
        return c.clone();
    }
    let fd = alg.field();
    let f = fd.prime();
    let m = alg.degree() as u32;
    let num = CyclePoly { coords: c.numerator().coords.iter().map(|p| relabel_poly(p, m, f)).collect() };
    let den = relabel_poly(c.denominator(), m, f);
    Rf::new(fd, num, den).expect("nonzero denominator")
}

/// `X ↦ θ^k X` applied to a polynomial over `P`, giving one over `P(θ)`.
fn twist_x(p: &Poly<BaseField>, k: i64, alg: &AlgRef) -> CyclePoly<BaseField> {
    let fd = alg.field();
    let mut out = CyclePoly::zero(fd);
    for (mono, c) in p.terms() {
        let e = mono.exp(Var::X) as i64;
        let t = CyclePoly::theta_pow(fd, k * e)
            .scale(&Poly::monomial(fd.prime(), *mono, c.clone()), fd);
        out = out.add(&t, fd);
    }
    out
}

/// Coordinates on `1, i, …, i^{m-1}` of an element of `F(i)`.
pub fn from_fi(w: &Rf, alg: &AlgRef) -> Vec<Rf> {
    let fd = alg.field();
    let f = fd.prime();
    let m = alg.degree();
    let mut num = w.numerator().clone();
    let mut den = CyclePoly::from_poly(fd, w.denominator().clone());
    if w.denominator().uses(Var::X) {
        // multiply through by the conjugates D(θ^k X); the norm is a polynomial in X^m
        for k in 1..m as i64 {
            let conj = twist_x(w.denominator(), k, alg);
            num = num.mul(&conj, fd);
            den = den.mul(&conj, fd);
        }
    }
    let fold = |p: &Poly<BaseField>, r: usize| -> Poly<BaseField> {
        Poly::from_terms(
            f,
            p.terms().filter(|(mono, _)| mono.exp(Var::X) as usize % m == r).map(|(mono, c)| {
                let e = mono.0;
                let x = e[3] as usize;
                (Mono([e[0] + (x / m) as u32, e[1], e[2], 0]), c.clone())
            }),
        )
    };
    let den_coords: Vec<Poly<BaseField>> = den.coords.iter().map(|p| fold(p, 0)).collect();
    debug_assert!(den.coords.iter().zip(&den_coords).all(|(p, q)| p.num_terms() == q.num_terms()));
    let den_inv = Rf::from_cycle_poly(fd, CyclePoly { coords: den_coords })
        .inv()
        .expect("norm of a nonzero denominator");
    (0..m)
        .map(|r| {
            let nr = CyclePoly { coords: num.coords.iter().map(|p| fold(p, r)).collect() };
            Rf::from_cycle_poly(fd, nr).mul(&den_inv)
        })
        .collect()
}

/// `U_s = Σ_r c_{rs} i^r ∈ F(i)` twisted by `σ^k: i ↦ θ^k i`.
fn column_entry(u: &SymElem, s: usize, k: usize) -> Rf {
    let alg = u.algebra();
    let fd = alg.field();
    let m = alg.degree();
    let mut acc = Rf::zero(fd);
    for r in 0..m {
        let c = u.coeff(r, s);
        if c.is_zero() {
            continue;
        }
        let mono = Rf::from_poly(fd, Poly::monomial(fd.prime(), Mono::var(Var::X, r as u32), fd.prime().one()));
        let t = to_fi(c, alg).mul(&mono).mul(&Rf::theta_pow(fd, (r * k) as i64));
        acc = acc.add(&t);
    }
    acc
}

/// Right regular representation on row vectors over the left `F(i)`-basis
/// `1, j, …, j^{m-1}`: row `s` holds the coordinates of `j^s·u`.
///
/// With this orientation `rep(uv) = rep(u)·rep(v)`; `rep(j)` has ones on the
/// superdiagonal and `b` in the bottom-left corner.
pub fn regular_rep(u: &SymElem) -> FiMatrix {
    let alg = u.algebra();
    let fd = alg.field();
    let m = alg.degree();
    let b = Rf::var(fd, Var::B);
    let cols: Vec<Vec<Rf>> = (0..m).map(|k| (0..m).map(|s| column_entry(u, s, k)).collect()).collect();
    let mut rows = vec![vec![Rf::zero(fd); m]; m];
    for s in 0..m {
        for s2 in 0..m {
            let e = &cols[s][s2];
            if e.is_zero() {
                continue;
            }
            let t = s + s2;
            rows[s][t % m] = if t >= m { e.mul(&b) } else { e.clone() };
        }
    }
    rows
}

pub fn fi_matrix_mul(x: &FiMatrix, y: &FiMatrix) -> FiMatrix {
    let n = x.len();
    let k = y.len();
    let cols = y.first().map(|r| r.len()).unwrap_or(0);
    let zero = x[0][0].sub(&x[0][0]);
    let mut out = vec![vec![zero.clone(); cols]; n];
    for r in 0..n {
        for c in 0..cols {
            let mut acc = zero.clone();
            for t in 0..k {
                if !x[r][t].is_zero() && !y[t][c].is_zero() {
                    acc = acc.add(&x[r][t].mul(&y[t][c]));
                }
            }
            out[r][c] = acc;
        }
    }
    out
}

fn relabel_cycle(p: &CyclePoly<BaseField>, alg: &AlgRef) -> CyclePoly<BaseField> {
    let f = alg.field().prime();
    let m = alg.degree() as u32;
    CyclePoly { coords: p.coords.iter().map(|c| relabel_poly(c, m, f)).collect() }
}

/// `X^{mk} ↦ a^k`; every `X` exponent must be a multiple of `m`.
fn fold_cycle(p: &CyclePoly<BaseField>, alg: &AlgRef) -> Option<CyclePoly<BaseField>> {
    let f = alg.field().prime();
    let m = alg.degree() as u32;
    let mut coords = Vec::with_capacity(p.coords.len());
    for c in &p.coords {
        let mut terms = Vec::with_capacity(c.num_terms());
        for (mono, x) in c.terms() {
            let e = mono.0;
            if e[3] % m != 0 {
                return None;
            }
            terms.push((Mono([e[0] + e[3] / m, e[1], e[2], 0]), x.clone()));
        }
        coords.push(Poly::from_terms(f, terms));
    }
    Some(CyclePoly { coords })
}

/// Regular representation of an element with polynomial coefficients; entries
/// are polynomials in `X, b` over `P(θ)`.
fn regular_rep_poly(u: &[CyclePoly<BaseField>], alg: &AlgRef) -> Vec<Vec<CyclePoly<BaseField>>> {
    let fd = alg.field();
    let m = alg.degree();
    let lifted: Vec<CyclePoly<BaseField>> = u.iter().map(|c| relabel_cycle(c, alg)).collect();
    let entry = |s2: usize, k: usize| {
        let mut acc = CyclePoly::zero(fd);
        for r in 0..m {
            let c = &lifted[r * m + s2];
            if c.is_zero() {
                continue;
            }
            let t = c.mul_term(&Mono::var(Var::X, r as u32), fd);
            let t = if (r * k) % m == 0 { t } else { t.mul(&CyclePoly::theta_pow(fd, (r * k) as i64), fd) };
            acc = acc.add(&t, fd);
        }
        acc
    };
    let bmono = Mono::var(Var::B, 1);
    let mut rows = vec![vec![CyclePoly::zero(fd); m]; m];
    for s in 0..m {
        for s2 in 0..m {
            let e = entry(s2, s);
            if e.is_zero() {
                continue;
            }
            let t = s + s2;
            rows[s][t % m] = if t >= m { e.mul_term(&bmono, fd) } else { e };
        }
    }
    rows
}

/// Coefficients `[1, c_1, …, c_n]` of `det(tI − M)`, division free.
fn berkowitz<R: CoeffOps>(ring: &R, mat: &[Vec<R::C>]) -> Vec<R::C> {
    let n = mat.len();
    if n == 0 {
        return vec![ring.one()];
    }
    let neg = |x: &R::C| ring.neg(x);
    if n == 1 {
        return vec![ring.one(), neg(&mat[0][0])];
    }
    let a = &mat[0][0];
    let row: Vec<R::C> = mat[0][1..].to_vec();
    let sub: Vec<Vec<R::C>> = mat[1..].iter().map(|r| r[1..].to_vec()).collect();
    // diags: 1, -a, -R C, -R A C, …, -R A^{n-2} C
    let mut diags = vec![ring.one(), neg(a)];
    let mut v: Vec<R::C> = mat[1..].iter().map(|r| r[0].clone()).collect();
    for k in 0..n - 1 {
        let mut d = ring.zero();
        for (x, y) in row.iter().zip(&v) {
            if !ring.is_zero(x) && !ring.is_zero(y) {
                d = ring.add(&d, &ring.mul(x, y));
            }
        }
        diags.push(neg(&d));
        if k + 1 < n - 1 {
            v = sub
                .iter()
                .map(|r| {
                    let mut acc = ring.zero();
                    for (x, y) in r.iter().zip(&v) {
                        if !ring.is_zero(x) && !ring.is_zero(y) {
                            acc = ring.add(&acc, &ring.mul(x, y));
                        }
                    }
                    acc
                })
                .collect();
        }
    }
    let inner = berkowitz(ring, &sub);
    // (n+1) × n lower-triangular Toeplitz matrix times inner
    (0..=n)
        .map(|i| {
            let mut acc = ring.zero();
            for (j, c) in inner.iter().enumerate() {
                if j > i || ring.is_zero(c) {
                    continue;
                }
                let t = &diags[i - j];
                if !ring.is_zero(t) {
                    acc = ring.add(&acc, &ring.mul(t, c));
                }
            }
            acc
        })
        .collect()
}

/// Reduced characteristic polynomial `[1, c_1, …, c_m]` of an element with
/// polynomial coefficients; the `c_k` lie in `P(θ)[a, b]`.
pub(crate) fn reduced_charpoly(u: &[CyclePoly<BaseField>], alg: &AlgRef) -> Vec<CyclePoly<BaseField>> {
    let ring = CyclePolyOps::new(alg);
    let rep = regular_rep_poly(u, alg);
    berkowitz(&ring, &rep)
        .iter()
        .map(|c| fold_cycle(c, alg).expect("characteristic coefficients lie in the center"))
        .collect()
}

/// Clears denominators: `u = U / δ` with `δ ∈ P[a, b]` monic.
pub(crate) fn clear_denominators(u: &SymElem) -> (Vec<CyclePoly<BaseField>>, Poly<BaseField>) {
    let fd = u.algebra().field();
    let f = fd.prime();
    let mut delta = Poly::one(f);
    for c in u.coeffs() {
        let d = c.denominator();
        if d.is_one(f) {
            continue;
        }
        let g = delta.gcd(d, f);
        delta = delta.mul(&d.exact_div(&g, f).expect("gcd divides"), f);
    }
    let coeffs = u
        .coeffs()
        .iter()
        .map(|c| {
            let cof = delta.exact_div(c.denominator(), f).expect("denominator divides lcm");
            c.numerator().scale(&cof, fd)
        })
        .collect();
    (coeffs, delta)
}

/// Inverse by Cayley–Hamilton on the reduced characteristic polynomial.
pub(crate) fn sym_inv(u: &SymElem) -> Result<SymElem, SymError> {
    let alg = u.algebra();
    if u.is_zero() {
        return Err(SymError::NotInvertible);
    }
    if let Some(c) = u.as_scalar() {
        return Ok(SymElem::scalar(alg, c.inv()?));
    }
    ClearedElem::inverse_of(u)?.to_elem(alg)
}

/// Splitting of a quaternion algebra over `F(i)`:
/// `i ↦ diag(i, −i)`, `j ↦ [[0, b], [1, 0]]`.
pub fn quat_split_rep(u: &SymElem) -> Result<FiMatrix, SymError> {
    let alg = u.algebra();
    if alg.degree() != 2 {
        return Err(SymError::NotQuaternion(alg.degree()));
    }
    let fd = alg.field();
    let x = Rf::var(fd, Var::X);
    let b = Rf::var(fd, Var::B);
    let c = |r, s| to_fi(u.coeff(r, s), alg);
    let (c00, c10, c01, c11) = (c(0, 0), c(1, 0), c(0, 1), c(1, 1));
    Ok(vec![
        vec![c00.add(&c10.mul(&x)), c01.add(&c11.mul(&x)).mul(&b)],
        vec![c01.sub(&c11.mul(&x)), c00.sub(&c10.mul(&x))],
    ])
}

#[cfg(test)]
mod tests {
    use super::super::SymbolAlgebra;
    use super::*;

    #[test]
    fn rep_of_generators() {
        let h = SymbolAlgebra::with_params(0, 3).unwrap();
        let fd = h.field();
        let x = Rf::var(fd, Var::X);
        let b = Rf::var(fd, Var::B);
        let z = Rf::zero(fd);
        let o = Rf::one(fd);
        let ri = regular_rep(&SymElem::i(&h));
        for s in 0..3 {
            for t in 0..3 {
                let want = if s == t { x.mul(&Rf::theta_pow(fd, s as i64)) } else { z.clone() };
                assert_eq!(ri[s][t], want);
            }
        }
        let rj = regular_rep(&SymElem::j(&h));
        let want = vec![
            vec![z.clone(), o.clone(), z.clone()],
            vec![z.clone(), z.clone(), o.clone()],
            vec![b.clone(), z.clone(), z.clone()],
        ];
        assert_eq!(rj, want);
        let id = regular_rep(&SymElem::one(&h));
        for s in 0..3 {
            for t in 0..3 {
                assert_eq!(id[s][t].is_one(), s == t);
            }
        }
    }

    #[test]
    fn rep_is_multiplicative_on_sample() {
        let h = SymbolAlgebra::with_params(0, 3).unwrap();
        let u = SymElem::i(&h).add(&SymElem::j(&h).scale(&h.a())).unwrap();
        let v = SymElem::one(&h).add(&SymElem::term(&h, 2, 1, h.theta()).unwrap()).unwrap();
        let lhs = regular_rep(&u.mul(&v).unwrap());
        let rhs = fi_matrix_mul(&regular_rep(&u), &regular_rep(&v));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fi_roundtrip() {
        let h = SymbolAlgebra::with_params(0, 3).unwrap();
        let fd = h.field();
        let x = Rf::var(fd, Var::X);
        let w = Rf::one(fd).add(&x.mul(&h.b())).div(&x.sub(&Rf::theta(fd))).unwrap();
        let cs = from_fi(&w, &h);
        let mut back = Rf::zero(fd);
        for (r, c) in cs.iter().enumerate() {
            assert!(!c.uses(Var::X));
            back = back.add(&to_fi(c, &h).mul(&x.pow(r as i64).unwrap()));
        }
        assert_eq!(back, w);
    }

    #[test]
    fn quaternion_split() {
        let h = SymbolAlgebra::with_params(0, 2).unwrap();
        let fd = h.field();
        let k = SymElem::i(&h).mul(&SymElem::j(&h)).unwrap();
        let k2 = quat_split_rep(&k).unwrap();
        let sq = fi_matrix_mul(&k2, &k2);
        let mab = to_fi(&h.a().mul(&h.b()).neg(), &h);
        assert_eq!(sq, vec![vec![mab.clone(), Rf::zero(fd)], vec![Rf::zero(fd), mab]]);
        let one_i = SymElem::one(&h).add(&SymElem::i(&h)).unwrap();
        let m = quat_split_rep(&one_i).unwrap();
        let x = Rf::var(fd, Var::X);
        assert_eq!(m[0][0], Rf::one(fd).add(&x));
        assert_eq!(m[1][1], Rf::one(fd).sub(&x));
        assert!(m[0][1].is_zero() && m[1][0].is_zero());
        let h3 = SymbolAlgebra::with_params(0, 3).unwrap();
        assert!(quat_split_rep(&SymElem::one(&h3)).is_err());
    }
}
