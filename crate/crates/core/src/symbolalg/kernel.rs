//! Dense multiplication on the basis `i^r j^s`, generic over the coefficient ring.
//!
//! Cross terms are grouped by target cell and by the central factor
//! `θ^t a^{ea} b^{eb}` they pick up, so each factor is applied once per group.

use crate::exactfield::{BaseField, CyclePoly, Field, Mono, Rf, Var};

use super::AlgRef;

pub trait CoeffOps {
    type C: Clone;
    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn neg(&self, x: &Self::C) -> Self::C;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn add(&self, x: &Self::C, y: &Self::C) -> Self::C;
    fn mul(&self, x: &Self::C, y: &Self::C) -> Self::C;
    /// `c · θ^t · a^ea · b^eb`.
    fn twist(&self, c: &Self::C, t: usize, ea: u32, eb: u32) -> Self::C;
}

pub fn dense_mul<R: CoeffOps>(ring: &R, m: usize, u: &[R::C], v: &[R::C]) -> Vec<R::C> {
    let slots = m * m * m * 4;
    let mut buckets: Vec<Option<R::C>> = vec![None; slots];
    for r1 in 0..m {
        for s1 in 0..m {
            let x = &u[r1 * m + s1];
            if ring.is_zero(x) {
                continue;
            }
            for r2 in 0..m {
                for s2 in 0..m {
                    let y = &v[r2 * m + s2];
                    if ring.is_zero(y) {
                        continue;
                    }
                    // i^{r1} j^{s1} i^{r2} j^{s2} = θ^{s1 r2} i^{r1+r2} j^{s1+s2}
                    let t = (s1 * r2) % m;
                    let (r, ea) = if r1 + r2 >= m { (r1 + r2 - m, 1) } else { (r1 + r2, 0) };
                    let (s, eb) = if s1 + s2 >= m { (s1 + s2 - m, 1) } else { (s1 + s2, 0) };
                    let key = ((r * m + s) * m + t) * 4 + ea * 2 + eb;
                    let p = ring.mul(x, y);
                    buckets[key] = Some(match buckets[key].take() {
                        Some(acc) => ring.add(&acc, &p),
                        None => p,
                    });
                }
            }
        }
    }
    let mut out = vec![ring.zero(); m * m];
    for (key, b) in buckets.into_iter().enumerate() {
        let Some(c) = b else { continue };
        if ring.is_zero(&c) {
            continue;
        }
        let eb = (key & 1) as u32;
        let ea = ((key >> 1) & 1) as u32;
        let t = (key >> 2) % m;
        let cell = (key >> 2) / m;
        let tw = if t == 0 && ea == 0 && eb == 0 { c } else { ring.twist(&c, t, ea, eb) };
        out[cell] = ring.add(&out[cell], &tw);
    }
    out
}

/// Rational-function coefficients.
pub struct RfOps {
    field: Field,
    thetas: Vec<Rf>,
    a: Rf,
    b: Rf,
}

impl RfOps {
    pub fn new(alg: &AlgRef) -> Self {
        let field = alg.field().clone();
        let thetas = (0..alg.degree()).map(|t| Rf::theta_pow(&field, t as i64)).collect();
        RfOps { a: Rf::var(&field, Var::A), b: Rf::var(&field, Var::B), thetas, field }
    }
}

impl CoeffOps for RfOps {
    type C = Rf;
    fn zero(&self) -> Rf {
        Rf::zero(&self.field)
    }
    fn one(&self) -> Rf {
        Rf::one(&self.field)
    }
    fn neg(&self, x: &Rf) -> Rf {
        x.neg()
    }
    fn is_zero(&self, c: &Rf) -> bool {
        c.is_zero()
    }
    fn add(&self, x: &Rf, y: &Rf) -> Rf {
        x.add(y)
    }
    fn mul(&self, x: &Rf, y: &Rf) -> Rf {
        x.mul(y)
    }
    fn twist(&self, c: &Rf, t: usize, ea: u32, eb: u32) -> Rf {
        let mut out = c.clone();
        if t != 0 {
            out = out.mul(&self.thetas[t]);
        }
        if ea == 1 {
            out = out.mul(&self.a);
        }
        if eb == 1 {
            out = out.mul(&self.b);
        }
        out
    }
}

/// Polynomial coefficients over `P(θ)` with no denominators; used by the
/// relation search on denominator-cleared elements.
pub struct CyclePolyOps {
    field: Field,
    thetas: Vec<CyclePoly<BaseField>>,
}

impl CyclePolyOps {
    pub fn new(alg: &AlgRef) -> Self {
        let field = alg.field().clone();
        let thetas = (0..alg.degree()).map(|t| CyclePoly::theta_pow(&field, t as i64)).collect();
        CyclePolyOps { field, thetas }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
}

impl CoeffOps for CyclePolyOps {
    type C = CyclePoly<BaseField>;
    fn zero(&self) -> Self::C {
        CyclePoly::zero(&self.field)
    }
    fn one(&self) -> Self::C {
        CyclePoly::theta_pow(&self.field, 0)
    }
    fn neg(&self, x: &Self::C) -> Self::C {
        x.neg(&self.field)
    }
    fn is_zero(&self, c: &Self::C) -> bool {
        c.is_zero()
    }
    fn add(&self, x: &Self::C, y: &Self::C) -> Self::C {
        x.add(y, &self.field)
    }
    fn mul(&self, x: &Self::C, y: &Self::C) -> Self::C {
        x.mul(y, &self.field)
    }
    fn twist(&self, c: &Self::C, t: usize, ea: u32, eb: u32) -> Self::C {
        let mut out = if t != 0 { c.mul(&self.thetas[t], &self.field) } else { c.clone() };
        if ea + eb > 0 {
            let mut e = [0u32; 4];
            e[Var::A.index()] = ea;
            e[Var::B.index()] = eb;
            out = out.mul_term(&Mono(e), &self.field);
        }
        out
    }
}
