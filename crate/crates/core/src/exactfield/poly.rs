//! Sparse multivariate polynomials over a prime field.
//!
//! The variable universe is fixed: `a < b < λ < X`. Monomials are ordered
//! graded-lexicographically, ties broken from the largest variable down, so
//! the printed form of a polynomial never depends on construction history.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::prime::PrimeField;

pub const NVARS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A = 0,
    B = 1,
    Lambda = 2,
    X = 3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::A, Var::B, Var::Lambda, Var::X];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
            Var::Lambda => "lambda",
            Var::X => "X",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "a" => Some(Var::A),
            "b" => Some(Var::B),
            "lambda" | "λ" => Some(Var::Lambda),
            "X" => Some(Var::X),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u32; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var, e: u32) -> Mono {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Mono(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = self.0;
        for (x, y) in m.iter_mut().zip(other.0.iter()) {
            *x += *y;
        }
        Mono(m)
    }

    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut m = self.0;
        for (x, y) in m.iter_mut().zip(other.0.iter()) {
            if *x < *y {
                return None;
            }
            *x -= *y;
        }
        Some(Mono(m))
    }

    fn with_exp(&self, v: Var, e: u32) -> Mono {
        let mut m = self.0;
        m[v.index()] = e;
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for v in Var::ALL {
            match self.exp(v) {
                0 => {}
                1 => parts.push(v.name().to_string()),
                e => parts.push(format!("{}^{}", v.name(), e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F: PrimeField> {
    terms: BTreeMap<Mono, F::Elem>,
}

impl<F: PrimeField> Default for Poly<F> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<F: PrimeField> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(fld: &F, c: F::Elem) -> Self {
        Self::monomial(fld, Mono::ONE, c)
    }

    pub fn one(fld: &F) -> Self {
        Self::constant(fld, fld.one())
    }

    pub fn from_i64(fld: &F, c: i64) -> Self {
        Self::constant(fld, fld.from_i64(c))
    }

    pub fn var(fld: &F, v: Var) -> Self {
        Self::monomial(fld, Mono::var(v, 1), fld.one())
    }

    pub fn monomial(fld: &F, m: Mono, c: F::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !fld.is_zero(&c) {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(fld: &F, it: impl IntoIterator<Item = (Mono, F::Elem)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(fld, m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self, fld: &F) -> Option<F::Elem> {
        if self.is_zero() {
            return Some(fld.zero());
        }
        if self.is_constant() {
            self.terms.get(&Mono::ONE).cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self, fld: &F) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Mono::ONE).map(|c| fld.is_one(c)).unwrap_or(false)
    }

    pub fn coeff(&self, m: &Mono) -> Option<&F::Elem> {
        self.terms.get(m)
    }

    /// Largest term under the graded order.
    pub fn leading(&self) -> Option<(&Mono, &F::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    pub fn highest_var(&self) -> Option<Var> {
        Var::ALL.iter().rev().copied().find(|&v| self.uses(v))
    }

    fn add_term(&mut self, fld: &F, m: Mono, c: &F::Elem) {
        if fld.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = fld.add(old, c);
                if fld.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self, fld: &F) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(fld, *m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self, fld: &F) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(fld, *m, &fld.neg(c));
        }
        out
    }

    pub fn neg(&self, fld: &F) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, fld.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem, fld: &F) -> Self {
        if fld.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, fld.mul(x, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &F::Elem, fld: &F) -> Self {
        if fld.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), fld.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self, fld: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() < other.terms.len() {
            return other.mul(self, fld);
        }
        let mut out = Poly::zero();
        for (m2, c2) in &other.terms {
            for (m1, c1) in &self.terms {
                out.add_term(fld, m1.mul(m2), &fld.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32, fld: &F) -> Self {
        let mut acc = Poly::one(fld);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, fld);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, fld);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self, fld: &F) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (dm, dc) = d.leading().map(|(m, c)| (*m, c.clone()))?;
        let dci = fld.inv(&dc)?;
        if d.terms.len() == 1 {
            // monomial divisor: termwise
            let mut out = BTreeMap::new();
            for (m, c) in &self.terms {
                out.insert(m.div(&dm)?, fld.mul(c, &dci));
            }
            return Some(Poly { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            let qm = rm.div(&dm)?;
            let qc = fld.mul(&rc, &dci);
            rem = rem.sub(&d.mul_term(&qm, &qc, fld), fld);
            quot.add_term(fld, qm, &qc);
        }
        Some(quot)
    }

    /// `self` scaled so that its leading coefficient is one.
    pub fn monic(&self, fld: &F) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => {
                let ci = fld.inv(c).expect("nonzero leading coefficient");
                self.scale(&ci, fld)
            }
        }
    }

    /// Coefficients in `v`, indexed by degree.
    pub fn to_univariate(&self, v: Var) -> Vec<Poly<F>> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            out[e].terms.insert(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[Poly<F>], v: Var) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                terms.insert(m.with_exp(v, e as u32), x.clone());
            }
        }
        Poly { terms }
    }

    /// Replace `v` by the polynomial `value`.
    pub fn compose(&self, v: Var, value: &Self, fld: &F) -> Self {
        if !self.uses(v) {
            return self.clone();
        }
        let coeffs = self.to_univariate(v);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(value, fld).add(c, fld);
        }
        acc
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self, fld: &F) -> Self {
        gcd(self, other, fld)
    }

    pub fn render(&self, fld: &F) -> String {
        render_terms(
            fld,
            self.terms.iter().rev().map(|(m, c)| (m.render(), c.clone())),
        )
    }
}

/// Joins `(monomial, coefficient)` pairs into `c1*m1 + c2*m2 - ...`.
pub(crate) fn render_terms<F: PrimeField>(
    fld: &F,
    terms: impl Iterator<Item = (String, F::Elem)>,
) -> String {
    let mut out = String::new();
    for (i, (m, c)) in terms.enumerate() {
        let (neg, mag) = match fld.negative_part(&c) {
            Some(n) => (true, n),
            None => (false, c),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let cs = fld.render(&mag);
        if m.is_empty() {
            out.push_str(&cs);
        } else if fld.is_one(&mag) {
            out.push_str(&m);
        } else {
            out.push_str(&cs);
            out.push('*');
            out.push_str(&m);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn content<F: PrimeField>(f: &Poly<F>, v: Var, fld: &F) -> Poly<F> {
    let mut acc = Poly::zero();
    for c in f.to_univariate(v).iter().rev() {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, c, fld);
        if acc.is_one(fld) {
            break;
        }
    }
    acc
}

fn primitive_part<F: PrimeField>(f: &Poly<F>, v: Var, fld: &F) -> Poly<F> {
    let c = content(f, v, fld);
    f.exact_div(&c, fld).expect("content divides").monic(fld)
}

fn udeg<F: PrimeField>(p: &[Poly<F>]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Pseudo-remainder of `a` by `b` as polynomials in `v`.
fn prem<F: PrimeField>(a: &Poly<F>, b: &Poly<F>, v: Var, fld: &F) -> Poly<F> {
    let bu = b.to_univariate(v);
    let db = udeg(&bu).expect("nonzero divisor");
    let lb = bu[db].clone();
    let mut r = a.to_univariate(v);
    while let Some(dr) = udeg(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly<F>> = r.iter().map(|c| c.mul(&lb, fld)).collect();
        for (k, bc) in bu.iter().enumerate() {
            let t = bc.mul(&lr, fld);
            next[k + shift] = next[k + shift].sub(&t, fld);
        }
        next.truncate(dr);
        r = next;
    }
    Poly::from_univariate(&r, v)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, m: u64) -> u64 {
    mod_pow(a, m - 2, m)
}

/// Degree of the gcd of two dense univariate polynomials over `F_m`.
fn mod_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let lb_inv = mod_inv(*b.last().unwrap(), m);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * lb_inv % m;
            let shift = a.len() - b.len();
            for (k, bc) in b.iter().enumerate() {
                a[k + shift] = (a[k + shift] + m - c * bc % m) % m;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Univariate image in `v` after reducing mod `m` and evaluating the other
/// variables at `pt`.
fn mod_image(terms: &[(Mono, u64)], v: Var, pt: &[u64; NVARS], m: u64) -> Vec<u64> {
    let deg = terms.iter().map(|(mo, _)| mo.exp(v)).max().unwrap_or(0) as usize;
    let mut out = vec![0u64; deg + 1];
    for (mo, c) in terms {
        let mut t = *c;
        for w in Var::ALL {
            if w != v && mo.exp(w) > 0 {
                t = t * mod_pow(pt[w.index()], mo.exp(w) as u64, m) % m;
            }
        }
        let e = mo.exp(v) as usize;
        out[e] = (out[e] + t) % m;
    }
    out
}

/// `true` only when `f` and `g` are certainly coprime: for each shared variable
/// a modular univariate image with surviving leading coefficient has trivial gcd.
fn surely_coprime<F: PrimeField>(f: &Poly<F>, g: &Poly<F>, fld: &F) -> bool {
    let m = fld.residue_modulus();
    let reduce = |p: &Poly<F>| -> Option<Vec<(Mono, u64)>> {
        p.terms().map(|(mo, c)| fld.residue(c).map(|r| (*mo, r))).collect()
    };
    let (Some(fr), Some(gr)) = (reduce(f), reduce(g)) else {
        return false;
    };
    for v in Var::ALL {
        if !f.uses(v) || !g.uses(v) {
            continue;
        }
        let dv = f.degree_in(v) as usize;
        let mut settled = false;
        for attempt in 0..4u64 {
            let mut pt = [0u64; NVARS];
            for (k, x) in pt.iter_mut().enumerate() {
                *x = (1_000_003 * (attempt + 1) + 7_919 * k as u64 + 12_345 * attempt * attempt + 2) % m;
            }
            let fu = mod_image(&fr, v, &pt, m);
            if fu[dv] == 0 {
                continue;
            }
            let gu = mod_image(&gr, v, &pt, m);
            if mod_gcd_degree(fu, gu, m) == 0 {
                settled = true;
            }
            break;
        }
        if !settled {
            return false;
        }
    }
    true
}

fn gcd<F: PrimeField>(f: &Poly<F>, g: &Poly<F>, fld: &F) -> Poly<F> {
    if f.is_zero() {
        return g.monic(fld);
    }
    if g.is_zero() {
        return f.monic(fld);
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one(fld);
    }
    if f == g {
        return f.monic(fld);
    }
    if surely_coprime(f, g, fld) {
        return Poly::one(fld);
    }
    let v = match (f.highest_var(), g.highest_var()) {
        (Some(x), Some(y)) => x.max(y),
        _ => unreachable!("non-constant polynomials use a variable"),
    };
    if !f.uses(v) {
        return gcd(f, &content(g, v, fld), fld);
    }
    if !g.uses(v) {
        return gcd(&content(f, v, fld), g, fld);
    }
    let cf = content(f, v, fld);
    let cg = content(g, v, fld);
    let c = gcd(&cf, &cg, fld);
    let mut a = f.exact_div(&cf, fld).expect("content divides");
    let mut b = g.exact_div(&cg, fld).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    let h = loop {
        let r = prem(&a, &b, v, fld);
        if r.is_zero() {
            break primitive_part(&b, v, fld);
        }
        if !r.uses(v) {
            break Poly::one(fld);
        }
        a = b;
        b = primitive_part(&r, v, fld);
    };
    c.mul(&h, fld).monic(fld)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::prime::{PrimeModulus, Rationals};

    fn p(terms: &[(i64, [u32; 4])]) -> Poly<Rationals> {
        let q = Rationals;
        Poly::from_terms(&q, terms.iter().map(|(c, m)| (Mono(*m), q.from_i64(*c))))
    }

    #[test]
    fn graded_order_puts_b_above_a() {
        assert!(Mono::var(Var::B, 1) > Mono::var(Var::A, 1));
        assert!(Mono::var(Var::A, 2) > Mono::var(Var::B, 1));
        assert!(Mono([1, 1, 0, 0]) > Mono::var(Var::A, 2) || Mono([1, 1, 0, 0]) < Mono::var(Var::A, 2));
    }

    #[test]
    fn exact_division_and_failure() {
        let q = Rationals;
        // (a^2 - 1) / (a - 1) = a + 1
        let num = p(&[(1, [2, 0, 0, 0]), (-1, [0; 4])]);
        let den = p(&[(1, [1, 0, 0, 0]), (-1, [0; 4])]);
        assert_eq!(num.exact_div(&den, &q).unwrap(), p(&[(1, [1, 0, 0, 0]), (1, [0; 4])]));
        let bad = p(&[(1, [0, 1, 0, 0]), (1, [0; 4])]);
        assert!(num.exact_div(&bad, &q).is_none());
    }

    #[test]
    fn bivariate_gcd_recovers_common_factor() {
        let q = Rationals;
        let common = p(&[(1, [1, 1, 0, 0]), (-3, [0, 1, 0, 0]), (2, [0; 4])]);
        let f1 = p(&[(1, [2, 0, 0, 0]), (1, [0, 2, 0, 0]), (1, [0; 4])]);
        let f2 = p(&[(5, [0, 3, 0, 0]), (-1, [1, 0, 0, 0])]);
        let g = common.mul(&f1, &q).gcd(&common.mul(&f2, &q), &q);
        assert_eq!(g, common.monic(&q));
    }

    #[test]
    fn gcd_in_positive_characteristic() {
        let f = PrimeModulus::new(3).unwrap();
        let x = Poly::var(&f, Var::A);
        let one = Poly::one(&f);
        let a = x.add(&one, &f).pow(3, &f); // (a+1)^3 = a^3 + 1 over F_3
        let b = x.mul(&x, &f).sub(&one, &f); // (a-1)(a+1)
        assert_eq!(a.gcd(&b, &f), x.add(&one, &f));
    }

    #[test]
    fn render_is_sorted_descending() {
        let q = Rationals;
        let f = p(&[(1, [0; 4]), (-2, [1, 0, 0, 0]), (1, [0, 2, 0, 0])]);
        assert_eq!(f.render(&q), "b^2 - 2*a + 1");
    }
}
