//! Catalog of symmetric and unitary pairs and the closed forms of their images.

use crate::exactfield::{BaseField, Rf};
use crate::symbolalg::{AlgRef, InvolutionCase, SymElem, SymbolAlgebra};

use super::{HLaurent, HeisError, LocExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Symmetric,
    Unitary,
}

impl PairKind {
    pub fn name(self) -> &'static str {
        match self {
            PairKind::Symmetric => "symmetric",
            PairKind::Unitary => "unitary",
        }
    }
}

/// Star patterns of the normal-subgroup constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalCase {
    /// `x* = x`, `y* = y`.
    N1,
    /// `x* = x`, `y* = y⁻¹`.
    N2,
    /// `x* = x⁻¹`, `y* = y⁻¹`.
    N3,
}

impl NormalCase {
    pub fn star(self) -> InvolutionCase {
        match self {
            NormalCase::N1 => InvolutionCase::Fix,
            NormalCase::N2 => InvolutionCase::Mixed,
            NormalCase::N3 => InvolutionCase::Invert,
        }
    }

    pub fn from_index(k: u8) -> Option<Self> {
        match k {
            1 => Some(NormalCase::N1),
            2 => Some(NormalCase::N2),
            3 => Some(NormalCase::N3),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            NormalCase::N1 => 1,
            NormalCase::N2 => 2,
            NormalCase::N3 => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PairSpec {
    pub id: String,
    pub kind: PairKind,
    pub star: InvolutionCase,
    pub elems: [LocExpr; 2],
    /// `x` stands for `x^{x_power}` in every leaf.
    pub x_power: i64,
    /// Degree of the symbol algebra the construction is stated for.
    pub default_q: u64,
    /// `(g, h)` when the pair is `{g, h⁻¹gh}`.
    pub generators: Option<[LocExpr; 2]>,
}

struct Leaves {
    base: BaseField,
    x_power: i64,
}

impl Leaves {
    fn h(&self, s: &str) -> HLaurent {
        HLaurent::parse(self.base, s).expect("catalog literal").power_x(self.x_power)
    }

    fn e(&self, s: &str) -> LocExpr {
        LocExpr::leaf(self.h(s))
    }
}

/// Pairs from the group-algebra constructions, by star case `1`, `2`, `3`.
pub fn build_pair(kind: PairKind, case: u8, base: BaseField) -> Result<PairSpec, HeisError> {
    let l = Leaves { base, x_power: 1 };
    let id = format!("main-{}-{}", case, kind.name());
    let mut gens = None;
    let (star, elems, default_q) = match (kind, case) {
        (PairKind::Symmetric, 1) => (InvolutionCase::Fix, [l.e("1 + x"), l.e("1 + y")], 2),
        (PairKind::Unitary, 1) => {
            let u = l.e("1 - z*x").mul(&l.e("1 - z^-1*x").inverse());
            let v = l.e("1 - z*y").mul(&l.e("1 - z^-1*y").inverse());
            let w = u.conj(&v);
            gens = Some([u.clone(), v]);
            (InvolutionCase::Fix, [u, w], 3)
        }
        (PairKind::Symmetric, 3) => {
            let u = l.e("1 + x");
            let r = "(x*y^5 - y^-5*x)";
            let v = l.e(&format!("1 - {}", r)).mul(&l.e(&format!("1 + {}", r)).inverse());
            let w = u.conj(&v);
            gens = Some([u.clone(), v]);
            (InvolutionCase::Mixed, [u, w], 2)
        }
        (PairKind::Unitary, 3) => {
            let u = "(x*y^5 - y^-5*x)";
            let v = "(y - y^-1)";
            let r = l.e(&format!("1 - {}", v)).mul(&l.e(&format!("1 + {}", v)).inverse());
            let s = l.e(&format!("1 - {}", u)).mul(&l.e(&format!("1 + {}", u)).inverse());
            let w = r.conj(&s);
            gens = Some([r.clone(), s]);
            (InvolutionCase::Mixed, [r, w], 2)
        }
        (PairKind::Symmetric, 2) => {
            let mut p = build_normal_pair(NormalCase::N3, 0, base)?;
            p.id = id;
            return Ok(p);
        }
        (PairKind::Unitary, 2) => {
            return Err(HeisError::Unimplemented(
                "delegated to external reference (unitary pairs for x* = x⁻¹, y* = y⁻¹)".into(),
            ))
        }
        _ => return Err(HeisError::UnknownPair(id)),
    };
    Ok(PairSpec { id, kind, star, elems, x_power: 1, default_q, generators: gens })
}

/// The elements `s`, `t` of a normal construction, before symmetrization.
pub fn normal_st(case: NormalCase, power_n: u32, base: BaseField) -> (LocExpr, LocExpr) {
    let l = Leaves { base, x_power: 1 << power_n };
    let (x, xi, y, yi) = (l.e("x"), l.e("x^-1"), l.e("y"), l.e("y^-1"));
    match case {
        NormalCase::N1 => {
            let (u, v) = (l.e("1 + x"), l.e("1 + y"));
            (
                LocExpr::product(vec![u.clone(), yi, u.inverse(), y]),
                LocExpr::product(vec![v.clone(), xi, v.inverse(), x]),
            )
        }
        NormalCase::N2 => {
            let (u, v) = (l.e("1 + x"), l.e("1 + y + y^-1"));
            (
                LocExpr::product(vec![u.clone(), y, u.inverse(), yi]),
                LocExpr::product(vec![v.clone(), x, v.inverse(), xi]),
            )
        }
        NormalCase::N3 => {
            let (u, v) = (l.e("1 + x + x^-1"), l.e("1 + y + y^-1"));
            (
                LocExpr::product(vec![y, u.clone(), yi, u.inverse()]),
                LocExpr::product(vec![x, v.clone(), xi, v.inverse()]),
            )
        }
    }
}

/// `{ss*, tt*}` for the given normal case, with `x` replaced by `x^{2ⁿ}`.
pub fn build_normal_pair(case: NormalCase, power_n: u32, base: BaseField) -> Result<PairSpec, HeisError> {
    let star = case.star();
    let (s, t) = normal_st(case, power_n, base);
    let ss = s.mul(&s.star(star));
    let tt = t.mul(&t.star(star));
    let id = if power_n == 0 {
        format!("normal-{}", case.index())
    } else {
        format!("normal-{}-pow{}", case.index(), power_n)
    };
    Ok(PairSpec { id, kind: PairKind::Symmetric, star, elems: [ss, tt], x_power: 1 << power_n, default_q: 2, generators: None })
}

pub fn catalog_ids() -> Vec<String> {
    let mut ids = Vec::new();
    for c in 1..=3 {
        for k in ["symmetric", "unitary"] {
            ids.push(format!("main-{}-{}", c, k));
        }
    }
    for c in 1..=3 {
        ids.push(format!("normal-{}", c));
        for n in 1..=2 {
            ids.push(format!("normal-{}-pow{}", c, n));
        }
    }
    ids
}

pub fn lookup_pair(id: &str, base: BaseField) -> Result<PairSpec, HeisError> {
    let unknown = || HeisError::UnknownPair(id.to_string());
    let parts: Vec<&str> = id.split('-').collect();
    match parts.as_slice() {
        ["main", c, k] => {
            let case: u8 = c.parse().map_err(|_| unknown())?;
            let kind = match *k {
                "symmetric" => PairKind::Symmetric,
                "unitary" => PairKind::Unitary,
                _ => return Err(unknown()),
            };
            build_pair(kind, case, base)
        }
        ["normal", c] | ["normal", c, _] => {
            let case = c.parse().ok().and_then(NormalCase::from_index).ok_or_else(unknown)?;
            let n = match parts.get(2) {
                Some(p) => p.strip_prefix("pow").and_then(|n| n.parse().ok()).filter(|&n: &u32| n <= 16).ok_or_else(unknown)?,
                None => 0,
            };
            build_normal_pair(case, n, base)
        }
        _ => Err(unknown()),
    }
}

/// A displayed closed form: `expr` should specialize to `expected`.
#[derive(Clone, Debug)]
pub struct Anchor {
    pub id: String,
    pub q: u64,
    pub x_power: i64,
    pub expr: LocExpr,
    pub expected: SymElem,
    /// `false` for checks that are not themselves displayed formulas.
    pub displayed: bool,
    /// Known disagreement of the displayed closed form, with the form that does hold.
    pub erratum: Option<&'static str>,
}

struct Closed {
    alg: AlgRef,
}

impl Closed {
    fn s(&self, t: &str) -> Rf {
        self.alg.scalar_parse(t).expect("closed-form scalar")
    }
    fn one(&self) -> SymElem {
        SymElem::one(&self.alg)
    }
    fn i(&self) -> SymElem {
        SymElem::i(&self.alg)
    }
    fn j(&self) -> SymElem {
        SymElem::j(&self.alg)
    }
    /// `1 + c·g`.
    fn lin(&self, c: &str, g: &SymElem) -> SymElem {
        self.one().add(&g.scale(&self.s(c))).unwrap()
    }
    fn m(&self, xs: &[&SymElem]) -> SymElem {
        xs.iter().fold(self.one(), |acc, x| acc.mul(x).unwrap())
    }
    fn p(&self, x: &SymElem, e: i64) -> SymElem {
        x.pow(e).unwrap()
    }
    fn sc(&self, x: &SymElem, c: &str) -> SymElem {
        x.scale(&self.s(c))
    }
}

/// Every displayed image formula, plus the power variants `x → x^{2ⁿ}`,
/// `n ∈ {1, 2}`, over characteristic `p`.
pub fn anchors(p: u64) -> Result<Vec<Anchor>, HeisError> {
    let base = BaseField::new(p)?;
    let mut out = Vec::new();
    let h2 = SymbolAlgebra::with_params(p, 2)?;
    let c = Closed { alg: h2.clone() };
    let l = Leaves { base, x_power: 1 };
    let (i, j) = (c.i(), c.j());
    out.push(Anchor {
        id: "main-1-symmetric-u".into(),
        q: 2,
        x_power: 1,
        expr: l.e("1 + x"),
        expected: c.lin("1", &i),
        displayed: true,
        erratum: None,
    });
    out.push(Anchor {
        id: "main-1-symmetric-v".into(),
        q: 2,
        x_power: 1,
        expr: l.e("1 + y"),
        expected: c.lin("1", &j),
        displayed: true,
        erratum: None,
    });
    for q in [3u64, 5] {
        if p != 0 && q % p == 0 {
            continue;
        }
        let alg = SymbolAlgebra::with_params(p, q)?;
        let cq = Closed { alg: alg.clone() };
        let th = |e: i64| Rf::theta_pow(alg.field(), e);
        for (name, g, leaf) in [("u", cq.i(), "x"), ("v", cq.j(), "y")] {
            let num = cq.one().sub(&g.scale(&th(1))).unwrap();
            let den = cq.one().sub(&g.scale(&th(q as i64 - 1))).unwrap();
            let expr = l
                .e(&format!("1 - z*{}", leaf))
                .mul(&l.e(&format!("1 - z^-1*{}", leaf)).inverse());
            out.push(Anchor {
                id: format!("main-1-unitary-{}-q{}", name, q),
                q,
                x_power: 1,
                expr,
                expected: num.mul(&den.inv()?)?,
                displayed: true,
                erratum: None,
            });
        }
    }
    // j⁻¹ = b⁻¹j
    out.push(Anchor {
        id: "main-3-unitary-v".into(),
        q: 2,
        x_power: 1,
        expr: l.e("y - y^-1"),
        expected: c.sc(&j, "1 - b^-1"),
        displayed: false,
        erratum: None,
    });
    for n in 0..=2u32 {
        let suffix = if n == 0 { String::new() } else { format!("-pow{}", n) };
        let xp = 1i64 << n;
        let lx = Leaves { base, x_power: xp };
        let mut push = |id: &str, expr: LocExpr, expected: SymElem, displayed: bool| {
            out.push(Anchor { id: format!("{}{}", id, suffix), q: 2, x_power: xp, expr, expected, displayed, erratum: None });
        };
        // case x* = x, y* = y
        let (s, t) = normal_st(NormalCase::N1, n, base);
        let st = NormalCase::N1.star();
        let one_i = c.lin("1", &i);
        let one_j = c.lin("1", &j);
        push("normal-1-s", s.clone(), c.sc(&c.p(&one_i, 2), "(1 - a)^-1"), true);
        push("normal-1-t", t.clone(), c.sc(&c.p(&one_j, 2), "(1 - b)^-1"), true);
        push("normal-1-ss", s.mul(&s.star(st)), c.sc(&c.p(&one_i, 4), "(1 - a)^-2"), true);
        push("normal-1-tt", t.mul(&t.star(st)), c.sc(&c.p(&one_j, 4), "(1 - b)^-2"), true);
        // case x* = x, y* = y⁻¹
        let (s, t) = normal_st(NormalCase::N2, n, base);
        let st = NormalCase::N2.star();
        let one_mi = c.lin("-1", &i);
        let beta = "(1 + b^-1)";
        push("normal-2-u", lx.e("1 + x"), one_i.clone(), true);
        push("normal-2-v", lx.e("1 + y + y^-1"), c.lin(beta, &j), true);
        push("normal-2-s", s.clone(), c.sc(&c.m(&[&one_i, &j, &one_mi, &j]), "(1 - a)^-1 * b^-1"), true);
        push("normal-2-ss", s.mul(&s.star(st)), c.sc(&c.p(&one_i, 4), "(1 - a)^-2"), true);
        push(
            "normal-2-tt",
            t.mul(&t.star(st)),
            c.sc(&c.p(&c.lin(beta, &j), 4), &format!("(1 - {}^2*b)^-2", beta)),
            true,
        );
        // case x* = x⁻¹, y* = y⁻¹
        let (s, t) = normal_st(NormalCase::N3, n, base);
        let st = NormalCase::N3.star();
        let alpha = "(1 + a^-1)";
        push(
            "normal-3-ss",
            s.mul(&s.star(st)),
            c.sc(&c.p(&c.lin(&format!("-{}", alpha), &i), 4), &format!("(1 - {}^2*a)^-2", alpha)),
            true,
        );
        for (id, beta, displayed) in [("normal-3-tt", "(1 - b^-1)", true), ("normal-3-tt-plus", "(1 + b^-1)", false)] {
            push(
                id,
                t.mul(&t.star(st)),
                c.sc(&c.p(&c.lin(&format!("-{}", beta), &j), 4), &format!("(1 - {}^2*b)^-2", beta)),
                displayed,
            );
        }
    }
    for a in out.iter_mut().filter(|a| a.id.starts_with("normal-3-tt") && a.displayed) {
        a.erratum = Some("the image holds with β = 1 + b⁻¹ in place of β = 1 − b⁻¹");
    }
    Ok(out)
}
