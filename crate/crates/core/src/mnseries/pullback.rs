//! Lifting a symmetric `A = p_A q_A⁻¹` of `k(Q)` to the symmetric element
//! `X = P_A Q_A⁻¹ (Q_A*)⁻¹ P_A*` of the crossed-product series ring, where
//! `Φ_N(X) = A A* = A²`.

use num_rational::BigRational;
use serde::Serialize;

use crate::exactfield::BaseField;
use crate::heisenspec::{lookup_pair, HLaurent, LocExpr};
use crate::nilgroup::{FreeWord, GroupElem, PcGroup};

use super::crossed::{phi_n, star_on_crossed, CrossedProductCtx, FreeInvolution, KnElem, ScalarRing};
use super::series::{SeriesRing, TruncSeries};
use super::MnError;

#[derive(Clone, Debug)]
pub struct PullbackInstance {
    pub name: String,
    pub p: TruncSeries<BigRational>,
    pub q: TruncSeries<BigRational>,
}

#[derive(Clone, Debug)]
pub struct Pullback {
    /// `X`, exact when `q_A` is a monomial, else truncated at the frontier.
    pub x: TruncSeries<KnElem>,
    pub phi_x: TruncSeries<BigRational>,
    /// `A²` computed in `k((Q))` without the crossed product.
    pub a_squared: TruncSeries<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackCheck {
    pub name: String,
    pub frontier: String,
    pub x_terms: usize,
    /// Coefficients compared between `Φ_N(X)` and `A²`.
    pub compared: usize,
    pub phi_matches: bool,
    /// `X* = X`; `None` when `X` is only known below the frontier.
    pub symmetric: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

impl PullbackCheck {
    pub fn passed(&self) -> bool {
        self.phi_matches && self.symmetric != Some(false)
    }

    pub fn vacuous(&self) -> bool {
        self.compared == 0
    }
}

/// Reads `x^a y^b z^c` with `z = [y, x]` as `x^a y^b c^{−c}` in `Q`, where
/// `c = [x, y]`.
pub fn hlaurent_to_series(ctx: &CrossedProductCtx, h: &HLaurent) -> TruncSeries<BigRational> {
    let scalar = ScalarRing::new(ctx.group().clone());
    let terms = h.terms().iter().map(|(m, c)| (GroupElem::from_exps(vec![m[0], m[1], -m[2]]), c.clone()));
    TruncSeries::new(&scalar, terms, None)
}

fn lead(q: &PcGroup, f: &TruncSeries<impl Clone + PartialEq + std::fmt::Debug>) -> Result<GroupElem, MnError> {
    f.lead().map(|(g, _)| g.clone()).ok_or_else(|| MnError::BadContext(format!("zero polynomial in {}", q.names().join(","))))
}

/// `prefix⁻¹ · f · suffix⁻¹`: the precision a middle factor needs so that
/// `prefix · middle · suffix` is exact below `f`.
fn needed(q: &PcGroup, prefix: &GroupElem, f: &GroupElem, suffix: &GroupElem) -> GroupElem {
    q.mul(&q.mul(&q.inverse(prefix), f), &q.inverse(suffix))
}

fn finish<C: Clone + PartialEq + std::fmt::Debug>(
    q: &PcGroup,
    x: TruncSeries<C>,
    frontier: &GroupElem,
) -> Result<TruncSeries<C>, MnError> {
    match x.frontier() {
        None => Ok(x),
        Some(f) if f >= frontier => Ok(x.truncate(frontier)),
        Some(f) => Err(MnError::FrontierUnreachable(format!("product known below {} only", q.render(f)))),
    }
}

/// `X = P_A Q_A⁻¹ (Q_A*)⁻¹ P_A*` exact below `frontier`.
pub fn pullback_x(
    ctx: &CrossedProductCtx,
    inv: &FreeInvolution,
    p: &TruncSeries<BigRational>,
    q: &TruncSeries<BigRational>,
    frontier: &GroupElem,
) -> Result<TruncSeries<KnElem>, MnError> {
    let g = ctx.group();
    let (pl, ql) = (ctx.lift(p), ctx.lift(q));
    let (ps, qs) = (star_on_crossed(ctx, inv, &pl)?, star_on_crossed(ctx, inv, &ql)?);
    let (lp, lps) = (lead(g, &pl)?, lead(g, &ps)?);
    let lqi = g.inverse(&lead(g, &ql)?);
    let lqsi = g.inverse(&lead(g, &qs)?);
    let qi = ql.inv(ctx, &needed(g, &lp, frontier, &g.mul(&lqsi, &lps)))?;
    let qsi = qs.inv(ctx, &needed(g, &g.mul(&lp, &lqi), frontier, &lps))?;
    let x = pl.mul(ctx, &qi).mul(ctx, &qsi).mul(ctx, &ps);
    finish(g, x, frontier)
}

/// `A² = (p q⁻¹)(p q⁻¹)` in `k((Q))`, exact below `frontier`.
fn a_squared(
    scalar: &ScalarRing,
    p: &TruncSeries<BigRational>,
    q: &TruncSeries<BigRational>,
    frontier: &GroupElem,
) -> Result<TruncSeries<BigRational>, MnError> {
    let g = scalar.group();
    let lp = lead(g, p)?;
    let lqi = g.inverse(&lead(g, q)?);
    let t1 = needed(g, &lp, frontier, &g.mul(&g.mul(&lp, &lqi), &lp));
    let t2 = needed(g, &g.mul(&g.mul(&lp, &lqi), &lp), frontier, &g.identity());
    let qi1 = q.inv(scalar, &t1)?;
    let qi2 = q.inv(scalar, &t2)?;
    let a2 = p.mul(scalar, &qi1).mul(scalar, p).mul(scalar, &qi2);
    finish(g, a2, frontier)
}

pub fn compute_pullback(
    ctx: &CrossedProductCtx,
    inv: &FreeInvolution,
    inst: &PullbackInstance,
    frontier: &GroupElem,
) -> Result<Pullback, MnError> {
    let scalar = ScalarRing::new(ctx.group().clone());
    let x = pullback_x(ctx, inv, &inst.p, &inst.q, frontier)?;
    let phi_x = phi_n(ctx, &x);
    let a_squared = a_squared(&scalar, &inst.p, &inst.q, frontier)?;
    Ok(Pullback { x, phi_x, a_squared })
}

/// `Φ_N(X) = A²` below the frontier, and `X* = X` when `X` is exact.
pub fn check_pullback(
    ctx: &CrossedProductCtx,
    inv: &FreeInvolution,
    inst: &PullbackInstance,
    frontier: &GroupElem,
) -> Result<PullbackCheck, MnError> {
    let g = ctx.group();
    let scalar = ScalarRing::new(g.clone());
    let pb = compute_pullback(ctx, inv, inst, frontier)?;
    let (l, r) = (pb.phi_x.truncate(frontier), pb.a_squared.truncate(frontier));
    let diff = l.sub(&scalar, &r);
    let mismatch = diff.lead().map(|(at, c)| format!("Φ_N(X) − A² has {} at {}", c, g.render(at)));
    let compared = l.terms().keys().chain(r.terms().keys()).collect::<std::collections::BTreeSet<_>>().len();
    let symmetric = if pb.x.is_exact() { Some(star_on_crossed(ctx, inv, &pb.x)? == pb.x) } else { None };
    Ok(PullbackCheck {
        name: inst.name.clone(),
        frontier: g.render(frontier),
        x_terms: pb.x.terms().len(),
        compared,
        phi_matches: mismatch.is_none(),
        symmetric,
        mismatch,
    })
}

/// The fixed-generator involution `x* = x`, `y* = y`.
pub fn fixing_involution() -> FreeInvolution {
    FreeInvolution::new(vec![FreeWord::letter(1), FreeWord::letter(2)]).expect("involution")
}

fn leaf(e: &LocExpr) -> Result<&HLaurent, MnError> {
    match e {
        LocExpr::Leaf(h) => Ok(h),
        _ => Err(MnError::BadContext("pair element is not a Laurent polynomial".into())),
    }
}

/// Instances of the pullback under `x* = x`, `y* = y`: the trivial one,
/// `1 + x̄`, the two elements of the symmetric pair of the fixed-generator
/// case read from the pair catalog, and the rational symmetric element
/// `(1 + s)(2 + s)⁻¹` with `s = xy + yx`.
pub fn transport_instances(ctx: &CrossedProductCtx) -> Result<Vec<PullbackInstance>, MnError> {
    let scalar = ScalarRing::new(ctx.group().clone());
    let g = ctx.group();
    let one = TruncSeries::one(&scalar);
    let mono = |s: &str, c: i64| {
        let e = g.parse_word(s).expect("word in Q");
        TruncSeries::monomial(&scalar, e, BigRational::from_integer(c.into()))
    };
    let pair = lookup_pair("main-1-symmetric", BaseField::rationals())
        .map_err(|e| MnError::BadContext(e.to_string()))?;
    let s = mono("x*y", 1).add(&scalar, &mono("x*y*c^-1", 1));
    let mut out = vec![
        PullbackInstance { name: "trivial".into(), p: one.clone(), q: one.clone() },
        PullbackInstance { name: "single-polynomial".into(), p: one.add(&scalar, &mono("x", 1)), q: one.clone() },
    ];
    for (k, e) in pair.elems.iter().enumerate() {
        out.push(PullbackInstance {
            name: format!("transport-{}", ["a", "b"][k]),
            p: hlaurent_to_series(ctx, leaf(e)?),
            q: one.clone(),
        });
    }
    out.push(PullbackInstance {
        name: "rational".into(),
        p: one.add(&scalar, &s),
        q: mono("1", 2).add(&scalar, &s),
    });
    Ok(out)
}
