//! Seeded check batteries over the whole pipeline, sized by the caller.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactfield::{BaseField, Rf};
use crate::heisenspec::{anchors, catalog_ids, lookup_pair, HLaurent, HeisError, PairKind, Specializer};
use crate::nilgroup::{
    check_postconditions, pm_eigenbasis, star_invariant_heisenberg, Extraction, GroupInvolution, NilError, PcGroup,
};
use crate::symbolalg::{AlgInvolution, AlgRef, ClearedElem, SymElem, SymError, SymbolAlgebra};

/// Result of one battery: pass flag, sample count and the first counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Outcome {
    fn new(name: impl Into<String>) -> Self {
        Outcome { name: name.into(), passed: true, samples: 0, counterexample: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(witness());
        }
    }
}

/// `(p, q)` pairs exercised by the algebra batteries.
pub const LAW_CONFIGS: [(u64, u64); 5] = [(0, 2), (0, 3), (0, 4), (3, 2), (3, 4)];

const SCALAR_ATOMS: [&str; 8] = ["1", "a", "b", "theta", "a^-1", "b^-1", "a*b", "(1 + a)^-1"];

fn random_scalar(alg: &AlgRef, rng: &mut ChaCha8Rng) -> Rf {
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            parts.push(format!("({})*{}", c, SCALAR_ATOMS[rng.gen_range(0..SCALAR_ATOMS.len())]));
        }
    }
    let text = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
    alg.scalar_parse(&text).expect("scalar atoms parse")
}

/// Random element with about a third of its `m²` coefficients nonzero.
pub fn random_elem(alg: &AlgRef, rng: &mut ChaCha8Rng) -> SymElem {
    let m = alg.degree();
    let mut ts = Vec::new();
    for r in 0..m {
        for s in 0..m {
            if rng.gen_bool(0.35) {
                ts.push((r, s, random_scalar(alg, rng)));
            }
        }
    }
    SymElem::from_triples(alg, &ts).expect("indices below degree")
}

/// `i^m = a`, `j^m = b`, `ji = θij`, then associativity on random triples.
pub fn symbol_laws(p: u64, q: u64, triples: usize, seed: u64) -> Result<Outcome, SymError> {
    let alg = SymbolAlgebra::with_params(p, q)?;
    let mut out = Outcome::new(format!("symbol-laws p={} q={}", p, q));
    let (i, j) = (SymElem::i(&alg), SymElem::j(&alg));
    let m = alg.degree() as i64;
    out.record(i.pow(m)? == SymElem::scalar(&alg, alg.a()), || "i^m ≠ a".into());
    out.record(j.pow(m)? == SymElem::scalar(&alg, alg.b()), || "j^m ≠ b".into());
    out.record(j.mul(&i)? == i.mul(&j)?.scale(&alg.theta()), || "ji ≠ θij".into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..triples {
        let (x, y, z) = (random_elem(&alg, &mut rng), random_elem(&alg, &mut rng), random_elem(&alg, &mut rng));
        let ok = x.mul(&y)?.mul(&z)? == x.mul(&y.mul(&z)?)?;
        out.record(ok, || format!("triple {}: x = {}; y = {}; z = {}", k, x.render(), y.render(), z.render()));
    }
    Ok(out)
}

/// One to three terms, exponents in `[-2, 2]`, integer coefficients in `[-3, 3]`.
pub fn random_hlaurent(base: BaseField, rng: &mut ChaCha8Rng) -> HLaurent {
    let n = rng.gen_range(1..=3);
    HLaurent::from_terms(
        base,
        (0..n).map(|_| {
            let m = [rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
            (m, BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
        }),
    )
}

/// `ψ(x) = i`, `ψ(z) = θ`, `ψ(yx) = θij`, then `ψ(fg) = ψ(f)ψ(g)` on random pairs.
pub fn specialization_hom(p: u64, q: u64, pairs: usize, seed: u64) -> Result<Outcome, HeisError> {
    let alg = SymbolAlgebra::with_params(p, q)?;
    let base = BaseField::new(p)?;
    let sp = Specializer::new(&alg);
    let mut out = Outcome::new(format!("specialization p={} q={}", p, q));
    let theta = SymElem::scalar(&alg, alg.theta());
    let (i, j) = (SymElem::i(&alg), SymElem::j(&alg));
    out.record(sp.specialize(&HLaurent::x(base))? == i, || "ψ(x) ≠ i".into());
    out.record(sp.specialize(&HLaurent::z(base))? == theta, || "ψ(z) ≠ θ".into());
    let yx = HLaurent::y(base).mul(&HLaurent::x(base));
    out.record(sp.specialize(&yx)? == i.mul(&j)?.mul(&theta)?, || "ψ(yx) ≠ θij".into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..pairs {
        let (f, g) = (random_hlaurent(base, &mut rng), random_hlaurent(base, &mut rng));
        let ok = sp.specialize(&f.mul(&g))? == sp.specialize(&f)?.mul(&sp.specialize(&g)?)?;
        out.record(ok, || format!("pair {}: f = {}; g = {}", k, f.render(), g.render()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnchorResult {
    pub id: String,
    pub q: u64,
    pub displayed: bool,
    pub matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
}

/// Every closed-form anchor, specialized and compared exactly.
pub fn closed_forms(p: u64) -> Result<Vec<AnchorResult>, HeisError> {
    anchors(p)?
        .into_iter()
        .map(|a| {
            let alg = SymbolAlgebra::with_params(p, a.q)?;
            let got = Specializer::with_x_power(&alg, a.x_power).eval(&a.expr)?;
            Ok(AnchorResult {
                id: a.id,
                q: a.q,
                displayed: a.displayed,
                matched: got == a.expected,
                erratum: a.erratum.map(String::from),
            })
        })
        .collect()
}

/// `w* = w` for symmetric pairs and `ww* = w*w = 1` for unitary ones, in every
/// shipped pair and each listed degree. Unitary products are formed over a
/// common polynomial denominator.
pub fn star_laws(p: u64, qs: &[u64]) -> Result<Outcome, HeisError> {
    let base = BaseField::new(p)?;
    let mut out = Outcome::new("star-laws");
    for id in catalog_ids() {
        let pair = match lookup_pair(&id, base) {
            Ok(pair) => pair,
            Err(HeisError::Unimplemented(_)) => continue,
            Err(e) => return Err(e),
        };
        for &q in qs {
            if p != 0 && q % p == 0 {
                continue;
            }
            let alg = SymbolAlgebra::with_params(p, q)?;
            let sp = Specializer::with_x_power(&alg, pair.x_power);
            let inv = AlgInvolution::for_case(&alg, pair.star)?;
            for (k, e) in pair.elems.iter().enumerate() {
                let w = sp.eval(e)?;
                let ws = inv.apply(&w)?;
                let ok = match pair.kind {
                    PairKind::Symmetric => ws == w,
                    PairKind::Unitary => {
                        let (c, cs) = (ClearedElem::from_elem(&w), ClearedElem::from_elem(&ws));
                        c.mul(&cs, &alg).is_one() && cs.mul(&c, &alg).is_one()
                    }
                };
                out.record(ok, || format!("{} element {} at q = {}", id, k, q));
            }
        }
    }
    Ok(out)
}

/// A named group with an involution, ready for extraction.
pub struct ExtractionInstance {
    pub name: &'static str,
    pub group: PcGroup,
    pub involution: GroupInvolution,
}

fn partial(g: &PcGroup, imgs: &[(&str, &str)]) -> Result<GroupInvolution, NilError> {
    let mut m = BTreeMap::new();
    for (k, v) in imgs {
        let idx = g.index_of(k).ok_or_else(|| NilError::InvalidInvolution(format!("unknown generator {}", k)))?;
        let w = g.parse_word(v).ok_or_else(|| NilError::InvalidInvolution(format!("bad word {}", v)))?;
        m.insert(idx, w);
    }
    GroupInvolution::from_partial(g, &m)
}

pub fn extraction_instances() -> Result<Vec<ExtractionInstance>, NilError> {
    let h = PcGroup::heisenberg();
    let f3 = PcGroup::free_nilpotent_class2(3);
    let c3 = PcGroup::free_nilpotent_rank2_class3();
    Ok(vec![
        ExtractionInstance { name: "heisenberg-transpose", involution: partial(&h, &[("x", "x"), ("y", "y")])?, group: h.clone() },
        ExtractionInstance { name: "heisenberg-inversion", involution: GroupInvolution::inversion(&h), group: h.clone() },
        ExtractionInstance { name: "heisenberg-swap", involution: partial(&h, &[("x", "y"), ("y", "x")])?, group: h },
        ExtractionInstance {
            name: "free-class2-rank3-swap-invert",
            involution: partial(&f3, &[("x1", "x2"), ("x2", "x1"), ("x3", "x3^-1")])?,
            group: f3.clone(),
        },
        ExtractionInstance {
            name: "free-class2-rank3-fix-swap",
            involution: partial(&f3, &[("x1", "x1"), ("x2", "x3"), ("x3", "x2")])?,
            group: f3,
        },
        ExtractionInstance {
            name: "free-class3-rank2-transpose",
            involution: partial(&c3, &[("x", "x"), ("y", "y")])?,
            group: c3,
        },
    ])
}

/// Extraction on one instance with the postconditions re-derived by collection.
pub fn run_extraction(inst: &ExtractionInstance) -> Result<(Extraction, bool), NilError> {
    let e = star_invariant_heisenberg(&inst.group, &inst.involution)?;
    let checks = check_postconditions(&inst.group, &inst.involution, &e.x, &e.y, e.eps_x, e.eps_y);
    let ok = checks.all() && checks == e.checks;
    Ok((e, ok))
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect()).collect()
}

/// `U D U⁻¹` with `D = diag(±1)` and `U` a short product of elementary matrices.
pub fn random_involutive_matrix(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let id: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    let (mut u, mut ui) = (id.clone(), id.clone());
    if n > 1 {
        for _ in 0..n + 1 {
            let r = rng.gen_range(0..n);
            let c = (r + rng.gen_range(1..n)) % n;
            let k = rng.gen_range(1..=2) * if rng.gen_bool(0.35) { 1 } else { -1 };
            let (mut e, mut ei) = (id.clone(), id.clone());
            e[r][c] = k;
            ei[r][c] = -k;
            u = mat_mul(&u, &e);
            ui = mat_mul(&ei, &ui);
        }
    }
    let d: Vec<Vec<i64>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { if rng.gen_bool(0.35) { 1 } else { -1 } } else { 0 }).collect())
        .collect();
    mat_mul(&mat_mul(&u, &d), &ui)
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rk = 0;
    for c in 0..cols {
        let Some(p) = (rk..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rk, p);
        for r in rk + 1..m.len() {
            let f = &m[r][c] / &m[rk][c];
            for k in c..cols {
                let t = &f * &m[rk][k];
                m[r][k] -= t;
            }
        }
        rk += 1;
    }
    rk
}

/// `Av = εv` for every returned vector, and the vectors span `Qⁿ`.
pub fn eigenbasis_battery(count: usize, max_n: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Outcome::new("eigenbasis");
    for _ in 0..count {
        let n = rng.gen_range(1..=max_n);
        let a = random_involutive_matrix(n, &mut rng);
        let basis = pm_eigenbasis(&a);
        let eigen = basis.iter().all(|ev| {
            (0..n).all(|s| (0..n).map(|t| a[s][t] * ev.v[t]).sum::<i64>() == ev.eps * ev.v[s])
        });
        let vs: Vec<Vec<i64>> = basis.iter().map(|ev| ev.v.clone()).collect();
        let ok = eigen && basis.len() == n && rank(&vs) == n;
        out.record(ok, || format!("A = {:?}", a));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batteries_pass() {
        assert!(symbol_laws(0, 3, 5, 1).unwrap().passed);
        assert!(specialization_hom(3, 2, 20, 1).unwrap().passed);
        assert!(star_laws(0, &[2]).unwrap().passed);
        assert!(eigenbasis_battery(20, 6, 1).passed);
    }

    #[test]
    fn generated_matrices_are_involutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=6 {
            let a = random_involutive_matrix(n, &mut rng);
            let id: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
            assert_eq!(mat_mul(&a, &a), id);
        }
    }

    #[test]
    fn only_the_erratum_anchor_misses() {
        for r in closed_forms(0).unwrap() {
            assert_eq!(r.matched, r.erratum.is_none(), "{}", r.id);
        }
    }

    #[test]
    fn extraction_instances_verify() {
        for inst in extraction_instances().unwrap() {
            assert!(run_extraction(&inst).unwrap().1, "{}", inst.name);
        }
    }

    #[test]
    fn counterexample_is_first_failure() {
        let mut o = Outcome::new("t");
        o.record(true, || unreachable!());
        o.record(false, || "first".into());
        o.record(false, || "second".into());
        assert_eq!((o.passed, o.samples, o.counterexample.as_deref()), (false, 3, Some("first")));
    }
}
