//! Group algebras `k[G]` of a free group written as crossed products
//! `k[N][Q; σ, τ]` over a torsion-free nilpotent quotient `Q = G/N`.
//!
//! `Q` is a [`PcGroup`] whose Mal'cev generator `g_k` is represented in `G`
//! by a fixed free word `w_k`. The transversal is
//! `x_α = w_1^{e_1} ⋯ w_r^{e_r}` for `α = g_1^{e_1} ⋯ g_r^{e_r}`, so `x_1 = 1`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::nilgroup::{FreeWord, GroupElem, PcGroup};

use super::series::{SeriesRing, TruncSeries};
use super::MnError;

/// An element of `k[N]`: a finite `k`-combination of reduced free words.
pub type KnElem = BTreeMap<FreeWord, BigRational>;

fn kn_add(a: &KnElem, b: &KnElem) -> KnElem {
    let mut out = a.clone();
    for (w, c) in b {
        let v = out.remove(w).unwrap_or_else(BigRational::zero) + c;
        if !v.is_zero() {
            out.insert(w.clone(), v);
        }
    }
    out
}

fn kn_mul(a: &KnElem, b: &KnElem) -> KnElem {
    let mut out = KnElem::new();
    for (u, cu) in a {
        for (v, cv) in b {
            let w = u.mul(v);
            let s = out.remove(&w).unwrap_or_else(BigRational::zero) + cu * cv;
            if !s.is_zero() {
                out.insert(w, s);
            }
        }
    }
    out
}

fn kn_word(w: FreeWord, c: BigRational) -> KnElem {
    let mut out = KnElem::new();
    if !c.is_zero() {
        out.insert(w, c);
    }
    out
}

/// The augmentation `ε_N`: every word goes to 1.
pub fn augmentation(a: &KnElem) -> BigRational {
    a.values().fold(BigRational::zero(), |acc, c| acc + c)
}

/// Series with coefficients in `k`, over the group ring `k[Q]`.
#[derive(Clone, Debug)]
pub struct ScalarRing {
    group: PcGroup,
}

impl ScalarRing {
    pub fn new(group: PcGroup) -> Self {
        ScalarRing { group }
    }
}

impl SeriesRing for ScalarRing {
    type C = BigRational;
    fn group(&self) -> &PcGroup {
        &self.group
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn mono_mul(&self, _: &GroupElem, a: &BigRational, _: &GroupElem, b: &BigRational) -> BigRational {
        a * b
    }
    fn mono_inv(&self, _: &GroupElem, c: &BigRational) -> Option<BigRational> {
        (!c.is_zero()).then(|| c.recip())
    }
}

/// An involution of the free group, fixed by the images of its letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeInvolution {
    images: Vec<FreeWord>,
}

impl FreeInvolution {
    /// Checks `w** = w` on every letter.
    pub fn new(images: Vec<FreeWord>) -> Result<Self, MnError> {
        let inv = FreeInvolution { images };
        for k in 1..=inv.images.len() as i32 {
            if inv.images.iter().flat_map(|w| w.letters()).any(|l| l.unsigned_abs() as usize > inv.images.len()) {
                return Err(MnError::BadInvolution("image uses an unknown letter".into()));
            }
            let w = FreeWord::letter(k);
            if inv.apply(&inv.apply(&w)) != w {
                return Err(MnError::BadInvolution(format!("letter {} is not returned by applying twice", k)));
            }
        }
        Ok(inv)
    }

    /// `(l_1 ⋯ l_n)* = l_n* ⋯ l_1*`.
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut out = FreeWord::empty();
        for &l in w.letters().iter().rev() {
            let im = &self.images[(l.unsigned_abs() - 1) as usize];
            out = out.mul(&if l > 0 { im.clone() } else { im.inverse() });
        }
        out
    }

    pub fn apply_kn(&self, a: &KnElem) -> KnElem {
        a.iter().fold(KnElem::new(), |acc, (w, c)| kn_add(&acc, &kn_word(self.apply(w), c.clone())))
    }
}

/// `k[G] = k[N][Q; σ, τ]` with `σ(α)(n) = x_α n x_α⁻¹` and
/// `τ(α, β) = x_α x_β x_{αβ}⁻¹`.
#[derive(Clone, Debug)]
pub struct CrossedProductCtx {
    group: PcGroup,
    free_rank: usize,
    gen_words: Vec<FreeWord>,
    corrupt_tau: bool,
}

impl CrossedProductCtx {
    /// `gen_words[k]` must map to the `k`-th Mal'cev generator of `group`
    /// under `letter i ↦ g_{i-1}`.
    pub fn new(group: PcGroup, free_rank: usize, gen_words: Vec<FreeWord>) -> Result<Self, MnError> {
        if gen_words.len() != group.rank() || free_rank > group.rank() {
            return Err(MnError::BadContext("one word per Mal'cev generator is required".into()));
        }
        let ctx = CrossedProductCtx { group, free_rank, gen_words, corrupt_tau: false };
        for (k, w) in ctx.gen_words.iter().enumerate() {
            if w.letters().iter().any(|l| l.unsigned_abs() as usize > free_rank) {
                return Err(MnError::BadContext(format!("word for generator {} uses an unknown letter", k)));
            }
            if ctx.project(w) != ctx.group.generator(k) {
                return Err(MnError::BadContext(format!("word for generator {} has the wrong image", k)));
            }
        }
        Ok(ctx)
    }

    /// `F₂/γ₃` on `x, y` with `c = x⁻¹y⁻¹xy`, Mal'cev section `x^a y^b c^e`.
    pub fn free_mod_gamma3() -> Self {
        let names = vec!["x".to_string(), "y".to_string(), "c".to_string()];
        let q = PcGroup::new(names, &[(1, 0, GroupElem::from_exps(vec![0, 0, -1]))], vec![2, 0]).expect("valid presentation");
        let c = FreeWord::new([-1, -2, 1, 2]);
        Self::new(q, 2, vec![FreeWord::letter(1), FreeWord::letter(2), c]).expect("valid section")
    }

    /// Test hook: doubles `τ(α, β)` whenever both arguments are nontrivial,
    /// which breaks `ε_N(τ) = 1`.
    pub fn with_corrupt_tau(mut self) -> Self {
        self.corrupt_tau = true;
        self
    }

    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn letter_names(&self) -> Vec<&str> {
        self.group.names()[..self.free_rank].iter().map(|s| s.as_str()).collect()
    }

    /// Image of a free word in `Q`.
    pub fn project(&self, w: &FreeWord) -> GroupElem {
        let images: Vec<GroupElem> = (0..self.free_rank).map(|k| self.group.generator(k)).collect();
        w.image(&self.group, &images)
    }

    pub fn transversal(&self, alpha: &GroupElem) -> FreeWord {
        alpha.exps.iter().zip(&self.gen_words).fold(FreeWord::empty(), |acc, (&e, w)| acc.mul(&w.pow(e)))
    }

    pub fn tau(&self, alpha: &GroupElem, beta: &GroupElem) -> KnElem {
        let ab = self.group.mul(alpha, beta);
        let n = self.transversal(alpha).mul(&self.transversal(beta)).mul(&self.transversal(&ab).inverse());
        let c = if self.corrupt_tau && !alpha.is_identity() && !beta.is_identity() {
            BigRational::from_integer(2.into())
        } else {
            BigRational::one()
        };
        kn_word(n, c)
    }

    pub fn sigma(&self, alpha: &GroupElem, a: &KnElem) -> KnElem {
        let x = self.transversal(alpha);
        a.iter().map(|(w, c)| (w.conjugate_by(&x), c.clone())).collect()
    }

    /// The induced involution on `Q`.
    pub fn star_quotient(&self, inv: &FreeInvolution, alpha: &GroupElem) -> GroupElem {
        self.project(&inv.apply(&self.transversal(alpha)))
    }

    /// `n_α` with `x_α* = n_α x_{α*}`.
    pub fn star_correction(&self, inv: &FreeInvolution, alpha: &GroupElem) -> FreeWord {
        let xs = inv.apply(&self.transversal(alpha));
        let a_star = self.project(&xs);
        xs.mul(&self.transversal(&a_star).inverse())
    }

    /// Scalar series in `k[Q]` read as `Σ a_α ᾱ`.
    pub fn lift(&self, f: &TruncSeries<BigRational>) -> TruncSeries<KnElem> {
        f.map_coeffs(|c| kn_word(FreeWord::empty(), c.clone()))
    }

    /// An exact crossed-product element as a combination of words of `G`.
    pub fn to_group_ring(&self, f: &TruncSeries<KnElem>) -> Result<KnElem, MnError> {
        if let Some(fr) = f.frontier() {
            return Err(MnError::TruncatedStar(self.group.render(fr)));
        }
        let mut out = KnElem::new();
        for (alpha, coeff) in f.terms() {
            let x = self.transversal(alpha);
            for (n, c) in coeff {
                out = kn_add(&out, &kn_word(n.mul(&x), c.clone()));
            }
        }
        Ok(out)
    }

    /// Inverse of [`Self::to_group_ring`].
    pub fn from_group_ring(&self, a: &KnElem) -> TruncSeries<KnElem> {
        let terms = a.iter().map(|(w, c)| {
            let alpha = self.project(w);
            let n = w.mul(&self.transversal(&alpha).inverse());
            (alpha, kn_word(n, c.clone()))
        });
        TruncSeries::new(self, terms, None)
    }
}

impl SeriesRing for CrossedProductCtx {
    type C = KnElem;
    fn group(&self) -> &PcGroup {
        &self.group
    }
    fn zero(&self) -> KnElem {
        KnElem::new()
    }
    fn one(&self) -> KnElem {
        kn_word(FreeWord::empty(), BigRational::one())
    }
    fn add(&self, a: &KnElem, b: &KnElem) -> KnElem {
        kn_add(a, b)
    }
    fn neg(&self, a: &KnElem) -> KnElem {
        a.iter().map(|(w, c)| (w.clone(), -c)).collect()
    }
    fn is_zero(&self, a: &KnElem) -> bool {
        a.is_empty()
    }
    fn mono_mul(&self, alpha: &GroupElem, a: &KnElem, beta: &GroupElem, b: &KnElem) -> KnElem {
        kn_mul(&kn_mul(a, &self.sigma(alpha, b)), &self.tau(alpha, beta))
    }
    fn mono_inv(&self, alpha: &GroupElem, c: &KnElem) -> Option<KnElem> {
        // (λ n x_α)⁻¹ = λ⁻¹ x_α⁻¹ n⁻¹, rewritten over x_{α⁻¹}
        let (n, lambda) = match c.iter().collect::<Vec<_>>()[..] {
            [(n, l)] => (n, l),
            _ => return None,
        };
        let w = self.transversal(alpha).inverse().mul(&n.inverse());
        let ai = self.group.inverse(alpha);
        Some(kn_word(w.mul(&self.transversal(&ai).inverse()), lambda.recip()))
    }
}

/// `Φ_N(Σ f_α ᾱ) = Σ ε_N(f_α) α`; the frontier is kept.
pub fn phi_n(ctx: &CrossedProductCtx, f: &TruncSeries<KnElem>) -> TruncSeries<BigRational> {
    let scalar = ScalarRing::new(ctx.group.clone());
    let terms = f.terms().iter().map(|(g, c)| (g.clone(), augmentation(c)));
    TruncSeries::new(&scalar, terms, f.frontier().cloned())
}

/// `(Σ f_α ᾱ)* = Σ n_α (f_α*)^{σ(α*)} (α*)‾`, which for scalar `f_α` is
/// `Σ f_α n_α (α*)‾`. The involution need not preserve the order, so only
/// exact series are accepted.
pub fn star_on_crossed(
    ctx: &CrossedProductCtx,
    inv: &FreeInvolution,
    f: &TruncSeries<KnElem>,
) -> Result<TruncSeries<KnElem>, MnError> {
    if let Some(fr) = f.frontier() {
        return Err(MnError::TruncatedStar(ctx.group.render(fr)));
    }
    let terms = f.terms().iter().map(|(alpha, c)| {
        let a_star = ctx.star_quotient(inv, alpha);
        let n = kn_word(ctx.star_correction(inv, alpha), BigRational::one());
        (a_star.clone(), kn_mul(&n, &ctx.sigma(&a_star, &inv.apply_kn(c))))
    });
    Ok(TruncSeries::new(ctx, terms, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ge(v: [i64; 3]) -> GroupElem {
        GroupElem::from_exps(v.to_vec())
    }

    fn fix() -> FreeInvolution {
        FreeInvolution::new(vec![FreeWord::letter(1), FreeWord::letter(2)]).unwrap()
    }

    #[test]
    fn tau_examples() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        let (one, x, y) = (ge([0, 0, 0]), ge([1, 0, 0]), ge([0, 1, 0]));
        for a in [&one, &x, &y, &ge([2, -1, 3])] {
            assert_eq!(ctx.tau(&one, a), ctx.one());
            assert_eq!(ctx.tau(a, &one), ctx.one());
        }
        assert_eq!(ctx.tau(&x, &y), ctx.one());
        // x_{yx} = x y c⁻¹ reduces to y x
        assert_eq!(ctx.tau(&y, &x), ctx.one());
        // x_{yx²} = x² y c⁻² reduces to x y x y⁻¹ x⁻¹ y x
        let t = ctx.tau(&y, &ge([2, 0, 0]));
        assert_eq!(t, kn_word(FreeWord::new([2, 1, -2, 1, 2, -1, -2, -1]), q(1)));
    }

    #[test]
    fn tau_lies_in_kernel() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        for a in [[1, 0, 0], [0, 1, 0], [2, -1, 3], [-1, 2, -2]] {
            for b in [[0, 1, 0], [1, 1, 1], [-2, 0, 1]] {
                let t = ctx.tau(&ge(a), &ge(b));
                assert_eq!(augmentation(&t), q(1));
                for w in t.keys() {
                    assert!(ctx.project(w).is_identity());
                }
            }
        }
    }

    #[test]
    fn crossed_monomial_product() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        let n = kn_word(FreeWord::new([-1, -2, 1, 2]).commutator(&FreeWord::letter(1)), q(3));
        let m = kn_word(FreeWord::new([-1, -2, 1, 2]).commutator(&FreeWord::letter(2)), q(2));
        let (a, b) = (ge([0, 1, 0]), ge([1, 0, 1]));
        let f = TruncSeries::monomial(&ctx, a.clone(), n.clone());
        let g = TruncSeries::monomial(&ctx, b.clone(), m.clone());
        let p = f.mul(&ctx, &g);
        let ab = ctx.group().mul(&a, &b);
        let expect = kn_mul(&kn_mul(&n, &ctx.sigma(&a, &m)), &ctx.tau(&a, &b));
        assert_eq!(p.coeff(&ab), Some(&expect));
        // the same product computed in the group ring
        let lhs = kn_mul(&ctx.to_group_ring(&f).unwrap(), &ctx.to_group_ring(&g).unwrap());
        assert_eq!(ctx.from_group_ring(&lhs), p);
    }

    #[test]
    fn phi_sums_coefficients() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        let a = ge([1, 0, 0]);
        let n = FreeWord::new([-1, -2, 1, 2]).commutator(&FreeWord::letter(1));
        let coeff = kn_add(&kn_word(FreeWord::empty(), q(2)), &kn_word(n, q(3)));
        let f = TruncSeries::monomial(&ctx, a.clone(), coeff);
        let p = phi_n(&ctx, &f);
        assert_eq!(p.terms().iter().collect::<Vec<_>>(), vec![(&a, &q(5))]);
        let one = TruncSeries::one(&ctx);
        assert_eq!(phi_n(&ctx, &one), TruncSeries::one(&ScalarRing::new(ctx.group().clone())));
    }

    #[test]
    fn sigma_preserves_augmentation() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        let g = kn_add(&kn_word(FreeWord::new([1, 2, -1]), q(4)), &kn_word(FreeWord::new([2, 2]), q(-1)));
        for a in [[1, 0, 0], [0, -2, 1], [3, 1, -1]] {
            assert_eq!(augmentation(&ctx.sigma(&ge(a), &g)), augmentation(&g));
        }
    }

    #[test]
    fn star_of_monomial_and_one() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        let inv = fix();
        let one = TruncSeries::one(&ctx);
        assert_eq!(star_on_crossed(&ctx, &inv, &one).unwrap(), one);
        let alpha = ge([1, 1, 0]);
        let f = TruncSeries::monomial(&ctx, alpha.clone(), ctx.one());
        let s = star_on_crossed(&ctx, &inv, &f).unwrap();
        let a_star = ctx.star_quotient(&inv, &alpha);
        assert_eq!(a_star, ge([1, 1, -1]));
        let n = kn_word(ctx.star_correction(&inv, &alpha), q(1));
        assert_eq!(s, TruncSeries::monomial(&ctx, a_star, n));
    }

    #[test]
    fn star_matches_group_ring_and_is_involutive() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        let swap = FreeInvolution::new(vec![FreeWord::letter(2), FreeWord::letter(1)]).unwrap();
        for inv in [fix(), swap] {
            let n = FreeWord::new([-1, -2, 1, 2]).commutator(&FreeWord::letter(2));
            let f = TruncSeries::new(
                &ctx,
                [
                    (ge([0, 0, 0]), ctx.one()),
                    (ge([1, 2, -1]), kn_word(n.clone(), q(3))),
                    (ge([-1, 0, 2]), kn_word(FreeWord::empty(), q(-2))),
                ],
                None,
            );
            let s = star_on_crossed(&ctx, &inv, &f).unwrap();
            let via_words = ctx.from_group_ring(&inv.apply_kn(&ctx.to_group_ring(&f).unwrap()));
            assert_eq!(s, via_words);
            assert_eq!(star_on_crossed(&ctx, &inv, &s).unwrap(), f);
        }
    }

    #[test]
    fn truncated_star_rejected() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        let f = TruncSeries::one(&ctx).truncate(&ge([2, 0, 0]));
        assert!(matches!(star_on_crossed(&ctx, &fix(), &f), Err(MnError::TruncatedStar(_))));
    }

    #[test]
    fn bad_contexts_rejected() {
        let q = PcGroup::heisenberg();
        assert!(CrossedProductCtx::new(q.clone(), 2, vec![FreeWord::letter(1), FreeWord::letter(2)]).is_err());
        let wrong = FreeWord::new([-1, -2, 1, 2]);
        assert!(CrossedProductCtx::new(q.clone(), 2, vec![FreeWord::letter(1), FreeWord::letter(2), wrong]).is_err());
        assert!(CrossedProductCtx::new(q, 2, vec![FreeWord::letter(1), FreeWord::letter(2), FreeWord::new([-2, -1, 2, 1])]).is_ok());
        assert!(FreeInvolution::new(vec![FreeWord::letter(2), FreeWord::letter(2)]).is_err());
    }
}
