//! Finitely supported truncations of Malcev-Neumann series.
//!
//! A series carries a frontier `β`: coefficients at `g < β` are exact and
//! nothing is asserted at `g ≥ β`. No frontier means the series is an exact
//! finite sum.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::nilgroup::{GroupElem, PcGroup};

use super::MnError;

/// Largest number of geometric-series terms `series_inv` will expand.
pub const INVERSE_CAP: usize = 512;

/// Lexicographic order on Mal'cev exponent vectors, first coordinate
/// first; positive means greater than the identity. This agrees with the
/// derived `Ord` on [`GroupElem`], which keys every series map.
#[derive(Clone, Copy, Debug, Default)]
pub struct GroupOrder {
    pub rank: usize,
}

impl GroupOrder {
    pub fn new(g: &PcGroup) -> Self {
        GroupOrder { rank: g.rank() }
    }

    pub fn compare(&self, g: &GroupElem, h: &GroupElem) -> Result<Ordering, MnError> {
        for e in [g, h] {
            if e.rank() != self.rank {
                return Err(MnError::GroupMismatch(e.rank(), self.rank));
            }
        }
        Ok(g.exps.iter().zip(&h.exps).map(|(a, b)| a.cmp(b)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal))
    }
}

/// Coefficient arithmetic and the twisted product of basis monomials.
pub trait SeriesRing {
    type C: Clone + PartialEq + Debug;
    fn group(&self) -> &PcGroup;
    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn is_zero(&self, a: &Self::C) -> bool;
    /// Coefficient of `(αβ)‾` in `(a·ᾱ)(b·β̄)`.
    fn mono_mul(&self, alpha: &GroupElem, a: &Self::C, beta: &GroupElem, b: &Self::C) -> Self::C;
    /// Coefficient of `(α⁻¹)‾` in `(c·ᾱ)⁻¹`, when `c` is a trivial unit.
    fn mono_inv(&self, alpha: &GroupElem, c: &Self::C) -> Option<Self::C>;
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C> {
    terms: BTreeMap<GroupElem, C>,
    frontier: Option<GroupElem>,
}

fn min_frontier(a: Option<GroupElem>, b: Option<GroupElem>) -> Option<GroupElem> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

impl<C: Clone + PartialEq + Debug> TruncSeries<C> {
    /// Keeps nonzero terms below the frontier.
    pub fn new<R: SeriesRing<C = C>>(
        r: &R,
        terms: impl IntoIterator<Item = (GroupElem, C)>,
        frontier: Option<GroupElem>,
    ) -> Self {
        let mut map: BTreeMap<GroupElem, C> = BTreeMap::new();
        for (g, c) in terms {
            let v = match map.remove(&g) {
                Some(old) => r.add(&old, &c),
                None => c,
            };
            map.insert(g, v);
        }
        map.retain(|g, c| !r.is_zero(c) && frontier.as_ref().map_or(true, |f| g < f));
        TruncSeries { terms: map, frontier }
    }

    pub fn zero() -> Self {
        TruncSeries { terms: BTreeMap::new(), frontier: None }
    }

    pub fn one<R: SeriesRing<C = C>>(r: &R) -> Self {
        Self::monomial(r, r.group().identity(), r.one())
    }

    pub fn monomial<R: SeriesRing<C = C>>(r: &R, g: GroupElem, c: C) -> Self {
        Self::new(r, [(g, c)], None)
    }

    pub fn terms(&self) -> &BTreeMap<GroupElem, C> {
        &self.terms
    }

    pub fn frontier(&self) -> Option<&GroupElem> {
        self.frontier.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.frontier.is_none()
    }

    pub fn coeff(&self, g: &GroupElem) -> Option<&C> {
        self.terms.get(g)
    }

    /// `(min supp, coefficient)`.
    pub fn lead(&self) -> Option<(&GroupElem, &C)> {
        self.terms.iter().next()
    }

    /// Lower bound for the support of the untruncated series; `None` for an
    /// exact zero.
    fn lower_bound(&self) -> Option<GroupElem> {
        self.lead().map(|(g, _)| g.clone()).or_else(|| self.frontier.clone())
    }

    pub fn truncate(&self, at: &GroupElem) -> Self {
        let frontier = min_frontier(self.frontier.clone(), Some(at.clone()));
        let f = frontier.as_ref().expect("finite frontier");
        let terms = self.terms.iter().filter(|(g, _)| *g < f).map(|(g, c)| (g.clone(), c.clone())).collect();
        TruncSeries { terms, frontier }
    }

    pub fn map_coeffs<D, F: Fn(&C) -> D>(&self, f: F) -> TruncSeries<D> {
        TruncSeries { terms: self.terms.iter().map(|(g, c)| (g.clone(), f(c))).collect(), frontier: self.frontier.clone() }
    }

    pub fn add<R: SeriesRing<C = C>>(&self, r: &R, o: &Self) -> Self {
        let frontier = min_frontier(self.frontier.clone(), o.frontier.clone());
        let terms = self.terms.iter().chain(&o.terms).map(|(g, c)| (g.clone(), c.clone()));
        Self::new(r, terms, frontier)
    }

    pub fn neg<R: SeriesRing<C = C>>(&self, r: &R) -> Self {
        TruncSeries { terms: self.terms.iter().map(|(g, c)| (g.clone(), r.neg(c))).collect(), frontier: self.frontier.clone() }
    }

    pub fn sub<R: SeriesRing<C = C>>(&self, r: &R, o: &Self) -> Self {
        self.add(r, &o.neg(r))
    }

    /// Convolution `Σ a_y b_z^{σ(y)} τ(y, z)`. The dropped tails of `f` and
    /// `g` only reach `β_f·lb(g)` and `lb(f)·β_g`, which bound the new frontier.
    pub fn mul<R: SeriesRing<C = C>>(&self, r: &R, o: &Self) -> Self {
        let q = r.group();
        let mut frontier = None;
        if let (Some(bf), Some(lg)) = (&self.frontier, o.lower_bound()) {
            frontier = min_frontier(frontier, Some(q.mul(bf, &lg)));
        }
        if let (Some(lf), Some(bg)) = (self.lower_bound(), &o.frontier) {
            frontier = min_frontier(frontier, Some(q.mul(&lf, bg)));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                terms.push((q.mul(a, b), r.mono_mul(a, ca, b, cb)));
            }
        }
        Self::new(r, terms, frontier)
    }

    /// Inverse exact at least below `target`. With `f = u(1 + ε)`, `u` the leading
    /// monomial, returns `Σ_{k ≤ K} (−ε)^k · u⁻¹` where `K` is the least
    /// integer with `(min supp ε)^{K+1} ≥ target · supp u`. A monomial has
    /// an exact inverse.
    pub fn inv<R: SeriesRing<C = C>>(&self, r: &R, target: &GroupElem) -> Result<Self, MnError> {
        let q = r.group();
        let (g0, c) = self.lead().ok_or(MnError::NotTrivialUnit)?;
        let g0 = g0.clone();
        let v = Self::monomial(r, q.inverse(&g0), r.mono_inv(&g0, c).ok_or(MnError::NotTrivialUnit)?);
        let eps = v.mul(r, self).sub(r, &Self::one(r));
        let Some(m) = eps.lower_bound() else {
            return Ok(v);
        };
        // never truncate away the leading term, so the result keeps its true lower bound
        let target = target.clone().max(q.mul(&m, v.lead().expect("monomial").0));
        let target = &target;
        let inner = q.mul(target, &g0);
        let mut power = m.clone();
        let mut k_max = None;
        for k in 0..=INVERSE_CAP {
            if power >= inner {
                k_max = Some(k);
                break;
            }
            power = q.mul(&power, &m);
        }
        let k_max = k_max.ok_or_else(|| {
            MnError::FrontierUnreachable(format!(
                "powers of {} stay below {} for {} steps",
                q.render(&m),
                q.render(&inner),
                INVERSE_CAP
            ))
        })?;
        let neg_eps = eps.neg(r);
        let mut sum = Self::one(r).truncate(&inner);
        let mut term = sum.clone();
        for _ in 0..k_max {
            term = term.mul(r, &neg_eps).truncate(&inner);
            sum = sum.add(r, &term);
        }
        let out = sum.mul(r, &v);
        match out.frontier() {
            Some(f) if f < target => Err(MnError::FrontierUnreachable(format!(
                "input known only below {}, inverse needs {}",
                q.render(self.frontier().expect("truncated input")),
                q.render(target)
            ))),
            _ => Ok(out.truncate(target)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::ScalarRing;
    use super::*;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn heis() -> ScalarRing {
        ScalarRing::new(PcGroup::heisenberg())
    }

    fn ge(v: [i64; 3]) -> GroupElem {
        GroupElem::from_exps(v.to_vec())
    }

    fn random_elem(rng: &mut ChaCha8Rng) -> GroupElem {
        ge([rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-5..=5)])
    }

    #[test]
    fn order_examples() {
        let o = GroupOrder { rank: 3 };
        assert_eq!(o.compare(&ge([0, 0, 0]), &ge([1, 0, 0])).unwrap(), Ordering::Less);
        assert_eq!(o.compare(&ge([1, 0, 0]), &ge([2, 0, 0])).unwrap(), Ordering::Less);
        assert_eq!(o.compare(&ge([0, 0, 1]), &ge([1, 0, 0])).unwrap(), Ordering::Less);
        assert!(o.compare(&ge([0, 0, 1]), &GroupElem::from_exps(vec![1])).is_err());
    }

    #[test]
    fn order_is_bi_invariant() {
        let g = PcGroup::heisenberg();
        let o = GroupOrder::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let (a, b, c) = (random_elem(&mut rng), random_elem(&mut rng), random_elem(&mut rng));
            let base = o.compare(&a, &b).unwrap();
            assert_eq!(base, a.cmp(&b));
            assert_eq!(o.compare(&g.mul(&c, &a), &g.mul(&c, &b)).unwrap(), base);
            assert_eq!(o.compare(&g.mul(&a, &c), &g.mul(&b, &c)).unwrap(), base);
        }
    }

    #[test]
    fn scalar_products() {
        let r = heis();
        let x = ge([1, 0, 0]);
        let one = TruncSeries::one(&r);
        let a = one.add(&r, &TruncSeries::monomial(&r, x.clone(), q(1)));
        let b = one.sub(&r, &TruncSeries::monomial(&r, x.clone(), q(1)));
        let p = a.mul(&r, &b);
        assert_eq!(p, one.sub(&r, &TruncSeries::monomial(&r, ge([2, 0, 0]), q(1))));
    }

    #[test]
    fn frontier_law_in_positive_cone() {
        let r = heis();
        let beta = ge([3, 0, 0]);
        let f = TruncSeries::new(&r, [(ge([0, 0, 0]), q(1)), (ge([0, 1, 0]), q(2))], Some(beta.clone()));
        let g = TruncSeries::new(&r, [(ge([0, 0, 0]), q(1)), (ge([1, -1, 0]), q(-1))], Some(beta.clone()));
        assert_eq!(f.mul(&r, &g).frontier(), Some(&beta));
    }

    #[test]
    fn geometric_inverse() {
        let r = heis();
        let x = ge([1, 0, 0]);
        let f = TruncSeries::one(&r).sub(&r, &TruncSeries::monomial(&r, x, q(1)));
        let inv = f.inv(&r, &ge([4, 0, 0])).unwrap();
        let expect = TruncSeries::new(&r, (0..4).map(|k| (ge([k, 0, 0]), q(1))), Some(ge([4, 0, 0])));
        assert_eq!(inv, expect);
        assert_eq!(TruncSeries::one(&r).inv(&r, &ge([4, 0, 0])).unwrap(), TruncSeries::one(&r));
    }

    #[test]
    fn central_terms_cannot_reach_x() {
        let r = heis();
        let f = TruncSeries::one(&r).sub(&r, &TruncSeries::monomial(&r, ge([0, 0, 1]), q(1)));
        assert!(matches!(f.inv(&r, &ge([1, 0, 0])), Err(MnError::FrontierUnreachable(_))));
        assert!(f.inv(&r, &ge([0, 0, 6])).is_ok());
    }

    #[test]
    fn zero_lead_rejected() {
        let r = heis();
        assert_eq!(TruncSeries::zero().inv(&r, &ge([1, 0, 0])), Err(MnError::NotTrivialUnit));
    }

    fn random_series(rng: &mut ChaCha8Rng, r: &ScalarRing, frontier: &GroupElem) -> TruncSeries<BigRational> {
        let n = rng.gen_range(1..=4);
        let terms: Vec<_> = (0..n)
            .map(|_| (ge([rng.gen_range(0..=2), rng.gen_range(-2..=2), rng.gen_range(-3..=3)]), q(rng.gen_range(-3..=3))))
            .collect();
        TruncSeries::new(r, terms, Some(frontier.clone()))
    }

    #[test]
    fn associativity_below_frontier() {
        let r = heis();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let beta = ge([3, 0, 0]);
        for _ in 0..200 {
            let (f, g, h) = (random_series(&mut rng, &r, &beta), random_series(&mut rng, &r, &beta), random_series(&mut rng, &r, &beta));
            let left = f.mul(&r, &g).mul(&r, &h);
            let right = f.mul(&r, &g.mul(&r, &h));
            let common = left.frontier().unwrap().clone().min(right.frontier().unwrap().clone());
            assert_eq!(left.truncate(&common), right.truncate(&common));
        }
    }

    #[test]
    fn inverse_is_exact_below_frontier() {
        let r = heis();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let target = ge([4, 0, 0]);
        for _ in 0..100 {
            let lead = ge([rng.gen_range(-1..=1), rng.gen_range(-2..=2), rng.gen_range(-2..=2)]);
            let mut terms = vec![(lead.clone(), q(rng.gen_range(1..=3)))];
            for _ in 0..3 {
                let g = ge([lead.exps[0] + rng.gen_range(1..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)]);
                terms.push((g, q(rng.gen_range(-3..=3))));
            }
            let f = TruncSeries::new(&r, terms, None);
            let g = r.group();
            let fi = f.inv(&r, &g.mul(&g.inverse(&lead), &target)).unwrap();
            let prod = f.mul(&r, &fi);
            assert!(prod.frontier().unwrap() >= &target);
            assert_eq!(prod.truncate(&target), TruncSeries::one(&r).truncate(&target));
            let rev = fi.mul(&r, &f);
            let fr = rev.frontier().unwrap().clone();
            assert_eq!(rev, TruncSeries::one(&r).truncate(&fr));
        }
    }
}
