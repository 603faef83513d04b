//! Randomized checks that `Φ_N` is a ring homomorphism on truncated series.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::nilgroup::{FreeWord, GroupElem};

use super::crossed::{augmentation, phi_n, CrossedProductCtx, KnElem, ScalarRing};
use super::series::{SeriesRing, TruncSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomWitness {
    pub check: String,
    pub sample: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub frontier: String,
    pub tau_samples: usize,
    pub sigma_samples: usize,
    pub hom_samples: usize,
    /// Coefficients actually compared across the product checks.
    pub compared: usize,
    pub failures: Vec<HomWitness>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Every product check compared nothing.
    pub fn vacuous(&self) -> bool {
        self.compared == 0
    }
}

fn random_quot(rng: &mut ChaCha8Rng, rank: usize) -> GroupElem {
    let mut exps = vec![0i64; rank];
    for (k, e) in exps.iter_mut().enumerate() {
        *e = if k < 2 { rng.gen_range(-2..=2) } else { rng.gen_range(-3..=3) };
    }
    GroupElem::from_exps(exps)
}

fn random_word(rng: &mut ChaCha8Rng, letters: i32, max_len: usize) -> FreeWord {
    let n = rng.gen_range(0..=max_len);
    FreeWord::new((0..n).map(|_| {
        let l = rng.gen_range(1..=letters);
        if rng.gen_bool(0.5) {
            l
        } else {
            -l
        }
    }))
}

/// A product of conjugates of weight-three basic commutators.
fn random_kernel_word(rng: &mut ChaCha8Rng, letters: i32) -> FreeWord {
    let (x, y) = (FreeWord::letter(1), FreeWord::letter(2.min(letters)));
    let c = x.commutator(&y);
    let basic = [c.commutator(&x), c.commutator(&y)];
    let mut out = FreeWord::empty();
    for _ in 0..rng.gen_range(0..=2) {
        let b = basic[rng.gen_range(0..2)].pow(if rng.gen_bool(0.5) { 1 } else { -1 });
        out = out.mul(&b.conjugate_by(&random_word(rng, letters, 2)));
    }
    out
}

fn random_kn(rng: &mut ChaCha8Rng, letters: i32) -> KnElem {
    let mut out = KnElem::new();
    for _ in 0..rng.gen_range(1..=2) {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            let w = random_kernel_word(rng, letters);
            let v = out.remove(&w).unwrap_or_default() + BigRational::from_integer(c.into());
            if v != BigRational::default() {
                out.insert(w, v);
            }
        }
    }
    out
}

/// One to four random terms with `k[N]` coefficients, truncated at `frontier`.
pub fn random_series(ctx: &CrossedProductCtx, rng: &mut ChaCha8Rng, frontier: &GroupElem) -> TruncSeries<KnElem> {
    let rank = ctx.group().rank();
    let letters = ctx.free_rank() as i32;
    let n = rng.gen_range(1..=4);
    let terms: Vec<_> = (0..n).map(|_| (random_quot(rng, rank), random_kn(rng, letters))).collect();
    TruncSeries::new(ctx, terms, Some(frontier.clone()))
}

fn first_difference(
    scalar: &ScalarRing,
    a: &TruncSeries<BigRational>,
    b: &TruncSeries<BigRational>,
) -> Option<String> {
    let diff = a.sub(scalar, b);
    diff.lead().map(|(g, c)| {
        format!(
            "coefficient at {} differs by {} ({} vs {})",
            scalar.group().render(g),
            c,
            a.coeff(g).cloned().unwrap_or_default(),
            b.coeff(g).cloned().unwrap_or_default()
        )
    })
}

fn describe(ctx: &CrossedProductCtx, f: &TruncSeries<KnElem>) -> String {
    let names = ctx.letter_names();
    let terms: Vec<String> = f
        .terms()
        .iter()
        .map(|(g, c)| {
            let coeff: Vec<String> = c.iter().map(|(w, v)| format!("{}·{}", v, w.render(&names))).collect();
            format!("({})·[{}]", coeff.join(" + "), ctx.group().render(g))
        })
        .collect();
    let fr = f.frontier().map(|g| ctx.group().render(g)).unwrap_or_else(|| "exact".into());
    format!("{} below {}", terms.join(" + "), fr)
}

/// `ε_N(τ(α, β)) = 1`, `ε_N(g^{σ(α)}) = ε_N(g)`, additivity and
/// multiplicativity of `Φ_N`, each on `samples` random inputs.
pub fn homomorphism_suite(ctx: &CrossedProductCtx, seed: u64, samples: usize, frontier: &GroupElem) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = ctx.group().rank();
    let letters = ctx.free_rank() as i32;
    let scalar = ScalarRing::new(ctx.group().clone());
    let mut failures = Vec::new();
    let one = BigRational::from_integer(1.into());
    for k in 0..samples {
        let (a, b) = (random_quot(&mut rng, rank), random_quot(&mut rng, rank));
        let e = augmentation(&ctx.tau(&a, &b));
        if e != one {
            failures.push(HomWitness {
                check: "tau".into(),
                sample: k,
                detail: format!("ε_N(τ({}, {})) = {}", ctx.group().render(&a), ctx.group().render(&b), e),
            });
        }
    }
    for k in 0..samples {
        let a = random_quot(&mut rng, rank);
        let g = random_kn(&mut rng, letters);
        if augmentation(&ctx.sigma(&a, &g)) != augmentation(&g) {
            failures.push(HomWitness { check: "sigma".into(), sample: k, detail: format!("σ({}) moves ε_N", ctx.group().render(&a)) });
        }
    }
    let mut compared = 0;
    for k in 0..samples {
        let f = random_series(ctx, &mut rng, frontier);
        let g = random_series(ctx, &mut rng, frontier);
        let (pf, pg) = (phi_n(ctx, &f), phi_n(ctx, &g));
        if let Some(d) = first_difference(&scalar, &phi_n(ctx, &f.add(ctx, &g)), &pf.add(&scalar, &pg)) {
            failures.push(HomWitness { check: "add".into(), sample: k, detail: d });
        }
        let lhs = phi_n(ctx, &f.mul(ctx, &g));
        let rhs = pf.mul(&scalar, &pg);
        let common = match (lhs.frontier(), rhs.frontier()) {
            (Some(a), Some(b)) => a.clone().min(b.clone()),
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (None, None) => frontier.clone(),
        };
        let (l, r) = (lhs.truncate(&common), rhs.truncate(&common));
        compared += l.terms().keys().chain(r.terms().keys()).collect::<std::collections::BTreeSet<_>>().len();
        if let Some(d) = first_difference(&scalar, &l, &r) {
            failures.push(HomWitness {
                check: "mul".into(),
                sample: k,
                detail: format!("{}; f = {}; g = {}", d, describe(ctx, &f), describe(ctx, &g)),
            });
        }
    }
    SuiteReport {
        seed,
        frontier: ctx.group().render(frontier),
        tau_samples: samples,
        sigma_samples: samples,
        hom_samples: samples,
        compared,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x3() -> GroupElem {
        GroupElem::from_exps(vec![3, 0, 0])
    }

    #[test]
    fn kernel_words_project_to_identity() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            assert!(ctx.project(&random_kernel_word(&mut rng, 2)).is_identity());
        }
    }

    #[test]
    fn suite_passes() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        let r = homomorphism_suite(&ctx, 1, 60, &x3());
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.compared > 0);
    }

    #[test]
    fn suite_is_reproducible() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        assert_eq!(homomorphism_suite(&ctx, 9, 20, &x3()), homomorphism_suite(&ctx, 9, 20, &x3()));
    }

    #[test]
    fn corrupted_tau_is_caught() {
        let ctx = CrossedProductCtx::free_mod_gamma3().with_corrupt_tau();
        let r = homomorphism_suite(&ctx, 1, 60, &x3());
        assert!(r.failures.iter().any(|w| w.check == "tau"));
        let mul = r.failures.iter().find(|w| w.check == "mul").expect("product witness");
        assert!(mul.detail.contains("f = "));
    }

    #[test]
    fn low_frontier_is_vacuous() {
        let ctx = CrossedProductCtx::free_mod_gamma3();
        let r = homomorphism_suite(&ctx, 1, 20, &GroupElem::from_exps(vec![-5, 0, 0]));
        assert!(r.passed() && r.vacuous());
    }
}
