//! Field axioms and canonical-form stability for rational functions over
//! `Q(θ)` and `F_p(θ)`, on randomly generated inputs.

use forge_core::exactfield::Rf;
use forge_core::symbolalg::{AlgRef, SymbolAlgebra};
use proptest::prelude::*;

const ATOMS: [&str; 9] = ["1", "a", "b", "lambda", "X", "theta", "a^-1", "(1 + b)^-1", "(a - lambda)^-1"];

fn algebra(p: u64) -> AlgRef {
    SymbolAlgebra::with_params(p, 3).expect("algebra")
}

/// A sum of up to three scaled products of atoms, as source text.
fn expr() -> impl Strategy<Value = String> {
    let term = (-4i64..=4, proptest::sample::select(&ATOMS[..]), proptest::sample::select(&ATOMS[..]))
        .prop_map(|(c, x, y)| format!("({})*{}*{}", c, x, y));
    proptest::collection::vec(term, 1..=3).prop_map(|ts| ts.join(" + "))
}

fn parse(alg: &AlgRef, s: &str) -> Rf {
    alg.scalar_parse(s).expect("generated text parses")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(p in proptest::sample::select(vec![0u64, 5, 7]), x in expr(), y in expr(), z in expr()) {
        let alg = algebra(p);
        let (x, y, z) = (parse(&alg, &x), parse(&alg, &y), parse(&alg, &z));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.sub(&x).is_zero());
        prop_assert_eq!(x.mul(&Rf::one(alg.field())), x.clone());
        if !x.is_zero() {
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
            prop_assert_eq!(y.mul(&x).div(&x).unwrap(), y);
        }
    }

    #[test]
    fn canonical_form_is_idempotent(p in proptest::sample::select(vec![0u64, 5, 7]), x in expr()) {
        let alg = algebra(p);
        let v = parse(&alg, &x);
        let text = v.render();
        let again = parse(&alg, &text);
        prop_assert_eq!(&again, &v);
        prop_assert_eq!(again.render(), text);
    }
}
