//! Bounded search for relations between two units.
//!
//! Words over `A, A⁻¹, B, B⁻¹` (in that order) are enumerated level by level,
//! lexicographically within each length; the products of one level are
//! computed in parallel and scanned in order, so the first witness does not
//! depend on the schedule.

use rayon::prelude::*;

use serde::{Deserialize, Serialize};

use crate::symbolalg::{AlgRef, ClearedElem, SymElem, SymError};

use super::modimage::ModImage;

pub const LETTERS: [&str; 4] = ["A", "A^-1", "B", "B^-1"];

/// Multiplication and identity test for the search.
pub trait WordMonoid: Sync {
    type E: Send + Sync + Clone;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_one(&self, a: &Self::E) -> bool;
    /// Final say on a word whose product passed `is_one`.
    fn confirm(&self, _w: &[u8]) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// First word equal to 1, as letter indices into [`LETTERS`].
    pub witness: Option<Vec<u8>>,
    pub bound: usize,
    /// Number of reduced words visited at each length `1, 2, …`.
    pub visited: Vec<u64>,
}

pub fn render_word(w: &[u8]) -> String {
    w.iter().map(|&l| LETTERS[l as usize]).collect::<Vec<_>>().join("*")
}

fn inverse_letter(l: u8) -> u8 {
    l ^ 1
}

pub fn search<M: WordMonoid>(m: &M, letters: &[M::E; 4], lmax: usize, threads: usize) -> SearchOutcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().expect("thread pool");
    pool.install(|| search_inner(m, letters, lmax))
}

fn search_inner<M: WordMonoid>(m: &M, letters: &[M::E; 4], lmax: usize) -> SearchOutcome {
    let mut visited = Vec::new();
    let mut level: Vec<(Vec<u8>, M::E)> = Vec::new();
    for len in 1..=lmax {
        let next: Vec<(Vec<u8>, M::E)> = if len == 1 {
            (0..4u8).map(|l| (vec![l], letters[l as usize].clone())).collect()
        } else {
            let jobs: Vec<(usize, u8)> = level
                .iter()
                .enumerate()
                .flat_map(|(k, (w, _))| {
                    let last = *w.last().expect("nonempty word");
                    (0..4u8).filter(move |&l| l != inverse_letter(last)).map(move |l| (k, l))
                })
                .collect();
            jobs.par_iter()
                .map(|&(k, l)| {
                    let (w, e) = &level[k];
                    let mut w2 = w.clone();
                    w2.push(l);
                    (w2, m.mul(e, &letters[l as usize]))
                })
                .collect()
        };
        visited.push(next.len() as u64);
        let hits: Vec<usize> = (0..next.len()).into_par_iter().filter(|&k| m.is_one(&next[k].1)).collect();
        if let Some(k) = hits.into_iter().find(|&k| m.confirm(&next[k].0)) {
            return SearchOutcome { witness: Some(next[k].0.clone()), bound: lmax, visited };
        }
        level = next;
    }
    SearchOutcome { witness: None, bound: lmax, visited }
}

/// Symbol-algebra units in denominator-cleared form.
pub struct ClearedMonoid {
    pub alg: AlgRef,
}

impl WordMonoid for ClearedMonoid {
    type E = ClearedElem;
    fn mul(&self, a: &ClearedElem, b: &ClearedElem) -> ClearedElem {
        a.mul(b, &self.alg)
    }
    fn is_one(&self, a: &ClearedElem) -> bool {
        a.is_one()
    }
}

/// Products in two modular images at once; hits are re-checked exactly.
pub struct ModularMonoid {
    images: Vec<ModImage>,
    a: SymElem,
    b: SymElem,
}

impl WordMonoid for ModularMonoid {
    type E = Vec<Vec<u64>>;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E {
        self.images.iter().zip(x.iter().zip(y)).map(|(img, (u, v))| img.mul(u, v)).collect()
    }
    fn is_one(&self, x: &Self::E) -> bool {
        self.images.iter().zip(x).all(|(img, u)| img.is_one(u))
    }
    fn confirm(&self, w: &[u8]) -> bool {
        evaluate_word(&self.a, &self.b, w).map(|e| e.is_one()).unwrap_or(false)
    }
}

/// Arithmetic used to multiply out words during the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    /// Modular images in characteristic 0, exact otherwise.
    Auto,
    Exact,
    Modular,
}

const MODULAR_IMAGES: usize = 2;

/// Searches for a relation between units `a`, `b` of a symbol algebra.
/// Returns the oracle actually used alongside the outcome.
pub fn relation_search_with(
    a: &SymElem,
    b: &SymElem,
    lmax: usize,
    threads: usize,
    oracle: Oracle,
) -> Result<(SearchOutcome, Oracle), SymError> {
    let alg = a.algebra().clone();
    if b.algebra() != &alg {
        return Err(SymError::AlgebraMismatch);
    }
    let cleared = [
        ClearedElem::from_elem(a),
        ClearedElem::inverse_of(a)?,
        ClearedElem::from_elem(b),
        ClearedElem::inverse_of(b)?,
    ];
    if oracle != Oracle::Exact {
        let mut images = Vec::new();
        let mut letters: [Vec<Vec<u64>>; 4] = Default::default();
        for k in 0..16 {
            if images.len() == MODULAR_IMAGES {
                break;
            }
            let Some(img) = ModImage::new(&alg, k) else { break };
            let Some(im) = cleared.iter().map(|c| img.image(c)).collect::<Option<Vec<_>>>() else { continue };
            for (slot, e) in letters.iter_mut().zip(im) {
                slot.push(e);
            }
            images.push(img);
        }
        if images.len() == MODULAR_IMAGES {
            let m = ModularMonoid { images, a: a.clone(), b: b.clone() };
            return Ok((search(&m, &letters, lmax, threads), Oracle::Modular));
        }
        if oracle == Oracle::Modular && alg.field().characteristic() == 0 {
            return Err(SymError::NotInvertible);
        }
    }
    Ok((search(&ClearedMonoid { alg }, &cleared, lmax, threads), Oracle::Exact))
}

pub fn relation_search(a: &SymElem, b: &SymElem, lmax: usize, threads: usize) -> Result<SearchOutcome, SymError> {
    relation_search_with(a, b, lmax, threads, Oracle::Auto).map(|(o, _)| o)
}

/// Re-evaluates a word with ordinary canonical arithmetic.
pub fn evaluate_word(a: &SymElem, b: &SymElem, w: &[u8]) -> Result<SymElem, SymError> {
    let letters = [a.clone(), a.inv()?, b.clone(), b.inv()?];
    let mut acc = SymElem::one(a.algebra());
    for &l in w {
        acc = acc.mul(&letters[l as usize])?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolalg::SymbolAlgebra;

    /// Integers under addition: `A = 1`, `B = k`.
    struct Ints;
    impl WordMonoid for Ints {
        type E = i64;
        fn mul(&self, a: &i64, b: &i64) -> i64 {
            a + b
        }
        fn is_one(&self, a: &i64) -> bool {
            *a == 0
        }
    }

    /// Free monoid on two letters: never a relation.
    struct Free;
    impl WordMonoid for Free {
        type E = Vec<i8>;
        fn mul(&self, a: &Vec<i8>, b: &Vec<i8>) -> Vec<i8> {
            let mut out = a.clone();
            for &l in b {
                if out.last() == Some(&-l) {
                    out.pop();
                } else {
                    out.push(l);
                }
            }
            out
        }
        fn is_one(&self, a: &Vec<i8>) -> bool {
            a.is_empty()
        }
    }

    #[test]
    fn counts_reduced_words() {
        let o = search(&Free, &[vec![1], vec![-1], vec![2], vec![-2]], 6, 2);
        assert!(o.witness.is_none());
        let expect: Vec<u64> = (1..=6).map(|l| 4 * 3u64.pow(l - 1)).collect();
        assert_eq!(o.visited, expect);
    }

    #[test]
    fn planted_relations() {
        let o = search(&Ints, &[1, -1, 1, -1], 4, 1);
        assert_eq!(render_word(&o.witness.unwrap()), "A*B^-1");
        let o = search(&Ints, &[1, -1, 3, -3], 6, 3);
        assert_eq!(render_word(&o.witness.unwrap()), "A*A*A*B^-1");
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let a = search(&Ints, &[2, -2, 3, -3], 6, 1);
        let b = search(&Ints, &[2, -2, 3, -3], 6, 4);
        assert_eq!(a, b);
        assert_eq!(render_word(&a.witness.unwrap()), "A*B*A^-1*B^-1");
    }

    #[test]
    fn symbol_algebra_sanity() {
        let h = SymbolAlgebra::with_params(0, 2).unwrap();
        let u = SymElem::one(&h).add(&SymElem::i(&h)).unwrap();
        let u2 = u.pow(2).unwrap();
        let o = relation_search(&u, &u2, 4, 2).unwrap();
        let w = o.witness.unwrap();
        assert_eq!(render_word(&w), "A*A*B^-1");
        assert!(evaluate_word(&u, &u2, &w).unwrap().is_one());
    }

    #[test]
    fn oracles_agree() {
        let h = SymbolAlgebra::with_params(0, 3).unwrap();
        let u = SymElem::one(&h).add(&SymElem::i(&h)).unwrap();
        let v = SymElem::j(&h).add(&SymElem::one(&h).scale(&h.a())).unwrap();
        for (x, y) in [(u.clone(), u.pow(3).unwrap()), (u.clone(), v)] {
            let (e, eo) = relation_search_with(&x, &y, 4, 2, Oracle::Exact).unwrap();
            let (m, mo) = relation_search_with(&x, &y, 4, 2, Oracle::Auto).unwrap();
            assert_eq!((eo, mo), (Oracle::Exact, Oracle::Modular));
            assert_eq!(e, m);
        }
    }

    #[test]
    fn false_hits_are_skipped() {
        struct Collide;
        impl WordMonoid for Collide {
            type E = i64;
            fn mul(&self, a: &i64, b: &i64) -> i64 {
                a + b
            }
            fn is_one(&self, a: &i64) -> bool {
                *a == 0
            }
            fn confirm(&self, w: &[u8]) -> bool {
                w.len() > 2
            }
        }
        let o = search(&Collide, &[1, -1, 1, -1], 4, 2);
        assert_eq!(o.witness.unwrap().len(), 4);
    }
}
