//! Extraction of a Heisenberg subgroup `⟨x, y⟩` with `x* = x^{±1}`, `y* = y^{±1}`.
//!
//! Class two: lift `±1` eigenvectors of the induced matrix on `G/C`, pick the
//! first noncommuting pair `h₁, h₂`, write `hᵢ* = hᵢ^{εᵢ} zᵢ` with `zᵢ` central
//! and take `x = h₁^{2ε₁} z₁`, `y = h₂^{2ε₂} z₂` (or `hᵢ` itself when both
//! `zᵢ` vanish). Class three first solves the problem in `G/C`, lifts, and
//! finishes inside `⟨x, y⟩` or `K = ⟨w, w*, z, z*⟩`.

use super::{involution_matrix, pm_eigenbasis, GroupElem, GroupInvolution, NilError, PcGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub x: GroupElem,
    pub y: GroupElem,
    pub eps_x: i64,
    pub eps_y: i64,
    pub case_tag: u8,
    /// Chosen lifts with their signs and correction terms `zᵢ = hᵢ^{-εᵢ} hᵢ*`.
    pub lifts: Vec<(GroupElem, i64, GroupElem)>,
    pub route: &'static str,
    pub checks: Postconditions,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Postconditions {
    pub z_nontrivial: bool,
    pub x_commutes_z: bool,
    pub y_commutes_z: bool,
    pub x_star: bool,
    pub y_star: bool,
}

impl Postconditions {
    pub fn all(&self) -> bool {
        self.z_nontrivial && self.x_commutes_z && self.y_commutes_z && self.x_star && self.y_star
    }
}

/// Verifies the output contract by collection, with `z = [x, y]`.
pub fn check(g: &PcGroup, inv: &GroupInvolution, x: &GroupElem, y: &GroupElem, ex: i64, ey: i64) -> Postconditions {
    let z = g.commutator(x, y);
    Postconditions {
        z_nontrivial: !z.is_identity(),
        x_commutes_z: g.commute(x, &z),
        y_commutes_z: g.commute(y, &z),
        x_star: inv.apply(g, x) == g.pow(x, ex),
        y_star: inv.apply(g, y) == g.pow(y, ey),
    }
}

pub fn star_invariant_heisenberg(g: &PcGroup, inv: &GroupInvolution) -> Result<Extraction, NilError> {
    if g.is_abelian() {
        return Err(NilError::Abelian);
    }
    match g.class() {
        2 => class_two(g, inv),
        3 => class_three(g, inv),
        c => Err(NilError::ClassOutOfScope(c)),
    }
}

fn class_two(g: &PcGroup, inv: &GroupInvolution) -> Result<Extraction, NilError> {
    let a = involution_matrix(g, inv)?;
    let lifts: Vec<(GroupElem, i64)> = pm_eigenbasis(&a)
        .into_iter()
        .map(|ev| {
            let mut e = ev.v.clone();
            e.resize(g.rank(), 0);
            (GroupElem::from_exps(e), ev.eps)
        })
        .collect();
    from_candidates(g, inv, &lifts, "class-2").ok_or(NilError::NoPair)
}

fn class_three(g: &PcGroup, inv: &GroupInvolution) -> Result<Extraction, NilError> {
    let q = g.central_quotient()?;
    let n = q.rank();
    let qimages = inv.images().iter().take(n).map(|e| GroupElem::from_exps(e.exps[..n].to_vec())).collect();
    let qinv = GroupInvolution::new(&q, qimages)?;
    let base = class_two(&q, &qinv)?;
    let lift = |e: &GroupElem| {
        let mut v = e.exps.clone();
        v.resize(g.rank(), 0);
        GroupElem::from_exps(v)
    };
    let (x, y) = (lift(&base.x), lift(&base.y));
    let z = g.commutator(&x, &y);
    let (gens, route) = if g.commute(&x, &z) && g.commute(&y, &z) {
        (vec![x, y], "class-3 via <x, y>")
    } else {
        let w = if g.commute(&x, &z) { y } else { x };
        (vec![w.clone(), inv.apply(g, &w), z.clone(), inv.apply(g, &z)], "class-3 via K = <w, w*, z, z*>")
    };
    let mut cands = Vec::new();
    for s in &gens {
        let ss = inv.apply(g, s);
        if ss == *s {
            cands.push((s.clone(), 1));
        } else if ss == g.inverse(s) {
            cands.push((s.clone(), -1));
        }
        cands.push((g.mul(s, &ss), 1));
        cands.push((g.mul(s, &g.inverse(&ss)), -1));
    }
    cands.retain(|(h, _)| !h.is_identity());
    from_candidates(g, inv, &cands, route).ok_or(NilError::NoPair)
}

fn from_candidates(
    g: &PcGroup,
    inv: &GroupInvolution,
    cands: &[(GroupElem, i64)],
    route: &'static str,
) -> Option<Extraction> {
    for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            let (h1, e1) = &cands[i];
            let (h2, e2) = &cands[j];
            if g.commute(h1, h2) {
                continue;
            }
            let z1 = g.mul(&g.pow(h1, -e1), &inv.apply(g, h1));
            let z2 = g.mul(&g.pow(h2, -e2), &inv.apply(g, h2));
            let (mut x, mut y) = if z1.is_identity() && z2.is_identity() {
                (h1.clone(), h2.clone())
            } else {
                (g.mul(&g.pow(h1, 2 * e1), &z1), g.mul(&g.pow(h2, 2 * e2), &z2))
            };
            let (mut ex, mut ey) = (*e1, *e2);
            let mut lifts = vec![(h1.clone(), *e1, z1), (h2.clone(), *e2, z2)];
            if ex == -1 && ey == 1 {
                std::mem::swap(&mut x, &mut y);
                std::mem::swap(&mut ex, &mut ey);
                lifts.swap(0, 1);
            }
            let checks = check(g, inv, &x, &y, ex, ey);
            if checks.all() {
                let case_tag = match (ex, ey) {
                    (1, 1) => 1,
                    (-1, -1) => 2,
                    _ => 3,
                };
                return Some(Extraction { x, y, eps_x: ex, eps_y: ey, case_tag, lifts, route, checks });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    fn inv_from(g: &PcGroup, imgs: &[(&str, &str)]) -> GroupInvolution {
        let mut m = BTreeMap::new();
        for (k, v) in imgs {
            m.insert(g.index_of(k).unwrap(), g.parse_word(v).unwrap());
        }
        GroupInvolution::from_partial(g, &m).unwrap()
    }

    #[test]
    fn heisenberg_transpose() {
        let h = PcGroup::heisenberg();
        let inv = inv_from(&h, &[("x", "x"), ("y", "y")]);
        let e = star_invariant_heisenberg(&h, &inv).unwrap();
        assert_eq!(e.case_tag, 1);
        assert_eq!(e.x, h.generator(0));
        assert_eq!(e.y, h.generator(1));
    }

    #[test]
    fn heisenberg_inversion() {
        let h = PcGroup::heisenberg();
        let e = star_invariant_heisenberg(&h, &GroupInvolution::inversion(&h)).unwrap();
        assert_eq!(e.case_tag, 2);
        assert_eq!((e.x.clone(), e.y.clone()), (h.generator(0), h.generator(1)));
    }

    #[test]
    fn heisenberg_swap() {
        let h = PcGroup::heisenberg();
        let inv = inv_from(&h, &[("x", "y"), ("y", "x")]);
        let e = star_invariant_heisenberg(&h, &inv).unwrap();
        assert_eq!(e.case_tag, 3);
        assert_eq!(e.lifts[0].0, h.parse_word("x*y").unwrap());
        assert_eq!(e.lifts[1].0, h.parse_word("x*y^-1").unwrap());
        assert_eq!(e.x, h.pow(&h.parse_word("x*y").unwrap(), 2));
        // [x', y'] = [h₁, h₂]^{4ε₁ε₂}
        let c = h.commutator(&e.lifts[0].0, &e.lifts[1].0);
        assert_eq!(h.commutator(&e.x, &e.y), h.pow(&c, -4));
    }

    #[test]
    fn correction_terms_satisfy_sign_rule() {
        let h = PcGroup::heisenberg();
        let inv = inv_from(&h, &[("x", "y"), ("y", "x")]);
        let e = star_invariant_heisenberg(&h, &inv).unwrap();
        for (_, eps, z) in &e.lifts {
            assert_eq!(inv.apply(&h, z), h.pow(z, -eps));
        }
    }

    #[test]
    fn free_class_two_rank_three() {
        let g = PcGroup::free_nilpotent_class2(3);
        for imgs in [
            vec![("x1", "x2"), ("x2", "x1"), ("x3", "x3^-1")],
            vec![("x1", "x1"), ("x2", "x3"), ("x3", "x2")],
        ] {
            let inv = inv_from(&g, &imgs);
            let e = star_invariant_heisenberg(&g, &inv).unwrap();
            assert!(e.checks.all());
        }
    }

    #[test]
    fn class_three_transpose() {
        let g = PcGroup::free_nilpotent_rank2_class3();
        let inv = inv_from(&g, &[("x", "x"), ("y", "y")]);
        let e = star_invariant_heisenberg(&g, &inv).unwrap();
        assert!(e.checks.all());
        assert!(e.route.contains('K'));
    }

    #[test]
    fn abelian_rejected() {
        let g = PcGroup::free_nilpotent_class2(1);
        assert_eq!(
            star_invariant_heisenberg(&g, &GroupInvolution::inversion(&g)),
            Err(NilError::Abelian)
        );
    }
}
